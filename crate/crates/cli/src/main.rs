use std::fs::File;
use std::io::{self, BufWriter};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use csqpt::diagnostics::{fixture_entries, grip, write_fixtures, write_grip, GripRequest, GripScheme};
use csqpt::{aggregate, read_records, run_experiment, write_records, write_summary, ExperimentConfig};
use csqpt_core::procmat::GammaKind;
use csqpt_core::QptError;

#[derive(Parser)]
#[command(name = "csqpt", version, about = "Corrupted-sensing quantum process tomography experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a sweep; records go to the config's output_path, the summary to stdout.
    Run { config: PathBuf },
    /// Per-m summary of a records CSV.
    Summarize { records: PathBuf },
    /// Monte Carlo lower bound on the GRIP constants of a sensing map.
    Grip {
        /// choi, process or state
        scheme: GripScheme,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        s: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        qubits: usize,
    },
    /// Nonzero process-matrix entries of the catalog gates, as CSV.
    Fixtures {
        #[arg(long, default_value = "pauli")]
        basis: GammaKind,
    },
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run { config } => {
            let cfg = ExperimentConfig::load(&config)?;
            let out = run_experiment(&cfg)?;
            for f in &out.failures {
                eprintln!("warning: m={} run={}: {}", f.m, f.run_index, f.message);
            }
            let file = File::create(&cfg.output_path)
                .with_context(|| format!("cannot create {}", cfg.output_path.display()))?;
            write_records(&out.records, BufWriter::new(file))?;
            write_summary(&aggregate(&out.records), io::stdout().lock())?;
        }
        Command::Summarize { records } => {
            let file = File::open(&records)
                .map_err(|e| QptError::Config(format!("cannot read {}: {e}", records.display())))?;
            let recs = read_records(file).map_err(|e| QptError::Config(format!("{}: {e:#}", records.display())))?;
            if recs.is_empty() {
                return Err(QptError::Config(format!("{} holds no records", records.display())).into());
            }
            write_summary(&aggregate(&recs), io::stdout().lock())?;
        }
        Command::Grip {
            scheme,
            m,
            r,
            s,
            trials,
            seed,
            qubits,
        } => {
            let est = grip(&GripRequest {
                scheme,
                n_qubits: qubits,
                m,
                r,
                s,
                trials,
                seed,
            })?;
            write_grip(io::stdout().lock(), &est)?;
        }
        Command::Fixtures { basis } => {
            write_fixtures(io::stdout().lock(), &fixture_entries(basis)?)?;
        }
    }
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.chain().find_map(|e| e.downcast_ref::<QptError>()) {
        Some(QptError::Config(_)) => 2,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
