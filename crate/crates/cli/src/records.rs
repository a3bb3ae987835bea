use std::io::{Read, Write};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

/// Significant digits kept in every floating-point field.
pub const SIG_DIGITS: usize = 12;

pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if !x.is_finite() {
        return x;
    }
    format!("{:.*e}", SIG_DIGITS - 1, x).parse().unwrap()
}

/// One tomography run. Floats are stored already rounded, so writing and
/// re-reading a record gives back the same value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub m: usize,
    pub run_index: usize,
    pub fidelity: f64,
    pub mse: f64,
    pub iterations: usize,
    #[serde(rename = "wall_time_s")]
    pub wall_time: f64,
    pub seed_used: u64,
}

impl SweepRecord {
    pub fn new(m: usize, run_index: usize, fidelity: f64, mse: f64, iterations: usize, wall_time: f64, seed_used: u64) -> Self {
        SweepRecord {
            m,
            run_index,
            fidelity: round_sig(fidelity),
            mse: round_sig(mse),
            iterations,
            wall_time: round_sig(wall_time),
            seed_used,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stats {
    pub mean: f64,
    /// Sample standard deviation (`n − 1`); 0 for a single value.
    pub std: f64,
    pub se: f64,
    pub min: f64,
    pub max: f64,
}

impl Stats {
    pub fn of(values: &[f64]) -> Stats {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let std = if values.len() > 1 {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        Stats {
            mean,
            std,
            se: std / n.sqrt(),
            min: values.iter().copied().fold(f64::INFINITY, f64::min),
            max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryRow {
    pub m: usize,
    pub fidelity: Stats,
    pub mse: Stats,
    pub n: usize,
}

#[derive(Serialize)]
struct SummaryCsv {
    m: usize,
    fid_mean: f64,
    fid_std: f64,
    fid_se: f64,
    mse_mean: f64,
    mse_std: f64,
    mse_se: f64,
    n: usize,
}

/// Per-`m` statistics, ordered by `m`.
pub fn aggregate(records: &[SweepRecord]) -> Vec<SummaryRow> {
    let mut ms: Vec<usize> = records.iter().map(|r| r.m).collect();
    ms.sort_unstable();
    ms.dedup();
    ms.into_iter()
        .map(|m| {
            let rows: Vec<_> = records.iter().filter(|r| r.m == m).collect();
            let fid: Vec<f64> = rows.iter().map(|r| r.fidelity).collect();
            let mse: Vec<f64> = rows.iter().map(|r| r.mse).collect();
            SummaryRow {
                m,
                fidelity: Stats::of(&fid),
                mse: Stats::of(&mse),
                n: rows.len(),
            }
        })
        .collect()
}

pub fn write_records<W: Write>(records: &[SweepRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_records<R: Read>(input: R) -> Result<Vec<SweepRecord>> {
    let mut rd = csv::Reader::from_reader(input);
    let headers = rd.headers()?.clone();
    let expected = ["m", "run_index", "fidelity", "mse", "iterations", "wall_time_s", "seed_used"];
    if headers.iter().ne(expected) {
        anyhow::bail!("unexpected record header {:?}", headers.iter().collect::<Vec<_>>());
    }
    rd.deserialize()
        .enumerate()
        .map(|(i, r)| r.with_context(|| format!("record {}", i + 1)))
        .collect()
}

pub fn write_summary<W: Write>(rows: &[SummaryRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(SummaryCsv {
            m: r.m,
            fid_mean: round_sig(r.fidelity.mean),
            fid_std: round_sig(r.fidelity.std),
            fid_se: round_sig(r.fidelity.se),
            mse_mean: round_sig(r.mse.mean),
            mse_std: round_sig(r.mse.std),
            mse_se: round_sig(r.mse.se),
            n: r.n,
        })?;
    }
    w.flush()?;
    Ok(())
}
