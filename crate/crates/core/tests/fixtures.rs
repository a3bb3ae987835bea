mod common;

use common::tables::{self, Table};
use common::{ketbra_index, pauli_index, table_matrix};
use csqpt_core::procmat::{process_matrix_of_unitary, GammaBasis, GammaKind};
use csqpt_core::qcore::{GateId, UnitaryGate};
use csqpt_core::C64;

fn check_pauli_table(id: GateId, table: &Table) {
    let gate = UnitaryGate::standard(id);
    let basis = GammaBasis::pauli(gate.dim()).unwrap();
    let chi = process_matrix_of_unitary(&gate, &basis).unwrap();
    let expected = table_matrix(table, basis.len(), pauli_index);
    let diff = (chi.chi().matrix() - &expected).camax();
    assert!(diff < 1e-12, "{id}: max deviation {diff}");
    for label in table.labels {
        assert_eq!(basis.label(pauli_index(label)), *label);
    }
}

#[test]
fn pauli_tables_match_entry_for_entry() {
    check_pauli_table(GateId::Cnot, &tables::CNOT_PAULI);
    check_pauli_table(GateId::Cz, &tables::CZ_PAULI);
    check_pauli_table(GateId::Swap, &tables::SWAP_PAULI);
    check_pauli_table(GateId::Toffoli, &tables::TOFFOLI_PAULI);
    check_pauli_table(GateId::Fredkin, &tables::FREDKIN_PAULI);
    check_pauli_table(GateId::Cccz, &tables::CCCZ_PAULI);
}

#[test]
fn cnot_computational_table() {
    let gate = UnitaryGate::standard(GateId::Cnot);
    let basis = GammaBasis::computational(4).unwrap();
    let chi = process_matrix_of_unitary(&gate, &basis).unwrap();
    let expected = table_matrix(&tables::CNOT_COMPUTATIONAL, 16, |l| ketbra_index(l, 4));
    assert!((chi.chi().matrix() - expected).camax() < 1e-12);
    assert!((chi.chi().trace() - 4.0).abs() < 1e-12);
}

#[test]
fn cnot_svd_basis_has_single_entry() {
    let gate = UnitaryGate::standard(GateId::Cnot);
    let basis = GammaBasis::svd(&gate).unwrap();
    assert!((gate.matrix() - basis.element(0).scale(2.0)).norm() < 1e-12);
    let chi = process_matrix_of_unitary(&gate, &basis).unwrap();
    let m = chi.chi().matrix();
    assert!((m[(0, 0)] - C64::new(4.0, 0.0)).norm() < 1e-12);
    let rest: f64 = m.iter().map(|z| z.norm()).sum::<f64>() - m[(0, 0)].norm();
    assert!(rest < 1e-10);
}

#[test]
fn fixtures_are_trace_preserving_in_every_basis() {
    for id in [GateId::Cnot, GateId::Cz, GateId::Swap, GateId::Toffoli, GateId::Fredkin] {
        let gate = UnitaryGate::standard(id);
        for kind in [GammaKind::Pauli, GammaKind::Computational, GammaKind::Svd] {
            let basis = GammaBasis::new(kind, gate.dim(), Some(&gate)).unwrap();
            let chi = process_matrix_of_unitary(&gate, &basis).unwrap();
            assert!(chi.tp_residual() <= 1e-8, "{id} {kind}");
            let expected_trace = if kind == GammaKind::Pauli { 1.0 } else { gate.dim() as f64 };
            assert!((chi.chi().trace() - expected_trace).abs() < 1e-10, "{id} {kind}");
            assert!(chi.chi().min_eigenvalue().unwrap() > -1e-10);
        }
    }
}

#[test]
fn cccz_is_trace_preserving() {
    let gate = UnitaryGate::standard(GateId::Cccz);
    let basis = GammaBasis::pauli(16).unwrap();
    let chi = process_matrix_of_unitary(&gate, &basis).unwrap();
    assert!(chi.tp_residual() <= 1e-8);
}
