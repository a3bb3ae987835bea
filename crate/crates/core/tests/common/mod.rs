#![allow(dead_code)]

pub mod tables;

use csqpt_core::{CMatrix, C64};
use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Index of a Pauli string with `I, X, Y, Z = 0..4` and the first qubit most
/// significant.
pub fn pauli_index(label: &str) -> usize {
    label.chars().fold(0, |acc, c| {
        acc * 4 + match c {
            'I' => 0,
            'X' => 1,
            'Y' => 2,
            'Z' => 3,
            _ => panic!("bad Pauli letter {c}"),
        }
    })
}

/// Index of `|i><j|` written as `"i|j"` in binary.
pub fn ketbra_index(label: &str, d: usize) -> usize {
    let (i, j) = label.split_once('|').unwrap();
    usize::from_str_radix(i, 2).unwrap() * d + usize::from_str_radix(j, 2).unwrap()
}

/// Dense matrix of a table, zero outside its block.
pub fn table_matrix(table: &tables::Table, dim: usize, index: impl Fn(&str) -> usize) -> CMatrix {
    let mut m = CMatrix::zeros(dim, dim);
    for (r, row) in table.labels.iter().zip(table.entries) {
        for (c, &(num, den)) in table.labels.iter().zip(row.iter()) {
            m[(index(r), index(c))] = C64::new(num as f64 / den as f64, 0.0);
        }
    }
    m
}

pub fn random_ket(d: usize, rng: &mut ChaCha8Rng) -> DVector<C64> {
    let v = DVector::from_fn(d, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    let n = v.norm();
    v.unscale(n)
}

/// Random full-rank density matrix.
pub fn random_density(d: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    let g = CMatrix::from_fn(d, d, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    let p = &g * g.adjoint();
    let t = p.trace().re;
    p.unscale(t)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
