use std::fmt;
use std::str::FromStr;

use super::matrix::{tensor, CMatrix, HermitianMatrix, C64};
use crate::error::{QptError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn matrix(self) -> CMatrix {
        let o = C64::new(0.0, 0.0);
        let one = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        let entries = match self {
            Pauli::I => [one, o, o, one],
            Pauli::X => [o, one, one, o],
            Pauli::Y => [o, -i, i, o],
            Pauli::Z => [one, o, o, -one],
        };
        CMatrix::from_row_slice(2, 2, &entries)
    }

    /// Position in the I, X, Y, Z ordering.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Pauli {
        Pauli::ALL[i & 3]
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// An n-qubit Pauli operator written as a string of single-qubit letters.
/// The first letter acts on the most significant qubit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliLabel(Vec<Pauli>);

impl PauliLabel {
    pub fn new(letters: Vec<Pauli>) -> Result<Self> {
        if letters.is_empty() {
            return Err(QptError::config("Pauli label must be nonempty"));
        }
        Ok(PauliLabel(letters))
    }

    /// The `index`-th label in lexicographic I < X < Y < Z order, i.e. the
    /// base-4 digits of `index` with the most significant digit first.
    pub fn from_index(index: usize, n_qubits: usize) -> Self {
        assert!(n_qubits > 0, "Pauli label must be nonempty");
        let letters = (0..n_qubits)
            .map(|k| Pauli::from_index(index >> (2 * (n_qubits - 1 - k))))
            .collect();
        PauliLabel(letters)
    }

    pub fn index(&self) -> usize {
        self.0.iter().fold(0, |acc, p| acc * 4 + p.index())
    }

    pub fn n_qubits(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&p| p == Pauli::I)
    }

    /// `self ⊗ other`.
    pub fn concat(&self, other: &PauliLabel) -> PauliLabel {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        PauliLabel(letters)
    }

    /// Splits into the first `n` letters and the rest.
    pub fn split_at(&self, n: usize) -> (PauliLabel, PauliLabel) {
        let (a, b) = self.0.split_at(n);
        (PauliLabel(a.to_vec()), PauliLabel(b.to_vec()))
    }
}

impl FromStr for PauliLabel {
    type Err = QptError;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| match c.to_ascii_uppercase() {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                other => Err(QptError::config(format!("invalid Pauli letter {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        PauliLabel::new(letters)
    }
}

impl fmt::Display for PauliLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "{}", p.symbol())?;
        }
        Ok(())
    }
}

/// Dense tensor product of the single-qubit Paulis in `label`.
pub fn pauli_operator(label: &PauliLabel) -> HermitianMatrix {
    let op = label
        .letters()
        .iter()
        .skip(1)
        .fold(label.letters()[0].matrix(), |acc, p| tensor(&acc, &p.matrix()));
    HermitianMatrix::symmetrized(op)
}

/// Monomial form of a Pauli operator: row `r` has its single nonzero entry
/// in column `r ^ x_mask`, equal to `phase · (-1)^popcount(r & z_mask)`.
///
/// Used for the O(dim) expectation values and adjoint accumulations that
/// dominate the Choi-state sensing map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PauliString {
    n_qubits: usize,
    x_mask: usize,
    z_mask: usize,
    /// (-i)^(number of Y letters), stored as a power of -i.
    y_count: u32,
}

impl PauliString {
    pub fn from_label(label: &PauliLabel) -> Self {
        let n = label.n_qubits();
        let mut x_mask = 0;
        let mut z_mask = 0;
        let mut y_count = 0;
        for (k, p) in label.letters().iter().enumerate() {
            let bit = 1 << (n - 1 - k);
            match p {
                Pauli::I => {}
                Pauli::X => x_mask |= bit,
                Pauli::Z => z_mask |= bit,
                Pauli::Y => {
                    x_mask |= bit;
                    z_mask |= bit;
                    y_count += 1;
                }
            }
        }
        PauliString {
            n_qubits: n,
            x_mask,
            z_mask,
            y_count,
        }
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    fn phase(&self) -> C64 {
        match self.y_count % 4 {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, -1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, 1.0),
        }
    }

    #[inline]
    fn entry(&self, row: usize, phase: C64) -> C64 {
        if (row & self.z_mask).count_ones() % 2 == 1 {
            -phase
        } else {
            phase
        }
    }

    /// `Re Tr(W ρ)`; exact for Hermitian `ρ`.
    pub fn expectation(&self, rho: &CMatrix) -> f64 {
        let phase = self.phase();
        (0..self.dim())
            .map(|r| {
                let c = r ^ self.x_mask;
                (self.entry(r, phase) * rho[(c, r)]).re
            })
            .sum()
    }

    /// `acc += coeff · W`.
    pub fn add_scaled_to(&self, acc: &mut CMatrix, coeff: f64) {
        let phase = self.phase();
        for r in 0..self.dim() {
            acc[(r, r ^ self.x_mask)] += self.entry(r, phase) * coeff;
        }
    }

    pub fn to_dense(&self) -> CMatrix {
        let mut m = CMatrix::zeros(self.dim(), self.dim());
        self.add_scaled_to(&mut m, 1.0);
        m
    }
}
