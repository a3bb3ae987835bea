use std::fmt;
use std::str::FromStr;

use super::matrix::{CMatrix, C64};
use crate::error::{QptError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateId {
    Cnot,
    Cz,
    Swap,
    Toffoli,
    Fredkin,
    Cccz,
    Identity,
}

impl GateId {
    pub const ALL: [GateId; 7] = [
        GateId::Cnot,
        GateId::Cz,
        GateId::Swap,
        GateId::Toffoli,
        GateId::Fredkin,
        GateId::Cccz,
        GateId::Identity,
    ];

    /// Fixed qubit count, or `None` for the identity, which comes in any size.
    pub fn arity(self) -> Option<usize> {
        match self {
            GateId::Cnot | GateId::Cz | GateId::Swap => Some(2),
            GateId::Toffoli | GateId::Fredkin => Some(3),
            GateId::Cccz => Some(4),
            GateId::Identity => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GateId::Cnot => "CNOT",
            GateId::Cz => "CZ",
            GateId::Swap => "SWAP",
            GateId::Toffoli => "Toffoli",
            GateId::Fredkin => "Fredkin",
            GateId::Cccz => "CCCZ",
            GateId::Identity => "Identity",
        }
    }
}

impl fmt::Display for GateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GateId {
    type Err = QptError;

    fn from_str(s: &str) -> Result<Self> {
        GateId::ALL
            .into_iter()
            .find(|g| g.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| QptError::config(format!("unknown gate {s:?}")))
    }
}

/// A gate from the catalog together with its unitary matrix in the
/// computational basis (first qubit most significant).
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryGate {
    id: GateId,
    n_qubits: usize,
    matrix: CMatrix,
}

impl UnitaryGate {
    /// Builds a catalog gate. `n_qubits` is required for the identity and
    /// must match the gate's arity otherwise.
    pub fn new(id: GateId, n_qubits: Option<usize>) -> Result<Self> {
        let n = match (id.arity(), n_qubits) {
            (Some(a), None) => a,
            (Some(a), Some(n)) if a == n => a,
            (Some(a), Some(n)) => {
                return Err(QptError::config(format!("{id} acts on {a} qubits, not {n}")))
            }
            (None, Some(n)) if (1..=6).contains(&n) => n,
            (None, _) => {
                return Err(QptError::config(
                    "the identity gate needs a qubit count between 1 and 6",
                ))
            }
        };
        let dim = 1usize << n;
        let matrix = match id {
            GateId::Cnot => permutation(dim, &[(2, 3)]),
            GateId::Swap => permutation(dim, &[(1, 2)]),
            GateId::Toffoli => permutation(dim, &[(6, 7)]),
            GateId::Fredkin => permutation(dim, &[(5, 6)]),
            GateId::Cz | GateId::Cccz => {
                let mut m = CMatrix::identity(dim, dim);
                m[(dim - 1, dim - 1)] = C64::new(-1.0, 0.0);
                m
            }
            GateId::Identity => CMatrix::identity(dim, dim),
        };
        Ok(UnitaryGate {
            id,
            n_qubits: n,
            matrix,
        })
    }

    /// Catalog gate with a fixed arity. Panics for the identity.
    pub fn standard(id: GateId) -> Self {
        Self::new(id, None).expect("gate with fixed arity")
    }

    pub fn identity(n_qubits: usize) -> Result<Self> {
        Self::new(GateId::Identity, Some(n_qubits))
    }

    pub fn id(&self) -> GateId {
        self.id
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }
}

fn permutation(dim: usize, swaps: &[(usize, usize)]) -> CMatrix {
    let mut image: Vec<usize> = (0..dim).collect();
    for &(a, b) in swaps {
        image.swap(a, b);
    }
    let mut m = CMatrix::zeros(dim, dim);
    for (col, &row) in image.iter().enumerate() {
        m[(row, col)] = C64::new(1.0, 0.0);
    }
    m
}
