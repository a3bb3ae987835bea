//! Process-matrix tables transcribed from the reference tables by script.
//! Each table lists its nonzero labels and the rational entries `(num, den)`;
//! every entry outside the listed block is zero.

pub struct Table {
    pub labels: &'static [&'static str],
    pub entries: &'static [&'static [(i64, i64)]],
}

pub const CNOT_PAULI: Table = Table {
    labels: &["II", "IX", "ZI", "ZX"],
    entries: &[
        &[(1, 4), (1, 4), (1, 4), (-1, 4)],
        &[(1, 4), (1, 4), (1, 4), (-1, 4)],
        &[(1, 4), (1, 4), (1, 4), (-1, 4)],
        &[(-1, 4), (-1, 4), (-1, 4), (1, 4)],
    ],
};

pub const CNOT_COMPUTATIONAL: Table = Table {
    labels: &["00|00", "01|01", "10|11", "11|10"],
    entries: &[
        &[(1, 1), (1, 1), (1, 1), (1, 1)],
        &[(1, 1), (1, 1), (1, 1), (1, 1)],
        &[(1, 1), (1, 1), (1, 1), (1, 1)],
        &[(1, 1), (1, 1), (1, 1), (1, 1)],
    ],
};

pub const CZ_PAULI: Table = Table {
    labels: &["II", "IZ", "ZI", "ZZ"],
    entries: &[
        &[(1, 4), (1, 4), (1, 4), (-1, 4)],
        &[(1, 4), (1, 4), (1, 4), (-1, 4)],
        &[(1, 4), (1, 4), (1, 4), (-1, 4)],
        &[(-1, 4), (-1, 4), (-1, 4), (1, 4)],
    ],
};

pub const SWAP_PAULI: Table = Table {
    labels: &["II", "XX", "YY", "ZZ"],
    entries: &[
        &[(1, 4), (1, 4), (1, 4), (1, 4)],
        &[(1, 4), (1, 4), (1, 4), (1, 4)],
        &[(1, 4), (1, 4), (1, 4), (1, 4)],
        &[(1, 4), (1, 4), (1, 4), (1, 4)],
    ],
};

pub const TOFFOLI_PAULI: Table = Table {
    labels: &["III", "IIX", "IZI", "IZX", "ZII", "ZIX", "ZZI", "ZZX"],
    entries: &[
        &[(9, 16), (3, 16), (3, 16), (-3, 16), (3, 16), (-3, 16), (-3, 16), (3, 16)],
        &[(3, 16), (1, 16), (1, 16), (-1, 16), (1, 16), (-1, 16), (-1, 16), (1, 16)],
        &[(3, 16), (1, 16), (1, 16), (-1, 16), (1, 16), (-1, 16), (-1, 16), (1, 16)],
        &[(-3, 16), (-1, 16), (-1, 16), (1, 16), (-1, 16), (1, 16), (1, 16), (-1, 16)],
        &[(3, 16), (1, 16), (1, 16), (-1, 16), (1, 16), (-1, 16), (-1, 16), (1, 16)],
        &[(-3, 16), (-1, 16), (-1, 16), (1, 16), (-1, 16), (1, 16), (1, 16), (-1, 16)],
        &[(-3, 16), (-1, 16), (-1, 16), (1, 16), (-1, 16), (1, 16), (1, 16), (-1, 16)],
        &[(3, 16), (1, 16), (1, 16), (-1, 16), (1, 16), (-1, 16), (-1, 16), (1, 16)],
    ],
};

pub const FREDKIN_PAULI: Table = Table {
    labels: &["III", "IXX", "IYY", "IZZ", "ZII", "ZXX", "ZYY", "ZZZ"],
    entries: &[
        &[(9, 16), (3, 16), (3, 16), (3, 16), (3, 16), (-3, 16), (-3, 16), (-3, 16)],
        &[(3, 16), (1, 16), (1, 16), (1, 16), (1, 16), (-1, 16), (-1, 16), (-1, 16)],
        &[(3, 16), (1, 16), (1, 16), (1, 16), (1, 16), (-1, 16), (-1, 16), (-1, 16)],
        &[(3, 16), (1, 16), (1, 16), (1, 16), (1, 16), (-1, 16), (-1, 16), (-1, 16)],
        &[(3, 16), (1, 16), (1, 16), (1, 16), (1, 16), (-1, 16), (-1, 16), (-1, 16)],
        &[(-3, 16), (-1, 16), (-1, 16), (-1, 16), (-1, 16), (1, 16), (1, 16), (1, 16)],
        &[(-3, 16), (-1, 16), (-1, 16), (-1, 16), (-1, 16), (1, 16), (1, 16), (1, 16)],
        &[(-3, 16), (-1, 16), (-1, 16), (-1, 16), (-1, 16), (1, 16), (1, 16), (1, 16)],
    ],
};

pub const CCCZ_PAULI: Table = Table {
    labels: &["IIII", "IIIZ", "IIZI", "IIZZ", "IZII", "IZIZ", "IZZI", "IZZZ", "ZIII", "ZIIZ", "ZIZI", "ZIZZ", "ZZII", "ZZIZ", "ZZZI", "ZZZZ"],
    entries: &[
        &[(49, 64), (7, 64), (7, 64), (-7, 64), (7, 64), (-7, 64), (-7, 64), (7, 64), (7, 64), (-7, 64), (-7, 64), (7, 64), (-7, 64), (7, 64), (7, 64), (-7, 64)],
        &[(7, 64), (1, 64), (1, 64), (-1, 64), (1, 64), (-1, 64), (-1, 64), (1, 64), (1, 64), (-1, 64), (-1, 64), (1, 64), (-1, 64), (1, 64), (1, 64), (-1, 64)],
        &[(7, 64), (1, 64), (1, 64), (-1, 64), (1, 64), (-1, 64), (-1, 64), (1, 64), (1, 64), (-1, 64), (-1, 64), (1, 64), (-1, 64), (1, 64), (1, 64), (-1, 64)],
        &[(-7, 64), (-1, 64), (-1, 64), (1, 64), (-1, 64), (1, 64), (1, 64), (-1, 64), (-1, 64), (1, 64), (1, 64), (-1, 64), (1, 64), (-1, 64), (-1, 64), (1, 64)],
        &[(7, 64), (1, 64), (1, 64), (-1, 64), (1, 64), (-1, 64), (-1, 64), (1, 64), (1, 64), (-1, 64), (-1, 64), (1, 64), (-1, 64), (1, 64), (1, 64), (-1, 64)],
        &[(-7, 64), (-1, 64), (-1, 64), (1, 64), (-1, 64), (1, 64), (1, 64), (-1, 64), (-1, 64), (1, 64), (1, 64), (-1, 64), (1, 64), (-1, 64), (-1, 64), (1, 64)],
        &[(-7, 64), (-1, 64), (-1, 64), (1, 64), (-1, 64), (1, 64), (1, 64), (-1, 64), (-1, 64), (1, 64), (1, 64), (-1, 64), (1, 64), (-1, 64), (-1, 64), (1, 64)],
        &[(7, 64), (1, 64), (1, 64), (-1, 64), (1, 64), (-1, 64), (-1, 64), (1, 64), (1, 64), (-1, 64), (-1, 64), (1, 64), (-1, 64), (1, 64), (1, 64), (-1, 64)],
        &[(7, 64), (1, 64), (1, 64), (-1, 64), (1, 64), (-1, 64), (-1, 64), (1, 64), (1, 64), (-1, 64), (-1, 64), (1, 64), (-1, 64), (1, 64), (1, 64), (-1, 64)],
        &[(-7, 64), (-1, 64), (-1, 64), (1, 64), (-1, 64), (1, 64), (1, 64), (-1, 64), (-1, 64), (1, 64), (1, 64), (-1, 64), (1, 64), (-1, 64), (-1, 64), (1, 64)],
        &[(-7, 64), (-1, 64), (-1, 64), (1, 64), (-1, 64), (1, 64), (1, 64), (-1, 64), (-1, 64), (1, 64), (1, 64), (-1, 64), (1, 64), (-1, 64), (-1, 64), (1, 64)],
        &[(7, 64), (1, 64), (1, 64), (-1, 64), (1, 64), (-1, 64), (-1, 64), (1, 64), (1, 64), (-1, 64), (-1, 64), (1, 64), (-1, 64), (1, 64), (1, 64), (-1, 64)],
        &[(-7, 64), (-1, 64), (-1, 64), (1, 64), (-1, 64), (1, 64), (1, 64), (-1, 64), (-1, 64), (1, 64), (1, 64), (-1, 64), (1, 64), (-1, 64), (-1, 64), (1, 64)],
        &[(7, 64), (1, 64), (1, 64), (-1, 64), (1, 64), (-1, 64), (-1, 64), (1, 64), (1, 64), (-1, 64), (-1, 64), (1, 64), (-1, 64), (1, 64), (1, 64), (-1, 64)],
        &[(7, 64), (1, 64), (1, 64), (-1, 64), (1, 64), (-1, 64), (-1, 64), (1, 64), (1, 64), (-1, 64), (-1, 64), (1, 64), (-1, 64), (1, 64), (1, 64), (-1, 64)],
        &[(-7, 64), (-1, 64), (-1, 64), (1, 64), (-1, 64), (1, 64), (1, 64), (-1, 64), (-1, 64), (1, 64), (1, 64), (-1, 64), (1, 64), (-1, 64), (-1, 64), (1, 64)],
    ],
};
