use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::mul_mod;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixClass {
    Hyperbolic,
    Parabolic,
    Elliptic,
}

impl fmt::Display for MatrixClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixClass::Hyperbolic => "hyperbolic",
            MatrixClass::Parabolic => "parabolic",
            MatrixClass::Elliptic => "elliptic",
        })
    }
}

/// An integer 2x2 matrix of determinant one, `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[[i64; 2]; 2]", into = "[[i64; 2]; 2]")]
pub struct Sl2Matrix {
    entries: [i64; 4],
    trace: i64,
    class: MatrixClass,
}

/// Checks `det = 1` and classifies by `|trace|` against 2.
pub fn classify_matrix(rows: [[i64; 2]; 2]) -> Result<Sl2Matrix> {
    let [[a, b], [c, d]] = rows;
    let det = a as i128 * d as i128 - b as i128 * c as i128;
    if det != 1 {
        return Err(Error::invalid(format!("determinant is {det}, expected 1")));
    }
    let trace = a
        .checked_add(d)
        .ok_or_else(|| Error::overflow("trace does not fit in 64 bits"))?;
    let class = match trace.unsigned_abs() {
        0 | 1 => MatrixClass::Elliptic,
        2 => MatrixClass::Parabolic,
        _ => MatrixClass::Hyperbolic,
    };
    Ok(Sl2Matrix { entries: [a, b, c, d], trace, class })
}

impl Sl2Matrix {
    /// Companion matrix `[[t, -1], [1, 0]]` of `x^2 - t x + 1`.
    pub fn companion(trace: i64) -> Self {
        classify_matrix([[trace, -1], [1, 0]]).expect("companion matrix has determinant one")
    }

    pub fn entries(&self) -> [i64; 4] {
        self.entries
    }

    pub fn rows(&self) -> [[i64; 2]; 2] {
        let [a, b, c, d] = self.entries;
        [[a, b], [c, d]]
    }

    pub fn trace(&self) -> i64 {
        self.trace
    }

    pub fn class(&self) -> MatrixClass {
        self.class
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.class == MatrixClass::Hyperbolic
    }

    pub fn require_hyperbolic(&self) -> Result<&Self> {
        if self.is_hyperbolic() {
            Ok(self)
        } else {
            Err(Error::invalid(format!("matrix is {} ({self}); a hyperbolic matrix (|trace| > 2) is required", self.class)))
        }
    }

    /// `t^2 - 4`, the discriminant of the characteristic polynomial.
    pub fn char_discriminant(&self) -> i128 {
        let t = self.trace as i128;
        t * t - 4
    }

    pub fn reduce(&self, modulus: u64) -> ModMatrix {
        ModMatrix::new(self.entries.map(|e| (e as i128).rem_euclid(modulus as i128) as u64), modulus)
    }
}

impl TryFrom<[[i64; 2]; 2]> for Sl2Matrix {
    type Error = Error;

    fn try_from(rows: [[i64; 2]; 2]) -> Result<Self> {
        classify_matrix(rows)
    }
}

impl From<Sl2Matrix> for [[i64; 2]; 2] {
    fn from(m: Sl2Matrix) -> Self {
        m.rows()
    }
}

impl fmt::Display for Sl2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.entries;
        write!(f, "{a},{b};{c},{d}")
    }
}

/// Parses `a,b;c,d`.
impl FromStr for Sl2Matrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let malformed = || Error::invalid(format!("malformed matrix {s:?}; expected \"a,b;c,d\""));
        let rows: Vec<&str> = s.split(';').collect();
        if rows.len() != 2 {
            return Err(malformed());
        }
        let mut out = [[0i64; 2]; 2];
        for (i, row) in rows.iter().enumerate() {
            let cells: Vec<&str> = row.split(',').collect();
            if cells.len() != 2 {
                return Err(malformed());
            }
            for (j, cell) in cells.iter().enumerate() {
                out[i][j] = cell.trim().parse().map_err(|_| malformed())?;
            }
        }
        classify_matrix(out)
    }
}

/// A 2x2 matrix with entries reduced modulo `modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModMatrix {
    pub m: [u64; 4],
    pub modulus: u64,
}

impl ModMatrix {
    pub fn new(m: [u64; 4], modulus: u64) -> Self {
        ModMatrix { m: m.map(|x| x % modulus), modulus }
    }

    /// Reduction to a divisor of the current modulus.
    pub fn reduce_to(&self, modulus: u64) -> ModMatrix {
        debug_assert_eq!(self.modulus % modulus, 0);
        ModMatrix::new(self.m, modulus)
    }

    pub fn identity(modulus: u64) -> Self {
        ModMatrix::new([1, 0, 0, 1], modulus)
    }

    pub fn is_identity(&self) -> bool {
        *self == ModMatrix::identity(self.modulus)
    }

    /// True when the matrix is congruent to a scalar matrix.
    pub fn is_scalar(&self) -> bool {
        self.m[1] == 0 && self.m[2] == 0 && self.m[0] == self.m[3]
    }

    pub fn mul(&self, other: &ModMatrix) -> ModMatrix {
        let n = self.modulus;
        let [a, b, c, d] = self.m;
        let [e, f, g, h] = other.m;
        let add = |x: u64, y: u64| ((x as u128 + y as u128) % n as u128) as u64;
        ModMatrix {
            m: [
                add(mul_mod(a, e, n), mul_mod(b, g, n)),
                add(mul_mod(a, f, n), mul_mod(b, h, n)),
                add(mul_mod(c, e, n), mul_mod(d, g, n)),
                add(mul_mod(c, f, n), mul_mod(d, h, n)),
            ],
            modulus: n,
        }
    }

    pub fn pow(&self, mut exp: u128) -> ModMatrix {
        let mut result = ModMatrix::identity(self.modulus);
        let mut base = *self;
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        result
    }

    /// Smallest `k >= 1` with `self^k = I`, by repeated multiplication.
    /// Only meant for small moduli; gives up after `cap` steps.
    pub fn brute_order(&self, cap: u64) -> Option<u64> {
        let mut acc = *self;
        for k in 1..=cap {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.mul(self);
        }
        None
    }
}
