use std::fmt;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::Sl2Matrix;
use crate::arith::{factorize, kronecker};
use crate::error::{Error, Result};
use crate::serde_dec;

/// Continued-fraction steps allowed while searching for the fundamental unit.
const CF_STEP_LIMIT: usize = 1_000_000;

/// A unit `(x + y sqrt(D_K)) / 2` of the maximal order of `Q(sqrt(D_K))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadUnit {
    #[serde(with = "serde_dec::bigint")]
    pub x: BigInt,
    #[serde(with = "serde_dec::bigint")]
    pub y: BigInt,
}

impl QuadUnit {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        QuadUnit { x: x.into(), y: y.into() }
    }

    pub fn one() -> Self {
        QuadUnit::new(2, 0)
    }

    pub fn mul(&self, other: &QuadUnit, disc: &BigInt) -> QuadUnit {
        let x = (&self.x * &other.x + disc * &self.y * &other.y) / 2;
        let y = (&self.x * &other.y + &other.x * &self.y) / 2;
        QuadUnit { x, y }
    }

    pub fn pow(&self, exp: u32, disc: &BigInt) -> QuadUnit {
        (0..exp).fold(QuadUnit::one(), |acc, _| acc.mul(self, disc))
    }

    /// `(x^2 - D_K y^2) / 4`.
    pub fn norm(&self, disc: &BigInt) -> BigInt {
        (&self.x * &self.x - disc * &self.y * &self.y) / 4
    }

    pub fn approx(&self, disc: i128) -> f64 {
        let x: f64 = self.x.to_string().parse().unwrap_or(f64::INFINITY);
        let y: f64 = self.y.to_string().parse().unwrap_or(f64::INFINITY);
        (x + y * (disc as f64).sqrt()) / 2.0
    }
}

impl fmt::Display for QuadUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}*sqrt(D_K))/2", self.x, self.y)
    }
}

/// Field data of `K = Q(eps)` for the eigenvalue `eps` of a hyperbolic
/// matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadFieldData {
    pub trace: i64,
    /// Set for `t < -2`; the field data is that of `|t|` and `eps = -u^k`.
    pub negative_trace: bool,
    /// `D = t^2 - 4`.
    #[serde(with = "serde_dec::i128")]
    pub disc: i128,
    /// Fundamental discriminant `D_K` of `Q(sqrt(D))`.
    #[serde(with = "serde_dec::i128")]
    pub field_disc: i128,
    /// `f` with `D = f^2 D_K`.
    #[serde(with = "serde_dec::u128")]
    pub conductor: u128,
    pub fundamental_unit: QuadUnit,
    pub unit_norm: i8,
    /// `k` with `|eps| = u^k`.
    pub power_index: u32,
    /// `D_A = 4 (t^2 - 4)`.
    #[serde(with = "serde_dec::i128")]
    pub d_a: i128,
}

impl QuadFieldData {
    /// `eps` in the `(x + y sqrt(D_K))/2` representation, sign included.
    pub fn epsilon(&self) -> QuadUnit {
        let x = BigInt::from(self.trace);
        let y = BigInt::from(self.conductor);
        if self.negative_trace {
            QuadUnit { x, y: -y }
        } else {
            QuadUnit { x, y }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PrimeSplitting {
    Split,
    Inert,
    Ramified,
}

impl PrimeSplitting {
    pub fn code(&self) -> char {
        match self {
            PrimeSplitting::Split => 'S',
            PrimeSplitting::Inert => 'I',
            PrimeSplitting::Ramified => 'R',
        }
    }

    pub fn from_kronecker(symbol: i8) -> Self {
        match symbol {
            1 => PrimeSplitting::Split,
            -1 => PrimeSplitting::Inert,
            _ => PrimeSplitting::Ramified,
        }
    }
}

/// Splitting type of the prime `p` in the quadratic field of discriminant
/// `field_disc`.
pub fn classify_prime(p: u64, field_disc: i128) -> PrimeSplitting {
    PrimeSplitting::from_kronecker(kronecker(field_disc, p))
}

pub fn field_data(matrix: &Sl2Matrix) -> Result<QuadFieldData> {
    matrix.require_hyperbolic()?;
    let t = matrix.trace();
    let abs_t = t.unsigned_abs() as u128;
    let disc = abs_t * abs_t - 4;

    // D = f^2 m with m squarefree
    let factored = factorize(disc)?;
    let (mut squarefree, mut square_root) = (1u128, 1u128);
    for &(p, e) in factored.factors() {
        if e % 2 == 1 {
            squarefree *= p;
        }
        square_root *= p.pow(e / 2);
    }
    let (field_disc, conductor) = if squarefree % 4 == 1 {
        (squarefree, square_root)
    } else {
        (4 * squarefree, square_root / 2)
    };
    let field_disc = i128::try_from(field_disc).map_err(|_| Error::overflow("discriminant exceeds 127 bits"))?;

    let (unit, unit_norm) = fundamental_unit(field_disc)?;
    let big_disc = BigInt::from(field_disc);
    let eps = QuadUnit::new(abs_t, conductor);

    let mut power = unit.clone();
    let mut k = 1u32;
    while power != eps {
        if power.y > eps.y {
            return Err(Error::invalid(format!(
                "eigenvalue of trace {t} is not a power of the computed fundamental unit {unit}"
            )));
        }
        power = power.mul(&unit, &big_disc);
        k += 1;
    }

    Ok(QuadFieldData {
        trace: t,
        negative_trace: t < 0,
        disc: disc as i128,
        field_disc,
        conductor,
        fundamental_unit: unit,
        unit_norm,
        power_index: k,
        d_a: 4 * disc as i128,
    })
}

/// Smallest unit `> 1` of the maximal order of discriminant `disc`, from the
/// continued-fraction expansion of `omega = (s + sqrt(disc))/2`,
/// `s = disc mod 2`. The first convergent `h/k` for which
/// `h - k * conj(omega)` is a unit gives it.
fn fundamental_unit(disc: i128) -> Result<(QuadUnit, i8)> {
    if disc <= 1 {
        return Err(Error::invalid(format!("{disc} is not a real quadratic discriminant")));
    }
    let root = (disc as u128).sqrt() as i128;
    let s = disc % 2;
    let big_disc = BigInt::from(disc);
    let four = BigInt::from(4);

    let (mut p, mut q) = (s, 2i128);
    let (mut h_prev, mut h) = (BigInt::zero(), BigInt::one());
    let (mut k_prev, mut k) = (BigInt::one(), BigInt::zero());
    for _ in 0..CF_STEP_LIMIT {
        let a = (p + root) / q;
        let big_a = BigInt::from(a);
        (h_prev, h) = (h.clone(), &big_a * &h + &h_prev);
        (k_prev, k) = (k.clone(), &big_a * &k + &k_prev);

        let x = BigInt::from(2) * &h - BigInt::from(s) * &k;
        let value = &x * &x - &big_disc * &k * &k;
        if value.abs() == four {
            let norm = if value.is_positive() { 1 } else { -1 };
            return Ok((QuadUnit { x, y: k }, norm));
        }
        p = a * q - p;
        q = (disc - p * p) / q;
    }
    Err(Error::ResourceLimit {
        what: format!("continued fraction for the fundamental unit of discriminant {disc}"),
        limit: CF_STEP_LIMIT as u128,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(t: i64) -> QuadFieldData {
        field_data(&Sl2Matrix::companion(t)).unwrap()
    }

    #[test]
    fn trace_three() {
        let fd = data(3);
        assert_eq!((fd.disc, fd.field_disc, fd.conductor), (5, 5, 1));
        assert_eq!(fd.fundamental_unit, QuadUnit::new(1, 1));
        assert_eq!(fd.unit_norm, -1);
        assert_eq!(fd.power_index, 2);
        assert_eq!(fd.d_a, 20);
        // ((1 + sqrt5)/2)^2 = (3 + sqrt5)/2
        assert_eq!(fd.fundamental_unit.pow(2, &BigInt::from(5)), QuadUnit::new(3, 1));
    }

    #[test]
    fn trace_six() {
        let fd = data(6);
        assert_eq!((fd.disc, fd.field_disc, fd.conductor), (32, 8, 2));
        // 1 + sqrt2 = (2 + sqrt8)/2
        assert_eq!(fd.fundamental_unit, QuadUnit::new(2, 1));
        assert_eq!(fd.unit_norm, -1);
        assert_eq!(fd.power_index, 2);
        // (1 + sqrt2)^2 = 3 + 2 sqrt2 = (6 + 2 sqrt8)/2
        assert_eq!(fd.epsilon(), QuadUnit::new(6, 2));
    }

    #[test]
    fn negative_trace_shares_field_data() {
        let pos = data(3);
        let neg = data(-3);
        assert!(neg.negative_trace);
        assert_eq!(neg.trace, -3);
        assert_eq!(
            (neg.field_disc, &neg.fundamental_unit, neg.unit_norm, neg.power_index),
            (pos.field_disc, &pos.fundamental_unit, pos.unit_norm, pos.power_index)
        );
        assert_eq!(neg.epsilon(), QuadUnit::new(-3, -1));
    }

    #[test]
    fn norm_plus_one_unit() {
        // t = 4: D = 12, D_K = 12, u = 2 + sqrt3 = eps
        let fd = data(4);
        assert_eq!(fd.field_disc, 12);
        assert_eq!(fd.fundamental_unit, QuadUnit::new(4, 1));
        assert_eq!((fd.unit_norm, fd.power_index), (1, 1));
    }

    #[test]
    fn higher_power_index() {
        // t = 18: eps = 9 + 4 sqrt5 = ((1 + sqrt5)/2)^6
        let fd = data(18);
        assert_eq!((fd.field_disc, fd.conductor), (5, 8));
        assert_eq!(fd.power_index, 6);
    }

    #[test]
    fn rejects_non_hyperbolic() {
        assert!(field_data(&Sl2Matrix::companion(2)).is_err());
        assert!(field_data(&Sl2Matrix::companion(1)).is_err());
    }

    #[test]
    fn prime_classes() {
        assert_eq!(classify_prime(11, 5), PrimeSplitting::Split);
        assert_eq!(classify_prime(5, 5), PrimeSplitting::Ramified);
        assert_eq!(classify_prime(7, 5), PrimeSplitting::Inert);
        assert_eq!(classify_prime(2, 8), PrimeSplitting::Ramified);
        assert_eq!(classify_prime(2, 17), PrimeSplitting::Split);
    }
}
