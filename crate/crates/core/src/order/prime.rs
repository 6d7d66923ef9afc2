use serde::{Deserialize, Serialize};

use crate::arith::{element_order, factorize, inv_mod, is_prime, kronecker, minimal_order, mul_mod, sqrt_mod};
use crate::error::{Error, Result};
use crate::quad::{PrimeSplitting, QuadFieldData, Sl2Matrix};

/// Order of a matrix (or integer) modulo a prime, placed in its torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeOrderRecord {
    pub p: u64,
    pub class: PrimeSplitting,
    /// `p - 1` (split) or `p + 1` (inert); absent when the reduction is
    /// degenerate.
    pub torus_order: Option<u64>,
    pub ord: u64,
    /// Index of the cyclic group generated mod `p` in its torus.
    pub index: Option<u64>,
    pub is_bad: bool,
}

/// `ord <= p / ln p`.
pub fn is_bad_order(ord: u64, p: u64) -> bool {
    (ord as f64) <= p as f64 / (p as f64).ln()
}

/// Precomputed data for repeated order queries on one hyperbolic matrix.
#[derive(Debug, Clone)]
pub struct MatrixOrderEngine {
    matrix: Sl2Matrix,
    trace: i64,
    disc: i128,
}

impl MatrixOrderEngine {
    pub fn new(matrix: &Sl2Matrix) -> Result<Self> {
        matrix.require_hyperbolic()?;
        Ok(MatrixOrderEngine { matrix: *matrix, trace: matrix.trace(), disc: matrix.char_discriminant() })
    }

    pub fn matrix(&self) -> &Sl2Matrix {
        &self.matrix
    }

    /// Order record at the prime `p` (primality is the caller's contract).
    ///
    /// Primes dividing `t^2 - 4` give a repeated eigenvalue; they are
    /// reported as ramified, which also covers primes dividing the conductor
    /// of `Z[eps]`. For `p <= 3` the order comes from direct powering.
    pub fn prime_record(&self, p: u64) -> Result<PrimeOrderRecord> {
        let degenerate = self.disc % p as i128 == 0;
        let class = if degenerate {
            PrimeSplitting::Ramified
        } else {
            PrimeSplitting::from_kronecker(kronecker(self.disc, p))
        };
        let torus_order = match class {
            PrimeSplitting::Split => Some(p - 1),
            PrimeSplitting::Inert => Some(p + 1),
            PrimeSplitting::Ramified => None,
        };

        let ord = if p <= 3 {
            self.matrix.reduce(p).brute_order(1000).expect("SL2(F_p) element orders are small")
        } else {
            match class {
                PrimeSplitting::Split => self.split_order(p)?,
                PrimeSplitting::Inert => self.inert_order(p)?,
                PrimeSplitting::Ramified => self.degenerate_order(p),
            }
        };
        let index = torus_order.map(|t| {
            debug_assert_eq!(t % ord, 0, "order {ord} does not divide torus {t} at p={p}");
            t / ord
        });
        Ok(PrimeOrderRecord {
            p,
            class,
            torus_order,
            ord,
            index,
            is_bad: class == PrimeSplitting::Ramified || is_bad_order(ord, p),
        })
    }

    fn trace_mod(&self, p: u64) -> u64 {
        (self.trace as i128).rem_euclid(p as i128) as u64
    }

    /// Eigenvalue `(t + sqrt(D))/2` lies in `F_p`; its order divides `p - 1`.
    fn split_order(&self, p: u64) -> Result<u64> {
        let t = self.trace_mod(p);
        let d = self.disc.rem_euclid(p as i128) as u64;
        let root = sqrt_mod(d, p).expect("split prime has a square discriminant");
        let half = inv_mod(2, p).expect("odd prime");
        let eigen = mul_mod((t + root) % p, half, p);
        element_order(eigen, p, &factorize((p - 1) as u128)?)
    }

    /// The eigenvalue is the class of `x` in `F_p[x]/(x^2 - t x + 1)`, a
    /// norm-one element; its order divides `p + 1`.
    fn inert_order(&self, p: u64) -> Result<u64> {
        let ring = CompanionRing { t: self.trace_mod(p), p };
        let x = (0, 1);
        let exponent = factorize((p + 1) as u128)?;
        debug_assert_eq!(ring.pow(x, p + 1), (1, 0));
        Ok(minimal_order(&exponent, |d| ring.pow(x, d) == (1, 0)))
    }

    /// Repeated eigenvalue `t/2 = +-1`; the order is its order times `p`
    /// unless the matrix is scalar mod `p`.
    fn degenerate_order(&self, p: u64) -> u64 {
        let half = inv_mod(2, p).expect("odd prime");
        let lambda = mul_mod(self.trace_mod(p), half, p);
        let lambda_order = if lambda == 1 { 1 } else { 2 };
        if self.matrix.reduce(p).pow(lambda_order as u128).is_identity() {
            lambda_order
        } else {
            lambda_order * p
        }
    }
}

/// `F_p[x]/(x^2 - t x + 1)`; elements are pairs `(a, b)` for `a + b x`.
struct CompanionRing {
    t: u64,
    p: u64,
}

impl CompanionRing {
    fn mul(&self, (a, b): (u64, u64), (c, d): (u64, u64)) -> (u64, u64) {
        let p = self.p;
        let bd = mul_mod(b, d, p);
        // x^2 = t x - 1
        let real = (mul_mod(a, c, p) + p - bd) % p;
        let imag = ((mul_mod(a, d, p) as u128 + mul_mod(b, c, p) as u128 + mul_mod(bd, self.t, p) as u128)
            % p as u128) as u64;
        (real, imag)
    }

    fn pow(&self, mut base: (u64, u64), mut exp: u64) -> (u64, u64) {
        let mut acc = (1 % self.p, 0);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

/// Order of `matrix` modulo the prime `p`, with its torus and index.
pub fn matrix_order_mod_p(matrix: &Sl2Matrix, fd: &QuadFieldData, p: u64) -> Result<PrimeOrderRecord> {
    if fd.trace != matrix.trace() {
        return Err(Error::invalid(format!(
            "field data is for trace {}, matrix has trace {}",
            fd.trace,
            matrix.trace()
        )));
    }
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    MatrixOrderEngine::new(matrix)?.prime_record(p)
}
