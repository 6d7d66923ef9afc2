use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::integer::carmichael_lambda;
use super::prime::{MatrixOrderEngine, PrimeOrderRecord};
use crate::arith::{crt_lcm_combine, factorize, gcd, FactoredInteger};
use crate::error::{Error, Result};
use crate::quad::{PrimeSplitting, QuadFieldData, Sl2Matrix};
use crate::serde_dec;

/// Exact order modulo a composite `N` with the square/good/bad split
/// `N = s^2 N_G N_B` and the squarefree kernel `d0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositeOrderRecord {
    pub n: u64,
    #[serde(with = "serde_dec::u128")]
    pub ord: u128,
    #[serde(with = "serde_dec::u128")]
    pub lambda: u128,
    pub s: u64,
    pub n_good: u64,
    pub n_bad: u64,
    /// `d / gcd(d, D_A)` where `N = d s^2` with `d` squarefree.
    pub d0: u64,
}

/// Per-prime ingredients of a composite order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeFactorOrder {
    pub p: u64,
    pub exponent: u32,
    pub record: PrimeOrderRecord,
    /// Order modulo `p^exponent`.
    pub ord_power: u64,
}

pub(crate) fn prime_power(p: u64, a: u32) -> Result<u64> {
    p.checked_pow(a).ok_or_else(|| Error::overflow(format!("{p}^{a} exceeds 64 bits")))
}

/// Combines per-prime orders into the order modulo `n` and its
/// decomposition. `d_a` is `D_A` for matrices and `None` for integer bases.
pub(crate) fn assemble(
    n: u64,
    factored: &FactoredInteger,
    parts: &[PrimeFactorOrder],
    d_a: Option<i128>,
) -> Result<CompositeOrderRecord> {
    let pairs: Vec<(u128, u128)> = parts
        .iter()
        .map(|f| Ok((f.ord_power as u128, prime_power(f.p, f.exponent)? as u128)))
        .collect::<Result<_>>()?;
    let ord = crt_lcm_combine(&pairs)?;
    let lambda = carmichael_lambda(factored);

    let (mut s, mut n_good, mut n_bad) = (1u64, 1u64, 1u64);
    for f in parts {
        s *= f.p.pow(f.exponent / 2);
        if f.exponent % 2 == 1 {
            if f.record.is_bad {
                n_bad *= f.p;
            } else {
                n_good *= f.p;
            }
        }
    }
    let d = n_good * n_bad;
    let d0 = match d_a {
        Some(d_a) => d / gcd(d as u128, d_a.unsigned_abs()) as u64,
        None => d,
    };
    Ok(CompositeOrderRecord { n, ord, lambda, s, n_good, n_bad, d0 })
}

impl MatrixOrderEngine {
    /// Order modulo `p^a` from the order modulo `p`: the kernel of reduction
    /// is a `p`-group, so the answer is `base_ord * p^e` with `e < a`.
    pub fn prime_power_order(&self, p: u64, a: u32, base_ord: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::invalid("prime power exponent must be at least 1"));
        }
        let modulus = prime_power(p, a)?;
        let base = self.matrix().reduce(modulus);
        if !base.reduce_to(p).pow(base_ord as u128).is_identity() {
            return Err(Error::invalid(format!("{base_ord} is not the order mod {p}")));
        }
        let mut power = base.pow(base_ord as u128);
        let mut ord = base_ord;
        for _ in 1..a {
            if power.is_identity() {
                break;
            }
            power = power.pow(p as u128);
            ord = ord
                .checked_mul(p)
                .ok_or_else(|| Error::overflow("order modulo prime power exceeds 64 bits"))?;
        }
        debug_assert!(power.is_identity());
        Ok(ord)
    }

    /// Order modulo `n` with its per-prime ingredients. `prime_record`
    /// supplies order records for the prime divisors (a cache, or
    /// [`MatrixOrderEngine::prime_record`]).
    pub fn composite_record(
        &self,
        n: u64,
        prime_record: impl Fn(u64) -> Result<PrimeOrderRecord>,
    ) -> Result<(CompositeOrderRecord, Vec<PrimeFactorOrder>)> {
        if n < 2 {
            return Err(Error::invalid(format!("modulus must be at least 2, got {n}")));
        }
        let factored = factorize(n as u128)?;
        let parts = factored
            .factors()
            .iter()
            .map(|&(p, a)| {
                let p = p as u64;
                let record = prime_record(p)?;
                let ord_power = if a == 1 { record.ord } else { self.prime_power_order(p, a, record.ord)? };
                Ok(PrimeFactorOrder { p, exponent: a, record, ord_power })
            })
            .collect::<Result<Vec<_>>>()?;
        let d_a = 4 * self.matrix().char_discriminant();
        Ok((assemble(n, &factored, &parts, Some(d_a))?, parts))
    }
}

/// Minimal `m` with `A^m = I mod p^a`, given the order mod `p`.
pub fn matrix_order_mod_prime_power(matrix: &Sl2Matrix, p: u64, a: u32, base_ord: u64) -> Result<u64> {
    MatrixOrderEngine::new(matrix)?.prime_power_order(p, a, base_ord)
}

/// Exact order of `matrix` modulo `n`.
pub fn matrix_order_mod_n(matrix: &Sl2Matrix, n: u64, fd: &QuadFieldData) -> Result<CompositeOrderRecord> {
    if fd.trace != matrix.trace() {
        return Err(Error::invalid("field data does not belong to this matrix"));
    }
    let engine = MatrixOrderEngine::new(matrix)?;
    Ok(engine.composite_record(n, |p| engine.prime_record(p))?.0)
}

/// `prod_{p | d0} ord_p / exp(3 (ln ln x)^4)`.
pub fn prop11_bound(record: &CompositeOrderRecord, per_prime_orders: &BTreeMap<u64, u64>, x: u64) -> Result<f64> {
    if x < 16 {
        return Err(Error::invalid(format!("x must be at least 16, got {x}")));
    }
    let mut log_product = 0.0f64;
    for p in factorize(record.d0 as u128)?.primes() {
        let p = p as u64;
        let ord = per_prime_orders
            .get(&p)
            .ok_or_else(|| Error::invalid(format!("no order supplied for prime {p} dividing d0")))?;
        log_product += (*ord as f64).ln();
    }
    let loglog = (x as f64).ln().ln();
    Ok((log_product - 3.0 * loglog.powi(4)).exp())
}

/// `true` for prime records that enter the `prod ord_p` comparisons.
pub(crate) fn is_unramified(record: &PrimeOrderRecord) -> bool {
    record.class != PrimeSplitting::Ramified
}
