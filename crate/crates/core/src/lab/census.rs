use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::config::{ExperimentConfig, Subject};
use super::report::{ExperimentReport, LemmaCensus, LowOrderPrime, ReportKind};
use crate::arith::sieve_primes;
use crate::error::{Error, Result};
use crate::order::MatrixOrderEngine;
use crate::quad::Sl2Matrix;

/// Primes up to this bound are checked against `M`.
pub const CENSUS_PRIME_BOUND: u64 = 100_000;
pub const CENSUS_Y_MAX: u64 = 60;

/// `ln |m|` for nonzero `m` of any size.
pub(crate) fn big_ln(m: &BigInt) -> f64 {
    let bits = m.bits();
    let shift = bits.saturating_sub(64);
    let top: BigInt = m.abs() >> shift;
    let top = u64::try_from(top).expect("at most 64 bits remain");
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

/// `M = prod_{n <= y} det(A^n - I)` and every prime `p <= 10^5` with
/// `ord_p(A) <= y`, each checked for `p | M`.
pub fn lemma_simple_census(matrix: &Sl2Matrix, y: u64) -> Result<LemmaCensus> {
    if !(2..=CENSUS_Y_MAX).contains(&y) {
        return Err(Error::invalid(format!("y must lie in [2, {CENSUS_Y_MAX}], got {y}")));
    }
    let engine = MatrixOrderEngine::new(matrix)?;
    let a = matrix.entries().map(BigInt::from);
    let mut power = a.clone();
    let mut m = BigInt::one();
    for n in 1..=y {
        if n > 1 {
            power = [
                &power[0] * &a[0] + &power[1] * &a[2],
                &power[0] * &a[1] + &power[1] * &a[3],
                &power[2] * &a[0] + &power[3] * &a[2],
                &power[2] * &a[1] + &power[3] * &a[3],
            ];
        }
        let det = (&power[0] - 1) * (&power[3] - 1) - &power[1] * &power[2];
        m *= det;
    }
    if m.is_zero() {
        return Err(Error::invalid("det(A^n - I) vanishes; A is not hyperbolic"));
    }

    let table = sieve_primes(CENSUS_PRIME_BOUND)?;
    let mut low_order_primes = Vec::new();
    for &p in table.primes() {
        let rec = engine.prime_record(p)?;
        if rec.ord <= y {
            let divides_m = (&m % BigInt::from(p)).is_zero();
            low_order_primes.push(LowOrderPrime { p, ord: rec.ord, divides_m });
        }
    }
    Ok(LemmaCensus {
        y,
        log_m_over_y2: big_ln(&m) / (y * y) as f64,
        divisor_check: low_order_primes.iter().all(|l| l.divides_m),
        m,
        prime_bound: CENSUS_PRIME_BOUND,
        low_order_primes,
    })
}

/// The census wrapped in a report for the configured matrix.
pub fn lemma_simple_report(config: &ExperimentConfig, y: u64) -> Result<ExperimentReport> {
    let Subject::Matrix(matrix) = &config.subject else {
        return Err(Error::invalid("the census needs a matrix subject"));
    };
    let census = lemma_simple_census(matrix, y)?;
    let mut report = ExperimentReport::empty(ReportKind::LemmaSimple, config.clone());
    report.completed_upto = CENSUS_PRIME_BOUND;
    report.census = Some(census);
    Ok(report)
}
