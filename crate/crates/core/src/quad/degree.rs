use serde::{Deserialize, Serialize};

use super::field::QuadFieldData;
use crate::arith::factorize;
use crate::error::{Error, Result};

/// Bounds on the degree over Q of `K_n = K(zeta_n, eps^(1/n))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeInterval {
    pub n: u64,
    pub lower: u64,
    pub upper: u64,
    /// `[Z_n : K]` for `Z_n = K(zeta_n)`.
    pub z_degree: u64,
}

impl DegreeInterval {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    /// Density interval `(2/upper, 2/lower)` for primes with `n | i_p`.
    pub fn density_interval(&self) -> (f64, f64) {
        (2.0 / self.upper as f64, 2.0 / self.lower as f64)
    }
}

pub fn euler_phi(n: u64) -> u64 {
    let f = factorize(n as u128).expect("64-bit values always factor");
    f.factors()
        .iter()
        .fold(1u64, |acc, &(p, e)| acc * (p as u64 - 1) * (p as u64).pow(e - 1))
}

/// `[K_n : Q] = 2 [Z_n : K] [K_n : Z_n]` with `[Z_n : K]` exact
/// (`phi(n)/2` when `D_K | n`, i.e. `K` lies in `Q(zeta_n)`, else `phi(n)`)
/// and `max(1, ceil(n / 2k)) <= [K_n : Z_n] <= n`. For `n = 2` the degree
/// is 4.
pub fn kummer_degree_interval(n: u64, fd: &QuadFieldData) -> Result<DegreeInterval> {
    if n < 2 {
        return Err(Error::invalid(format!("n must be at least 2, got {n}")));
    }
    let phi = euler_phi(n);
    let contained = (n as i128) % fd.field_disc == 0;
    let z_degree = if contained { phi / 2 } else { phi };
    if n == 2 {
        return Ok(DegreeInterval { n, lower: 4, upper: 4, z_degree });
    }
    let k = fd.power_index as u64;
    let kummer_lower = n.div_ceil(2 * k).max(1);
    let lower = 2 * z_degree * kummer_lower;
    let upper = 2 * z_degree * n;
    Ok(DegreeInterval { n, lower, upper, z_degree })
}

/// `4 [K_n:K] ln n + [K_n:K] ln |D_K|` with `[K_n:K] = degree / 2`: the log
/// of `n^(4 [K_n:K]) * D_K^[K_n:K]`, which the discriminant of `K_n` divides.
pub fn discriminant_log_bound(n: u64, fd: &QuadFieldData, degree_upper: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::invalid(format!("n must be at least 2, got {n}")));
    }
    let relative = degree_upper as f64 / 2.0;
    Ok(4.0 * relative * (n as f64).ln() + relative * (fd.field_disc.unsigned_abs() as f64).ln())
}

/// Necessary condition for `p` to ramify in `K_n`: `p | n D_K`.
pub fn may_ramify_in_kn(p: u64, n: u64, field_disc: i128) -> bool {
    p != 0 && (n % p == 0 || field_disc % p as i128 == 0)
}
