use crate::error::{Error, Result};

/// Largest limit [`sieve_primes`] accepts.
pub const SIEVE_LIMIT_MAX: u64 = 100_000_000;

const SEGMENT_ODDS: usize = 1 << 17;

/// All primes up to `limit`, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// Number of primes `<= x`, for `x <= limit`.
    pub fn pi(&self, x: u64) -> usize {
        self.primes.partition_point(|&p| p <= x)
    }

    pub fn contains(&self, n: u64) -> bool {
        self.primes.binary_search(&n).is_ok()
    }

    /// Primes in `[lo, hi]`.
    pub fn range(&self, lo: u64, hi: u64) -> &[u64] {
        let a = self.primes.partition_point(|&p| p < lo);
        let b = self.primes.partition_point(|&p| p <= hi);
        &self.primes[a..b.max(a)]
    }
}

fn small_sieve(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Segmented odd-only sieve of Eratosthenes.
pub fn sieve_primes(limit: u64) -> Result<PrimeTable> {
    if limit < 2 {
        return Err(Error::invalid(format!("sieve limit must be at least 2, got {limit}")));
    }
    if limit > SIEVE_LIMIT_MAX {
        return Err(Error::ResourceLimit {
            what: format!("sieve limit {limit}"),
            limit: SIEVE_LIMIT_MAX as u128,
        });
    }
    let root = (limit as f64).sqrt() as u64 + 1;
    let base: Vec<u64> = small_sieve(root).into_iter().filter(|&p| p > 2).collect();

    let mut primes = Vec::with_capacity(estimate_pi(limit));
    primes.push(2);
    // odd index i stands for 2i+1; index 0 (the number 1) is skipped.
    let total_odds = (limit as usize - 1) / 2 + 1;
    let mut segment = vec![true; SEGMENT_ODDS];
    let mut lo = 1usize;
    while lo < total_odds {
        let hi = (lo + SEGMENT_ODDS).min(total_odds);
        let seg = &mut segment[..hi - lo];
        seg.fill(true);
        let lo_val = 2 * lo as u64 + 1;
        let hi_val = 2 * (hi - 1) as u64 + 1;
        for &p in &base {
            if p * p > hi_val {
                break;
            }
            let mut start = (p * p).max(lo_val.div_ceil(p) * p);
            if start % 2 == 0 {
                start += p;
            }
            let mut idx = ((start - 1) / 2) as usize - lo;
            while idx < seg.len() {
                seg[idx] = false;
                idx += p as usize;
            }
        }
        primes.extend(
            seg.iter()
                .enumerate()
                .filter(|(_, &keep)| keep)
                .map(|(i, _)| 2 * (lo + i) as u64 + 1),
        );
        lo = hi;
    }
    Ok(PrimeTable { limit, primes })
}

fn estimate_pi(x: u64) -> usize {
    let xf = x as f64;
    (1.3 * xf / xf.ln().max(1.0)) as usize + 16
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_primes(limit: u64) -> Vec<u64> {
        (2..=limit).filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)).collect()
    }

    #[test]
    fn small_limits() {
        assert_eq!(sieve_primes(10).unwrap().primes(), &[2, 3, 5, 7]);
        assert_eq!(sieve_primes(2).unwrap().primes(), &[2]);
        assert_eq!(sieve_primes(3).unwrap().primes(), &[2, 3]);
        assert_eq!(sieve_primes(9).unwrap().primes(), &[2, 3, 5, 7]);
    }

    #[test]
    fn matches_trial_division_across_segments() {
        // crosses several segment boundaries
        let limit = 2 * SEGMENT_ODDS as u64 * 2 + 77;
        let t = sieve_primes(limit).unwrap();
        assert_eq!(t.primes(), trial_division_primes(limit).as_slice());
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(matches!(sieve_primes(1), Err(Error::InvalidInput(_))));
        assert!(matches!(sieve_primes(SIEVE_LIMIT_MAX + 1), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn pi_and_range() {
        let t = sieve_primes(100).unwrap();
        assert_eq!(t.pi(100), 25);
        assert_eq!(t.pi(1), 0);
        assert_eq!(t.range(10, 20), &[11, 13, 17, 19]);
        assert_eq!(t.range(24, 28), &[] as &[u64]);
    }
}
