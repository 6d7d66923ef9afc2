use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::modular::{gcd, mul_mod_u128};
use super::prime::is_prime_u128;
use super::sieve::{sieve_primes, PrimeTable};
use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 100_000;
/// Smallest prime above [`TRIAL_LIMIT`]; a cofactor below its square is prime.
const FIRST_UNTRIED_PRIME: u128 = 100_003;

/// Default number of Pollard-rho iterations before giving up.
pub const DEFAULT_RHO_BUDGET: u64 = 5_000_000;

fn trial_primes() -> &'static PrimeTable {
    static TABLE: OnceLock<PrimeTable> = OnceLock::new();
    TABLE.get_or_init(|| sieve_primes(TRIAL_LIMIT).expect("trial table within sieve range"))
}

/// A positive integer together with its complete prime factorization.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FactoredInteger {
    value: u128,
    factors: Vec<(u128, u32)>,
}

impl FactoredInteger {
    pub fn one() -> Self {
        FactoredInteger { value: 1, factors: Vec::new() }
    }

    /// Builds from `(prime, exponent)` pairs, checking every invariant.
    pub fn from_factors(mut factors: Vec<(u128, u32)>) -> Result<Self> {
        factors.sort_unstable();
        let mut value = 1u128;
        for (i, &(p, e)) in factors.iter().enumerate() {
            if e == 0 {
                return Err(Error::invalid(format!("zero exponent for {p}")));
            }
            if i > 0 && factors[i - 1].0 == p {
                return Err(Error::invalid(format!("repeated prime {p}")));
            }
            if is_prime_u128(p) != Some(true) {
                return Err(Error::invalid(format!("{p} is not a proven prime")));
            }
            let pe = p
                .checked_pow(e)
                .ok_or_else(|| Error::overflow(format!("{p}^{e} exceeds 128 bits")))?;
            value = value
                .checked_mul(pe)
                .ok_or_else(|| Error::overflow("factored value exceeds 128 bits"))?;
        }
        Ok(FactoredInteger { value, factors })
    }

    pub fn value(&self) -> u128 {
        self.value
    }

    /// `(prime, exponent)` pairs, strictly increasing by prime.
    pub fn factors(&self) -> &[(u128, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u128> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Value as `u64`, when it fits.
    pub fn value_u64(&self) -> Option<u64> {
        u64::try_from(self.value).ok()
    }
}

/// Complete factorization with the default Pollard-rho budget.
pub fn factorize(n: u128) -> Result<FactoredInteger> {
    factorize_with_budget(n, DEFAULT_RHO_BUDGET)
}

/// Trial division by primes up to 10^5, then proven primality tests and
/// Pollard-rho (Brent) with a fixed parameter schedule. Exhausting
/// `rho_budget` iterations, or meeting a cofactor whose primality cannot be
/// proven, yields [`Error::IncompleteFactorization`].
pub fn factorize_with_budget(n: u128, rho_budget: u64) -> Result<FactoredInteger> {
    if n == 0 {
        return Err(Error::invalid("cannot factor 0"));
    }
    let mut factors: Vec<(u128, u32)> = Vec::new();
    let mut rest = n;

    if let Ok(mut small) = u64::try_from(rest) {
        for &p in trial_primes().primes() {
            if p * p > small {
                break;
            }
            if small % p == 0 {
                let mut e = 0;
                while small % p == 0 {
                    small /= p;
                    e += 1;
                }
                factors.push((p as u128, e));
            }
        }
        rest = small as u128;
    } else {
        for &p in trial_primes().primes() {
            let p = p as u128;
            if p * p > rest {
                break;
            }
            if rest % p == 0 {
                let mut e = 0;
                while rest % p == 0 {
                    rest /= p;
                    e += 1;
                }
                factors.push((p, e));
            }
        }
    }

    if rest > 1 {
        if rest < FIRST_UNTRIED_PRIME * FIRST_UNTRIED_PRIME {
            factors.push((rest, 1));
        } else {
            let mut budget = rho_budget;
            let mut large = Vec::new();
            split_large(rest, n, &mut budget, &mut large)?;
            large.sort_unstable();
            for p in large {
                match factors.last_mut() {
                    Some((q, e)) if *q == p => *e += 1,
                    _ => factors.push((p, 1)),
                }
            }
        }
    }
    factors.sort_unstable();
    Ok(FactoredInteger { value: n, factors })
}

fn split_large(c: u128, original: u128, budget: &mut u64, out: &mut Vec<u128>) -> Result<()> {
    let mut stack = vec![c];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        match is_prime_u128(m) {
            Some(true) => out.push(m),
            Some(false) => {
                if let Some((root, k)) = perfect_power(m) {
                    stack.extend(std::iter::repeat(root).take(k as usize));
                    continue;
                }
                let d = pollard_brent(m, budget).ok_or(Error::IncompleteFactorization {
                    value: original,
                    remaining: m,
                })?;
                stack.push(d);
                stack.push(m / d);
            }
            None => {
                return Err(Error::IncompleteFactorization { value: original, remaining: m });
            }
        }
    }
    Ok(())
}

/// `(r, k)` with `r^k = m` and `k >= 2` maximal, if any. Rho is slow on
/// squares of large primes, so these are peeled off first.
fn perfect_power(m: u128) -> Option<(u128, u32)> {
    use num_integer::Roots;
    (2..=m.ilog2()).rev().find_map(|k| {
        let r = m.nth_root(k);
        (r > 1 && r.checked_pow(k) == Some(m)).then_some((r, k))
    })
}

/// Brent's cycle-finding variant of Pollard's rho, polynomial x^2 + c with
/// c = 1, 2, 3, ... and start value 2. Returns a nontrivial divisor of the
/// composite `n`, or `None` when the iteration budget runs out.
fn pollard_brent(n: u128, budget: &mut u64) -> Option<u128> {
    if n % 2 == 0 {
        return Some(2);
    }
    const BATCH: u64 = 128;
    let mut c = 1u128;
    while *budget > 0 {
        let f = |x: u128| {
            let s = mul_mod_u128(x, x, n);
            if s >= n - c {
                s - (n - c)
            } else {
                s + c
            }
        };
        let (mut y, mut r, mut q) = (2u128, 1u64, 1u128);
        let mut g = 1u128;
        let (mut x, mut ys) = (y, y);
        while g == 1 && *budget > 0 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                let steps = BATCH.min(r - k);
                for _ in 0..steps {
                    y = f(y);
                    q = mul_mod_u128(q, x.abs_diff(y), n);
                }
                *budget = budget.saturating_sub(steps);
                g = gcd(q, n);
                k += steps;
            }
            r *= 2;
        }
        if g == n {
            // backtrack one step at a time from the saved position
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g > 1 && g < n {
            return Some(g);
        }
        c += 1;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(f: &FactoredInteger) -> Vec<(u128, u32)> {
        f.factors().to_vec()
    }

    #[test]
    fn small_values() {
        assert!(factorize(1).unwrap().is_one());
        assert_eq!(pairs(&factorize(12).unwrap()), vec![(2, 2), (3, 1)]);
        assert_eq!(pairs(&factorize(10403).unwrap()), vec![(101, 1), (103, 1)]);
        assert_eq!(pairs(&factorize(2).unwrap()), vec![(2, 1)]);
        assert!(factorize(0).is_err());
    }

    #[test]
    fn perfect_powers() {
        assert_eq!(perfect_power(3u128.pow(40)), Some((3, 40)));
        assert_eq!(perfect_power(1_000_003u128.pow(6)), Some((1_000_003, 6)));
        assert_eq!(perfect_power(1_000_003 * 1_000_033), None);
        let r = (1u128 << 61) - 1;
        assert_eq!(pairs(&factorize(r * r).unwrap()), vec![(r, 2)]);
    }

    #[test]
    fn cofactor_after_trial_division_is_prime() {
        // 99991 is the largest prime below 10^5; 100003 the smallest above.
        assert_eq!(pairs(&factorize(99991 * 100003).unwrap()), vec![(99991, 1), (100003, 1)]);
        assert_eq!(pairs(&factorize(100003 * 100003).unwrap()), vec![(100003, 2)]);
    }

    #[test]
    fn rho_splits_semiprimes() {
        let p = 1_000_000_007u128;
        let q = 998_244_353u128;
        assert_eq!(pairs(&factorize(p * q).unwrap()), vec![(q, 1), (p, 1)]);
        assert_eq!(pairs(&factorize(p * p * q).unwrap()), vec![(q, 1), (p, 2)]);
        // 2^67 - 1 = 193707721 * 761838257287
        assert_eq!(
            pairs(&factorize((1u128 << 67) - 1).unwrap()),
            vec![(193_707_721, 1), (761_838_257_287, 1)]
        );
    }

    #[test]
    fn wide_values() {
        let p = 18_446_744_073_709_551_557u128; // prime below 2^64
        let f = factorize(p * 6).unwrap();
        assert_eq!(pairs(&f), vec![(2, 1), (3, 1), (p, 1)]);
        let f = factorize(u128::MAX).unwrap();
        assert_eq!(
            f.primes().collect::<Vec<_>>(),
            vec![3, 5, 17, 257, 641, 65537, 274177, 6700417, 67280421310721]
        );
    }

    #[test]
    fn budget_exhaustion_is_explicit() {
        let p = 1_000_000_007u128;
        let q = 998_244_353u128;
        let err = factorize_with_budget(p * q, 1).unwrap_err();
        assert!(matches!(err, Error::IncompleteFactorization { remaining, .. } if remaining == p * q));
    }

    #[test]
    fn unprovable_cofactor_is_explicit() {
        let m89 = (1u128 << 89) - 1;
        assert!(matches!(
            factorize(m89),
            Err(Error::IncompleteFactorization { remaining, .. }) if remaining == m89
        ));
    }

    #[test]
    fn from_factors_validates() {
        assert_eq!(FactoredInteger::from_factors(vec![(3, 1), (2, 2)]).unwrap().value(), 12);
        assert!(FactoredInteger::from_factors(vec![(4, 1)]).is_err());
        assert!(FactoredInteger::from_factors(vec![(2, 1), (2, 1)]).is_err());
        assert!(FactoredInteger::from_factors(vec![(2, 0)]).is_err());
    }
}
