use super::composite::{assemble, prime_power, CompositeOrderRecord, PrimeFactorOrder};
use super::prime::{is_bad_order, PrimeOrderRecord};
use crate::arith::{crt_lcm_combine, element_order, factorize, gcd, is_prime, lcm_checked, pow_mod, FactoredInteger};
use crate::error::{Error, Result};
use crate::quad::PrimeSplitting;

/// Carmichael's `lambda(N)`, the exponent of `(Z/NZ)^*`.
pub fn carmichael_lambda(n: &FactoredInteger) -> u128 {
    n.factors().iter().fold(1u128, |acc, &(p, a)| {
        let part = if p == 2 {
            match a {
                1 => 1,
                2 => 2,
                _ => 1u128 << (a - 2),
            }
        } else {
            p.pow(a - 1) * (p - 1)
        };
        lcm_checked(acc, part).expect("lambda(N) <= N fits in 128 bits")
    })
}

/// Repeated order queries for a fixed integer base `b`.
#[derive(Debug, Clone, Copy)]
pub struct IntegerOrderEngine {
    base: i64,
}

impl IntegerOrderEngine {
    pub fn new(base: i64) -> Self {
        IntegerOrderEngine { base }
    }

    pub fn base(&self) -> i64 {
        self.base
    }

    fn residue(&self, m: u64) -> u64 {
        (self.base as i128).rem_euclid(m as i128) as u64
    }

    /// Order record at the prime `p`, viewed in the torus `F_p^*` of order
    /// `p - 1`. Primality is the caller's contract.
    pub fn prime_record(&self, p: u64) -> Result<PrimeOrderRecord> {
        let b = self.residue(p);
        if b == 0 {
            return Err(Error::invalid(format!("order of {} modulo {p} is undefined: {p} divides it", self.base)));
        }
        let ord = element_order(b, p, &factorize((p - 1) as u128)?)?;
        Ok(PrimeOrderRecord {
            p,
            class: PrimeSplitting::Split,
            torus_order: Some(p - 1),
            ord,
            index: Some((p - 1) / ord),
            is_bad: is_bad_order(ord, p),
        })
    }

    /// Order modulo `p^a` given the order modulo `p`.
    pub fn prime_power_order(&self, p: u64, a: u32, base_ord: u64) -> Result<u64> {
        let modulus = prime_power(p, a)?;
        let mut power = pow_mod(self.residue(modulus), base_ord, modulus);
        let mut ord = base_ord;
        while power != 1 % modulus {
            power = pow_mod(power, p, modulus);
            ord *= p;
        }
        Ok(ord)
    }

    /// Order modulo `n` with its per-prime ingredients; `gcd(b, n)` must be 1.
    pub fn composite_record(
        &self,
        n: u64,
        prime_record: impl Fn(u64) -> Result<PrimeOrderRecord>,
    ) -> Result<(CompositeOrderRecord, Vec<PrimeFactorOrder>)> {
        if n < 2 {
            return Err(Error::invalid(format!("modulus must be at least 2, got {n}")));
        }
        self.check_coprime(n)?;
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
        Ok((assemble(n, &factored, &parts, None)?, parts))
    }

    pub fn check_coprime(&self, n: u64) -> Result<()> {
        if gcd(self.base.unsigned_abs() as u128, n as u128) != 1 {
            return Err(Error::invalid(format!("{} and {n} are not coprime; order undefined", self.base)));
        }
        Ok(())
    }
}

/// Multiplicative order of `b` modulo the prime `p`.
pub fn integer_order_mod_p(b: i64, p: u64) -> Result<PrimeOrderRecord> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    IntegerOrderEngine::new(b).prime_record(p)
}

/// Multiplicative order of `b` modulo `n`: the lcm of the orders modulo
/// each prime power, each lifted from the order modulo the prime.
pub fn integer_order_mod_n(b: i64, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::invalid("modulus must be positive"));
    }
    if n == 1 {
        return Ok(1);
    }
    let engine = IntegerOrderEngine::new(b);
    engine.check_coprime(n)?;
    let mut pairs = Vec::new();
    for &(p, a) in factorize(n as u128)?.factors() {
        let p = p as u64;
        let ord_p = engine.prime_record(p)?.ord;
        pairs.push((engine.prime_power_order(p, a, ord_p)? as u128, prime_power(p, a)? as u128));
    }
    let ord = crt_lcm_combine(&pairs)?;
    u64::try_from(ord).map_err(|_| Error::overflow("order exceeds 64 bits"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_order(b: u64, n: u64) -> u64 {
        let mut x = b % n;
        let mut k = 1;
        while x != 1 % n {
            x = (x as u128 * b as u128 % n as u128) as u64;
            k += 1;
        }
        k
    }

    #[test]
    fn prime_examples() {
        assert_eq!(integer_order_mod_p(2, 7).unwrap().ord, 3);
        assert_eq!(integer_order_mod_p(8, 7).unwrap().ord, 1);
        assert_eq!(integer_order_mod_p(-6, 7).unwrap().ord, 1);
        assert!(integer_order_mod_p(2, 341).unwrap_err().to_string().contains("not prime"));
        assert!(integer_order_mod_p(14, 7).unwrap_err().to_string().contains("undefined"));
        let r = integer_order_mod_p(2, 7).unwrap();
        assert_eq!((r.torus_order, r.index), (Some(6), Some(2)));
    }

    #[test]
    fn composite_examples() {
        assert_eq!(integer_order_mod_n(2, 7).unwrap(), 3);
        assert_eq!(integer_order_mod_n(2, 1023).unwrap(), 10);
        assert_eq!(brute_order(2, 1023), 10);
        assert_eq!(integer_order_mod_n(3, 1).unwrap(), 1);
        assert!(integer_order_mod_n(2, 10).is_err());
        assert_eq!(integer_order_mod_n(-1, 9).unwrap(), 2);
        assert_eq!(integer_order_mod_n(3, 1 << 20).unwrap(), brute_order(3, 1 << 20));
    }

    #[test]
    fn lambda_examples() {
        let l = |n: u128| carmichael_lambda(&factorize(n).unwrap());
        assert_eq!(l(8), 2);
        assert_eq!(l(1), 1);
        assert_eq!(l(561), 80);
        assert_eq!(l(2), 1);
        assert_eq!(l(4), 2);
        assert_eq!(l(32), 8);
    }

    #[test]
    fn orders_divide_lambda() {
        for n in 2..=600u64 {
            let lambda = carmichael_lambda(&factorize(n as u128).unwrap()) as u64;
            for b in 1..n.min(40) {
                if gcd(b as u128, n as u128) == 1 {
                    let ord = integer_order_mod_n(b as i64, n).unwrap();
                    assert_eq!(ord, brute_order(b, n), "b={b} n={n}");
                    assert_eq!(lambda % ord, 0);
                }
            }
        }
    }
}
