use super::factor::FactoredInteger;
use super::modular::{gcd, lcm_checked, pow_mod};
use crate::error::{Error, Result};

/// Smallest divisor `d` of `exponent` for which `is_identity_at(d)` holds,
/// given that it holds at `exponent` itself. Strips each prime factor of
/// the exponent for as long as the power stays trivial.
pub fn minimal_order(exponent: &FactoredInteger, mut is_identity_at: impl FnMut(u64) -> bool) -> u64 {
    let mut d = exponent.value_u64().expect("group exponent fits in 64 bits");
    for &(q, e) in exponent.factors() {
        let q = q as u64;
        for _ in 0..e {
            if is_identity_at(d / q) {
                d /= q;
            } else {
                break;
            }
        }
    }
    d
}

/// Multiplicative order of `g` modulo `modulus`, where `group_exponent` is a
/// known multiple of it (e.g. `p - 1` or `lambda(N)`).
pub fn element_order(g: u64, modulus: u64, group_exponent: &FactoredInteger) -> Result<u64> {
    if modulus == 0 {
        return Err(Error::invalid("modulus must be positive"));
    }
    let g = g % modulus;
    if gcd(g as u128, modulus as u128) != 1 {
        return Err(Error::invalid(format!("{g} is not coprime to {modulus}")));
    }
    let exp = group_exponent
        .value_u64()
        .ok_or_else(|| Error::invalid("group exponent does not fit in 64 bits"))?;
    if pow_mod(g, exp, modulus) != 1 % modulus {
        return Err(Error::invalid(format!(
            "{g}^{exp} is not 1 mod {modulus}; {exp} is not a multiple of the order"
        )));
    }
    Ok(minimal_order(group_exponent, |d| pow_mod(g, d, modulus) == 1 % modulus))
}

/// Order modulo the product of pairwise coprime moduli, given the order
/// modulo each one: the lcm of the orders.
pub fn crt_lcm_combine(values: &[(u128, u128)]) -> Result<u128> {
    for (i, &(_, m)) in values.iter().enumerate() {
        if m == 0 {
            return Err(Error::invalid("modulus must be positive"));
        }
        for &(_, n) in &values[i + 1..] {
            if gcd(m, n) != 1 {
                return Err(Error::invalid(format!("moduli {m} and {n} are not coprime")));
            }
        }
    }
    values.iter().try_fold(1u128, |acc, &(ord, _)| {
        lcm_checked(acc, ord).ok_or_else(|| Error::overflow("lcm of orders exceeds 128 bits"))
    })
}
