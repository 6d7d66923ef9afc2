use super::modular::{mul_mod, mul_mod_u128, pow_mod, pow_mod_u128};

/// Witness set that makes strong-probable-prime testing exact below 2^64.
const WITNESSES_U64: [u64; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];

/// The first 13 primes as witnesses are exact below this bound.
const WITNESSES_U128_BOUND: u128 = 3_317_044_064_679_887_385_961_981;
const WITNESSES_U128: [u128; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

const SMALL_PRIMES: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

/// Deterministic primality test for the full 64-bit range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    if n < 47 * 47 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    WITNESSES_U64.iter().all(|&a| {
        let a = a % n;
        a == 0 || strong_probable_prime(n, d, s, a)
    })
}

fn strong_probable_prime(n: u64, d: u64, s: u32, a: u64) -> bool {
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Primality for 128-bit inputs. `Some(answer)` when the answer is proven;
/// `None` when `n` is a strong probable prime to every witness but lies
/// beyond the range where the witness set is known to be exact.
pub fn is_prime_u128(n: u128) -> Option<bool> {
    if n <= u64::MAX as u128 {
        return Some(is_prime(n as u64));
    }
    if n % 2 == 0 {
        return Some(false);
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    for &a in &WITNESSES_U128 {
        let mut x = pow_mod_u128(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        let mut passed = false;
        for _ in 1..s {
            x = mul_mod_u128(x, x, n);
            if x == n - 1 {
                passed = true;
                break;
            }
        }
        if !passed {
            return Some(false);
        }
    }
    if n < WITNESSES_U128_BOUND {
        Some(true)
    } else {
        None
    }
}
