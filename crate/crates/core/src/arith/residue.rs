use super::modular::{mul_mod, pow_mod};
use crate::error::{Error, Result};

/// Jacobi symbol `(a / n)` for odd positive `n`.
pub fn jacobi(a: i128, n: u64) -> Result<i8> {
    if n % 2 == 0 {
        return Err(Error::invalid(format!("Jacobi symbol needs an odd positive modulus, got {n}")));
    }
    let mut n = n as u128;
    let mut a = a.rem_euclid(n as i128) as u128;
    let mut sign = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    Ok(if n == 1 { sign } else { 0 })
}

/// Kronecker symbol `(d / p)` for a prime `p`; `p = 2` follows the
/// `d mod 8` rule.
pub fn kronecker(d: i128, p: u64) -> i8 {
    if p == 2 {
        return match d.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
    }
    jacobi(d, p).expect("odd prime modulus")
}

/// Square root of `a` modulo the odd prime `p` by Tonelli-Shanks, using the
/// smallest quadratic non-residue. Returns the smaller of the two roots,
/// or `None` when `a` is a non-residue.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    debug_assert!(p % 2 == 1, "sqrt_mod needs an odd prime");
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let root = if p % 4 == 3 {
        pow_mod(a, (p + 1) / 4, p)
    } else {
        tonelli_shanks(a, p)
    };
    Some(root.min(p - root))
}

fn tonelli_shanks(a: u64, p: u64) -> u64 {
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let z = (2..p)
        .find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)
        .expect("odd prime has a non-residue");
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    r
}
