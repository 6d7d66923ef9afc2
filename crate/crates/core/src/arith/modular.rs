/// `a * b mod m` with a 128-bit intermediate product.
#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `base^exp mod modulus`. Returns `0` when `modulus == 1`.
pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    assert!(modulus >= 1, "modulus must be positive");
    if modulus == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut b = base % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, b, modulus);
        }
        b = mul_mod(b, b, modulus);
        exp >>= 1;
    }
    result
}

#[inline]
fn add_mod_u128(a: u128, b: u128, m: u128) -> u128 {
    // a, b < m
    let (s, carry) = a.overflowing_add(b);
    if carry || s >= m {
        s.wrapping_sub(m)
    } else {
        s
    }
}

/// `a * b mod m` for full 128-bit operands. Falls back to shift-and-add
/// when the product does not fit; only the factorization of >64-bit
/// cofactors takes that path.
pub fn mul_mod_u128(a: u128, b: u128, m: u128) -> u128 {
    let (a, b) = (a % m, b % m);
    if m <= u64::MAX as u128 {
        return (a * b) % m;
    }
    if let Some(p) = a.checked_mul(b) {
        return p % m;
    }
    let (mut x, mut y) = if a < b { (b, a) } else { (a, b) };
    let mut acc = 0u128;
    while y > 0 {
        if y & 1 == 1 {
            acc = add_mod_u128(acc, x, m);
        }
        x = add_mod_u128(x, x, m);
        y >>= 1;
    }
    acc
}

pub fn pow_mod_u128(base: u128, mut exp: u128, modulus: u128) -> u128 {
    assert!(modulus >= 1, "modulus must be positive");
    if modulus == 1 {
        return 0;
    }
    let mut result = 1u128;
    let mut b = base % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod_u128(result, b, modulus);
        }
        b = mul_mod_u128(b, b, modulus);
        exp >>= 1;
    }
    result
}

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `lcm(a, b)`, or `None` if it does not fit in 128 bits.
pub fn lcm_checked(a: u128, b: u128) -> Option<u128> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / gcd(a, b)).checked_mul(b)
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}
