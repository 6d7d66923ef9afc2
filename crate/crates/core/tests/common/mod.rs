//! Independent brute-force oracles shared by the integration tests.
#![allow(dead_code)]

/// 2x2 integer matrix product modulo `m`, entries as `[a, b, c, d]`.
pub fn mat_mul(x: [u64; 4], y: [u64; 4], m: u64) -> [u64; 4] {
    let m = m as u128;
    let f = |a: u64, b: u64, c: u64, d: u64| ((a as u128 * b as u128 + c as u128 * d as u128) % m) as u64;
    [
        f(x[0], y[0], x[1], y[2]),
        f(x[0], y[1], x[1], y[3]),
        f(x[2], y[0], x[3], y[2]),
        f(x[2], y[1], x[3], y[3]),
    ]
}

pub fn reduce(rows: [[i64; 2]; 2], m: u64) -> [u64; 4] {
    let r = |v: i64| v.rem_euclid(m as i64) as u64;
    [r(rows[0][0]), r(rows[0][1]), r(rows[1][0]), r(rows[1][1])]
}

/// Smallest `k >= 1` with `A^k = I mod m`, by repeated multiplication.
pub fn brute_matrix_order(rows: [[i64; 2]; 2], m: u64) -> u64 {
    let a = reduce(rows, m);
    let id = [1 % m, 0, 0, 1 % m];
    let mut power = a;
    let mut k = 1;
    while power != id {
        power = mat_mul(power, a, m);
        k += 1;
    }
    k
}

/// Smallest `k >= 1` with `b^k = 1 mod m`; `b` must be a unit.
pub fn brute_integer_order(b: i64, m: u64) -> u64 {
    let b = b.rem_euclid(m as i64) as u128;
    let mut power = b % m as u128;
    let mut k = 1;
    while power != 1 % m as u128 {
        power = power * b % m as u128;
        k += 1;
    }
    k
}

pub fn trial_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn trial_factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Plain sieve of Eratosthenes over bytes.
pub fn naive_sieve(limit: usize) -> Vec<u64> {
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Exponent of `(Z/n)^*` by brute force over all units.
pub fn brute_lambda(n: u64) -> u64 {
    (1..n.max(2)).filter(|&g| gcd(g, n) == 1).fold(1, |acc, g| lcm(acc, brute_integer_order(g as i64, n)))
}

/// Legendre-style symbol of `d` mod the prime `p` by counting roots of
/// `x^2 - d`; 2 uses the mod-8 rule.
pub fn brute_kronecker(d: i64, p: u64) -> i8 {
    if p == 2 {
        return match d.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
    }
    let dm = d.rem_euclid(p as i64) as u64;
    if dm == 0 {
        return 0;
    }
    if (1..p).any(|x| x * x % p == dm) {
        1
    } else {
        -1
    }
}

/// Twenty hyperbolic matrices with `|trace| <= 50`, including negative
/// traces, non-companion shapes and traces with a nontrivial conductor.
pub fn fixed_matrices() -> Vec<[[i64; 2]; 2]> {
    vec![
        [[2, 1], [1, 1]],
        [[3, -1], [1, 0]],
        [[-3, -1], [1, 0]],
        [[4, -1], [1, 0]],
        [[0, -1], [1, 5]],
        [[2, 3], [1, 2]],
        [[5, 2], [2, 1]],
        [[7, -1], [1, 0]],
        [[1, 1], [1, 2]],
        [[3, 2], [1, 1]],
        [[-2, -1], [-1, -1]],
        [[10, 3], [3, 1]],
        [[18, -1], [1, 0]],
        [[1, 2], [3, 7]],
        [[6, 5], [1, 1]],
        [[-27, -1], [1, 0]],
        [[11, 4], [8, 3]],
        [[50, -1], [1, 0]],
        [[0, 1], [-1, -6]],
        [[13, 21], [8, 13]],
    ]
}
