//! Integer arithmetic helpers: deterministic primality, factorization,
//! modular exponentiation, and integer square roots.
//!
//! Everything here works on plain machine integers; the sizes involved are
//! bounded by the field-cardinality cap of 2^40 except where u128 is used
//! explicitly for intermediate products.

/// Computes `(a * b) mod m` without overflow for any `a, b, m < 2^64`.
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Computes `base^exp mod m` by square and multiply.
pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin primality test, valid for all `n < 2^64`.
///
/// Uses the fixed witness set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}
/// which is known to be exact on the full 64-bit range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Pollard's rho with Brent's cycle detection; returns a nontrivial factor
/// of a composite `n`.
fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Greatest common divisor of two u64 values.
pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Returns the sorted list of distinct prime factors of `n`.
pub fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    if n <= 1 {
        return out;
    }
    let mut stack = Vec::new();
    for p in [2u64, 3, 5] {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
    }
    if n > 1 {
        stack.push(n);
    }
    while let Some(m) = stack.pop() {
        if is_prime(m) {
            if !out.contains(&m) {
                out.push(m);
            }
            continue;
        }
        let d = pollard_rho(m);
        stack.push(d);
        stack.push(m / d);
    }
    out.sort_unstable();
    out
}

/// Splits a prime power r = p^m into (p, m); None when r is not a prime
/// power (or is below 2).
pub fn prime_power_split(r: u64) -> Option<(u64, u32)> {
    if r < 2 {
        return None;
    }
    let primes = distinct_prime_factors(r);
    if primes.len() != 1 {
        return None;
    }
    let p = primes[0];
    let mut m = 0u32;
    let mut t = r;
    while t % p == 0 {
        t /= p;
        m += 1;
    }
    Some((p, m))
}

/// Integer square root: the largest `s` with `s*s <= n`.
pub fn isqrt_u64(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut s = (n as f64).sqrt() as u64;
    while s.checked_mul(s).map_or(true, |v| v > n) {
        s -= 1;
    }
    while (s + 1).checked_mul(s + 1).map_or(false, |v| v <= n) {
        s += 1;
    }
    s
}

/// Integer square root on u128.
pub fn isqrt_u128(n: u128) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut s = (n as f64).sqrt() as u128;
    while s.checked_mul(s).map_or(true, |v| v > n) {
        s -= 1;
    }
    while (s + 1).checked_mul(s + 1).map_or(false, |v| v <= n) {
        s += 1;
    }
    s
}

/// Multiplicative order of `a` modulo a prime `n` (requires `gcd(a, n) = 1`).
pub fn order_mod_prime(a: u64, n: u64) -> u64 {
    debug_assert!(is_prime(n));
    let group = n - 1;
    let mut ord = group;
    for p in distinct_prime_factors(group) {
        while ord % p == 0 && pow_mod(a, ord / p, n) == 1 {
            ord /= p;
        }
    }
    ord
}

/// Smallest primitive root modulo a prime `n`.
pub fn smallest_primitive_root(n: u64) -> u64 {
    if n == 2 {
        return 1;
    }
    let factors = distinct_prime_factors(n - 1);
    'cand: for g in 2..n {
        for &p in &factors {
            if pow_mod(g, (n - 1) / p, n) == 1 {
                continue 'cand;
            }
        }
        return g;
    }
    unreachable!("every prime has a primitive root");
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_agrees_with_trial_division_below_10000() {
        let trial = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..10_000u64 {
            assert_eq!(is_prime(n), trial(n), "primality disagreement at {n}");
        }
    }

    #[test]
    fn factors_of_known_composites() {
        assert_eq!(
            distinct_prime_factors(2u64.pow(40) - 1),
            vec![3, 5, 11, 17, 31, 41, 61681]
        );
        assert_eq!(
            distinct_prime_factors(600851475143),
            vec![71, 839, 1471, 6857]
        );
        assert_eq!(distinct_prime_factors(1), Vec::<u64>::new());
    }

    #[test]
    fn isqrt_is_exact_floor() {
        for n in 0..5000u64 {
            let s = isqrt_u64(n);
            assert!(s * s <= n && (s + 1) * (s + 1) > n, "isqrt wrong at {n}");
        }
        assert_eq!(isqrt_u128((1u128 << 80) - 1), (1u128 << 40) - 1);
    }

    #[test]
    fn orders_and_primitive_roots_match_known_values() {
        assert_eq!(order_mod_prime(3, 109), 27, "3 has order 27 mod 109");
        assert_eq!(order_mod_prime(2, 73), 9, "2 has order 9 mod 73");
        assert_eq!(smallest_primitive_root(13), 2);
        assert_eq!(smallest_primitive_root(41), 6);
        assert_eq!(smallest_primitive_root(2), 1);
    }
}
