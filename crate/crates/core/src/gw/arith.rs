//! Small integer helpers: factoring, square-free parts, Legendre symbols.

/// Trial-division bound used when stripping square factors.
const TRIAL_LIMIT: u64 = 1 << 21;

pub fn mod_pow(base: u64, mut exp: u128, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = (base as u128) % m;
    let mut acc: u128 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d as u128, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Returns `(p, e)` with `q = p^e` if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let factors = factorize(q);
    if factors.len() == 1 {
        Some(factors[0])
    } else {
        None
    }
}

/// Prime factorization of `n >= 1` as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if p > TRIAL_LIMIT && is_prime(n) {
            break;
        }
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Square-free part of a nonzero integer, keeping the sign.
pub fn square_free_part(n: i128) -> i128 {
    assert!(n != 0, "square_free_part of zero");
    let sign = n.signum();
    let mut m = n.unsigned_abs();
    let mut out: u128 = 1;
    let mut p: u128 = 2;
    while p * p <= m && p <= TRIAL_LIMIT as u128 {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            if e % 2 == 1 {
                out *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        let r = isqrt(m);
        if r * r != m {
            out *= m;
        }
    }
    sign * out as i128
}

fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Square-free part of the product of two square-free integers.
pub fn square_free_mul(a: i64, b: i64) -> i64 {
    let g = gcd(a.unsigned_abs() as u128, b.unsigned_abs() as u128) as i128;
    let v = (a as i128 / g) * (b as i128 / g);
    i64::try_from(v).expect("square class representative overflows i64")
}

/// Legendre symbol `(a/p)` for an odd prime `p`, returning 0 when `p | a`.
pub fn legendre(a: i128, p: u64) -> i8 {
    let r = a.rem_euclid(p as i128) as u64;
    if r == 0 {
        return 0;
    }
    if mod_pow(r, ((p - 1) / 2) as u128, p) == 1 {
        1
    } else {
        -1
    }
}

/// Splits `n != 0` as `p^v * u` with `p` not dividing `u`.
pub fn split_valuation(mut n: i128, p: u64) -> (u32, i128) {
    let p = p as i128;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    (v, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_powers() {
        assert!(is_prime(2) && is_prime(97) && !is_prime(91));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn square_free() {
        assert_eq!(square_free_part(8), 2);
        assert_eq!(square_free_part(-12), -3);
        assert_eq!(square_free_part(49), 1);
        assert_eq!(square_free_mul(6, 10), 15);
        assert_eq!(square_free_mul(-1, -2), 2);
    }

    #[test]
    fn legendre_matches_brute_force() {
        for p in [3u64, 5, 7, 11, 13] {
            for a in 1..p as i128 {
                let is_sq = (1..p as i128).any(|x| (x * x - a).rem_euclid(p as i128) == 0);
                assert_eq!(legendre(a, p), if is_sq { 1 } else { -1 });
            }
        }
    }
}
