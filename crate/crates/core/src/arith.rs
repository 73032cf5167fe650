//! Integer and rational helpers shared by the rest of the crate.
//!
//! Everything here is exact. Factorization is limited to 64-bit magnitudes,
//! which is far beyond the desk-scale inputs the library is designed for.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Result, WittError};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `n`, `p/q` or a finite decimal such as `-0.125`.
pub fn parse_rational(token: &str) -> Result<Rational> {
    let bad = || WittError::Domain(format!("malformed rational '{token}'"));
    let t = token.trim();
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = t.split_once('/') {
        let n: BigInt = parse_integer(num).ok_or_else(bad)?;
        let d: BigInt = parse_integer(den).ok_or_else(bad)?;
        if d.is_zero() {
            return domain(format!("zero denominator in '{token}'"));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int_part, frac_part)) = t.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        if !int_digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{int_digits}{frac_part}");
        let mut n: BigInt = digits.parse().map_err(|_| bad())?;
        if negative {
            n = -n;
        }
        let d = num_traits::pow(BigInt::from(10), frac_part.len());
        return Ok(Rational::new(n, d));
    }
    parse_integer(t).map(Rational::from_integer).ok_or_else(bad)
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let s = s.trim();
    let body = s.strip_prefix(['-', '+']).unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Renders a rational as `n` or `n/d`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serde adapter writing a rational as its `n` / `n/d` string.
pub mod rational_str {
    use super::{fmt_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

pub fn big_to_u64(n: &BigInt) -> Result<u64> {
    n.abs()
        .to_u64()
        .ok_or_else(|| WittError::Domain(format!("|{n}| exceeds the 64-bit factorization range")))
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

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

pub fn is_prime(n: u64) -> bool {
    primal_check::miller_rabin(n)
}

/// Prime factorization of `n >= 1` as sorted `(prime, exponent)` pairs.
pub fn factor(n: u64) -> Vec<(u64, u32)> {
    let mut primes = Vec::new();
    let mut n = n;
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        while n.is_multiple_of(p) {
            primes.push(p);
            n /= p;
        }
    }
    split_into(n, &mut primes);
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

fn split_into(n: u64, acc: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        acc.push(n);
        return;
    }
    let d = pollard_rho(n);
    split_into(d, acc);
    split_into(n / d, acc);
}

// Brent's variant; `n` is composite and has no prime factor below 41.
fn pollard_rho(n: u64) -> u64 {
    if let Some(r) = isqrt_exact(n as u128) {
        return r as u64;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!()
}

pub fn isqrt(n: u128) -> u128 {
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

pub fn isqrt_exact(n: u128) -> Option<u128> {
    let r = isqrt(n);
    (r * r == n).then_some(r)
}

pub fn is_squarefree(n: u64) -> bool {
    n != 0 && factor(n).iter().all(|&(_, e)| e == 1)
}

/// Product of the primes that divide `n` to an odd power.
pub fn squarefree_part(n: u64) -> u64 {
    factor(n)
        .into_iter()
        .filter(|&(_, e)| e % 2 == 1)
        .map(|(p, _)| p)
        .product()
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (2..=n).filter(|&k| sieve[k]).map(|k| k as u64).collect()
}

/// Legendre symbol `(a | p)` for an odd prime `p`; 0 when `p | a`.
pub fn legendre(a: i128, p: u64) -> i8 {
    let r = a.rem_euclid(p as i128) as u64;
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// `p`-adic valuation of a non-zero integer.
pub fn valuation_int(n: &BigInt, p: u64) -> u32 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// `p`-adic valuation of a non-zero rational.
pub fn valuation(r: &Rational, p: u64) -> i64 {
    valuation_int(r.numer(), p) as i64 - valuation_int(r.denom(), p) as i64
}

/// Residue of a `p`-adic unit rational modulo `m` (a power of `p`).
pub fn unit_residue(r: &Rational, m: u64) -> u64 {
    let m_big = BigInt::from(m);
    let num = r.numer().mod_floor(&m_big).to_u64().unwrap_or(0);
    let den = r.denom().mod_floor(&m_big).to_u64().unwrap_or(0);
    mul_mod(num, mod_inverse(den, m).expect("unit denominator"), m)
}

pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    (e.gcd == 1).then(|| e.x.rem_euclid(m as i128) as u64)
}

pub fn sign_of(r: &Rational) -> i8 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}
