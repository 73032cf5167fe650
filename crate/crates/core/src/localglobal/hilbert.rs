//! Hilbert symbols over ℚ and its completions, and what they decide:
//! local/global representation by binary forms and quaternion ramification.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{legendre, unit_residue, valuation, Rational};
use crate::error::{domain, Result, WittError};

use super::squares::{Place, SquareClassQ};

/// `(valuation, unit residue)` of a non-zero number at `p`; the residue is
/// taken modulo 8 when `p = 2` and modulo `p` otherwise.
type LocalParts = (i64, u64);

fn parts_of_rational(r: &Rational, p: u64) -> LocalParts {
    let v = valuation(r, p);
    let pv = num_traits::pow(BigInt::from(p), v.unsigned_abs() as usize);
    let unit = if v >= 0 { r / pv } else { r * pv };
    (v, unit_residue(&unit, if p == 2 { 8 } else { p }))
}

fn parts_of_int(n: i128, p: u64) -> LocalParts {
    let mut n = n;
    let mut v = 0;
    while n % p as i128 == 0 {
        n /= p as i128;
        v += 1;
    }
    (v, n.rem_euclid(if p == 2 { 8 } else { p } as i128) as u64)
}

// (-1)^e
fn sign_pow(e: i64) -> i8 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn symbol_from_parts(p: u64, (alpha, u): LocalParts, (beta, w): LocalParts) -> i8 {
    if p == 2 {
        let eps = |x: u64| (x % 4 == 3) as i64;
        let omega = |x: u64| (x % 8 == 3 || x % 8 == 5) as i64;
        sign_pow(eps(u) * eps(w) + alpha * omega(w) + beta * omega(u))
    } else {
        let eps_p = ((p % 4 == 3) as i64) * alpha * beta;
        let mut s = sign_pow(eps_p);
        if beta.rem_euclid(2) == 1 {
            s *= legendre(u as i128, p);
        }
        if alpha.rem_euclid(2) == 1 {
            s *= legendre(w as i128, p);
        }
        s
    }
}

/// The Hilbert symbol `(a, b)_v` of two non-zero rationals.
pub fn hilbert_symbol(a: &Rational, b: &Rational, v: Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return domain("Hilbert symbol of zero is undefined");
    }
    Ok(match v {
        Place::Infinite => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Finite(p) => symbol_from_parts(p, parts_of_rational(a, p), parts_of_rational(b, p)),
    })
}

/// The Hilbert symbol of two non-zero integers.
pub fn hilbert_symbol_int(a: i128, b: i128, v: Place) -> i8 {
    debug_assert!(a != 0 && b != 0);
    match v {
        Place::Infinite => {
            if a < 0 && b < 0 {
                -1
            } else {
                1
            }
        }
        Place::Finite(p) => symbol_from_parts(p, parts_of_int(a, p), parts_of_int(b, p)),
    }
}

pub fn hilbert_symbol_classes(a: SquareClassQ, b: SquareClassQ, v: Place) -> i8 {
    hilbert_symbol_int(a.value(), b.value(), v)
}

/// `∞`, `2`, and every prime dividing either core: the only places where
/// `(a, b)_v` can be `-1`.
pub fn candidate_places(a: SquareClassQ, b: SquareClassQ) -> Vec<Place> {
    let mut primes: BTreeSet<u64> = BTreeSet::from([2]);
    primes.extend(a.primes());
    primes.extend(b.primes());
    let mut out: Vec<Place> = primes.into_iter().map(Place::Finite).collect();
    out.push(Place::Infinite);
    out
}

/// The set of places where a quaternion algebra over ℚ is non-split.
/// Two quaternion algebras are isomorphic iff their sets agree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RamificationSet {
    places: BTreeSet<Place>,
}

impl RamificationSet {
    pub fn from_places(places: impl IntoIterator<Item = Place>) -> Result<Self> {
        let places: BTreeSet<Place> = places.into_iter().collect();
        if !places.len().is_multiple_of(2) {
            return domain(format!(
                "ramification sets have even size, got {}",
                places.len()
            ));
        }
        Ok(Self { places })
    }

    pub fn is_split(&self) -> bool {
        self.places.is_empty()
    }

    pub fn len(&self) -> usize {
        self.places.len()
    }

    pub fn is_empty(&self) -> bool {
        self.places.is_empty()
    }

    pub fn contains(&self, v: Place) -> bool {
        self.places.contains(&v)
    }

    pub fn places(&self) -> impl Iterator<Item = Place> + '_ {
        self.places.iter().copied()
    }

    pub fn finite_primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.places.iter().filter_map(|v| v.prime())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.places.iter().map(|v| v.to_string()).collect()
    }
}

impl fmt::Display for RamificationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_strings().join(", "))
    }
}

/// Ramification of `(a, b / ℚ)` from square classes.
pub fn ramification_of_classes(a: SquareClassQ, b: SquareClassQ) -> RamificationSet {
    let places: BTreeSet<Place> = candidate_places(a, b)
        .into_iter()
        .filter(|&v| hilbert_symbol_classes(a, b, v) == -1)
        .collect();
    assert!(
        places.len().is_multiple_of(2),
        "Hilbert reciprocity failed for ({a}, {b}): {places:?}"
    );
    RamificationSet { places }
}

pub fn quaternion_ramification(a: &Rational, b: &Rational) -> Result<RamificationSet> {
    let a = SquareClassQ::from_rational(a)?;
    let b = SquareClassQ::from_rational(b)?;
    Ok(ramification_of_classes(a, b))
}

/// Symbols `(a, b)_v` at every candidate place, in place order.
pub fn local_symbols(a: &Rational, b: &Rational) -> Result<Vec<(Place, i8)>> {
    let ca = SquareClassQ::from_rational(a)?;
    let cb = SquareClassQ::from_rational(b)?;
    candidate_places(ca, cb)
        .into_iter()
        .map(|v| Ok((v, hilbert_symbol(a, b, v)?)))
        .collect()
}

/// Whether the product of `(a, b)_v` over the candidate places is `+1`.
pub fn reciprocity_check(a: &Rational, b: &Rational) -> Result<bool> {
    Ok(local_symbols(a, b)?.iter().map(|&(_, s)| s).product::<i8>() == 1)
}

/// Where a representation question is asked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Local(Place),
    Global,
}

/// Whether `c ∈ D⟨a, b⟩`, decided as `(ac, bc)_v = 1` (locally) or at every
/// place (globally).
pub fn represents(a: &Rational, b: &Rational, c: &Rational, scope: Scope) -> Result<bool> {
    let [a, b, c] = [a, b, c].map(SquareClassQ::from_rational);
    represents_classes(a?, b?, c?, scope)
}

pub fn represents_classes(
    a: SquareClassQ,
    b: SquareClassQ,
    c: SquareClassQ,
    scope: Scope,
) -> Result<bool> {
    let ac = a.try_mul(c)?;
    let bc = b.try_mul(c)?;
    Ok(match scope {
        Scope::Local(v) => hilbert_symbol_classes(ac, bc, v) == 1,
        Scope::Global => ramification_of_classes(ac, bc).is_split(),
    })
}

/// Brute-force local solvability: is there a primitive solution of
/// `a x² + b y² ≡ c z²` modulo `p³` (odd `p`) or `2⁸`?
///
/// Meant for coefficients of valuation at most one, where such a residue
/// solution lifts to ℚ_p. Used as an oracle independent of the symbol
/// formulas.
pub fn brute_force_represents(a: i64, b: i64, c: i64, p: u64) -> Result<bool> {
    if a == 0 || b == 0 || c == 0 {
        return domain("coefficients must be non-zero");
    }
    for (k, name) in [(a, "a"), (b, "b"), (c, "c")] {
        if k.unsigned_abs() % (p * p) == 0 {
            return Err(WittError::Precondition(format!(
                "{name} = {k} has p-adic valuation above 1"
            )));
        }
    }
    let m: u64 = if p == 2 { 256 } else { p * p * p };
    let red = |k: i64| k.rem_euclid(m as i64) as u64;
    let (a, b, c) = (red(a), red(b), red(c));
    let squares: Vec<u64> = (0..m).map(|x| x * x % m).collect();
    let image_of = |k: u64| {
        let mut hit = vec![false; m as usize];
        for &s in &squares {
            hit[(k * s % m) as usize] = true;
        }
        hit
    };
    let (b_img, c_img) = (image_of(b), image_of(c));
    // Scale so that the unit coordinate is 1.
    for &s in &squares {
        // x = 1: a + b y² ∈ c·□
        if c_img[((a + b * s) % m) as usize] {
            return Ok(true);
        }
        // y = 1: a x² + b ∈ c·□
        if c_img[((a * s + b) % m) as usize] {
            return Ok(true);
        }
        // z = 1: c - a x² ∈ b·□
        if b_img[((c + m - a * s % m) % m) as usize] {
            return Ok(true);
        }
    }
    Ok(false)
}
