use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{
    big_to_u64, is_prime, is_squarefree, legendre, prime_divisors, squarefree_part, unit_residue,
    valuation, Rational,
};
use crate::error::{domain, Result, WittError};

/// A square class of ℚ*: `sign · core` with `core` a positive squarefree
/// integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClassQ {
    negative: bool,
    core: u64,
}

impl SquareClassQ {
    pub const ONE: SquareClassQ = SquareClassQ {
        negative: false,
        core: 1,
    };
    pub const MINUS_ONE: SquareClassQ = SquareClassQ {
        negative: true,
        core: 1,
    };

    /// `negative` and a squarefree `core`.
    pub fn new(negative: bool, core: u64) -> Result<Self> {
        if !is_squarefree(core) {
            return domain(format!("{core} is not a positive squarefree integer"));
        }
        Ok(Self { negative, core })
    }

    pub fn from_int(n: i64) -> Result<Self> {
        if n == 0 {
            return domain("0 has no square class");
        }
        Ok(Self {
            negative: n < 0,
            core: squarefree_part(n.unsigned_abs()),
        })
    }

    pub fn from_rational(r: &Rational) -> Result<Self> {
        if r.is_zero() {
            return domain("0 has no square class");
        }
        let num = squarefree_part(big_to_u64(r.numer())?) as u128;
        let den = squarefree_part(big_to_u64(r.denom())?) as u128;
        // numerator and denominator are coprime, so the product is squarefree
        let core = u64::try_from(num * den)
            .map_err(|_| WittError::Domain(format!("square class of {r} exceeds 64 bits")))?;
        Ok(Self {
            negative: r.is_negative(),
            core,
        })
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn sign(&self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn core(&self) -> u64 {
        self.core
    }

    /// The canonical integer representative `±core`.
    pub fn value(&self) -> i128 {
        self.sign() as i128 * self.core as i128
    }

    pub fn to_rational(&self) -> Rational {
        Rational::from_integer(BigInt::from(self.value()))
    }

    pub fn neg(self) -> Self {
        Self {
            negative: !self.negative,
            core: self.core,
        }
    }

    pub fn try_mul(self, other: Self) -> Result<Self> {
        let g = self.core.gcd(&other.core) as u128;
        let core = (self.core as u128 / g) * (other.core as u128 / g);
        let core = u64::try_from(core)
            .map_err(|_| WittError::Domain("square class product exceeds 64 bits".into()))?;
        Ok(Self {
            negative: self.negative != other.negative,
            core,
        })
    }

    pub fn primes(&self) -> Vec<u64> {
        prime_divisors(self.core)
    }
}

impl Serialize for SquareClassQ {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SquareClassQ {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let r = crate::arith::parse_rational(&s).map_err(serde::de::Error::custom)?;
        SquareClassQ::from_rational(&r).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for SquareClassQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// A place of ℚ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite(u64),
    Infinite,
}

impl Place {
    pub fn finite(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return domain(format!("{p} is not prime"));
        }
        Ok(Place::Finite(p))
    }

    pub fn prime(&self) -> Option<u64> {
        match self {
            Place::Finite(p) => Some(*p),
            Place::Infinite => None,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Place {
    type Err = WittError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" | "infinity" | "∞" => Ok(Place::Infinite),
            _ => {
                let p: u64 = s.parse().map_err(|_| {
                    WittError::Domain(format!("'{s}' is not a place (use 'inf' or a prime)"))
                })?;
                Place::finite(p)
            }
        }
    }
}

impl Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Least positive quadratic non-residue modulo an odd prime.
pub fn least_nonresidue(p: u64) -> u64 {
    (2..p)
        .find(|&a| legendre(a as i128, p) == -1)
        .expect("odd prime has a non-residue")
}

/// A square class of ℚ_p, stored as its canonical representative:
/// one of `1, u, p, up` (u the least non-residue) for odd `p`, one of
/// `±1, ±2, ±5, ±10` for `p = 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PadicSquareClass {
    p: u64,
    rep: i64,
}

impl PadicSquareClass {
    pub fn new(p: u64, rep: i64) -> Result<Self> {
        if !canonical_reps(p)?.contains(&rep) {
            return domain(format!(
                "{rep} is not a canonical square class representative for p = {p}"
            ));
        }
        Ok(Self { p, rep })
    }

    pub fn one(p: u64) -> Self {
        Self { p, rep: 1 }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rep(&self) -> i64 {
        self.rep
    }

    pub fn is_square(&self) -> bool {
        self.rep == 1
    }

    pub fn unit_is_square(&self) -> bool {
        match self.p {
            2 => matches!(self.rep, 1 | 2),
            _ => self.rep == 1 || self.rep == self.p as i64,
        }
    }

    pub fn has_odd_valuation(&self) -> bool {
        self.rep.unsigned_abs().is_multiple_of(self.p)
    }

    pub fn mul(self, other: Self) -> Self {
        assert_eq!(self.p, other.p, "square classes at different primes");
        classify_int(self.rep as i128 * other.rep as i128, self.p)
    }

    pub fn neg(self) -> Self {
        classify_int(-(self.rep as i128), self.p)
    }
}

impl fmt::Display for PadicSquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

/// The canonical representatives, in table order.
pub fn canonical_reps(p: u64) -> Result<Vec<i64>> {
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    if p == 2 {
        return Ok(vec![1, -1, 2, -2, 5, -5, 10, -10]);
    }
    let u = least_nonresidue(p) as i64;
    Ok(vec![1, u, p as i64, u * p as i64])
}

pub fn square_class(r: &Rational) -> Result<SquareClassQ> {
    SquareClassQ::from_rational(r)
}

/// The ℚ_p square class of a non-zero rational.
pub fn padic_square_class(r: &Rational, p: u64) -> Result<PadicSquareClass> {
    if r.is_zero() {
        return domain("0 has no square class");
    }
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    let v = valuation(r, p);
    let pv = num_traits::pow(BigInt::from(p), v.unsigned_abs() as usize);
    let unit = if v >= 0 { r / pv } else { r * pv };
    let modulus = if p == 2 { 8 } else { p };
    Ok(from_parts(p, v, unit_residue(&unit, modulus)))
}

pub(crate) fn classify_int(n: i128, p: u64) -> PadicSquareClass {
    debug_assert!(n != 0);
    let mut n = n;
    let mut v = 0i64;
    while n % p as i128 == 0 {
        n /= p as i128;
        v += 1;
    }
    let modulus = if p == 2 { 8 } else { p };
    from_parts(p, v, n.rem_euclid(modulus as i128) as u64)
}

// `residue` is the unit part modulo 8 (p = 2) or modulo p.
fn from_parts(p: u64, v: i64, residue: u64) -> PadicSquareClass {
    let odd = v.rem_euclid(2) == 1;
    let rep = if p == 2 {
        let unit: i64 = match residue {
            1 => 1,
            3 => -5,
            5 => 5,
            7 => -1,
            _ => unreachable!("even residue for a 2-adic unit"),
        };
        if odd {
            2 * unit
        } else {
            unit
        }
    } else {
        let unit = if legendre(residue as i128, p) == 1 {
            1
        } else {
            least_nonresidue(p) as i64
        };
        if odd {
            unit * p as i64
        } else {
            unit
        }
    };
    PadicSquareClass { p, rep }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_frac};

    #[test]
    fn rational_square_classes() {
        assert_eq!(square_class(&rat(4)).unwrap(), SquareClassQ::ONE);
        assert_eq!(square_class(&rat(8)).unwrap().value(), 2);
        let c = square_class(&rat_frac(-12, 49)).unwrap();
        assert_eq!((c.sign(), c.core()), (-1, 3));
        assert_eq!(square_class(&rat_frac(2, 3)).unwrap().value(), 6);
        assert!(square_class(&rat(0)).is_err());
    }

    #[test]
    fn class_products_stay_squarefree() {
        let a = SquareClassQ::from_int(6).unwrap();
        let b = SquareClassQ::from_int(-10).unwrap();
        assert_eq!(a.try_mul(b).unwrap().value(), -15);
        assert_eq!(a.try_mul(a).unwrap(), SquareClassQ::ONE);
    }

    #[test]
    fn padic_examples() {
        assert_eq!(padic_square_class(&rat(-7), 2).unwrap().rep(), 1);
        assert_eq!(padic_square_class(&rat(2), 2).unwrap().rep(), 2);
        assert_eq!(padic_square_class(&rat(3), 7).unwrap().rep(), 3); // u = 3 mod 7
        assert_eq!(least_nonresidue(7), 3);
        assert_eq!(padic_square_class(&rat_frac(1, 3), 3).unwrap().rep(), 3);
        assert_eq!(padic_square_class(&rat_frac(5, 4), 2).unwrap().rep(), 5);
        assert_eq!(padic_square_class(&rat(-2), 2).unwrap().rep(), -2);
        assert_eq!(padic_square_class(&rat(6), 2).unwrap().rep(), -10);
        assert!(padic_square_class(&rat(0), 5).is_err());
    }

    #[test]
    fn unit_squares_in_q2_are_one_mod_8() {
        // independent check: u is a 2-adic square iff some x has x^2 ≡ u (mod 2^k) for k = 3
        for u in (-63i64..64).filter(|u| u % 2 != 0) {
            let square_mod_8 = (0..8).any(|x: i64| (x * x - u).rem_euclid(8) == 0);
            assert_eq!(
                padic_square_class(&rat(u), 2).unwrap().is_square(),
                square_mod_8,
                "u = {u}"
            );
        }
    }

    #[test]
    fn place_parsing() {
        assert_eq!("inf".parse::<Place>().unwrap(), Place::Infinite);
        assert_eq!("7".parse::<Place>().unwrap(), Place::Finite(7));
        assert!("9".parse::<Place>().is_err());
        assert!(Place::Finite(2) < Place::Infinite);
    }
}
