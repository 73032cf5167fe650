use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{is_squarefree, Rational};
use crate::error::{domain, Result};
use crate::localglobal::{ramification_of_classes, RamificationSet, SquareClassQ};

/// The function field ℚ_{a,b} of the conic `a x² + b y² = 1`, stored by the
/// square classes of `a` and `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConicField {
    pub a: SquareClassQ,
    pub b: SquareClassQ,
}

impl ConicField {
    pub fn new(a: &Rational, b: &Rational) -> Result<Self> {
        Ok(Self {
            a: SquareClassQ::from_rational(a)?,
            b: SquareClassQ::from_rational(b)?,
        })
    }

    pub fn from_ints(a: i64, b: i64) -> Result<Self> {
        Ok(Self {
            a: SquareClassQ::from_int(a)?,
            b: SquareClassQ::from_int(b)?,
        })
    }

    /// Ramification of the quaternion algebra `(a, b / ℚ)`.
    pub fn ramification(&self) -> RamificationSet {
        ramification_of_classes(self.a, self.b)
    }

    pub fn splits(&self) -> bool {
        self.ramification().is_split()
    }

    /// Orderings of ℚ extending to the field: one iff `a > 0` or `b > 0`.
    pub fn ordering_count(&self) -> u32 {
        u32::from(!self.a.is_negative() || !self.b.is_negative())
    }

    /// Whether `(r, s / ℚ)` splits over this field, i.e. is trivial or
    /// equal to `(a, b / ℚ)` in the Brauer group.
    pub fn splits_quaternion(&self, r: SquareClassQ, s: SquareClassQ) -> bool {
        let ram = ramification_of_classes(r, s);
        ram.is_split() || ram == self.ramification()
    }
}

impl fmt::Display for ConicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q_{{{},{}}}", self.a, self.b)
    }
}

/// Whether `(a, b / ℚ)` splits, equivalently whether the conic has a
/// rational point.
pub fn splits(a: &Rational, b: &Rational) -> Result<bool> {
    Ok(ConicField::new(a, b)?.splits())
}

/// ℚ_{a,b} ≅ ℚ_{c,d} over ℚ iff the two quaternion algebras agree.
pub fn conic_isomorphic(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Result<bool> {
    Ok(ConicField::new(a, b)?.ramification() == ConicField::new(c, d)?.ramification())
}

pub fn quaternion_splits_over_conic(
    r: &Rational,
    s: &Rational,
    a: &Rational,
    b: &Rational,
) -> Result<bool> {
    let k = ConicField::new(a, b)?;
    Ok(k.splits_quaternion(
        SquareClassQ::from_rational(r)?,
        SquareClassQ::from_rational(s)?,
    ))
}

/// ℚ or a quadratic field ℚ(√d).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseField {
    Rationals,
    Quadratic(i64),
}

impl BaseField {
    pub fn quadratic(d: i64) -> Result<Self> {
        if d == 0 || d == 1 || !is_squarefree(d.unsigned_abs()) {
            return domain(format!("{d} is not a squarefree integer other than 0, 1"));
        }
        Ok(BaseField::Quadratic(d))
    }
}

/// `u + v√d` in ℚ(√d); over ℚ only `u` is used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadElement {
    pub u: Rational,
    pub v: Rational,
}

impl QuadElement {
    pub fn new(u: Rational, v: Rational) -> Self {
        Self { u, v }
    }

    pub fn rational(u: Rational) -> Self {
        Self {
            u,
            v: Rational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    /// Sign of `u + v·(±√d)` for `d > 0`, decided exactly by comparing `u²`
    /// with `v² d`.
    fn sign_at(&self, d: i64, conjugate: bool) -> Ordering {
        let w = if conjugate {
            -self.v.clone()
        } else {
            self.v.clone()
        };
        let su = self.u.cmp(&Rational::zero());
        let sw = w.cmp(&Rational::zero());
        if su == sw || sw == Ordering::Equal {
            return su;
        }
        if su == Ordering::Equal {
            return sw;
        }
        let u2 = &self.u * &self.u;
        let w2d = &w * &w * Rational::from_integer(d.into());
        // opposite signs: the larger magnitude wins; d squarefree ≠ 1 rules
        // out a tie for non-zero elements
        if u2 > w2d {
            su
        } else {
            sw
        }
    }
}

/// Orderings of the base at which `a > 0` or `b > 0`.
pub fn orderings_extending(a: &QuadElement, b: &QuadElement, base: BaseField) -> Result<u32> {
    if a.is_zero() || b.is_zero() {
        return domain("a and b must be non-zero");
    }
    match base {
        BaseField::Rationals => {
            if !a.v.is_zero() || !b.v.is_zero() {
                return domain("irrational coefficient over Q");
            }
            Ok(u32::from(a.u.is_positive() || b.u.is_positive()))
        }
        BaseField::Quadratic(d) if d < 0 => Ok(0),
        BaseField::Quadratic(d) => Ok([false, true]
            .into_iter()
            .filter(|&c| {
                a.sign_at(d, c) == Ordering::Greater || b.sign_at(d, c) == Ordering::Greater
            })
            .count() as u32),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn documented_cases() {
        assert!(splits(&rat(1), &rat(1)).unwrap());
        assert!(!splits(&rat(-1), &rat(-1)).unwrap());
        assert!(!splits(&rat(2), &rat(3)).unwrap());
        assert!(conic_isomorphic(&rat(2), &rat(3), &rat(3), &rat(2)).unwrap());
        assert!(conic_isomorphic(&rat(2), &rat(3), &rat(2), &rat(-6)).unwrap());
        assert!(!conic_isomorphic(&rat(1), &rat(1), &rat(-1), &rat(-1)).unwrap());
        assert!(quaternion_splits_over_conic(&rat(2), &rat(3), &rat(2), &rat(3)).unwrap());
        assert!(!quaternion_splits_over_conic(&rat(-1), &rat(-1), &rat(1), &rat(1)).unwrap());
        assert!(quaternion_splits_over_conic(&rat(-1), &rat(-1), &rat(-1), &rat(-1)).unwrap());
    }

    #[test]
    fn ordering_counts() {
        let q = |n| QuadElement::rational(rat(n));
        assert_eq!(
            orderings_extending(&q(1), &q(-1), BaseField::Rationals).unwrap(),
            1
        );
        assert_eq!(
            orderings_extending(&q(-1), &q(-1), BaseField::Rationals).unwrap(),
            0
        );
        assert!(orderings_extending(&q(0), &q(-1), BaseField::Rationals).is_err());
        let a = QuadElement::new(rat(1), rat(1));
        let base = BaseField::quadratic(2).unwrap();
        assert_eq!(orderings_extending(&a, &q(-1), base).unwrap(), 1);
        assert_eq!(orderings_extending(&a, &q(1), base).unwrap(), 2);
        assert_eq!(
            orderings_extending(&a, &q(1), BaseField::Quadratic(-5)).unwrap(),
            0
        );
        // 3 - 2√2 > 0 at both embeddings
        let b = QuadElement::new(rat(3), rat(-2));
        assert_eq!(orderings_extending(&b, &q(-1), base).unwrap(), 2);
        assert!(BaseField::quadratic(8).is_err());
    }
}
