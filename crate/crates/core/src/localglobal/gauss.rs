use std::fmt;

use num_traits::Zero;

use crate::arith::{is_prime, valuation, Rational};
use crate::error::{domain, Result};

use super::squares::{classify_int, Place};

/// A polynomial `a_0 + a_1 x + … + a_n x^n` over ℚ, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyOverQ {
    coeffs: Vec<Rational>,
}

impl PolyOverQ {
    /// Coefficients in increasing degree.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(Vec::new());
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in other.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        Self::new(out)
    }
}

/// A valuation value: an integer or `+∞` (the valuation of zero).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// Gauss extension of `v_p` to ℚ[x]: the minimum coefficient valuation.
pub fn gauss_valuation(f: &PolyOverQ, p: u64) -> Result<Valuation> {
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    Ok(f.coeffs
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| valuation(c, p))
        .min()
        .map_or(Valuation::Infinite, Valuation::Finite))
}

/// `v_p(f / g) = v_p(f) − v_p(g)`.
pub fn gauss_valuation_ratio(f: &PolyOverQ, g: &PolyOverQ, p: u64) -> Result<Valuation> {
    if g.is_zero() {
        return domain("zero denominator");
    }
    match (gauss_valuation(f, p)?, gauss_valuation(g, p)?) {
        (Valuation::Infinite, _) => Ok(Valuation::Infinite),
        (Valuation::Finite(a), Valuation::Finite(b)) => Ok(Valuation::Finite(a - b)),
        (Valuation::Finite(_), Valuation::Infinite) => unreachable!("denominator is non-zero"),
    }
}

/// Level of ℝ or ℚ_p: the least `n` with `−1` a sum of `n` squares, `None`
/// when `−1` is no such sum.
pub fn local_level(v: Place) -> Option<u32> {
    let p = match v {
        Place::Infinite => return None,
        Place::Finite(p) => p,
    };
    if classify_int(-1, p).is_square() {
        return Some(1);
    }
    // −1 ∈ D⟨1,1⟩ iff (−1, −1)_p = 1
    if super::hilbert::hilbert_symbol_int(-1, -1, v) == 1 {
        Some(2)
    } else {
        Some(4)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_frac};

    fn poly(c: &[i64]) -> PolyOverQ {
        PolyOverQ::new(c.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn valuations() {
        assert_eq!(
            gauss_valuation(&poly(&[9, 0, 3]), 3).unwrap(),
            Valuation::Finite(1)
        );
        assert_eq!(
            gauss_valuation(&poly(&[1, 1]), 5).unwrap(),
            Valuation::Finite(0)
        );
        assert_eq!(
            gauss_valuation_ratio(&poly(&[25, 5]), &poly(&[5, 1]), 5).unwrap(),
            Valuation::Finite(1)
        );
        assert_eq!(
            gauss_valuation(&poly(&[0, 0]), 5).unwrap(),
            Valuation::Infinite
        );
        let f = PolyOverQ::new(vec![rat_frac(1, 4), rat(2)]);
        assert_eq!(gauss_valuation(&f, 2).unwrap(), Valuation::Finite(-2));
        assert!(gauss_valuation_ratio(&poly(&[1]), &poly(&[]), 3).is_err());
    }

    #[test]
    fn levels() {
        assert_eq!(local_level(Place::Infinite), None);
        assert_eq!(local_level(Place::Finite(5)), Some(1));
        assert_eq!(local_level(Place::Finite(7)), Some(2));
        assert_eq!(local_level(Place::Finite(2)), Some(4));
    }

    #[test]
    fn level_four_at_two_by_search() {
        // −1 ≡ x² + y² + z² + w² (mod 2⁵) with an odd coordinate lifts; three
        // squares never reach 7 mod 8
        let m = 32i64;
        let sq: Vec<i64> = (0..m).map(|x| x * x % m).collect();
        let three = sq.iter().any(|a| {
            sq.iter()
                .any(|b| sq.iter().any(|c| (a + b + c + 1) % 8 == 0))
        });
        assert!(!three);
        let four = sq.iter().any(|a| {
            sq.iter().any(|b| {
                sq.iter()
                    .any(|c| sq.iter().any(|d| (a + b + c + d + 1) % m == 0))
            })
        });
        assert!(four);
    }
}
