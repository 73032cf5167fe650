//! Genus theory of quadratic fields ℚ(√d).

mod forms;

use serde::Serialize;

use crate::arith::{is_squarefree, prime_divisors};
use crate::error::{domain, Result, WittError};

pub use forms::{reduced_forms, Form};

/// ℚ(√d) for a squarefree `d ∉ {0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct QuadraticField {
    d: i64,
}

impl QuadraticField {
    pub fn new(d: i64) -> Result<Self> {
        if d == 0 || d == 1 || !is_squarefree(d.unsigned_abs()) {
            return domain(format!("d = {d} must be squarefree and not 0 or 1"));
        }
        Ok(Self { d })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn discriminant(&self) -> i64 {
        if self.d.rem_euclid(4) == 1 {
            self.d
        } else {
            4 * self.d
        }
    }

    /// Number of primes dividing the discriminant.
    pub fn ramified_count(&self) -> u32 {
        prime_divisors(self.discriminant().unsigned_abs()).len() as u32
    }

    /// `(r₁, r₂)`: real and complex places.
    pub fn signature(&self) -> (u32, u32) {
        if self.d > 0 {
            (2, 0)
        } else {
            (0, 1)
        }
    }
}

pub fn discriminant_of(d: i64) -> Result<i64> {
    Ok(QuadraticField::new(d)?.discriminant())
}

pub fn ramified_count(d: i64) -> Result<u32> {
    Ok(QuadraticField::new(d)?.ramified_count())
}

/// Whether `d > 0` is a sum of two rational squares: no prime `≡ 3 (mod 4)`
/// divides its squarefree part.
pub fn is_sum_two_squares(d: i64) -> Result<bool> {
    if d <= 0 {
        return domain(format!("d = {d} must be positive"));
    }
    let core = crate::arith::squarefree_part(d as u64);
    Ok(prime_divisors(core).iter().all(|p| p % 4 != 3))
}

/// Which genus-theory branch applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    #[serde(rename = "N-1")]
    NMinusOne,
    #[serde(rename = "N-2")]
    NMinusTwo,
}

pub fn genus_branch(d: i64) -> Result<Branch> {
    QuadraticField::new(d)?;
    Ok(if d > 0 && !is_sum_two_squares(d)? {
        Branch::NMinusTwo
    } else {
        Branch::NMinusOne
    })
}

/// 2-rank of the (wide) ideal class group: `N − 2` for real `d` not a sum of
/// two squares, `N − 1` otherwise.
pub fn class_group_2rank(d: i64) -> Result<u32> {
    let n = ramified_count(d)?;
    Ok(match genus_branch(d)? {
        Branch::NMinusOne => n - 1,
        Branch::NMinusTwo => n - 2,
    })
}

/// `r₁ + r₂ + t` with `t` the class-group 2-rank.
pub fn vk_2rank(d: i64) -> Result<u32> {
    let (r1, r2) = QuadraticField::new(d)?.signature();
    Ok(r1 + r2 + class_group_2rank(d)?)
}

/// The summary printed for a quadratic field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenusReport {
    pub d: i64,
    pub discriminant: i64,
    #[serde(rename = "N")]
    pub n: u32,
    pub branch: Branch,
    pub two_rank: u32,
    pub vk_two_rank: u32,
}

pub fn genus_report(d: i64) -> Result<GenusReport> {
    let f = QuadraticField::new(d)?;
    Ok(GenusReport {
        d,
        discriminant: f.discriminant(),
        n: f.ramified_count(),
        branch: genus_branch(d)?,
        two_rank: class_group_2rank(d)?,
        vk_two_rank: vk_2rank(d)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassGroupData {
    pub order: u64,
    pub two_rank: u32,
    pub representatives: Vec<Form>,
}

/// Largest `|d|` accepted by [`imaginary_class_group_oracle`].
pub const DEFAULT_ORACLE_BOUND: u64 = 1_000_000;

/// Class group of an imaginary quadratic field from its reduced forms; the
/// 2-rank counts forms with `f ∘ f` principal.
pub fn imaginary_class_group_oracle(d: i64) -> Result<ClassGroupData> {
    imaginary_class_group_oracle_with_bound(d, DEFAULT_ORACLE_BOUND)
}

pub fn imaginary_class_group_oracle_with_bound(d: i64, bound: u64) -> Result<ClassGroupData> {
    let f = QuadraticField::new(d)?;
    if d > 0 {
        return domain(format!("d = {d} must be negative"));
    }
    if d.unsigned_abs() > bound {
        return Err(WittError::Size {
            what: "|d|",
            value: d.unsigned_abs(),
            bound,
        });
    }
    let disc = f.discriminant();
    let forms = reduced_forms(disc);
    let e = Form::identity(disc);
    let involutions = forms.iter().filter(|&&g| g.compose(g) == e).count();
    if !involutions.is_power_of_two() {
        return Err(WittError::Internal(format!(
            "{involutions} elements of order ≤ 2 for discriminant {disc}"
        )));
    }
    Ok(ClassGroupData {
        order: forms.len() as u64,
        two_rank: involutions.trailing_zeros(),
        representatives: forms,
    })
}

/// A row of the real-quadratic reference table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RealQuadraticEntry {
    pub d: i64,
    /// Wide class number.
    pub h: u32,
    /// Narrow class number.
    pub h_plus: u32,
    /// 2-rank of the wide class group.
    pub two_rank: u32,
    /// 2-rank of the narrow class group.
    pub narrow_two_rank: u32,
}

impl RealQuadraticEntry {
    pub fn narrow_differs(&self) -> bool {
        self.two_rank != self.narrow_two_rank
    }
}

const fn entry(
    d: i64,
    h: u32,
    h_plus: u32,
    two_rank: u32,
    narrow_two_rank: u32,
) -> RealQuadraticEntry {
    RealQuadraticEntry {
        d,
        h,
        h_plus,
        two_rank,
        narrow_two_rank,
    }
}

/// Class numbers of small real quadratic fields.
///
/// Source: standard tables of real quadratic class numbers (e.g. the LMFDB
/// number field pages for ℚ(√d)), cross-checked by the norm of the
/// fundamental unit: `h⁺ = h` when the unit has norm −1, `h⁺ = 2h`
/// otherwise. All wide groups here are trivial or cyclic of order 2; the
/// narrow groups for 15 and 30 are (ℤ/2)², for 34 it is ℤ/4.
pub const REAL_QUADRATIC_TABLE: [RealQuadraticEntry; 13] = [
    entry(2, 1, 1, 0, 0),  // ε = 1+√2, N = −1
    entry(3, 1, 2, 0, 1),  // ε = 2+√3, N = +1
    entry(5, 1, 1, 0, 0),  // ε = (1+√5)/2, N = −1
    entry(6, 1, 2, 0, 1),  // ε = 5+2√6, N = +1
    entry(7, 1, 2, 0, 1),  // ε = 8+3√7, N = +1
    entry(10, 2, 2, 1, 1), // ε = 3+√10, N = −1
    entry(11, 1, 2, 0, 1), // ε = 10+3√11, N = +1
    entry(13, 1, 1, 0, 0), // ε = (3+√13)/2, N = −1
    entry(14, 1, 2, 0, 1), // ε = 15+4√14, N = +1
    entry(15, 2, 4, 1, 2), // ε = 4+√15, N = +1
    entry(30, 2, 4, 1, 2), // ε = 11+2√30, N = +1
    entry(34, 2, 4, 1, 1), // ε = 35+6√34, N = +1
    entry(65, 2, 2, 1, 1), // ε = 8+√65, N = −1
];

/// `d_j` = product of the first `j` primes `≡ 1 (mod 4)`, `j = 1..=count`;
/// the class-group 2-ranks are `0, 1, …, count − 1`.
pub fn distinct_2rank_family(count: usize) -> Result<Vec<i64>> {
    if count == 0 {
        return domain("count must be at least 1");
    }
    let mut out = Vec::with_capacity(count);
    let mut d: i64 = 1;
    let mut p: u64 = 5;
    while out.len() < count {
        if p % 4 == 1 && crate::arith::is_prime(p) {
            d = d.checked_mul(p as i64).ok_or({
                WittError::Size {
                    what: "family size",
                    value: count as u64,
                    bound: out.len() as u64,
                }
            })?;
            out.push(d);
        }
        p += 1;
    }
    Ok(out)
}

/// `true` when ℚ(√d₁)(x) and ℚ(√d₂)(x) are provably not Witt equivalent:
/// the numbers of real places or the class-group 2-ranks differ. `false`
/// means no conclusion.
pub fn rational_function_field_inequiv(d1: i64, d2: i64) -> Result<bool> {
    let (f1, f2) = (QuadraticField::new(d1)?, QuadraticField::new(d2)?);
    Ok(f1.signature().0 != f2.signature().0 || class_group_2rank(d1)? != class_group_2rank(d2)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discriminants_and_counts() {
        assert_eq!(discriminant_of(5).unwrap(), 5);
        assert_eq!(discriminant_of(3).unwrap(), 12);
        assert_eq!(discriminant_of(-5).unwrap(), -20);
        assert!(discriminant_of(12).is_err());
        assert!(discriminant_of(1).is_err());
        assert_eq!(ramified_count(10).unwrap(), 2);
        assert_eq!(ramified_count(-5).unwrap(), 2);
        assert_eq!(ramified_count(5).unwrap(), 1);
    }

    #[test]
    fn two_squares() {
        assert!(is_sum_two_squares(10).unwrap());
        assert!(!is_sum_two_squares(3).unwrap());
        assert!(is_sum_two_squares(34).unwrap());
        assert!(is_sum_two_squares(0).is_err());
    }

    #[test]
    fn ranks() {
        assert_eq!(class_group_2rank(10).unwrap(), 1);
        assert_eq!(class_group_2rank(3).unwrap(), 0);
        assert_eq!(class_group_2rank(-5).unwrap(), 1);
        assert_eq!(vk_2rank(10).unwrap(), 3);
        assert_eq!(vk_2rank(-1).unwrap(), 1);
    }

    #[test]
    fn oracle_examples() {
        let g = imaginary_class_group_oracle(-1).unwrap();
        assert_eq!((g.order, g.two_rank), (1, 0));
        let g = imaginary_class_group_oracle(-5).unwrap();
        assert_eq!((g.order, g.two_rank), (2, 1));
        assert_eq!(
            g.representatives,
            vec![Form::new(1, 0, 5), Form::new(2, 2, 3)]
        );
        let g = imaginary_class_group_oracle(-23).unwrap();
        assert_eq!((g.order, g.two_rank), (3, 0));
        assert!(imaginary_class_group_oracle(5).is_err());
        assert!(matches!(
            imaginary_class_group_oracle_with_bound(-101, 100),
            Err(WittError::Size { .. })
        ));
    }

    #[test]
    fn family_and_inequivalence() {
        assert_eq!(distinct_2rank_family(3).unwrap(), vec![5, 65, 1105]);
        assert_eq!(distinct_2rank_family(1).unwrap(), vec![5]);
        assert!(rational_function_field_inequiv(10, 3).unwrap());
        assert!(rational_function_field_inequiv(-5, 5).unwrap());
        assert!(!rational_function_field_inequiv(2, 3).unwrap());
    }

    #[test]
    fn report_json() {
        let v = serde_json::to_value(genus_report(3).unwrap()).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"d": 3, "discriminant": 12, "N": 2, "branch": "N-2", "two_rank": 0, "vk_two_rank": 2})
        );
    }
}
