use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{isqrt, rational_str, Rational};
use crate::error::{domain, Result, WittError};
use crate::localglobal::SquareClassQ;

/// Largest search box (number of `(X, Y)` pairs) attempted before giving up
/// with a size error.
pub const MAX_SEARCH_PAIRS: u128 = 50_000_000;

/// A point with `a x² + b y² = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalPoint {
    #[serde(with = "rational_str")]
    pub x: Rational,
    #[serde(with = "rational_str")]
    pub y: Rational,
}

impl RationalPoint {
    pub fn lies_on(&self, a: &Rational, b: &Rational) -> bool {
        a * &self.x * &self.x + b * &self.y * &self.y == Rational::one()
    }
}

/// Completeness bound for [`find_rational_point`]: `16 · max(|A|, |B|)²` on
/// the squarefree classes `A`, `B` of `a`, `b`. It dominates the sharp
/// search height, so a split conic always yields a point at this bound.
pub fn holzer_bound(a: &Rational, b: &Rational) -> Result<u64> {
    let (ca, cb) = (
        SquareClassQ::from_rational(a)?,
        SquareClassQ::from_rational(b)?,
    );
    let m = ca.core().max(cb.core()) as u128;
    Ok(u64::try_from(16 * m * m).unwrap_or(u64::MAX))
}

// sqrt(r) for a rational square r > 0.
fn exact_sqrt(r: &Rational) -> Rational {
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    debug_assert_eq!(&n * &n, *r.numer());
    debug_assert_eq!(&d * &d, *r.denom());
    Rational::new(n, d)
}

/// Searches for a rational point on `a x² + b y² = 1`.
///
/// Writing `a = A α²`, `b = B β²` with `A`, `B` squarefree, the search runs
/// over primitive `(X, Y, Z)` with `A X² + B Y² = Z²`, `X, Y ≥ 0`, `Z > 0`
/// and height `max(X, Y, Z) ≤ min(bound, ⌊√|AB|⌋)`, returning the point
/// `(X/(Zα), Y/(Zβ))` of least height (ties: smaller `Z`, then larger `X`).
/// The cap `√|AB|` is Holzer's bound for the reduced ternary form, so `None`
/// at a bound at least that large proves the conic has no point. For
/// `B = −A` the cap is `2|A|` instead.
pub fn find_rational_point(
    a: &Rational,
    b: &Rational,
    bound: i64,
) -> Result<Option<RationalPoint>> {
    if bound <= 0 {
        return domain(format!("bound must be positive, got {bound}"));
    }
    let (ca, cb) = (
        SquareClassQ::from_rational(a)?,
        SquareClassQ::from_rational(b)?,
    );
    let (big_a, big_b) = (ca.value(), cb.value());
    // When B = −A the bounded projective solution can be the point at
    // infinity (Z = 0); the widened box then contains ((A+1)/2A, (A−1)/2A).
    let at_infinity = big_a == -big_b;
    let (cap, x_max, y_max) = if at_infinity {
        let c = (2 * ca.core() as u128).min(bound as u128);
        (c, c, c)
    } else {
        let c = isqrt(ca.core() as u128 * cb.core() as u128).min(bound as u128);
        (
            c,
            isqrt(cb.core() as u128).min(c),
            isqrt(ca.core() as u128).min(c),
        )
    };
    let pairs = (x_max + 1) * (y_max + 1);
    if pairs > MAX_SEARCH_PAIRS {
        return Err(WittError::Size {
            what: "point search pairs",
            value: u64::try_from(pairs).unwrap_or(u64::MAX),
            bound: MAX_SEARCH_PAIRS as u64,
        });
    }
    let mut best: Option<(u128, u128, std::cmp::Reverse<u128>, u128)> = None;
    for x in 0..=x_max {
        for y in 0..=y_max {
            let z2 = big_a * (x * x) as i128 + big_b * (y * y) as i128;
            if z2 <= 0 {
                continue;
            }
            let z = isqrt(z2 as u128);
            if z * z != z2 as u128 || z > cap || x.gcd(&y).gcd(&z) != 1 {
                continue;
            }
            let key = (x.max(y).max(z), z, std::cmp::Reverse(x), y);
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
    }
    let Some((_, z, std::cmp::Reverse(x), y)) = best else {
        return Ok(None);
    };
    let alpha = exact_sqrt(&(a / ca.to_rational()));
    let beta = exact_sqrt(&(b / cb.to_rational()));
    let big = |n: u128| Rational::from_integer(BigInt::from(n));
    let point = RationalPoint {
        x: big(x) / (big(z) * alpha),
        y: big(y) / (big(z) * beta),
    };
    if !point.lies_on(a, b) {
        return Err(WittError::Internal(format!(
            "point search produced an invalid point {point:?}"
        )));
    }
    Ok(Some(point))
}

/// Polynomial in `z`, constant term first.
pub type Coeffs = Vec<Rational>;

fn poly_mul(f: &[Rational], g: &[Rational]) -> Coeffs {
    let mut out = vec![Rational::zero(); f.len() + g.len() - 1];
    for (i, x) in f.iter().enumerate() {
        for (j, y) in g.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_eval(f: &[Rational], z: &Rational) -> Rational {
    f.iter().rev().fold(Rational::zero(), |acc, c| acc * z + c)
}

/// A rational parametrization `X(z) = x_num/den`, `Y(z) = y_num/den` of
/// `a x² + b y² = 1`, from the pencil of lines of slope `z` through a known
/// point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parametrization {
    pub a: Rational,
    pub b: Rational,
    pub base_point: RationalPoint,
    pub x_num: Coeffs,
    pub y_num: Coeffs,
    pub den: Coeffs,
}

impl Parametrization {
    /// `a·x_num² + b·y_num² − den²`, which must vanish identically.
    pub fn residual(&self) -> Coeffs {
        let xx = poly_mul(&self.x_num, &self.x_num);
        let yy = poly_mul(&self.y_num, &self.y_num);
        let dd = poly_mul(&self.den, &self.den);
        (0..dd.len())
            .map(|i| &self.a * &xx[i] + &self.b * &yy[i] - &dd[i])
            .collect()
    }

    pub fn identity_holds(&self) -> bool {
        self.residual().iter().all(Zero::is_zero)
    }

    /// The point at parameter `z`, `None` where the denominator vanishes.
    pub fn eval(&self, z: &Rational) -> Option<RationalPoint> {
        let d = poly_eval(&self.den, z);
        if d.is_zero() {
            return None;
        }
        Some(RationalPoint {
            x: poly_eval(&self.x_num, z) / &d,
            y: poly_eval(&self.y_num, z) / &d,
        })
    }

    /// The parameter of the base point: the tangent slope `−ap/(bq)`, or
    /// `None` when the base point sits at `z = ∞` (`q = 0`).
    pub fn base_parameter(&self) -> Option<Rational> {
        let RationalPoint { x: p, y: q } = &self.base_point;
        (!q.is_zero()).then(|| -(&self.a * p) / (&self.b * q))
    }
}

/// Parametrizes through `p0 = (p, q)` with `z` the slope of the line
/// through `p0`:
/// `X = (bp z² − 2bq z − ap)/(b z² + a)`, `Y = (−bq z² − 2ap z + aq)/(b z² + a)`.
pub fn parametrize(a: &Rational, b: &Rational, p0: &RationalPoint) -> Result<Parametrization> {
    if a.is_zero() || b.is_zero() {
        return domain("a and b must be non-zero");
    }
    if !p0.lies_on(a, b) {
        return domain(format!("({}, {}) does not lie on the conic", p0.x, p0.y));
    }
    let (p, q) = (&p0.x, &p0.y);
    let two = Rational::from_integer(2.into());
    let par = Parametrization {
        a: a.clone(),
        b: b.clone(),
        base_point: p0.clone(),
        x_num: vec![-(a * p), -(&two * b * q), b * p],
        y_num: vec![a * q, -(&two * a * p), -(b * q)],
        den: vec![a.clone(), Rational::zero(), b.clone()],
    };
    if !par.identity_holds() {
        return Err(WittError::Internal(
            "parametrization identity failed".into(),
        ));
    }
    Ok(par)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_frac};

    fn pt(x: Rational, y: Rational) -> RationalPoint {
        RationalPoint { x, y }
    }

    #[test]
    fn documented_points() {
        let p = find_rational_point(&rat(1), &rat(1), 10).unwrap().unwrap();
        assert_eq!(p, pt(rat(1), rat(0)));
        let p = find_rational_point(&rat(5), &rat(-1), 10).unwrap().unwrap();
        assert_eq!(p, pt(rat(1), rat(2)));
        assert_eq!(
            find_rational_point(&rat(2), &rat(3), 1_000_000).unwrap(),
            None
        );
        assert!(find_rational_point(&rat(1), &rat(1), 0).is_err());
    }

    #[test]
    fn non_squarefree_inputs_map_back() {
        let (a, b) = (rat_frac(5, 4), rat(-9));
        let p = find_rational_point(&a, &b, 100).unwrap().unwrap();
        assert!(p.lies_on(&a, &b));
    }

    #[test]
    fn circle_chart() {
        let par = parametrize(&rat(1), &rat(1), &pt(rat(1), rat(0))).unwrap();
        assert!(par.identity_holds());
        assert_eq!(par.x_num, vec![rat(-1), rat(0), rat(1)]);
        assert_eq!(par.y_num, vec![rat(0), rat(-2), rat(0)]);
        assert_eq!(par.base_parameter(), None);
        assert_eq!(par.eval(&rat(1)), Some(pt(rat(0), rat(-1))));
    }

    #[test]
    fn hyperbola_chart_passes_through_base_point() {
        let p0 = pt(rat(1), rat(2));
        let par = parametrize(&rat(5), &rat(-1), &p0).unwrap();
        let z0 = par.base_parameter().unwrap();
        assert_eq!(par.eval(&z0), Some(p0));
        assert!(parametrize(&rat(5), &rat(-1), &pt(rat(1), rat(1))).is_err());
    }
}
