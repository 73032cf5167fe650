use serde::{Deserialize, Serialize};

use crate::arith::is_squarefree;
use crate::error::{domain, Result, WittError};
use crate::localglobal::{padic_square_class, Place};

use super::certificate::{
    distinguish_fields, verify_evidence, Certificate, CertificateInputs, Evidence,
};
use super::field::ConicField;

/// A weak-approximation requirement: at `place`, the answer must lie in the
/// local square class of `target` (at `∞` this is the sign of `target`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ApproxCondition {
    pub place: Place,
    pub target: i64,
}

impl ApproxCondition {
    pub fn new(place: Place, target: i64) -> Self {
        Self { place, target }
    }

    fn met_by(&self, n: i64) -> bool {
        match self.place {
            Place::Infinite => (n > 0) == (self.target > 0),
            Place::Finite(p) => {
                let class =
                    |m: i64| padic_square_class(&crate::arith::rat(m), p).expect("non-zero");
                class(n) == class(self.target)
            }
        }
    }
}

/// Scan limit for [`weak_approx`].
pub const WEAK_APPROX_SCAN: u64 = 100_000_000;

/// The squarefree integer of least absolute value (positive first on ties)
/// meeting every condition.
pub fn weak_approx(conditions: &[ApproxCondition]) -> Result<i64> {
    for (i, c) in conditions.iter().enumerate() {
        if c.target == 0 {
            return domain("targets must be non-zero");
        }
        if let Place::Finite(p) = c.place {
            Place::finite(p)?;
        }
        for d in &conditions[..i] {
            if d.place == c.place && !d.met_by(c.target) {
                return domain(format!(
                    "contradictory conditions at {}: {} and {}",
                    c.place, d.target, c.target
                ));
            }
        }
    }
    for m in 1..=WEAK_APPROX_SCAN {
        if !is_squarefree(m) {
            continue;
        }
        for n in [m as i64, -(m as i64)] {
            if conditions.iter().all(|c| c.met_by(n)) {
                return Ok(n);
            }
        }
    }
    Err(WittError::Internal(format!(
        "no squarefree solution below {WEAK_APPROX_SCAN}"
    )))
}

/// A family of conic function fields over ℚ with a certificate for every
/// pair. `certificates[i]` lists the certificates for `(i, j)`, `j > i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSet {
    pub fields: Vec<ConicField>,
    pub certificates: Vec<Vec<Certificate>>,
}

impl WitnessSet {
    pub fn certificate(&self, i: usize, j: usize) -> Option<&Certificate> {
        let (i, j) = (i.min(j), i.max(j));
        (i != j).then(|| &self.certificates[i][j - i - 1])
    }

    /// Every pair certified and every certificate re-verified.
    pub fn is_fully_certified(&self) -> bool {
        let n = self.fields.len();
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                let c = self.certificate(i, j).expect("pair exists");
                !c.is_indistinguishable()
                    && verify_evidence(&c.evidence, &self.fields[i], &self.fields[j])
            })
        })
    }
}

fn least_finite_ramified(f: &ConicField) -> Result<u64> {
    f.ramification()
        .finite_primes()
        .next()
        .ok_or_else(|| WittError::Internal(format!("{f} has no finite ramified prime")))
}

/// Builds four pairwise Witt-inequivalent conic function fields over ℚ.
///
/// With `a_0 = −1`, `a_1 = 1`: `𝔭` is the least finite prime ramified in
/// `(a_0, −1)`, `ā_0` is negative and a square at `𝔭`, `𝔮` is the least
/// finite prime ramified in `(ā_0, −1)`, `b_1` is positive and in the class
/// of `a_0` at `𝔭`, and `b_0` is negative, in the class of `a_0` at `𝔭`
/// and of `−ā_0` at `𝔮`. The fields are ℚ_{a_0,−1}, ℚ_{a_1,−1},
/// ℚ_{b_1,−1}, ℚ_{b_0,−1}.
pub fn witness_set() -> Result<WitnessSet> {
    let (a0, a1) = (-1i64, 1i64);
    let f0 = ConicField::from_ints(a0, -1)?;
    let p = Place::Finite(least_finite_ramified(&f0)?);
    let a0_bar = weak_approx(&[
        ApproxCondition::new(p, 1),
        ApproxCondition::new(Place::Infinite, -1),
    ])?;
    let q = Place::Finite(least_finite_ramified(&ConicField::from_ints(a0_bar, -1)?)?);
    let b1 = weak_approx(&[
        ApproxCondition::new(Place::Infinite, 1),
        ApproxCondition::new(p, a0),
    ])?;
    let b0 = weak_approx(&[
        ApproxCondition::new(Place::Infinite, -1),
        ApproxCondition::new(p, a0),
        ApproxCondition::new(q, -a0_bar),
    ])?;
    let fields = [a0, a1, b1, b0]
        .into_iter()
        .map(|x| ConicField::from_ints(x, -1))
        .collect::<Result<Vec<_>>>()?;
    let mut certificates = Vec::new();
    for (i, k) in fields.iter().enumerate() {
        let mut row = Vec::new();
        for l in &fields[i + 1..] {
            let evidence = distinguish_fields(k, l);
            if evidence == Evidence::Indistinguishable || !verify_evidence(&evidence, k, l) {
                return Err(WittError::Internal(format!(
                    "could not certify {k} against {l}"
                )));
            }
            row.push(Certificate {
                evidence,
                inputs: CertificateInputs {
                    a: k.a.to_rational(),
                    b: k.b.to_rational(),
                    c: l.a.to_rational(),
                    d: l.b.to_rational(),
                },
            });
        }
        certificates.push(row);
    }
    Ok(WitnessSet {
        fields,
        certificates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn approximation_examples() {
        assert_eq!(weak_approx(&[]).unwrap(), 1);
        let c = [
            ApproxCondition::new(Place::Infinite, 1),
            ApproxCondition::new(Place::Finite(2), -1),
        ];
        assert_eq!(weak_approx(&c).unwrap(), 7);
        let c = [
            ApproxCondition::new(Place::Infinite, -1),
            ApproxCondition::new(Place::Finite(2), -1),
            ApproxCondition::new(Place::Finite(7), 7),
        ];
        assert_eq!(weak_approx(&c).unwrap(), -217);
        let bad = [
            ApproxCondition::new(Place::Finite(3), 1),
            ApproxCondition::new(Place::Finite(3), 2),
        ];
        assert!(weak_approx(&bad).is_err());
    }

    #[test]
    fn witness_family() {
        let w = witness_set().unwrap();
        let pairs: Vec<(i128, i128)> = w
            .fields
            .iter()
            .map(|f| (f.a.value(), f.b.value()))
            .collect();
        assert_eq!(pairs, vec![(-1, -1), (1, -1), (7, -1), (-217, -1)]);
        assert!(w.is_fully_certified());
        assert_eq!(w.certificate(1, 2).unwrap().kind(), "SplitVsNonsplit");
        assert_eq!(w.certificate(3, 0).unwrap().kind(), "QuaternionObstruction");
    }
}
