use serde::{Deserialize, Serialize};

use crate::arith::{rational_str, Rational};
use crate::error::{domain, Result};
use crate::localglobal::{ramification_of_classes, RamificationSet, SquareClassQ};

use super::field::ConicField;

/// Which obstruction rule produced a [`Evidence::QuaternionObstruction`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ObstructionRule {
    /// `(−1, −1)` splits over exactly one field.
    R3,
    /// The split sets over `{−1, 2, −2}²` differ under both identifications
    /// of `2` (as `2` or as `−2`).
    R4,
}

/// One quaternion algebra evaluated over each field: `pair_k` over K and
/// `pair_l` over L, with the split flags differing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionWitness {
    pub pair_k: [SquareClassQ; 2],
    pub pair_l: [SquareClassQ; 2],
    pub ram_pair_k: RamificationSet,
    pub ram_pair_l: RamificationSet,
    pub splits_k: bool,
    pub splits_l: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data")]
pub enum Evidence {
    /// Orderings of ℚ extending to K and L; an ordering extends iff one of
    /// the two coefficients is positive there (sign agreement).
    OrderingCount {
        n_k: u32,
        n_l: u32,
        signs_k: [i8; 2],
        signs_l: [i8; 2],
    },
    SplitVsNonsplit {
        ram_k: RamificationSet,
        ram_l: RamificationSet,
    },
    QuaternionObstruction {
        rule: ObstructionRule,
        ram_k: RamificationSet,
        ram_l: RamificationSet,
        witnesses: Vec<ObstructionWitness>,
    },
    Indistinguishable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateInputs {
    #[serde(with = "rational_str")]
    pub a: Rational,
    #[serde(with = "rational_str")]
    pub b: Rational,
    #[serde(with = "rational_str")]
    pub c: Rational,
    #[serde(with = "rational_str")]
    pub d: Rational,
}

/// A reason ℚ_{a,b} and ℚ_{c,d} are not Witt equivalent, or the explicit
/// admission that none was found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(flatten)]
    pub evidence: Evidence,
    pub inputs: CertificateInputs,
}

impl Certificate {
    pub fn is_indistinguishable(&self) -> bool {
        self.evidence == Evidence::Indistinguishable
    }

    /// `"OrderingCount"`, `"SplitVsNonsplit"`, ...
    pub fn kind(&self) -> &'static str {
        match self.evidence {
            Evidence::OrderingCount { .. } => "OrderingCount",
            Evidence::SplitVsNonsplit { .. } => "SplitVsNonsplit",
            Evidence::QuaternionObstruction { .. } => "QuaternionObstruction",
            Evidence::Indistinguishable => "Indistinguishable",
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("certificates serialize")
    }

    pub fn from_json(v: serde_json::Value) -> Result<Self> {
        serde_json::from_value(v)
            .map_err(|e| crate::WittError::Domain(format!("invalid certificate: {e}")))
    }
}

fn class(n: i64) -> SquareClassQ {
    SquareClassQ::from_int(n).expect("non-zero literal")
}

fn alphabet() -> [SquareClassQ; 3] {
    [class(-1), class(2), class(-2)]
}

// 2 ↔ −2, fixing −1.
fn swap_two(x: SquareClassQ) -> SquareClassQ {
    if x == class(2) {
        class(-2)
    } else if x == class(-2) {
        class(2)
    } else {
        x
    }
}

fn signs(f: &ConicField) -> [i8; 2] {
    [f.a.sign(), f.b.sign()]
}

fn witness(
    k: &ConicField,
    l: &ConicField,
    pair_k: [SquareClassQ; 2],
    pair_l: [SquareClassQ; 2],
) -> ObstructionWitness {
    ObstructionWitness {
        pair_k,
        pair_l,
        ram_pair_k: ramification_of_classes(pair_k[0], pair_k[1]),
        ram_pair_l: ramification_of_classes(pair_l[0], pair_l[1]),
        splits_k: k.splits_quaternion(pair_k[0], pair_k[1]),
        splits_l: l.splits_quaternion(pair_l[0], pair_l[1]),
    }
}

/// Tries the rules R1 (ordering counts), R2 (split vs non-split), R3
/// (`(−1, −1)`), R4 (`{−1, ±2}²` split sets) in order and returns the first
/// that separates the two fields.
pub fn witt_distinguish(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    d: &Rational,
) -> Result<Certificate> {
    let k = ConicField::new(a, b)?;
    let l = ConicField::new(c, d)?;
    let inputs = CertificateInputs {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        d: d.clone(),
    };
    Ok(Certificate {
        evidence: distinguish_fields(&k, &l),
        inputs,
    })
}

pub(crate) fn distinguish_fields(k: &ConicField, l: &ConicField) -> Evidence {
    let (n_k, n_l) = (k.ordering_count(), l.ordering_count());
    if n_k != n_l {
        return Evidence::OrderingCount {
            n_k,
            n_l,
            signs_k: signs(k),
            signs_l: signs(l),
        };
    }
    let (ram_k, ram_l) = (k.ramification(), l.ramification());
    if ram_k.is_split() != ram_l.is_split() {
        return Evidence::SplitVsNonsplit { ram_k, ram_l };
    }
    let m1 = [class(-1), class(-1)];
    let w = witness(k, l, m1, m1);
    if w.splits_k != w.splits_l {
        return Evidence::QuaternionObstruction {
            rule: ObstructionRule::R3,
            ram_k,
            ram_l,
            witnesses: vec![w],
        };
    }
    let pairs: Vec<[SquareClassQ; 2]> = alphabet()
        .into_iter()
        .flat_map(|r| alphabet().into_iter().map(move |s| [r, s]))
        .collect();
    let separating = |swap: bool| {
        pairs.iter().find_map(|&p| {
            let q = if swap { p.map(swap_two) } else { p };
            let w = witness(k, l, p, q);
            (w.splits_k != w.splits_l).then_some(w)
        })
    };
    if let (Some(w1), Some(w2)) = (separating(false), separating(true)) {
        return Evidence::QuaternionObstruction {
            rule: ObstructionRule::R4,
            ram_k,
            ram_l,
            witnesses: vec![w1, w2],
        };
    }
    Evidence::Indistinguishable
}

/// Re-checks the claims carried by `cert` for the fields ℚ_{a,b}, ℚ_{c,d},
/// recomputing only ordering counts, ramification sets and split flags.
pub fn verify_certificate(
    cert: &Certificate,
    a: &Rational,
    b: &Rational,
    c: &Rational,
    d: &Rational,
) -> Result<bool> {
    let k = ConicField::new(a, b)?;
    let l = ConicField::new(c, d)?;
    let i = &cert.inputs;
    if ConicField::new(&i.a, &i.b)? != k || ConicField::new(&i.c, &i.d)? != l {
        return domain(format!(
            "certificate is for ({}, {}), ({}, {}), not {k}, {l}",
            i.a, i.b, i.c, i.d
        ));
    }
    Ok(verify_evidence(&cert.evidence, &k, &l))
}

pub(crate) fn verify_evidence(e: &Evidence, k: &ConicField, l: &ConicField) -> bool {
    match e {
        Evidence::Indistinguishable => true,
        Evidence::OrderingCount {
            n_k,
            n_l,
            signs_k,
            signs_l,
        } => {
            *n_k == k.ordering_count()
                && *n_l == l.ordering_count()
                && *signs_k == signs(k)
                && *signs_l == signs(l)
                && n_k != n_l
        }
        Evidence::SplitVsNonsplit { ram_k, ram_l } => {
            *ram_k == k.ramification()
                && *ram_l == l.ramification()
                && ram_k.is_split() != ram_l.is_split()
        }
        Evidence::QuaternionObstruction {
            rule,
            ram_k,
            ram_l,
            witnesses,
        } => {
            if *ram_k != k.ramification() || *ram_l != l.ramification() {
                return false;
            }
            let honest = |w: &ObstructionWitness| {
                *w == witness(k, l, w.pair_k, w.pair_l) && w.splits_k != w.splits_l
            };
            let in_alphabet = |p: &[SquareClassQ; 2]| p.iter().all(|x| alphabet().contains(x));
            match (rule, witnesses.as_slice()) {
                (ObstructionRule::R3, [w]) => {
                    let m1 = [class(-1), class(-1)];
                    w.pair_k == m1 && w.pair_l == m1 && honest(w)
                }
                (ObstructionRule::R4, [w1, w2]) => {
                    in_alphabet(&w1.pair_k)
                        && in_alphabet(&w2.pair_k)
                        && w1.pair_l == w1.pair_k
                        && w2.pair_l == w2.pair_k.map(swap_two)
                        && honest(w1)
                        && honest(w2)
                }
                _ => false,
            }
        }
    }
}
