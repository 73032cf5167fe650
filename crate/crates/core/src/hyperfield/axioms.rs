use std::fmt;

use serde::Serialize;

use super::FiniteHyperfield;

/// Labels of the hyperfield axioms: canonical hypergroup (I), commutative
/// monoid (II), absorbing zero (III), distributivity (IV), inverses (V).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    /// `c ∈ a + b ⇒ a ∈ c + (-b)`
    I1,
    /// `a ∈ b + 0 ⇔ a = b`
    I2,
    /// `(a + b) + c = a + (b + c)`
    I3,
    /// `a + b = b + a`
    I4,
    II1,
    II2,
    II3,
    III,
    /// `a(b + c) ⊆ ab + ac`, one-sided.
    IV,
    V,
}

impl Axiom {
    pub const ALL: [Axiom; 10] = [
        Axiom::I1,
        Axiom::I2,
        Axiom::I3,
        Axiom::I4,
        Axiom::II1,
        Axiom::II2,
        Axiom::II3,
        Axiom::III,
        Axiom::IV,
        Axiom::V,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Axiom::I1 => "I(1)",
            Axiom::I2 => "I(2)",
            Axiom::I3 => "I(3)",
            Axiom::I4 => "I(4)",
            Axiom::II1 => "II(1)",
            Axiom::II2 => "II(2)",
            Axiom::II3 => "II(3)",
            Axiom::III => "III",
            Axiom::IV => "IV",
            Axiom::V => "V",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl Serialize for Axiom {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    /// Element indices instantiating the failed axiom, in the order the
    /// axiom names its variables.
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    pub fn violated_axioms(&self) -> Vec<Axiom> {
        let mut out: Vec<Axiom> = self.violations.iter().map(|v| v.axiom).collect();
        out.sort();
        out.dedup();
        out
    }
}

// At most this many witnesses are kept per axiom.
const MAX_WITNESSES: usize = 8;

struct Collector {
    report: AxiomReport,
    counts: [usize; 10],
}

impl Collector {
    fn push(&mut self, axiom: Axiom, witness: Vec<usize>) {
        let slot = &mut self.counts[axiom as usize];
        if *slot < MAX_WITNESSES {
            *slot += 1;
            self.report.violations.push(Violation { axiom, witness });
        }
    }
}

/// Checks every axiom instance exhaustively.
///
/// Structural problems (non-total tables) cannot reach this function: they
/// are rejected when the [`FiniteHyperfield`] is built.
pub fn verify_axioms(h: &FiniteHyperfield) -> AxiomReport {
    let n = h.len();
    let mut out = Collector {
        report: AxiomReport::default(),
        counts: [0; 10],
    };
    let mut buf = Vec::new();

    for a in 0..n {
        for b in 0..n {
            // I(1)
            for &c in h.add(a, b) {
                if !h.sum_contains(c, h.neg(b), a) {
                    out.push(Axiom::I1, vec![a, b, c]);
                }
            }
            // I(2)
            if h.sum_contains(b, 0, a) != (a == b) {
                out.push(Axiom::I2, vec![a, b]);
            }
            // I(4), II(2)
            if a < b {
                if h.add(a, b) != h.add(b, a) {
                    out.push(Axiom::I4, vec![a, b]);
                }
                if h.mul(a, b) != h.mul(b, a) {
                    out.push(Axiom::II2, vec![a, b]);
                }
            }
        }
    }

    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                // I(3)
                let left = union_of(&mut buf, h.add(a, b).iter().map(|&x| h.add(x, c)));
                let right = union_of(&mut buf, h.add(b, c).iter().map(|&y| h.add(a, y)));
                if left != right {
                    out.push(Axiom::I3, vec![a, b, c]);
                }
                // II(1)
                if h.mul(h.mul(a, b), c) != h.mul(a, h.mul(b, c)) {
                    out.push(Axiom::II1, vec![a, b, c]);
                }
                // IV
                let target = h.add(h.mul(a, b), h.mul(a, c));
                if h.add(b, c)
                    .iter()
                    .any(|&x| target.binary_search(&h.mul(a, x)).is_err())
                {
                    out.push(Axiom::IV, vec![a, b, c]);
                }
            }
        }
    }

    for a in 0..n {
        if h.mul(a, h.one()) != a {
            out.push(Axiom::II3, vec![a]);
        }
        if h.mul(a, 0) != 0 {
            out.push(Axiom::III, vec![a]);
        }
    }

    if h.one() == 0 {
        out.push(Axiom::V, vec![0]);
    }
    for a in h.nonzero() {
        if h.inverse(a).is_none() {
            out.push(Axiom::V, vec![a]);
        }
    }

    out.report
}

fn union_of<'a>(buf: &mut Vec<usize>, sets: impl Iterator<Item = &'a [usize]>) -> Vec<usize> {
    buf.clear();
    for set in sets {
        buf.extend_from_slice(set);
    }
    buf.sort_unstable();
    buf.dedup();
    buf.clone()
}
