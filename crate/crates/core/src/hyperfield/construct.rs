use crate::error::{Result, WittError};

use super::FiniteHyperfield;

/// A subgroup `T` of the multiplicative group of a tabled hyperfield.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupSelection {
    members: Vec<usize>,
}

impl SubgroupSelection {
    /// Validates `members` as a subgroup of `h*`.
    pub fn new(h: &FiniteHyperfield, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        let t = Self { members };
        t.check(h)?;
        Ok(t)
    }

    /// The subgroup generated by `gens` (closure under multiplication).
    pub fn generated(h: &FiniteHyperfield, gens: &[usize]) -> Result<Self> {
        if let Some(&g) = gens.iter().find(|&&g| g == 0 || g >= h.len()) {
            return Err(WittError::Precondition(format!(
                "generator {g} is zero or not an element"
            )));
        }
        let mut members = vec![h.one()];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &g in gens {
                let y = h.mul(x, g);
                if !members.contains(&y) {
                    members.push(y);
                }
            }
            i += 1;
        }
        Self::new(h, members)
    }

    pub fn trivial(h: &FiniteHyperfield) -> Self {
        Self {
            members: vec![h.one()],
        }
    }

    pub fn all_nonzero(h: &FiniteHyperfield) -> Self {
        Self {
            members: h.nonzero().collect(),
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// Re-validates against `h`; every operation taking a selection calls this.
    pub fn check(&self, h: &FiniteHyperfield) -> Result<()> {
        let pre = |msg: String| Err(WittError::Precondition(msg));
        if let Some(&x) = self.members.iter().find(|&&x| x >= h.len()) {
            return pre(format!("subgroup member {x} is not an element"));
        }
        if self.contains(0) {
            return pre("subgroup contains 0".into());
        }
        if !self.contains(h.one()) {
            return pre("subgroup does not contain 1".into());
        }
        for &a in &self.members {
            for &b in &self.members {
                if !self.contains(h.mul(a, b)) {
                    return pre(format!(
                        "subgroup not multiplicatively closed: {} * {} = {}",
                        h.label(a),
                        h.label(b),
                        h.label(h.mul(a, b))
                    ));
                }
            }
            match h.inverse(a) {
                Some(inv) if self.contains(inv) => {}
                _ => return pre(format!("inverse of {} missing from subgroup", h.label(a))),
            }
        }
        Ok(())
    }

    /// The coset `xT`, sorted.
    pub fn coset(&self, h: &FiniteHyperfield, x: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.members.iter().map(|&t| h.mul(x, t)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// The quotient `H/_m T`: classes of `a ~ b ⇔ as = bt` for some `s, t ∈ T`,
/// with `ā ∈ b̄ + c̄ ⇔ as ∈ bt + cu` for some `s, t, u ∈ T`.
///
/// Classes are ordered by their smallest member and labelled with that
/// member's label, so the zero class stays at index 0 and `quotient(H, {1})`
/// reproduces `H` exactly.
pub fn quotient(h: &FiniteHyperfield, t: &SubgroupSelection) -> Result<FiniteHyperfield> {
    t.check(h)?;
    let n = h.len();
    let mut class_of = vec![usize::MAX; n];
    let mut reps: Vec<usize> = Vec::new();
    for a in 0..n {
        if class_of[a] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(a);
        if a == 0 {
            class_of[0] = id;
        } else {
            for x in t.coset(h, a) {
                class_of[x] = id;
            }
        }
    }
    let m = reps.len();
    let mut add = vec![vec![Vec::new(); m]; m];
    for b in 0..n {
        for c in 0..n {
            let row = &mut add[class_of[b]][class_of[c]];
            for &tb in t.members() {
                for &uc in t.members() {
                    for &x in h.add(h.mul(b, tb), h.mul(c, uc)) {
                        row.push(class_of[x]);
                    }
                }
            }
        }
    }
    FiniteHyperfield::new(
        reps.iter().map(|&r| h.label(r).to_string()).collect(),
        class_of[h.one()],
        reps.iter().map(|&r| class_of[h.neg(r)]).collect(),
        reps.iter()
            .map(|&a| reps.iter().map(|&b| class_of[h.mul(a, b)]).collect())
            .collect(),
        add,
    )
}

/// The prime of `h`: `a +' b` is `a + b` when a summand is zero,
/// `a + b ∪ {a, b}` when `b ≠ -a`, and the whole carrier when `b = -a`.
pub fn prime(h: &FiniteHyperfield) -> FiniteHyperfield {
    let n = h.len();
    FiniteHyperfield::from_fn(
        h.labels().to_vec(),
        h.one(),
        |a| h.neg(a),
        |a, b| h.mul(a, b),
        |a, b| {
            if a == 0 || b == 0 {
                h.add(a, b).to_vec()
            } else if b == h.neg(a) {
                (0..n).collect()
            } else {
                let mut s = h.add(a, b).to_vec();
                s.push(a);
                s.push(b);
                s
            }
        },
    )
    .expect("prime of a valid table is total")
}
