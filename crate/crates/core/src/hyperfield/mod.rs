//! Multivalued-addition algebras (hyperfields).
//!
//! A [`FiniteHyperfield`] is an explicit table. Infinite carriers such as the
//! square classes of ℚ implement the [`Hyperfield`] trait instead and answer
//! membership queries `c ∈ a + b` on canonical representatives.

mod axioms;
mod construct;
mod morphism;
mod rigid;
mod table;

pub use axioms::{verify_axioms, Axiom, AxiomReport, Violation};
pub use construct::{prime, quotient, SubgroupSelection};
pub use morphism::{
    find_isomorphisms, is_group_extension, is_morphism, is_quotient_morphism,
    is_quotient_morphism_sampled, MorphismCheck, MorphismTable, DEFAULT_ISOMORPHISM_BOUND,
};
pub use rigid::{basic_part, is_exceptional, is_rigid};
pub use table::{FiniteHyperfield, HyperfieldJson};

/// A hyperfield answering queries on canonical element representatives.
///
/// Implementations canonicalize every input before comparing, so equality
/// of `Elem` values is equality of hyperfield elements.
pub trait Hyperfield {
    type Elem: Clone + Eq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Membership `c ∈ a + b`.
    fn sum_contains(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> bool;
}

impl Hyperfield for FiniteHyperfield {
    type Elem = usize;

    fn zero(&self) -> usize {
        0
    }

    fn one(&self) -> usize {
        FiniteHyperfield::one(self)
    }

    fn neg(&self, a: &usize) -> usize {
        FiniteHyperfield::neg(self, *a)
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        FiniteHyperfield::mul(self, *a, *b)
    }

    fn sum_contains(&self, a: &usize, b: &usize, c: &usize) -> bool {
        FiniteHyperfield::sum_contains(self, *a, *b, *c)
    }
}

/// Tabulates an oracle on a finite list of elements that is closed under
/// the operations. The first element must be zero; labels come from
/// `label`.
pub fn tabulate<H: Hyperfield>(
    h: &H,
    elements: &[H::Elem],
    label: impl Fn(&H::Elem) -> String,
) -> crate::error::Result<FiniteHyperfield> {
    use crate::error::WittError;
    if elements.first() != Some(&h.zero()) {
        return Err(WittError::Precondition("first element must be zero".into()));
    }
    let index = |e: &H::Elem| {
        elements.iter().position(|x| x == e).ok_or_else(|| {
            WittError::Precondition(format!("element list not closed: {e:?} missing"))
        })
    };
    let n = elements.len();
    let one = index(&h.one())?;
    let mut neg = Vec::with_capacity(n);
    let mut mul = Vec::with_capacity(n);
    let mut add = Vec::with_capacity(n);
    for a in elements {
        neg.push(index(&h.neg(a))?);
        let mut mul_row = Vec::with_capacity(n);
        let mut add_row = Vec::with_capacity(n);
        for b in elements {
            mul_row.push(index(&h.mul(a, b))?);
            add_row.push(
                (0..n)
                    .filter(|&k| h.sum_contains(a, b, &elements[k]))
                    .collect::<Vec<_>>(),
            );
        }
        mul.push(mul_row);
        add.push(add_row);
    }
    FiniteHyperfield::new(elements.iter().map(label).collect(), one, neg, mul, add)
}
