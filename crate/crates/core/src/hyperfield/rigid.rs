use crate::error::{domain, Result, WittError};

use super::{FiniteHyperfield, SubgroupSelection};

/// `x` is `T`-rigid when every sum `t1 + t2·x` lies in `T ∪ Tx ∪ {0}`.
pub fn is_rigid(h: &FiniteHyperfield, t: &SubgroupSelection, x: usize) -> Result<bool> {
    t.check(h)?;
    if x == 0 || x >= h.len() {
        return domain(format!("rigidity needs a non-zero element, got index {x}"));
    }
    Ok(rigid_unchecked(h, t, x))
}

fn rigid_unchecked(h: &FiniteHyperfield, t: &SubgroupSelection, x: usize) -> bool {
    let tx = t.coset(h, x);
    t.members().iter().all(|&t1| {
        t.members().iter().all(|&t2| {
            h.add(t1, h.mul(t2, x))
                .iter()
                .all(|&z| z == 0 || t.contains(z) || tx.binary_search(&z).is_ok())
        })
    })
}

/// The `T`-basic part `B(T) = {x ≠ 0 : x or -x is not T-rigid}`, sorted.
pub fn basic_part(h: &FiniteHyperfield, t: &SubgroupSelection) -> Result<Vec<usize>> {
    t.check(h)?;
    let rigid: Vec<bool> = h
        .elements()
        .map(|x| x != 0 && rigid_unchecked(h, t, x))
        .collect();
    let basic: Vec<usize> = h
        .nonzero()
        .filter(|&x| !rigid[x] || !rigid[h.neg(x)])
        .collect();
    // B(T) is a union of cosets of T.
    for &x in &basic {
        if t.coset(h, x)
            .iter()
            .any(|y| basic.binary_search(y).is_err())
        {
            return Err(WittError::Internal(format!(
                "basic part is not a union of T-cosets at {}",
                h.label(x)
            )));
        }
    }
    Ok(basic)
}

/// `T` is exceptional when `±T = B(T)` and either `-1 ∈ T` or `T` is
/// additively closed, read as `(a + b) \ {0} ⊆ T` for all `a, b ∈ T`.
pub fn is_exceptional(h: &FiniteHyperfield, t: &SubgroupSelection) -> Result<bool> {
    let basic = basic_part(h, t)?;
    let mut pm_t: Vec<usize> = t.members().iter().flat_map(|&x| [x, h.neg(x)]).collect();
    pm_t.sort_unstable();
    pm_t.dedup();
    if pm_t != basic {
        return Ok(false);
    }
    let minus_one = h.neg(h.one());
    if t.contains(minus_one) {
        return Ok(true);
    }
    Ok(t.members().iter().all(|&a| {
        t.members()
            .iter()
            .all(|&b| h.add(a, b).iter().all(|&z| z == 0 || t.contains(z)))
    }))
}
