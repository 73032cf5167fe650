use crate::error::{Result, WittError};

use super::{FiniteHyperfield, Hyperfield};

/// A map between two tabled hyperfields, given pointwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismTable<'a> {
    source: &'a FiniteHyperfield,
    target: &'a FiniteHyperfield,
    map: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MorphismCheck {
    pub morphism: bool,
    pub isomorphism: bool,
}

impl<'a> MorphismTable<'a> {
    pub fn new(
        source: &'a FiniteHyperfield,
        target: &'a FiniteHyperfield,
        map: Vec<usize>,
    ) -> Result<Self> {
        if map.len() != source.len() {
            return Err(WittError::Structure(format!(
                "map has {} entries, source has {} elements",
                map.len(),
                source.len()
            )));
        }
        if let Some(i) = map.iter().position(|&x| x >= target.len()) {
            return Err(WittError::Structure(format!(
                "map[{i}] = {} is not a target element",
                map[i]
            )));
        }
        Ok(Self {
            source,
            target,
            map,
        })
    }

    pub fn identity(h: &'a FiniteHyperfield) -> Self {
        Self {
            source: h,
            target: h,
            map: h.elements().collect(),
        }
    }

    pub fn source(&self) -> &'a FiniteHyperfield {
        self.source
    }

    pub fn target(&self) -> &'a FiniteHyperfield {
        self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.map
            .iter()
            .all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        for &y in &self.map {
            seen[y] = true;
        }
        seen.into_iter().all(|s| s)
    }

    fn image_of_set(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&x| self.map[x]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Checks `α(a+b) ⊆ α(a)+α(b)`, `α(ab) = α(a)α(b)`, `α(-a) = -α(a)`,
/// `α(0) = 0` and `α(1) = 1` at every tuple. The isomorphism flag further
/// requires a bijection whose inverse is again a morphism.
pub fn is_morphism(f: &MorphismTable<'_>) -> MorphismCheck {
    let morphism = morphism_holds(f.source, f.target, &f.map);
    let isomorphism = morphism && f.is_injective() && f.is_surjective() && {
        let mut inv = vec![0; f.target.len()];
        for (x, &y) in f.map.iter().enumerate() {
            inv[y] = x;
        }
        morphism_holds(f.target, f.source, &inv)
    };
    MorphismCheck {
        morphism,
        isomorphism,
    }
}

fn morphism_holds(s: &FiniteHyperfield, t: &FiniteHyperfield, map: &[usize]) -> bool {
    if map[0] != 0 || map[s.one()] != t.one() {
        return false;
    }
    for a in s.elements() {
        if map[s.neg(a)] != t.neg(map[a]) {
            return false;
        }
        for b in s.elements() {
            if map[s.mul(a, b)] != t.mul(map[a], map[b]) {
                return false;
            }
            let (fa, fb) = (map[a], map[b]);
            if s.add(a, b).iter().any(|&c| !t.sum_contains(fa, fb, map[c])) {
                return false;
            }
        }
    }
    true
}

/// Default cap on non-zero elements for [`find_isomorphisms`].
pub const DEFAULT_ISOMORPHISM_BOUND: usize = 16;

/// Every isomorphism `h1 → h2`, by backtracking.
///
/// `0`, `1` and `-1` are pinned first since any morphism fixes them. An
/// empty result proves the two tables are not isomorphic.
pub fn find_isomorphisms<'a>(
    h1: &'a FiniteHyperfield,
    h2: &'a FiniteHyperfield,
    bound: usize,
) -> Result<Vec<MorphismTable<'a>>> {
    for h in [h1, h2] {
        let nz = h.len() - 1;
        if nz > bound {
            return Err(WittError::Size {
                what: "non-zero elements",
                value: nz as u64,
                bound: bound as u64,
            });
        }
    }
    if h1.len() != h2.len() {
        return Ok(Vec::new());
    }
    let n = h1.len();
    let mut order = vec![0, h1.one()];
    if !order.contains(&h1.neg(h1.one())) {
        order.push(h1.neg(h1.one()));
    }
    order.extend(
        h1.elements()
            .filter(|x| ![0, h1.one(), h1.neg(h1.one())].contains(x)),
    );

    let mut search = Search {
        h1,
        h2,
        order,
        map: vec![usize::MAX; n],
        used: vec![false; n],
        found: Vec::new(),
    };
    search.extend(0);
    Ok(search
        .found
        .into_iter()
        .map(|map| MorphismTable {
            source: h1,
            target: h2,
            map,
        })
        .collect())
}

struct Search<'a> {
    h1: &'a FiniteHyperfield,
    h2: &'a FiniteHyperfield,
    order: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) {
        if depth == self.order.len() {
            let candidate = MorphismTable {
                source: self.h1,
                target: self.h2,
                map: self.map.clone(),
            };
            if is_morphism(&candidate).isomorphism {
                self.found.push(candidate.map);
            }
            return;
        }
        let x = self.order[depth];
        let forced = match x {
            0 => Some(0),
            _ if x == self.h1.one() => Some(self.h2.one()),
            _ if x == self.h1.neg(self.h1.one()) => Some(self.h2.neg(self.h2.one())),
            _ => None,
        };
        let candidates: Vec<usize> = match forced {
            Some(y) => vec![y],
            None => self.h2.nonzero().collect(),
        };
        for y in candidates {
            if self.used[y] {
                continue;
            }
            self.map[x] = y;
            self.used[y] = true;
            if self.consistent(x) {
                self.extend(depth + 1);
            }
            self.used[y] = false;
            self.map[x] = usize::MAX;
        }
    }

    // Checks the new assignment of `x` against everything already assigned.
    fn consistent(&self, x: usize) -> bool {
        let (h1, h2, map) = (self.h1, self.h2, &self.map);
        let fx = map[x];
        let nx = h1.neg(x);
        if map[nx] != usize::MAX && map[nx] != h2.neg(fx) {
            return false;
        }
        for y in h1.elements().filter(|&y| map[y] != usize::MAX) {
            let fy = map[y];
            let xy = h1.mul(x, y);
            if map[xy] != usize::MAX && map[xy] != h2.mul(fx, fy) {
                return false;
            }
            for &c in h1.add(x, y) {
                if map[c] != usize::MAX && !h2.sum_contains(fx, fy, map[c]) {
                    return false;
                }
            }
            for &d in h2.add(fx, fy) {
                if let Some(c) = map.iter().position(|&m| m == d) {
                    if !h1.sum_contains(x, y, c) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Whether `f` is a quotient morphism: surjective, and
/// `f(c) ∈ f(a)+f(b) ⇔ cs ∈ at+bu` for some `s, t, u` in the kernel
/// `Δ = {x ≠ 0 : f(x) = 1}`.
pub fn is_quotient_morphism(f: &MorphismTable<'_>) -> Result<bool> {
    if !is_morphism(f).morphism {
        return Err(WittError::Precondition("map is not a morphism".into()));
    }
    if !f.is_surjective() {
        return Ok(false);
    }
    let (s, t) = (f.source, f.target);
    let kernel: Vec<usize> = s.nonzero().filter(|&x| f.map[x] == t.one()).collect();
    for a in s.elements() {
        for b in s.elements() {
            // Union over t, u ∈ Δ of at + bu, then closed under Δ-multiples.
            let mut reachable = vec![false; s.len()];
            for &tt in &kernel {
                for &u in &kernel {
                    for &x in s.add(s.mul(a, tt), s.mul(b, u)) {
                        reachable[x] = true;
                    }
                }
            }
            for c in s.elements() {
                let lhs = t.sum_contains(f.map[a], f.map[b], f.map[c]);
                let rhs = kernel.iter().any(|&k| reachable[s.mul(c, k)]);
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The quotient-morphism criterion for a map out of an oracle hyperfield,
/// checked on sampled elements.
///
/// `kernel` is a finite sample of `Δ` used to search for the witnesses
/// `s, t, u`; a `false` result means no witness was found in the sample.
pub fn is_quotient_morphism_sampled<H: Hyperfield>(
    source: &H,
    target: &FiniteHyperfield,
    map: impl Fn(&H::Elem) -> usize,
    elements: &[H::Elem],
    kernel: &[H::Elem],
) -> bool {
    let mut hit = vec![false; target.len()];
    for e in elements {
        hit[map(e)] = true;
    }
    if hit.iter().any(|h| !h) {
        return false;
    }
    for a in elements {
        for b in elements {
            for c in elements {
                let lhs = target.sum_contains(map(a), map(b), map(c));
                let rhs = kernel.iter().any(|s| {
                    let cs = source.mul(c, s);
                    kernel.iter().any(|t| {
                        let at = source.mul(a, t);
                        kernel
                            .iter()
                            .any(|u| source.sum_contains(&at, &source.mul(b, u), &cs))
                    })
                });
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// Whether `f` is a group extension: injective, every non-zero element
/// outside the image is rigid (`1 + x ⊆ {1, x}`), and `f(1+y) = 1+f(y)` for
/// every `y ≠ -1`.
pub fn is_group_extension(f: &MorphismTable<'_>) -> Result<bool> {
    if !is_morphism(f).morphism {
        return Err(WittError::Precondition("map is not a morphism".into()));
    }
    if !f.is_injective() {
        return Ok(false);
    }
    let (s, t) = (f.source, f.target);
    let mut in_image = vec![false; t.len()];
    for &y in &f.map {
        in_image[y] = true;
    }
    for x in t.nonzero().filter(|&x| !in_image[x]) {
        if !t.add(t.one(), x).iter().all(|&z| z == t.one() || z == x) {
            return Ok(false);
        }
    }
    let minus_one = s.neg(s.one());
    for y in s.elements().filter(|&y| y != minus_one) {
        if f.image_of_set(s.add(s.one(), y)) != t.add(t.one(), f.map[y]) {
            return Ok(false);
        }
    }
    Ok(true)
}
