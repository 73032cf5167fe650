//! Concrete quadratic hyperfields: Q(𝔽_q), Q(ℝ), Q(ℚ_p) as tables and
//! Q(ℚ) as an oracle.

use crate::error::{Result, WittError};
use crate::hyperfield::{tabulate, FiniteHyperfield, Hyperfield, MorphismTable};

use super::finite_field::FiniteField;
use super::hilbert::{hilbert_symbol_int, represents_classes, Scope};
use super::squares::{canonical_reps, classify_int, Place, SquareClassQ};

/// Default cap on `q` for [`finite_field_quadratic_hyperfield`].
pub const DEFAULT_FIELD_BOUND: u64 = 4096;

/// Q(K_v) for a completion of ℚ, with elements the canonical local square
/// class representatives (`0` stands for zero).
#[derive(Debug, Clone, Copy)]
pub struct LocalQuadraticHyperfield {
    place: Place,
}

impl LocalQuadraticHyperfield {
    pub fn new(place: Place) -> Self {
        Self { place }
    }

    fn canon(&self, n: i128) -> i64 {
        if n == 0 {
            return 0;
        }
        match self.place {
            Place::Infinite => n.signum() as i64,
            Place::Finite(p) => classify_int(n, p).rep(),
        }
    }

    /// Zero followed by every non-zero class.
    pub fn elements(&self) -> Vec<i64> {
        let mut out = vec![0];
        match self.place {
            Place::Infinite => out.extend([1, -1]),
            Place::Finite(p) => out.extend(canonical_reps(p).expect("place holds a prime")),
        }
        out
    }
}

impl Hyperfield for LocalQuadraticHyperfield {
    type Elem = i64;

    fn zero(&self) -> i64 {
        0
    }

    fn one(&self) -> i64 {
        1
    }

    fn neg(&self, a: &i64) -> i64 {
        self.canon(-(*a as i128))
    }

    fn mul(&self, a: &i64, b: &i64) -> i64 {
        self.canon(*a as i128 * *b as i128)
    }

    fn sum_contains(&self, a: &i64, b: &i64, c: &i64) -> bool {
        let (a, b, c) = (
            self.canon(*a as i128),
            self.canon(*b as i128),
            self.canon(*c as i128),
        );
        if a == 0 {
            return c == b;
        }
        if b == 0 {
            return c == a;
        }
        if b == self.neg(&a) {
            return true;
        }
        // c ∈ D⟨a, b⟩ iff (ac, bc)_v = 1
        c != 0 && hilbert_symbol_int(a as i128 * c as i128, b as i128 * c as i128, self.place) == 1
    }
}

/// The table of Q(ℝ) (`v = ∞`) or Q(ℚ_p): `{0} ∪` the local square classes.
pub fn local_square_class_hyperfield(v: Place) -> FiniteHyperfield {
    let h = LocalQuadraticHyperfield::new(v);
    tabulate(&h, &h.elements(), |e| e.to_string()).expect("local classes are closed")
}

/// Q(ℚ) as an oracle: elements are `None` (zero) or square classes.
///
/// Products whose core exceeds 64 bits panic; inputs are expected to be
/// desk-scale.
#[derive(Debug, Clone, Copy, Default)]
pub struct RationalQuadraticHyperfield;

impl Hyperfield for RationalQuadraticHyperfield {
    type Elem = Option<SquareClassQ>;

    fn zero(&self) -> Self::Elem {
        None
    }

    fn one(&self) -> Self::Elem {
        Some(SquareClassQ::ONE)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.map(SquareClassQ::neg)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.try_mul(*y).expect("square class product in range")),
            _ => None,
        }
    }

    fn sum_contains(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> bool {
        match (a, b, c) {
            (None, _, _) => c == b,
            (_, None, _) => c == a,
            (Some(x), Some(y), _) if *y == x.neg() => true,
            (_, _, None) => false,
            (Some(x), Some(y), Some(z)) => represents_classes(*x, *y, *z, Scope::Global)
                .expect("square class product in range"),
        }
    }
}

/// Q(𝔽_q) for odd `q ≤ DEFAULT_FIELD_BOUND`.
pub fn finite_field_quadratic_hyperfield(q: u64) -> Result<FiniteHyperfield> {
    finite_field_quadratic_hyperfield_with_bound(q, DEFAULT_FIELD_BOUND)
}

/// Q(𝔽_q) built by enumerating `a s² + b t²` over `(s, t) ≠ (0, 0)`.
///
/// Elements are `0`, `1` (squares) and the non-square class, labelled `-1`
/// when `q ≡ 3 (mod 4)` and `u` otherwise.
pub fn finite_field_quadratic_hyperfield_with_bound(
    q: u64,
    bound: u64,
) -> Result<FiniteHyperfield> {
    if q > bound {
        return Err(WittError::Size {
            what: "q",
            value: q,
            bound,
        });
    }
    let f = FiniteField::new(q)?;
    let squares: Vec<u64> = {
        let mut s: Vec<u64> = f.elements().map(|x| f.mul(x, x)).collect();
        s.sort_unstable();
        s.dedup();
        s
    };
    let is_square = |x: u64| squares.binary_search(&x).is_ok();
    let nonsquare = f
        .elements()
        .find(|&x| !is_square(x))
        .expect("odd q has non-squares");
    let class = |x: u64| -> usize {
        if x == 0 {
            0
        } else if is_square(x) {
            1
        } else {
            2
        }
    };
    let rep = [0, 1, nonsquare];
    let minus_one = f.neg(1);
    let nonsquare_label = if is_square(minus_one) { "u" } else { "-1" };
    let mut add = vec![vec![Vec::new(); 3]; 3];
    for (i, row) in add.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            if i == 0 || j == 0 {
                *cell = vec![i.max(j)];
                continue;
            }
            let mut hit = [false; 3];
            for &s2 in &squares {
                for &t2 in &squares {
                    if s2 == 0 && t2 == 0 {
                        continue;
                    }
                    let x = f.add(f.mul(rep[i], s2), f.mul(rep[j], t2));
                    hit[class(x)] = true;
                }
            }
            *cell = (0..3).filter(|&k| hit[k]).collect();
        }
    }
    let mul_class = |a: usize, b: usize| class(f.mul(rep[a], rep[b]));
    FiniteHyperfield::new(
        vec!["0".into(), "1".into(), nonsquare_label.into()],
        1,
        (0..3).map(|a| class(f.neg(rep[a]))).collect(),
        (0..3)
            .map(|a| (0..3).map(|b| mul_class(a, b)).collect())
            .collect(),
        add,
    )
}

/// 𝔽_q itself viewed as a hyperfield with singleton sums.
pub fn finite_field_hyperfield(q: u64) -> Result<FiniteHyperfield> {
    let f = FiniteField::new(q)?;
    FiniteHyperfield::from_fn(
        f.elements().map(|x| f.label(x)).collect(),
        1,
        |a| f.neg(a as u64) as usize,
        |a, b| f.mul(a as u64, b as u64) as usize,
        |a, b| vec![f.add(a as u64, b as u64) as usize],
    )
}

/// The embedding Q(𝔽_p) → Q(ℚ_p) of residue square classes into unit
/// square classes, for odd `p`.
#[derive(Debug, Clone)]
pub struct ResidueEmbedding {
    pub p: u64,
    pub source: FiniteHyperfield,
    pub target: FiniteHyperfield,
    pub map: Vec<usize>,
}

impl ResidueEmbedding {
    pub fn morphism(&self) -> MorphismTable<'_> {
        MorphismTable::new(&self.source, &self.target, self.map.clone())
            .expect("embedding map is total")
    }

    /// Target elements not hit by the map, excluding zero.
    pub fn outside_image(&self) -> Vec<usize> {
        self.target
            .nonzero()
            .filter(|x| !self.map.contains(x))
            .collect()
    }
}

pub fn residue_embedding(p: u64) -> Result<ResidueEmbedding> {
    if p == 2 {
        return Err(WittError::Unsupported(
            "residue characteristic 2 has no residue embedding".into(),
        ));
    }
    let place = Place::finite(p)?;
    let source = finite_field_quadratic_hyperfield(p)?;
    let target = local_square_class_hyperfield(place);
    // The unit class with residue r has canonical representative 1 or u.
    let f = FiniteField::new(p)?;
    let nonsquare_residue = (1..p)
        .find(|&x| !f.is_square(x))
        .expect("non-residue exists");
    let image = |residue: u64| -> usize {
        let rep = classify_int(residue as i128, p).rep();
        target
            .index_of(&rep.to_string())
            .expect("unit class is tabled")
    };
    let map = vec![0, image(1), image(nonsquare_residue)];
    Ok(ResidueEmbedding {
        p,
        source,
        target,
        map,
    })
}
