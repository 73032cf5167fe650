use crate::arith::{factor, is_prime};
use crate::error::{domain, Result, WittError};

/// The finite field with `q = p^k` elements, `p` odd.
///
/// Elements are integers in `0..q` whose base-`p` digits are polynomial
/// coefficients (constant term first) modulo a monic irreducible of
/// degree `k`.
#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u64,
    k: u32,
    q: u64,
    /// Lower coefficients of the monic modulus `x^k + ...`.
    modulus: Vec<u64>,
}

impl FiniteField {
    pub fn new(q: u64) -> Result<Self> {
        if q < 2 {
            return domain(format!("{q} is not a prime power"));
        }
        let f = factor(q);
        if f.len() != 1 {
            return domain(format!("{q} is not a prime power"));
        }
        let (p, k) = f[0];
        if p == 2 {
            return Err(WittError::Unsupported(
                "characteristic 2 is out of scope".into(),
            ));
        }
        debug_assert!(is_prime(p));
        let modulus = if k == 1 {
            vec![0]
        } else {
            find_irreducible(p, k)
        };
        Ok(Self { p, k, q, modulus })
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    fn digits(&self, mut x: u64) -> Vec<u64> {
        (0..self.k)
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d
            })
            .collect()
    }

    fn value_of_digits(&self, d: &[u64]) -> u64 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return (a + b) % self.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.value_of_digits(&s)
    }

    pub fn neg(&self, a: u64) -> u64 {
        if self.k == 1 {
            return (self.p - a) % self.p;
        }
        let d: Vec<u64> = self
            .digits(a)
            .iter()
            .map(|x| (self.p - x) % self.p)
            .collect();
        self.value_of_digits(&d)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return a * b % self.p;
        }
        let p = self.p;
        let k = self.k as usize;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, x) in da.iter().enumerate() {
            for (j, y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        // x^k = -(modulus)
        for deg in (k..prod.len()).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for (i, m) in self.modulus.iter().enumerate() {
                let idx = deg - k + i;
                prod[idx] = (prod[idx] + c * (p - m) % p) % p;
            }
        }
        self.value_of_digits(&prod[..k])
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.q
    }

    pub fn one(&self) -> u64 {
        1
    }

    pub fn is_square(&self, a: u64) -> bool {
        self.elements().any(|x| self.mul(x, x) == a)
    }

    /// Human-readable element: the integer for prime fields, a polynomial
    /// in `t` otherwise.
    pub fn label(&self, a: u64) -> String {
        if self.k == 1 {
            return a.to_string();
        }
        let terms: Vec<String> = self
            .digits(a)
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "t".to_string(),
                (1, c) => format!("{c}t"),
                (i, 1) => format!("t^{i}"),
                (i, c) => format!("{c}t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

// Smallest monic irreducible of degree k over F_p, by exhaustive search.
fn find_irreducible(p: u64, k: u32) -> Vec<u64> {
    let count = p.pow(k);
    for code in 0..count {
        let mut lower = Vec::with_capacity(k as usize);
        let mut c = code;
        for _ in 0..k {
            lower.push(c % p);
            c /= p;
        }
        let mut poly = lower.clone();
        poly.push(1);
        if lower[0] != 0 && is_irreducible(&poly, p) {
            return lower;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d as u32) {
            let mut div = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                div.push(c % p);
                c /= p;
            }
            div.push(1);
            if poly_rem_is_zero(poly, &div, p) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(num: &[u64], monic_div: &[u64], p: u64) -> bool {
    let mut r = num.to_vec();
    let dd = monic_div.len() - 1;
    while r.len() > dd {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dd;
        for (i, &c) in monic_div.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - lead * c % p) % p;
        }
        r.pop();
    }
    r.iter().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        for q in [3, 5, 9, 25, 27] {
            let f = FiniteField::new(q).unwrap();
            let nonzero: Vec<u64> = (1..q).collect();
            for &a in &nonzero {
                assert!(nonzero.iter().any(|&b| f.mul(a, b) == 1), "q={q} a={a}");
                assert_eq!(f.add(a, f.neg(a)), 0);
                for &b in &nonzero {
                    assert_ne!(f.mul(a, b), 0, "zero divisors in F_{q}");
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                }
            }
        }
    }

    #[test]
    fn squares_count() {
        for q in [3u64, 7, 9, 49, 81] {
            let f = FiniteField::new(q).unwrap();
            let n = (1..q).filter(|&a| f.is_square(a)).count() as u64;
            assert_eq!(n, (q - 1) / 2);
        }
    }

    #[test]
    fn rejects_bad_orders() {
        assert!(matches!(
            FiniteField::new(8),
            Err(WittError::Unsupported(_))
        ));
        assert!(FiniteField::new(12).is_err());
        assert!(FiniteField::new(1).is_err());
    }
}
