use serde::{Deserialize, Serialize};

use crate::error::{Result, WittError};

/// A hyperfield given by explicit operation tables.
///
/// Element `0` is always the additive zero. Addition sets are stored sorted
/// and deduplicated, so two tables describing the same structure compare
/// equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteHyperfield {
    labels: Vec<String>,
    one: usize,
    neg: Vec<usize>,
    mul: Vec<usize>,
    add: Vec<Vec<usize>>,
}

/// On-disk layout. Field names are part of the file format.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HyperfieldJson {
    pub elements: Vec<String>,
    pub one: usize,
    pub neg: Vec<usize>,
    pub mul: Vec<Vec<usize>>,
    pub add: Vec<Vec<Vec<usize>>>,
}

impl FiniteHyperfield {
    /// Builds a table, rejecting anything that is not total or that refers
    /// to unknown indices. Axioms are *not* checked here; see
    /// [`verify_axioms`](super::verify_axioms).
    pub fn new(
        labels: Vec<String>,
        one: usize,
        neg: Vec<usize>,
        mul: Vec<Vec<usize>>,
        add: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let n = labels.len();
        let structure = |msg: String| Err(WittError::Structure(msg));
        if n == 0 {
            return structure("empty carrier".into());
        }
        if one >= n {
            return structure(format!(
                "one = {one} is not an element index (carrier size {n})"
            ));
        }
        if neg.len() != n {
            return structure(format!("neg has {} entries, expected {n}", neg.len()));
        }
        if let Some(i) = neg.iter().position(|&x| x >= n) {
            return structure(format!("neg[{i}] = {} out of range", neg[i]));
        }
        if neg[0] != 0 {
            return structure("neg(0) must be 0".into());
        }
        if let Some(i) = (0..n).find(|&i| neg[neg[i]] != i) {
            return structure(format!("neg is not an involution at {i}"));
        }
        if mul.len() != n {
            return structure(format!("mul has {} rows, expected {n}", mul.len()));
        }
        let mut flat_mul = Vec::with_capacity(n * n);
        for (i, row) in mul.iter().enumerate() {
            if row.len() != n {
                return structure(format!(
                    "mul row {i} has {} entries, expected {n}",
                    row.len()
                ));
            }
            if let Some(j) = row.iter().position(|&x| x >= n) {
                return structure(format!("mul[{i}][{j}] = {} out of range", row[j]));
            }
            flat_mul.extend_from_slice(row);
        }
        if add.len() != n {
            return structure(format!("add has {} rows, expected {n}", add.len()));
        }
        let mut flat_add = Vec::with_capacity(n * n);
        for (i, row) in add.into_iter().enumerate() {
            if row.len() != n {
                return structure(format!(
                    "add row {i} has {} entries, expected {n}",
                    row.len()
                ));
            }
            for (j, mut set) in row.into_iter().enumerate() {
                if set.is_empty() {
                    return structure(format!("add[{i}][{j}] is empty"));
                }
                if let Some(&x) = set.iter().find(|&&x| x >= n) {
                    return structure(format!("add[{i}][{j}] contains {x}, out of range"));
                }
                set.sort_unstable();
                set.dedup();
                flat_add.push(set);
            }
        }
        Ok(Self {
            labels,
            one,
            neg,
            mul: flat_mul,
            add: flat_add,
        })
    }

    /// Builds a table from closures over `0..n`.
    pub fn from_fn(
        labels: Vec<String>,
        one: usize,
        neg: impl Fn(usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
        add: impl Fn(usize, usize) -> Vec<usize>,
    ) -> Result<Self> {
        let n = labels.len();
        let neg_t = (0..n).map(&neg).collect();
        let mul_t = (0..n)
            .map(|a| (0..n).map(|b| mul(a, b)).collect())
            .collect();
        let add_t = (0..n)
            .map(|a| (0..n).map(|b| add(a, b)).collect())
            .collect();
        Self::new(labels, one, neg_t, mul_t, add_t)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.len() + b]
    }

    /// The set `a + b`, sorted.
    pub fn add(&self, a: usize, b: usize) -> &[usize] {
        &self.add[a * self.len() + b]
    }

    pub fn sum_contains(&self, a: usize, b: usize, c: usize) -> bool {
        self.add(a, b).binary_search(&c).is_ok()
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn nonzero(&self) -> std::ops::Range<usize> {
        1..self.len()
    }

    /// Multiplicative inverse of a non-zero element, if the table has one.
    pub fn inverse(&self, a: usize) -> Option<usize> {
        self.elements().find(|&b| self.mul(a, b) == self.one)
    }

    pub fn to_json(&self) -> HyperfieldJson {
        let n = self.len();
        HyperfieldJson {
            elements: self.labels.clone(),
            one: self.one,
            neg: self.neg.clone(),
            mul: (0..n)
                .map(|a| (0..n).map(|b| self.mul(a, b)).collect())
                .collect(),
            add: (0..n)
                .map(|a| (0..n).map(|b| self.add(a, b).to_vec()).collect())
                .collect(),
        }
    }

    pub fn from_json(raw: HyperfieldJson) -> Result<Self> {
        Self::new(raw.elements, raw.one, raw.neg, raw.mul, raw.add)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("table serializes")
    }

    /// Parses the JSON file format. Errors carry the serde location
    /// (line/column) or the offending table cell.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: HyperfieldJson = serde_json::from_str(s)
            .map_err(|e| WittError::Structure(format!("invalid hyperfield JSON: {e}")))?;
        Self::from_json(raw)
    }
}
