//! Finite modular lattices and the form whose morphisms are modular
//! connections between them.

mod form;
pub mod random;

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Fiber, LatticeTables};

pub use form::{ModularConnection, ModularLatticeForm};

/// Largest lattice accepted by the loader.
pub const MAX_LATTICE_SIZE: usize = 64;

/// On-disk description: `covers` lists pairs `[a, b]` with `a ⋖ b`; `order`
/// may instead list any generating set of pairs `a ≤ b`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub size: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub covers: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub order: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
}

/// A validated finite modular lattice on `0..size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    name: String,
    tables: Arc<LatticeTables>,
    labels: Vec<String>,
}

impl FiniteLattice {
    /// Validates a dense order matrix: partial order, lattice, modular.
    pub fn from_order(name: impl Into<String>, size: usize, leq: Vec<bool>) -> Result<Self> {
        if size > MAX_LATTICE_SIZE {
            return Err(Error::validation(format!("lattice has {size} elements; the limit is {MAX_LATTICE_SIZE}")));
        }
        let tables = Arc::new(LatticeTables::from_order(size, leq)?);
        if let Some((x, y, z)) = Fiber::new(tables.clone()).modularity_witness() {
            return Err(Error::validation(format!(
                "not modular: x={x}, y={y}, z={z} with x <= z but (x v y) ^ z != x v (y ^ z)"
            )));
        }
        Ok(Self { name: name.into(), tables, labels: (0..size).map(|i| i.to_string()).collect() })
    }

    /// Reflexive-transitive closure of the given pairs.
    pub fn from_relation(name: impl Into<String>, size: usize, pairs: &[[usize; 2]]) -> Result<Self> {
        if size > MAX_LATTICE_SIZE {
            return Err(Error::validation(format!("lattice has {size} elements; the limit is {MAX_LATTICE_SIZE}")));
        }
        let mut leq = vec![false; size * size];
        for a in 0..size {
            leq[a * size + a] = true;
        }
        for (k, &[a, b]) in pairs.iter().enumerate() {
            if a >= size || b >= size {
                return Err(Error::validation(format!("pair {k}: [{a}, {b}] is out of range for size {size}")));
            }
            leq[a * size + b] = true;
        }
        for k in 0..size {
            for a in 0..size {
                if leq[a * size + k] {
                    for b in 0..size {
                        if leq[k * size + b] {
                            leq[a * size + b] = true;
                        }
                    }
                }
            }
        }
        Self::from_order(name, size, leq)
    }

    pub fn from_file(file: &LatticeFile) -> Result<Self> {
        let pairs: Vec<[usize; 2]> = file.covers.iter().chain(&file.order).copied().collect();
        let mut lattice = Self::from_relation(file.name.clone().unwrap_or_else(|| format!("L{}", file.size)), file.size, &pairs)?;
        if !file.labels.is_empty() {
            lattice = lattice.with_labels(file.labels.clone())?;
        }
        Ok(lattice)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(&serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Validation(m) => Error::Validation(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn to_file(&self) -> LatticeFile {
        let fiber = self.fiber();
        LatticeFile {
            name: Some(self.name.clone()),
            size: self.size(),
            covers: fiber.covers().into_iter().map(|(a, b)| [a, b]).collect(),
            order: Vec::new(),
            labels: self.labels.clone(),
        }
    }

    /// The lattice of a fiber (which must be modular), labeled by `describe`.
    pub fn from_fiber(name: impl Into<String>, fiber: &Fiber, describe: impl Fn(usize) -> String) -> Result<Self> {
        let n = fiber.size();
        let leq = (0..n * n).map(|k| fiber.leq(k / n, k % n)).collect();
        Self::from_order(name, n, leq)?.with_labels((0..n).map(describe).collect())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size() {
            return Err(Error::validation(format!("{} labels for {} elements", labels.len(), self.size())));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.tables.size()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn tables(&self) -> &Arc<LatticeTables> {
        &self.tables
    }

    pub fn fiber(&self) -> Fiber {
        Fiber::new(self.tables.clone())
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.tables.leq(a, b)
    }

    pub(crate) fn order_matrix(&self) -> Vec<bool> {
        let n = self.size();
        (0..n * n).map(|k| self.tables.leq(k / n, k % n)).collect()
    }

    /// The sublattice `[lo, hi]`, relabeled in index order; also returns the
    /// inclusion as a list of original indices.
    pub fn interval(&self, lo: usize, hi: usize) -> Result<(FiniteLattice, Vec<usize>)> {
        if lo >= self.size() || hi >= self.size() || !self.leq(lo, hi) {
            return Err(Error::domain(format!("[{lo}, {hi}] is not an interval of {}", self.name)));
        }
        let elems = self.fiber().interval(lo, hi);
        let n = elems.len();
        let leq = (0..n * n).map(|k| self.leq(elems[k / n], elems[k % n])).collect();
        let sub = Self::from_order(format!("{}[{},{}]", self.name, self.label(lo), self.label(hi)), n, leq)?
            .with_labels(elems.iter().map(|&e| self.labels[e].clone()).collect())?;
        Ok((sub, elems))
    }

    /// Relabels element `i` as `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.size();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::validation("relabeling is not a permutation"));
        }
        let mut leq = vec![false; n * n];
        let mut labels = vec![String::new(); n];
        for a in 0..n {
            labels[perm[a]] = self.labels[a].clone();
            for b in 0..n {
                leq[perm[a] * n + perm[b]] = self.leq(a, b);
            }
        }
        Self::from_order(self.name.clone(), n, leq)?.with_labels(labels)
    }

    pub fn chain(n: usize) -> Result<Self> {
        let leq = (0..n * n).map(|k| k / n <= k % n).collect();
        Self::from_order(format!("C{n}"), n, leq)
    }

    /// `M_k`: bottom, `k` pairwise incomparable atoms, top.
    pub fn m(k: usize) -> Result<Self> {
        let n = k + 2;
        let top = k + 1;
        let mut pairs = Vec::new();
        for a in 1..=k {
            pairs.push([0, a]);
            pairs.push([a, top]);
        }
        if k == 0 {
            pairs.push([0, 1]);
        }
        Self::from_relation(format!("M{k}"), n, &pairs)
    }

    /// Componentwise order on `A × B`, with `(a, b)` labeled `a + |A| b`.
    pub fn product(a: &Self, b: &Self) -> Result<Self> {
        let (na, nb) = (a.size(), b.size());
        let n = na * nb;
        let leq = (0..n * n)
            .map(|k| {
                let (x, y) = (k / n, k % n);
                a.leq(x % na, y % na) && b.leq(x / na, y / na)
            })
            .collect();
        Self::from_order(format!("{}x{}", a.name, b.name), n, leq)
    }

    /// `A` below `B` with the top of `A` identified with the bottom of `B`.
    pub fn glued(a: &Self, b: &Self) -> Result<Self> {
        let (at, bb) = (a.tables.top(), b.tables.bottom());
        let na = a.size();
        // b's elements other than its bottom get indices na.., its bottom maps to a's top
        let mut map_b = vec![0; b.size()];
        let mut next = na;
        for (x, slot) in map_b.iter_mut().enumerate() {
            if x == bb {
                *slot = at;
            } else {
                *slot = next;
                next += 1;
            }
        }
        let n = next;
        let mut leq = vec![false; n * n];
        for x in 0..na {
            for y in 0..na {
                leq[x * n + y] = a.leq(x, y);
            }
            for y in 0..b.size() {
                leq[x * n + map_b[y]] = true;
            }
        }
        for x in 0..b.size() {
            for y in 0..b.size() {
                if b.leq(x, y) {
                    leq[map_b[x] * n + map_b[y]] = true;
                }
            }
        }
        Self::from_order(format!("{}+{}", a.name, b.name), n, leq)
    }
}
