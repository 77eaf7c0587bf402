//! Finite bounded lattices stored as explicit tables, and the fiber view
//! handed out by forms.

use std::sync::Arc;

use crate::error::{Error, Result};

/// Order, meet and join tables of a finite bounded lattice on `0..size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeTables {
    size: usize,
    leq: Vec<bool>,
    meet: Vec<u32>,
    join: Vec<u32>,
    bottom: usize,
    top: usize,
}

impl LatticeTables {
    /// Builds the tables from a reflexive order relation given as a dense
    /// `size * size` matrix (`leq[a * size + b]` means `a <= b`).
    ///
    /// Fails when the relation is not a partial order or when some pair
    /// lacks a meet or a join.
    pub fn from_order(size: usize, leq: Vec<bool>) -> Result<Self> {
        if size == 0 {
            return Err(Error::validation("a lattice needs at least one element"));
        }
        if leq.len() != size * size {
            return Err(Error::validation("order matrix has the wrong shape"));
        }
        let le = |a: usize, b: usize| leq[a * size + b];
        for a in 0..size {
            if !le(a, a) {
                return Err(Error::validation(format!("order is not reflexive at {a}")));
            }
            for b in 0..size {
                if a != b && le(a, b) && le(b, a) {
                    return Err(Error::validation(format!(
                        "order is not antisymmetric: {a} <= {b} <= {a}"
                    )));
                }
                for c in 0..size {
                    if le(a, b) && le(b, c) && !le(a, c) {
                        return Err(Error::validation(format!(
                            "order is not transitive: {a} <= {b} <= {c}"
                        )));
                    }
                }
            }
        }

        let mut meet = vec![0u32; size * size];
        let mut join = vec![0u32; size * size];
        for a in 0..size {
            for b in a..size {
                let lower: Vec<usize> = (0..size).filter(|&c| le(c, a) && le(c, b)).collect();
                let m = lower
                    .iter()
                    .copied()
                    .find(|&c| lower.iter().all(|&l| le(l, c)))
                    .ok_or_else(|| Error::validation(format!("elements {a} and {b} have no meet")))?;
                let upper: Vec<usize> = (0..size).filter(|&c| le(a, c) && le(b, c)).collect();
                let j = upper
                    .iter()
                    .copied()
                    .find(|&c| upper.iter().all(|&u| le(c, u)))
                    .ok_or_else(|| Error::validation(format!("elements {a} and {b} have no join")))?;
                meet[a * size + b] = m as u32;
                meet[b * size + a] = m as u32;
                join[a * size + b] = j as u32;
                join[b * size + a] = j as u32;
            }
        }
        let bottom = (0..size)
            .find(|&c| (0..size).all(|x| le(c, x)))
            .ok_or_else(|| Error::validation("lattice has no bottom"))?;
        let top = (0..size)
            .find(|&c| (0..size).all(|x| le(x, c)))
            .ok_or_else(|| Error::validation("lattice has no top"))?;
        Ok(Self { size, leq, meet, join, bottom, top })
    }

    /// Assembles tables computed elsewhere. Callers guarantee consistency;
    /// the axiom verifier re-checks the lattice laws.
    pub(crate) fn from_parts(
        size: usize,
        leq: Vec<bool>,
        meet: Vec<u32>,
        join: Vec<u32>,
        bottom: usize,
        top: usize,
    ) -> Self {
        debug_assert_eq!(leq.len(), size * size);
        debug_assert_eq!(meet.len(), size * size);
        debug_assert_eq!(join.len(), size * size);
        Self { size, leq, meet, join, bottom, top }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.size + b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size + b] as usize
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size + b] as usize
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }
}

/// A fiber `Sub(G)` of a form: a bounded lattice, possibly seen upside down.
///
/// Cloning is cheap; the dual view shares the tables of the original.
#[derive(Debug, Clone)]
pub struct Fiber {
    tables: Arc<LatticeTables>,
    reversed: bool,
}

impl PartialEq for Fiber {
    fn eq(&self, other: &Self) -> bool {
        self.reversed == other.reversed
            && (Arc::ptr_eq(&self.tables, &other.tables) || self.tables == other.tables)
    }
}

impl Eq for Fiber {}

impl Fiber {
    pub fn new(tables: Arc<LatticeTables>) -> Self {
        Self { tables, reversed: false }
    }

    /// Order-reversed view: meet and join swap, as do bottom and top.
    pub fn dual(&self) -> Self {
        Self { tables: Arc::clone(&self.tables), reversed: !self.reversed }
    }

    pub fn is_reversed(&self) -> bool {
        self.reversed
    }

    pub fn size(&self) -> usize {
        self.tables.size
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.tables.size
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        if self.reversed {
            self.tables.leq(b, a)
        } else {
            self.tables.leq(a, b)
        }
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        if self.reversed {
            self.tables.join(a, b)
        } else {
            self.tables.meet(a, b)
        }
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        if self.reversed {
            self.tables.meet(a, b)
        } else {
            self.tables.join(a, b)
        }
    }

    pub fn bottom(&self) -> usize {
        if self.reversed {
            self.tables.top
        } else {
            self.tables.bottom
        }
    }

    pub fn top(&self) -> usize {
        if self.reversed {
            self.tables.bottom
        } else {
            self.tables.top
        }
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size()
    }

    /// Elements of the interval `[lo, hi]`, in index order.
    pub fn interval(&self, lo: usize, hi: usize) -> Vec<usize> {
        self.elements().filter(|&z| self.leq(lo, z) && self.leq(z, hi)).collect()
    }

    /// Cover pairs `(a, b)` with `a < b` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if self.lt(a, b) && !self.elements().any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Finds a triple `x <= z` with `(x ∨ y) ∧ z != x ∨ (y ∧ z)`.
    pub fn modularity_witness(&self) -> Option<(usize, usize, usize)> {
        for x in self.elements() {
            for z in self.elements() {
                if !self.leq(x, z) {
                    continue;
                }
                for y in self.elements() {
                    if self.meet(self.join(x, y), z) != self.join(x, self.meet(y, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// Checks the bounded-lattice laws on the tables; returns a description of
    /// the first violation.
    pub fn lattice_law_violation(&self) -> Option<String> {
        let (bot, top) = (self.bottom(), self.top());
        for a in self.elements() {
            if !self.leq(bot, a) || !self.leq(a, top) {
                return Some(format!("{a} lies outside [bottom, top]"));
            }
            if self.meet(a, a) != a || self.join(a, a) != a {
                return Some(format!("{a} is not idempotent"));
            }
            for b in self.elements() {
                let (m, j) = (self.meet(a, b), self.join(a, b));
                if m != self.meet(b, a) || j != self.join(b, a) {
                    return Some(format!("meet/join of {a}, {b} not commutative"));
                }
                if self.meet(a, j) != a || self.join(a, m) != a {
                    return Some(format!("absorption fails for {a}, {b}"));
                }
                if self.leq(a, b) != (m == a) {
                    return Some(format!("order disagrees with meet at {a}, {b}"));
                }
                for c in self.elements() {
                    if self.meet(m, c) != self.meet(a, self.meet(b, c))
                        || self.join(j, c) != self.join(a, self.join(b, c))
                    {
                        return Some(format!("associativity fails at {a}, {b}, {c}"));
                    }
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> LatticeTables {
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for b in a..n {
                leq[a * n + b] = true;
            }
        }
        LatticeTables::from_order(n, leq).unwrap()
    }

    #[test]
    fn chain_tables() {
        let t = chain(4);
        assert_eq!(t.meet(1, 3), 1);
        assert_eq!(t.join(1, 3), 3);
        assert_eq!((t.bottom(), t.top()), (0, 3));
        let f = Fiber::new(Arc::new(t));
        assert!(f.lattice_law_violation().is_none());
        assert!(f.modularity_witness().is_none());
        assert_eq!(f.covers(), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn dual_swaps_structure() {
        let f = Fiber::new(Arc::new(chain(3)));
        let d = f.dual();
        assert_eq!(d.bottom(), 2);
        assert_eq!(d.top(), 0);
        assert!(d.leq(2, 0));
        assert_eq!(d.meet(0, 1), 1);
        assert_eq!(d.dual(), f);
        assert!(d.lattice_law_violation().is_none());
    }

    #[test]
    fn rejects_non_lattice() {
        // two incomparable maximal elements
        let mut leq = vec![false; 9];
        for a in 0..3 {
            leq[a * 3 + a] = true;
        }
        leq[1] = true;
        leq[2] = true;
        assert!(LatticeTables::from_order(3, leq).is_err());
    }
}
