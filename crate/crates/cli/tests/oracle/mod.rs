//! Element-level reference computations for finite groups, written without
//! the library's lattice machinery. Subsets are bitmasks over element indices.

#![allow(dead_code)]

use std::collections::VecDeque;

use noether::group::FiniteGroup;

pub type Set = u64;

/// A Cayley table with identity 0.
#[derive(Clone, Debug)]
pub struct Table(pub Vec<Vec<usize>>);

impl Table {
    pub fn of(g: &FiniteGroup) -> Self {
        let n = g.order();
        assert!(n <= 64, "oracle handles groups of order at most 64");
        Table((0..n).map(|a| (0..n).map(|b| g.mul(a, b)).collect()).collect())
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.0[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.0[a][b] == 0).expect("inverse exists")
    }

    pub fn element_order(&self, a: usize) -> usize {
        let (mut x, mut k) = (a, 1);
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn whole(&self) -> Set {
        if self.order() == 64 { u64::MAX } else { (1u64 << self.order()) - 1 }
    }

    /// Smallest subset containing `seed` and the identity that is closed
    /// under products.
    pub fn closure(&self, seed: Set) -> Set {
        let mut set = seed | 1;
        loop {
            let mut next = set;
            for a in members(set) {
                for b in members(set) {
                    next |= 1 << self.mul(a, b);
                }
            }
            if next == set {
                return set;
            }
            set = next;
        }
    }

    pub fn join(&self, a: Set, b: Set) -> Set {
        self.closure(a | b)
    }

    /// Every subgroup: cyclic ones first, then joins until nothing new appears.
    pub fn subgroups(&self) -> Vec<Set> {
        let mut subs: Vec<Set> = (0..self.order()).map(|a| self.closure(1 << a)).collect();
        subs.sort_unstable();
        subs.dedup();
        loop {
            let mut added = false;
            for i in 0..subs.len() {
                for j in i + 1..subs.len() {
                    let k = self.join(subs[i], subs[j]);
                    if !subs.contains(&k) {
                        subs.push(k);
                        added = true;
                    }
                }
            }
            if !added {
                subs.sort_unstable();
                return subs;
            }
        }
    }

    /// `n` is normal in the subgroup `h`: closed under conjugation by `h`.
    pub fn normal_in(&self, n: Set, h: Set) -> bool {
        n & !h == 0
            && members(h).all(|g| {
                let gi = self.inv(g);
                members(n).all(|x| n >> self.mul(self.mul(g, x), gi) & 1 == 1)
            })
    }

    /// `z` projected into `[lo, hi]`: `(z ∧ hi) ∨ lo`.
    pub fn project(&self, z: Set, lo: Set, hi: Set) -> Set {
        self.join(z & hi, lo)
    }

    pub fn project_interval(&self, y: (Set, Set), x: (Set, Set)) -> (Set, Set) {
        (self.project(y.0, x.0, x.1), self.project(y.1, x.0, x.1))
    }

    /// Left cosets `aN` for `a` in `h`, in order of first representative.
    pub fn cosets(&self, n: Set, h: Set) -> Vec<Set> {
        let mut out: Vec<Set> = Vec::new();
        for a in members(h) {
            let c = members(n).fold(0, |acc, x| acc | 1 << self.mul(a, x));
            if !out.contains(&c) {
                out.push(c);
            }
        }
        out
    }

    /// The quotient `h/n` built from cosets, identity coset first.
    pub fn quotient(&self, n: Set, h: Set) -> Table {
        let cosets = self.cosets(n, h);
        let rep: Vec<usize> = cosets.iter().map(|&c| c.trailing_zeros() as usize).collect();
        let index = |e: usize| cosets.iter().position(|&c| c >> e & 1 == 1).expect("element in some coset");
        Table(
            rep.iter()
                .map(|&a| rep.iter().map(|&b| index(self.mul(a, b))).collect())
                .collect(),
        )
    }

    pub fn is_hom_to(&self, other: &Table, map: &[usize]) -> bool {
        map.len() == self.order()
            && (0..self.order()).all(|a| (0..self.order()).all(|b| map[self.mul(a, b)] == other.mul(map[a], map[b])))
    }
}

pub fn members(s: Set) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| s >> i & 1 == 1)
}

pub fn to_set(elements: &[usize]) -> Set {
    elements.iter().fold(0, |acc, &e| acc | 1 << e)
}

pub fn is_bijection(map: &[usize], size: usize) -> bool {
    let mut seen = vec![false; size];
    map.len() == size && map.iter().all(|&v| v < size && !std::mem::replace(&mut seen[v], true))
}

/// A generating set picked greedily.
fn generators(t: &Table) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span: Set = 1;
    for a in 1..t.order() {
        if span >> a & 1 == 0 {
            gens.push(a);
            span = t.closure(span | 1 << a);
        }
    }
    gens
}

/// Extends generator images to a map by walking right multiplications; `None`
/// if the assignment is inconsistent.
fn extend(a: &Table, b: &Table, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; a.order()];
    map[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for (&g, &img) in gens.iter().zip(images) {
            let (y, fy) = (a.mul(x, g), b.mul(map[x], img));
            if map[y] == usize::MAX {
                map[y] = fy;
                queue.push_back(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    Some(map)
}

/// Brute-force isomorphism search over images of a generating set.
pub fn find_isomorphism(a: &Table, b: &Table) -> Option<Vec<usize>> {
    if a.order() != b.order() {
        return None;
    }
    let mut ords_a: Vec<usize> = (0..a.order()).map(|x| a.element_order(x)).collect();
    let mut ords_b: Vec<usize> = (0..b.order()).map(|x| b.element_order(x)).collect();
    let gens = generators(a);
    let gen_orders: Vec<usize> = gens.iter().map(|&g| ords_a[g]).collect();
    ords_a.sort_unstable();
    let by_order = ords_b.clone();
    ords_b.sort_unstable();
    if ords_a != ords_b {
        return None;
    }
    let mut images = Vec::with_capacity(gens.len());
    fn search(
        a: &Table,
        b: &Table,
        gens: &[usize],
        gen_orders: &[usize],
        by_order: &[usize],
        images: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        if images.len() == gens.len() {
            return extend(a, b, gens, images).filter(|m| is_bijection(m, b.order()));
        }
        let want = gen_orders[images.len()];
        for c in (0..b.order()).filter(|&c| by_order[c] == want) {
            images.push(c);
            if let Some(m) = search(a, b, gens, gen_orders, by_order, images) {
                return Some(m);
            }
            images.pop();
        }
        None
    }
    search(a, b, &gens, &gen_orders, &by_order, &mut images)
}

pub fn isomorphic(a: &Table, b: &Table) -> bool {
    find_isomorphism(a, b).is_some()
}
