//! Finite groups given by Cayley tables, their subgroups, homomorphisms and
//! quotients, and the noetherian form of subgroups over them.

mod builtin;
mod form;
pub mod iso;
mod naive;

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use builtin::{
    builtin, builtin_names, cyclic, dihedral, direct_product, klein_four, metacyclic, permutation_group, quaternion8,
    semidirect_by_involution, symmetric, MAX_BUILTIN_ORDER,
};
pub use form::{GroupForm, GroupMorphism, DEFAULT_MAX_ORDER};
pub use naive::NaiveGroupOracle;

/// Set of group elements, stored as a bitset over `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    words: Vec<u64>,
    len: usize,
}

impl ElementSet {
    pub fn empty(n: usize) -> Self {
        Self { words: vec![0; n.div_ceil(64)], len: n }
    }

    pub fn from_elements(n: usize, elements: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(n);
        for e in elements {
            s.insert(e);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.len
    }

    /// Returns `true` if `e` was not yet present.
    pub fn insert(&mut self, e: usize) -> bool {
        assert!(e < self.len, "element {e} outside 0..{}", self.len);
        let (w, b) = (e / 64, e % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn contains(&self, e: usize) -> bool {
        e < self.len && self.words[e / 64] & (1 << (e % 64)) != 0
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&e| self.contains(e))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        Self { words, len: self.len }
    }

    pub fn union(&self, other: &Self) -> Self {
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect();
        Self { words, len: self.len }
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// On-disk group description: `{"name": str, "order": n, "table": [[int; n]; n]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

/// A finite group on the carrier `0..order` with identity `0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

impl FiniteGroup {
    /// Validates a Cayley table and builds the group.
    ///
    /// Checks, in order: shape, entry range, that `0` is a two-sided identity,
    /// the Latin square property, inverses and associativity. The error names
    /// the first violation found.
    pub fn new(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let name = name.into();
        let n = table.len();
        if n == 0 {
            return Err(Error::validation("group table is empty"));
        }
        if let Some((i, row)) = table.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::validation(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        for (i, row) in table.iter().enumerate() {
            if let Some(&v) = row.iter().find(|&&v| v >= n) {
                return Err(Error::validation(format!("row {i} contains {v}, outside 0..{n}")));
            }
        }
        for x in 0..n {
            if table[0][x] != x || table[x][0] != x {
                return Err(Error::validation(format!(
                    "bad identity: 0 is not a two-sided identity at element {x}"
                )));
            }
        }
        for i in 0..n {
            let mut seen = vec![false; n];
            for &v in &table[i] {
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::validation(format!(
                        "not a Latin square: row {i} repeats {v}"
                    )));
                }
            }
            let mut seen = vec![false; n];
            for row in &table {
                let v = row[i];
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::validation(format!(
                        "not a Latin square: column {i} repeats {v}"
                    )));
                }
            }
        }
        let mut inverse = vec![0u32; n];
        for x in 0..n {
            let y = (0..n)
                .find(|&y| table[x][y] == 0 && table[y][x] == 0)
                .ok_or_else(|| Error::validation(format!("element {x} has no inverse")))?;
            inverse[x] = y as u32;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::validation(format!(
                            "not associative: ({a}*{b})*{c} != {a}*({b}*{c})"
                        )));
                    }
                }
            }
        }
        let flat = table.iter().flatten().map(|&v| v as u32).collect();
        Ok(Self { name, order: n, table: flat, inverse })
    }

    /// Builds a group from a multiplication function on `0..n`, validating it.
    pub fn from_fn(name: impl Into<String>, n: usize, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let table = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
        Self::new(name, table)
    }

    pub fn from_file(file: GroupFile) -> Result<Self> {
        if file.order != file.table.len() {
            return Err(Error::validation(format!(
                "declared order {} but the table has {} rows",
                file.order,
                file.table.len()
            )));
        }
        Self::new(file.name, file.table)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Validation(m) => Error::Validation(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn to_file(&self) -> GroupFile {
        GroupFile { name: self.name.clone(), order: self.order, table: self.rows() }
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub(crate) fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn whole(&self) -> ElementSet {
        ElementSet::from_elements(self.order, 0..self.order)
    }

    pub fn trivial(&self) -> ElementSet {
        ElementSet::from_elements(self.order, [0])
    }

    pub fn element_set(&self, elements: &[usize]) -> Result<ElementSet> {
        if let Some(&e) = elements.iter().find(|&&e| e >= self.order) {
            return Err(Error::domain(format!(
                "element {e} is outside the carrier 0..{} of {}",
                self.order, self.name
            )));
        }
        Ok(ElementSet::from_elements(self.order, elements.iter().copied()))
    }

    /// Closure of `start` under right multiplication by `gens`: the subgroup
    /// generated by `start ∪ gens` when `start` contains the identity.
    fn close(&self, mut set: ElementSet, gens: &[usize]) -> ElementSet {
        let mut queue: VecDeque<usize> = set.iter().collect();
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        set
    }

    /// Least subgroup containing `seed`.
    pub fn subgroup_generated(&self, seed: &[usize]) -> Result<ElementSet> {
        let start = self.element_set(seed)?;
        let gens = start.to_vec();
        Ok(self.close(self.trivial().union(&start), &gens))
    }

    /// Subgroup join: the subgroup generated by the union.
    pub fn join(&self, a: &ElementSet, b: &ElementSet) -> ElementSet {
        if a.is_subset(b) {
            return b.clone();
        }
        if b.is_subset(a) {
            return a.clone();
        }
        let gens: Vec<usize> = b.iter().filter(|&e| !a.contains(e)).collect();
        let all_gens: Vec<usize> = a.iter().chain(gens.iter().copied()).collect();
        self.close(a.union(b), &all_gens)
    }

    pub fn is_subgroup(&self, h: &ElementSet) -> bool {
        h.universe() == self.order
            && h.contains(0)
            && h.iter().all(|a| h.contains(self.inv(a)) && h.iter().all(|b| h.contains(self.mul(a, b))))
    }

    /// Every subgroup, ordered by size and then lexicographically by element list.
    ///
    /// Starts from the cyclic subgroups and closes under pairwise joins.
    pub fn all_subgroups(&self) -> Vec<ElementSet> {
        let mut seen: HashSet<ElementSet> = HashSet::new();
        let mut list: Vec<ElementSet> = Vec::new();
        for g in 0..self.order {
            let c = self.close(self.trivial(), &[g]);
            if seen.insert(c.clone()) {
                list.push(c);
            }
        }
        let mut i = 0;
        while i < list.len() {
            for j in 0..i {
                let joined = self.join(&list[i], &list[j]);
                if seen.insert(joined.clone()) {
                    list.push(joined);
                }
            }
            i += 1;
        }
        list.sort_by_cached_key(|s| (s.count(), s.to_vec()));
        list
    }

    pub fn is_normal_subgroup(&self, h: &ElementSet) -> bool {
        (0..self.order).all(|g| h.iter().all(|x| h.contains(self.conjugate(g, x))))
    }

    /// `G/N` with cosets labeled in order of their least representative, and
    /// the canonical surjection.
    pub fn quotient(&self, n: &ElementSet) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_subgroup(n) {
            return Err(Error::domain(format!("{n} is not a subgroup of {}", self.name)));
        }
        if !self.is_normal_subgroup(n) {
            return Err(Error::domain(format!("{n} is not normal in {}", self.name)));
        }
        let mut label = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if label[g] == usize::MAX {
                let k = reps.len();
                reps.push(g);
                for x in n.iter() {
                    label[self.mul(g, x)] = k;
                }
            }
        }
        let q = FiniteGroup::from_fn(format!("{}/{}", self.name, n), reps.len(), |a, b| {
            label[self.mul(reps[a], reps[b])]
        })?;
        Ok((q, label))
    }

    /// The subgroup `h` as a group in its own right (elements relabeled in
    /// increasing order), with the inclusion map.
    pub fn subgroup_as_group(&self, h: &ElementSet) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_subgroup(h) {
            return Err(Error::domain(format!("{h} is not a subgroup of {}", self.name)));
        }
        let elems = h.to_vec();
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let sub = FiniteGroup::from_fn(format!("{}<{}", h, self.name), elems.len(), |a, b| {
            pos[&self.mul(elems[a], elems[b])]
        })?;
        Ok((sub, elems))
    }
}

/// Checks that `map` is a homomorphism `domain → codomain`.
pub fn check_homomorphism(domain: &FiniteGroup, codomain: &FiniteGroup, map: &[usize]) -> Result<()> {
    if map.len() != domain.order() {
        return Err(Error::validation(format!(
            "map has {} entries, domain {} has order {}",
            map.len(),
            domain.name(),
            domain.order()
        )));
    }
    if let Some(&v) = map.iter().find(|&&v| v >= codomain.order()) {
        return Err(Error::validation(format!("map value {v} outside codomain")));
    }
    if map[0] != 0 {
        return Err(Error::validation("map does not send the identity to the identity"));
    }
    for x in 0..domain.order() {
        for y in 0..domain.order() {
            if map[domain.mul(x, y)] != codomain.mul(map[x], map[y]) {
                return Err(Error::validation(format!(
                    "not a homomorphism: f({x}*{y}) != f({x})*f({y})"
                )));
            }
        }
    }
    Ok(())
}
