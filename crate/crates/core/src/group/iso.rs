//! Brute-force isomorphism search and a catalogue of all groups of order at
//! most 16.

use std::collections::{HashMap, VecDeque};
use std::sync::{Mutex, OnceLock};

use super::builtin::{cyclic, dihedral, direct_product, klein_four, metacyclic, permutation_group, quaternion8, semidirect_by_involution, symmetric};
use super::FiniteGroup;

/// Largest order covered by [`catalogue`].
pub const CATALOGUE_MAX_ORDER: usize = 16;

fn order_profile(g: &FiniteGroup) -> Vec<usize> {
    let mut counts = vec![0; g.order() + 1];
    for x in 0..g.order() {
        counts[g.element_order(x)] += 1;
    }
    counts
}

fn center_size(g: &FiniteGroup) -> usize {
    (0..g.order()).filter(|&z| (0..g.order()).all(|x| g.mul(z, x) == g.mul(x, z))).count()
}

/// Greedy generating set: repeatedly adds the element that enlarges the
/// generated subgroup the most.
fn generators(g: &FiniteGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut current = g.trivial();
    while current.count() < g.order() {
        let best = (0..g.order())
            .filter(|&x| !current.contains(x))
            .max_by_key(|&x| {
                let mut seed = gens.clone();
                seed.push(x);
                (g.subgroup_generated(&seed).map(|s| s.count()).unwrap_or(0), std::cmp::Reverse(x))
            })
            .expect("non-full subgroup leaves an element out");
        gens.push(best);
        current = g.subgroup_generated(&gens).expect("valid elements");
    }
    gens
}

/// Extends an assignment of generator images to a map on all of `a` by
/// walking words; `None` if the assignment is inconsistent.
fn extend(a: &FiniteGroup, b: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; a.order()];
    map[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for (&g, &h) in gens.iter().zip(images) {
            let y = a.mul(x, g);
            let fy = b.mul(map[x], h);
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

fn is_isomorphism_map(a: &FiniteGroup, b: &FiniteGroup, map: &[usize]) -> bool {
    let mut hit = vec![false; b.order()];
    for &v in map {
        if v >= b.order() || std::mem::replace(&mut hit[v], true) {
            return false;
        }
    }
    (0..a.order()).all(|x| (0..a.order()).all(|y| map[a.mul(x, y)] == b.mul(map[x], map[y])))
}

/// Searches for an isomorphism `a → b`, returned as an element map.
pub fn find_isomorphism(a: &FiniteGroup, b: &FiniteGroup) -> Option<Vec<usize>> {
    if a.order() != b.order()
        || a.is_abelian() != b.is_abelian()
        || order_profile(a) != order_profile(b)
        || center_size(a) != center_size(b)
    {
        return None;
    }
    let gens = generators(a);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let k = a.element_order(g);
            (0..b.order()).filter(|&h| b.element_order(h) == k).collect()
        })
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    search(a, b, &gens, &candidates, &mut images)
}

fn search(
    a: &FiniteGroup,
    b: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let depth = images.len();
    if depth == gens.len() {
        let map = extend(a, b, gens, images)?;
        return is_isomorphism_map(a, b, &map).then_some(map);
    }
    for &h in &candidates[depth] {
        images.push(h);
        // prune: the partial assignment must already extend consistently
        if extend(a, b, &gens[..=depth], images).is_some() {
            if let Some(map) = search(a, b, gens, candidates, images) {
                return Some(map);
            }
        }
        images.pop();
    }
    None
}

pub fn are_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    find_isomorphism(a, b).is_some()
}

/// One representative of every isomorphism class of groups of order ≤ 16
/// (42 classes), with conventional names.
pub fn catalogue() -> &'static [FiniteGroup] {
    static CATALOGUE: OnceLock<Vec<FiniteGroup>> = OnceLock::new();
    CATALOGUE.get_or_init(|| build_catalogue().expect("catalogue groups are valid"))
}

fn build_catalogue() -> crate::error::Result<Vec<FiniteGroup>> {
    let z = cyclic;
    let prod = |name: &str, parts: &[usize]| -> crate::error::Result<FiniteGroup> {
        let mut g = z(parts[0])?;
        for &p in &parts[1..] {
            g = direct_product(&g, &z(p)?)?;
        }
        Ok(g.renamed(name))
    };
    let mut out = Vec::new();
    for n in 1..=16 {
        out.push(z(n)?);
    }
    out.push(klein_four()?);
    out.push(symmetric(3)?);
    out.push(prod("Z4xZ2", &[4, 2])?);
    out.push(prod("Z2xZ2xZ2", &[2, 2, 2])?);
    out.push(dihedral(8)?);
    out.push(quaternion8()?);
    out.push(prod("Z3xZ3", &[3, 3])?);
    out.push(dihedral(10)?);
    out.push(prod("Z6xZ2", &[6, 2])?);
    let even: Vec<Vec<usize>> = permutations(4).into_iter().filter(|p| is_even(p)).collect();
    out.push(permutation_group("A4", even)?);
    out.push(dihedral(12)?);
    out.push(metacyclic("Dic12", 6, 2, 3, 5)?);
    out.push(dihedral(14)?);
    out.push(prod("Z8xZ2", &[8, 2])?);
    out.push(prod("Z4xZ4", &[4, 4])?);
    out.push(prod("Z4xZ2xZ2", &[4, 2, 2])?);
    out.push(prod("Z2xZ2xZ2xZ2", &[2, 2, 2, 2])?);
    out.push(dihedral(16)?);
    out.push(metacyclic("Q16", 8, 2, 4, 7)?);
    out.push(metacyclic("SD16", 8, 2, 0, 3)?);
    out.push(metacyclic("M16", 8, 2, 0, 5)?);
    out.push(metacyclic("Z4:Z4", 4, 4, 0, 3)?);
    out.push(direct_product(&z(2)?, &dihedral(8)?)?.renamed("Z2xD8"));
    out.push(direct_product(&z(2)?, &quaternion8()?)?.renamed("Z2xQ8"));
    // N = Z4 x Z2 labeled x + 4y
    let n = prod("Z4xZ2", &[4, 2])?;
    let pauli: Vec<usize> = (0..8).map(|e| {
        let (x, y) = (e % 4, e / 4);
        (x + 2 * y) % 4 + 4 * y
    }).collect();
    out.push(semidirect_by_involution("Pauli", &n, &pauli)?);
    let g16_3: Vec<usize> = (0..8).map(|e| {
        let (x, y) = (e % 4, e / 4);
        x + 4 * ((y + x) % 2)
    }).collect();
    out.push(semidirect_by_involution("(Z4xZ2):Z2", &n, &g16_3)?);
    Ok(out)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

fn is_even(p: &[usize]) -> bool {
    let inversions = (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
    inversions % 2 == 0
}

type IdentifyCache = Mutex<HashMap<Vec<Vec<usize>>, Option<String>>>;

/// Catalogue name of the isomorphism class of `g`, if its order is covered.
/// Results are memoized by Cayley table.
pub fn identify(g: &FiniteGroup) -> Option<String> {
    static CACHE: OnceLock<IdentifyCache> = OnceLock::new();
    if g.order() > CATALOGUE_MAX_ORDER {
        return None;
    }
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = g.rows();
    if let Some(hit) = cache.lock().expect("identify cache poisoned").get(&key) {
        return hit.clone();
    }
    let found = catalogue()
        .iter()
        .find(|c| are_isomorphic(g, c))
        .map(|c| c.name().to_string());
    cache.lock().expect("identify cache poisoned").insert(key, found.clone());
    found
}
