//! Built-in group families addressed as `builtin:<name>`.

use crate::error::{Error, Result};

use super::FiniteGroup;

/// Largest order accepted for the cyclic and dihedral families.
pub const MAX_BUILTIN_ORDER: usize = 64;

/// The metacyclic group `⟨a, b | a^m = 1, b^k = a^t, b a b⁻¹ = a^r⟩` on the
/// normal forms `a^i b^j`, labeled `i + m j`.
pub fn metacyclic(name: &str, m: usize, k: usize, t: usize, r: usize) -> Result<FiniteGroup> {
    if m == 0 || k == 0 {
        return Err(Error::validation("metacyclic parameters must be positive"));
    }
    let pow_r: Vec<usize> = (0..k)
        .scan(1 % m, |acc, _| {
            let cur = *acc;
            *acc = *acc * r % m;
            Some(cur)
        })
        .collect();
    FiniteGroup::from_fn(name, m * k, |x, y| {
        let (i, j) = (x % m, x / m);
        let (p, q) = (y % m, y / m);
        let mut a = i + p * pow_r[j];
        let mut b = j + q;
        if b >= k {
            b -= k;
            a += t;
        }
        a % m + m * b
    })
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::validation("cyclic group of order 0"));
    }
    FiniteGroup::from_fn(format!("Z{n}"), n, |a, b| (a + b) % n)
}

/// Dihedral group of the given order (`2k`): rotations `r^i` are `0..k`,
/// reflections `r^i s` are `k..2k`.
pub fn dihedral(order: usize) -> Result<FiniteGroup> {
    if order < 2 || !order.is_multiple_of(2) {
        return Err(Error::validation(format!("dihedral group needs an even order, got {order}")));
    }
    let k = order / 2;
    metacyclic(&format!("D{order}"), k, 2, 0, k - 1)
}

pub fn quaternion8() -> Result<FiniteGroup> {
    metacyclic("Q8", 4, 2, 2, 3)
}

pub fn klein_four() -> Result<FiniteGroup> {
    Ok(direct_product(&cyclic(2)?, &cyclic(2)?)?.renamed("V4"))
}

/// Symmetric group on `n` points; permutations listed lexicographically,
/// product `(pq)(i) = p(q(i))`.
pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    let mut perms = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        perms.push(cur.clone());
        if !next_permutation(&mut cur) {
            break;
        }
    }
    permutation_group(&format!("S{n}"), perms)
}

/// Group of the given permutations (closed under composition), labeled in the
/// order given; the identity must come first.
pub fn permutation_group(name: &str, perms: Vec<Vec<usize>>) -> Result<FiniteGroup> {
    let index: std::collections::HashMap<Vec<usize>, usize> =
        perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut table = vec![vec![0; perms.len()]; perms.len()];
    for (a, p) in perms.iter().enumerate() {
        for (b, q) in perms.iter().enumerate() {
            let pq: Vec<usize> = q.iter().map(|&i| p[i]).collect();
            table[a][b] = *index
                .get(&pq)
                .ok_or_else(|| Error::validation(format!("{name}: permutations not closed")))?;
        }
    }
    FiniteGroup::new(name, table)
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// `A × B` with `(a, b)` labeled `a + |A| b`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    let na = a.order();
    FiniteGroup::from_fn(format!("{}x{}", a.name(), b.name()), na * b.order(), |x, y| {
        a.mul(x % na, y % na) + na * b.mul(x / na, y / na)
    })
}

/// `N ⋊ Z2` where the generator of `Z2` acts on `N` by the involutive
/// automorphism `phi`; `(n, s)` is labeled `n + |N| s`.
pub fn semidirect_by_involution(name: &str, base: &FiniteGroup, phi: &[usize]) -> Result<FiniteGroup> {
    let n = base.order();
    FiniteGroup::from_fn(name, 2 * n, |x, y| {
        let (n1, s1) = (x % n, x / n);
        let (n2, s2) = (y % n, y / n);
        let acted = if s1 == 1 { phi[n2] } else { n2 };
        base.mul(n1, acted) + n * ((s1 + s2) % 2)
    })
}

/// Resolves a built-in name: `Z<n>` (n ≤ 64), `D<order>` (even order ≤ 64),
/// `S<n>` (n ≤ 4), `Q8`, `V4` (also `K4`, `Klein4`), and products written
/// `AxB` of these, e.g. `Z2xZ4`.
pub fn builtin(name: &str) -> Result<FiniteGroup> {
    let name = name.strip_prefix("builtin:").unwrap_or(name);
    if name.contains('x') {
        let mut parts = name.split('x');
        let first = builtin(parts.next().unwrap_or_default())?;
        return parts.try_fold(first, |acc, p| direct_product(&acc, &builtin(p)?));
    }
    let unknown = || Error::validation(format!("unknown built-in group '{name}'"));
    let num = |s: &str| s.parse::<usize>().map_err(|_| unknown());
    match name {
        "Q8" => quaternion8(),
        "V4" | "K4" | "Klein4" => klein_four(),
        _ if name.starts_with('Z') => {
            let n = num(&name[1..])?;
            if !(1..=MAX_BUILTIN_ORDER).contains(&n) {
                return Err(Error::validation(format!("Z{n}: order must be in 1..=64")));
            }
            cyclic(n)
        }
        _ if name.starts_with('D') => {
            let n = num(&name[1..])?;
            if n > MAX_BUILTIN_ORDER {
                return Err(Error::validation(format!("D{n}: order must be at most 64")));
            }
            dihedral(n)
        }
        _ if name.starts_with('S') => {
            let n = num(&name[1..])?;
            if !(1..=4).contains(&n) {
                return Err(Error::validation(format!("S{n}: only S1..S4 are built in")));
            }
            symmetric(n)
        }
        _ => Err(unknown()),
    }
}

/// Names of the built-in groups of order at most `max_order` (cyclic,
/// dihedral, symmetric, Q8, V4), in a fixed order.
pub fn builtin_names(max_order: usize) -> Vec<String> {
    let mut names = Vec::new();
    for n in 1..=max_order.min(MAX_BUILTIN_ORDER) {
        names.push(format!("Z{n}"));
    }
    for n in (2..=max_order.min(MAX_BUILTIN_ORDER)).step_by(2) {
        names.push(format!("D{n}"));
    }
    for (n, order) in [(1, 1), (2, 2), (3, 6), (4, 24)] {
        if order <= max_order {
            names.push(format!("S{n}"));
        }
    }
    if max_order >= 8 {
        names.push("Q8".into());
    }
    if max_order >= 4 {
        names.push("V4".into());
    }
    names
}
