//! Seeded random modular lattices: ordinal stacks of chains, products of two
//! chains and `M_k` blocks, randomly relabeled.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;

use super::FiniteLattice;

fn block<R: Rng>(rng: &mut R) -> Result<FiniteLattice> {
    match rng.gen_range(0..3) {
        0 => FiniteLattice::chain(rng.gen_range(2..=4)),
        1 => FiniteLattice::product(&FiniteLattice::chain(rng.gen_range(2..=3))?, &FiniteLattice::chain(rng.gen_range(2..=3))?),
        _ => FiniteLattice::m(rng.gen_range(2..=4)),
    }
}

/// A random modular lattice with at most `max_size` elements (at least 2).
pub fn random_modular_lattice<R: Rng>(rng: &mut R, max_size: usize) -> Result<FiniteLattice> {
    let max_size = max_size.max(2);
    let mut lattice = FiniteLattice::chain(2)?;
    for _ in 0..8 {
        let next = block(rng)?;
        if lattice.size() + next.size() - 1 > max_size {
            continue;
        }
        lattice = if lattice.size() == 2 && rng.gen_bool(0.5) {
            next
        } else {
            FiniteLattice::glued(&lattice, &next)?
        };
    }
    let mut perm: Vec<usize> = (0..lattice.size()).collect();
    perm.shuffle(rng);
    let n = lattice.size();
    Ok(lattice.permuted(&perm)?.renamed(format!("R{n}")))
}
