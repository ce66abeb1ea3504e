use std::collections::HashSet;

use super::hom::HomSearch;
use super::module::{FiniteModule, Set};
use crate::error::{Error, Result};
use crate::par;

/// Largest module whose full submodule lattice is enumerated.
pub const LATTICE_CAP: usize = 4096;
/// Largest number of submodules returned.
pub const SUBMODULE_COUNT_CAP: usize = 1 << 20;

/// Every submodule of `within`, in breadth-first order from `{0}`.
pub fn enumerate_submodules(m: &FiniteModule, within: &Set) -> Result<Vec<Set>> {
    enumerate_submodules_capped(m, within, SUBMODULE_COUNT_CAP)
}

/// As [`enumerate_submodules`], failing once more than `cap` are found.
pub fn enumerate_submodules_capped(m: &FiniteModule, within: &Set, cap: usize) -> Result<Vec<Set>> {
    let size = within.count_ones(..);
    if size > LATTICE_CAP {
        return Err(Error::TooLarge { what: "submodule lattice", size, cap: LATTICE_CAP });
    }
    let mut seen: HashSet<Set> = HashSet::new();
    let zero = m.zero_set();
    seen.insert(zero.clone());
    let mut all = vec![zero.clone()];
    let mut layer = vec![zero];
    while !layer.is_empty() {
        let grown: Vec<Vec<Set>> = par::map(&layer, |s| {
            m.coset_reps(within, s).into_iter().filter(|&x| !s.contains(x)).map(|x| m.extend(s, x)).collect()
        });
        let mut next = Vec::new();
        for t in grown.into_iter().flatten() {
            if seen.insert(t.clone()) {
                next.push(t);
            }
        }
        all.extend(next.iter().cloned());
        if all.len() > cap {
            return Err(Error::TooLarge { what: "submodule count", size: all.len(), cap });
        }
        layer = next;
    }
    Ok(all)
}

fn is_idempotent(phi: &[u32], domain: &Set) -> bool {
    domain.ones().all(|x| phi[phi[x] as usize] == phi[x])
}

/// Whether a nonzero `N` has only the trivial idempotent endomorphisms.
pub fn is_indecomposable(m: &FiniteModule, n: &Set) -> Result<bool> {
    if m.is_zero_set(n) {
        return Err(Error::ZeroModule);
    }
    let ring = m.ring().clone();
    for e in ring.primitive_idempotents() {
        let en = m.scale_set(e, n);
        if !m.is_zero_set(&en) && en != *n {
            return Ok(false);
        }
    }
    let zero = m.zero() as u32;
    let split = HomSearch::new(m, n, m, n).find(|phi| {
        is_idempotent(phi, n) && n.ones().any(|x| phi[x] != zero) && n.ones().any(|x| phi[x] as usize != x)
    });
    Ok(split.is_none())
}

/// Lower bound `max over maximal m of dim_{R/m} N/mN` on the number of generators.
fn residue_dims(m: &FiniteModule, n: &Set) -> Vec<(Set, usize)> {
    let ring = m.ring();
    let lat = ring.lattice();
    lat.maximal
        .iter()
        .map(|&i| {
            let ideal = &lat.ideals[i];
            let mn = ideal.ones().fold(m.zero_set(), |acc, r| m.sum(&acc, &m.scale_set(r, n)));
            let field = ring.len() / ideal.count_ones(..);
            (mn, field)
        })
        .collect()
}

fn log_ceil(base: usize, x: usize) -> usize {
    let mut k = 0;
    let mut p = 1usize;
    while p < x {
        p = p.saturating_mul(base);
        k += 1;
    }
    k
}

/// Least `k` such that some `k` elements generate `N`, by exhaustive search.
pub fn mu_bruteforce(m: &FiniteModule, n: &Set) -> usize {
    let total = n.count_ones(..);
    if total == 1 {
        return 0;
    }
    let dims = residue_dims(m, n);
    let lower = dims.iter().map(|(mn, f)| log_ceil(*f, total / mn.count_ones(..))).max().unwrap_or(1).max(1);
    (lower..).find(|&k| generates_in(m, n, &dims, &m.zero_set(), k)).expect("a finite module is finitely generated")
}

fn generates_in(m: &FiniteModule, n: &Set, dims: &[(Set, usize)], s: &Set, k: usize) -> bool {
    let size = s.count_ones(..);
    let total = n.count_ones(..);
    if size == total {
        return true;
    }
    if k == 0 {
        return false;
    }
    for (mn, f) in dims {
        let rest = total / m.sum(s, mn).count_ones(..);
        if rest > f.saturating_pow(k as u32) {
            return false;
        }
    }
    let reps: Vec<usize> = m.coset_reps(n, s).into_iter().filter(|&x| !s.contains(x)).collect();
    let mut tried: HashSet<Set> = HashSet::new();
    let next: Vec<Set> = reps.iter().map(|&x| m.extend(s, x)).filter(|t| tried.insert(t.clone())).collect();
    if size == 1 {
        return par::find_first(next.len(), |i| generates_in(m, n, dims, &next[i], k - 1)).is_some();
    }
    next.iter().any(|t| generates_in(m, n, dims, t, k - 1))
}
