//! Goldie dimension, structurally and by exhaustive search.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::module::FpModule;
use crate::oracle::{FiniteModule, Set};

/// Sum over the invariant factors of the number of minimal primes over each;
/// a free summand over a domain counts once.
pub fn goldie_structural(m: &FpModule) -> Result<usize> {
    let ring = m.ring();
    ring.require_bezout()?;
    let mut g = 0;
    for d in m.factors() {
        g += if ring.is_free_ideal(d) { 1 } else { ring.minimal_primes(d)?.len() };
    }
    Ok(g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoldieReport {
    pub dimension: usize,
    /// Generators of independent simple submodules with essential sum.
    pub witness: Vec<usize>,
}

/// Distinct simple submodules of `N`, each with its least generator.
fn simple_submodules(m: &FiniteModule, n: &Set) -> Vec<(usize, Set)> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for x in n.ones().filter(|&x| x != m.zero()) {
        let rx = m.cyclic(x);
        let size = rx.count_ones(..);
        if rx.ones().all(|y| y == m.zero() || m.cyclic(y).count_ones(..) == size) && seen.insert(rx.clone()) {
            out.push((x, rx));
        }
    }
    out
}

fn prime_power(q: usize) -> (usize, u32) {
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap_or(q);
    let (mut r, mut f) = (q, 0);
    while r % p == 0 && r > 1 {
        r /= p;
        f += 1;
    }
    (p, f)
}

struct Search<'a> {
    m: &'a FiniteModule,
    simples: &'a [(usize, Set)],
    /// `(p, f)` with `p^f` the least simple size that is a power of `p`.
    shapes: Vec<(usize, u32)>,
    socle: usize,
    best: Vec<usize>,
}

impl Search<'_> {
    /// Room left in the socle, counted in simples of the smallest size per prime.
    fn bound(&self, sum: &Set) -> usize {
        let room = self.socle / sum.count_ones(..);
        self.shapes
            .iter()
            .map(|&(p, f)| {
                let (mut r, mut v) = (room, 0);
                while r % p == 0 {
                    r /= p;
                    v += 1;
                }
                (v / f) as usize
            })
            .sum()
    }

    fn run(&mut self, from: usize, sum: &Set, chosen: &mut Vec<usize>) {
        if chosen.len() > self.best.len() {
            self.best = chosen.clone();
        }
        if chosen.len() + self.bound(sum) <= self.best.len() {
            return;
        }
        for i in from..self.simples.len() {
            let (x, s) = &self.simples[i];
            if s.intersection(sum).count() > 1 {
                continue;
            }
            chosen.push(*x);
            let next = self.m.sum(sum, s);
            self.run(i + 1, &next, chosen);
            chosen.pop();
        }
    }
}

/// Largest independent family of nonzero cyclic submodules of `N`.
///
/// Every nonzero cyclic submodule of a finite module contains a simple one,
/// so the search runs over families of simple submodules.
pub fn goldie_bruteforce(m: &FiniteModule, n: &Set) -> Result<GoldieReport> {
    let total = n.count_ones(..);
    if total > crate::oracle::module::ELEMENT_CAP {
        return Err(Error::TooLarge { what: "goldie search", size: total, cap: crate::oracle::module::ELEMENT_CAP });
    }
    let simples = simple_submodules(m, n);
    if simples.is_empty() {
        return Ok(GoldieReport { dimension: 0, witness: Vec::new() });
    }
    let mut shapes: Vec<(usize, u32)> = Vec::new();
    for (_, t) in &simples {
        let (p, f) = prime_power(t.count_ones(..));
        match shapes.iter_mut().find(|s| s.0 == p) {
            Some(s) => s.1 = s.1.min(f),
            None => shapes.push((p, f)),
        }
    }
    let socle = simples.iter().fold(m.zero_set(), |acc, (_, t)| m.sum(&acc, t)).count_ones(..);
    let mut search = Search { m, simples: &simples, shapes, socle, best: Vec::new() };
    let mut greedy = Vec::new();
    let mut sum = m.zero_set();
    for (x, s) in &simples {
        if s.intersection(&sum).count() == 1 {
            greedy.push(*x);
            sum = m.sum(&sum, s);
        }
    }
    search.best = greedy;
    search.run(0, &m.zero_set(), &mut Vec::new());
    let witness = search.best;
    let span = m.span(&witness);
    if !is_essential(m, n, &span) {
        return Err(Error::Invariant("maximal independent family is not essential".into()));
    }
    Ok(GoldieReport { dimension: witness.len(), witness })
}

/// Every two nonzero cyclic submodules of `N` meet nontrivially.
pub fn is_uniform(m: &FiniteModule, n: &Set) -> bool {
    let mut seen = HashSet::new();
    let cyclics: Vec<Set> = n
        .ones()
        .filter(|&x| x != m.zero())
        .map(|x| m.cyclic(x))
        .filter(|c| seen.insert(c.clone()))
        .collect();
    if cyclics.is_empty() {
        return false;
    }
    cyclics.iter().enumerate().all(|(i, a)| cyclics[i + 1..].iter().all(|b| a.intersection(b).count() > 1))
}

/// `F` is essential in `E`: `Rx ∩ F ≠ 0` for every nonzero `x ∈ E`.
pub fn is_essential(m: &FiniteModule, e: &Set, f: &Set) -> bool {
    e.ones().filter(|&x| x != m.zero()).all(|x| m.cyclic(x).intersection(f).count() > 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::FiniteRing;
    use crate::ring::{Elem, Ring};

    fn both(n: u64, ideals: &[i128]) -> (FpModule, FiniteModule) {
        let fr = FiniteRing::from_ring(&Ring::zmod(n).unwrap()).unwrap();
        let ideals: Vec<Elem> = ideals.iter().map(|&v| Elem::Int(v)).collect();
        let m = FpModule::from_factors(fr.ring(), &ideals).unwrap();
        let f = FiniteModule::from_fp(&m, &fr).unwrap();
        (m, f)
    }

    #[test]
    fn z12_examples() {
        let (m, f) = both(12, &[0]);
        assert_eq!(goldie_structural(&m).unwrap(), 2);
        let rep = goldie_bruteforce(&f, &f.full()).unwrap();
        assert_eq!(rep.dimension, 2);
        let (m, f) = both(12, &[0, 2]);
        assert_eq!(goldie_structural(&m).unwrap(), 3);
        assert_eq!(goldie_bruteforce(&f, &f.full()).unwrap().dimension, 3);
        let (m, _) = both(12, &[4]);
        assert_eq!(goldie_structural(&m).unwrap(), 1);
        let (m, f) = both(12, &[]);
        assert_eq!(goldie_structural(&m).unwrap(), 0);
        assert_eq!(goldie_bruteforce(&f, &f.full()).unwrap().dimension, 0);
    }

    #[test]
    fn uniform_and_essential_in_z4() {
        let (_, f) = both(4, &[0]);
        assert!(is_uniform(&f, &f.full()));
        let socle = f.cyclic(f.index_of(&[Elem::Int(2)]).unwrap());
        assert!(is_essential(&f, &f.full(), &socle));
        assert!(!is_essential(&f, &f.full(), &f.zero_set()));
        let (_, g) = both(4, &[2, 2]);
        assert!(!is_uniform(&g, &g.full()));
    }

    #[test]
    fn integers_free_summand_counts_once() {
        let z = Ring::integers();
        let m = FpModule::from_factors(&z, &[Elem::Int(6), Elem::Int(0)]).unwrap();
        assert_eq!(goldie_structural(&m).unwrap(), 3);
    }
}
