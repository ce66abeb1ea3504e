use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{Elem, Ring};

pub const FINITE_RING_CAP: usize = 1024;

/// A finite ring with every operation tabulated, indexed `0..len`.
pub struct FiniteRing {
    ring: Ring,
    elems: Vec<Elem>,
    index: HashMap<Elem, usize>,
    n: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    zero: usize,
    one: usize,
    unit: Vec<bool>,
    principal: Vec<FixedBitSet>,
    lattice: OnceLock<Lattice>,
}

/// All ideals of a finite ring.
pub struct Lattice {
    pub ideals: Vec<FixedBitSet>,
    pub maximal: Vec<usize>,
    by_set: HashMap<FixedBitSet, usize>,
}

impl Lattice {
    pub fn id(&self, set: &FixedBitSet) -> Option<usize> {
        self.by_set.get(set).copied()
    }
}

/// One local factor `eR` of a finite ring.
#[derive(Clone, Debug, Serialize)]
pub struct LocalFactor {
    pub idempotent: Elem,
    pub size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalDiagnostics {
    pub idempotent: Elem,
    pub size: usize,
    pub minimal_primes: usize,
    pub minimal_prime_uniserial: bool,
    pub chain_ring: bool,
    pub maximal_ideals: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PcsDiagnostics {
    pub factors: Vec<LocalDiagnostics>,
    pub arithmetic: bool,
    pub is_pcs_candidate: bool,
}

impl FiniteRing {
    pub fn from_ring(ring: &Ring) -> Result<Arc<FiniteRing>> {
        let size = ring.size().ok_or(Error::NotFinite)?;
        if size > FINITE_RING_CAP as u128 {
            return Err(Error::TooLarge { what: "finite ring", size: size as usize, cap: FINITE_RING_CAP });
        }
        let elems = ring.elements().ok_or(Error::NotFinite)?;
        let n = elems.len();
        let index: HashMap<Elem, usize> = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for a in &elems {
            for b in &elems {
                add.push(index[&ring.add(a, b)] as u16);
                mul.push(index[&ring.mul(a, b)] as u16);
            }
        }
        let neg = elems.iter().map(|a| index[&ring.neg(a)] as u16).collect();
        let zero = index[&ring.zero()];
        let one = index[&ring.one()];
        let unit = (0..n).map(|x| (0..n).any(|y| mul[x * n + y] as usize == one)).collect();
        let principal = (0..n)
            .map(|x| {
                let mut s = FixedBitSet::with_capacity(n);
                for r in 0..n {
                    s.insert(mul[r * n + x] as usize);
                }
                s
            })
            .collect();
        Ok(Arc::new(FiniteRing {
            ring: ring.clone(),
            elems,
            index,
            n,
            add,
            mul,
            neg,
            zero,
            one,
            unit,
            principal,
            lattice: OnceLock::new(),
        }))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn elem(&self, i: usize) -> &Elem {
        &self.elems[i]
    }

    pub fn index_of(&self, e: &Elem) -> usize {
        self.index[&self.ring.canonical(e)]
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.unit[a]
    }

    /// `Ra` as a set of element indices.
    pub fn principal(&self, a: usize) -> &FixedBitSet {
        &self.principal[a]
    }

    /// The set of an ideal given by a generator of the underlying ring.
    pub fn ideal_set(&self, gen: &Elem) -> FixedBitSet {
        self.principal[self.index_of(gen)].clone()
    }

    /// Normalized generator of an ideal given as a set, when principal.
    pub fn ideal_elem(&self, set: &FixedBitSet) -> Option<Elem> {
        (0..self.n).find(|&a| self.principal[a] == *set).map(|a| self.ring.ideal_gen(&self.elems[a]))
    }

    pub fn sum_sets(&self, a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.n);
        for x in a.ones() {
            for y in b.ones() {
                s.insert(self.add(x, y));
            }
        }
        s
    }

    pub fn lattice(&self) -> &Lattice {
        self.lattice.get_or_init(|| {
            let mut ideals: Vec<FixedBitSet> = Vec::new();
            let mut by_set = HashMap::new();
            for s in &self.principal {
                if !by_set.contains_key(s) {
                    by_set.insert(s.clone(), ideals.len());
                    ideals.push(s.clone());
                }
            }
            let mut i = 0;
            while i < ideals.len() {
                for j in 0..i {
                    let s = self.sum_sets(&ideals[i], &ideals[j]);
                    if !by_set.contains_key(&s) {
                        by_set.insert(s.clone(), ideals.len());
                        ideals.push(s);
                    }
                }
                i += 1;
            }
            let proper: Vec<usize> = (0..ideals.len()).filter(|&i| !ideals[i].contains(self.one)).collect();
            let maximal = proper
                .iter()
                .copied()
                .filter(|&i| {
                    proper.iter().all(|&j| j == i || !ideals[i].is_subset(&ideals[j]) || ideals[i] == ideals[j])
                })
                .collect();
            Lattice { ideals, maximal, by_set }
        })
    }

    /// Whether `R/A` is local, i.e. exactly one maximal ideal contains `A`.
    pub fn quotient_is_local(&self, a: &FixedBitSet) -> bool {
        let lat = self.lattice();
        lat.maximal.iter().filter(|&&m| a.is_subset(&lat.ideals[m])).count() == 1
    }

    /// `{r : r^k ∈ A for some k}`.
    pub fn radical_set(&self, a: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.n);
        for r in 0..self.n {
            let mut p = r;
            for _ in 0..=self.n {
                if a.contains(p) {
                    out.insert(r);
                    break;
                }
                p = self.mul(p, r);
            }
        }
        out
    }

    pub fn is_reduced(&self) -> bool {
        let zero = {
            let mut s = FixedBitSet::with_capacity(self.n);
            s.insert(self.zero);
            s
        };
        self.radical_set(&zero).count_ones(..) == 1
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.n).filter(|&e| self.mul(e, e) == e).collect()
    }

    /// Minimal nonzero idempotents, ascending by index; they sum to one.
    pub fn primitive_idempotents(&self) -> Vec<usize> {
        let ids = self.idempotents();
        ids.iter()
            .copied()
            .filter(|&e| {
                e != self.zero && ids.iter().all(|&f| f == self.zero || f == e || self.mul(f, e) != f)
            })
            .collect()
    }

    /// Local factors `eR` for the primitive idempotents `e`.
    pub fn decompose(&self) -> Vec<LocalFactor> {
        self.primitive_idempotents()
            .into_iter()
            .map(|e| LocalFactor { idempotent: self.elems[e].clone(), size: self.principal[e].count_ones(..) })
            .collect()
    }

    /// Structural diagnostics for each local factor, by exhaustion.
    pub fn pcs_diagnostics(&self) -> PcsDiagnostics {
        let lat = self.lattice();
        let mut factors = Vec::new();
        for e in self.primitive_idempotents() {
            let er = &self.principal[e];
            let inside: Vec<usize> = (0..lat.ideals.len()).filter(|&i| lat.ideals[i].is_subset(er)).collect();
            let chain = inside.iter().all(|&i| {
                inside
                    .iter()
                    .all(|&j| lat.ideals[i].is_subset(&lat.ideals[j]) || lat.ideals[j].is_subset(&lat.ideals[i]))
            });
            // primes of eR are the ideals P ⊆ eR with P + (1-e)R prime in R; in a
            // finite ring all primes are maximal, so count maximal ideals of R
            // not containing e
            let local_maximal: Vec<usize> =
                lat.maximal.iter().copied().filter(|&m| !lat.ideals[m].contains(e)).collect();
            let primes = local_maximal.len();
            let uniserial = local_maximal.iter().all(|&m| {
                let mut p = lat.ideals[m].clone();
                p.intersect_with(er);
                let below: Vec<usize> = (0..lat.ideals.len()).filter(|&i| lat.ideals[i].is_subset(&p)).collect();
                below.iter().all(|&i| {
                    below
                        .iter()
                        .all(|&j| lat.ideals[i].is_subset(&lat.ideals[j]) || lat.ideals[j].is_subset(&lat.ideals[i]))
                })
            });
            factors.push(LocalDiagnostics {
                idempotent: self.elems[e].clone(),
                size: er.count_ones(..),
                minimal_primes: primes,
                minimal_prime_uniserial: uniserial,
                chain_ring: chain,
                maximal_ideals: primes,
            });
        }
        let arithmetic = factors.iter().all(|f| f.chain_ring);
        let is_pcs_candidate =
            arithmetic && factors.iter().all(|f| f.minimal_primes == 1 && f.minimal_prime_uniserial);
        PcsDiagnostics { factors, arithmetic, is_pcs_candidate }
    }

    /// Whether every ideal of every local factor is comparable with every other.
    pub fn is_arithmetic(&self) -> bool {
        self.pcs_diagnostics().arithmetic
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z12_splits_into_sizes_4_and_3() {
        let r = Ring::zmod(12).unwrap();
        let fr = FiniteRing::from_ring(&r).unwrap();
        let f = fr.decompose();
        let mut got: Vec<(Elem, usize)> = f.iter().map(|l| (l.idempotent.clone(), l.size)).collect();
        got.sort();
        assert_eq!(got, vec![(Elem::Int(4), 3), (Elem::Int(9), 4)]);
        let d = fr.pcs_diagnostics();
        assert!(d.arithmetic && d.is_pcs_candidate);
    }

    #[test]
    fn field_is_single_factor() {
        let fr = FiniteRing::from_ring(&Ring::zmod(7).unwrap()).unwrap();
        let f = fr.decompose();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].idempotent, Elem::Int(1));
        assert!(fr.pcs_diagnostics().is_pcs_candidate);
    }

    #[test]
    fn lattice_of_z12() {
        let fr = FiniteRing::from_ring(&Ring::zmod(12).unwrap()).unwrap();
        assert_eq!(fr.lattice().ideals.len(), 6);
        assert_eq!(fr.lattice().maximal.len(), 2);
        assert!(fr.quotient_is_local(&fr.ideal_set(&Elem::Int(4))));
        assert!(!fr.quotient_is_local(&fr.ideal_set(&Elem::Int(6))));
        assert!(!fr.is_reduced());
    }
}
