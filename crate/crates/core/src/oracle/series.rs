//! Exhaustive search over RD- and pure-composition series of a finite module.
//!
//! A series is built top-down: the predecessors of a stage `N` are the
//! kernels `K` of surjections `N → R/A` with `K` RD (or pure) in `N`. The
//! census aggregates over every series by dynamic programming, memoized on an
//! isomorphism invariant of `N` when the ring is a principal ideal ring.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::sync::{Arc, Mutex};

use serde::Serialize;

use super::hom::HomSearch;
use super::module::{FiniteModule, Set};
use crate::error::{Error, Result};
use crate::goldie::goldie_bruteforce;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Rd,
    Pure,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "rd" => Ok(Mode::Rd),
            "pure" => Ok(Mode::Pure),
            other => Err(Error::InvalidValue(format!("unknown mode `{other}`"))),
        }
    }
}

/// One series as a chain of element sets `M₀ = 0 ⊂ ⋯ ⊂ Mₙ` and the lattice
/// ids of the factor annihilators `A₁, …, Aₙ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSeries {
    pub chain: Vec<Set>,
    pub ideals: Vec<usize>,
}

/// Aggregate facts over every series of a module.
#[derive(Clone, Debug, Default)]
pub struct Census {
    pub series_count: u128,
    pub lengths: BTreeSet<usize>,
    /// Sorted lattice ids of the factor annihilators.
    pub factor_multisets: BTreeSet<Vec<usize>>,
    /// Sorted lattice ids of their radicals.
    pub prime_multisets: BTreeSet<Vec<usize>>,
    /// Least `Σ g(factor)` over all series.
    pub min_goldie_sum: Option<usize>,
    /// Lengths of series with increasing annihilator sequence, keyed by top ideal.
    pub increasing: BTreeMap<usize, BTreeSet<usize>>,
}

impl Census {
    pub fn increasing_lengths(&self) -> BTreeSet<usize> {
        self.increasing.values().flatten().copied().collect()
    }

    fn zero() -> Census {
        Census {
            series_count: 1,
            lengths: [0].into(),
            factor_multisets: [Vec::new()].into(),
            prime_multisets: [Vec::new()].into(),
            min_goldie_sum: Some(0),
            increasing: BTreeMap::new(),
        }
    }
}

const MULTISET_CAP: usize = 4096;

#[derive(Clone, PartialEq, Eq, Hash)]
enum Key {
    Signature(Vec<u32>),
    Exact(Set),
}

/// The allowed factors `R/A` and the predecessor relation for one module.
pub struct SeriesSearch<'a> {
    m: &'a FiniteModule,
    mode: Mode,
    factors: Vec<(usize, FiniteModule)>,
    radical: HashMap<usize, usize>,
    goldie: HashMap<usize, usize>,
    by_signature: bool,
    memo: Mutex<HashMap<Key, Arc<Census>>>,
    preds: Mutex<HashMap<Set, Arc<Vec<(Set, usize)>>>>,
}

impl<'a> SeriesSearch<'a> {
    /// With `indecomposable`, factors are restricted to `R/A` with `R/A` local.
    pub fn new(m: &'a FiniteModule, mode: Mode, indecomposable: bool) -> Result<SeriesSearch<'a>> {
        let ring = m.ring().clone();
        let lat = ring.lattice();
        let mut factors = Vec::new();
        let mut radical = HashMap::new();
        let mut goldie = HashMap::new();
        for (id, ideal) in lat.ideals.iter().enumerate() {
            if ideal.contains(ring.one()) || (indecomposable && !ring.quotient_is_local(ideal)) {
                continue;
            }
            let q = FiniteModule::cyclic_quotient(&ring, ideal)?;
            let rad = lat
                .id(&ring.radical_set(ideal))
                .ok_or_else(|| Error::Invariant("radical is not an ideal of the lattice".into()))?;
            radical.insert(id, rad);
            goldie.insert(id, goldie_bruteforce(&q, &q.full())?.dimension);
            factors.push((id, q));
        }
        Ok(SeriesSearch {
            m,
            mode,
            factors,
            radical,
            goldie,
            by_signature: ring.ring().is_bezout(),
            memo: Mutex::new(HashMap::new()),
            preds: Mutex::new(HashMap::new()),
        })
    }

    pub fn module(&self) -> &FiniteModule {
        self.m
    }

    pub fn radical_of(&self, ideal: usize) -> usize {
        self.radical[&ideal]
    }

    pub fn goldie_of(&self, ideal: usize) -> usize {
        self.goldie[&ideal]
    }

    fn accepts(&self, n: &Set, k: &Set) -> Result<bool> {
        Ok(match self.mode {
            Mode::Rd => self.m.is_rd(n, k),
            Mode::Pure => self.m.is_pure(n, k)?,
        })
    }

    /// Pairs `(K, A)` with `K ⊂ N` a mode-submodule and `N/K ≅ R/A`.
    pub fn predecessors(&self, n: &Set) -> Result<Arc<Vec<(Set, usize)>>> {
        if let Some(p) = self.preds.lock().expect("poisoned").get(n) {
            return Ok(p.clone());
        }
        let mut out = Vec::new();
        let size = n.count_ones(..);
        for (id, q) in &self.factors {
            if !size.is_multiple_of(q.len()) || q.len() == 1 {
                continue;
            }
            let qzero = q.zero() as u32;
            let kernels = HomSearch::new(self.m, n, q, &q.full()).collect(|phi| {
                let mut image = q.empty_set();
                let mut kernel = self.m.empty_set();
                for x in n.ones() {
                    image.insert(phi[x] as usize);
                    if phi[x] == qzero {
                        kernel.insert(x);
                    }
                }
                (image.count_ones(..) == q.len()).then_some(kernel)
            });
            let mut seen = HashSet::new();
            for k in kernels {
                if seen.insert(k.clone()) && self.accepts(n, &k)? {
                    out.push((k, *id));
                }
            }
        }
        let out = Arc::new(out);
        self.preds.lock().expect("poisoned").insert(n.clone(), out.clone());
        Ok(out)
    }

    fn key(&self, n: &Set) -> Key {
        if self.by_signature {
            Key::Signature(self.m.signature(n))
        } else {
            Key::Exact(n.clone())
        }
    }

    /// Census of every series of the whole module.
    pub fn census(&self) -> Result<Census> {
        Ok((*self.census_of(&self.m.full())?).clone())
    }

    pub fn census_of(&self, n: &Set) -> Result<Arc<Census>> {
        if self.m.is_zero_set(n) {
            return Ok(Arc::new(Census::zero()));
        }
        let key = self.key(n);
        if let Some(c) = self.memo.lock().expect("poisoned").get(&key) {
            return Ok(c.clone());
        }
        let mut out = Census::default();
        for (k, a) in self.predecessors(n)?.iter() {
            let sub = self.census_of(k)?;
            if sub.series_count == 0 {
                continue;
            }
            out.series_count += sub.series_count;
            out.lengths.extend(sub.lengths.iter().map(|l| l + 1));
            for f in &sub.factor_multisets {
                let mut f = f.clone();
                f.push(*a);
                f.sort_unstable();
                out.factor_multisets.insert(f);
            }
            for p in &sub.prime_multisets {
                let mut p = p.clone();
                p.push(self.radical[a]);
                p.sort_unstable();
                out.prime_multisets.insert(p);
            }
            if out.factor_multisets.len() > MULTISET_CAP || out.prime_multisets.len() > MULTISET_CAP {
                return Err(Error::TooLarge {
                    what: "factor multisets",
                    size: out.factor_multisets.len(),
                    cap: MULTISET_CAP,
                });
            }
            if let Some(g) = sub.min_goldie_sum {
                let g = g + self.goldie[a];
                out.min_goldie_sum = Some(out.min_goldie_sum.map_or(g, |h: usize| h.min(g)));
            }
            let lat = self.m.ring().lattice();
            let top = &lat.ideals[*a];
            if self.m.is_zero_set(k) {
                out.increasing.entry(*a).or_default().insert(1);
            }
            for (below, lens) in &sub.increasing {
                if lat.ideals[*below].is_subset(top) {
                    out.increasing.entry(*a).or_default().extend(lens.iter().map(|l| l + 1));
                }
            }
        }
        let out = Arc::new(out);
        self.memo.lock().expect("poisoned").insert(key, out.clone());
        Ok(out)
    }

    /// Every series explicitly, failing once more than `cap` are found.
    pub fn enumerate(&self, cap: usize) -> Result<Vec<FiniteSeries>> {
        let mut out = Vec::new();
        let mut chain = vec![self.m.full()];
        let mut ideals = Vec::new();
        self.walk(&mut chain, &mut ideals, &mut out, cap)?;
        Ok(out)
    }

    fn walk(
        &self,
        chain: &mut Vec<Set>,
        ideals: &mut Vec<usize>,
        out: &mut Vec<FiniteSeries>,
        cap: usize,
    ) -> Result<()> {
        let n = chain.last().expect("chain is never empty").clone();
        if self.m.is_zero_set(&n) {
            if out.len() == cap {
                return Err(Error::TooLarge { what: "series enumeration", size: cap + 1, cap });
            }
            let mut c = chain.clone();
            c.reverse();
            let mut i = ideals.clone();
            i.reverse();
            out.push(FiniteSeries { chain: c, ideals: i });
            return Ok(());
        }
        for (k, a) in self.predecessors(&n)?.iter() {
            chain.push(k.clone());
            ideals.push(*a);
            self.walk(chain, ideals, out, cap)?;
            chain.pop();
            ideals.pop();
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::FpModule;
    use crate::oracle::FiniteRing;
    use crate::ring::{Elem, Ring};

    fn fm(n: u64, ideals: &[i128]) -> FiniteModule {
        let fr = FiniteRing::from_ring(&Ring::zmod(n).unwrap()).unwrap();
        let ideals: Vec<Elem> = ideals.iter().map(|&v| Elem::Int(v)).collect();
        FiniteModule::from_fp(&FpModule::from_factors(fr.ring(), &ideals).unwrap(), &fr).unwrap()
    }

    #[test]
    fn z12_plus_z2_has_length_three() {
        let m = fm(12, &[0, 2]);
        let s = SeriesSearch::new(&m, Mode::Rd, true).unwrap();
        let c = s.census().unwrap();
        assert!(c.series_count > 0);
        assert_eq!(c.lengths, [3].into());
        assert_eq!(c.factor_multisets.len(), 1);
        assert_eq!(c.prime_multisets.len(), 1);
        assert_eq!(c.min_goldie_sum, Some(3));
        assert!(c.increasing_lengths().is_empty());
        let cyclic = SeriesSearch::new(&m, Mode::Pure, false).unwrap().census().unwrap();
        assert_eq!(cyclic.increasing_lengths(), [2].into());
        let all = s.enumerate(10_000).unwrap();
        assert_eq!(all.len() as u128, c.series_count);
        assert!(all.iter().all(|x| x.ideals.len() == 3));
    }

    #[test]
    fn simple_module_has_one_series() {
        let m = fm(6, &[2]);
        let s = SeriesSearch::new(&m, Mode::Pure, true).unwrap();
        let all = s.enumerate(10).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].chain.len(), 2);
    }

    #[test]
    fn signature_memo_matches_exact() {
        let m = fm(8, &[2, 4]);
        let s = SeriesSearch::new(&m, Mode::Rd, true).unwrap();
        let c = s.census().unwrap();
        let all = s.enumerate(100_000).unwrap();
        assert_eq!(c.series_count, all.len() as u128);
    }
}
