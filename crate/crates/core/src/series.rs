//! Pure and RD composition series: construction from decompositions and by
//! peeling, annihilator-sequence predicates, reordering and normalization.

use std::cmp::Ordering;
use std::sync::Arc;

use serde::Serialize;

use crate::decompose::{peel_pure_generator, refine_pieces};
use crate::error::{Error, Result};
use crate::goldie::goldie_structural;
use crate::module::FpModule;
use crate::oracle::{FiniteModule, FiniteRing, Mode, SeriesSearch, Set};
use crate::ring::{Elem, Ring};

/// `0 = M₀ ⊂ M₁ ⊂ ⋯ ⊂ Mₙ = M` with `Mᵢ = Mᵢ₋₁ + R·xᵢ` and factor annihilators
/// `Aᵢ = ann(Mᵢ/Mᵢ₋₁)`.
#[derive(Clone, Debug)]
pub struct CompositionSeries {
    pub module: FpModule,
    pub mode: Mode,
    /// `xᵢ` in normal coordinates of the module.
    pub generators: Vec<Vec<Elem>>,
    pub annihilators: Vec<Elem>,
}

impl CompositionSeries {
    pub fn len(&self) -> usize {
        self.annihilators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.annihilators.is_empty()
    }

    pub fn ring(&self) -> &Ring {
        self.module.ring()
    }

    /// Whether every factor has a single minimal prime over its annihilator.
    pub fn indecomposable_factors(&self) -> Result<bool> {
        for a in &self.annihilators {
            if self.ring().minimal_primes(a)?.len() != 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Predicates {
    pub increasing: bool,
    pub totally_ordered: bool,
    pub almost_increasing: bool,
    pub almost_totally_ordered: bool,
}

pub fn sequence_predicates(ring: &Ring, s: &[Elem]) -> Result<Predicates> {
    let mut p = Predicates { increasing: true, totally_ordered: true, almost_increasing: true, almost_totally_ordered: true };
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            let le = ring.ideal_le(&s[i], &s[j]);
            let ge = ring.ideal_le(&s[j], &s[i]);
            let co = ring.comaximal(&s[i], &s[j])?;
            p.increasing &= le;
            p.totally_ordered &= le || ge;
            p.almost_increasing &= le || co;
            p.almost_totally_ordered &= le || ge || co;
        }
    }
    Ok(p)
}

fn inclusion_order(ring: &Ring, a: &Elem, b: &Elem) -> Ordering {
    if ring.ideal_gen(a) == ring.ideal_gen(b) {
        Ordering::Equal
    } else if ring.ideal_le(a, b) {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

fn reorder_indices(ring: &Ring, s: &[Elem], idx: Vec<usize>) -> Result<Vec<usize>> {
    let sub: Vec<Elem> = idx.iter().map(|&i| s[i].clone()).collect();
    if sequence_predicates(ring, &sub)?.almost_increasing {
        return Ok(idx);
    }
    let mut chain: Vec<usize> = Vec::new();
    let mut rest = Vec::new();
    for &i in &idx {
        if chain.iter().all(|&c| ring.ideal_le(&s[c], &s[i]) || ring.ideal_le(&s[i], &s[c])) {
            chain.push(i);
        } else {
            rest.push(i);
        }
    }
    chain.sort_by(|&a, &b| inclusion_order(ring, &s[a], &s[b]));
    chain.extend(reorder_indices(ring, s, rest)?);
    Ok(chain)
}

/// A permutation making an almost totally ordered sequence almost
/// increasing: a maximal totally ordered subsequence first, sorted by
/// inclusion, then the rest handled the same way. `perm[i]` is the input
/// index placed at position `i`.
pub fn reorder_almost_increasing(ring: &Ring, s: &[Elem]) -> Result<(Vec<usize>, Vec<Elem>)> {
    if !sequence_predicates(ring, s)?.almost_totally_ordered {
        return Err(Error::NotAlmostTotallyOrdered);
    }
    let perm = reorder_indices(ring, s, (0..s.len()).collect())?;
    let out: Vec<Elem> = perm.iter().map(|&i| s[i].clone()).collect();
    if !sequence_predicates(ring, &out)?.almost_increasing {
        return Err(Error::NotAlmostTotallyOrdered);
    }
    Ok((perm, out))
}

/// Partial direct sums of the indecomposable decomposition, one summand per
/// stage, in refinement order.
pub fn series_from_decomposition(m: &FpModule) -> Result<CompositionSeries> {
    let ring = m.ring();
    let pieces = refine_pieces(m)?;
    let mut generators = Vec::with_capacity(pieces.len());
    let mut annihilators = Vec::with_capacity(pieces.len());
    for p in pieces {
        let mut x = m.zero();
        x[p.factor] = p.cofactor.clone();
        generators.push(m.reduce(&x));
        annihilators.push(ring.ideal_gen(&p.ideal));
    }
    Ok(CompositionSeries { module: m.clone(), mode: Mode::Pure, generators, annihilators })
}

/// Iterated pure-generator peeling: `xᵢ` generates a pure cyclic submodule of
/// `M/Mᵢ₋₁` with the same annihilator.
pub fn peel_series(m: &FpModule) -> Result<CompositionSeries> {
    let mut generators = Vec::new();
    let mut annihilators = Vec::new();
    let mut q = m.clone();
    while !q.is_zero() {
        annihilators.push(q.annihilator());
        let peel = peel_pure_generator(&q)?;
        let lifted = m.to_normal(&q.from_normal(&peel.generator))?;
        generators.push(lifted);
        q = peel.quotient;
    }
    Ok(CompositionSeries { module: m.clone(), mode: Mode::Pure, generators, annihilators })
}

pub fn prime_sequence(s: &CompositionSeries) -> Result<Vec<Elem>> {
    s.annihilators.iter().map(|a| s.ring().radical(a)).collect()
}

/// `Σ g(R/Aᵢ)`.
pub fn g_of_series(s: &CompositionSeries) -> Result<usize> {
    let ring = s.ring();
    let mut g = 0;
    for a in &s.annihilators {
        g += goldie_structural(&FpModule::from_factors(ring, std::slice::from_ref(a))?)?;
    }
    Ok(g)
}

/// Whether the factor annihilator multisets agree.
pub fn series_isomorphic(s: &CompositionSeries, t: &CompositionSeries) -> bool {
    let key = |x: &CompositionSeries| {
        let mut v: Vec<Elem> = x.annihilators.iter().map(|a| x.ring().ideal_gen(a)).collect();
        v.sort();
        v
    };
    s.ring() == t.ring() && key(s) == key(t)
}

/// Least `Σ g(factor)` over every pure series with indecomposable cyclic factors.
pub fn h_of_module(m: &FpModule) -> Result<usize> {
    if !m.is_finite() {
        return Err(Error::NotFinite);
    }
    let fr = FiniteRing::from_ring(m.ring())?;
    let fm = FiniteModule::from_fp(m, &fr)?;
    SeriesSearch::new(&fm, Mode::Pure, true)?
        .census()?
        .min_goldie_sum
        .ok_or_else(|| Error::Invariant("module has no series".into()))
}

/// A series of a finite module in element-set form.
pub struct Staged {
    pub finite: FiniteModule,
    pub chain: Vec<Set>,
    pub ideals: Vec<Set>,
}

/// Tabulates a series, recomputing each factor annihilator.
pub fn stage(s: &CompositionSeries) -> Result<Staged> {
    let fr = FiniteRing::from_ring(s.ring())?;
    let fm = FiniteModule::from_fp(&s.module, &fr)?;
    stage_in(s, fm)
}

fn stage_in(s: &CompositionSeries, fm: FiniteModule) -> Result<Staged> {
    let mut chain = vec![fm.zero_set()];
    let mut ideals = Vec::new();
    for x in &s.generators {
        let x = fm.index_of(&s.module.reduce(x))?;
        let prev = chain.last().expect("nonempty").clone();
        let next = fm.extend(&prev, x);
        ideals.push(fm.colon(&next, &prev));
        chain.push(next);
    }
    Ok(Staged { finite: fm, chain, ideals })
}

/// Checks strictness, the mode condition at each stage, cyclic factors with
/// the recorded annihilators, and that the chain ends at the whole module.
pub fn validate_series(s: &CompositionSeries) -> Result<()> {
    let st = stage(s)?;
    let fm = &st.finite;
    let fr = fm.ring();
    if st.chain.last() != Some(&fm.full()) {
        return Err(Error::Invariant("series does not reach the module".into()));
    }
    for i in 1..st.chain.len() {
        let (prev, next) = (&st.chain[i - 1], &st.chain[i]);
        if prev == next {
            return Err(Error::Invariant(format!("stage {i} is not strict")));
        }
        let ok = match s.mode {
            Mode::Rd => fm.is_rd(next, prev),
            Mode::Pure => fm.is_pure(next, prev)?,
        };
        if !ok {
            return Err(Error::Invariant(format!("stage {} is not {:?} in stage {i}", i - 1, s.mode)));
        }
        if st.ideals[i - 1] != fr.ideal_set(&s.annihilators[i - 1]) {
            return Err(Error::Invariant(format!("annihilator of factor {i} differs")));
        }
    }
    Ok(())
}

/// Rewrites a series so the annihilator sequence becomes almost increasing,
/// moving each target prime into place by swaps of adjacent factors.
pub fn normalize_series(s: &CompositionSeries) -> Result<CompositionSeries> {
    let ring = s.ring().clone();
    ring.require_bezout()?;
    let st = stage(s)?;
    let fr = st.finite.ring().clone();
    let primes = prime_sequence(s)?;
    let (_, target) = reorder_almost_increasing(&ring, &primes)?;
    let mut work = Normalizer {
        ring: &ring,
        fr: &fr,
        m: &st.finite,
        mode: s.mode,
        chain: st.chain,
        anns: s.annihilators.iter().map(|a| ring.ideal_gen(a)).collect(),
    };
    for len in (2..=work.anns.len()).rev() {
        work.settle(len, &target[len - 1])?;
    }
    let fm = work.m;
    let mut generators = Vec::new();
    for i in 1..work.chain.len() {
        let (prev, next) = (&work.chain[i - 1], &work.chain[i]);
        let x = next
            .ones()
            .find(|&z| fm.extend(prev, z) == *next)
            .ok_or_else(|| Error::Invariant(format!("factor {i} is not cyclic")))?;
        generators.push(fm.coords(x));
    }
    Ok(CompositionSeries { module: s.module.clone(), mode: s.mode, generators, annihilators: work.anns })
}

struct Normalizer<'a> {
    ring: &'a Ring,
    fr: &'a Arc<FiniteRing>,
    m: &'a FiniteModule,
    mode: Mode,
    chain: Vec<Set>,
    anns: Vec<Elem>,
}

impl Normalizer<'_> {
    /// Moves a factor with radical `j` to position `len` (1-based).
    fn settle(&mut self, len: usize, j: &Elem) -> Result<()> {
        let ring = self.ring;
        let mut k = (1..=len)
            .find(|&i| ring.radical(&self.anns[i - 1]).map(|r| r == *j).unwrap_or(false))
            .ok_or_else(|| Error::Invariant("target prime missing from the series".into()))?;
        while k < len {
            let a = self.anns[k - 1].clone();
            let b = self.anns[k].clone();
            let rb = ring.radical(&b)?;
            let same = rb == *j;
            if same && !ring.ideal_le(&a, &b) && !ring.ideal_le(&b, &a) {
                return Err(Error::CaseEUnreachable { stage: k });
            }
            if !same && !ring.comaximal(&rb, j)? && !ring.ideal_le(&rb, j) {
                return Err(Error::Invariant(format!("prime at stage {} lies above the target prime", k + 1)));
            }
            if !(same && ring.ideal_le(&a, &b)) {
                self.exchange(k)?;
            }
            k += 1;
        }
        Ok(())
    }

    fn accepts(&self, outer: &Set, inner: &Set) -> Result<bool> {
        Ok(match self.mode {
            Mode::Rd => self.m.is_rd(outer, inner),
            Mode::Pure => self.m.is_pure(outer, inner)?,
        })
    }

    /// Replaces `M_k` by `M_{k-1} + Ry` so that factors `k` and `k+1` trade places.
    fn exchange(&mut self, k: usize) -> Result<()> {
        let m = self.m;
        let low = self.chain[k - 1].clone();
        let high = self.chain[k + 1].clone();
        let a_low = self.fr.ideal_set(&self.anns[k]);
        let a_high = self.fr.ideal_set(&self.anns[k - 1]);
        for y in high.ones().filter(|&y| !low.contains(y)) {
            let mid = m.extend(&low, y);
            if mid == high || m.colon(&mid, &low) != a_low || m.colon(&high, &mid) != a_high {
                continue;
            }
            if !high.ones().any(|z| m.extend(&mid, z) == high) {
                continue;
            }
            if self.accepts(&mid, &low)? && self.accepts(&high, &mid)? {
                self.chain[k] = mid;
                self.anns.swap(k - 1, k);
                return Ok(());
            }
        }
        Err(Error::Invariant(format!("no exchange at stage {k}")))
    }
}

/// Checks that for the lex-least factor representatives `xᵢ` of a series
/// with increasing annihilators, every relation `Σ cᵢxᵢ = 0` has all
/// `cᵢ ∈ Aₙ`. Returns `None` when the coefficient space exceeds `cap`.
pub fn relations_in_top_ideal(m: &FiniteModule, chain: &[Set], top: &Set, cap: usize) -> Option<bool> {
    let reps: Vec<usize> = (1..chain.len())
        .map(|i| chain[i].ones().find(|&z| m.extend(&chain[i - 1], z) == chain[i]).expect("cyclic factor"))
        .collect();
    let n = m.ring().len();
    let total = (0..reps.len()).try_fold(1usize, |acc, _| acc.checked_mul(n))?;
    if total > cap {
        return None;
    }
    let ok = crate::par::all(total, |code| {
        let mut rest = code;
        let mut sum = m.zero();
        let mut cs = Vec::with_capacity(reps.len());
        for &x in &reps {
            let c = rest % n;
            rest /= n;
            cs.push(c);
            sum = m.add(sum, m.act(c, x));
        }
        sum != m.zero() || cs.iter().all(|&c| top.contains(c))
    });
    Some(ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z12() -> Ring {
        Ring::zmod(12).unwrap()
    }

    fn ints(v: &[i128]) -> Vec<Elem> {
        v.iter().map(|&x| Elem::Int(x)).collect()
    }

    #[test]
    fn predicates_over_z12() {
        let r = z12();
        let p = sequence_predicates(&r, &ints(&[2, 4, 3])).unwrap();
        assert!(!p.almost_increasing);
        let p = sequence_predicates(&r, &ints(&[4, 2, 3])).unwrap();
        assert!(p.almost_increasing && !p.increasing);
        let p = sequence_predicates(&r, &ints(&[0, 0])).unwrap();
        assert!(p.increasing && p.totally_ordered && p.almost_increasing && p.almost_totally_ordered);
    }

    #[test]
    fn reorder_examples() {
        let r = z12();
        let (perm, out) = reorder_almost_increasing(&r, &ints(&[2, 4, 3])).unwrap();
        assert_eq!(perm, vec![1, 0, 2]);
        assert_eq!(out, ints(&[4, 2, 3]));
        let (perm, _) = reorder_almost_increasing(&r, &ints(&[4, 2, 3])).unwrap();
        assert_eq!(perm, vec![0, 1, 2]);
        let (_, out) = reorder_almost_increasing(&r, &ints(&[3, 2, 4])).unwrap();
        assert_eq!(out, ints(&[3, 4, 2]));
        assert_eq!(reorder_almost_increasing(&r, &ints(&[6, 4])), Err(Error::NotAlmostTotallyOrdered));
    }

    #[test]
    fn decomposition_series_of_z12_example() {
        let r = z12();
        let m = FpModule::from_factors(&r, &ints(&[0, 2])).unwrap();
        let s = series_from_decomposition(&m).unwrap();
        assert_eq!(s.annihilators, ints(&[4, 2, 3]));
        validate_series(&s).unwrap();
        assert_eq!(prime_sequence(&s).unwrap(), ints(&[2, 2, 3]));
        assert_eq!(g_of_series(&s).unwrap(), 3);
        assert_eq!(h_of_module(&m).unwrap(), 3);
    }

    #[test]
    fn normalize_swaps_into_place() {
        let r = z12();
        let m = FpModule::from_factors(&r, &ints(&[0, 2])).unwrap();
        let s = series_from_decomposition(&m).unwrap();
        let shuffled = CompositionSeries {
            module: m.clone(),
            mode: Mode::Pure,
            generators: vec![s.generators[1].clone(), s.generators[0].clone(), s.generators[2].clone()],
            annihilators: ints(&[2, 4, 3]),
        };
        validate_series(&shuffled).unwrap();
        let out = normalize_series(&shuffled).unwrap();
        assert_eq!(out.annihilators, ints(&[4, 2, 3]));
        validate_series(&out).unwrap();
        assert!(series_isomorphic(&out, &shuffled));
    }

    #[test]
    fn peel_series_has_mu_stages() {
        let r = z12();
        let m = FpModule::from_factors(&r, &ints(&[0, 2])).unwrap();
        let s = peel_series(&m).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.annihilators, ints(&[0, 2]));
        validate_series(&s).unwrap();
    }

    #[test]
    fn non_isomorphic_over_z8() {
        let r = Ring::zmod(8).unwrap();
        let a = series_from_decomposition(&FpModule::from_factors(&r, &ints(&[4, 2])).unwrap()).unwrap();
        let b = series_from_decomposition(&FpModule::from_factors(&r, &ints(&[0])).unwrap()).unwrap();
        assert!(!series_isomorphic(&a, &b));
    }
}
