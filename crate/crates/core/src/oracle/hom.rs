//! Homomorphism search between finite modules.
//!
//! A homomorphism is fixed by the images of a generating set. Generators are
//! taken greedily (least element not yet spanned) and each candidate image is
//! checked against every relation `r·g ∈ D` with the part already defined.

use super::module::{FiniteModule, Set};
use crate::par;

const UNSET: u32 = u32::MAX;

struct Level {
    gen: usize,
    /// `(r, r·gen)` for every `r` with `r·gen` inside the span so far.
    rel: Vec<(usize, usize)>,
    /// Elements of the span before this generator.
    prev: Vec<usize>,
    ann: Set,
}

/// Search space of module maps `src ⊇ domain → codomain ⊆ dst` extending a
/// fixed map on a base submodule.
pub struct HomSearch<'a> {
    src: &'a FiniteModule,
    dst: &'a FiniteModule,
    candidates: Vec<usize>,
    start: Vec<u32>,
    levels: Vec<Level>,
    same_ann: bool,
    injective: bool,
    domain_size: usize,
}

impl<'a> HomSearch<'a> {
    /// Maps from `domain` into `codomain` sending zero to zero.
    pub fn new(src: &'a FiniteModule, domain: &Set, dst: &'a FiniteModule, codomain: &Set) -> HomSearch<'a> {
        let mut start = vec![UNSET; src.len()];
        start[src.zero()] = dst.zero() as u32;
        Self::with_base(src, domain, dst, codomain, &src.zero_set(), start)
    }

    /// Maps extending `start`, which must already be a homomorphism on `base`.
    pub fn with_base(
        src: &'a FiniteModule,
        domain: &Set,
        dst: &'a FiniteModule,
        codomain: &Set,
        base: &Set,
        start: Vec<u32>,
    ) -> HomSearch<'a> {
        let mut span = base.clone();
        let mut levels = Vec::new();
        while let Some(g) = domain.ones().find(|&x| !span.contains(x)) {
            let rel = (0..src.ring().len())
                .map(|r| (r, src.act(r, g)))
                .filter(|&(_, y)| span.contains(y))
                .collect();
            let prev = span.ones().collect();
            levels.push(Level { gen: g, rel, prev, ann: src.element_annihilator(g) });
            span = src.extend(&span, g);
        }
        HomSearch {
            src,
            dst,
            candidates: codomain.ones().collect(),
            start,
            levels,
            same_ann: false,
            injective: false,
            domain_size: domain.count_ones(..),
        }
    }

    /// Restricts to injective maps, pruning images by element annihilator.
    pub fn injective_only(mut self) -> Self {
        self.same_ann = true;
        self.injective = true;
        self
    }

    pub fn generator_count(&self) -> usize {
        self.levels.len()
    }

    fn consistent(&self, level: &Level, phi: &[u32], y: usize) -> bool {
        if self.same_ann && self.dst.element_annihilator(y) != level.ann {
            return false;
        }
        level.rel.iter().all(|&(r, rg)| self.dst.act(r, y) == phi[rg] as usize)
    }

    fn assign(&self, level: &Level, phi: &mut [u32], y: usize, touched: &mut Vec<usize>) {
        for r in 0..self.src.ring().len() {
            let rg = self.src.act(r, level.gen);
            if phi[rg] != UNSET {
                continue;
            }
            let ry = self.dst.act(r, y);
            for &d in &level.prev {
                let x = self.src.add(d, rg);
                phi[x] = self.dst.add(phi[d] as usize, ry) as u32;
                touched.push(x);
            }
        }
    }

    fn is_injective(&self, phi: &[u32]) -> bool {
        let mut seen = self.dst.empty_set();
        let mut count = 0;
        for &y in phi.iter().filter(|&&y| y != UNSET) {
            if seen.put(y as usize) {
                return false;
            }
            count += 1;
        }
        count == self.domain_size
    }

    fn dfs(&self, depth: usize, phi: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32]) -> bool) -> bool {
        if depth == self.levels.len() {
            if self.injective && !self.is_injective(phi) {
                return false;
            }
            return visit(phi);
        }
        let level = &self.levels[depth];
        let mut touched = Vec::new();
        for &y in &self.candidates {
            if !self.consistent(level, phi, y) {
                continue;
            }
            self.assign(level, phi, y, &mut touched);
            let stop = self.dfs(depth + 1, phi, visit);
            for &x in &touched {
                phi[x] = UNSET;
            }
            touched.clear();
            if stop {
                return true;
            }
        }
        false
    }

    fn branch(&self, y: usize) -> Option<Vec<u32>> {
        let level = &self.levels[0];
        let mut phi = self.start.clone();
        if !self.consistent(level, &phi, y) {
            return None;
        }
        let mut touched = Vec::new();
        self.assign(level, &mut phi, y, &mut touched);
        Some(phi)
    }

    /// Applies `f` to every map, keeping the `Some` results in search order.
    pub fn collect<U: Send>(&self, f: impl Fn(&[u32]) -> Option<U> + Sync + Send) -> Vec<U> {
        if self.levels.is_empty() {
            let mut phi = self.start.clone();
            let mut out = Vec::new();
            self.dfs(0, &mut phi, &mut |p| {
                out.extend(f(p));
                false
            });
            return out;
        }
        par::map(&self.candidates, |&y| {
            let mut out = Vec::new();
            if let Some(mut phi) = self.branch(y) {
                self.dfs(1, &mut phi, &mut |p| {
                    out.extend(f(p));
                    false
                });
            }
            out
        })
        .into_iter()
        .flatten()
        .collect()
    }

    /// The first map (in search order) accepted by `f`.
    pub fn find(&self, f: impl Fn(&[u32]) -> bool + Sync + Send) -> Option<Vec<u32>> {
        let run = |phi: &mut Vec<u32>, depth: usize| {
            let mut hit = None;
            self.dfs(depth, phi, &mut |p| {
                if f(p) {
                    hit = Some(p.to_vec());
                    true
                } else {
                    false
                }
            });
            hit
        };
        if self.levels.is_empty() {
            return run(&mut self.start.clone(), 0);
        }
        par::find_map_first(&self.candidates, |&y| self.branch(y).and_then(|mut phi| run(&mut phi, 1)))
    }

    pub fn count(&self) -> usize {
        self.collect(|_| Some(())).len()
    }
}

/// A map `N → K` that is the identity on `K`, if one exists.
pub fn retraction(m: &FiniteModule, outer: &Set, inner: &Set) -> Option<Vec<u32>> {
    let mut start = vec![UNSET; m.len()];
    for k in inner.ones() {
        start[k] = k as u32;
    }
    HomSearch::with_base(m, outer, m, inner, inner, start).find(|_| true)
}

/// All homomorphisms `A → B`, each as the image of every element of `A`.
pub fn hom_space(a: &FiniteModule, b: &FiniteModule) -> Vec<Vec<u32>> {
    HomSearch::new(a, &a.full(), b, &b.full()).collect(|p| Some(p.to_vec()))
}

/// An isomorphism `A → B`, if one exists.
pub fn isomorphism(a: &FiniteModule, b: &FiniteModule) -> Option<Vec<u32>> {
    if a.len() != b.len() || a.ring().len() != b.ring().len() {
        return None;
    }
    if a.signature(&a.full()) != b.signature(&b.full()) {
        return None;
    }
    HomSearch::new(a, &a.full(), b, &b.full()).injective_only().find(|_| true)
}

pub fn module_isomorphic(a: &FiniteModule, b: &FiniteModule) -> bool {
    isomorphism(a, b).is_some()
}

/// Whether a listed map is additive and equivariant on `domain`.
pub fn is_homomorphism(src: &FiniteModule, domain: &Set, dst: &FiniteModule, phi: &[u32]) -> bool {
    let xs: Vec<usize> = domain.ones().collect();
    xs.iter().all(|&x| {
        (0..src.ring().len()).all(|r| phi[src.act(r, x)] as usize == dst.act(r, phi[x] as usize))
            && xs.iter().all(|&y| phi[src.add(x, y)] as usize == dst.add(phi[x] as usize, phi[y] as usize))
    })
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
    fn hom_counts_over_z12() {
        // |Hom(Z/a, Z/b)| = gcd(a, b) as abelian groups
        let a = fm(12, &[4]);
        let b = fm(12, &[6]);
        let homs = hom_space(&a, &b);
        assert_eq!(homs.len(), 2);
        for h in &homs {
            assert!(is_homomorphism(&a, &a.full(), &b, h));
        }
        assert_eq!(hom_space(&fm(12, &[0]), &fm(12, &[0])).len(), 12);
    }

    #[test]
    fn isomorphism_detects_crt() {
        let a = fm(12, &[0, 2]);
        let b = fm(12, &[4, 3, 2]);
        assert!(module_isomorphic(&a, &b));
        assert!(!module_isomorphic(&fm(12, &[0]), &fm(12, &[2, 6])));
    }

    #[test]
    fn summand_has_retraction() {
        let m = fm(4, &[0, 2]);
        let x = m.index_of(&[Elem::Int(0), Elem::Int(1)]).unwrap();
        assert!(retraction(&m, &m.full(), &m.cyclic(x)).is_some());
        let y = m.index_of(&[Elem::Int(0), Elem::Int(2)]).unwrap();
        assert!(retraction(&m, &m.full(), &m.cyclic(y)).is_none());
    }
}
