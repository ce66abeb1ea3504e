//! The local ring `F_q[x,y]/(x², xy, y²)` and the modules separating RD from
//! purity and pure-injectivity from RD-injectivity.

use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::goldie::is_essential;
use crate::oracle::{
    enumerate_submodules, is_indecomposable, module_isomorphic, mu_bruteforce, FiniteModule, FiniteRing, HomSearch,
    Mode, SeriesSearch, Set,
};
use crate::ring::{poly::Poly, Elem, Ring, RingDescriptor};

/// `F_q[x,y]/(x², xy, y²)` as a table ring, elements `c₀ + c₁x + c₂y` indexed
/// `c₀ + c₁q + c₂q²` through the field's element order.
pub struct WitnessRing {
    pub q: u64,
    pub ring: Ring,
    pub finite: Arc<FiniteRing>,
    /// Index of `x`.
    pub a: usize,
    /// Index of `y`.
    pub b: usize,
    /// The maximal ideal `(x, y)`.
    pub p: Set,
    field: Ring,
    field_elems: Vec<Elem>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessFacts {
    pub size: usize,
    pub ra_meets_rb_trivially: bool,
    pub ann_a_is_p: bool,
    pub ann_b_is_p: bool,
    pub p_squared_zero: bool,
    pub local: bool,
    pub arithmetic: bool,
    pub bezout: bool,
}

fn field_for(q: u64) -> Result<Ring> {
    match q {
        2 | 3 | 5 => Ring::zmod(q),
        4 => Ring::poly(2, Poly::from_coeffs(vec![1, 1, 1])),
        _ => Err(Error::InvalidValue(format!("q must be one of 2, 3, 4, 5, got {q}"))),
    }
}

impl WitnessRing {
    pub fn new(q: u64) -> Result<WitnessRing> {
        let field = field_for(q)?;
        let field_elems = field.elements().ok_or(Error::NotFinite)?;
        let k = q as usize;
        let fidx = |e: &Elem| field_elems.iter().position(|f| f == e).expect("field element");
        let n = k * k * k;
        let split = |i: usize| [i % k, (i / k) % k, i / (k * k)];
        let join = |c: [usize; 3]| c[0] + c[1] * k + c[2] * k * k;
        let fadd = |u: usize, v: usize| fidx(&field.add(&field_elems[u], &field_elems[v]));
        let fmul = |u: usize, v: usize| fidx(&field.mul(&field_elems[u], &field_elems[v]));
        let mut add = vec![vec![0u64; n]; n];
        let mut mul = vec![vec![0u64; n]; n];
        for i in 0..n {
            let c = split(i);
            for j in 0..n {
                let d = split(j);
                add[i][j] = join([fadd(c[0], d[0]), fadd(c[1], d[1]), fadd(c[2], d[2])]) as u64;
                let e1 = fadd(fmul(c[0], d[1]), fmul(c[1], d[0]));
                let e2 = fadd(fmul(c[0], d[2]), fmul(c[2], d[0]));
                mul[i][j] = join([fmul(c[0], d[0]), e1, e2]) as u64;
            }
        }
        let units: Vec<u64> = (0..n).filter(|&i| split(i)[0] != 0).map(|i| i as u64).collect();
        let ring = Ring::new(RingDescriptor::LocalTable { add, mul, units })?;
        let finite = FiniteRing::from_ring(&ring)?;
        let (a, b) = (k, k * k);
        let mut p = Set::with_capacity(n);
        for i in (0..n).filter(|&i| split(i)[0] == 0) {
            p.insert(i);
        }
        Ok(WitnessRing { q, ring, finite, a, b, p, field, field_elems })
    }

    fn k(&self) -> usize {
        self.q as usize
    }

    fn coeffs(&self, i: usize) -> [usize; 3] {
        let k = self.k();
        [i % k, (i / k) % k, i / (k * k)]
    }

    /// `c₀+c₁x+c₂y` with zero terms dropped.
    pub fn label(&self, i: usize) -> String {
        let c = self.coeffs(i);
        let mut parts = Vec::new();
        for (coef, var) in c.iter().zip(["", "x", "y"]) {
            if *coef == 0 {
                continue;
            }
            let f = self.field_elems[*coef].to_string();
            let f = if f.contains('+') && !var.is_empty() { format!("({f})") } else { f };
            parts.push(match (f.as_str(), var) {
                (f, "") => f.to_string(),
                ("1", v) => v.to_string(),
                (f, v) => format!("{f}{v}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }

    pub fn facts(&self) -> WitnessFacts {
        let fr = &self.finite;
        let mut meet = fr.principal(self.a).clone();
        meet.intersect_with(fr.principal(self.b));
        let ann = |x: usize| {
            let mut s = Set::with_capacity(fr.len());
            for r in (0..fr.len()).filter(|&r| fr.mul(r, x) == fr.zero()) {
                s.insert(r);
            }
            s
        };
        let p: Vec<usize> = self.p.ones().collect();
        WitnessFacts {
            size: fr.len(),
            ra_meets_rb_trivially: meet.count_ones(..) == 1,
            ann_a_is_p: ann(self.a) == self.p,
            ann_b_is_p: ann(self.b) == self.p,
            p_squared_zero: p.iter().all(|&u| p.iter().all(|&v| fr.mul(u, v) == fr.zero())),
            local: fr.lattice().maximal.len() == 1,
            arithmetic: fr.is_arithmetic(),
            bezout: self.ring.is_bezout(),
        }
    }

    pub fn free(&self, m: usize) -> Result<FiniteModule> {
        FiniteModule::free(&self.finite, m)
    }

    /// `R/P`.
    pub fn residue_field(&self) -> Result<FiniteModule> {
        FiniteModule::cyclic_quotient(&self.finite, &self.p)
    }

    /// The relation element `(y, −x)` of `R²`.
    pub fn relation(&self, free2: &FiniteModule) -> Result<usize> {
        let fr = &self.finite;
        free2.index_of(&[fr.elem(self.b).clone(), fr.elem(fr.neg(self.a)).clone()])
    }

    /// Label of an element of `R²`.
    pub fn pair_label(&self, x: usize) -> String {
        let n = self.finite.len();
        format!("({},{})", self.label(x / n), self.label(x % n))
    }

    /// The `F_q`-linear dual of `R` with `(r·f)(s) = f(rs)`, each functional
    /// stored by its values on `1, x, y`.
    pub fn dual(&self) -> Result<FiniteModule> {
        let k = self.k();
        let fr = &self.finite;
        let n = k * k * k;
        let fidx = |e: &Elem| self.field_elems.iter().position(|f| f == e).expect("field element");
        let fadd = |u: usize, v: usize| fidx(&self.field.add(&self.field_elems[u], &self.field_elems[v]));
        let fmul = |u: usize, v: usize| fidx(&self.field.mul(&self.field_elems[u], &self.field_elems[v]));
        let eval = |f: usize, s: usize| {
            let fv = self.coeffs(f);
            let sv = self.coeffs(s);
            (0..3).fold(0, |acc, i| fadd(acc, fmul(sv[i], fv[i])))
        };
        let basis = [fr.one(), self.a, self.b];
        let join = |c: [usize; 3]| c[0] + c[1] * k + c[2] * k * k;
        let mut add = Vec::with_capacity(n * n);
        for f in 0..n {
            for g in 0..n {
                let (u, v) = (self.coeffs(f), self.coeffs(g));
                add.push(join([fadd(u[0], v[0]), fadd(u[1], v[1]), fadd(u[2], v[2])]) as u32);
            }
        }
        let mut act = Vec::with_capacity(fr.len() * n);
        for r in 0..fr.len() {
            for f in 0..n {
                let c = basis.map(|s| eval(f, fr.mul(r, s)));
                act.push(join(c) as u32);
            }
        }
        FiniteModule::from_tables(fr, n, add, act)
    }

    pub fn functional_label(&self, f: usize) -> String {
        let c = self.coeffs(f);
        format!("[{},{},{}]", self.field_elems[c[0]], self.field_elems[c[1]], self.field_elems[c[2]])
    }
}

/// `R²/R(y e₁ − x e₂)`.
pub struct WitnessModule {
    pub free: FiniteModule,
    pub relation: Set,
    pub module: FiniteModule,
}

pub fn witness_module(w: &WitnessRing) -> Result<WitnessModule> {
    let free = w.free(2)?;
    let v = w.relation(&free)?;
    let relation = free.cyclic(v);
    let (module, _) = free.quotient(&free.full(), &relation)?;
    Ok(WitnessModule { free, relation, module })
}

#[derive(Clone, Debug, Serialize)]
pub struct CyclicStart {
    pub generator: usize,
    pub size: usize,
    pub direct_summand: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Control {
    pub name: String,
    pub series_count: String,
    pub lengths: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RdSeriesObstruction {
    pub q: u64,
    pub ring: WitnessFacts,
    pub module_size: usize,
    pub indecomposable: bool,
    pub mu: usize,
    pub top_dimension: usize,
    /// Cyclic RD submodules `Rz` with `M/Rz` cyclic.
    pub cyclic_rd_starts: Vec<CyclicStart>,
    pub rd_series_count: String,
    pub no_rd_series: bool,
    pub controls: Vec<Control>,
}

fn control(name: &str, m: &FiniteModule) -> Result<Control> {
    let c = SeriesSearch::new(m, Mode::Rd, false)?.census()?;
    Ok(Control { name: name.into(), series_count: c.series_count.to_string(), lengths: c.lengths.into_iter().collect() })
}

pub fn rd_series_obstruction(w: &WitnessRing) -> Result<RdSeriesObstruction> {
    let wm = witness_module(w)?;
    let m = &wm.module;
    let full = m.full();
    let pm = w.p.ones().fold(m.zero_set(), |acc, r| m.sum(&acc, &m.scale_set(r, &full)));
    let quotient = m.len() / pm.count_ones(..);
    let mut top_dimension = 0;
    let mut acc = 1;
    while acc < quotient {
        acc *= w.q as usize;
        top_dimension += 1;
    }
    let mut seen = HashSet::new();
    let mut starts = Vec::new();
    for z in (0..m.len()).filter(|&z| z != m.zero()) {
        let rz = m.cyclic(z);
        if !seen.insert(rz.clone()) || !m.is_rd(&full, &rz) {
            continue;
        }
        if !(0..m.len()).any(|u| m.extend(&rz, u) == full) {
            continue;
        }
        starts.push(CyclicStart { generator: z, size: rz.count_ones(..), direct_summand: m.is_pure(&full, &rz)? });
    }
    let census = SeriesSearch::new(m, Mode::Rd, false)?.census()?;
    let r1 = w.free(1)?;
    let rp = w.residue_field()?;
    let two = w.free(2)?;
    let n = w.finite.len();
    let mut pp = two.empty_set();
    for x in (0..two.len()).filter(|&x| w.p.contains(x / n) && w.p.contains(x % n)) {
        pp.insert(x);
    }
    let (rp2, _) = two.quotient(&two.full(), &pp)?;
    let controls = vec![control("R", &r1)?, control("R/P", &rp)?, control("R/P+R/P", &rp2)?];
    Ok(RdSeriesObstruction {
        q: w.q,
        ring: w.facts(),
        module_size: m.len(),
        indecomposable: is_indecomposable(m, &full)?,
        mu: mu_bruteforce(m, &full),
        top_dimension,
        cyclic_rd_starts: starts,
        rd_series_count: census.series_count.to_string(),
        no_rd_series: census.series_count == 0,
        controls,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RdVsPure {
    pub q: u64,
    pub submodule: Vec<String>,
    pub rd: bool,
    pub pure: bool,
    pub separated: bool,
}

/// `R(y e₁ − x e₂) ⊂ R²` is RD but not pure.
pub fn rd_vs_pure(w: &WitnessRing) -> Result<RdVsPure> {
    let free = w.free(2)?;
    let l = free.cyclic(w.relation(&free)?);
    let rd = free.is_rd_checked(&free.full(), &l)?;
    let pure = free.is_pure_checked(&free.full(), &l)?;
    Ok(RdVsPure {
        q: w.q,
        submodule: l.ones().map(|x| w.pair_label(x)).collect(),
        rd,
        pure,
        separated: rd && !pure,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SocleFacts {
    pub dual_size: usize,
    pub socle_size: usize,
    pub socle_elements: Vec<String>,
    pub isomorphic_to_residue_field: bool,
    pub killed_by_p: bool,
    pub socle_simple: bool,
    pub socle_essential: bool,
    pub socle_is_all_simples: bool,
}

pub struct Socle {
    pub dual: FiniteModule,
    pub set: Set,
    pub module: FiniteModule,
}

/// `S = {f ∈ dual(R) : x·f = y·f = 0}`.
pub fn socle_module(w: &WitnessRing) -> Result<Socle> {
    let dual = w.dual()?;
    let mut set = dual.empty_set();
    for f in (0..dual.len()).filter(|&f| dual.act(w.a, f) == dual.zero() && dual.act(w.b, f) == dual.zero()) {
        set.insert(f);
    }
    let (module, _) = dual.restrict(&set)?;
    Ok(Socle { dual, set, module })
}

pub fn socle_facts(w: &WitnessRing, s: &Socle) -> Result<SocleFacts> {
    let d = &s.dual;
    let simples: Vec<Set> = enumerate_submodules(d, &d.full())?
        .into_iter()
        .filter(|t| !d.is_zero_set(t) && t.ones().all(|x| x == d.zero() || d.cyclic(x) == *t))
        .collect();
    let all_simple = simples.iter().fold(d.zero_set(), |acc, t| d.sum(&acc, t));
    Ok(SocleFacts {
        dual_size: d.len(),
        socle_size: s.set.count_ones(..),
        socle_elements: s.set.ones().map(|f| w.functional_label(f)).collect(),
        isomorphic_to_residue_field: module_isomorphic(&s.module, &w.residue_field()?),
        killed_by_p: w.p.ones().all(|r| s.set.ones().all(|f| d.act(r, f) == d.zero())),
        socle_simple: simples.len() == 1 && simples[0] == s.set,
        socle_essential: is_essential(d, &d.full(), &s.set),
        socle_is_all_simples: all_simple == s.set,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RdInjectivityFailure {
    pub q: u64,
    pub submodule: Vec<String>,
    pub submodule_rd: bool,
    pub hom_l_s: usize,
    pub hom_n_s: usize,
    pub restricted_to_l: usize,
    /// The non-extending map as `(element of L, image in S)`.
    pub phi: Vec<(String, String)>,
    pub phi_extends: bool,
    pub control_hom_l_e: usize,
    pub control_all_extend: bool,
    pub socle: SocleFacts,
}

fn restrictions(src: &FiniteModule, domain: &Set, dst: &FiniteModule, l: &[usize]) -> Vec<Vec<u32>> {
    HomSearch::new(src, domain, dst, &dst.full()).collect(|phi| Some(l.iter().map(|&x| phi[x]).collect()))
}

/// `(L, N, φ)` with `L = R(y e₁ − x e₂)` RD in `N = R²` and `φ: L → S` with no
/// extension to `N`, found by exhausting `Hom(N, S)`.
pub fn rd_injectivity_failure(w: &WitnessRing) -> Result<RdInjectivityFailure> {
    let n = w.free(2)?;
    let lset = n.cyclic(w.relation(&n)?);
    let l: Vec<usize> = lset.ones().collect();
    let socle = socle_module(w)?;
    let s = &socle.module;
    let from_l = restrictions(&n, &lset, s, &l);
    let from_n: HashSet<Vec<u32>> = restrictions(&n, &n.full(), s, &l).into_iter().collect();
    let zero = s.zero() as u32;
    let phi = from_l
        .iter()
        .find(|p| p.iter().any(|&y| y != zero) && !from_n.contains(*p))
        .cloned()
        .ok_or(Error::SearchExhausted)?;
    let e = &socle.dual;
    let e_from_l: HashSet<Vec<u32>> = restrictions(&n, &lset, e, &l).into_iter().collect();
    let e_from_n: HashSet<Vec<u32>> = restrictions(&n, &n.full(), e, &l).into_iter().collect();
    let (_, back) = socle.dual.restrict(&socle.set)?;
    Ok(RdInjectivityFailure {
        q: w.q,
        submodule: l.iter().map(|&x| w.pair_label(x)).collect(),
        submodule_rd: n.is_rd_checked(&n.full(), &lset)?,
        hom_l_s: from_l.len(),
        hom_n_s: HomSearch::new(&n, &n.full(), s, &s.full()).count(),
        restricted_to_l: from_n.len(),
        phi: l
            .iter()
            .zip(&phi)
            .map(|(&x, &y)| (w.pair_label(x), w.functional_label(back[y as usize])))
            .collect(),
        phi_extends: from_n.contains(&phi),
        control_hom_l_e: e_from_l.len(),
        control_all_extend: e_from_l == e_from_n,
        socle: socle_facts(w, &socle)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_ring_facts_q2() {
        let w = WitnessRing::new(2).unwrap();
        let f = w.facts();
        assert_eq!(f.size, 8);
        assert!(f.ra_meets_rb_trivially && f.ann_a_is_p && f.ann_b_is_p && f.p_squared_zero && f.local);
        assert!(!f.arithmetic && !f.bezout);
        assert_eq!(w.label(w.a), "x");
        assert_eq!(w.label(w.b), "y");
        assert_eq!(w.finite.decompose().len(), 1);
    }

    #[test]
    fn dual_is_a_module() {
        for q in [2, 3, 4] {
            let w = WitnessRing::new(q).unwrap();
            let d = w.dual().unwrap();
            d.validate().unwrap();
            assert_eq!(d.len(), w.finite.len());
        }
    }

    #[test]
    fn rd_not_pure_q2() {
        let w = WitnessRing::new(2).unwrap();
        let r = rd_vs_pure(&w).unwrap();
        assert!(r.rd && !r.pure);
        assert_eq!(r.submodule, vec!["(0,0)".to_string(), "(y,x)".to_string()]);
    }

    #[test]
    fn witness_module_has_no_rd_series() {
        let w = WitnessRing::new(2).unwrap();
        let r = rd_series_obstruction(&w).unwrap();
        assert_eq!(r.module_size, 32);
        assert!(r.indecomposable);
        assert_eq!((r.mu, r.top_dimension), (2, 2));
        assert!(r.no_rd_series);
        assert!(r.cyclic_rd_starts.iter().all(|c| !c.direct_summand));
        assert_eq!(r.controls[1].lengths, vec![1]);
        assert_eq!(r.controls[2].lengths, vec![2]);
    }

    #[test]
    fn socle_map_does_not_extend() {
        let w = WitnessRing::new(2).unwrap();
        let r = rd_injectivity_failure(&w).unwrap();
        assert!(r.submodule_rd && !r.phi_extends && r.control_all_extend);
        let s = &r.socle;
        assert_eq!(s.socle_size, 2);
        assert!(s.isomorphic_to_residue_field && s.killed_by_p && s.socle_simple && s.socle_essential);
        assert!(s.socle_is_all_simples);
    }
}
