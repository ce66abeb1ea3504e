//! Exhaustive property sweep over every module of a finite Bézout ring up to a
//! size bound.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::decompose::{indecomposable_refine, mu};
use crate::error::{Error, Result};
use crate::goldie::{goldie_bruteforce, goldie_structural};
use crate::module::FpModule;
use crate::oracle::{
    enumerate_submodules, enumerate_submodules_capped, is_indecomposable, mu_bruteforce, vnr_indecomposable_simple_check, FiniteModule,
    FiniteRing, HomSearch, Mode, SeriesSearch, Set, LATTICE_CAP,
};
use crate::par;
use crate::ring::{Elem, Ring};
use crate::series::{normalize_series, peel_series, sequence_predicates, series_from_decomposition, validate_series};

#[derive(Clone, Debug, Serialize)]
pub struct VerifyConfig {
    pub max_size: usize,
    /// Bound for the `μ ≤ ℓ ≤ h` and `g ≤ h` checks.
    pub h_max_size: usize,
    /// Bound for comparing RD and purity on every submodule.
    pub warfield_max_size: usize,
    /// Modules with more submodules than this are skipped by that comparison.
    pub warfield_lattice_cap: usize,
    /// Up to this size purity is decided for every submodule, not only RD ones.
    pub independent_purity_size: usize,
    /// Bound on `N` (and on targets, squared) for the extension check.
    pub injective_max_size: usize,
    pub normalize_samples: usize,
    pub seed: u64,
}

impl VerifyConfig {
    pub fn new(max_size: usize) -> VerifyConfig {
        VerifyConfig {
            max_size,
            h_max_size: max_size.min(128),
            warfield_max_size: max_size.min(256),
            warfield_lattice_cap: 60_000,
            independent_purity_size: 64,
            injective_max_size: max_size.min(32),
            normalize_samples: 100,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyReport {
    pub name: String,
    pub checked: usize,
    pub skipped: usize,
    /// Invariant factors of modules skipped because a cap was exceeded.
    pub skipped_modules: Vec<Vec<String>>,
    /// At most [`FAILURE_CAP`] failure descriptions.
    pub failures: Vec<String>,
    pub failure_count: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub ring: String,
    pub config: VerifyConfig,
    pub modules: usize,
    pub properties: Vec<PropertyReport>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn property(&self, name: &str) -> Option<&PropertyReport> {
        self.properties.iter().find(|p| p.name == name)
    }
}

pub const FAILURE_CAP: usize = 20;

pub const PROPERTIES: &[&str] = &[
    "series_exist",
    "series_length_unique",
    "factor_multiset_unique",
    "prime_multiset_unique",
    "factors_match_decomposition",
    "mu_matches_bruteforce",
    "peel_series_length_is_mu",
    "goldie_structural_matches_bruteforce",
    "goldie_le_length",
    "goldie_eq_length_for_cyclic_sums",
    "mu_le_length_le_h",
    "goldie_le_h",
    "rd_iff_pure",
    "rd_injective_extension",
    "normalize_series",
    "goldie_of_indecomposable_cyclic_is_one",
    "indecomposable_simple_iff_regular",
    "pcs_diagnostics",
];

enum Check {
    Pass,
    Fail(String),
    Skip,
    /// Skipped because an enumeration cap was exceeded.
    Capped(Vec<String>),
}

type Outcomes = Vec<(&'static str, Check)>;

fn check(out: &mut Outcomes, name: &'static str, ok: bool, detail: impl FnOnce() -> String) {
    out.push((name, if ok { Check::Pass } else { Check::Fail(detail()) }));
}

/// Every module `R/(d₁) ⊕ ⋯ ⊕ R/(dₙ)` with `(dₙ) ⊆ ⋯ ⊆ (d₁) ≠ R` and at most
/// `max_size` elements, in a fixed order.
pub fn modules_up_to(ring: &Ring, max_size: usize) -> Result<Vec<FpModule>> {
    ring.require_bezout()?;
    let fr = FiniteRing::from_ring(ring)?;
    let lat = fr.lattice();
    let mut ideals: Vec<(Elem, usize)> = Vec::new();
    for set in &lat.ideals {
        if set.contains(fr.one()) {
            continue;
        }
        let gen = fr.ideal_elem(set).ok_or_else(|| Error::Invariant("ideal without generator".into()))?;
        let size = ring.residue_size(&gen).ok_or(Error::NotFinite)? as usize;
        ideals.push((gen, size));
    }
    let mut out = Vec::new();
    let mut chain = Vec::new();
    extend_chains(ring, &ideals, &mut chain, 1, max_size, &mut out)?;
    Ok(out)
}

fn extend_chains(
    ring: &Ring,
    ideals: &[(Elem, usize)],
    chain: &mut Vec<Elem>,
    size: usize,
    max_size: usize,
    out: &mut Vec<FpModule>,
) -> Result<()> {
    for (d, s) in ideals {
        if size * s > max_size || chain.last().is_some_and(|prev| !ring.ideal_le(d, prev)) {
            continue;
        }
        chain.push(d.clone());
        out.push(FpModule::from_factors(ring, chain)?);
        extend_chains(ring, ideals, chain, size * s, max_size, out)?;
        chain.pop();
    }
    Ok(())
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

fn describe(m: &FpModule) -> String {
    let f: Vec<String> = m.factors().iter().map(|d| format!("R/{}", m.ring().fmt_ideal(d))).collect();
    f.join(" ⊕ ")
}

fn lattice_id(fr: &FiniteRing, gen: &Elem) -> Result<usize> {
    fr.lattice().id(&fr.ideal_set(gen)).ok_or_else(|| Error::Invariant("ideal is missing from the lattice".into()))
}

struct Context<'a> {
    cfg: &'a VerifyConfig,
    fr: Arc<FiniteRing>,
    targets: Vec<FiniteModule>,
}

fn restrictions(src: &FiniteModule, domain: &Set, dst: &FiniteModule, l: &[usize]) -> HashSet<Vec<u32>> {
    HomSearch::new(src, domain, dst, &dst.full()).collect(|phi| Some(l.iter().map(|&x| phi[x]).collect())).into_iter().collect()
}

/// Submodules of `E` on which RD and purity disagree, with the number of
/// submodules compared. Purity is decided for every submodule when
/// `|E| ≤ independent_size`, otherwise only for RD ones since pure implies RD.
pub fn rd_pure_disagreements(fm: &FiniteModule, lattice_cap: usize, independent_size: usize) -> Result<(usize, Vec<String>)> {
    let full = fm.full();
    let subs = enumerate_submodules_capped(fm, &full, lattice_cap)?;
    let independent = fm.len() <= independent_size;
    let bad: Vec<String> = par::map(&subs, |f| {
        let rd = fm.is_rd(&full, f);
        let pure = if rd || independent { fm.is_pure(&full, f) } else { Ok(false) };
        match pure {
            Ok(p) if p == rd => None,
            Ok(p) => Some(format!("submodule of size {} rd {rd} pure {p}", f.count_ones(..))),
            Err(e) => Some(e.to_string()),
        }
    })
    .into_iter()
    .flatten()
    .collect();
    Ok((subs.len(), bad))
}

fn sweep_module(ctx: &Context, m: &FpModule) -> Result<Outcomes> {
    let mut out = Vec::new();
    let name = describe(m);
    let ring = m.ring();
    let fr = &ctx.fr;
    let fm = FiniteModule::from_fp(m, fr)?;
    let full = fm.full();
    let size = fm.len();

    let rd = SeriesSearch::new(&fm, Mode::Rd, true)?.census()?;
    check(&mut out, "series_exist", rd.series_count > 0, || format!("{name}: no RD series"));
    check(&mut out, "series_length_unique", rd.lengths.len() == 1, || format!("{name}: lengths {:?}", rd.lengths));
    check(&mut out, "factor_multiset_unique", rd.factor_multisets.len() == 1, || {
        format!("{name}: {} factor multisets", rd.factor_multisets.len())
    });
    check(&mut out, "prime_multiset_unique", rd.prime_multisets.len() == 1, || {
        format!("{name}: {} prime multisets", rd.prime_multisets.len())
    });
    let pieces = indecomposable_refine(ring, m.factors())?;
    let expected = sorted(pieces.iter().map(|d| lattice_id(fr, d)).collect::<Result<_>>()?);
    check(&mut out, "factors_match_decomposition", rd.factor_multisets.iter().all(|f| *f == expected), || {
        format!("{name}: census {:?} vs decomposition {expected:?}", rd.factor_multisets)
    });
    let ell = pieces.len();

    let mu_b = mu_bruteforce(&fm, &full);
    check(&mut out, "mu_matches_bruteforce", mu(m) == mu_b, || format!("{name}: mu {} vs {mu_b}", mu(m)));
    let peel = peel_series(m).and_then(|s| {
        validate_series(&s)?;
        Ok(s)
    });
    match peel {
        Ok(s) => {
            let inc = sequence_predicates(ring, &s.annihilators)?.increasing;
            check(&mut out, "peel_series_length_is_mu", s.len() == mu_b && inc, || {
                format!("{name}: peel length {} (mu {mu_b}), increasing {inc}", s.len())
            });
        }
        Err(e) => check(&mut out, "peel_series_length_is_mu", false, || format!("{name}: {e}")),
    }

    let g = goldie_structural(m)?;
    let gb = goldie_bruteforce(&fm, &full)?.dimension;
    check(&mut out, "goldie_structural_matches_bruteforce", g == gb, || format!("{name}: {g} vs {gb}"));
    check(&mut out, "goldie_le_length", gb <= ell, || format!("{name}: g {gb} > l {ell}"));
    if fr.is_arithmetic() {
        check(&mut out, "goldie_eq_length_for_cyclic_sums", gb == ell, || format!("{name}: g {gb} != l {ell}"));
    }

    if size <= ctx.cfg.h_max_size {
        let pure = SeriesSearch::new(&fm, Mode::Pure, true)?.census()?;
        match pure.min_goldie_sum {
            Some(h) => {
                check(&mut out, "mu_le_length_le_h", mu_b <= ell && ell <= h, || {
                    format!("{name}: mu {mu_b}, l {ell}, h {h}")
                });
                check(&mut out, "goldie_le_h", gb <= h, || format!("{name}: g {gb} > h {h}"));
            }
            None => check(&mut out, "mu_le_length_le_h", false, || format!("{name}: no pure series")),
        }
    } else {
        out.push(("mu_le_length_le_h", Check::Skip));
        out.push(("goldie_le_h", Check::Skip));
    }

    if size <= ctx.cfg.warfield_max_size {
        match rd_pure_disagreements(&fm, ctx.cfg.warfield_lattice_cap, ctx.cfg.independent_purity_size) {
            Ok((_, bad)) => {
                let bad: Vec<String> = bad.into_iter().map(|b| format!("{name}: {b}")).collect();
                check(&mut out, "rd_iff_pure", bad.is_empty(), || bad.join("; "));
            }
            Err(Error::TooLarge { .. }) => {
                out.push(("rd_iff_pure", Check::Capped(m.factors().iter().map(|d| d.to_string()).collect())))
            }
            Err(e) => return Err(e),
        }
    } else {
        out.push(("rd_iff_pure", Check::Skip));
    }

    if size <= ctx.cfg.injective_max_size {
        let subs = enumerate_submodules(&fm, &full)?;
        let mut bad = Vec::new();
        for l in subs.iter().filter(|l| !fm.is_zero_set(l) && **l != full && fm.is_rd(&full, l)) {
            let elems: Vec<usize> = l.ones().collect();
            for t in &ctx.targets {
                if restrictions(&fm, &full, t, &elems) != restrictions(&fm, l, t, &elems) {
                    bad.push(format!("{name}: a map from an RD submodule of size {} does not extend", elems.len()));
                }
            }
        }
        check(&mut out, "rd_injective_extension", bad.is_empty(), || bad.join("; "));
    }
    Ok(out)
}

fn normalize_samples(cfg: &VerifyConfig, modules: &[FpModule]) -> Outcomes {
    let mut out = Vec::new();
    let pool: Vec<&FpModule> = modules
        .iter()
        .filter(|m| indecomposable_refine(m.ring(), m.factors()).is_ok_and(|p| p.len() > 1))
        .collect();
    if pool.is_empty() {
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let jobs: Vec<(&FpModule, u64)> = (0..cfg.normalize_samples).map(|_| (pool[rng.gen_range(0..pool.len())], rng.gen())).collect();
    let results = par::map(&jobs, |(m, seed)| -> std::result::Result<(), String> {
        let name = describe(m);
        let base = series_from_decomposition(m).map_err(|e| format!("{name}: {e}"))?;
        let mut order: Vec<usize> = (0..base.len()).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(*seed));
        let mut shuffled = base.clone();
        shuffled.generators = order.iter().map(|&i| base.generators[i].clone()).collect();
        shuffled.annihilators = order.iter().map(|&i| base.annihilators[i].clone()).collect();
        validate_series(&shuffled).map_err(|e| format!("{name}: shuffled input invalid: {e}"))?;
        let n = normalize_series(&shuffled).map_err(|e| format!("{name}: {e}"))?;
        validate_series(&n).map_err(|e| format!("{name}: output invalid: {e}"))?;
        let ring = m.ring();
        let preds = sequence_predicates(ring, &n.annihilators).map_err(|e| e.to_string())?;
        let key = |v: &[Elem]| {
            let mut k: Vec<Elem> = v.iter().map(|a| ring.ideal_gen(a)).collect();
            k.sort();
            k
        };
        if !preds.almost_increasing {
            return Err(format!("{name}: output is not almost increasing"));
        }
        if key(&n.annihilators) != key(&shuffled.annihilators) {
            return Err(format!("{name}: factor multiset changed"));
        }
        Ok(())
    });
    for r in results {
        out.push(("normalize_series", match r {
            Ok(()) => Check::Pass,
            Err(e) => Check::Fail(e),
        }));
    }
    out
}

fn ring_checks(ring: &Ring, fr: &Arc<FiniteRing>, max_size: usize) -> Result<Outcomes> {
    let mut out = Vec::new();
    for set in fr.lattice().ideals.iter().filter(|s| !s.contains(fr.one()) && fr.quotient_is_local(s)) {
        let q = FiniteModule::cyclic_quotient(fr, set)?;
        let gen = fr.ideal_elem(set).ok_or_else(|| Error::Invariant("ideal without generator".into()))?;
        let gs = goldie_structural(&FpModule::from_factors(ring, std::slice::from_ref(&gen))?)?;
        let gb = goldie_bruteforce(&q, &q.full())?.dimension;
        check(&mut out, "goldie_of_indecomposable_cyclic_is_one", gs == 1 && gb == 1, || {
            format!("R/{}: structural {gs}, brute force {gb}", ring.fmt_ideal(&gen))
        });
    }
    if fr.is_reduced() {
        let mut gens = 1;
        while gens < 3 && fr.len().pow(gens as u32 + 1) <= LATTICE_CAP {
            gens += 1;
        }
        let rep = vnr_indecomposable_simple_check(ring, gens, max_size.max(fr.len()))?;
        check(&mut out, "indecomposable_simple_iff_regular", rep.counterexamples.is_empty(), || {
            format!("indecomposable non-simple modules {:?}", rep.counterexamples)
        });
    } else {
        // some R/A local of length > 1 is indecomposable and not simple
        let witness = fr.lattice().ideals.iter().filter(|s| fr.quotient_is_local(s)).find_map(|s| {
            let q = FiniteModule::cyclic_quotient(fr, s).ok()?;
            let simple = enumerate_submodules(&q, &q.full()).ok()?.len() == 2;
            (!simple && is_indecomposable(&q, &q.full()).ok()?).then_some(())
        });
        check(&mut out, "indecomposable_simple_iff_regular", witness.is_some(), || {
            "non-regular ring without an indecomposable non-simple cyclic module".into()
        });
    }
    let d = fr.pcs_diagnostics();
    check(&mut out, "pcs_diagnostics", d.is_pcs_candidate, || format!("{d:?}"));
    Ok(out)
}

/// Runs every property over every module of `ring` with at most
/// `cfg.max_size` elements.
pub fn verify(ring: &Ring, cfg: &VerifyConfig) -> Result<VerifyReport> {
    let fr = FiniteRing::from_ring(ring)?;
    let modules = modules_up_to(ring, cfg.max_size)?;
    let mut targets = Vec::new();
    let target_cap = (cfg.injective_max_size as f64).sqrt() as usize;
    for m in modules.iter().filter(|m| m.size().is_some_and(|s| s as usize <= target_cap.max(2))) {
        targets.push(FiniteModule::from_fp(m, &fr)?);
    }
    let ctx = Context { cfg, fr: fr.clone(), targets };
    let per_module: Vec<Result<Outcomes>> = par::map(&modules, |m| sweep_module(&ctx, m));
    let mut all: Outcomes = Vec::new();
    for r in per_module {
        all.extend(r?);
    }
    all.extend(normalize_samples(cfg, &modules));
    all.extend(ring_checks(ring, &fr, cfg.max_size)?);

    let mut by_name: BTreeMap<&str, PropertyReport> = BTreeMap::new();
    for (name, c) in all {
        let p = by_name.entry(name).or_insert_with(|| PropertyReport {
            name: name.to_string(),
            checked: 0,
            skipped: 0,
            skipped_modules: Vec::new(),
            failures: Vec::new(),
            failure_count: 0,
            passed: true,
        });
        match c {
            Check::Pass => p.checked += 1,
            Check::Skip => p.skipped += 1,
            Check::Capped(f) => {
                p.skipped += 1;
                p.skipped_modules.push(f);
            }
            Check::Fail(msg) => {
                p.checked += 1;
                p.failure_count += 1;
                p.passed = false;
                if p.failures.len() < FAILURE_CAP {
                    p.failures.push(msg);
                }
            }
        }
    }
    let properties: Vec<PropertyReport> = PROPERTIES.iter().filter_map(|n| by_name.remove(n)).collect();
    let passed = properties.iter().all(|p| p.passed);
    Ok(VerifyReport { ring: ring.to_string(), config: cfg.clone(), modules: modules.len(), properties, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z4_modules() {
        let r = Ring::zmod(4).unwrap();
        let ms = modules_up_to(&r, 16).unwrap();
        let mut sizes: Vec<u128> = ms.iter().map(|m| m.size().unwrap()).collect();
        sizes.sort();
        // Z/2, Z/4, Z/2², Z/4⊕Z/2, Z/2³, Z/4², Z/4⊕Z/2², Z/2⁴
        assert_eq!(sizes, vec![2, 4, 4, 8, 8, 16, 16, 16]);
    }

    #[test]
    fn small_sweep_passes() {
        let r = Ring::zmod(12).unwrap();
        let rep = verify(&r, &VerifyConfig::new(24)).unwrap();
        for p in &rep.properties {
            assert!(p.passed, "{}: {:?}", p.name, p.failures);
        }
        assert!(rep.property("rd_iff_pure").unwrap().checked > 0);
        assert_eq!(rep.property("normalize_series").unwrap().checked, 100);
    }
}
