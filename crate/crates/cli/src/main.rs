use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use purecomp_core::counterexample::{rd_injectivity_failure, rd_series_obstruction, rd_vs_pure, WitnessRing};
use purecomp_core::decompose::{canonical_form, diagonal_reduce, indecomposable_refine, mu};
use purecomp_core::goldie::{goldie_bruteforce, goldie_structural};
use purecomp_core::matrix::Matrix;
use purecomp_core::oracle::{FiniteModule, FiniteRing, Mode, SeriesSearch};
use purecomp_core::parse::{parse_document, parse_ring, InputDocument, NamedMatrix};
use purecomp_core::series::{
    g_of_series, normalize_series, prime_sequence, sequence_predicates, series_from_decomposition, stage,
    CompositionSeries,
};
use purecomp_core::verify::{verify, VerifyConfig};
use purecomp_core::{Error, FpModule, Ring};

#[derive(Parser)]
#[command(name = "purecomp", version, about = "Exact module decomposition and composition-series tools")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Diagonal reduction U·A·V = D of every matrix in a document.
    Reduce { file: PathBuf },
    /// Canonical form and indecomposable summands of a module.
    Decompose {
        file: PathBuf,
        #[arg(long)]
        module: Option<String>,
    },
    /// Composition series with indecomposable cyclic factors.
    Series {
        file: PathBuf,
        #[arg(long)]
        module: Option<String>,
        /// List every series (finite modules only).
        #[arg(long)]
        enumerate: bool,
        /// Rewrite the series so its annihilators are almost increasing.
        #[arg(long)]
        normalize: bool,
        #[arg(long, default_value = "pure")]
        mode: Mode,
        /// Most series listed by --enumerate.
        #[arg(long, default_value_t = 1000)]
        cap: usize,
    },
    /// Goldie dimension.
    Goldie {
        file: PathBuf,
        #[arg(long)]
        module: Option<String>,
        /// Include independent cyclic generators with essential sum.
        #[arg(long)]
        witness: bool,
    },
    /// Run the property suite over every module of a finite ring up to a size.
    Verify {
        ring: String,
        #[arg(long, default_value_t = 64)]
        max_size: usize,
    },
    /// Counterexamples over F_q[x,y]/(x², xy, y²).
    Counterexample {
        #[arg(long, default_value_t = 2)]
        q: u64,
        #[arg(long)]
        part: Option<Part>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Part {
    RdSeries,
    RdVsPure,
    RdInjective,
}

/// Failure kinds mapped to exit codes.
enum Failure {
    /// A checked property does not hold.
    Property(Value),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<Value, Failure>;

fn read_document(path: &Path) -> Result<InputDocument, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_document(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn pick_module<'a>(doc: &'a InputDocument, name: Option<&str>) -> Result<&'a NamedMatrix, Failure> {
    match name {
        Some(n) => Ok(doc.module(n)?),
        None => doc.modules.first().ok_or_else(|| Failure::Usage("the document declares no module".into())),
    }
}

fn load_module(path: &Path, name: Option<&str>) -> Result<(String, FpModule), Failure> {
    let doc = read_document(path)?;
    let m = pick_module(&doc, name)?;
    let ring = Ring::new(m.ring.clone())?;
    Ok((m.name.clone(), FpModule::new(&ring, m.matrix.clone())?))
}

fn strings(ring: &Ring, ideals: &[purecomp_core::Elem]) -> Vec<String> {
    ideals.iter().map(|d| ring.fmt_ideal(d)).collect()
}

fn matrix_json(m: &Matrix) -> Value {
    json!(m.display_rows())
}

fn reduce(file: &Path) -> Outcome {
    let doc = read_document(file)?;
    let mut out = Vec::new();
    for m in doc.matrices.iter().chain(&doc.modules) {
        let ring = Ring::new(m.ring.clone())?;
        let r = diagonal_reduce(&ring, &m.matrix)?;
        eprintln!("{}: diagonal {:?}", m.name, r.diagonal(&ring).iter().map(|d| d.to_string()).collect::<Vec<_>>());
        out.push(json!({
            "name": m.name,
            "ring": ring.to_string(),
            "U": matrix_json(&r.u),
            "D": matrix_json(&r.d),
            "V": matrix_json(&r.v),
        }));
    }
    Ok(json!(out))
}

fn decompose(file: &Path, module: Option<&str>) -> Outcome {
    let (name, m) = load_module(file, module)?;
    let ring = m.ring();
    let canonical = canonical_form(&m);
    let pieces = indecomposable_refine(ring, m.factors())?;
    let report = m.report();
    eprintln!("{name}: canonical {:?}, {} indecomposable summands", strings(ring, &canonical), pieces.len());
    Ok(json!({
        "name": name,
        "ring": report.ring,
        "invariant_factors": report.invariant_factors,
        "free_rank": report.free_rank,
        "canonical": strings(ring, &canonical),
        "indecomposable": strings(ring, &pieces),
        "mu": mu(&m),
    }))
}

fn series_json(s: &CompositionSeries) -> Result<Value, Failure> {
    let ring = s.ring();
    let preds = sequence_predicates(ring, &s.annihilators)?;
    let mut v = json!({
        "mode": s.mode,
        "length": s.len(),
        "generators": s.generators.iter().map(|x| x.iter().map(|e| e.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "annihilators": strings(ring, &s.annihilators),
        "primes": strings(ring, &prime_sequence(s)?),
        "indecomposable_factors": s.indecomposable_factors()?,
        "g": g_of_series(s)?,
        "predicates": preds,
    });
    if s.module.is_finite() {
        let st = stage(s)?;
        v["chain"] = json!(st.chain.iter().map(|c| c.ones().collect::<Vec<_>>()).collect::<Vec<_>>());
    }
    Ok(v)
}

fn series(file: &Path, module: Option<&str>, enumerate: bool, normalize: bool, mode: Mode, cap: usize) -> Outcome {
    let (name, m) = load_module(file, module)?;
    let mut s = series_from_decomposition(&m)?;
    s.mode = mode;
    let mut out = json!({ "name": name, "series": series_json(&s)? });
    if normalize {
        let n = normalize_series(&s)?;
        out["normalized"] = series_json(&n)?;
    }
    if enumerate {
        let fr = FiniteRing::from_ring(m.ring())?;
        let fm = FiniteModule::from_fp(&m, &fr)?;
        let search = SeriesSearch::new(&fm, mode, true)?;
        let census = search.census()?;
        let lat = fr.lattice();
        let ideal = |id: usize| fr.ideal_elem(&lat.ideals[id]).map_or("?".to_string(), |g| m.ring().fmt_ideal(&g));
        let listed = match search.enumerate(cap) {
            Ok(all) => json!(all
                .iter()
                .map(|f| json!({
                    "chain": f.chain.iter().map(|c| c.ones().collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "annihilators": f.ideals.iter().map(|&i| ideal(i)).collect::<Vec<_>>(),
                }))
                .collect::<Vec<_>>()),
            Err(Error::TooLarge { .. }) => Value::Null,
            Err(e) => return Err(e.into()),
        };
        eprintln!("{name}: {} series, lengths {:?}", census.series_count, census.lengths);
        out["enumeration"] = json!({
            "count": census.series_count.to_string(),
            "lengths": census.lengths,
            "factor_multisets": census.factor_multisets.iter().map(|f| f.iter().map(|&i| ideal(i)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "prime_multisets": census.prime_multisets.iter().map(|f| f.iter().map(|&i| ideal(i)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "h": census.min_goldie_sum,
            "series": listed,
        });
    } else {
        eprintln!("{name}: series of length {}", s.len());
    }
    Ok(out)
}

fn goldie(file: &Path, module: Option<&str>, witness: bool) -> Outcome {
    let (name, m) = load_module(file, module)?;
    let g = goldie_structural(&m)?;
    let mut out = json!({ "name": name, "dimension": g });
    if m.is_finite() {
        let fr = FiniteRing::from_ring(m.ring())?;
        let fm = FiniteModule::from_fp(&m, &fr)?;
        let rep = goldie_bruteforce(&fm, &fm.full())?;
        if rep.dimension != g {
            return Err(Failure::Property(json!({ "name": name, "structural": g, "bruteforce": rep.dimension })));
        }
        out["bruteforce"] = json!(rep.dimension);
        if witness {
            let gens: Vec<Vec<String>> =
                rep.witness.iter().map(|&x| fm.coords(x).iter().map(|e| e.to_string()).collect()).collect();
            out["witness"] = json!(gens);
        }
    }
    eprintln!("{name}: Goldie dimension {g}");
    Ok(out)
}

fn run_verify(spec: &str, max_size: usize) -> Outcome {
    let ring = Ring::new(parse_ring(spec)?)?;
    let rep = verify(&ring, &VerifyConfig::new(max_size))?;
    for p in &rep.properties {
        eprintln!(
            "{:<40} {} ({} checked, {} skipped)",
            p.name,
            if p.passed { "ok" } else { "FAILED" },
            p.checked,
            p.skipped
        );
    }
    let v = serde_json::to_value(&rep).map_err(|e| Failure::Usage(e.to_string()))?;
    if rep.passed {
        Ok(v)
    } else {
        Err(Failure::Property(v))
    }
}

fn counterexample(q: u64, part: Option<Part>) -> Outcome {
    let w = WitnessRing::new(q)?;
    let mut out = json!({ "q": q, "ring": w.facts() });
    let mut ok = true;
    let want = |p: Part| part.is_none_or(|x| x == p);
    if want(Part::RdSeries) {
        let r = rd_series_obstruction(&w)?;
        ok &= r.indecomposable && r.no_rd_series && r.mu == 2;
        eprintln!("rd-series: |M| = {}, indecomposable {}, RD series {}", r.module_size, r.indecomposable, r.rd_series_count);
        out["rd_series"] = json!(r);
    }
    if want(Part::RdVsPure) {
        let r = rd_vs_pure(&w)?;
        ok &= r.separated;
        eprintln!("rd-vs-pure: rd {}, pure {}", r.rd, r.pure);
        out["rd_vs_pure"] = json!(r);
    }
    if want(Part::RdInjective) {
        let r = rd_injectivity_failure(&w)?;
        ok &= r.submodule_rd && !r.phi_extends && r.socle.isomorphic_to_residue_field && r.control_all_extend;
        eprintln!("rd-injective: phi extends {}, {} restrictions of {} maps", r.phi_extends, r.restricted_to_l, r.hom_l_s);
        out["rd_injective"] = json!(r);
    }
    if ok {
        Ok(out)
    } else {
        Err(Failure::Property(out))
    }
}

#[cfg(feature = "parallel")]
fn configure_threads() -> Result<(), String> {
    if let Ok(v) = std::env::var("PURECOMP_THREADS") {
        let n: usize = v.parse().map_err(|_| format!("PURECOMP_THREADS must be a positive integer, got `{v}`"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global().map_err(|e| e.to_string())?;
    }
    Ok(())
}

#[cfg(not(feature = "parallel"))]
fn configure_threads() -> Result<(), String> {
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let outcome = match &cli.command {
        Command::Reduce { file } => reduce(file),
        Command::Decompose { file, module } => decompose(file, module.as_deref()),
        Command::Series { file, module, enumerate, normalize, mode, cap } => {
            series(file, module.as_deref(), *enumerate, *normalize, *mode, *cap)
        }
        Command::Goldie { file, module, witness } => goldie(file, module.as_deref(), *witness),
        Command::Verify { ring, max_size } => run_verify(ring, *max_size),
        Command::Counterexample { q, part } => counterexample(*q, *part),
    };
    match outcome {
        Ok(v) => {
            println!("{}", serde_json::to_string_pretty(&v).expect("json values serialize"));
            ExitCode::SUCCESS
        }
        Err(Failure::Property(v)) => {
            println!("{}", serde_json::to_string_pretty(&v).expect("json values serialize"));
            eprintln!("property violated");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
