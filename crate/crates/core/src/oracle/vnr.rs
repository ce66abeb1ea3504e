use serde::Serialize;

use super::lattice::{enumerate_submodules, is_indecomposable};
use super::module::FiniteModule;
use super::ring::FiniteRing;
use crate::error::{Error, Result};
use crate::ring::Ring;

#[derive(Clone, Debug, Serialize)]
pub struct VnrReport {
    pub ring: String,
    pub max_generators: usize,
    pub modules_checked: usize,
    pub indecomposable: usize,
    pub simple: usize,
    /// Indecomposable modules that are not simple, as `(generators, size)`.
    pub counterexamples: Vec<(usize, usize)>,
}

/// Checks that every indecomposable quotient `R^m/K`, `m ≤ max_generators`,
/// of size at most `size_bound` is simple, exhausting all submodules `K`.
pub fn vnr_indecomposable_simple_check(ring: &Ring, max_generators: usize, size_bound: usize) -> Result<VnrReport> {
    let fr = FiniteRing::from_ring(ring)?;
    if !fr.is_reduced() {
        return Err(Error::NotVnr(format!("{ring} has nonzero nilpotent elements")));
    }
    let mut report = VnrReport {
        ring: ring.to_string(),
        max_generators,
        modules_checked: 0,
        indecomposable: 0,
        simple: 0,
        counterexamples: Vec::new(),
    };
    for m in 1..=max_generators {
        let free = FiniteModule::free(&fr, m)?;
        for k in enumerate_submodules(&free, &free.full())? {
            let size = free.len() / k.count_ones(..);
            if size == 1 || size > size_bound {
                continue;
            }
            let (q, _) = free.quotient(&free.full(), &k)?;
            report.modules_checked += 1;
            if !is_indecomposable(&q, &q.full())? {
                continue;
            }
            report.indecomposable += 1;
            if enumerate_submodules(&q, &q.full())?.len() == 2 {
                report.simple += 1;
            } else {
                report.counterexamples.push((m, size));
            }
        }
    }
    Ok(report)
}
