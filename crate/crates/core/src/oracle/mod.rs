//! Exhaustive ground truth on finite modules.

pub mod hom;
pub mod lattice;
pub mod module;
pub mod ring;
pub mod series;
pub mod vnr;

pub use hom::{hom_space, is_homomorphism, isomorphism, module_isomorphic, retraction, HomSearch};
pub use lattice::{enumerate_submodules, enumerate_submodules_capped, is_indecomposable, mu_bruteforce, LATTICE_CAP};
pub use module::{FiniteModule, Set};
pub use ring::{FiniteRing, LocalFactor, PcsDiagnostics};
pub use series::{Census, FiniteSeries, Mode, SeriesSearch};
pub use vnr::{vnr_indecomposable_simple_check, VnrReport};
