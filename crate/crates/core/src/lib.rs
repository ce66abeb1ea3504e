//! Exact decomposition of finitely presented modules over concrete Bézout
//! rings, pure and RD composition series, Goldie dimension, and exhaustive
//! oracles on finite modules.
pub mod counterexample;
pub mod decompose;
pub mod error;
pub mod goldie;
pub mod matrix;
pub mod module;
pub mod oracle;
pub mod par;
pub mod parse;
pub mod ring;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use module::FpModule;
pub use ring::{Comparison, Elem, ElemRing, Ring, RingDescriptor};
