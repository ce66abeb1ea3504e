use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),
    #[error("ring is not finite")]
    NotFinite,
    #[error("{what} of size {size} exceeds the cap {cap}")]
    TooLarge { what: &'static str, size: usize, cap: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("zero module")]
    ZeroModule,
    #[error("subset is not a submodule")]
    NotASubmodule,
    #[error("ideal sequence is not almost totally ordered")]
    NotAlmostTotallyOrdered,
    #[error("normalization reached case (e) at stage {stage}: annihilators are not almost totally ordered")]
    CaseEUnreachable { stage: usize },
    #[error("ring is not von Neumann regular: {0}")]
    NotVnr(String),
    #[error("no witness found below the size cap")]
    SearchExhausted,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid value: {0}")]
    InvalidValue(String),
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unknown ring kind `{0}`")]
    UnknownRingKind(String),
    #[error("bad matrix shape: {0}")]
    BadMatrixShape(String),
    #[error("undefined name `{0}`")]
    UnknownName(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
