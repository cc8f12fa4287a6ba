use thiserror::Error;

/// Errors raised by the library.
///
/// Variants are grouped by how a caller is expected to react: precondition
/// violations (the input does not satisfy an operation's contract), parse
/// failures, and internal invariant failures (a bug, or a claim that an exact
/// check refuted).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero direction")]
    ZeroDirection,
    #[error("input vectors are linearly dependent")]
    DependentVectors,
    #[error("input is not a lattice basis of span ∩ ℤ^d")]
    NotLatticeBasis,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("lineality present; reduce first")]
    NotLineFree,
    #[error("polyhedron is empty")]
    Empty,
    #[error("unbounded")]
    Unbounded,
    #[error("polyhedron is not full-dimensional")]
    NotFullDimensional,
    #[error("not lattice-free")]
    NotLatticeFree,
    #[error("max-facet-width is infinite")]
    InfiniteWidth,
    #[error("incomparable partition")]
    PartitionMismatch,
    #[error("thinness bound violated: k = {k} < 2d = {}", 2 * .d)]
    ThinnessBound { d: usize, k: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("internal invariant failed: {0}")]
    Invariant(String),
}

impl Error {
    /// True for errors caused by input that violates an operation's contract.
    pub fn is_precondition(&self) -> bool {
        !matches!(self, Error::Parse { .. } | Error::Invariant(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
