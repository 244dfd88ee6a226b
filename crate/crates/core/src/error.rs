//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    // Field and matrix algebra.
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("element has no inverse (zero or not coprime with modulus)")]
    NonInvertible,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("evaluation points must be pairwise distinct and disjoint: {0}")]
    InvalidPoints(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    // Parameter validation.
    #[error("node count {n} is not a multiple of rack count {r}")]
    NotMultiple { n: usize, r: usize },
    #[error("repair degree d={d} out of range: must satisfy {m} = m <= d <= r-1 = {max}")]
    DegreeOutOfRange { d: usize, m: usize, max: usize },
    #[error("reconstruction threshold k={k} out of range: must satisfy 1 <= k < n = {n}")]
    ThresholdOutOfRange { k: usize, n: usize },

    // Trade-off curves.
    #[error("bandwidth {0} is below the minimum feasible value {1}")]
    BelowMinimumBandwidth(String, String),

    // Flow graphs.
    #[error("invalid repair/collector scenario: {0}")]
    InvalidScenario(String),

    // Code constructions.
    #[error("field of size {q} too small: need at least {need} elements")]
    FieldTooSmall { q: u64, need: u64 },
    #[error("parameters do not admit this construction: {0}")]
    NotConstructible(String),
    #[error("homogeneous parameters (t = 0): use an MSR construction directly")]
    HomogeneousUseMsr,
    #[error("randomized search failed after {attempts} attempts ({report})")]
    SearchFailed { attempts: usize, report: String },
    #[error("invalid helper set: {0}")]
    InvalidHelpers(String),
    #[error("node {0} is not repairable with optimal bandwidth by this construction")]
    UnsupportedRepairTarget(usize),
    #[error("unsupported parameter regime: {0}")]
    UnsupportedRegime(String),

    // Codec and persistence.
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("no code object available; run a search first and pass the result")]
    NeedSearch,
    #[error("corrupt chunk {path}: {reason}")]
    CorruptChunk { path: String, reason: String },
    #[error("decode failed: {0}")]
    DecodeFailed(String),
    #[error("malformed code object container: {0}")]
    BadContainer(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
