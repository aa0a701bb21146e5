use thiserror::Error;

/// Errors raised by the character engines, the root-system registry and the
/// OPE machinery.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("series is not a unit: {0}")]
    NotAUnit(String),
    #[error("series is identically zero")]
    ZeroSeries,
    #[error("unknown root system label `{0}`")]
    UnknownLabel(String),
    #[error("unknown nilpotent orbit `{orbit}` for {algebra}")]
    UnknownOrbit { algebra: String, orbit: String },
    #[error("grading invariant violated: {0}")]
    InvariantViolation(String),
    #[error("no ξ vector is defined for {0}")]
    NoXiDefined(String),
    #[error("Gram matrix is singular")]
    SingularGram,
    #[error("Weyl group closure exceeded {0} elements")]
    GroupTooLarge(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("normalization failed: lowest coefficient is {0}, expected 1")]
    NormalizationFailure(String),
    #[error("ν is rational for c = {0}; linkage scan only supports irrational ν")]
    RationalNu(String),
    #[error("character exceeds the universal bound at weight {weight}: {actual} > {bound}")]
    InconsistentCharacter { weight: i64, actual: String, bound: String },
    #[error("state of weight {0} lies outside the computable window")]
    WeightOverflow(i64),
    #[error("unknown-degree overflow: product has degree {0} > 2")]
    DegreeOverflow(usize),
    #[error("constraint system is inconsistent: {0}")]
    Inconsistent(String),
    #[error("quadratic case analysis unresolved: {0}")]
    UnresolvedBranch(String),
    #[error("nonzero residual in {0}")]
    NonzeroResidual(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
