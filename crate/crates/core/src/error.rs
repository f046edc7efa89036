use thiserror::Error;

/// Errors raised by ring arithmetic, form algebra and the descent algorithms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different rings")]
    MixedRings,
    #[error("divisor is not monic")]
    NonMonicDivisor,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("degree {degree} exceeds the configured factorization bound {bound}")]
    DegreeBoundExceeded { degree: usize, bound: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is reducible")]
    Reducible,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("element does not belong to the ring: {0}")]
    InvalidElement(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("expected {expected} values, found {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unsupported ring homomorphism: {0}")]
    UnsupportedHom(String),
    #[error("operation requires a field")]
    NotAField,
    #[error("form is singular: {0}")]
    Singular(String),
    #[error("form is not regular")]
    NotRegular,
    #[error("submodule is not totally isotropic")]
    NotTotallyIsotropic,
    #[error("submodule is not complemented")]
    NotComplemented,
    #[error("isotropy could not be decided within the search bound")]
    UndecidableAnisotropy,
    #[error("rank {rank} is too small (need at least {needed})")]
    RankTooSmall { rank: usize, needed: usize },
    #[error("form is not isotropic over the base")]
    NotIsotropic,
    #[error("extension degree one is handled as the base case")]
    DegreeOne,
    #[error("extension degree {0} is even")]
    EvenDegree(usize),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("factorization bound exceeded over Q")]
    FactorizationBound,
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    #[error("leading coefficient is not a unit: {0}")]
    LeadingCoeffNotUnit(String),
    #[error("extension does not have constant degree")]
    NonConstantDegree,
    #[error("unsupported etale presentation: {0}")]
    UnsupportedEtalePresentation(String),
    #[error("q + <-a> is singular")]
    SingularAugmented,
    #[error("residue witness is a singular point of the quadric")]
    SingularPoint,
    #[error("input witness is not isotropic")]
    NotIsotropicInput,
    #[error("rank mismatch: {0}")]
    RankMismatch(String),
    #[error("residue complement meets the submodule")]
    NotTransverse,
    #[error("search bound exceeded")]
    SearchBoundExceeded,
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
