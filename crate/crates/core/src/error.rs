use thiserror::Error;

/// Every failure the library can report.
///
/// Variant names are part of the command-line contract: the CLI prints them
/// verbatim so scripts can match on the failure kind.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("InvalidArgument: {0}")]
    InvalidArgument(String),

    #[error("DegenerateInput: {0}")]
    DegenerateInput(String),

    #[error(
        "SingularMatrix: pivot {pivot:.3e} at column {column} is below the singularity threshold"
    )]
    SingularMatrix { column: usize, pivot: f64 },

    #[error("RootCountMismatch: expected {expected} roots in ({lo:.6e}, {hi:.6e}), found {found}")]
    RootCountMismatch {
        expected: usize,
        found: usize,
        lo: f64,
        hi: f64,
    },

    #[error("ApproximantMissing: the [{m}/{n}] Pade approximant does not exist at this precision ({reason})")]
    ApproximantMissing { m: usize, n: usize, reason: String },

    #[error("PoleEvaluation: denominator vanishes at z = {z}")]
    PoleEvaluation { z: String },

    #[error("MultiplePole: poles {first:.12e} and {second:.12e} coincide within tolerance")]
    MultiplePole { first: f64, second: f64 },

    #[error("InvarianceViolation: max deviation {deviation:.3e} exceeds {tolerance:.3e}")]
    InvarianceViolation { deviation: f64, tolerance: f64 },

    #[error("NotAStieltjesSequence: {0}")]
    NotAStieltjesSequence(String),

    #[error("OutsideStrip: {0}")]
    OutsideStrip(String),

    #[error("StripTooNarrow: rho = {rho} must exceed 1 for psi(1) to be finite")]
    StripTooNarrow { rho: String },

    #[error("ZeroNodeAmbiguity: node {node:.3e} is too close to zero to classify")]
    ZeroNodeAmbiguity { node: f64 },

    #[error("VariantUnavailable: {0}")]
    VariantUnavailable(String),

    #[error("NonpositiveGaussian: Gaussian coefficient {value:.6e} is not positive (n = {n})")]
    NonpositiveGaussian { value: f64, n: usize },

    #[error("ComplexPoleRoots: quadratic for pole {pole} has non-real roots")]
    ComplexPoleRoots { pole: String },

    #[error("GridInsufficient: tail estimate {tail:.3e} exceeds tolerance {tolerance:.3e}")]
    GridInsufficient { tail: f64, tolerance: f64 },

    #[error("MartingaleViolated: |psi(1) - r| = {gap:.3e}")]
    MartingaleViolated { gap: f64 },

    #[error("NotALaplaceExponent: {0}")]
    NotALaplaceExponent(String),

    #[error("ParseError: {0}")]
    Parse(String),
}

impl Error {
    /// Short variant name, as printed by the CLI.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::DegenerateInput(_) => "DegenerateInput",
            Error::SingularMatrix { .. } => "SingularMatrix",
            Error::RootCountMismatch { .. } => "RootCountMismatch",
            Error::ApproximantMissing { .. } => "ApproximantMissing",
            Error::PoleEvaluation { .. } => "PoleEvaluation",
            Error::MultiplePole { .. } => "MultiplePole",
            Error::InvarianceViolation { .. } => "InvarianceViolation",
            Error::NotAStieltjesSequence(_) => "NotAStieltjesSequence",
            Error::OutsideStrip(_) => "OutsideStrip",
            Error::StripTooNarrow { .. } => "StripTooNarrow",
            Error::ZeroNodeAmbiguity { .. } => "ZeroNodeAmbiguity",
            Error::VariantUnavailable(_) => "VariantUnavailable",
            Error::NonpositiveGaussian { .. } => "NonpositiveGaussian",
            Error::ComplexPoleRoots { .. } => "ComplexPoleRoots",
            Error::GridInsufficient { .. } => "GridInsufficient",
            Error::MartingaleViolated { .. } => "MartingaleViolated",
            Error::NotALaplaceExponent(_) => "NotALaplaceExponent",
            Error::Parse(_) => "ParseError",
        }
    }

    /// Whether the error is a rejected input rather than a numerical failure.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidArgument(_) | Error::Parse(_) | Error::DegenerateInput(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
