use thiserror::Error;

/// Errors surfaced by measure operations, system construction, and estimators.
///
/// Variants are grouped by failure class so callers (notably the CLI) can map
/// them onto exit codes: invalid inputs, resource caps, and numerical
/// certification failures are distinguishable without string matching.
#[derive(Debug, Error)]
pub enum Error {
    #[error("phase space mismatch: {0}")]
    PhaseSpaceMismatch(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("empty test dictionary")]
    EmptyDictionary,

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("map is not hyperbolic: {0}")]
    NotHyperbolic(String),

    #[error("integer overflow during {0}")]
    Overflow(&'static str),

    #[error("invalid system: {0}")]
    InvalidSystem(String),

    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    #[error("illegal word {0:?} for this shift")]
    IllegalWord(String),

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error(
        "resource cap exceeded: {requested} leaves requested, cap {cap} (pass force to override)"
    )]
    ResourceCap { requested: f64, cap: u64 },

    #[error("perturbation too large: {0}")]
    EpsilonTooLarge(String),

    #[error("oracle cannot integrate {0}")]
    UnsupportedPairing(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
