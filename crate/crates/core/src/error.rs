use thiserror::Error;

/// Errors raised by the library. The variant name is what the CLI prints
/// on stderr, so keep them stable.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("track {track} resumes after padding at position {position}")]
    NonMonotonePadding { track: usize, position: usize },

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("automaton is not deterministic")]
    NotDeterministic,

    #[error("automaton has {0} tracks, more than the supported maximum")]
    TooManyTracks(usize),

    #[error("invalid slot map {map:?} for target arity {target}")]
    BadSlotMap { map: Vec<usize>, target: usize },

    #[error("syntax error at byte {position}: {message}")]
    SyntaxError { position: usize, message: String },

    #[error("unknown relation `{0}`")]
    UnknownRelation(String),

    #[error("formula is not a sentence; free variables: {0:?}")]
    NotASentence(Vec<String>),

    #[error("closure not certified up to k = {0}")]
    ClosureBudgetExceeded(usize),

    #[error("{pattern} connection from {source_set} to {target_set} is partial (witness edge {witness})")]
    ConnectionViolation {
        pattern: String,
        source_set: String,
        target_set: String,
        witness: String,
    },

    #[error("seed element {0} is used twice")]
    SeedOverlap(String),

    #[error("extracted foundational relation failed validation: {0}")]
    ValidationFailed(String),

    #[error("connections {0} and {1} are not composable")]
    NotComposable(String, String),

    #[error("relation is not a quasi-order")]
    NotAQuasiOrder,

    #[error("seed {0} has an S+inf/S-inf self-connection without the matching S+1/S-1")]
    MixedSelfConnection(usize),

    #[error("relation is not an equivalence relation")]
    NotEquivalence,

    #[error("bad template: {0}")]
    BadTemplate(String),

    #[error("relation is not a tournament")]
    NotATournament,

    #[error("finite class size bound not found up to k = {0}")]
    BoundSearchBudgetExceeded(usize),

    #[error("relation is not a partial map")]
    NotAPartialMap,

    #[error("inconsistent re-encoding parameters: {0}")]
    BadEncoding(String),

    #[error("parse error on line {line}: {message}")]
    Format { line: usize, message: String },
}

impl Error {
    /// Stable name of the variant.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NonMonotonePadding { .. } => "NonMonotonePadding",
            Error::ArityMismatch { .. } => "ArityMismatch",
            Error::NotDeterministic => "NotDeterministic",
            Error::TooManyTracks(_) => "TooManyTracks",
            Error::BadSlotMap { .. } => "BadSlotMap",
            Error::SyntaxError { .. } => "SyntaxError",
            Error::UnknownRelation(_) => "UnknownRelation",
            Error::NotASentence(_) => "NotASentence",
            Error::ClosureBudgetExceeded(_) => "ClosureBudgetExceeded",
            Error::ConnectionViolation { .. } => "ConnectionViolation",
            Error::SeedOverlap(_) => "SeedOverlap",
            Error::ValidationFailed(_) => "ValidationFailed",
            Error::NotComposable(..) => "NotComposable",
            Error::NotAQuasiOrder => "NotAQuasiOrder",
            Error::MixedSelfConnection(_) => "MixedSelfConnection",
            Error::NotEquivalence => "NotEquivalence",
            Error::BadTemplate(_) => "BadTemplate",
            Error::NotATournament => "NotATournament",
            Error::BoundSearchBudgetExceeded(_) => "BoundSearchBudgetExceeded",
            Error::NotAPartialMap => "NotAPartialMap",
            Error::BadEncoding(_) => "BadEncoding",
            Error::Format { .. } => "FormatError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_arity(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::ArityMismatch { expected, found })
    }
}
