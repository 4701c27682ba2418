use thiserror::Error;

/// Errors surfaced by construction, arithmetic and solver routines.
///
/// Every fallible operation in the crate returns [`Result`]; panics are
/// reserved for broken internal invariants.
#[derive(Debug, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("pole at evaluation point")]
    PoleAtPoint,

    #[error("parameter `{0}` has no assignment")]
    UnboundParameter(String),

    #[error("unsupported group specification: {0}")]
    UnsupportedSpec(String),

    #[error("group construction invariant violated: {0}")]
    ConstructionInvariantViolated(String),

    #[error("not a transversal of the centre: {0}")]
    NotATransversal(String),

    #[error("elements belong to different algebra contexts")]
    ContextMismatch,

    #[error("operation requires a real reflection group in an orthonormal basis")]
    NotRealGroup,

    #[error("element is not of degree zero")]
    NotDegreeZero,

    #[error("exact division failed")]
    DivisionFailure,

    #[error("rewriting did not terminate: {0}")]
    NonTermination(String),

    #[error("stabilizer of the chosen point is not trivial")]
    StabilizerNotTrivial,

    #[error("orbit data vanishes at the chosen point")]
    ZeroOrbit,

    #[error("degree bound {requested} exceeds the configured maximum {max}")]
    DegreeTooLarge { requested: usize, max: usize },

    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
