use thiserror::Error;

/// Crate-wide error type.
///
/// Variants are grouped roughly by origin: algebra (mixed instances, missing
/// generators), machines (bounds), logic (assignments, caps) and the parsers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("elements belong to different semiring instances: {0} vs {1}")]
    MixedSemiring(String, String),

    #[error("semiring {0} is not finitely generated")]
    NotFinitelyGenerated(String),

    #[error("generator index g{index} out of range: instance has {count} generators")]
    GeneratorIndex { index: usize, count: usize },

    #[error("step bound {0} reached with a successor configuration still available")]
    BoundExceeded(u64),

    #[error("machine declares no polynomial step bound and none was supplied")]
    MissingBound,

    #[error("declared bound is too small: f({n}) = {f} but at least {need} is required")]
    BoundTooSmall { n: usize, f: u64, need: u64 },

    #[error("declared bound violated: {0}")]
    BoundViolation(String),

    #[error("maximal computation ends in state {0}, which carries no verdict")]
    MaximalComputationWithoutVerdict(String),

    #[error("variable cap exceeded: formula has {vars} free variables, cap is {cap}")]
    VarCapExceeded { vars: usize, cap: usize },

    #[error("grid cap exceeded: f({n}) = {f}, cap is {cap}")]
    GridCapExceeded { n: usize, f: u64, cap: u64 },

    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    #[error("unassigned variable {0}")]
    UnassignedVariable(String),

    #[error("symbol {symbol:?} does not belong to the alphabet {alphabet:?}")]
    ForeignSymbol { symbol: String, alphabet: Vec<String> },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation error: {0}")]
    Validate(String),

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("artifact is not layered: {0}")]
    NotLayered(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Shorthand used by the parsers.
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    /// Shorthand used by the validators.
    pub fn validate(msg: impl Into<String>) -> Self {
        Error::Validate(msg.into())
    }
}
