use thiserror::Error;

/// Every typed failure the toolkit can report.
///
/// The variant name doubles as the machine-readable error kind emitted by the
/// command-line front end (see [`Error::kind`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("invalid variable ring: {0}")]
    InvalidRing(String),

    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("polynomials live in different rings")]
    RingMismatch,

    #[error("branch probabilities do not sum to 1: {0}")]
    ProbabilitySum(String),

    #[error("guards are not supported (moment invariant ideals of guarded probabilistic loops are uncomputable): {0}")]
    GuardUnsupported(String),

    #[error("loop is not deterministic")]
    NotDeterministic,

    #[error("distribution support exceeded the cap of {0} states")]
    SupportBudgetExceeded(usize),

    #[error("moment closure exceeded the budget of {0} symbols; the loop is likely not moment-computable (polynomial invariant synthesis beyond this class is Skolem-hard)")]
    ClosureBudgetExceeded(usize),

    #[error("no linear recurrence of order <= {0} fits the supplied terms")]
    NoRecurrenceFound(usize),

    #[error("closed form needs irrational eigenvalues (annihilator cofactor {0})")]
    IrrationalEigenvalue(String),

    #[error("Groebner basis computation exceeded the budget of {0} S-pair reductions")]
    BudgetExceeded(usize),

    #[error("instance is not the output of the Skolem-to-P2P construction: {0}")]
    NotASkolemReduction(String),

    #[error("instance has non-integer coefficients or initial values")]
    NotIntegerInstance,

    #[error("monomial order mismatch: {0}")]
    OrderMismatch(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Stable identifier used in JSON error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "SyntaxError",
            Error::UnknownVariable(_) => "UnknownVariable",
            Error::InvalidRing(_) => "InvalidRing",
            Error::ArityMismatch { .. } => "ArityMismatch",
            Error::RingMismatch => "RingMismatch",
            Error::ProbabilitySum(_) => "ProbabilitySumError",
            Error::GuardUnsupported(_) => "GuardUnsupported",
            Error::NotDeterministic => "NotDeterministic",
            Error::SupportBudgetExceeded(_) => "SupportBudgetExceeded",
            Error::ClosureBudgetExceeded(_) => "ClosureBudgetExceeded",
            Error::NoRecurrenceFound(_) => "NoRecurrenceFound",
            Error::IrrationalEigenvalue(_) => "IrrationalEigenvalue",
            Error::BudgetExceeded(_) => "BudgetExceeded",
            Error::NotASkolemReduction(_) => "NotASkolemReduction",
            Error::NotIntegerInstance => "NotIntegerInstance",
            Error::OrderMismatch(_) => "OrderMismatch",
            Error::Invalid(_) => "InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
