use crate::semiring::{Property, Semiring};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("not invertible: division by zero")]
    NotInvertible,
    #[error("not a semifield: {0} has no division")]
    NotSemifield(Semiring),
    #[error("not a refinement instance: a+b != c+d")]
    NotRefinementInstance,
    #[error("no decision procedure for property {prop} over {semiring}")]
    NoDecisionProcedure { semiring: Semiring, prop: Property },
    #[error("semiring mismatch: {left} vs {right}")]
    SemiringMismatch { left: Semiring, right: Semiring },
    #[error("invalid scalar for {semiring}: {text}")]
    InvalidScalar { semiring: Semiring, text: String },
    #[error("symbol `{0}` is not mapped by the function")]
    UnmappedSymbol(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("{op} is not supported over {semiring}: {hint}")]
    Unsupported {
        op: &'static str,
        semiring: Semiring,
        hint: &'static str,
    },
    #[error("enumeration of {what} exceeds the bound {bound}")]
    EnumerationTooLarge { what: &'static str, bound: usize },
    #[error("wrong dimension: expected {expected} variables, found {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}
