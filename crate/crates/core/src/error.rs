use thiserror::Error;

use crate::diffalg::{DiffMonomial, Var};

/// Errors raised by the library and the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: expected {expected}, found {found}")]
    VariableCountMismatch { expected: usize, found: usize },

    #[error("evaluation leaves no known coefficients (honest truncation order is 0)")]
    EmptyPrecision,

    #[error("no weight supplied for variable {0}")]
    MissingWeight(Var),

    #[error("cannot divide by t^{shift}: a coefficient below t^{shift} is nonzero or unknown")]
    NegativePowerOfT { shift: u64 },

    #[error(
        "valuation of the coefficient of {0} is not certified: it vanishes modulo its truncation"
    )]
    UncertifiedValuation(DiffMonomial),

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),

    #[error("tropical value is infinite for part {index}; the lifting construction is undefined")]
    InfiniteTropValue { index: usize },

    #[error("postcondition failed: {0}")]
    PostconditionFailure(String),

    #[error("reference report was computed over a different candidate universe")]
    UniverseMismatch,

    #[error(
        "known solution #{index} does not annihilate generator #{generator} modulo truncation"
    )]
    NotASolution { index: usize, generator: usize },

    #[error("invalid eventually periodic set: {0}")]
    InvalidNatSet(String),

    #[error("band matrix needs r >= 2, got r = {0}")]
    BadDimension(usize),

    #[error("not a linear form in a single differential variable")]
    NotLinearForm,

    #[error("pair ({a}, {b}) is not admissible: need b - a >= 2")]
    BadPair { a: usize, b: usize },

    #[error("pole at k = {k}: the constant equals a natural number inside the window")]
    NaturalPole { k: usize },

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("variable index error at line {line}, column {column}: x({i},{j}) has i < 1")]
    VariableIndex {
        line: usize,
        column: usize,
        i: u64,
        j: u64,
    },

    #[error("unknown command: {0}")]
    UnknownCommand(String),
}

impl Error {
    /// Syntax-level errors (exit code 2 on the command line).
    pub fn is_syntax(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. } | Error::VariableIndex { .. } | Error::UnknownCommand(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
