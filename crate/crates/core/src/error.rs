use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("attack references undeclared argument `{0}`")]
    UndeclaredArgument(String),

    #[error("argument `{0}` declared more than once")]
    DuplicateArgument(String),

    #[error("unknown argument `{0}`")]
    UnknownArgument(String),

    #[error("argument index {0} is out of range")]
    IndexOutOfRange(usize),

    #[error("invalid argument name `{0}`")]
    InvalidName(String),

    #[error("value {value} for `{argument}` is outside [0, 1]")]
    ValueOutOfRange { argument: String, value: f64 },

    #[error("valuation has {got} entries but the framework has {expected} arguments")]
    SizeMismatch { expected: usize, got: usize },

    #[error("duplicate entry for `{0}`")]
    DuplicateEntry(String),

    #[error("attack depth undefined: a cycle is reachable backwards from `{0}`")]
    Cyclic(String),

    #[error("framework has {size} arguments, above the oracle cap of {cap}")]
    OracleCapExceeded { size: usize, cap: usize },

    #[error("labelling is not admissible: `{0}` is illegally labelled")]
    NotAdmissible(String),

    #[error("set is not a complete extension")]
    NotComplete,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no convergence after {iterations} iterations (last change {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },

    #[error("sequence failed to stabilise within {0} iterations")]
    StabilityBoundExceeded(usize),
}
