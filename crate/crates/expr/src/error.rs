use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("undeclared symbol `{0}`")]
    UndeclaredSymbol(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("logarithm of zero")]
    LogOfZero,
    #[error("unsupported power {0}")]
    UnsupportedPower(String),
    #[error("undefined value: {0}")]
    Undefined(String),
    #[error("symbol `{0}` has no value")]
    Unbound(String),
}
