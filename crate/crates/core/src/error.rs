use cubic_ode_expr::ExprError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoreError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("malformed equation: {0}")]
    Equation(String),
    #[error("right-hand side is not polynomial in y'")]
    NotPolynomialInYp,
    #[error("degree {0} in y' exceeds 3")]
    DegreeTooHigh(u32),
    #[error("the Jacobian of the point map vanishes identically")]
    DegenerateMap,
    #[error("the Jacobian of the point map could not be decided: {0}")]
    UndecidedMap(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("family {family} takes {expected} parameters, got {got}")]
    ParameterCount { family: String, expected: usize, got: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("zero test undecided for {predicate}: {diagnostic}")]
    Undecided { predicate: String, diagnostic: String },
}
