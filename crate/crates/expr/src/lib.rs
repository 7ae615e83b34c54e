//! Symbolic expressions over `x`, `y` and named parameters.
//!
//! [`Expr`] is the tree used for input and output; [`RatFn`] is the canonical
//! rational-function form every computation runs on. Zero decisions are exact
//! when the normal form is literally zero and otherwise rely on probing at
//! random rational points with arbitrary-precision arithmetic.

pub mod error;
pub mod expr;
pub mod gcd;
pub mod kernel;
pub mod mono;
pub mod numeric;
pub mod parse;
pub mod poly;
mod print;
pub mod ratfn;
pub mod zero;

pub use astro_float::{BigFloat, RoundingMode};
pub use error::ExprError;
pub use expr::{differentiate, normalize, Expr, Func};
pub use mono::Var;
pub use numeric::{eval_numeric, Evaluator};
pub use parse::{parse_expr, parse_expr_with_symbols};
pub use ratfn::RatFn;
pub use zero::{decide_zero, decide_zero_expr, AssumptionSet, Predicate, ProbeConfig, ZeroVerdict};
