//! Equivalence and symmetry classification of second-order equations cubic in `y'`.

pub mod cases;
pub mod catalog;
pub mod classify;
pub mod equivalence;
pub mod error;
pub mod field;
pub mod general;
pub mod invariants;
pub mod ode;

pub use catalog::{painleve, parse_params, Family};
pub use error::CoreError;
pub use invariants::{Branch, Engine, Slot};
pub use ode::{parse_ode, point_transform, OdeCubic, PointMap, Transformed};
pub use classify::{analyze, classify, ClassificationResult, Case, Dimension};
pub use equivalence::{check, check_p1, check_p2, check_p3zero, check_p4_necessary, verify_transform, EquivalenceResult, Outcome, Target};
