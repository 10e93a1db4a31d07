//! The crate-wide error type.

use crate::localfield::FieldError;

/// Every failure a computation in this crate can report.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("not representable in the base field: {0}")]
    NotRepresentable(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid generator registry: {0}")]
    InvalidRegistry(String),
    #[error("cannot divide by the logarithm of a torsion character")]
    TorsionDivide,
    #[error("period is not graded: {0}")]
    NotGraded(String),
    #[error("the reduced logarithm needs a log p symbol (|x(N_k)| != 1 and none is declared)")]
    NeedsLogP,
    #[error("periods are built over different registries")]
    RegistryMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid polytope: {0}")]
    InvalidPolytope(String),
    #[error("functions live on different polytopes")]
    PolytopeMismatch,
    #[error("not a unit: {0}")]
    NotUnit(String),
    #[error("term budget too small: tail exponent {got} does not reach {needed}")]
    BudgetTooSmall { got: String, needed: i64 },
    #[error("incompatible sections: {0}")]
    IncompatibleSections(String),
    #[error("not gluable: {0}")]
    NotGluable(String),
    #[error("tail certificate insufficient: {0}")]
    TailBudget(String),
    #[error("form degree {0} exceeds the dimension {1}")]
    DegreeOverflow(usize, usize),
    #[error("constraint violation: {0}")]
    ConstraintViolation(String),
    #[error("not a cycle")]
    NotACycle,
    #[error("domain error: {0}")]
    Domain(String),
}

/// Result alias used throughout the crate.
pub type Result<T, E = Error> = std::result::Result<T, E>;
