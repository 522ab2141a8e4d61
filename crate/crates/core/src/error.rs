use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("duplicate sample at {coords:?} with constraint order {order}")]
    DuplicateSample { coords: Vec<f64>, order: String },

    #[error("singular Taylor system at query {query:?}: degenerate point placement")]
    SingularSystem { query: Vec<f64> },

    #[error("multi-index {0} is not part of the basis ordering")]
    EntryNotInOrdering(String),

    #[error("derivative order {order} exceeds the largest supported order {max}")]
    OrderTooLarge { order: usize, max: usize },

    #[error("coefficient or source is not finite at x = {x}")]
    NonFiniteCoefficient { x: f64 },

    #[error("potential is not finite at x = {x}")]
    NonFinitePotential { x: f64 },

    #[error("eigenvalue iteration did not converge ({size}x{size} matrix, condition ~{condition:.3e})")]
    EigenFailure { size: usize, condition: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
