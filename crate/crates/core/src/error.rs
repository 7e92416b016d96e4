use thiserror::Error;

use crate::game::{GameFileError, ValidationError};
use crate::rational::Rational;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    GameFile(#[from] GameFileError),
    #[error("invalid game: {0}")]
    Invalid(#[from] ValidationError),
    #[error("strategy does not match game: {0}")]
    StrategyMismatch(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("reduced game still has free choices for the {0} player")]
    NotFullyReduced(&'static str),
    #[error("singular linear system")]
    SingularSystem,
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("oracle budget exceeded: {bits} strategy bits > {budget}")]
    BudgetExceeded { bits: usize, budget: usize },
    #[error("value iteration did not converge after {iterations} iterations (residual {residual})")]
    NotConverged { iterations: usize, residual: Rational },
    #[error("random generation gave up after {0} attempts")]
    RetryBudget(usize),
    #[error("no member of Omega_{n} lies within the separation radius of {x}")]
    NoOmegaMember { x: Rational, n: usize },
    #[error("dimension mismatch for {what}: expected {expected}, got {got}")]
    DimensionMismatch { what: &'static str, expected: usize, got: usize },
    #[error("method `{method}` does not apply: {reason}")]
    MethodMismatch { method: &'static str, reason: String },
    #[error("internal verification failed: {0}")]
    Verification(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
