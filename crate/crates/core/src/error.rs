use alloc::string::String;

use thiserror::Error;

use crate::analysis::Invalid;
use crate::graph::Reason;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("a board needs at least one dimension")]
    EmptyShape,
    #[error("board dimensions must be positive")]
    ZeroDimension,
    #[error("board has more cells than can be indexed")]
    ShapeTooLarge,
    #[error("a move needs at least two steps")]
    TooFewSteps,
    #[error("move steps must be positive")]
    ZeroStep,
    #[error("expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("cell lies outside the board")]
    OutOfBounds,
    #[error("malformed axis permutation")]
    MalformedPermutation,
}

/// Failures of the constructive machinery.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("board admits no closed tour: {0:?}")]
    NotTourable(Reason),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("tour has no two edge-disjoint sites")]
    NotBisited,
    #[error("splice edge {0} is not a legal move")]
    IllegalSplice(String),
    #[error("splice did not produce a single cycle")]
    NotASingleCycle,
    #[error("corner {corner} has no site")]
    CornerSiteMissing { corner: usize },
    #[error("fewer than two disjoint corner sites")]
    MissingCornerSites,
    #[error("found {found} (a,b)-sites, four are required")]
    InsufficientSites { found: usize },
    #[error("{layers} layers given, at least {needed} are required")]
    LayerBudget { layers: usize, needed: usize },
    #[error("base case {0} missing from the library")]
    BootstrapIncomplete(String),
    #[error("path endpoints do not match")]
    EndpointMismatch,
    #[error("construction produced an invalid walk: {0}")]
    Invalid(Invalid),
    #[error(transparent)]
    Model(#[from] ModelError),
}

impl From<Invalid> for ConstructError {
    fn from(why: Invalid) -> Self {
        ConstructError::Invalid(why)
    }
}
