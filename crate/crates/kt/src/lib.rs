//! File formats, the on-disk base-case cache, parallel search and the
//! `kt` command line for `knight-tour-core`.

pub mod cache;
pub mod json;
pub mod parallel;
pub mod render;
pub mod text;

use std::path::PathBuf;

use knight_tour_core::{ConstructError, Invalid, ModelError};
use thiserror::Error;

pub use cache::{Cache, CacheReport, Golden};
pub use json::{from_json, to_json, TourFile};
pub use parallel::{solve_parallel, InstantClock};
pub use render::{parse_rendered, render};

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Parse(String),
    #[error("invalid walk: {0}")]
    Invalid(Invalid),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}

impl From<Invalid> for Error {
    fn from(why: Invalid) -> Self {
        Error::Invalid(why)
    }
}
