//! Closed knight's tours on boards of any dimension.
//!
//! The crate classifies which boards admit closed tours of the `{1,2}`
//! knight, builds explicit tours for every board that does, and provides
//! the pieces those constructions rest on: the leaper graph, tour
//! verification, site detection, a constrained backtracking solver for the
//! small base cases, and splicing of tours along shared sites.
//!
//! Everything here is `no_std` and only needs `alloc`. File formats, the
//! base-case cache on disk and the command line live in a companion crate.

#![no_std]

extern crate alloc;

pub mod analysis;
pub mod assembly;
pub mod catalog;
pub mod construct2d;
pub mod construct3d;
pub mod constructnd;
pub mod error;
pub mod graph;
pub mod model;
pub mod solver;

pub use analysis::{
    corner_sites, find_ab_sites, find_sites, find_sites_brute_force, verify, verify_route, AbSite, CornerError,
    Invalid, Site, SiteInventory, Verdict,
};
pub use error::{ConstructError, ModelError};
pub use graph::{
    classify, color_imbalance, connectivity, knuth_connectivity_predicted, leaper_connectivity_predicted,
    leaper_connectivity_predicted_with, neighbors, Classification, ConnectivityReport, LeaperGraph, Reason,
    Tourability,
};
pub use model::{
    embed_unit_axes, legal_move, permute_to, shift, transform, transpose, BoardShape, Cell, Edge, EdgeIndex, Fragment,
    MoveSpec, OpenPath, Route, Tour, Walk,
};
