//! Invariant bilinear forms, decomposition numbers and modular ranks for
//! Iwahori-Hecke algebras of finite Weyl groups, computed from W-graphs.

// Index loops mirror the matrix formulas, and ring contexts build elements
// through `&self`.
#![allow(clippy::needless_range_loop, clippy::wrong_self_convention, clippy::type_complexity)]

pub mod error;
pub mod rings;

pub mod weyl;
pub mod wgraph;

pub mod formats;
pub mod gram;
pub mod hecke;
pub mod specrank;

pub mod blocks;
pub mod meataxe;
pub mod pipeline;

pub mod cache;
pub mod fixtures;

pub use error::{Error, Result};
