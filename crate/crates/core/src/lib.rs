//! Exact evaluation of asymptotic invariants of line bundles (volume,
//! asymptotic cohomology, asymptotic orders of vanishing, restricted volume)
//! on a small catalog of concrete models, each backed by an exact
//! section-counting oracle.

#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod cone;
pub mod config;
pub mod engine;
pub mod error;
pub mod families;
pub mod harness;
pub mod hull;
pub mod linalg;
pub mod lp;
pub mod polytope;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{QuadExt, Rat};
