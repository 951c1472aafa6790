//! Exact computation of string-cone inequalities from cluster potentials attached
//! to reduced words of the longest Weyl group element.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod cluster;
pub mod cone;
pub mod error;
pub mod headline;
pub mod lie;
pub mod poly;
pub mod polyhedral;
pub mod scan;
pub mod special;

pub use error::{Error, Result};
