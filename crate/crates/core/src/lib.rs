//! Chambers of planar polygon spaces, their genetic codes, and the
//! topology of the associated chain and polygon spaces.

pub mod chambers;
pub mod cli;
pub mod combinatorics;
mod error;
pub mod feasibility;
pub mod morse;
pub mod topology;

pub use error::{Error, Result};
