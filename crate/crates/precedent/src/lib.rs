//! Case-base documents, derivation rendering, randomized cross-checks and
//! the `precedent` command-line tool, on top of [`precedent_core`].

pub mod check;
pub mod cli;
pub mod document;
mod error;
pub mod random;
pub mod render;

pub use error::{Error, Result};
