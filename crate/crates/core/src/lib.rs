//! Online fractional vertex cover and matching: water-filling and
//! primal-dual algorithms, allocation functions, exact offline oracles and an
//! experiment harness.

pub mod allocation;
pub mod engine;
pub mod error;
pub mod harness;
pub mod instance;
pub mod numfmt;
pub mod oracle;

pub use error::{Error, Result};
