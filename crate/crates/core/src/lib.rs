//! Rack-aware regenerating code toolkit.

pub mod error;
pub mod fieldalg;
pub mod flowgraph;
pub mod msrr;
pub mod mbrr;
pub mod params;
pub mod rat;
pub mod trace;
pub mod tradeoff;

pub use error::{Error, Result};
