//! Verification laboratory for diameter graphs and Reuleaux bodies.

pub mod cli;
pub mod error;
pub mod geom;
pub mod graph;
pub mod lemmas;
pub mod linalg;
pub mod report;
pub mod reuleaux;
pub mod search;
pub mod sphere;
pub mod tolerance;

pub use error::{Error, Result};
pub use tolerance::Tolerance;
