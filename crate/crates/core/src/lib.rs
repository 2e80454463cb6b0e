//! Rainbow connection colorings for κ-connected graphs.

pub mod coloring;
pub mod diameter;
pub mod connectivity;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod planar;

pub use error::{Error, Result};
pub use graph::Graph;
