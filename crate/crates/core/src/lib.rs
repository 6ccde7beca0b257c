pub mod error;
pub mod eval;
pub mod frontend;
pub mod ged;
pub mod metrics;
pub mod pdg;
pub mod semgraph;

pub use error::{Error, Result};
