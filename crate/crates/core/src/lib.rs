pub mod bass;
pub mod brandt;
pub mod cli;
pub mod ecgraph;
pub mod error;
pub mod graph;
pub mod ideals;
pub mod lattice;
pub mod modl;
pub mod numth;
pub mod orient;
pub mod quat;

pub use error::{Error, Result};
