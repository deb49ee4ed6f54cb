pub mod algebra;
pub mod cli;
pub mod derivation;
pub mod error;
pub mod lattice;
pub mod poset;
pub mod reconstruct;
pub mod ring;

pub use error::{Error, Result};
