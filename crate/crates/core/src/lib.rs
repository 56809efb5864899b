pub mod arith;
pub mod cli;
pub mod dist;
pub mod error;
pub mod group;
pub mod hecke;
pub mod limits;
pub mod module;
pub mod rep;
pub mod triples;
pub mod verify;

pub use error::{Error, Result};
