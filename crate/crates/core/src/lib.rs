pub mod algebra;
pub mod cg;
pub mod cli;
pub mod diffops;
pub mod error;
pub mod euler;
pub mod haar;
pub mod irreps;
pub mod poly;
pub mod verify;

pub use error::{Error, Result};
