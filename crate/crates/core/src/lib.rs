pub mod error;
pub mod grid;
pub mod geometry;
pub mod partitions;
pub mod bijection;
pub mod dynamics;

pub use error::{Error, Result};
