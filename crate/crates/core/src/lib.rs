pub mod cli;
pub mod curves;
pub mod dynamics;
pub mod error;
pub mod gauge;
pub mod geometry;
pub mod lie;
pub mod models;
pub mod poly;

pub use error::{Error, Result};
