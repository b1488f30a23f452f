pub mod catalog;
pub mod classify;
pub mod cli;
pub mod criteria;
pub mod error;
pub mod kernel;
pub mod lie;
pub mod report;
pub mod space;
pub mod suite;

pub use error::{Error, Result};
