pub mod cli;
pub mod error;
pub mod gf;
pub mod graphcore;
pub mod grassmann;
pub mod linalg;
pub mod quadspace;
pub mod twist_d5;
pub mod twist_d6;

pub use error::{Error, Result};
