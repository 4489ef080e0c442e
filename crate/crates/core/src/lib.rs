pub mod algebra;
pub mod betti;
pub mod budget;
pub mod cli;
pub mod dynkin;
pub mod error;
pub mod fan;
pub mod json;
pub mod linalg;
mod lp;
pub mod paperdata;
pub mod toric;

pub use budget::Budget;
pub use error::{Error, Result};
