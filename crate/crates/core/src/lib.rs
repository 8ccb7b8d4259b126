pub mod algebra;
pub mod cli;
pub mod ar;
pub mod error;
pub mod io;
pub mod linalg;
pub mod matalg;
pub mod module;
pub mod morph;
pub mod poly;
pub mod suite;

pub use error::{Error, Result};
