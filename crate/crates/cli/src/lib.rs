//! Command implementations behind the `twoqubit` binary.

pub mod analyze;
pub mod error;
pub mod geometry;
pub mod json;
pub mod survey;
pub mod teleport;

pub use error::CliError;
