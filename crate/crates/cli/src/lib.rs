//! Library side of the tileforge CLI: file formats and rendering.

pub mod error;
pub mod formats;
pub mod render;

pub use error::{CliError, CliResult};
