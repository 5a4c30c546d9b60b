//! Figure presets, ad-hoc commands and file formats behind the `ratapprox`
//! binary.
//!
//! Every emitted file is deterministic: floats are written with 17
//! significant digits, collections in a fixed order, and files land via
//! write-then-rename.

pub mod commands;
mod error;
pub mod model;
pub mod num;
pub mod preset;
pub mod report;
pub mod svg;

pub use error::{CliError, CliResult};
