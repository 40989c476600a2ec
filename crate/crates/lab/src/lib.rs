//! File formats, reports and the command-line front end for `convlab-core`.

pub mod cli;
pub mod dot;
pub mod dsl;
pub mod error;
pub mod formats;
pub mod parallel;

pub use dsl::{parse_poset, serialize_poset};
pub use error::{LabError, Result};
