//! Reference fixtures and the checks run by `verify-paper`.

mod checks;
mod fixtures;

pub use checks::{run_all, GoldenCheck};
pub use fixtures::*;
