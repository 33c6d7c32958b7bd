//! Command-line front end for `agrarian` and its acceptance harness.

pub mod cache;
pub mod commands;
pub mod harness;

pub use commands::{run_from, Outcome};
