//! Command-line experiments for `lorentz-cauchy`.

pub mod args;
pub mod config;
pub mod experiments;

pub use experiments::{run, Outcome};
