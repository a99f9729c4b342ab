pub mod config;
pub mod emit;
pub mod presets;
pub mod reports;
mod run;

pub use run::{execute, run, Cli, Command};
