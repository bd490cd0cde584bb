//! Library side of the experiment harness: configuration, output files with
//! manifests, the experiment commands, and the verification check suite.

pub mod checks;
pub mod commands;
pub mod config;
pub mod manifest;

pub use config::Config;
