//! Command-line front end for the geodesic-space laboratory: run
//! configurations, classification and comparison reports, mesh export.

pub mod commands;
pub mod config;
pub mod error;
pub mod export;

pub use config::RunConfig;
pub use error::CliError;
