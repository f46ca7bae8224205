//! Command-line front end wiring phantoms, masks, and solvers into
//! reproducible truncated-Hilbert-transform experiments.

pub mod commands;
pub mod config;
pub mod experiment;
pub mod formats;
pub mod logging;
