//! Command-line front end: configuration, data loading, experiments and
//! report rendering.

pub mod config;
pub mod data;
pub mod error;
pub mod experiment;
pub mod report;
