//! Command-line front end for `tridot`: flat-file configuration, CSV
//! trajectories, the figure preset sweep and a verification report.

pub mod commands;
pub mod config;
pub mod output;
