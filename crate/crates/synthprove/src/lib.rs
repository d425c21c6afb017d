//! File formats, TPTP input and the command-line front end of the prover.

pub mod clock;
pub mod commands;
pub mod config;
pub mod formats;
pub mod report;
pub mod tptp;
