//! File formats, verification suites and the command line front end for
//! [`qflag_core`].

pub mod cli;
pub mod config;
pub mod csv_out;
pub mod error;
pub mod verify;
pub mod wire;

pub use error::{Error, ExitCode, Result};
