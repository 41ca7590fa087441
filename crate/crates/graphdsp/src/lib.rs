//! File formats, synthetic datasets and the `graphdsp` command-line tool
//! built on [`graphdsp_core`].

pub mod cli;
pub mod commands;
pub mod error;
pub mod io;
pub mod synth;

pub use error::{Error, Result};
