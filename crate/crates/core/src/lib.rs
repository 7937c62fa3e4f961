//! Pseudo-spectral simulation of nematic liquid-crystal flow on periodic
//! boxes.

pub mod cli;
pub mod diagnostics;
pub mod dynamics;
pub mod error;
pub mod fields;
pub mod io;
pub mod run;

pub use error::{Error, Result};
