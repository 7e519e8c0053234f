//! Job files, the bundled surface catalog and report rendering for the
//! `flopslope` command.

pub mod catalog;
pub mod error;
pub mod golden;
pub mod job;
pub mod run;
pub mod surface;

pub use error::{CliError, Result};
