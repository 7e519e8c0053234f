#![cfg_attr(not(test), no_std)]
//! Exact computation of Donaldson–Futaki invariants for deformation to the
//! normal cone of log Fano pairs, their simple-flop corrections, and the
//! resulting instability ranges in the cone angle.

extern crate alloc;

pub mod analyzer;
pub mod dnc;
pub mod error;
pub mod exactmath;
pub mod flop;
pub mod surface;

pub use error::{Error, Result};

/// Version string recorded in report provenance.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
