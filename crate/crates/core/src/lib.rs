//! Mode spectra, Bogoliubov transformations and unitarity diagnostics for quantum fields
//! confined to a rigid cavity, comparing an inertial cavity with one under uniform proper
//! acceleration.
//!
//! Lengths are measured in units of the cavity length `L` unless a function takes `L`
//! explicitly. The crate is `no_std` and needs only `alloc`.
#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

extern crate alloc;

pub mod bogoliubov;
pub mod error;
pub mod modes;
pub mod numerics;
pub mod specfun;
pub mod trajectory;
pub mod unitarity;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Crate version.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
