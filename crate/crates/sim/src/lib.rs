//! Host-side companion to `csd-core`: a `rustfft` backend, run
//! configuration, trajectory files, experiment drivers and the `csd`
//! command line.

pub mod atomic;
pub mod cli;
pub mod config;
pub mod error;
pub mod experiments;
pub mod fft;
pub mod format;
pub mod initial;
pub mod report;

pub use config::{ResolvedConfig, RunConfig};
pub use error::{ErrorRecord, Result, SimError};
pub use fft::{fast_torus, RustFft};
pub use initial::{make_initial_data, DataSpec};
