//! Command-line driver for the X-state decoherence library: single-point
//! evaluation, parameter sweeps, figure data, and the acceptance checks.

pub mod acceptance;
pub mod figures;
pub mod kink;
pub mod output;
pub mod sweep;
