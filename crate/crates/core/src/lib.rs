//! Decoherence of two-qubit X-states shared between an inertial and a
//! uniformly accelerated observer, and the quantum correlations that survive.
//!
//! The state pipeline is
//! `X-state → Unruh transform on Bob → Kraus noise on both qubits → thermal reservoir`,
//! after which geometric discord, measurement-induced nonlocality and
//! entropic discord are evaluated. Every closed form has an independent
//! numerical route next to it (embed-and-trace, Runge–Kutta integration,
//! measurement brute force) so the two can be checked against each other.
//!
//! All numerics are generic over [`Real`] (`f32` or `f64`); the `*64`
//! aliases below fix the common double-precision case.

// index loops mirror the matrix formulas; negated comparisons reject NaN
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod correlations;
pub mod error;
pub mod linalg;
pub mod noise;
pub mod pipeline;
pub mod relativistic;
pub mod scalar;
pub mod states;
pub mod thermal;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Matrix2f64 = linalg::Matrix2<f64>;
pub type Matrix4f64 = linalg::Matrix4<f64>;
pub type DensityMatrix4 = linalg::DensityMatrix<f64, 4>;
pub type Fano64 = linalg::FanoDecomposition<f64>;
pub type XStateParams64 = states::XStateParams<f64>;
pub type Acceleration64 = relativistic::Acceleration<f64>;
pub type ChannelSpec64 = noise::ChannelSpec<f64>;
pub type ThermalParams64 = thermal::ThermalParams<f64>;
pub type CorrelationReport64 = correlations::CorrelationReport<f64>;
pub type PipelineConfig64 = pipeline::PipelineConfig<f64>;
