//! Monte Carlo study of concurrence versus post-measurement mutual
//! information for random two-qubit pure states.
//!
//! The per-state math in [`state`] and [`curves`] is generic over the
//! scalar type ([`Real`], implemented for `f32` and `f64`); the aliases
//! below fix it to `f64`, which is what the sampling pipeline and the
//! tolerances of [`verify`] assume.

pub mod curves;
pub mod error;
pub mod hist;
pub mod pipeline;
pub mod sampler;
pub mod scalar;
pub mod state;
pub mod verify;

pub use error::{Error, Result};
pub use hist::{Axis, Density1D, Joint2DHistogram, SliceStats};
pub use pipeline::{joint_histogram, RunSpec};
pub use sampler::{EnsembleKind, EnsembleSpec, SampleReal, SeedSpec, StateStream};
pub use scalar::Real;
pub use verify::VerificationReport;

pub type State = state::TwoQubitPureState<f64>;
pub type StateF32 = state::TwoQubitPureState<f32>;
pub type Amplitude = state::Amplitude<f64>;
pub type Outcomes = state::OutcomeDistribution<f64>;
pub type Bits = state::EntropyBits<f64>;
pub type Concurrence = state::Concurrence<f64>;
pub type ParamState = state::ParamState<f64>;
pub type RidgePoint = curves::RidgePoint<f64>;
pub type ExtremaSet = curves::ExtremaSet<f64>;
