//! SIR distributions of single-tier cellular networks with nearest-base-station
//! association.
//!
//! The crate covers three kinds of computation that are meant to be checked
//! against each other:
//!
//! * closed forms for the Poisson network ([`analytic`], [`rdp`]),
//! * Monte Carlo estimation for Poisson, lattice and Ginibre networks
//!   ([`pointprocess`], [`montecarlo`]),
//! * the two asymptotic horizontal SIR gains: `G0` from the mean
//!   interference-to-signal ratio and `G∞` from the expected
//!   fading-to-interference ratio.
//!
//! The analytic and special-function code is generic over the scalar type
//! (any [`Scalar`], in practice `f32` or `f64`); the Monte Carlo engine works
//! in [`Real`] (`f64`). Concrete aliases for the `f64` instantiations live at
//! the crate root.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod error;
pub mod fading;
pub mod montecarlo;
pub mod pointprocess;
pub mod quad;
pub mod rdp;
pub mod scalar;
pub mod specialfn;

pub use error::{Error, Result};
pub use fading::FadingModel;
pub use montecarlo::{CcdfEstimate, MomentEstimate, SimConfig};
pub use pointprocess::{DistanceSet, ModelKind, NetworkModel};
pub use rdp::RelativeDistanceProcess;
pub use scalar::Scalar;

/// Scalar used by the simulation engine and by the CLI.
pub type Real = f64;

/// Asymptotic gain report in double precision.
pub type GainReport = analytic::GainReport<Real>;

/// EFIR result in double precision.
pub type EfirResult = analytic::EfirResult<Real>;

/// Single-precision EFIR result, mostly useful for cross-precision checks.
pub type EfirResultF32 = analytic::EfirResult<f32>;
