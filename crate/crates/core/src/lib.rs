//! Numerical laboratory for the planar four-body problem near a simultaneous
//! binary collision.
//!
//! The crate implements the regularising coordinate chain (Cartesian,
//! Levi-Civita, generalised Levi-Civita), the projective blow-up of the
//! collision set, the vector fields in every representation, an adaptive
//! 8(7) integrator with section events, and the block-map experiments that
//! measure the regularity of the passage past collision.
//!
//! Every model computation is generic over [`Scalar`], implemented for `f32`,
//! `f64` and [`DoubleDouble`].

pub mod analysis;
pub mod blowup;
pub mod coords;
pub mod dd;
pub mod dynamics;
pub mod error;
pub mod flow;
pub mod params;
pub mod potential;
pub mod scalar;

pub use dd::DoubleDouble;
pub use error::{Error, Result};
pub use scalar::{Cx, Scalar};

/// Standard working precision.
pub type Real = f64;
/// Extended working precision (about 32 significant digits).
pub type Extended = DoubleDouble;

pub type MassParams64 = params::MassParams<Real>;
pub type MassParamsDd = params::MassParams<Extended>;
pub type GlcState64 = coords::GlcState<Real>;
pub type GlcStateDd = coords::GlcState<Extended>;
pub type ChartPoint64 = blowup::ChartPoint<Real>;
