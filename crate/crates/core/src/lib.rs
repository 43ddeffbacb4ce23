//! Spherical mean transform in odd dimensions.
//!
//! Forward operators and ODE-based recovery of radial profiles (and of the
//! spherical-harmonic modes of general functions in three dimensions) from
//! spherical means measured on a partial radial window.
//!
//! All numerical routines are generic over [`Real`]; the aliases below fix
//! the scalar to `f64`, which is what the command-line front end uses.

pub mod error;
pub mod forward;
pub mod inversion;
pub mod numerics;
pub mod scalar;
pub mod specfun;

pub use error::{Error, Result};
pub use scalar::{Field, Real};

/// Uniform or non-uniform grid of radii in (0, 1].
pub type Grid = numerics::Grid1D<f64>;
/// Samples of a real function on a [`Grid`].
pub type Samples = numerics::SampledFn<f64>;
/// Gauss–Legendre rule in double precision.
pub type Quadrature = numerics::QuadratureRule<f64>;
