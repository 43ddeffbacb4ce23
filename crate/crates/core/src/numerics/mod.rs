//! Grids, sampled functions, quadrature, interpolation and differentiation.

pub mod config;
pub mod differentiate;
pub mod grid;
pub mod interpolate;
pub mod quadrature;

pub use config::NumericsConfig;
pub use differentiate::{differentiate, fornberg_weights, polyfit_weights, DiffMethod};
pub use grid::{Grid1D, SampledFn};
pub use interpolate::interpolate;
pub use quadrature::{gauss_legendre, integrate, QuadratureRule};
