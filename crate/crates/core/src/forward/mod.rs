//! Forward operators: spherical means of radial profiles and of
//! spherical-harmonic modes, moment integrals, full-sphere data and noise.

pub mod data;
pub mod operators;
pub mod phantom;
pub mod sphere;

pub use data::{add_noise, DataKind, NoiseMeta, SmtData};
pub use operators::{
    forward_mode, forward_radial_h, funk_hecke_oracle, g_moments, h_from_smt, mode_scale, q_kernel, radial_scale,
    simulate_mode, simulate_radial, smt_from_h,
};
pub use phantom::{ModePhantom, RadialPhantom, Shape};
pub use sphere::{
    decompose, simulate_full_sphere, sphere_quadrature_smt, unit_vector, CenterGrid, ModeField, SphereData, SphereRule,
};
