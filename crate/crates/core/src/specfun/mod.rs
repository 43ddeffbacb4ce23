//! Special functions and exact coefficient tables.

pub mod coeffs;
pub mod exact;
pub mod laurent;
pub mod special;

pub use coeffs::{mode_prefactor, ode_coeffs, p_ml, radial_prefactor, CoeffTable, CompiledCoeffs};
pub use exact::{
    coeff_e, coeff_e_defining_sum, d_weights, gegenbauer_at_one, harmonic_count, inner_sum_check, Rational,
};
pub use laurent::LaurentPoly;
pub use special::{gegenbauer, legendre, omega, real_sph_harm, surface_area};
