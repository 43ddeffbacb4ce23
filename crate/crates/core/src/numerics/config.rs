use serde::{Deserialize, Serialize};

use crate::numerics::differentiate::DiffMethod;

/// Default numerical settings shared by the forward and inversion layers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NumericsConfig {
    /// Gauss–Legendre points per smooth panel in forward integrals.
    pub quad_order: usize,
    /// Derivative estimator for the inversion right-hand side.
    pub diff: DiffMethod,
    /// Support-gap threshold relative to max |h|.
    pub support_threshold_rel: f64,
    /// Relative deviation of steps tolerated when flagging a grid uniform.
    pub uniform_tol: f64,
}

impl Default for NumericsConfig {
    fn default() -> Self {
        Self {
            quad_order: 64,
            diff: DiffMethod::Auto,
            support_threshold_rel: 1e-14,
            uniform_tol: 1e-12,
        }
    }
}
