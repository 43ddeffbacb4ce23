//! ODE-based inversion, closed-form back-ends, recombination and metrics.

pub mod invert;
pub mod metrics;
pub mod ode;
pub mod recombine;
pub mod rhs;

pub use invert::{
    analytic_invert, invert_mode, invert_modes, invert_radial, n5_homogeneous, n7_pair, n7_wronskian, Backend, EpsPrime,
    InversionOptions, ReconstructionResult,
};
pub use metrics::{error_metrics, Metrics};
pub use ode::OdeProblem;
pub use recombine::{recombine, FieldSamples};
pub use rhs::{apply_d_power, assemble_rhs, detect_support_gap};
