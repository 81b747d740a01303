//! Numerical chordal SLE: Loewner flow with exact per-step slit maps,
//! reproducible counter-based driving streams, and Monte Carlo checks of
//! the restriction formula and boundary exponents.

pub mod error;
pub mod hull;
pub mod loewner;
pub mod restriction;
pub mod rng;

pub use error::SimError;
pub use hull::{analytic_avoid_probability, HullSpec, RestrictionParams};
pub use loewner::{
    flow_point, flow_point_with_deriv, hit_slit, sample_driving, sample_driving_indexed,
    step_map, trace, DrivingPath, FlowState, SleParams, StepResult, TracePolyline,
};
pub use restriction::{
    b1_limit_check, boundary_exponent_fit, martingale_mean, mc_avoid_probability, B1LimitRow,
    ExponentFit, McEstimate,
};

pub type C64 = num_complex::Complex64;
