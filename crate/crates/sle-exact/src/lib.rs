//! Exact verification kernel for the boundary correlation tower of chordal
//! SLE: arbitrary-precision rational-function arithmetic, Laurent
//! extraction, the weighted vector-field operators, and the Ward recursion
//! that derives kappa = 8/3 and alpha = 5/8.

pub mod error;
pub mod gcd;
pub mod laurent;
pub mod poly;
pub mod ratfun;
pub mod report;
pub mod sampling;
pub mod var;
pub mod virasoro;
pub mod ward;

/// The coefficient field: exact fractions of arbitrary-precision integers.
pub type Rat = num_rational::BigRational;

pub use error::ExactError;
pub use laurent::{laurent_expand, LaurentSeries};
pub use poly::{Monomial, Polynomial};
pub use ratfun::RatFun;
pub use report::{all_passed, CheckRecord, CheckStatus};
pub use var::{x, Var, VAR_A, VAR_K};
pub use virasoro::{apply_l, commutator_defect, degeneracy_apply, VirasoroOp};
pub use ward::{
    derive_constants, evolution_defect, evolution_defect_level, lowering_compose,
    mode_expand_check, stability_check, AlphaSpec, CorrelationFamily, DerivedConstants,
    FamilyVector,
};
