//! Exact arithmetic substrate: big rationals with `sqrt(pi)` tracking,
//! half-integer Gamma evaluation, Pochhammer symbols, terminating
//! hypergeometric sums, and radial polynomial algebra with exact
//! integration.

mod gamma;
mod poly;
mod scalar;

pub use gamma::{gamma_half, gamma_product_ratio, gamma_ratio, pochhammer, pochhammer_half};
pub use poly::{
    derivative_prefactor, eval_poly_f64, hyp2f1_terminating, radial_integrate, RadialPoly,
};
pub use scalar::{ExactScalar, HalfInt};

pub(crate) use scalar::rational_to_f64;
