//! Floating-point special functions: numeric Gauss hypergeometric with
//! transformation switching, Gegenbauer polynomials by recurrence, and
//! quadrature rule construction for all 1-D integrals in the engine.

mod gegenbauer;
mod hyp;
mod quad;

pub use gegenbauer::{contour_kth_derivative, gegenbauer, gegenbauer_norm_sq};
pub use hyp::{gamma_f64, gamma_ratio_f64, hyp2f1, ln_gamma_f64};
pub use quad::{pairwise_sum, quad_rule, QuadDomain, QuadratureRule};
