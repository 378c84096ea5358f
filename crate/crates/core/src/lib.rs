//! Verification engine for higher-order sharp Sobolev trace inequalities
//! on the Euclidean unit ball and half-space.
//!
//! Every closed formula in the underlying theory is implemented twice
//! where the structure allows it: an exact-rational route (big rationals
//! with `sqrt(pi)` tracking) and an independent route (direct
//! differentiation, quadrature, or a spectral form), with residuals that
//! must vanish identically or to a stated tolerance. The crate is organized
//! by substrate:
//!
//! - [`exact`]: rational/`sqrt(pi)` scalars, half-integer Gamma,
//!   Pochhammer symbols, terminating hypergeometric sums, radial
//!   polynomial algebra;
//! - [`specfun`]: floating-point Gauss hypergeometric, Gegenbauer
//!   recurrences, Gauss quadrature rules;
//! - [`sphere`]: Funk-Hecke eigenvalues, fractional conformal-operator
//!   symbols, zonal expansions;
//! - [`ball`]: canonical polyharmonic extensions, adapted metrics, exact
//!   traces and energies, the derived boundary symbol, inequality reports;
//! - [`halfspace`]: frequency-side profiles, kernel identity, energy
//!   multipliers, Gaussian reports;
//! - [`report`]: the structured inequality-evaluation record.
//!
//! All values are immutable after construction and all operations are
//! pure; everything here is safe to call from any number of worker threads
//! with no synchronization.

#![forbid(unsafe_code)]

pub mod ball;
pub mod error;
pub mod exact;
pub mod halfspace;
pub mod report;
pub mod specfun;
pub mod sphere;

pub use error::{Error, Result};
