//! Closed-form Gaussian evaluation of the half-space sharp trace
//! inequality, cross-checked against semi-infinite quadrature.
//!
//! For `f(x) = e^{-|x|^2 / (2 sigma^2)}` both sides are explicit Gamma
//! expressions (unitary Fourier transform): the energy side is
//! `c_m * omega_{n-1} * Gamma((n+2m+1)/2) / 2 * sigma^{n-2m-1}` and the
//! norm side is `SC * (2 pi sigma^2 / p)^{(n-2m-1)/2}` with
//! `p = 2n/(n-2m-1)`; the ratio is scale-invariant in `sigma`.

use crate::error::{Error, Result};
use crate::report::{InequalityReport, QuadConfig};
use crate::specfun::{gamma_f64, quad_rule, QuadDomain};
use crate::sphere::{rational_f64, sphere_volume};

use super::freq::energy_multiplier;

/// Evaluates the half-space trace inequality for a Gaussian datum.
pub fn halfspace_trace_report(
    n: u32,
    m: u32,
    sigma: f64,
    cfg: &QuadConfig,
) -> Result<InequalityReport> {
    if 2 * m + 1 >= n {
        return Err(Error::Usage(format!(
            "half-space trace inequality needs 2m + 1 < n, got m = {m}, n = {n}"
        )));
    }
    if sigma <= 0.0 {
        return Err(Error::Usage(format!("Gaussian width sigma = {sigma} <= 0")));
    }
    let nf = f64::from(n);
    let mf = f64::from(m);
    let (c_m, _) = energy_multiplier(m)?;
    let c_m = rational_f64(&c_m);

    // rhs: c_m int |fhat|^2 |xi|^{2m+1} dxi
    //    = c_m omega_{n-1} sigma^{2n} int_0^inf e^{-sigma^2 k^2} k^{n+2m} dk
    //    = c_m omega_{n-1} Gamma((n+2m+1)/2) / 2 * sigma^{n-2m-1}
    let rhs_closed = c_m * sphere_volume(n - 1) * gamma_f64((nf + 2.0 * mf + 1.0) / 2.0) / 2.0
        * sigma.powf(nf - 2.0 * mf - 1.0);

    // lhs: SC ||f||_{L^p}^2 with p = 2n/(n-2m-1):
    //   ||f||_p^2 = (2 pi sigma^2 / p)^{(n-2m-1)/2}
    let p = 2.0 * nf / (nf - 2.0 * mf - 1.0);
    let sharp_constant = c_m * gamma_f64((nf + 2.0 * mf + 1.0) / 2.0)
        / gamma_f64((nf - 2.0 * mf - 1.0) / 2.0)
        * sphere_volume(n).powf((2.0 * mf + 1.0) / nf);
    let norm_sq = (2.0 * std::f64::consts::PI * sigma * sigma / p).powf((nf - 2.0 * mf - 1.0) / 2.0);
    let lhs_closed = sharp_constant * norm_sq;

    // quadrature cross-checks (n odd in every admissible regime):
    //  * energy radial integral via u = sigma^2 k^2: integrand
    //    u^{(n+2m-1)/2} e^{-u}, an integer power, under the plain damped rule
    //  * L^p radial integral via u = (p/(2 sigma^2)) r^2: integrand
    //    u^{(n-2)/2} e^{-u}, a half-integer power, under the alpha = 1/2 rule
    let plain = quad_rule(QuadDomain::SemiInfiniteExp { alpha: 0.0 }, cfg.quad_order.clamp(32, 96))?;
    let energy_quad = c_m * sphere_volume(n - 1) / (2.0 * sigma.powf(nf + 2.0 * mf + 1.0))
        * plain.integrate(|u| u.powf((nf + 2.0 * mf - 1.0) / 2.0))
        * sigma.powf(2.0 * nf);
    let half = quad_rule(QuadDomain::SemiInfiniteExp { alpha: 0.5 }, cfg.quad_order.clamp(32, 96))?;
    let c_norm = p / (2.0 * sigma * sigma);
    let lp_integral = sphere_volume(n - 1) / (2.0 * c_norm.powf(nf / 2.0))
        * half.integrate(|u| u.powf((nf - 3.0) / 2.0));
    let lhs_quad = sharp_constant * lp_integral.powf((nf - 2.0 * mf - 1.0) / nf);

    InequalityReport {
        params: format!("n={n}, m={m} (half-space)"),
        datum: format!("gaussian(sigma={sigma})"),
        lhs: lhs_closed,
        rhs: rhs_closed,
        sharp_constant,
        ratio: rhs_closed / lhs_closed,
        breakdown: vec![("energy".into(), rhs_closed)],
        extras: vec![
            ("energy_quadrature".into(), energy_quad),
            ("lhs_quadrature".into(), lhs_quad),
            ("lp_norm_sq".into(), norm_sq),
        ],
        quad: cfg.clone(),
    }
    .checked()
}
