//! Poisson extensions on the unit ball along two independent routes (the
//! explicit kernel and the mode series), the two-branch asymptotic split of
//! a mode near the boundary, and exact verification that every canonical
//! mode solves the hyperbolic eigenvalue equation.
//!
//! All hyperbolic-Laplacian computations reduce through the conformal
//! relation `L u = rho^2 Lap u + (n-1) rho r u_r` for radial factors, with
//! `rho = (1 - r^2)/2` the defining function.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::pochhammer;
use crate::specfun::{gamma_f64, gamma_ratio_f64, gegenbauer, hyp2f1, QuadDomain, QuadratureRule};
use crate::sphere::{sphere_volume, GammaOrder, ModelParams, ZonalFunction};

use super::profile::{phi_profile, RadialMode};

/// Kernel-path quadrature is restricted to this radius; nearer the
/// boundary the kernel concentrates and only the series path is offered.
pub const KERNEL_PATH_MAX_RADIUS: f64 = 0.9;

/// 25 signed on-axis sample radii in `[-0.9, 0.9] \ {0}` used by the
/// kernel/series duality checks (negative values probe the antipodal
/// direction of the datum's pole).
pub fn kernel_series_sample_points() -> Vec<f64> {
    let mut pts = Vec::with_capacity(25);
    for i in -12i32..=12 {
        let r = 0.075 * f64::from(i);
        pts.push(if i == 0 { 0.05 } else { r });
    }
    pts
}

/// Extension value by the explicit kernel, at the point `x = r_signed * e`
/// on the axis of the datum's pole (`|r_signed| <= 0.9`):
/// `u(x) = pi^{-n/2} Gamma(n/2 + gamma)/Gamma(gamma)
///        * int ((1-|x|^2) / (2|x - xi|^2))^s f(xi) dsigma`,
/// reduced to a 1-D zonal integral.
pub fn poisson_extend<F: Fn(f64) -> f64>(
    f: F,
    r_signed: f64,
    params: &ModelParams,
    rule: &QuadratureRule,
) -> Result<f64> {
    let r = r_signed.abs();
    if r > KERNEL_PATH_MAX_RADIUS {
        return Err(Error::Accuracy(format!(
            "kernel path restricted to |x| <= {KERNEL_PATH_MAX_RADIUS}, got {r}"
        )));
    }
    let n = params.n();
    match rule.domain() {
        QuadDomain::GegenbauerInterval { n: rn } if rn == n => {}
        other => {
            return Err(Error::Usage(format!(
                "kernel path needs the n = {n} zonal rule, got {other:?}"
            )))
        }
    }
    let nf = f64::from(n);
    let s = params.s();
    let g = params.gamma_f64();
    let pref = std::f64::consts::PI.powf(-nf / 2.0) * gamma_f64(nf / 2.0 + g) / gamma_f64(g);
    let rho_term = 1.0 - r * r;
    // |x - xi|^2 = 1 - 2 r_signed t + r^2 for xi at angle t from the pole
    let integral = rule.integrate(|t| {
        let d2 = 1.0 - 2.0 * r_signed * t + r * r;
        (rho_term / (2.0 * d2)).powf(s) * f(t)
    });
    if !integral.is_finite() {
        return Err(Error::Accuracy("kernel quadrature diverged".into()));
    }
    Ok(pref * sphere_volume(n - 1) * integral)
}

/// Extension value by the mode series at the point with radius `r` and
/// cosine `t` against the datum's pole:
/// `u = rho^{n-s} sum_l phi_l(r^2) r^l f_l C_l^{(n-1)/2}(t)`.
pub fn series_extend(
    f: &ZonalFunction,
    r: f64,
    t: f64,
    params: &ModelParams,
) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::Usage(format!("series path needs 0 <= r < 1, got {r}")));
    }
    if f.n() != params.n() {
        return Err(Error::Usage("datum dimension mismatch".into()));
    }
    let alpha = (f64::from(params.n()) - 1.0) / 2.0;
    let rho = (1.0 - r * r) / 2.0;
    let mut terms = Vec::with_capacity(f.coeffs().len());
    for (l, &c) in f.coeffs().iter().enumerate() {
        if c == 0.0 {
            terms.push(0.0);
            continue;
        }
        let mode = phi_profile(params, l as u32)?;
        terms.push(c * mode.eval(r)? * gegenbauer(alpha, l, t));
    }
    let sum = crate::specfun::pairwise_sum(&terms);
    Ok(rho.powf(f64::from(params.n()) - params.s()) * sum)
}

/// The two hypergeometric branches of a mode near the boundary, for
/// non-half-integer order (`2 gamma` not an integer):
/// the mode equals `rho^{n-s} F_part + rho^s H_part` with
/// `F_part = F(l + n/2 - gamma, 1/2 - gamma; 1 - 2 gamma; 2 rho) r^l` and
/// `H_part = (1/d_gamma) Gamma(l + n/2 + gamma)/Gamma(l + n/2 - gamma)
///          * F(1/2 + gamma, l + n/2 + gamma; 1 + 2 gamma; 2 rho) r^l`,
/// where `d_gamma = 2^{2 gamma} Gamma(gamma)/Gamma(-gamma)`.
pub fn split_asymptotics(params: &ModelParams, l: u32, rho: f64) -> Result<(f64, f64)> {
    let g = match params.gamma() {
        GammaOrder::General(g) if (2.0 * g - (2.0 * g).round()).abs() > 1e-9 => g,
        _ => {
            return Err(Error::UnsupportedRegime(format!(
                "two-branch split needs 2 gamma not an integer, got {params}"
            )))
        }
    };
    if !(0.0..0.5).contains(&rho) && rho != 0.0 {
        return Err(Error::Usage(format!("rho = {rho} outside [0, 1/2)")));
    }
    let n = f64::from(params.n());
    let lf = f64::from(l);
    let r = (1.0 - 2.0 * rho).max(0.0).sqrt();
    let rl = r.powi(l as i32);
    let f_part = hyp2f1(lf + n / 2.0 - g, 0.5 - g, 1.0 - 2.0 * g, 2.0 * rho)? * rl;
    // 1/d_gamma = Gamma(-gamma) / (2^{2 gamma} Gamma(gamma)), by reflection
    let inv_d = gamma_f64(-g) / (2f64.powf(2.0 * g) * gamma_f64(g));
    let ratio = gamma_ratio_f64(lf + n / 2.0 + g, lf + n / 2.0 - g);
    let h_part = inv_d * ratio * hyp2f1(0.5 + g, lf + n / 2.0 + g, 1.0 + 2.0 * g, 2.0 * rho)? * rl;
    Ok((f_part, h_part))
}

/// Closed zonal eigenvalue of the kernel `(1 - 2rt + r^2)^{-s}` at degree
/// `l`, in the final compact form: `2^{-2 gamma} (4 pi)^{(n-1)/2}
///  * Gamma((n-1)/2) Gamma(n/2) Gamma(1/2) / Gamma(n-1)
///  * Gamma(2 gamma) / (Gamma(gamma + 1/2) Gamma(n/2 + gamma))
///  * rho^{-2 gamma} phi_l(r^2) r^l`.
pub fn zonal_kernel_eigenvalue_closed(params: &ModelParams, l: u32, r: f64) -> Result<f64> {
    let n = f64::from(params.n());
    let g = params.gamma_f64();
    let rho = (1.0 - r * r) / 2.0;
    let mode = phi_profile(params, l)?;
    let pref = 2f64.powf(-2.0 * g)
        * (4.0 * std::f64::consts::PI).powf((n - 1.0) / 2.0)
        * gamma_f64((n - 1.0) / 2.0) * gamma_f64(n / 2.0) * gamma_f64(0.5) / gamma_f64(n - 1.0)
        * gamma_f64(2.0 * g) / (gamma_f64(g + 0.5) * gamma_f64(n / 2.0 + g));
    Ok(pref * rho.powf(-2.0 * g) * mode.eval(r)?)
}

/// The same eigenvalue in the intermediate hypergeometric form
/// `(4 pi)^{(n-1)/2} Gamma((n-1)/2) Gamma(n/2) Gamma(1/2) / Gamma(n-1)
///  * Gamma(n/2 + gamma + l) / (Gamma(n/2 + gamma) Gamma((n+1)/2 + l))
///  * F(gamma + 1/2, n/2 + l + gamma; l + (n+1)/2; r^2) r^l`.
pub fn zonal_kernel_eigenvalue_hypergeometric(
    params: &ModelParams,
    l: u32,
    r: f64,
) -> Result<f64> {
    let n = f64::from(params.n());
    let g = params.gamma_f64();
    let lf = f64::from(l);
    let pref = (4.0 * std::f64::consts::PI).powf((n - 1.0) / 2.0)
        * gamma_f64((n - 1.0) / 2.0) * gamma_f64(n / 2.0) * gamma_f64(0.5) / gamma_f64(n - 1.0)
        * gamma_ratio_f64(n / 2.0 + g + lf, (n + 1.0) / 2.0 + lf) / gamma_f64(n / 2.0 + g);
    Ok(pref * hyp2f1(g + 0.5, n / 2.0 + lf + g, lf + (n + 1.0) / 2.0, r * r)? * r.powi(l as i32))
}

// ---------------------------------------------------------------------------
// Exact radial-rational algebra: finite sums of  r^a * P(r^2) * rho^b
// ---------------------------------------------------------------------------

type ZPoly = Vec<BigRational>;

fn zp_scale(p: &ZPoly, s: &BigRational) -> ZPoly {
    p.iter().map(|c| c * s).collect()
}

fn zp_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn zp_add_into(acc: &mut ZPoly, other: &ZPoly) {
    if acc.len() < other.len() {
        acc.resize(other.len(), BigRational::zero());
    }
    for (i, c) in other.iter().enumerate() {
        acc[i] += c;
    }
}

fn zp_deriv(p: &ZPoly) -> ZPoly {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(j, c)| c * BigRational::from_integer(BigInt::from(j)))
        .collect()
}

/// `rho = (1 - z)/2` as a polynomial in `z = r^2`.
fn rho_poly() -> ZPoly {
    vec![BigRational::new(1.into(), 2.into()), BigRational::new((-1).into(), 2.into())]
}

/// One term `r^{r_pow} * poly(r^2) * rho^{rho_pow}` (negative powers of rho
/// allowed; `r_pow` parity is uniform within an expression).
#[derive(Clone, Debug)]
struct RadialTerm {
    r_pow: i64,
    rho_pow: i64,
    poly: ZPoly,
}

#[derive(Clone, Debug, Default)]
struct RadialExpr {
    terms: Vec<RadialTerm>,
}

impl RadialExpr {
    fn term(r_pow: i64, rho_pow: i64, poly: ZPoly) -> Self {
        Self { terms: vec![RadialTerm { r_pow, rho_pow, poly }] }
    }

    fn add(mut self, other: RadialExpr) -> Self {
        self.terms.extend(other.terms);
        self
    }

    fn scale(mut self, s: &BigRational) -> Self {
        for t in &mut self.terms {
            t.poly = zp_scale(&t.poly, s);
        }
        self
    }

    fn mul_r(mut self, k: i64) -> Self {
        for t in &mut self.terms {
            t.r_pow += k;
        }
        self
    }

    fn mul_rho(mut self, k: i64) -> Self {
        for t in &mut self.terms {
            t.rho_pow += k;
        }
        self
    }

    /// Exact `d/dr`, using `d rho / dr = -r`.
    fn deriv(&self) -> Self {
        let mut out = Vec::new();
        for t in &self.terms {
            if t.r_pow != 0 {
                out.push(RadialTerm {
                    r_pow: t.r_pow - 1,
                    rho_pow: t.rho_pow,
                    poly: zp_scale(&t.poly, &BigRational::from_integer(BigInt::from(t.r_pow))),
                });
            }
            let dp = zp_deriv(&t.poly);
            if !dp.is_empty() {
                out.push(RadialTerm {
                    r_pow: t.r_pow + 1,
                    rho_pow: t.rho_pow,
                    poly: zp_scale(&dp, &BigRational::from_integer(2.into())),
                });
            }
            if t.rho_pow != 0 {
                out.push(RadialTerm {
                    r_pow: t.r_pow + 1,
                    rho_pow: t.rho_pow - 1,
                    poly: zp_scale(&t.poly, &BigRational::from_integer(BigInt::from(-t.rho_pow))),
                });
            }
        }
        Self { terms: out }
    }

    /// Collapses to a single polynomial numerator over `r^{a_min} rho^{b_min}`;
    /// the expression is zero iff that numerator is.
    fn normalized_numerator(&self) -> Result<ZPoly> {
        let live: Vec<&RadialTerm> = self.terms.iter().filter(|t| !t.poly.is_empty()).collect();
        if live.is_empty() {
            return Ok(Vec::new());
        }
        let parity = live[0].r_pow.rem_euclid(2);
        if live.iter().any(|t| t.r_pow.rem_euclid(2) != parity) {
            return Err(Error::Structural("mixed r-parity in radial expression".into()));
        }
        let a_min = live.iter().map(|t| t.r_pow).min().unwrap();
        let b_min = live.iter().map(|t| t.rho_pow).min().unwrap();
        let rho = rho_poly();
        let mut acc: ZPoly = Vec::new();
        for t in live {
            let mut p = t.poly.clone();
            for _ in 0..(t.rho_pow - b_min) {
                p = zp_mul(&p, &rho);
            }
            let shift = ((t.r_pow - a_min) / 2) as usize;
            let mut shifted = vec![BigRational::zero(); shift];
            shifted.extend(p);
            zp_add_into(&mut acc, &shifted);
        }
        while acc.last().is_some_and(Zero::is_zero) {
            acc.pop();
        }
        Ok(acc)
    }
}

/// Radial flat Laplacian of `e * Y_l` in `R^{n+1}`:
/// `e'' + (n/r) e' - l(l+n-1) e / r^2`.
fn radial_flat_laplacian(e: &RadialExpr, n: u32, l: u32) -> RadialExpr {
    let d1 = e.deriv();
    let d2 = d1.deriv();
    let nf = BigRational::from_integer(BigInt::from(n));
    let ang = BigRational::from_integer(BigInt::from(-(i64::from(l) * (i64::from(l) + i64::from(n) - 1))));
    d2.add(d1.scale(&nf).mul_r(-1)).add(e.clone().scale(&ang).mul_r(-2))
}

/// Residual of an exact mode-eigenfunction or tau check.
#[derive(Clone, Debug)]
pub enum EigenResidual {
    /// Numerator coefficients of the exact residual; empty means the
    /// identity holds identically.
    ExactPoly(Vec<BigRational>),
    /// Max |residual| over the sample grid (numeric order path).
    Sampled { max_abs: f64, samples: Vec<(f64, f64)> },
}

impl EigenResidual {
    pub fn is_exactly_zero(&self) -> bool {
        matches!(self, EigenResidual::ExactPoly(p) if p.is_empty())
    }

    pub fn max_abs(&self) -> f64 {
        match self {
            EigenResidual::ExactPoly(p) => {
                if p.is_empty() {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            EigenResidual::Sampled { max_abs, .. } => *max_abs,
        }
    }
}

/// Verifies that the degree-`l` canonical mode solves the hyperbolic
/// eigenvalue equation.
///
/// Half-odd orders reduce to the exact polynomial identity
/// `Lap(rho^{-m} phi r^l) = m(m+1) rho^{-m-2} phi r^l` after the conformal
/// substitution; general orders are sampled with analytic hypergeometric
/// derivatives on `r in {0.1, ..., 0.9}`.
pub fn verify_mode_eigen(params: &ModelParams, l: u32) -> Result<EigenResidual> {
    if let Some(m) = params.m() {
        let mode = match phi_profile(params, l)? {
            RadialMode::Exact(p) => p,
            RadialMode::Numeric(_) => unreachable!("half-odd order has the exact profile"),
        };
        let phi: ZPoly = mode.radial().rational_coeffs()?;
        let h = RadialExpr::term(i64::from(l), -i64::from(m), phi.clone());
        let lap = radial_flat_laplacian(&h, params.n(), l);
        let mm1 = BigRational::from_integer(BigInt::from(i64::from(m) * (i64::from(m) + 1)));
        let rhs = RadialExpr::term(i64::from(l), -i64::from(m) - 2, phi).scale(&mm1);
        let resid = lap.add(rhs.scale(&-BigRational::one()));
        Ok(EigenResidual::ExactPoly(resid.normalized_numerator()?))
    } else {
        let g = params.gamma_f64();
        let n = f64::from(params.n());
        let lf = f64::from(l);
        let s = params.s();
        let (a, b, c) = (lf + n / 2.0 - g, 0.5 - g, lf + (n + 1.0) / 2.0);
        let pref = gamma_f64(g + 0.5) / gamma_f64(2.0 * g)
            * gamma_ratio_f64(lf + n / 2.0 + g, lf + (n + 1.0) / 2.0);
        let mut samples = Vec::new();
        let mut max_abs = 0.0f64;
        for i in 1..=9 {
            let r = 0.1 * f64::from(i);
            let z = r * r;
            let f0 = pref * hyp2f1(a, b, c, z)?;
            let f1 = pref * a * b / c * hyp2f1(a + 1.0, b + 1.0, c + 1.0, z)?;
            let f2 = pref * a * (a + 1.0) * b * (b + 1.0) / (c * (c + 1.0))
                * hyp2f1(a + 2.0, b + 2.0, c + 2.0, z)?;
            // w(r) = phi(r^2): w' = 2 r f1, w'' = 2 f1 + 4 r^2 f2
            let w = f0;
            let w1 = 2.0 * r * f1;
            let w2 = 2.0 * f1 + 4.0 * z * f2;
            // A = w r^l
            let rl = r.powi(l as i32);
            let a0 = w * rl;
            let a1 = w1 * rl + lf * w * rl / r;
            let a2 = w2 * rl + 2.0 * lf * w1 * rl / r + lf * (lf - 1.0) * w * rl / z;
            // B = rho^{n-s}
            let rho = (1.0 - z) / 2.0;
            let e = n - s;
            let b0 = rho.powf(e);
            let b1 = -e * r * rho.powf(e - 1.0);
            let b2 = e * (e - 1.0) * z * rho.powf(e - 2.0) - e * rho.powf(e - 1.0);
            let u0 = a0 * b0;
            let u1 = a1 * b0 + a0 * b1;
            let u2 = a2 * b0 + 2.0 * a1 * b1 + a0 * b2;
            let flat = u2 + n / r * u1 - lf * (lf + n - 1.0) * u0 / z;
            let resid = rho * rho * flat + (n - 1.0) * rho * r * u1 + s * (n - s) * u0;
            max_abs = max_abs.max(resid.abs());
            samples.push((r, resid));
        }
        Ok(EigenResidual::Sampled { max_abs, samples })
    }
}

/// Polynomial part of the critical conformal exponent: the coefficients
/// `S_k` of `S(rho) = Gamma((n+1)/2)/Gamma(n)
///   * sum_{k=1}^{(n-1)/2} Gamma(n-k) / (Gamma((n+1)/2 - k) k) (2 rho)^k`,
/// so the critical metric factor is `e^{2 S(rho)}` and `tau = S + ln rho`.
pub fn critical_exponent_coeffs(n: u32) -> Result<Vec<BigRational>> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "critical regime needs odd n >= 3, got {n}"
        )));
    }
    let nn = i64::from(n);
    let half = (nn - 1) / 2;
    // Gamma((n+1)/2)/Gamma(n) and Gamma(n-k)/Gamma((n+1)/2 - k): all integer
    // arguments for odd n, so everything is rational.
    let mut coeffs = vec![BigRational::zero(); half as usize + 1];
    for k in 1..=half {
        // Gamma((n+1)/2) / Gamma((n+1)/2 - k) = ((n+1)/2 - k)_k
        let upper = pochhammer(
            &BigRational::from_integer(((nn + 1) / 2 - k).into()),
            k as u32,
        );
        // Gamma(n-k) / Gamma(n) = 1 / (n-k)_k
        let lower = pochhammer(&BigRational::from_integer((nn - k).into()), k as u32);
        let two_k = BigRational::from_integer(BigInt::from(2).pow(k as u32));
        coeffs[k as usize] =
            upper * two_k / (lower * BigRational::from_integer(k.into()));
    }
    Ok(coeffs)
}

/// Exact residual of the critical-exponent equation: the hyperbolic
/// Laplacian of `tau = S(rho) + ln rho` must equal `-n` identically.
/// Returns the numerator coefficients of `L tau + n` (empty = pass).
pub fn tau_equation_residual(n: u32) -> Result<Vec<BigRational>> {
    let s_coeffs = critical_exponent_coeffs(n)?;
    // S(rho(z)) as a polynomial in z: substitute rho = (1 - z)/2
    let rho = rho_poly();
    let mut s_in_z: ZPoly = Vec::new();
    let mut rho_pow: ZPoly = vec![BigRational::one()];
    for (k, c) in s_coeffs.iter().enumerate() {
        if k > 0 {
            rho_pow = zp_mul(&rho_pow, &rho);
        }
        if !c.is_zero() {
            zp_add_into(&mut s_in_z, &zp_scale(&rho_pow, c));
        }
    }
    let poly_part = RadialExpr::term(0, 0, s_in_z);
    // d/dr ln rho = -r / rho
    let ln_deriv = RadialExpr::term(1, -1, vec![-BigRational::one()]);
    let tau_deriv = poly_part.deriv().add(ln_deriv.clone());
    // flat Laplacian of tau (radial, l = 0): tau'' + (n/r) tau'
    let tau_second = tau_deriv.deriv();
    let nf = BigRational::from_integer(BigInt::from(n));
    let flat = tau_second.add(tau_deriv.clone().scale(&nf).mul_r(-1));
    // L tau = rho^2 flat + (n-1) rho r tau'
    let n1 = BigRational::from_integer(BigInt::from(i64::from(n) - 1));
    let hyper = flat.mul_rho(2).add(tau_deriv.scale(&n1).mul_r(1).mul_rho(1));
    // residual: L tau + n = 0
    let resid = hyper.add(RadialExpr::term(0, 0, vec![nf]));
    resid.normalized_numerator()
}
