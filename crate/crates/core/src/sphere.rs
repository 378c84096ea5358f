//! Spectral calculus on the n-sphere: Funk-Hecke eigenvalues of zonal
//! kernels, the fractional conformal operator symbols, and Gegenbauer-basis
//! expansions of zonal boundary data.
//!
//! Boundary data is represented exclusively in the zonal basis: every test
//! function is rotation-reduced to depend on `t = <xi, e>` for a fixed pole
//! `e`, and operators diagonal on spherical harmonics act per degree `l`.

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exact::{pochhammer, rational_to_f64, ExactScalar, HalfInt};
use crate::specfun::{
    gamma_f64, gegenbauer, gegenbauer_norm_sq, ln_gamma_f64, pairwise_sum, QuadDomain,
    QuadratureRule,
};

/// Order parameter of the fractional operator family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GammaOrder {
    /// `gamma = twice/2` exactly; the half-odd subfamily `gamma = m + 1/2`
    /// is the polynomial regime.
    Exact(HalfInt),
    /// Arbitrary real order in `(0, n/2]`; numeric path only.
    General(f64),
}

/// Model parameters `(n, gamma)` with `s = n/2 + gamma`.
///
/// `2m + 1 < n` is the subcritical range of the trace theorems;
/// `2m + 1 = n` (n odd) is the critical exponential regime.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    n: u32,
    gamma: GammaOrder,
}

impl ModelParams {
    /// Half-odd order `gamma = m + 1/2`.
    pub fn half_odd(n: u32, m: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::Usage(format!("sphere dimension n = {n} < 2")));
        }
        if 2 * m + 1 > n {
            return Err(Error::Usage(format!(
                "order m = {m} outside the admissible range 2m+1 <= n = {n}"
            )));
        }
        Ok(Self { n, gamma: GammaOrder::Exact(HalfInt::int_plus_half(i64::from(m))) })
    }

    /// Exact order `gamma = twice/2` (integer or half-odd).
    pub fn exact_order(n: u32, gamma: HalfInt) -> Result<Self> {
        if n < 2 {
            return Err(Error::Usage(format!("sphere dimension n = {n} < 2")));
        }
        if !gamma.is_positive() || gamma.twice() > i64::from(n) {
            return Err(Error::Usage(format!(
                "order gamma = {gamma} outside (0, n/2] for n = {n}"
            )));
        }
        Ok(Self { n, gamma: GammaOrder::Exact(gamma) })
    }

    /// General real order in `(0, n/2]`.
    pub fn general(n: u32, gamma: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Usage(format!("sphere dimension n = {n} < 2")));
        }
        if !(gamma > 0.0 && gamma <= f64::from(n) / 2.0) {
            return Err(Error::Usage(format!(
                "order gamma = {gamma} outside (0, n/2] for n = {n}"
            )));
        }
        Ok(Self { n, gamma: GammaOrder::General(gamma) })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn gamma(&self) -> GammaOrder {
        self.gamma
    }

    pub fn gamma_f64(&self) -> f64 {
        match self.gamma {
            GammaOrder::Exact(h) => h.to_f64(),
            GammaOrder::General(g) => g,
        }
    }

    /// `s = n/2 + gamma`.
    pub fn s(&self) -> f64 {
        f64::from(self.n) / 2.0 + self.gamma_f64()
    }

    /// The half-odd index `m` when `gamma = m + 1/2`.
    pub fn m(&self) -> Option<u32> {
        match self.gamma {
            GammaOrder::Exact(h) if h.is_half_odd() && h.is_positive() => {
                Some(((h.twice() - 1) / 2) as u32)
            }
            _ => None,
        }
    }

    /// True in the exponential regime `gamma = n/2` (n odd, `2m + 1 = n`).
    pub fn is_critical(&self) -> bool {
        match self.gamma {
            GammaOrder::Exact(h) => h.twice() == i64::from(self.n),
            GammaOrder::General(g) => g == f64::from(self.n) / 2.0,
        }
    }

    /// `gamma` as an exact rational when available.
    pub fn gamma_exact(&self) -> Option<HalfInt> {
        match self.gamma {
            GammaOrder::Exact(h) => Some(h),
            GammaOrder::General(_) => None,
        }
    }
}

impl fmt::Display for ModelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.gamma {
            GammaOrder::Exact(h) => write!(f, "n={}, gamma={}", self.n, h),
            GammaOrder::General(g) => write!(f, "n={}, gamma={}", self.n, g),
        }
    }
}

/// Surface volume of the unit `k`-sphere, `2 pi^{(k+1)/2} / Gamma((k+1)/2)`.
pub fn sphere_volume(k: u32) -> f64 {
    2.0 * std::f64::consts::PI.powf((f64::from(k) + 1.0) / 2.0) / gamma_f64((f64::from(k) + 1.0) / 2.0)
}

/// Weighted norm of the degree-`l` zonal mode on the `n`-sphere:
/// `int_S [C_l^{(n-1)/2}(<xi,e>)]^2 dsigma = |S^{n-1}| N_l` with `N_l` the
/// Gegenbauer normalization.
pub fn zonal_mode_norm_sq(n: u32, l: usize) -> f64 {
    sphere_volume(n - 1) * gegenbauer_norm_sq((f64::from(n) - 1.0) / 2.0, l)
}

/// An operator diagonal on spherical harmonics: a deterministic map from
/// degree `l` to its eigenvalue, carried on an exact path (when the
/// parameters allow one) and always on a numeric path.
#[derive(Clone)]
pub struct SpectralSymbol {
    tag: String,
    exact: Option<Arc<dyn Fn(u32) -> Result<ExactScalar> + Send + Sync>>,
    numeric: Arc<dyn Fn(u32) -> f64 + Send + Sync>,
}

impl SpectralSymbol {
    pub fn new(
        tag: impl Into<String>,
        exact: Option<Arc<dyn Fn(u32) -> Result<ExactScalar> + Send + Sync>>,
        numeric: Arc<dyn Fn(u32) -> f64 + Send + Sync>,
    ) -> Self {
        Self { tag: tag.into(), exact, numeric }
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn eval_f64(&self, l: u32) -> f64 {
        (self.numeric)(l)
    }

    pub fn eval_exact(&self, l: u32) -> Option<Result<ExactScalar>> {
        self.exact.as_ref().map(|f| f(l))
    }

    pub fn has_exact(&self) -> bool {
        self.exact.is_some()
    }
}

impl fmt::Debug for SpectralSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SpectralSymbol({})", self.tag)
    }
}

/// Exact eigenvalue of the order-`2 gamma` operator at degree `l` when
/// `2 gamma` is an integer: the length-`2 gamma` rising product starting at
/// `l + n/2 - gamma`. At the critical degeneracy (`l = 0`, `gamma = n/2`)
/// the product vanishes, annihilating constants.
pub fn gjms_eigenvalue_exact(n: u32, gamma: HalfInt, l: u32) -> Result<BigRational> {
    let order = gamma.twice(); // 2 gamma
    if order <= 0 {
        return Err(Error::Domain(format!("order 2 gamma = {order} <= 0")));
    }
    // start = l + n/2 - gamma as a rational
    let start = HalfInt::new(2 * i64::from(l) + i64::from(n) - gamma.twice());
    Ok(pochhammer(&start.to_rational(), order as u32))
}

/// Numeric eigenvalue `Gamma(l + n/2 + gamma) / Gamma(l + n/2 - gamma)`.
pub fn gjms_eigenvalue_f64(n: u32, gamma: f64, l: u32) -> f64 {
    let base = f64::from(l) + f64::from(n) / 2.0;
    if base - gamma <= 0.0 {
        // Gamma pole in the denominator: the eigenvalue degenerates to 0
        // only at the critical point; elsewhere this is out of range.
        return 0.0;
    }
    (ln_gamma_f64(base + gamma) - ln_gamma_f64(base - gamma)).exp()
}

/// The order-`2 gamma` conformal operator symbol
/// `l -> Gamma(l + n/2 + gamma) / Gamma(l + n/2 - gamma)`.
pub fn gjms_symbol(params: &ModelParams) -> SpectralSymbol {
    let n = params.n();
    let g = params.gamma_f64();
    let exact = params.gamma_exact().map(|h| {
        let f: Arc<dyn Fn(u32) -> Result<ExactScalar> + Send + Sync> =
            Arc::new(move |l| gjms_eigenvalue_exact(n, h, l).map(ExactScalar::from_rational));
        f
    });
    SpectralSymbol::new(
        format!("P[2gamma] symbol, {params}"),
        exact,
        Arc::new(move |l| gjms_eigenvalue_f64(n, g, l)),
    )
}

/// The first-order companion symbol `l -> l + (n-1)/2`.
pub fn b_symbol(n: u32) -> SpectralSymbol {
    let exact: Arc<dyn Fn(u32) -> Result<ExactScalar> + Send + Sync> = Arc::new(move |l| {
        Ok(ExactScalar::from_rational(
            HalfInt::new(2 * i64::from(l) + i64::from(n) - 1).to_rational(),
        ))
    });
    SpectralSymbol::new(
        format!("B symbol, n={n}"),
        Some(exact),
        Arc::new(move |l| f64::from(l) + (f64::from(n) - 1.0) / 2.0),
    )
}

/// Funk-Hecke eigenvalue of the zonal kernel `K` at degree `l`:
/// `lambda_l = (4 pi)^{(n-1)/2} l! Gamma((n-1)/2) / Gamma(l + n - 1)
///            * int_{-1}^{1} K(t) C_l^{(n-1)/2}(t) (1-t^2)^{(n-2)/2} dt`.
pub fn funk_hecke_lambda<K: Fn(f64) -> f64>(
    kernel: K,
    l: usize,
    n: u32,
    rule: &QuadratureRule,
) -> Result<f64> {
    match rule.domain() {
        QuadDomain::GegenbauerInterval { n: rn } if rn == n => {}
        other => {
            return Err(Error::Usage(format!(
                "Funk-Hecke needs the n = {n} zonal rule, got {other:?}"
            )))
        }
    }
    let alpha = (f64::from(n) - 1.0) / 2.0;
    let integral = rule.integrate(|t| kernel(t) * gegenbauer(alpha, l, t));
    if !integral.is_finite() {
        return Err(Error::Convergence("Funk-Hecke quadrature diverged".into()));
    }
    let nf = f64::from(n);
    let pref = (4.0 * std::f64::consts::PI).powf((nf - 1.0) / 2.0)
        * (ln_gamma_f64(l as f64 + 1.0) + ln_gamma_f64((nf - 1.0) / 2.0)
            - ln_gamma_f64(l as f64 + nf - 1.0))
        .exp();
    Ok(pref * integral)
}

/// A zonal function `f(t) = sum_l f_l C_l^{(n-1)/2}(t)` with finite
/// truncation degree.
#[derive(Clone, Debug)]
pub struct ZonalFunction {
    n: u32,
    coeffs: Vec<f64>,
}

impl ZonalFunction {
    pub fn from_coeffs(n: u32, coeffs: Vec<f64>) -> Self {
        Self { n, coeffs }
    }

    /// The constant function `value`.
    pub fn constant(n: u32, value: f64) -> Self {
        Self { n, coeffs: vec![value] }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn truncation_degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Pointwise resummation at `t` (fixed-order pairwise sum).
    pub fn eval(&self, t: f64) -> f64 {
        let alpha = (f64::from(self.n) - 1.0) / 2.0;
        let terms: Vec<f64> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(l, &c)| c * gegenbauer(alpha, l, t))
            .collect();
        pairwise_sum(&terms)
    }

    /// Coefficient of the *unit-norm* degree-`l` mode; squares to the
    /// mode's share of `||f||^2_{L^2}`.
    pub fn unit_mode_coeff(&self, l: usize) -> f64 {
        let c = self.coeffs.get(l).copied().unwrap_or(0.0);
        c * zonal_mode_norm_sq(self.n, l).sqrt()
    }

    pub fn l2_norm_sq(&self) -> f64 {
        let terms: Vec<f64> = (0..self.coeffs.len())
            .map(|l| self.unit_mode_coeff(l).powi(2))
            .collect();
        pairwise_sum(&terms)
    }
}

/// Result of a zonal expansion, carrying its own accuracy diagnostics.
#[derive(Clone, Debug)]
pub struct ZonalExpansion {
    pub fun: ZonalFunction,
    /// Max pointwise |f - resummation| over the diagnostic grid.
    pub reconstruction_error: f64,
    /// `|f_L| / max_l |f_l|`: tail-decay indicator.
    pub tail_ratio: f64,
    /// Set when a diagnostic exceeded its configured bound.
    pub warning: Option<String>,
}

/// Default reconstruction bound for [`zonal_expand`].
pub const ZONAL_RECONSTRUCTION_BOUND: f64 = 1e-8;
/// Default tail-decay bound.
pub const ZONAL_TAIL_BOUND: f64 = 1e-10;

/// Expands `g` in the Gegenbauer basis up to degree `max_degree`:
/// `f_l = int g C_l (1-t^2)^{(n-2)/2} dt / N_l`, then resums on a
/// diagnostic grid and reports the pointwise reconstruction error.
pub fn zonal_expand<G: Fn(f64) -> f64>(
    g: G,
    n: u32,
    max_degree: usize,
    rule: &QuadratureRule,
) -> Result<ZonalExpansion> {
    match rule.domain() {
        QuadDomain::GegenbauerInterval { n: rn } if rn == n => {}
        other => {
            return Err(Error::Usage(format!(
                "zonal expansion needs the n = {n} zonal rule, got {other:?}"
            )))
        }
    }
    let alpha = (f64::from(n) - 1.0) / 2.0;
    let mut coeffs = Vec::with_capacity(max_degree + 1);
    for l in 0..=max_degree {
        let raw = rule.integrate(|t| g(t) * gegenbauer(alpha, l, t));
        coeffs.push(raw / gegenbauer_norm_sq(alpha, l));
    }
    let fun = ZonalFunction::from_coeffs(n, coeffs);
    let max_c = fun.coeffs().iter().fold(0.0f64, |a, c| a.max(c.abs()));
    let tail_ratio = if max_c > 0.0 {
        fun.coeffs().last().copied().unwrap_or(0.0).abs() / max_c
    } else {
        0.0
    };
    let mut reconstruction_error = 0.0f64;
    for i in 0..=20 {
        let t = -0.95 + 1.9 * (i as f64) / 20.0;
        reconstruction_error = reconstruction_error.max((fun.eval(t) - g(t)).abs());
    }
    let mut warning = None;
    if tail_ratio > ZONAL_TAIL_BOUND {
        warning = Some(format!(
            "slow coefficient decay: |f_L|/max|f_l| = {tail_ratio:.3e}"
        ));
    }
    if reconstruction_error > ZONAL_RECONSTRUCTION_BOUND {
        warning = Some(format!(
            "pointwise reconstruction error {reconstruction_error:.3e} above bound"
        ));
    }
    Ok(ZonalExpansion { fun, reconstruction_error, tail_ratio, warning })
}

/// Exact eigenvalue helper used across the trace formulas: the quotient of
/// symbols of orders `2a+1` and `2b+1` (with `a >= b`) collapses to the
/// pole-free product `(A + b + 1/2)_{a-b} (A - a - 1/2)_{a-b}`, `A = l + n/2`.
pub fn symbol_quotient_exact(n: u32, l: u32, a: u32, b: u32) -> Result<BigRational> {
    if b > a {
        return Err(Error::Usage(format!("quotient needs a >= b, got {a} < {b}")));
    }
    let k = a - b;
    let big_a = HalfInt::new(2 * i64::from(l) + i64::from(n));
    let upper = big_a.add(HalfInt::new(2 * i64::from(b) + 1));
    let lower = big_a.sub(HalfInt::new(2 * i64::from(a) + 1));
    Ok(pochhammer(&upper.to_rational(), k) * pochhammer(&lower.to_rational(), k))
}

/// Float view of an exact rational (for mixed-path comparisons).
pub fn rational_f64(q: &BigRational) -> f64 {
    rational_to_f64(q)
}
