//! Adapted conformal metrics on the unit ball: the factor `psi_gamma`
//! written in the defining variable `rho = (1 - |x|^2)/2`, exact in the
//! half-odd regime, numeric through the two-branch hypergeometric
//! combination otherwise, and the exponential closed form in the critical
//! regime `gamma = n/2` (n odd).

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{eval_poly_f64, pochhammer, ExactScalar};
use crate::specfun::hyp2f1;
use crate::sphere::{GammaOrder, ModelParams};

use super::extend::critical_exponent_coeffs;
use super::profile::phi_profile;

/// Regime-tagged evaluator of the adapted-metric factor.
#[derive(Clone, Debug)]
pub enum AdaptedMetricFactor {
    /// `psi_{m+1/2}(rho) = sum_k ((n-1)/2 - m)_k (-m)_k / (-2m)_k (2rho)^k / k!`
    /// as exact coefficients of `rho^k`.
    ExactPoly { params: ModelParams, coeffs: Vec<BigRational> },
    /// Two-branch hypergeometric combination (non-half-integer order).
    Numeric { params: ModelParams },
    /// Critical conformal factor `e^{2 S(rho)}` with polynomial exponent.
    CriticalExp { params: ModelParams, s_coeffs: Vec<BigRational> },
}

impl AdaptedMetricFactor {
    pub fn new(params: &ModelParams) -> Result<Self> {
        if params.is_critical() {
            if params.n().is_multiple_of(2) {
                return Err(Error::Domain(format!(
                    "critical adapted metric needs odd n, got n = {}",
                    params.n()
                )));
            }
            return Ok(Self::CriticalExp {
                params: *params,
                s_coeffs: critical_exponent_coeffs(params.n())?,
            });
        }
        match params.gamma() {
            GammaOrder::Exact(h) if h.is_half_odd() => {
                let m = ((h.twice() - 1) / 2) as u32;
                Ok(Self::ExactPoly { params: *params, coeffs: psi_coeffs(params.n(), m) })
            }
            _ => Ok(Self::Numeric { params: *params }),
        }
    }

    pub fn params(&self) -> &ModelParams {
        match self {
            Self::ExactPoly { params, .. }
            | Self::Numeric { params }
            | Self::CriticalExp { params, .. } => params,
        }
    }

    /// Exact polynomial coefficients in `rho` (half-odd regime only).
    pub fn psi_poly(&self) -> Option<&[BigRational]> {
        match self {
            Self::ExactPoly { coeffs, .. } => Some(coeffs),
            _ => None,
        }
    }

    /// Exact value at rational `rho` when the regime allows one.
    pub fn eval_exact(&self, rho: &BigRational) -> Option<ExactScalar> {
        match self {
            Self::ExactPoly { coeffs, .. } => {
                let mut acc = BigRational::zero();
                for c in coeffs.iter().rev() {
                    acc = acc * rho + c;
                }
                Some(ExactScalar::from_rational(acc))
            }
            _ => None,
        }
    }

    /// Numeric value of the factor on `rho in (0, 1/2]`.
    pub fn eval(&self, rho: f64) -> Result<f64> {
        if !(rho > 0.0 && rho <= 0.5) {
            return Err(Error::Usage(format!("rho = {rho} outside (0, 1/2]")));
        }
        match self {
            Self::ExactPoly { coeffs, .. } => Ok(eval_poly_f64(coeffs, rho)),
            Self::Numeric { params } => psi_numeric(params, rho),
            Self::CriticalExp { s_coeffs, .. } => Ok((2.0 * eval_poly_f64(s_coeffs, rho)).exp()),
        }
    }
}

/// Coefficients of `psi_{m+1/2}` as a polynomial in `rho`:
/// coefficient of `rho^k` is `((n-1)/2 - m)_k (-m)_k / (-2m)_k * 2^k / k!`.
fn psi_coeffs(n: u32, m: u32) -> Vec<BigRational> {
    let a = BigRational::new((i64::from(n) - 1 - 2 * i64::from(m)).into(), 2.into());
    let b = BigRational::from_integer((-i64::from(m)).into());
    let c = BigRational::from_integer((-2 * i64::from(m)).into());
    let mut out = Vec::with_capacity(m as usize + 1);
    let mut fact = BigRational::one();
    for k in 0..=m {
        if k > 0 {
            fact *= BigRational::from_integer(i64::from(k).into());
        }
        let num = pochhammer(&a, k) * pochhammer(&b, k);
        let den = pochhammer(&c, k) * &fact;
        let two_k = BigRational::from_integer(2i64.pow(k).into());
        out.push(num * two_k / den);
    }
    out
}

/// Numeric `psi_gamma(rho)`.
///
/// For `rho <= 1/4` the printed two-branch combination in the variable
/// `2 rho` is summed directly; nearer the center the equivalent boundary
/// profile `phi_0(1 - 2 rho)` is used (each branch alone degenerates as
/// `2 rho -> 1`). The two representations agree on the overlap, which is
/// itself a consistency check exercised in tests.
fn psi_numeric(params: &ModelParams, rho: f64) -> Result<f64> {
    let n = f64::from(params.n());
    let g = params.gamma_f64();
    if rho <= 0.25 {
        let f_branch = hyp2f1(n / 2.0 - g, 0.5 - g, 1.0 - 2.0 * g, 2.0 * rho)?;
        let inv_d = crate::specfun::gamma_f64(-g)
            / (2f64.powf(2.0 * g) * crate::specfun::gamma_f64(g));
        let ratio = crate::specfun::gamma_ratio_f64(n / 2.0 + g, n / 2.0 - g);
        let h_branch = hyp2f1(0.5 + g, n / 2.0 + g, 1.0 + 2.0 * g, 2.0 * rho)?;
        Ok(f_branch + rho.powf(2.0 * g) * inv_d * ratio * h_branch)
    } else {
        let z = 1.0 - 2.0 * rho;
        phi_profile(params, 0)?.eval_phi(z)
    }
}

/// Convenience entry point: the adapted-metric factor at a single `rho`.
pub fn adapted_metric_factor(params: &ModelParams, rho: f64) -> Result<f64> {
    AdaptedMetricFactor::new(params)?.eval(rho)
}

/// Numeric dimension-continuity limit of the subcritical family at the
/// critical dimension `n -> 2m+1`: `lim (psi_{m+1/2})^{4/(n - 2m - 1)}`
/// evaluated at `n = 2m + 1 + eps` through the exact coefficient formulas.
pub fn dimension_continuity_limit(m: u32, rho: f64, eps: f64) -> f64 {
    // psi with a real dimension parameter: coefficients from the same
    // rising-product formula with n = 2m + 1 + eps.
    let nf = 2.0 * f64::from(m) + 1.0 + eps;
    let a = (nf - 1.0) / 2.0 - f64::from(m);
    let b = -f64::from(m);
    let c = -2.0 * f64::from(m);
    let mut value = 0.0;
    let mut term = 1.0;
    for k in 0..=m {
        if k > 0 {
            let kf = f64::from(k) - 1.0;
            term *= (a + kf) * (b + kf) / ((c + kf) * f64::from(k)) * 2.0 * rho;
        }
        value += term;
    }
    // (psi)^{4/eps}, with ln computed as ln_1p(psi - 1) for small eps
    (4.0 / eps * (value - 1.0).ln_1p()).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn order_zero_is_identity() {
        // gamma = 1/2 (m = 0): psi = 1 for all rho
        for n in [3u32, 6, 9] {
            let params = ModelParams::half_odd(n, 0).unwrap();
            let f = AdaptedMetricFactor::new(&params).unwrap();
            assert_eq!(f.psi_poly().unwrap(), &[BigRational::one()]);
            for rho in [0.1, 0.3, 0.5] {
                assert_eq!(f.eval(rho).unwrap(), 1.0);
            }
        }
    }

    #[test]
    fn order_one_linear_form() {
        // gamma = 3/2 (m = 1): psi = 1 + (n-3) rho / 2
        for n in [4u32, 7, 10] {
            let params = ModelParams::half_odd(n, 1).unwrap();
            let f = AdaptedMetricFactor::new(&params).unwrap();
            assert_eq!(
                f.psi_poly().unwrap(),
                &[BigRational::one(), rat(i64::from(n) - 3, 2)]
            );
        }
    }

    #[test]
    fn matches_boundary_profile() {
        // psi_gamma(rho) must equal phi_0(1 - 2 rho) in the exact regime
        for (n, m) in [(7u32, 1u32), (9, 3)] {
            let params = ModelParams::half_odd(n, m).unwrap();
            let f = AdaptedMetricFactor::new(&params).unwrap();
            let mode = phi_profile(&params, 0).unwrap();
            for rho in [0.1, 0.25, 0.4, 0.5] {
                let z = 1.0 - 2.0 * rho;
                let psi = f.eval(rho).unwrap();
                let phi = mode.eval_phi(z).unwrap();
                assert!((psi - phi).abs() < 1e-13 * psi.abs().max(1.0), "(n,m,rho)=({n},{m},{rho})");
            }
        }
    }

    #[test]
    fn constant_extension_is_metric_factor() {
        // for the constant datum the mode series collapses to
        // rho^{(n-1)/2 - m} psi_{m+1/2}(rho)
        use crate::ball::series_extend;
        use crate::sphere::ZonalFunction;
        for (n, m) in [(6u32, 1u32), (9, 3)] {
            let params = ModelParams::half_odd(n, m).unwrap();
            let factor = AdaptedMetricFactor::new(&params).unwrap();
            let f = ZonalFunction::constant(n, 1.0);
            for r in [0.0f64, 0.3, 0.8] {
                let rho = (1.0 - r * r) / 2.0;
                let series = series_extend(&f, r, 1.0, &params).unwrap();
                let expect = rho.powf((f64::from(n) - 1.0) / 2.0 - f64::from(m))
                    * factor.eval(rho).unwrap();
                assert!(
                    (series - expect).abs() <= 1e-14 * expect.abs(),
                    "(n,m,r)=({n},{m},{r}): {series} vs {expect}"
                );
            }
        }
    }

    #[test]
    fn numeric_branch_overlap() {
        // the two-branch form (rho <= 1/4) and the profile form agree
        for (n, g) in [(4u32, 0.8f64), (5, 1.2), (3, 0.7)] {
            let params = ModelParams::general(n, g).unwrap();
            for rho in [0.2f64, 0.25] {
                let two_branch = psi_numeric(&params, rho).unwrap();
                let profile = phi_profile(&params, 0)
                    .unwrap()
                    .eval_phi(1.0 - 2.0 * rho)
                    .unwrap();
                assert!(
                    (two_branch - profile).abs() < 1e-10 * two_branch.abs().max(1.0),
                    "(n,g,rho)=({n},{g},{rho}): {two_branch} vs {profile}"
                );
            }
        }
    }

    #[test]
    fn continuity_across_half_integer_orders() {
        // gamma -> 3/2 from both sides approaches psi_{3/2} = 1 + (n-3) rho/2
        let n = 6u32;
        for rho in [0.1f64, 0.35] {
            let exact = 1.0 + (f64::from(n) - 3.0) * rho / 2.0;
            for eps in [1e-7, -1e-7] {
                let params = ModelParams::general(n, 1.5 + eps).unwrap();
                let v = adapted_metric_factor(&params, rho).unwrap();
                assert!((v - exact).abs() < 1e-6, "eps = {eps}, rho = {rho}: {v} vs {exact}");
            }
        }
    }

    #[test]
    fn dimension_continuity_to_exponential() {
        // (1 + (n-3) rho / 2)^{4/(n-3)} -> e^{2 rho} as n -> 3 (m = 1), the
        // critical factor at n = 3
        for rho in [0.1f64, 0.3, 0.5] {
            let lim = dimension_continuity_limit(1, rho, 1e-6);
            let target = (2.0 * rho).exp();
            assert!((lim - target).abs() < 1e-6 * target, "rho = {rho}: {lim} vs {target}");
            // and the critical evaluator returns the same factor
            let params = ModelParams::half_odd(3, 1).unwrap();
            let crit = adapted_metric_factor(&params, rho).unwrap();
            assert!((crit - target).abs() < 1e-14 * target);
        }
    }

    #[test]
    fn critical_even_dimension_rejected() {
        let params = ModelParams::general(4, 2.0).unwrap();
        assert!(AdaptedMetricFactor::new(&params).is_err());
    }

    #[test]
    fn positive_on_range() {
        for (n, g) in [(5u32, 0.6f64), (5, 2.2), (7, 3.4)] {
            let params = ModelParams::general(n, g).unwrap();
            for i in 1..=10 {
                let rho = 0.05 * f64::from(i);
                assert!(adapted_metric_factor(&params, rho).unwrap() > 0.0);
            }
        }
    }
}
