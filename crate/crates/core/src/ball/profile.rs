//! Canonical extension modes on the unit ball: the radial profiles
//! `phi_l(r^2) r^l` of the order-`2m+1` Poisson extension, their iterated
//! Laplacians in closed form, and the exact boundary traces at `r = 1`
//! computed along two independent routes.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    gamma_product_ratio, hyp2f1_terminating, pochhammer, ExactScalar, HalfInt, RadialPoly,
};
use crate::specfun::hyp2f1;
use crate::sphere::{symbol_quotient_exact, GammaOrder, ModelParams};

/// The degree-`l` summand `h(r) Y_l` of an extension `v = sum_l h_l(r) Y_l`.
///
/// For canonical modes the radial part is a polynomial of degree `2m`
/// beyond the `r^l` prefactor, with `h_l(1) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeProfile {
    radial: RadialPoly,
}

impl ModeProfile {
    pub fn new(radial: RadialPoly) -> Self {
        Self { radial }
    }

    pub fn l(&self) -> u32 {
        self.radial.l()
    }

    pub fn radial(&self) -> &RadialPoly {
        &self.radial
    }

    pub fn into_radial(self) -> RadialPoly {
        self.radial
    }

    pub fn is_zero(&self) -> bool {
        self.radial.is_zero()
    }

    pub fn eval_f64(&self, r: f64) -> f64 {
        self.radial.eval_f64(r)
    }

    pub fn value_at_one(&self) -> Result<ExactScalar> {
        self.radial.value_at_one()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self::new(self.radial.add(&other.radial)?))
    }
}

/// Either an exact polynomial mode (half-odd order) or a numeric radial
/// functor (general order).
#[derive(Clone, Debug)]
pub enum RadialMode {
    Exact(ModeProfile),
    Numeric(NumericMode),
}

impl RadialMode {
    pub fn eval(&self, r: f64) -> Result<f64> {
        match self {
            RadialMode::Exact(p) => Ok(p.eval_f64(r)),
            RadialMode::Numeric(f) => f.eval(r),
        }
    }

    /// `phi_l` at `z = r^2` (the polynomial part, without the `r^l` factor).
    pub fn eval_phi(&self, z: f64) -> Result<f64> {
        match self {
            RadialMode::Exact(p) => {
                let mut acc = 0.0;
                for c in p.radial().coeffs().iter().rev() {
                    acc = acc * z + c.to_f64();
                }
                Ok(acc)
            }
            RadialMode::Numeric(f) => f.eval_phi(z),
        }
    }
}

/// Numeric evaluator of `phi_l(r^2) r^l` through the hypergeometric series.
#[derive(Clone, Debug)]
pub struct NumericMode {
    n: u32,
    gamma: f64,
    l: u32,
}

impl NumericMode {
    pub fn eval(&self, r: f64) -> Result<f64> {
        Ok(self.eval_phi(r * r)? * r.powi(self.l as i32))
    }

    /// `phi_l(z) = Gamma(gamma + 1/2) / Gamma(2 gamma)
    ///   * Gamma(l + n/2 + gamma) / Gamma(l + (n+1)/2)
    ///   * F(l + n/2 - gamma, 1/2 - gamma; l + (n+1)/2; z)`, with
    /// `phi_l(1) = 1` by Gauss summation.
    pub fn eval_phi(&self, z: f64) -> Result<f64> {
        let n = f64::from(self.n);
        let g = self.gamma;
        let l = f64::from(self.l);
        let pref = crate::specfun::gamma_f64(g + 0.5) / crate::specfun::gamma_f64(2.0 * g)
            * crate::specfun::gamma_ratio_f64(l + n / 2.0 + g, l + (n + 1.0) / 2.0);
        Ok(pref * hyp2f1(l + n / 2.0 - g, 0.5 - g, l + (n + 1.0) / 2.0, z)?)
    }
}

/// Exact coefficients of `phi_l` in `z = r^2` for the half-odd regime:
/// `phi_l(z) = m!/(2m)! * (l + (n+1)/2)_m * F(l + (n-1)/2 - m, -m; l + (n+1)/2; z)`.
fn phi_coeffs_exact(n: u32, m: u32, l: u32) -> Result<Vec<BigRational>> {
    let a = HalfInt::new(2 * i64::from(l) + i64::from(n) - 1 - 2 * i64::from(m)).to_rational();
    let b = BigRational::from_integer((-i64::from(m)).into());
    let c = HalfInt::new(2 * i64::from(l) + i64::from(n) + 1).to_rational();
    let mut pref = pochhammer(&c, m); // Gamma(l+(n+1)/2+m)/Gamma(l+(n+1)/2)
    let mut fact = BigRational::one();
    for i in (i64::from(m) + 1)..=(2 * i64::from(m)) {
        fact *= BigRational::from_integer(i.into());
    }
    pref /= fact; // Gamma(m+1)/Gamma(2m+1)
    Ok(hyp2f1_terminating(&a, &b, &c)?
        .into_iter()
        .map(|co| &co * &pref)
        .collect())
}

/// The canonical mode profile at degree `l`: exact polynomial when
/// `gamma = m + 1/2`, numeric functor otherwise. Satisfies `phi_l(1) = 1`.
pub fn phi_profile(params: &ModelParams, l: u32) -> Result<RadialMode> {
    if params.gamma_f64() >= f64::from(params.n()) / 2.0 && !params.is_critical() {
        return Err(Error::Domain(format!("order gamma out of range for {params}")));
    }
    match (params.m(), params.gamma()) {
        (Some(m), _) => {
            let coeffs = phi_coeffs_exact(params.n(), m, l)?;
            Ok(RadialMode::Exact(ModeProfile::new(RadialPoly::from_rationals(l, coeffs))))
        }
        (None, GammaOrder::General(g)) => {
            Ok(RadialMode::Numeric(NumericMode { n: params.n(), gamma: g, l }))
        }
        (None, GammaOrder::Exact(h)) => {
            // integer gamma: numeric path with the exact order value
            Ok(RadialMode::Numeric(NumericMode { n: params.n(), gamma: h.to_f64(), l }))
        }
    }
}

/// Exact Euclidean Laplacian in `R^{n+1}` of the mode `h(r) Y_l`:
/// `h'' + (n/r) h' - l(l+n-1) h / r^2`, which keeps the `r^l` prefactor.
pub fn mode_laplacian(p: &ModeProfile, n: u32) -> Result<ModeProfile> {
    let l = p.l();
    let coeffs = p.radial().coeffs();
    if coeffs.is_empty() {
        return Ok(ModeProfile::new(RadialPoly::zero(l)));
    }
    let ll = i64::from(l);
    let nn = i64::from(n);
    let mut out = Vec::with_capacity(coeffs.len().saturating_sub(1));
    for (j, c) in coeffs.iter().enumerate().skip(1) {
        let p2 = ll + 2 * j as i64; // power of the monomial r^{l+2j}
        let factor = p2 * (p2 + nn - 1) - ll * (ll + nn - 1);
        out.push(c.mul(&ExactScalar::from_int(factor))?);
    }
    Ok(ModeProfile::new(RadialPoly::new(l, out)))
}

/// Closed-form degree-`l` mode of the `k`-fold Laplacian of the canonical
/// extension: `4^k * pref * (l + (n-1)/2 - m)_k (-m)_k *
/// F(l + (n-1)/2 - m + k, -m + k; l + (n+1)/2; r^2) r^l`, `0 <= k <= m+1`.
pub fn delta_k_mode(params: &ModelParams, l: u32, k: u32) -> Result<ModeProfile> {
    let m = params
        .m()
        .ok_or_else(|| Error::Usage(format!("closed-form Laplacians need gamma = m + 1/2, got {params}")))?;
    if k > m + 1 {
        return Err(Error::Usage(format!("Laplacian index k = {k} > m + 1 = {}", m + 1)));
    }
    let n = params.n();
    let a = HalfInt::new(2 * i64::from(l) + i64::from(n) - 1 - 2 * i64::from(m)).to_rational();
    let b = BigRational::from_integer((-i64::from(m)).into());
    let c = HalfInt::new(2 * i64::from(l) + i64::from(n) + 1).to_rational();
    let rising = pochhammer(&a, k) * pochhammer(&b, k);
    if rising.is_zero() {
        return Ok(ModeProfile::new(RadialPoly::zero(l)));
    }
    let shift = BigRational::from_integer(i64::from(k).into());
    let poly = hyp2f1_terminating(&(&a + &shift), &(&b + &shift), &c)?;
    let mut pref = pochhammer(&c, m) * rising;
    let mut fact = BigRational::one();
    for i in (i64::from(m) + 1)..=(2 * i64::from(m)) {
        fact *= BigRational::from_integer(i.into());
    }
    pref /= fact;
    pref *= BigRational::from_integer(4i64.pow(k).into());
    let coeffs = poly.into_iter().map(|co| &co * &pref).collect();
    Ok(ModeProfile::new(RadialPoly::from_rationals(l, coeffs)))
}

/// One boundary-trace row: the same quantity along the direct
/// (profile-differentiation) route and the closed-form (spectral) route,
/// with their difference. A nonzero residual is a verification failure
/// carried as data.
#[derive(Clone, Debug)]
pub struct TraceRow {
    pub k: u32,
    pub direct: BigRational,
    pub closed_form: BigRational,
    pub residual: BigRational,
}

impl TraceRow {
    pub fn is_zero_residual(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Exact boundary traces of a unit canonical mode at degree `l`.
#[derive(Clone, Debug)]
pub struct BoundaryTraces {
    pub params: ModelParams,
    pub l: u32,
    /// `Delta^k v` at `r = 1`, `k = 0..=m`.
    pub dirichlet: Vec<TraceRow>,
    /// `d/dr Delta^k v` at `r = 1`, `k = 0..=m` (the `k = m` row uses the
    /// top closed form).
    pub neumann: Vec<TraceRow>,
    /// Second pure normal derivative against the spectral composite
    /// (defined for `m >= 1`).
    pub second_normal: Option<TraceRow>,
}

impl BoundaryTraces {
    pub fn all_residuals_zero(&self) -> bool {
        self.dirichlet.iter().all(TraceRow::is_zero_residual)
            && self.neumann.iter().all(TraceRow::is_zero_residual)
            && self.second_normal.as_ref().is_none_or(TraceRow::is_zero_residual)
    }
}

fn trace_coefficient(m: u32, k: u32) -> Result<BigRational> {
    // Gamma(m+1) Gamma(m-k+1/2) / (Gamma(m+1/2) Gamma(m-k+1)): rational
    gamma_product_ratio(
        &[HalfInt::from_int(i64::from(m) + 1), HalfInt::int_plus_half(i64::from(m - k))],
        &[HalfInt::int_plus_half(i64::from(m)), HalfInt::from_int(i64::from(m - k) + 1)],
    )?
    .into_rational()
}

fn sign(k: u32) -> BigRational {
    if k.is_multiple_of(2) {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// Exact boundary traces of the unit degree-`l` mode, computed two ways:
/// direct differentiation of the closed-form Laplacian profiles at `r = 1`,
/// and the spectral forms through the symbol quotients. Both are returned
/// with their residual, which must vanish identically.
pub fn boundary_traces(params: &ModelParams, l: u32) -> Result<BoundaryTraces> {
    let m = params
        .m()
        .ok_or_else(|| Error::Usage(format!("boundary traces need gamma = m + 1/2, got {params}")))?;
    let n = params.n();
    let mut dirichlet = Vec::with_capacity(m as usize + 1);
    let mut neumann = Vec::with_capacity(m as usize + 1);
    for k in 0..=m {
        let profile = delta_k_mode(params, l, k)?;
        let direct = profile.value_at_one()?.into_rational()?;
        let quot = symbol_quotient_exact(n, l, m, m - k)?;
        let closed = sign(k) * trace_coefficient(m, k)? * &quot;
        dirichlet.push(TraceRow {
            k,
            residual: &direct - &closed,
            direct,
            closed_form: closed,
        });

        let d_direct = profile
            .radial()
            .deriv()?
            .value_at_one()?
            .into_rational()?;
        let d_closed = if k < m {
            // -( (n-1)/2 - m + k ) * (Delta^k trace)
            let factor = HalfInt::new(i64::from(n) - 1 - 2 * i64::from(m) + 2 * i64::from(k));
            -factor.to_rational() * sign(k) * trace_coefficient(m, k)? * &quot
        } else {
            // top order: (-1)^m c_m (P_{2m+1} - (n-1)/2 P_{2m+1}/P_1) per mode
            let c_m = gamma_product_ratio(
                &[HalfInt::from_int(i64::from(m) + 1), HalfInt::new(1)],
                &[HalfInt::int_plus_half(i64::from(m))],
            )?
            .into_rational()?;
            let p_top = crate::sphere::gjms_eigenvalue_exact(
                n,
                HalfInt::int_plus_half(i64::from(m)),
                l,
            )?;
            let p_quot = symbol_quotient_exact(n, l, m, 0)?;
            let half_n1 = HalfInt::new(i64::from(n) - 1).to_rational();
            sign(m) * c_m * (&p_top - &(half_n1 * &p_quot))
        };
        neumann.push(TraceRow {
            k,
            residual: &d_direct - &d_closed,
            direct: d_direct,
            closed_form: d_closed,
        });
    }
    let second_normal = if m >= 1 {
        let profile = delta_k_mode(params, l, 0)?;
        let direct = profile
            .radial()
            .deriv()?
            .deriv()?
            .value_at_one()?
            .into_rational()?;
        // spectral composite: eigen(sphere Laplacian)/(2m-1) +
        // (n-1-2m)[(m-1)n - m(2m-1)] / (2(2m-1)), eigen = -l(l+n-1)
        let two_m1 = BigRational::from_integer((2 * i64::from(m) - 1).into());
        let eigen = BigRational::from_integer((-(i64::from(l) * (i64::from(l) + i64::from(n) - 1))).into());
        let num = BigRational::from_integer(
            ((i64::from(n) - 1 - 2 * i64::from(m))
                * ((i64::from(m) - 1) * i64::from(n) - i64::from(m) * (2 * i64::from(m) - 1)))
                .into(),
        );
        let closed = eigen / &two_m1 + num / (BigRational::from_integer(2.into()) * &two_m1);
        Some(TraceRow { k: 0, residual: &direct - &closed, direct, closed_form: closed })
    } else {
        None
    };
    Ok(BoundaryTraces { params: *params, l, dirichlet, neumann, second_normal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn profile_normalized_at_boundary() {
        for (n, m, l) in [(5u32, 1u32, 0u32), (7, 2, 3), (9, 3, 5), (10, 4, 8)] {
            let params = ModelParams::half_odd(n, m).unwrap();
            match phi_profile(&params, l).unwrap() {
                RadialMode::Exact(p) => {
                    assert_eq!(p.value_at_one().unwrap(), ExactScalar::one(), "(n,m,l)=({n},{m},{l})");
                    assert_eq!(p.radial().degree(), Some(l + 2 * m));
                }
                RadialMode::Numeric(_) => panic!("expected the exact regime"),
            }
        }
    }

    #[test]
    fn profile_l0_m1_matches_linear_form() {
        // l = 0, m = 1, n = 7: 1 + 2 rho = 2 - r^2, i.e. coefficients [2, -1]
        let params = ModelParams::half_odd(7, 1).unwrap();
        match phi_profile(&params, 0).unwrap() {
            RadialMode::Exact(p) => {
                assert_eq!(p.radial().rational_coeffs().unwrap(), vec![rat(2, 1), rat(-1, 1)]);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn profile_derivatives_at_one() {
        // phi_l^{(k)}(1) = (-1)^k (l + (n-1)/2 - m)_k (-m)_k / (-2m)_k,
        // derivatives in the z = r^2 variable of the phi polynomial.
        for (n, m, l) in [(6u32, 2u32, 1u32), (9, 3, 4)] {
            let coeffs = phi_coeffs_exact(n, m, l).unwrap();
            for k in 0..=m {
                // k-th derivative of sum c_j z^j at z = 1
                let mut d = coeffs.clone();
                for _ in 0..k {
                    d = d
                        .iter()
                        .enumerate()
                        .skip(1)
                        .map(|(j, c)| c * BigRational::from_integer(BigInt::from(j)))
                        .collect::<Vec<_>>()[..]
                        .to_vec();
                }
                let val: BigRational = d.iter().fold(BigRational::zero(), |acc, c| acc + c);
                let a = HalfInt::new(2 * i64::from(l) + i64::from(n) - 1 - 2 * i64::from(m)).to_rational();
                let want = sign(k)
                    * pochhammer(&a, k)
                    * pochhammer(&rat(-i64::from(m), 1), k)
                    / pochhammer(&rat(-2 * i64::from(m), 1), k);
                assert_eq!(val, want, "(n,m,l,k)=({n},{m},{l},{k})");
            }
        }
    }

    #[test]
    fn laplacian_basics() {
        // p = 1 - r^2 at l = 0: Delta = -2(n+1)
        for n in [4u32, 7] {
            let p = ModeProfile::new(RadialPoly::from_rationals(0, vec![rat(1, 1), rat(-1, 1)]));
            let lap = mode_laplacian(&p, n).unwrap();
            assert_eq!(lap.radial().rational_coeffs().unwrap(), vec![rat(-2 * (i64::from(n) + 1), 1)]);
        }
        // pure harmonic r^l is annihilated
        for (n, l) in [(5u32, 3u32), (8, 1)] {
            let p = ModeProfile::new(RadialPoly::from_rationals(l, vec![rat(1, 1)]));
            assert!(mode_laplacian(&p, n).unwrap().is_zero());
        }
    }

    #[test]
    fn closed_form_matches_iterated_laplacian() {
        // (n, m, l) = (7, 2, 3): k-fold iteration equals the closed form
        let params = ModelParams::half_odd(7, 2).unwrap();
        let base = match phi_profile(&params, 3).unwrap() {
            RadialMode::Exact(p) => p,
            _ => panic!(),
        };
        let mut iter = base;
        for k in 0..=3u32 {
            let closed = delta_k_mode(&params, 3, k).unwrap();
            assert_eq!(iter.radial(), closed.radial(), "k = {k}");
            iter = mode_laplacian(&iter, 7).unwrap();
        }
        assert!(iter.is_zero(), "(m+1)-st iterate must vanish");
    }

    #[test]
    fn trace_examples() {
        // k = 0 trace reproduces the datum
        let params = ModelParams::half_odd(7, 2).unwrap();
        let tr = boundary_traces(&params, 4).unwrap();
        assert_eq!(tr.dirichlet[0].direct, rat(1, 1));
        assert!(tr.all_residuals_zero());
        // k = 0 normal trace: (2m + 1 - n)/2
        assert_eq!(tr.neumann[0].direct, rat(2 * 2 + 1 - 7, 2));
    }

    #[test]
    fn second_normal_composite() {
        // m = 1: h''(1) = -(n-3)/2 at l = 0
        for n in [5u32, 9] {
            let params = ModelParams::half_odd(n, 1).unwrap();
            let tr = boundary_traces(&params, 0).unwrap();
            let row = tr.second_normal.unwrap();
            assert!(row.residual.is_zero());
            assert_eq!(row.direct, rat(-(i64::from(n) - 3), 2));
        }
    }
}
