//! Exact higher-order Dirichlet energies of extensions on the unit ball,
//! the independently derived boundary symbol closing the energy identity,
//! and the per-degree comparison against the printed boundary operator.
//!
//! For `v = sum_l h_l(r) Y_l` with unit-norm spherical harmonics the
//! order-(m+1) energy splits over degrees: for odd `m` it is
//! `sum_l int_0^1 g_l^2 r^n dr` with `g_l` the (m+1)/2-fold mode Laplacian,
//! for even `m` it is `sum_l int (g_l')^2 r^n + l(l+n-1) g_l^2 r^{n-2}`
//! with `g_l` the m/2-fold one. Cross-degree terms vanish by harmonic
//! orthogonality.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{gamma_product_ratio, radial_integrate, ExactScalar, HalfInt};
use crate::sphere::{
    gjms_eigenvalue_exact, symbol_quotient_exact, ModelParams, SpectralSymbol,
};

use super::profile::{mode_laplacian, phi_profile, ModeProfile, RadialMode};

/// Exact order-(m+1) energy of a single mode whose boundary coefficient is
/// taken against a unit-norm harmonic.
pub fn exact_energy_mode(profile: &ModeProfile, params: &ModelParams) -> Result<BigRational> {
    let m = params
        .m()
        .ok_or_else(|| Error::Usage(format!("exact energy needs gamma = m + 1/2, got {params}")))?;
    let n = params.n();
    if n < 2 {
        return Err(Error::Structural("sphere dimension below 2".into()));
    }
    let half_iters = if m % 2 == 1 { m.div_ceil(2) } else { m / 2 };
    let mut g = profile.clone();
    for _ in 0..half_iters {
        g = mode_laplacian(&g, n)?;
    }
    if m % 2 == 1 {
        let sq = g.radial().mul(g.radial())?;
        radial_integrate(&sq, n)?.into_rational()
    } else {
        let d = g.radial().deriv()?;
        let radial_term = radial_integrate(&d.mul(&d)?, n)?.into_rational()?;
        let l = i64::from(profile.l());
        let angular_factor = BigRational::from_integer((l * (l + i64::from(n) - 1)).into());
        let angular_term = if angular_factor.is_zero() {
            BigRational::zero()
        } else {
            angular_factor * radial_integrate(&g.radial().mul(g.radial())?, n - 2)?.into_rational()?
        };
        Ok(radial_term + angular_term)
    }
}

/// Exact energy of a list of modes (boundary data against unit-norm
/// harmonics); cross-mode terms vanish, so the total is the sum.
pub fn exact_energy(profiles: &[ModeProfile], params: &ModelParams) -> Result<ExactScalar> {
    let mut acc = BigRational::zero();
    for p in profiles {
        acc += exact_energy_mode(p, params)?;
    }
    Ok(ExactScalar::from_rational(acc))
}

/// The rational constant `c_m = Gamma(m+1) Gamma(1/2) / Gamma(m+1/2)`.
pub fn energy_constant(m: u32) -> Result<BigRational> {
    gamma_product_ratio(
        &[HalfInt::from_int(i64::from(m) + 1), HalfInt::new(1)],
        &[HalfInt::int_plus_half(i64::from(m))],
    )?
    .into_rational()
}

fn canonical_profile(params: &ModelParams, l: u32) -> Result<ModeProfile> {
    match phi_profile(params, l)? {
        RadialMode::Exact(p) => Ok(p),
        RadialMode::Numeric(_) => Err(Error::Usage(format!(
            "exact path needs gamma = m + 1/2, got {params}"
        ))),
    }
}

/// Exact eigenvalue of the derived boundary form at degree `l`:
/// `t_m(l) = c_m p_{2m+1}(l) - e_m(l)`, the unique symbol closing the
/// energy identity for the canonical extension.
pub fn derived_t_eigenvalue(params: &ModelParams, l: u32) -> Result<BigRational> {
    let m = params
        .m()
        .ok_or_else(|| Error::Usage(format!("derived symbol needs gamma = m + 1/2, got {params}")))?;
    let c = energy_constant(m)?;
    let p = gjms_eigenvalue_exact(params.n(), HalfInt::int_plus_half(i64::from(m)), l)?;
    let e = exact_energy_mode(&canonical_profile(params, l)?, params)?;
    Ok(c * p - e)
}

/// The derived boundary symbol `t_m` as a spectral symbol (exact and
/// numeric paths agree by construction).
pub fn derive_boundary_symbol(params: &ModelParams) -> Result<SpectralSymbol> {
    params
        .m()
        .ok_or_else(|| Error::Usage(format!("derived symbol needs gamma = m + 1/2, got {params}")))?;
    let p_exact = *params;
    let p_num = *params;
    let exact: Arc<dyn Fn(u32) -> Result<ExactScalar> + Send + Sync> = Arc::new(move |l| {
        derived_t_eigenvalue(&p_exact, l).map(ExactScalar::from_rational)
    });
    Ok(SpectralSymbol::new(
        format!("derived boundary symbol t_m, {params}"),
        Some(exact),
        Arc::new(move |l| {
            derived_t_eigenvalue(&p_num, l)
                .map(|q| crate::sphere::rational_f64(&q))
                .unwrap_or(f64::NAN)
        }),
    ))
}

/// Exact eigenvalue of the *printed* order-2m boundary operator at degree
/// `l` (both parities of `m`), for discrepancy reporting.
pub fn printed_t_eigenvalue(params: &ModelParams, l: u32) -> Result<BigRational> {
    let m = params
        .m()
        .ok_or_else(|| Error::Usage(format!("printed symbol needs gamma = m + 1/2, got {params}")))?;
    let n = params.n();
    let c = energy_constant(m)?;
    // leading term: (n-1)/2 * c_m * P_{2m+1}/P_1
    let half_n1 = HalfInt::new(i64::from(n) - 1).to_rational();
    let lead_quot = symbol_quotient_exact(n, l, m, 0)?;
    let mut total = half_n1 * &c * lead_quot;

    // shared k-sum: (m-2k) Gamma(m+1)^2/Gamma(m+1/2)^2
    //   * Gamma(k+1/2) Gamma(m-k+1/2) / (Gamma(k+1) Gamma(m-k+1))
    //   * P_{2m+1}^2 / (P_{2m+1-2k} P_{2k+1})
    let k_top = if m % 2 == 1 { (m - 1) / 2 } else { m.saturating_sub(2) / 2 };
    for k in 1..=k_top {
        let coeff = gamma_product_ratio(
            &[
                HalfInt::from_int(i64::from(m) + 1),
                HalfInt::from_int(i64::from(m) + 1),
                HalfInt::int_plus_half(i64::from(k)),
                HalfInt::int_plus_half(i64::from(m - k)),
            ],
            &[
                HalfInt::int_plus_half(i64::from(m)),
                HalfInt::int_plus_half(i64::from(m)),
                HalfInt::from_int(i64::from(k) + 1),
                HalfInt::from_int(i64::from(m - k) + 1),
            ],
        )?
        .into_rational()?;
        let quot_a = symbol_quotient_exact(n, l, m, m - k)?; // P_{2m+1}/P_{2m+1-2k}
        let quot_b = symbol_quotient_exact(n, l, m, k)?; // P_{2m+1}/P_{2k+1}
        let m2k = BigRational::from_integer((i64::from(m) - 2 * i64::from(k)).into());
        total += m2k * coeff * quot_a * quot_b;
    }
    if m % 2 == 0 && m >= 2 {
        // middle term: (n-1-m)/2 * (Gamma(m+1)Gamma((m+1)/2) /
        //   (Gamma(m+1/2)Gamma(m/2+1)))^2 * P_{2m+1}^2 / P_{m+1}^2
        let g = gamma_product_ratio(
            &[
                HalfInt::from_int(i64::from(m) + 1),
                HalfInt::from_int(i64::from(m) + 1),
                HalfInt::new(i64::from(m) + 1),
                HalfInt::new(i64::from(m) + 1),
            ],
            &[
                HalfInt::int_plus_half(i64::from(m)),
                HalfInt::int_plus_half(i64::from(m)),
                HalfInt::from_int(i64::from(m) / 2 + 1),
                HalfInt::from_int(i64::from(m) / 2 + 1),
            ],
        )?
        .into_rational()?;
        // P_{2m+1}/P_{m+1}: orders 2m+1 and m+1 with m even; the quotient
        // collapses to (A + m/2 + 1/2)_{m/2} (A - m - 1/2)_{m/2} via the
        // half-odd order pair (m, m/2).
        let quot = symbol_quotient_exact(n, l, m, m / 2)?;
        let factor = HalfInt::new(i64::from(n) - 1 - i64::from(m)).to_rational();
        total += factor * g * &quot * &quot;
    }
    Ok(total)
}

/// Residuals of the per-degree energy identity
/// `c_m p_{2m+1}(l) = e_m(l) + boundary(l)`:
/// with the derived symbol the residual vanishes by construction (sanity);
/// with the printed operator the exact discrepancy is reported.
#[derive(Clone, Debug)]
pub struct EnergyIdentityResiduals {
    pub residual_derived: ExactScalar,
    pub residual_printed: ExactScalar,
}

pub fn energy_identity_check(params: &ModelParams, l: u32) -> Result<EnergyIdentityResiduals> {
    let m = params
        .m()
        .ok_or_else(|| Error::Usage(format!("energy identity needs gamma = m + 1/2, got {params}")))?;
    let c = energy_constant(m)?;
    let p = gjms_eigenvalue_exact(params.n(), HalfInt::int_plus_half(i64::from(m)), l)?;
    let e = exact_energy_mode(&canonical_profile(params, l)?, params)?;
    let lhs = c * p;
    let derived = derived_t_eigenvalue(params, l)?;
    let printed = printed_t_eigenvalue(params, l)?;
    Ok(EnergyIdentityResiduals {
        residual_derived: ExactScalar::from_rational(&lhs - &e - derived),
        residual_printed: ExactScalar::from_rational(&lhs - &e - printed),
    })
}

/// The known order-2 closed form of the derived symbol:
/// `t_1(l) = 2 l (l + n - 1) + (n+1)(n-3)/2`.
pub fn t1_closed_form(n: u32, l: u32) -> BigRational {
    let ll = i64::from(l);
    let nn = i64::from(n);
    BigRational::from_integer((2 * ll * (ll + nn - 1)).into())
        + BigRational::new(((nn + 1) * (nn - 3)).into(), 2.into())
}

/// Deterministic pseudo-random admissible perturbation
/// `(1 - r^2)^{m+1} q(r^2) r^l` with small rational `q`; orthogonal to the
/// canonical extension in the order-(m+1) energy.
pub fn random_admissible_perturbation(
    params: &ModelParams,
    l: u32,
    q_degree: usize,
    seed: u64,
) -> Result<ModeProfile> {
    use rand::{Rng, SeedableRng};
    let m = params
        .m()
        .ok_or_else(|| Error::Usage(format!("perturbations need gamma = m + 1/2, got {params}")))?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    // (1 - r^2)^{m+1} as coefficients in z = r^2
    let mut bracket = vec![BigRational::one()];
    for _ in 0..=m {
        let mut next = vec![BigRational::zero(); bracket.len() + 1];
        for (i, c) in bracket.iter().enumerate() {
            next[i] += c;
            next[i + 1] -= c;
        }
        bracket = next;
    }
    let mut q = Vec::with_capacity(q_degree + 1);
    for _ in 0..=q_degree {
        let num = rng.gen_range(-9i64..=9);
        let den = rng.gen_range(1i64..=9);
        q.push(BigRational::new(num.into(), den.into()));
    }
    if q.iter().all(Zero::is_zero) {
        q[0] = BigRational::one();
    }
    let mut coeffs = vec![BigRational::zero(); bracket.len() + q_degree];
    for (jq, qc) in q.iter().enumerate() {
        for (i, c) in bracket.iter().enumerate() {
            coeffs[i + jq] += c * qc;
        }
    }
    Ok(ModeProfile::new(crate::exact::RadialPoly::from_rationals(l, coeffs)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn zero_profiles_zero_energy() {
        let params = ModelParams::half_odd(7, 2).unwrap();
        assert!(exact_energy(&[], &params).unwrap().is_zero());
        let z = ModeProfile::new(crate::exact::RadialPoly::zero(3));
        assert!(exact_energy(&[z], &params).unwrap().is_zero());
    }

    #[test]
    fn m1_single_mode_energy_oracle() {
        // m = 1, l = 0: v = 1 + (n-3)(1-r^2)/4, Delta v = -(n-3)(n+1)/2,
        // energy = (n-3)^2 (n+1)^2 / 4 * 1/(n+1) = (n-3)^2 (n+1)/4
        for n in [5u32, 7, 9] {
            let params = ModelParams::half_odd(n, 1).unwrap();
            let p = canonical_profile(&params, 0).unwrap();
            let e = exact_energy_mode(&p, &params).unwrap();
            let nn = i64::from(n);
            assert_eq!(e, rat((nn - 3) * (nn - 3) * (nn + 1), 4), "n = {n}");
        }
    }

    #[test]
    fn frozen_even_order_energies() {
        // independently computed exact values for m = 2
        let params = ModelParams::half_odd(7, 2).unwrap();
        let cases = [(0u32, rat(160, 9)), (1, rat(448, 1)), (2, rat(2464, 1)), (3, rat(74752, 9))];
        for (l, want) in cases {
            let p = canonical_profile(&params, l).unwrap();
            assert_eq!(exact_energy_mode(&p, &params).unwrap(), want, "l = {l}");
        }
        let params = ModelParams::half_odd(8, 2).unwrap();
        let p = canonical_profile(&params, 1).unwrap();
        assert_eq!(exact_energy_mode(&p, &params).unwrap(), rat(32825, 36));
    }

    #[test]
    fn derived_symbol_matches_order2_closed_form() {
        for n in 4..=9u32 {
            let params = ModelParams::half_odd(n, 1).unwrap();
            for l in 0..=8u32 {
                assert_eq!(
                    derived_t_eigenvalue(&params, l).unwrap(),
                    t1_closed_form(n, l),
                    "n = {n}, l = {l}"
                );
            }
        }
    }

    #[test]
    fn derived_symbol_frozen_values() {
        // m = 2, n = 7: t(0) = 2720/9, t(1) = 1472
        let params = ModelParams::half_odd(7, 2).unwrap();
        assert_eq!(derived_t_eigenvalue(&params, 0).unwrap(), rat(2720, 9));
        assert_eq!(derived_t_eigenvalue(&params, 1).unwrap(), rat(1472, 1));
        // t_1(0) = 6 at n = 5
        let params = ModelParams::half_odd(5, 1).unwrap();
        assert_eq!(derived_t_eigenvalue(&params, 0).unwrap(), rat(6, 1));
    }

    #[test]
    fn printed_symbol_discrepancy() {
        // order 2: derived - printed = -(n-3)(2l+n-3)(2l+n+1)/4, nonzero for n > 3
        for n in [5u32, 8] {
            let params = ModelParams::half_odd(n, 1).unwrap();
            for l in 0..4u32 {
                let d = derived_t_eigenvalue(&params, l).unwrap();
                let p = printed_t_eigenvalue(&params, l).unwrap();
                let nn = i64::from(n);
                let ll = i64::from(l);
                let want = rat(-(nn - 3) * (2 * ll + nn - 3) * (2 * ll + nn + 1), 4);
                assert_eq!(&d - &p, want, "n = {n}, l = {l}");
            }
        }
        // frozen even-order printed values (m = 2, n = 7): 3680/9, 1952
        let params = ModelParams::half_odd(7, 2).unwrap();
        assert_eq!(printed_t_eigenvalue(&params, 0).unwrap(), rat(3680, 9));
        assert_eq!(printed_t_eigenvalue(&params, 1).unwrap(), rat(1952, 1));
    }

    #[test]
    fn identity_residuals() {
        let params = ModelParams::half_odd(9, 3).unwrap();
        for l in 0..4u32 {
            let res = energy_identity_check(&params, l).unwrap();
            assert!(res.residual_derived.is_zero(), "l = {l}");
        }
        // the printed operator misses at order 2 for n > 3
        let params = ModelParams::half_odd(5, 1).unwrap();
        let res = energy_identity_check(&params, 0).unwrap();
        assert!(!res.residual_printed.is_zero());
        assert_eq!(res.residual_printed.rational_part(), &rat(-6, 1));
    }

    #[test]
    fn derived_symbol_nonnegative_on_grid() {
        for n in 4..=10u32 {
            for m in 1..=n / 2 {
                if 2 * m + 1 >= n {
                    continue;
                }
                let params = ModelParams::half_odd(n, m).unwrap();
                for l in 0..=8u32 {
                    let t = derived_t_eigenvalue(&params, l).unwrap();
                    assert!(t >= BigRational::zero(), "(n,m,l)=({n},{m},{l}): t = {t}");
                }
            }
        }
    }

    #[test]
    fn perturbation_energy_additivity() {
        for (n, m) in [(5u32, 1u32), (7, 2), (9, 3)] {
            let params = ModelParams::half_odd(n, m).unwrap();
            for l in [0u32, 2] {
                let v = canonical_profile(&params, l).unwrap();
                for seed in 0..5u64 {
                    let w = random_admissible_perturbation(&params, l, 3, seed).unwrap();
                    let sum = v.add(&w).unwrap();
                    let lhs = exact_energy_mode(&sum, &params).unwrap();
                    let rhs = exact_energy_mode(&v, &params).unwrap()
                        + exact_energy_mode(&w, &params).unwrap();
                    assert_eq!(lhs, rhs, "(n,m,l,seed)=({n},{m},{l},{seed})");
                }
            }
        }
    }
}
