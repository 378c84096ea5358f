//! Check registries: each suite is a list of named, independent, pure
//! checks over a parameter grid, executed by a bounded worker pool with
//! order-independent assembly.

use std::collections::BTreeMap;
use std::time::Instant;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use sharptrace_core::ball::{
    adapted_metric_factor, boundary_traces, delta_k_mode, derived_t_eigenvalue,
    dimension_continuity_limit, energy_identity_check, exact_energy_mode, exponential_class_report,
    kernel_series_sample_points, mode_laplacian, phi_profile, poisson_extend,
    random_admissible_perturbation, series_extend, split_asymptotics, t1_closed_form,
    tau_equation_residual, trace_inequality_report, verify_mode_eigen,
    zonal_kernel_eigenvalue_closed, zonal_kernel_eigenvalue_hypergeometric, ExpDatum,
    ExponentChoice, RadialMode, TraceDatum,
};
use sharptrace_core::exact::hyp2f1_terminating;
use sharptrace_core::halfspace::{
    energy_multiplier, expected_energy_constant, halfspace_boundary_traces,
    halfspace_trace_report, kernel_identity_check, profile_iteration_residual,
};
use sharptrace_core::ball::PointwiseDatum;
use sharptrace_core::report::QuadConfig;
use sharptrace_core::specfun::{
    contour_kth_derivative, gamma_f64, gegenbauer, gegenbauer_norm_sq, hyp2f1, quad_rule,
    QuadDomain,
};
use sharptrace_core::sphere::{
    funk_hecke_lambda, sphere_volume, zonal_expand,
    ModelParams, ZonalFunction,
};

use crate::output::{CheckRecord, Report, Residual, Status, Tolerance};

/// Parameter grid and numeric configuration of a suite run.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub n_min: u32,
    pub n_max: u32,
    pub l_max: u32,
    pub max_m: u32,
    pub quad_order: usize,
    pub truncation: usize,
    pub workers: usize,
}

impl SuiteConfig {
    pub fn quad(&self) -> QuadConfig {
        QuadConfig { quad_order: self.quad_order, truncation_degree: self.truncation }
    }

    pub fn config_echo(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        m.insert("n_min".into(), self.n_min.to_string());
        m.insert("n_max".into(), self.n_max.to_string());
        m.insert("l_max".into(), self.l_max.to_string());
        m.insert("max_m".into(), self.max_m.to_string());
        m.insert("quad_order".into(), self.quad_order.to_string());
        m.insert("truncation".into(), self.truncation.to_string());
        m.insert("workers".into(), self.workers.to_string());
        m
    }

    /// `(n, m)` cells with `2m + 1 < n` inside the grid.
    pub fn subcritical_cells(&self) -> Vec<(u32, u32)> {
        let mut cells = Vec::new();
        for n in self.n_min..=self.n_max {
            for m in 1..=((n.saturating_sub(2)) / 2) {
                if 2 * m + 1 < n {
                    cells.push((n, m));
                }
            }
        }
        cells
    }
}

/// A deferred check: a name, the identity tag it covers, its tolerance,
/// and a pure runner.
pub struct Check {
    pub name: String,
    pub paper_ref: String,
    pub tolerance: Tolerance,
    pub run: Box<dyn Fn() -> CheckOutcome + Send + Sync>,
}

pub struct CheckOutcome {
    pub residual: Residual,
    /// Exact discrepancy of a *documented* printed-form mismatch: the check
    /// reports flagged instead of pass/fail.
    pub flagged: bool,
    pub details: String,
}

impl CheckOutcome {
    pub fn exact(residual: BigRational, details: impl Into<String>) -> Self {
        Self {
            residual: Residual::Exact(residual.to_string()),
            flagged: false,
            details: details.into(),
        }
    }

    pub fn exact_zero_or(residual_zero: bool, details: impl Into<String>) -> Self {
        Self {
            residual: if residual_zero {
                Residual::exact_zero()
            } else {
                Residual::Exact("nonzero".into())
            },
            flagged: false,
            details: details.into(),
        }
    }

    pub fn float(residual: f64, details: impl Into<String>) -> Self {
        Self { residual: Residual::Float(residual), flagged: false, details: details.into() }
    }

    pub fn flagged(residual: impl Into<String>, details: impl Into<String>) -> Self {
        Self {
            residual: Residual::Exact(residual.into()),
            flagged: true,
            details: details.into(),
        }
    }
}

fn check<F>(name: String, paper_ref: &str, tolerance: Tolerance, run: F) -> Check
where
    F: Fn() -> sharptrace_core::Result<CheckOutcome> + Send + Sync + 'static,
{
    Check {
        name,
        paper_ref: paper_ref.to_string(),
        tolerance,
        run: Box::new(move || match run() {
            Ok(outcome) => outcome,
            Err(e) => CheckOutcome {
                residual: Residual::Float(f64::NAN),
                flagged: false,
                details: format!("error: {e}"),
            },
        }),
    }
}

/// Executes the checks on a bounded pool; record order follows the
/// registry regardless of scheduling.
pub fn run_checks(suite: &str, cfg: &SuiteConfig, checks: Vec<Check>, timing: bool) -> Report {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.max(1))
        .build()
        .expect("worker pool");
    let records: Vec<CheckRecord> = pool.install(|| {
        checks
            .par_iter()
            .map(|c| {
                let start = Instant::now();
                let outcome = (c.run)();
                let runtime_ms =
                    if timing { start.elapsed().as_millis() as u64 } else { 0 };
                let status = if outcome.flagged {
                    Status::Flagged
                } else if outcome.residual.is_within(&c.tolerance) {
                    Status::Pass
                } else {
                    Status::Fail
                };
                CheckRecord {
                    name: c.name.clone(),
                    paper_ref: c.paper_ref.clone(),
                    status,
                    residual: outcome.residual,
                    tolerance: c.tolerance,
                    runtime_ms,
                    details: outcome.details,
                }
            })
            .collect()
    });
    Report::new(suite, cfg.config_echo(), records)
}

fn rat_max(values: impl Iterator<Item = BigRational>) -> BigRational {
    let mut worst = BigRational::zero();
    for v in values {
        let a = if v < BigRational::zero() { -v } else { v };
        if a > worst {
            worst = a;
        }
    }
    worst
}

// ---------------------------------------------------------------------------
// specfun suite
// ---------------------------------------------------------------------------

pub fn specfun_checks(cfg: &SuiteConfig) -> Vec<Check> {
    let q = cfg.quad_order;
    let mut v = Vec::new();

    v.push(check("hyp2f1/value-at-zero".into(), "2.1", Tolerance::Abs(0.0), || {
        let r = hyp2f1(0.7, -1.3, 2.2, 0.0)? - 1.0;
        Ok(CheckOutcome::float(r, "F(a,b;c;0) = 1"))
    }));
    v.push(check("hyp2f1/gauss-point".into(), "2.3", Tolerance::Abs(1e-12), || {
        let r = hyp2f1(1.0, 1.0, 3.0, 1.0)? - 2.0;
        Ok(CheckOutcome::float(r, "F(1,1;3;1) = 2"))
    }));
    v.push(check("hyp2f1/euler-transform".into(), "2.4", Tolerance::Abs(1e-12), || {
        let (a, b, c, z) = (0.3, 0.7, 1.9, 0.5);
        let lhs = hyp2f1(a, b, c, z)?;
        let rhs = (1.0 - z).powf(c - a - b) * hyp2f1(c - a, c - b, c, z)?;
        Ok(CheckOutcome::float(lhs - rhs, format!("both series at z = {z}")))
    }));
    v.push(check("hyp2f1/branch-overlap".into(), "2.5", Tolerance::Abs(1e-12), || {
        let mut worst = 0.0f64;
        for &(a, b, c) in &[(0.25, 0.8, 1.3), (1.1, -0.45, 2.7), (0.5, 0.5, 1.25)] {
            for z in [0.42, 0.47, 0.53, 0.58] {
                // the plain series stays valid through the overlap window
                let direct = series_reference(a, b, c, z);
                let via = hyp2f1(a, b, c, z)?;
                worst = worst.max((direct - via).abs());
            }
        }
        Ok(CheckOutcome::float(worst, "series vs transformation, z in (0.4, 0.6)"))
    }));
    v.push(check("hyp2f1/terminating-agreement".into(), "2.1", Tolerance::Abs(1e-12), || {
        let mut worst = 0.0f64;
        for (a, b, c) in [(-3i64, 5, 7), (-5, 3, 9), (-2, -7, 5)] {
            let ar = BigRational::from_integer(a.into());
            let br = BigRational::new(b.into(), 2.into());
            let cr = BigRational::new(c.into(), 2.into());
            let coeffs = hyp2f1_terminating(&ar, &br, &cr)?;
            for z in [0.15, 0.45, 0.85] {
                let exact = sharptrace_core::exact::eval_poly_f64(&coeffs, z);
                let numeric = hyp2f1(a as f64, b as f64 / 2.0, c as f64 / 2.0, z)?;
                worst = worst.max((exact - numeric).abs() / exact.abs().max(1.0));
            }
        }
        Ok(CheckOutcome::float(worst, "numeric vs exact terminating polynomials"))
    }));
    v.push(check("gegenbauer/normalization".into(), "2.10", Tolerance::Abs(1e-10), move || {
        let mut worst = 0.0f64;
        for n in 3..=8u32 {
            let alpha = (f64::from(n) - 1.0) / 2.0;
            let rule = quad_rule(QuadDomain::GegenbauerInterval { n }, q)?;
            for k in 0..=10usize {
                let quad = rule.integrate(|t| gegenbauer(alpha, k, t).powi(2));
                let closed = gegenbauer_norm_sq(alpha, k);
                worst = worst.max((quad - closed).abs() / closed);
            }
        }
        Ok(CheckOutcome::float(worst, "quadrature vs closed norm, n in 3..8, k <= 10"))
    }));
    v.push(check("gegenbauer/rodrigues".into(), "2.8", Tolerance::Abs(1e-9), || {
        use num_complex::Complex64;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let alpha: f64 = rng.gen_range(0.75..2.5);
            let k = rng.gen_range(1..=5usize);
            let x: f64 = rng.gen_range(-0.6..0.6);
            let beta = k as f64 + alpha - 0.5;
            let d = contour_kth_derivative(
                |z: Complex64| (Complex64::new(1.0, 0.0) - z * z).powf(beta),
                x,
                k,
                0.45 * (1.0 - x.abs()),
                128,
            );
            let mut kfact = 1.0;
            for i in 2..=k {
                kfact *= i as f64;
            }
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let pref = sign / (2f64.powi(k as i32) * kfact) * gamma_f64(alpha + 0.5)
                * gamma_f64(k as f64 + 2.0 * alpha)
                / (gamma_f64(2.0 * alpha) * gamma_f64(alpha + k as f64 + 0.5));
            let via = pref * (1.0 - x * x).powf(0.5 - alpha) * d;
            let direct = gegenbauer(alpha, k, x);
            worst = worst.max((via - direct).abs() / direct.abs().max(1.0));
        }
        Ok(CheckOutcome::float(worst, "20 seeded (alpha, k, t) triples, numeric derivative"))
    }));
    v.push(check("gegenbauer/sine-moments".into(), "2.12", Tolerance::Abs(1e-10), move || {
        // int_0^pi C^alpha_{2k}(cos) sin^{2mu-1} = closed form; odd degrees vanish
        let mut worst = 0.0f64;
        for n in 3..=5u32 {
            let mu = f64::from(n) / 2.0;
            let rule = quad_rule(QuadDomain::GegenbauerInterval { n }, q)?;
            for alpha in [1.0f64, 1.7, (f64::from(n) - 1.0) / 2.0 + 0.8] {
                for k in 0..=4usize {
                    let even = rule.integrate(|t| gegenbauer(alpha, 2 * k, t));
                    let closed = gamma_f64(mu) * gamma_f64(0.5) / gamma_f64(mu + 0.5)
                        * poch_f(alpha, k) * poch_f(alpha - mu + 0.5, k)
                        / (poch_f(mu + 0.5, k) * factorial_f(k));
                    worst = worst.max((even - closed).abs());
                    let odd = rule.integrate(|t| gegenbauer(alpha, 2 * k + 1, t));
                    worst = worst.max(odd.abs());
                }
            }
        }
        Ok(CheckOutcome::float(worst, "even closed form and odd vanishing"))
    }));
    v.push(check("quad/unit-exactness".into(), "plumbing", Tolerance::Abs(1e-15), || {
        let rule = quad_rule(QuadDomain::UnitInterval, 10)?;
        Ok(CheckOutcome::float(rule.integrate(|r| r.powi(19)) - 0.05, "r^19 with Q = 10"))
    }));
    v.push(check("quad/sphere-mass".into(), "2.13", Tolerance::Abs(1e-13), move || {
        let mut worst = 0.0f64;
        for n in 2..=10u32 {
            let rule = quad_rule(QuadDomain::GegenbauerInterval { n }, q)?;
            let expect = std::f64::consts::PI.sqrt() * gamma_f64(f64::from(n) / 2.0)
                / gamma_f64((f64::from(n) + 1.0) / 2.0);
            worst = worst.max((rule.mass() - expect).abs() / expect);
        }
        Ok(CheckOutcome::float(worst, "total mass vs Beta integral, n in 2..10"))
    }));
    v.push(check("quad/damped-exactness".into(), "plumbing", Tolerance::Abs(1e-12), || {
        let rule = quad_rule(QuadDomain::SemiInfiniteExp { alpha: 0.0 }, 24)?;
        let mut worst = 0.0f64;
        let mut fact = 1.0f64;
        for k in 0..=20 {
            if k > 0 {
                fact *= f64::from(k);
            }
            worst = worst.max((rule.integrate(|y| y.powi(k)) - fact).abs() / fact);
        }
        Ok(CheckOutcome::float(worst, "moments k! for k <= 20, Q = 24"))
    }));
    v.push(check("quad/deterministic-rebuild".into(), "plumbing", Tolerance::Exact, move || {
        let a = quad_rule(QuadDomain::GegenbauerInterval { n: 5 }, q)?;
        let b = quad_rule(QuadDomain::GegenbauerInterval { n: 5 }, q)?;
        let same = a.nodes() == b.nodes() && a.weights() == b.weights();
        Ok(CheckOutcome::exact_zero_or(same, "bit-identical reconstruction"))
    }));
    v
}

fn poch_f(a: f64, k: usize) -> f64 {
    let mut acc = 1.0;
    for i in 0..k {
        acc *= a + i as f64;
    }
    acc
}

fn factorial_f(k: usize) -> f64 {
    let mut acc = 1.0;
    for i in 2..=k {
        acc *= i as f64;
    }
    acc
}

/// Plain reference series used only in the overlap check (valid `|z| < 1`).
fn series_reference(a: f64, b: f64, c: f64, z: f64) -> f64 {
    let mut sum = 1.0;
    let mut term = 1.0;
    for k in 0..2000 {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1.0) {
            break;
        }
    }
    sum
}

// ---------------------------------------------------------------------------
// ball suite
// ---------------------------------------------------------------------------

pub fn ball_checks(cfg: &SuiteConfig) -> Vec<Check> {
    let mut v = Vec::new();
    let l_max = cfg.l_max;

    for (n, m) in cfg.subcritical_cells() {
        v.push(check(
            format!("ball/polyharmonic-closure/n{n}-m{m}"),
            "4.4, 4.5",
            Tolerance::Exact,
            move || {
                let params = ModelParams::half_odd(n, m)?;
                let mut ok = true;
                for l in 0..=l_max {
                    let base = match phi_profile(&params, l)? {
                        RadialMode::Exact(p) => p,
                        RadialMode::Numeric(_) => unreachable!(),
                    };
                    let mut iter = base;
                    for k in 0..=m + 1 {
                        let closed = delta_k_mode(&params, l, k)?;
                        ok &= iter.radial() == closed.radial();
                        iter = mode_laplacian(&iter, n)?;
                    }
                }
                Ok(CheckOutcome::exact_zero_or(
                    ok,
                    format!("iterated Laplacians vs closed form, l <= {l_max}, k <= m+1"),
                ))
            },
        ));

        v.push(check(
            format!("ball/boundary-traces/n{n}-m{m}"),
            "4.8-4.10",
            Tolerance::Exact,
            move || {
                let params = ModelParams::half_odd(n, m)?;
                let mut ok = true;
                for l in 0..=l_max {
                    ok &= boundary_traces(&params, l)?.all_residuals_zero();
                }
                Ok(CheckOutcome::exact_zero_or(
                    ok,
                    "direct differentiation vs spectral forms, incl. second normal",
                ))
            },
        ));

        v.push(check(
            format!("ball/energy-identity/n{n}-m{m}"),
            "4.18",
            Tolerance::Exact,
            move || {
                let params = ModelParams::half_odd(n, m)?;
                let worst = rat_max((0..=l_max).map(|l| {
                    energy_identity_check(&params, l)
                        .map(|r| r.residual_derived.rational_part().clone())
                        .unwrap_or_else(|_| BigRational::from_integer(1.into()))
                }));
                Ok(CheckOutcome::exact(worst, "derived boundary symbol closes the identity"))
            },
        ));

        v.push(check(
            format!("ball/printed-operator-discrepancy/n{n}-m{m}"),
            "thm-1.6 operator",
            Tolerance::Exact,
            move || {
                let params = ModelParams::half_odd(n, m)?;
                let r0 = energy_identity_check(&params, 0)?.residual_printed;
                let worst = rat_max((0..=l_max).map(|l| {
                    energy_identity_check(&params, l)
                        .map(|r| r.residual_printed.rational_part().clone())
                        .unwrap_or_else(|_| BigRational::from_integer(1.into()))
                }));
                Ok(CheckOutcome::flagged(
                    r0.rational_part().to_string(),
                    format!(
                        "printed order-2m operator vs exact reduction; |residual| <= {worst} over l <= {l_max}"
                    ),
                ))
            },
        ));

        v.push(check(
            format!("ball/phi-normalization/n{n}-m{m}"),
            "3.9",
            Tolerance::Exact,
            move || {
                let params = ModelParams::half_odd(n, m)?;
                let mut ok = true;
                for l in 0..=l_max {
                    if let RadialMode::Exact(p) = phi_profile(&params, l)? {
                        ok &= p.value_at_one()? == sharptrace_core::exact::ExactScalar::one();
                    }
                }
                Ok(CheckOutcome::exact_zero_or(ok, "phi_l(1) = 1 exactly"))
            },
        ));

        v.push(check(
            format!("ball/eigen-equation/n{n}-m{m}"),
            "3.18",
            Tolerance::Exact,
            move || {
                let params = ModelParams::half_odd(n, m)?;
                let mut ok = true;
                for l in 0..=l_max {
                    ok &= verify_mode_eigen(&params, l)?.is_exactly_zero();
                }
                Ok(CheckOutcome::exact_zero_or(ok, "hyperbolic eigen-equation, exact polynomial"))
            },
        ));

        v.push(check(
            format!("ball/perturbation-additivity/n{n}-m{m}"),
            "b4.19",
            Tolerance::Exact,
            move || {
                let params = ModelParams::half_odd(n, m)?;
                let mut ok = true;
                for seed in 0..20u64 {
                    let l = (seed % 4) as u32;
                    let base = match phi_profile(&params, l)? {
                        RadialMode::Exact(p) => p,
                        RadialMode::Numeric(_) => unreachable!(),
                    };
                    let w = random_admissible_perturbation(&params, l, 3, 1000 * u64::from(n) + seed)?;
                    let lhs = exact_energy_mode(&base.add(&w)?, &params)?;
                    let rhs = exact_energy_mode(&base, &params)? + exact_energy_mode(&w, &params)?;
                    ok &= lhs == rhs;
                }
                Ok(CheckOutcome::exact_zero_or(ok, "20 seeded admissible perturbations"))
            },
        ));

        if m == 1 {
            v.push(check(
                format!("ball/order2-closed-form/n{n}"),
                "thm-1.1 boundary form",
                Tolerance::Exact,
                move || {
                    let params = ModelParams::half_odd(n, 1)?;
                    let worst = rat_max((0..=l_max).map(|l| {
                        derived_t_eigenvalue(&params, l)
                            .map(|t| t - t1_closed_form(n, l))
                            .unwrap_or_else(|_| BigRational::from_integer(1.into()))
                    }));
                    Ok(CheckOutcome::exact(worst, "t_1(l) = 2l(l+n-1) + (n+1)(n-3)/2"))
                },
            ));
        }
    }

    // numeric-order checks on a fixed grid
    v.push(check("ball/phi-normalization-numeric".into(), "3.9", Tolerance::Abs(1e-12), || {
        let mut worst = 0.0f64;
        for n in [3u32, 4, 5] {
            for g in [0.3f64, 0.7, 1.2, 2.3] {
                if g >= f64::from(n) / 2.0 {
                    continue;
                }
                let params = ModelParams::general(n, g)?;
                for l in 0..=8u32 {
                    let v = phi_profile(&params, l)?.eval_phi(1.0)?;
                    worst = worst.max((v - 1.0).abs());
                }
            }
        }
        Ok(CheckOutcome::float(worst, "Gauss-point normalization, gamma in {0.3,0.7,1.2,2.3}"))
    }));
    v.push(check("ball/eigen-equation-numeric".into(), "3.18", Tolerance::Abs(1e-10), || {
        let mut worst = 0.0f64;
        for (n, g) in [(3u32, 0.7f64), (4, 1.2), (5, 2.3)] {
            let params = ModelParams::general(n, g)?;
            for l in [0u32, 1, 3] {
                worst = worst.max(verify_mode_eigen(&params, l)?.max_abs());
            }
        }
        Ok(CheckOutcome::float(worst, "sampled residual, r in 0.1..0.9"))
    }));
    v.push(check("ball/tau-equation".into(), "3.35 remark", Tolerance::Exact, || {
        let mut ok = true;
        for n in [3u32, 5, 7] {
            ok &= tau_equation_residual(n)?.is_empty();
        }
        Ok(CheckOutcome::exact_zero_or(ok, "critical exponent solves the constant-source equation"))
    }));
    v.push(check("ball/metric-low-order".into(), "3.34", Tolerance::Exact, || {
        use sharptrace_core::ball::AdaptedMetricFactor;
        let mut ok = true;
        for n in 3..=10u32 {
            let p0 = ModelParams::half_odd(n, 0)?;
            let f0 = AdaptedMetricFactor::new(&p0)?;
            ok &= f0.psi_poly() == Some(&[BigRational::from_integer(1.into())][..]);
            if n > 3 {
                let p1 = ModelParams::half_odd(n, 1)?;
                let f1 = AdaptedMetricFactor::new(&p1)?;
                let want = [
                    BigRational::from_integer(1.into()),
                    BigRational::new((i64::from(n) - 3).into(), 2.into()),
                ];
                ok &= f1.psi_poly() == Some(&want[..]);
            }
        }
        Ok(CheckOutcome::exact_zero_or(ok, "psi at orders 1/2 and 3/2"))
    }));
    v.push(check("ball/metric-gamma-continuity".into(), "3.33-3.34", Tolerance::Abs(1e-6), || {
        let mut worst = 0.0f64;
        for n in [5u32, 6] {
            for rho in [0.1f64, 0.3] {
                let exact = 1.0 + (f64::from(n) - 3.0) * rho / 2.0;
                for eps in [1e-7f64, -1e-7] {
                    let params = ModelParams::general(n, 1.5 + eps)?;
                    worst = worst.max((adapted_metric_factor(&params, rho)? - exact).abs());
                }
                let half = ModelParams::general(n, 0.5 + 1e-7)?;
                worst = worst.max((adapted_metric_factor(&half, rho)? - 1.0).abs());
            }
        }
        Ok(CheckOutcome::float(worst, "one-sided limits at half-integer orders"))
    }));
    v.push(check("ball/metric-dimension-continuity".into(), "3.35", Tolerance::Abs(1e-6), || {
        let mut worst = 0.0f64;
        for rho in [0.1f64, 0.3, 0.5] {
            let lim = dimension_continuity_limit(1, rho, 1e-6);
            let target = (2.0 * rho).exp();
            worst = worst.max((lim - target).abs() / target);
            let crit = ModelParams::half_odd(3, 1)?;
            worst = worst.max((adapted_metric_factor(&crit, rho)? - target).abs() / target);
        }
        Ok(CheckOutcome::float(worst, "n -> 3 limit matches the critical factor"))
    }));
    v.push(check("ball/kernel-series-duality".into(), "3.7, 3.8", Tolerance::Abs(1e-8), || {
        let mut worst = 0.0f64;
        let quad = QuadConfig::default();
        for (n, g) in [(3u32, 0.7f64), (4, 1.5), (5, 2.5)] {
            let params = ModelParams::general(n, g)?;
            let rule = quad_rule(QuadDomain::GegenbauerInterval { n }, quad.quad_order)?;
            let alpha = (f64::from(n) - 1.0) / 2.0;
            // three zonal data: constant, degree-2 mode, extremal-type power
            let extremal = extremal_pointwise(0.3, n, g);
            let extremal_series = zonal_expand(&extremal, n, 40, &rule)?.fun;
            let mode2 = {
                let mut c = vec![0.0; 3];
                c[2] = 1.0;
                ZonalFunction::from_coeffs(n, c)
            };
            let data: Vec<(PointwiseDatum, ZonalFunction)> = vec![
                (Box::new(|_| 1.0), ZonalFunction::constant(n, 1.0)),
                (Box::new(move |t| gegenbauer(alpha, 2, t)), mode2),
                (Box::new(extremal_pointwise(0.3, n, g)), extremal_series),
            ];
            for (pointwise, zf) in &data {
                for r in kernel_series_sample_points() {
                    let kernel = poisson_extend(pointwise, r, &params, &rule)?;
                    let series = series_extend(zf, r.abs(), r.signum(), &params)?;
                    worst = worst.max((kernel - series).abs());
                }
            }
        }
        Ok(CheckOutcome::float(worst, "25 on-axis points, three data, three (n, gamma)"))
    }));
    v.push(check("ball/funk-hecke-orthogonality".into(), "2.13", Tolerance::Abs(1e-11), || {
        let mut worst = 0.0f64;
        for n in 2..=8u32 {
            let rule = quad_rule(QuadDomain::GegenbauerInterval { n }, 120)?;
            let l0 = funk_hecke_lambda(|_| 1.0, 0, n, &rule)?;
            worst = worst.max((l0 - sphere_volume(n)).abs() / sphere_volume(n));
            for l in 1..=8 {
                worst = worst.max(funk_hecke_lambda(|_| 1.0, l, n, &rule)?.abs());
            }
        }
        Ok(CheckOutcome::float(worst, "constant kernel: l = 0 gives the volume, l >= 1 vanish"))
    }));
    v.push(check("ball/funk-hecke-closed-form".into(), "3.14", Tolerance::Abs(1e-10), || {
        let mut worst = 0.0f64;
        let quad = QuadConfig::default();
        for (n, g) in [(3u32, 0.7f64), (4, 1.5), (5, 2.5)] {
            let params = ModelParams::general(n, g)?;
            let rule = quad_rule(QuadDomain::GegenbauerInterval { n }, quad.quad_order)?;
            let s = params.s();
            for l in 0..=8u32 {
                for r in [0.2f64, 0.5, 0.8] {
                    let q = funk_hecke_lambda(
                        |t| (1.0 - 2.0 * r * t + r * r).powf(-s),
                        l as usize,
                        n,
                        &rule,
                    )?;
                    let closed = zonal_kernel_eigenvalue_closed(&params, l, r)?;
                    worst = worst.max((q - closed).abs() / closed.abs().max(1.0));
                }
            }
        }
        Ok(CheckOutcome::float(worst, "quadrature vs closed eigenvalue, l <= 8, r in {0.2,0.5,0.8}"))
    }));
    v.push(check("ball/funk-hecke-triangle".into(), "3.14", Tolerance::Abs(1e-9), || {
        // third corner (the hypergeometric middle form) where it is defined
        let mut worst = 0.0f64;
        let params = ModelParams::general(4, 0.8)?;
        let rule = quad_rule(QuadDomain::GegenbauerInterval { n: 4 }, 200)?;
        let s = params.s();
        for l in 0..=6u32 {
            for r in [0.2f64, 0.5, 0.8] {
                let q = funk_hecke_lambda(
                    |t| (1.0 - 2.0 * r * t + r * r).powf(-s),
                    l as usize,
                    4,
                    &rule,
                )?;
                let closed = zonal_kernel_eigenvalue_closed(&params, l, r)?;
                let hyp = zonal_kernel_eigenvalue_hypergeometric(&params, l, r)?;
                worst = worst.max((q - closed).abs() / closed.abs().max(1.0));
                worst = worst.max((q - hyp).abs() / hyp.abs().max(1.0));
                worst = worst.max((closed - hyp).abs() / hyp.abs().max(1.0));
            }
        }
        Ok(CheckOutcome::float(worst, "three independent computations close"))
    }));
    v.push(check("ball/split-asymptotics".into(), "3.26, 3.28", Tolerance::Abs(1e-10), || {
        let mut worst = 0.0f64;
        for (n, g) in [(3u32, 0.7f64), (5, 1.2), (4, 0.8)] {
            let params = ModelParams::general(n, g)?;
            for l in [0u32, 1, 2] {
                // odd n puts the branch series in the integer-balance
                // regime above 2 rho = 1/2, so stay below it there
                let rhos: &[f64] =
                    if n % 2 == 1 { &[0.05, 0.15, 0.25] } else { &[0.05, 0.2, 0.35, 0.45] };
                for &rho in rhos {
                    let (f_part, h_part) = split_asymptotics(&params, l, rho)?;
                    let r = (1.0 - 2.0 * rho).sqrt();
                    let e = f64::from(n) - params.s();
                    let direct = phi_profile(&params, l)?.eval(r)? * rho.powf(e);
                    let recon = rho.powf(e) * f_part + rho.powf(params.s()) * h_part;
                    worst = worst.max((direct - recon).abs());
                }
            }
        }
        Ok(CheckOutcome::float(worst, "two-branch reconstruction vs direct profile"))
    }));
    v.push(check("ball/poisson-at-origin".into(), "3.7", Tolerance::Abs(1e-10), || {
        let mut worst = 0.0f64;
        for (n, g) in [(3u32, 0.7f64), (4, 1.5), (5, 2.5)] {
            let params = ModelParams::general(n, g)?;
            let rule = quad_rule(QuadDomain::GegenbauerInterval { n }, 200)?;
            let kernel = poisson_extend(|_| 1.0, 0.0, &params, &rule)?;
            let f = ZonalFunction::constant(n, 1.0);
            let series = series_extend(&f, 0.0, 1.0, &params)?;
            worst = worst.max((kernel - series).abs() / kernel.abs());
        }
        Ok(CheckOutcome::float(worst, "constant datum at the center, two routes"))
    }));
    v
}

/// The extremal-type datum used in the duality check.
fn extremal_pointwise(x0: f64, n: u32, gamma: f64) -> impl Fn(f64) -> f64 {
    let e = (2.0 * gamma - f64::from(n)) / 2.0;
    move |t: f64| (1.0 - x0 * t).powf(e)
}

// ---------------------------------------------------------------------------
// halfspace suite
// ---------------------------------------------------------------------------

pub fn halfspace_checks(cfg: &SuiteConfig) -> Vec<Check> {
    let mut v = Vec::new();
    let max_m = cfg.max_m;

    v.push(check("halfspace/kernel-identity".into(), "5.3", Tolerance::Exact, move || {
        let mut ok = true;
        for m in 0..=max_m {
            ok &= kernel_identity_check(m)?.is_empty();
        }
        Ok(CheckOutcome::exact_zero_or(ok, format!("symbolic dimension, m <= {max_m}")))
    }));
    v.push(check("halfspace/profile-iteration".into(), "5.9", Tolerance::Exact, || {
        let mut ok = true;
        for m in 0..=5 {
            ok &= profile_iteration_residual(m)?;
        }
        Ok(CheckOutcome::exact_zero_or(ok, "closed profiles equal iterated mode Laplacians, m <= 5"))
    }));
    v.push(check("halfspace/boundary-traces".into(), "5.10-5.12", Tolerance::Exact, || {
        let mut ok = true;
        for m in 0..=5 {
            ok &= halfspace_boundary_traces(m)?.all_residuals_zero();
        }
        Ok(CheckOutcome::exact_zero_or(ok, "profile differentiation vs consistent closed forms"))
    }));
    v.push(check(
        "halfspace/printed-trace-discrepancy".into(),
        "5.10 first line",
        Tolerance::Exact,
        || {
            // the literal printed denominator disagrees where defined; the
            // residual at (m, k) = (3, 0) is reported as the witness
            let tr = halfspace_boundary_traces(3)?;
            let witness = tr.dirichlet[0]
                .printed_residual
                .clone()
                .map(|r| r.to_string())
                .unwrap_or_else(|| "undefined".into());
            let rows: usize = (0..=5u32)
                .map(|m| halfspace_boundary_traces(m).map(|t| t.flagged_rows()).unwrap_or(0))
                .sum();
            Ok(CheckOutcome::flagged(
                witness,
                format!("printed Gamma-argument and top-sign readings; {rows} flagged rows, m <= 5"),
            ))
        },
    ));
    v.push(check("halfspace/energy-multiplier".into(), "thm-1.8 energy", Tolerance::Exact, || {
        let worst = rat_max((0..=5u32).map(|m| {
            match (energy_multiplier(m), expected_energy_constant(m)) {
                (Ok((c, _)), Ok(want)) => c - want,
                _ => BigRational::from_integer(1.into()),
            }
        }));
        Ok(CheckOutcome::exact(worst, "c_m = m! sqrt-ratio constant, identically in the frequency"))
    }));
    v.push(check("halfspace/gaussian-ratio".into(), "thm-1.8", Tolerance::Abs(0.0), || {
        let mut worst = -f64::INFINITY;
        for (n, m) in [(5u32, 1u32), (7, 2)] {
            let rep = halfspace_trace_report(n, m, 1.0, &QuadConfig::default())?;
            worst = worst.max(1.0 - rep.ratio); // must be <= 0
        }
        Ok(CheckOutcome::float(worst.max(0.0), "ratio >= 1 for Gaussian data"))
    }));
    v.push(check("halfspace/gaussian-dilation".into(), "thm-1.8", Tolerance::Abs(1e-10), || {
        let mut worst = 0.0f64;
        for (n, m) in [(5u32, 1u32), (7, 2)] {
            let base = halfspace_trace_report(n, m, 1.0, &QuadConfig::default())?;
            for sigma in [0.4f64, 1.7, 5.0] {
                let rep = halfspace_trace_report(n, m, sigma, &QuadConfig::default())?;
                worst = worst.max((rep.ratio - base.ratio).abs() / base.ratio);
            }
        }
        Ok(CheckOutcome::float(worst, "scale invariance of the ratio"))
    }));
    v.push(check("halfspace/gaussian-quadrature-check".into(), "thm-1.8", Tolerance::Abs(1e-9), || {
        let mut worst = 0.0f64;
        for (n, m) in [(5u32, 1u32), (7, 2)] {
            let rep = halfspace_trace_report(n, m, 1.3, &QuadConfig::default())?;
            let eq = rep.extra("energy_quadrature").unwrap_or(f64::NAN);
            let lq = rep.extra("lhs_quadrature").unwrap_or(f64::NAN);
            worst = worst.max((eq - rep.rhs).abs() / rep.rhs.abs());
            worst = worst.max((lq - rep.lhs).abs() / rep.lhs.abs());
        }
        Ok(CheckOutcome::float(worst, "closed Gamma forms vs damped quadrature"))
    }));
    v
}

// ---------------------------------------------------------------------------
// inequality suite
// ---------------------------------------------------------------------------

pub fn inequality_checks(cfg: &SuiteConfig) -> Vec<Check> {
    let quad = cfg.quad();
    let mut v = Vec::new();
    for (n, m) in [(5u32, 1u32), (7, 1), (7, 2)] {
        for x0 in [0.0f64, 0.3] {
            let quad = quad.clone();
            v.push(check(
                format!("ineq/trace-extremal/n{n}-m{m}-x{x0}"),
                "1.18",
                Tolerance::Abs(1e-6),
                move || {
                    let params = ModelParams::half_odd(n, m)?;
                    let rep = trace_inequality_report(
                        &params,
                        &TraceDatum::Extremal { x0, exponent: ExponentChoice::Beckner },
                        &quad,
                    )?;
                    Ok(CheckOutcome::float(
                        rep.ratio - 1.0,
                        format!("lhs {:.12e}, rhs {:.12e}", rep.lhs, rep.rhs),
                    ))
                },
            ));
        }
        let quad2 = quad.clone();
        v.push(check(
            format!("ineq/trace-perturbed/n{n}-m{m}"),
            "1.18 strictness",
            Tolerance::Abs(0.0),
            move || {
                let params = ModelParams::half_odd(n, m)?;
                let rep = trace_inequality_report(
                    &params,
                    &TraceDatum::Perturbed { amplitude: 0.1, mode: 2 },
                    &quad2,
                )?;
                // residual: shortfall below the strictness margin 1 + 1e-4
                let shortfall = (1.0 + 1e-4 - rep.ratio).max(0.0);
                Ok(CheckOutcome::float(shortfall, format!("ratio {:.9}", rep.ratio)))
            },
        ));
    }
    let quad3 = quad.clone();
    v.push(check("ineq/exp-class-constant".into(), "1.20", Tolerance::Abs(1e-13), move || {
        let params = ModelParams::half_odd(3, 1)?;
        // the exact path is literally zero: the critical symbol and the
        // canonical energy annihilate constants
        let t0 = derived_t_eigenvalue(&params, 0)?;
        let e0 = match phi_profile(&params, 0)? {
            RadialMode::Exact(p) => exact_energy_mode(&p, &params)?,
            RadialMode::Numeric(_) => unreachable!(),
        };
        if !t0.is_zero() || !e0.is_zero() {
            return Ok(CheckOutcome::float(f64::INFINITY, "constant mode not annihilated"));
        }
        // the float evaluation of both sides is bounded by round-off
        let rep = exponential_class_report(&params, &ExpDatum::Constant, &quad3)?;
        Ok(CheckOutcome::float(
            rep.lhs.abs() + rep.rhs.abs(),
            "0 = 0: exact path identically zero; float sides at round-off",
        ))
    }));
    let quad4 = quad.clone();
    v.push(check("ineq/exp-class-extremal".into(), "1.20", Tolerance::Abs(1e-6), move || {
        let params = ModelParams::half_odd(3, 1)?;
        let rep = exponential_class_report(&params, &ExpDatum::Extremal { x0: 0.3 }, &quad4)?;
        Ok(CheckOutcome::float(
            rep.ratio - 1.0,
            format!("lhs {:.12e}, rhs {:.12e}", rep.lhs, rep.rhs),
        ))
    }));
    let quad5 = quad.clone();
    v.push(check("ineq/exp-class-perturbed".into(), "1.20 strictness", Tolerance::Abs(0.0), move || {
        let params = ModelParams::half_odd(3, 1)?;
        let rep = exponential_class_report(
            &params,
            &ExpDatum::Perturbed { x0: 0.3, amplitude: 0.2, mode: 2 },
            &quad5,
        )?;
        Ok(CheckOutcome::float((rep.lhs - rep.rhs).max(0.0), format!("lhs {} < rhs {}", rep.lhs, rep.rhs)))
    }));
    let quad6 = quad.clone();
    v.push(check("ineq/exp-class-printed-constant".into(), "1.14 vs 4.21", Tolerance::Exact, move || {
        let params = ModelParams::half_odd(3, 1)?;
        let rep = exponential_class_report(&params, &ExpDatum::Extremal { x0: 0.3 }, &quad6)?;
        let chain = rep.extra("constant_recomputed_chain").unwrap_or(f64::NAN);
        let printed = rep.extra("constant_printed").unwrap_or(f64::NAN);
        let k2 = 3.0 / (16.0 * std::f64::consts::PI.powi(2));
        let k3 = 3.0 / (16.0 * std::f64::consts::PI.powi(3));
        let details = format!(
            "recomputed chain gives 3/(16 pi^2) = {k2:.12e} (deviation {:.3e}); \
             the alternative printed value 3/(16 pi^3) = {k3:.12e} deviates by {:.3e}",
            (chain - k2).abs(),
            (printed - k3).abs(),
        );
        Ok(CheckOutcome::flagged("3/(16*pi^2) vs 3/(16*pi^3)", details))
    }));
    let quad7 = quad.clone();
    v.push(check("ineq/extremal-exponent-convention".into(), "b1.19 vs sharp family", Tolerance::Exact, move || {
        let params = ModelParams::half_odd(5, 1)?;
        let sharp = trace_inequality_report(
            &params,
            &TraceDatum::Extremal { x0: 0.3, exponent: ExponentChoice::Beckner },
            &quad7,
        )?;
        let printed = trace_inequality_report(
            &params,
            &TraceDatum::Extremal { x0: 0.3, exponent: ExponentChoice::Printed },
            &quad7,
        )?;
        let details = format!(
            "half-power exponent: ratio - 1 = {:.3e}; quarter-power exponent: ratio - 1 = {:.3e} \
             (the half-power family attains equality)",
            sharp.ratio - 1.0,
            printed.ratio - 1.0,
        );
        Ok(CheckOutcome::flagged("exponent (2m+1-n)/2 attains equality", details))
    }));
    for (n, m) in [(5u32, 1u32), (7, 2)] {
        let quad8 = quad.clone();
        v.push(check(
            format!("ineq/halfspace-gaussian/n{n}-m{m}"),
            "thm-1.8",
            Tolerance::Abs(0.0),
            move || {
                let rep = halfspace_trace_report(n, m, 1.0, &quad8)?;
                Ok(CheckOutcome::float(
                    (1.0 - rep.ratio).max(0.0),
                    format!("ratio {:.9}", rep.ratio),
                ))
            },
        ));
    }
    v
}

pub fn all_checks(cfg: &SuiteConfig) -> Vec<Check> {
    let mut v = specfun_checks(cfg);
    v.extend(ball_checks(cfg));
    v.extend(halfspace_checks(cfg));
    v.extend(inequality_checks(cfg));
    v
}
