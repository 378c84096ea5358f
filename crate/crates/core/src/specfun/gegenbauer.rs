//! Gegenbauer (ultraspherical) polynomials by three-term recurrence, and
//! their orthogonality normalization.

use super::hyp::gamma_f64;

/// `C^alpha_k(t)` via the recurrence seeded by `C_0 = 1`, `C_1 = 2 alpha t`:
/// `k C_k = 2 t (k + alpha - 1) C_{k-1} - (k + 2 alpha - 2) C_{k-2}`.
pub fn gegenbauer(alpha: f64, k: usize, t: f64) -> f64 {
    debug_assert!(alpha > 0.0, "Gegenbauer index must be positive");
    match k {
        0 => 1.0,
        1 => 2.0 * alpha * t,
        _ => {
            let mut cm2 = 1.0;
            let mut cm1 = 2.0 * alpha * t;
            for j in 2..=k {
                let jf = j as f64;
                let c = (2.0 * t * (jf + alpha - 1.0) * cm1 - (jf + 2.0 * alpha - 2.0) * cm2) / jf;
                cm2 = cm1;
                cm1 = c;
            }
            cm1
        }
    }
}

/// Squared weighted norm
/// `int_{-1}^{1} [C^alpha_k]^2 (1-t^2)^{alpha - 1/2} dt
///  = pi 2^{1-2 alpha} Gamma(k + 2 alpha) / (k! (k + alpha) Gamma(alpha)^2)`.
pub fn gegenbauer_norm_sq(alpha: f64, k: usize) -> f64 {
    let kf = k as f64;
    std::f64::consts::PI * 2f64.powf(1.0 - 2.0 * alpha) * gamma_f64(kf + 2.0 * alpha)
        / (gamma_f64(kf + 1.0) * (kf + alpha) * gamma_f64(alpha).powi(2))
}

/// Numeric `k`-th derivative of a real-analytic function by contour
/// integration: `f^{(k)}(x) = k! / (2 pi r^k) int f(x + r e^{i theta})
/// e^{-i k theta} d theta`, trapezoid over `points` samples. Spectrally
/// accurate when `radius` stays inside the analyticity disc.
pub fn contour_kth_derivative<F>(f: F, x: f64, k: usize, radius: f64, points: usize) -> f64
where
    F: Fn(num_complex::Complex64) -> num_complex::Complex64,
{
    use num_complex::Complex64;
    let n = points.max(4 * (k + 1));
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let theta = 2.0 * std::f64::consts::PI * (j as f64) / (n as f64);
        let z = Complex64::from_polar(radius, theta);
        acc += f(Complex64::new(x, 0.0) + z) * Complex64::from_polar(1.0, -(k as f64) * theta);
    }
    let mut kfact = 1.0;
    for i in 2..=k {
        kfact *= i as f64;
    }
    kfact * (acc / n as f64).re / radius.powi(k as i32)
}
