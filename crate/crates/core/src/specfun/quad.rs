//! Gauss quadrature rules for every 1-D integral in the engine: the
//! Gegenbauer-weighted interval carrying the zonal surface measure, the
//! plain unit interval for radial integrals, and an exponentially damped
//! semi-infinite rule for frequency-side integrals.
//!
//! Nodes come from Newton iteration on the orthonormal three-term
//! recurrence (bracketed first on the finite interval); weights are the
//! Christoffel numbers `1 / sum_k p_k(x_i)^2`. Construction is fully
//! deterministic and integration uses fixed-order pairwise summation, so
//! repeated runs are bit-identical.

use crate::error::{Error, Result};

use super::hyp::gamma_f64;

const NEWTON_EPS: f64 = 1e-15;
const NEWTON_MAX_ITERS: usize = 120;

/// Weight-function domain of a rule.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum QuadDomain {
    /// `[-1, 1]` with weight `(1 - t^2)^{(n-2)/2}`: the zonal reduction of
    /// the sphere measure in dimension `n` (plain Gauss-Legendre at `n = 2`).
    GegenbauerInterval { n: u32 },
    /// `[0, 1]` with unit weight.
    UnitInterval,
    /// `[0, inf)` with weight `y^alpha e^{-y}` (`alpha = 0` is the plain
    /// exponentially damped rule).
    SemiInfiniteExp { alpha: f64 },
}

/// An immutable Gauss rule: strictly interior sorted nodes, positive
/// weights, first moment reproduced to 1e-12.
#[derive(Clone, Debug)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    domain: QuadDomain,
    order: usize,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn domain(&self) -> QuadDomain {
        self.domain
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Weighted integral of `f` against the rule's weight function,
    /// accumulated by pairwise summation in fixed node order.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        let terms: Vec<f64> = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .collect();
        pairwise_sum(&terms)
    }

    /// Total mass of the weight function, for diagnostics.
    pub fn mass(&self) -> f64 {
        pairwise_sum(&self.weights)
    }
}

/// Fixed-order pairwise (tree) summation; deterministic and with
/// logarithmic error growth.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    match v.len() {
        0 => 0.0,
        1 => v[0],
        2 => v[0] + v[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
        }
    }
}

/// Orthonormal-recurrence coefficients `x p_k = b_{k+1} p_{k+1} + a_k p_k +
/// b_k p_{k-1}` plus the weight's total mass.
struct Recurrence {
    a: Vec<f64>,
    b: Vec<f64>, // b[0] unused
    mass: f64,
}

impl Recurrence {
    /// Evaluates `(p_Q, p_Q', sum_{k<Q} p_k^2)` at `x`.
    fn eval(&self, q: usize, x: f64) -> (f64, f64, f64) {
        let mut pm1 = 0.0f64;
        let mut dm1 = 0.0f64;
        let mut p = 1.0 / self.mass.sqrt();
        let mut d = 0.0f64;
        let mut sum_sq = 0.0f64;
        for k in 0..q {
            sum_sq += p * p;
            let bk1 = self.b[k + 1];
            let pn = ((x - self.a[k]) * p - if k > 0 { self.b[k] * pm1 } else { 0.0 }) / bk1;
            let dn = (p + (x - self.a[k]) * d - if k > 0 { self.b[k] * dm1 } else { 0.0 }) / bk1;
            pm1 = p;
            dm1 = d;
            p = pn;
            d = dn;
        }
        (p, d, sum_sq)
    }
}

fn gegenbauer_recurrence(lambda: f64, q: usize) -> Recurrence {
    let mut b = vec![0.0; q + 2];
    for (k, bk) in b.iter_mut().enumerate().skip(1) {
        let kf = k as f64;
        *bk = 0.5
            * (kf * (kf + 2.0 * lambda - 1.0) / ((kf + lambda - 1.0) * (kf + lambda))).sqrt();
    }
    let mass = std::f64::consts::PI.sqrt() * gamma_f64(lambda + 0.5) / gamma_f64(lambda + 1.0);
    Recurrence { a: vec![0.0; q + 1], b, mass }
}

fn laguerre_recurrence(alpha: f64, q: usize) -> Recurrence {
    let mut a = vec![0.0; q + 1];
    let mut b = vec![0.0; q + 2];
    for (k, ak) in a.iter_mut().enumerate() {
        *ak = 2.0 * k as f64 + alpha + 1.0;
    }
    for (k, bk) in b.iter_mut().enumerate().skip(1) {
        let kf = k as f64;
        *bk = (kf * (kf + alpha)).sqrt();
    }
    Recurrence { a, b, mass: gamma_f64(alpha + 1.0) }
}

/// Safeguarded Newton on a sign-change bracket: Newton steps on the
/// recurrence, falling back to bisection whenever a step leaves the
/// bracket, with a 1e-15 relative stop.
fn newton_in_bracket(rec: &Recurrence, q: usize, mut lo: f64, mut hi: f64) -> Result<f64> {
    let (flo, _, _) = rec.eval(q, lo);
    if flo == 0.0 {
        return Ok(lo);
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..NEWTON_MAX_ITERS {
        let (p, d, _) = rec.eval(q, x);
        if p == 0.0 {
            return Ok(x);
        }
        if p * flo < 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let newton = if d != 0.0 { x - p / d } else { f64::NAN };
        let xn = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (xn - x).abs() <= NEWTON_EPS * (1.0 + x.abs()) {
            // final full-precision Newton polish; at ulp scale near a
            // simple root the unclamped step is safe
            let mut best = xn;
            for _ in 0..2 {
                let (p2, d2, _) = rec.eval(q, best);
                if d2 == 0.0 || !(best - p2 / d2).is_finite() {
                    break;
                }
                best -= p2 / d2;
            }
            return Ok(best);
        }
        x = xn;
    }
    Err(Error::Convergence(format!(
        "Newton iteration stalled near node {x}"
    )))
}

/// Roots of `p_Q` on `(-1, 1)` by sign-change bracketing in the angle
/// variable followed by Newton.
fn interval_nodes(rec: &Recurrence, q: usize) -> Result<Vec<f64>> {
    let grid = 8 * q.max(4);
    let theta = |i: usize| std::f64::consts::PI * (i as f64) / (grid as f64);
    let mut brackets = Vec::with_capacity(q);
    let mut prev_t = (theta(1)).cos();
    let mut prev_v = rec.eval(q, prev_t).0;
    for i in 2..grid {
        let t = theta(i).cos();
        let v = rec.eval(q, t).0;
        if prev_v == 0.0 {
            brackets.push((prev_t, prev_t));
        } else if prev_v * v < 0.0 {
            brackets.push((t.min(prev_t), t.max(prev_t)));
        }
        prev_t = t;
        prev_v = v;
    }
    if brackets.len() != q {
        return Err(Error::Convergence(format!(
            "bracketing found {} sign changes, expected {q}",
            brackets.len()
        )));
    }
    let mut nodes: Vec<f64> = brackets
        .into_iter()
        .map(|(lo, hi)| newton_in_bracket(rec, q, lo, hi))
        .collect::<Result<_>>()?;
    nodes.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // the weight is even, so the nodes are symmetric about 0; enforcing
    // that cancels the last ulps of Newton roundoff
    for i in 0..q / 2 {
        let s = 0.5 * (nodes[i] - nodes[q - 1 - i]);
        nodes[i] = s;
        nodes[q - 1 - i] = -s;
    }
    if q % 2 == 1 {
        nodes[q / 2] = 0.0;
    }
    Ok(nodes)
}

/// Roots of the order-`Q` generalized Laguerre polynomial: every root lies
/// below `4Q + 2 alpha + 6`, and in the variable `s = sqrt(x)` they are
/// nearly uniformly spaced, so a uniform `s`-scan brackets all of them.
fn laguerre_nodes(rec: &Recurrence, q: usize, alpha: f64) -> Result<Vec<f64>> {
    let bound = 4.0 * q as f64 + 2.0 * alpha + 6.0;
    let s_max = bound.sqrt();
    let grid = 16 * q.max(4);
    let mut brackets = Vec::with_capacity(q);
    let mut prev_s = s_max / grid as f64 * 0.25;
    let mut prev_v = rec.eval(q, prev_s * prev_s).0;
    for i in 1..=grid {
        let s = s_max * (i as f64) / (grid as f64);
        let v = rec.eval(q, s * s).0;
        if prev_v == 0.0 {
            brackets.push((prev_s * prev_s, prev_s * prev_s));
        } else if prev_v * v < 0.0 {
            brackets.push((prev_s * prev_s, s * s));
        }
        prev_s = s;
        prev_v = v;
    }
    if brackets.len() != q {
        return Err(Error::Convergence(format!(
            "bracketing found {} sign changes, expected {q}",
            brackets.len()
        )));
    }
    let nodes: Vec<f64> = brackets
        .into_iter()
        .map(|(lo, hi)| newton_in_bracket(rec, q, lo, hi))
        .collect::<Result<_>>()?;
    for w in nodes.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::Convergence(
                "damped-rule nodes failed to separate".into(),
            ));
        }
    }
    Ok(nodes)
}

/// Builds a Gauss rule exact on polynomials of degree `<= 2 order - 1`
/// against its weight (for the damped rule: on `p(y) y^alpha e^{-y}`).
pub fn quad_rule(domain: QuadDomain, order: usize) -> Result<QuadratureRule> {
    if order < 2 {
        return Err(Error::Usage(format!("quadrature order {order} < 2")));
    }
    let (rec, nodes) = match domain {
        QuadDomain::GegenbauerInterval { n } => {
            if n < 2 {
                return Err(Error::Usage(format!("sphere dimension {n} < 2")));
            }
            let rec = gegenbauer_recurrence((f64::from(n) - 1.0) / 2.0, order);
            let nodes = interval_nodes(&rec, order)?;
            (rec, nodes)
        }
        QuadDomain::UnitInterval => {
            let rec = gegenbauer_recurrence(0.5, order);
            let nodes = interval_nodes(&rec, order)?;
            (rec, nodes)
        }
        QuadDomain::SemiInfiniteExp { alpha } => {
            if alpha <= -1.0 {
                return Err(Error::Usage(format!(
                    "damped-rule exponent alpha = {alpha} <= -1"
                )));
            }
            // beyond this order the outermost nodes carry weights below the
            // double-precision range and node polishing degenerates
            if order > 160 {
                return Err(Error::Convergence(format!(
                    "damped rule of order {order} exceeds the double-precision \
                     weight range (max 160)"
                )));
            }
            let rec = laguerre_recurrence(alpha, order);
            let nodes = laguerre_nodes(&rec, order, alpha)?;
            (rec, nodes)
        }
    };
    let mut weights: Vec<f64> = nodes
        .iter()
        .map(|&x| 1.0 / rec.eval(order, x).2)
        .collect();
    if !matches!(domain, QuadDomain::SemiInfiniteExp { .. }) {
        // symmetrize the weights along with the nodes
        for i in 0..order / 2 {
            let w = 0.5 * (weights[i] + weights[order - 1 - i]);
            weights[i] = w;
            weights[order - 1 - i] = w;
        }
    }
    let weights = weights;
    let (nodes, weights) = match domain {
        QuadDomain::UnitInterval => (
            nodes.iter().map(|&t| 0.5 * (t + 1.0)).collect(),
            weights.iter().map(|&w| 0.5 * w).collect(),
        ),
        _ => (nodes, weights),
    };
    let rule = QuadratureRule { nodes, weights, domain, order };
    let expected_mass = match domain {
        QuadDomain::GegenbauerInterval { n } => {
            std::f64::consts::PI.sqrt() * gamma_f64(f64::from(n) / 2.0)
                / gamma_f64((f64::from(n) + 1.0) / 2.0)
        }
        QuadDomain::UnitInterval => 1.0,
        QuadDomain::SemiInfiniteExp { alpha } => gamma_f64(alpha + 1.0),
    };
    let mass = rule.mass();
    if (mass - expected_mass).abs() > 1e-12 * expected_mass.abs() {
        return Err(Error::Convergence(format!(
            "rule mass {mass} deviates from {expected_mass}"
        )));
    }
    if rule.weights.iter().any(|&w| w <= 0.0) {
        return Err(Error::Convergence("nonpositive quadrature weight".into()));
    }
    Ok(rule)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_interval_monomial_exactness() {
        // Q = 10 integrates r^19 exactly: 1/20
        let rule = quad_rule(QuadDomain::UnitInterval, 10).unwrap();
        let v = rule.integrate(|r| r.powi(19));
        assert!((v - 0.05).abs() < 1e-15, "{v}");
    }

    #[test]
    fn sphere_weight_total_mass() {
        // n = 3: int (1-t^2)^{1/2} dt = pi/2
        let rule = quad_rule(QuadDomain::GegenbauerInterval { n: 3 }, 24).unwrap();
        assert!((rule.mass() - std::f64::consts::PI / 2.0).abs() < 1e-14);
        // general n: sqrt(pi) Gamma(n/2) / Gamma((n+1)/2)  (Beta-integral oracle)
        for n in 2..=10u32 {
            let rule = quad_rule(QuadDomain::GegenbauerInterval { n }, 40).unwrap();
            let expect = std::f64::consts::PI.sqrt() * gamma_f64(f64::from(n) / 2.0)
                / gamma_f64((f64::from(n) + 1.0) / 2.0);
            assert!((rule.mass() - expect).abs() < 1e-13 * expect, "n = {n}");
        }
    }

    #[test]
    fn damped_rule_polynomial_exactness() {
        // int_0^inf y^k e^{-y} dy = k!
        let rule = quad_rule(QuadDomain::SemiInfiniteExp { alpha: 0.0 }, 16).unwrap();
        let mut fact = 1.0;
        for k in 0..=15u32 {
            if k > 0 {
                fact *= f64::from(k);
            }
            let v = rule.integrate(|y| y.powi(k as i32));
            assert!((v - fact).abs() < 1e-12 * fact, "k = {k}: {v} vs {fact}");
        }
    }

    #[test]
    fn damped_rule_half_integer_weight() {
        // alpha = 1/2: int y^{1/2+k} e^{-y} = Gamma(k + 3/2)
        let rule = quad_rule(QuadDomain::SemiInfiniteExp { alpha: 0.5 }, 20).unwrap();
        for k in 0..=6 {
            let v = rule.integrate(|y| y.powi(k));
            let expect = gamma_f64(k as f64 + 1.5);
            assert!((v - expect).abs() < 1e-12 * expect, "k = {k}");
        }
    }

    #[test]
    fn big_order_constructs() {
        let rule = quad_rule(QuadDomain::GegenbauerInterval { n: 7 }, 200).unwrap();
        assert_eq!(rule.nodes().len(), 200);
        let rule = quad_rule(QuadDomain::SemiInfiniteExp { alpha: 0.0 }, 160).unwrap();
        assert_eq!(rule.nodes().len(), 160);
        assert!(quad_rule(QuadDomain::SemiInfiniteExp { alpha: 0.0 }, 200).is_err());
    }

    #[test]
    fn deterministic_rebuild() {
        let a = quad_rule(QuadDomain::GegenbauerInterval { n: 5 }, 64).unwrap();
        let b = quad_rule(QuadDomain::GegenbauerInterval { n: 5 }, 64).unwrap();
        assert_eq!(a.nodes(), b.nodes());
        assert_eq!(a.weights(), b.weights());
    }

    #[test]
    fn order_below_two_rejected() {
        assert!(quad_rule(QuadDomain::UnitInterval, 1).is_err());
    }
}
