//! Radial polynomials `r^l * sum_j c_j r^{2j}` with exact coefficients,
//! terminating hypergeometric sums, and exact integration over the unit
//! interval.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::gamma::pochhammer;
use super::scalar::{rational_to_f64, ExactScalar};

/// `h(r) = r^l * sum_j c_j r^{2j}` with `l >= 0` and exact coefficients.
///
/// Trailing zero coefficients are stripped; the zero polynomial keeps its
/// `l` tag so mode bookkeeping survives annihilation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadialPoly {
    l: u32,
    coeffs: Vec<ExactScalar>,
}

impl RadialPoly {
    pub fn new(l: u32, mut coeffs: Vec<ExactScalar>) -> Self {
        while coeffs.last().is_some_and(ExactScalar::is_zero) {
            coeffs.pop();
        }
        Self { l, coeffs }
    }

    pub fn from_rationals(l: u32, coeffs: Vec<BigRational>) -> Self {
        Self::new(l, coeffs.into_iter().map(ExactScalar::from_rational).collect())
    }

    pub fn zero(l: u32) -> Self {
        Self { l, coeffs: Vec::new() }
    }

    pub fn constant(c: ExactScalar) -> Self {
        Self::new(0, vec![c])
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    /// Coefficients as plain rationals; fails if any carries `sqrt(pi)`.
    pub fn rational_coeffs(&self) -> Result<Vec<BigRational>> {
        self.coeffs.iter().cloned().map(ExactScalar::into_rational).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Total degree `l + 2 (len - 1)`, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        (!self.coeffs.is_empty()).then(|| self.l + 2 * (self.coeffs.len() as u32 - 1))
    }

    pub fn eval_f64(&self, r: f64) -> f64 {
        let z = r * r;
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c.to_f64();
        }
        acc * r.powi(self.l as i32)
    }

    /// `h(1) = sum_j c_j`.
    pub fn value_at_one(&self) -> Result<ExactScalar> {
        let mut acc = ExactScalar::zero();
        for c in &self.coeffs {
            acc = acc.add(c)?;
        }
        Ok(acc)
    }

    /// Exact `d/dr`; the prefactor degree drops by one (or re-indexes to 1
    /// for `l = 0`, whose constant term dies).
    pub fn deriv(&self) -> Result<Self> {
        if self.coeffs.is_empty() {
            return Ok(Self::zero(self.l.saturating_sub(1)));
        }
        if self.l >= 1 {
            let coeffs = self
                .coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| {
                    c.mul(&ExactScalar::from_int(i64::from(self.l) + 2 * j as i64))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Self::new(self.l - 1, coeffs))
        } else {
            let coeffs = self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c.mul(&ExactScalar::from_int(2 * j as i64)))
                .collect::<Result<Vec<_>>>()?;
            Ok(Self::new(1, coeffs))
        }
    }

    /// Sum of two radial polynomials; their prefactors must agree in parity.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if (self.l % 2) != (other.l % 2) {
            return Err(Error::Structural(format!(
                "parity mismatch in radial sum: r^{} vs r^{}",
                self.l, other.l
            )));
        }
        let l = self.l.min(other.l);
        let shift_a = ((self.l - l) / 2) as usize;
        let shift_b = ((other.l - l) / 2) as usize;
        let len = (self.coeffs.len() + shift_a).max(other.coeffs.len() + shift_b);
        let mut coeffs = vec![ExactScalar::zero(); len];
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs[j + shift_a] = coeffs[j + shift_a].add(c)?;
        }
        for (j, c) in other.coeffs.iter().enumerate() {
            coeffs[j + shift_b] = coeffs[j + shift_b].add(c)?;
        }
        Ok(Self::new(l, coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&ExactScalar::from_int(-1))?)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.l + other.l));
        }
        let mut coeffs =
            vec![ExactScalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b)?)?;
            }
        }
        Ok(Self::new(self.l + other.l, coeffs))
    }

    pub fn scale(&self, s: &ExactScalar) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.mul(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(self.l, coeffs))
    }

    pub fn scale_rational(&self, s: &BigRational) -> Self {
        self.scale(&ExactScalar::from_rational(s.clone()))
            .expect("rational scaling cannot raise the sqrt(pi) exponent")
    }
}

/// Exact `int_0^1 p(r) r^w dr = sum_j c_j / (l + 2j + w + 1)`.
pub fn radial_integrate(p: &RadialPoly, weight_exponent: u32) -> Result<ExactScalar> {
    let mut acc = ExactScalar::zero();
    for (j, c) in p.coeffs().iter().enumerate() {
        let denom = i64::from(p.l()) + 2 * j as i64 + i64::from(weight_exponent) + 1;
        acc = acc.add(&c.div(&ExactScalar::from_int(denom))?)?;
    }
    Ok(acc)
}

/// Terminating Gauss hypergeometric sum
/// `F(a, b; c; z) = sum_{k=0}^{K} (a)_k (b)_k / ((c)_k k!) z^k`
/// as exact coefficients of `z^k`, with `(a)_0 = 1` (empty product).
///
/// Requires `a` or `b` to be a nonpositive integer; `K` is the earliest
/// termination index. A zero `(c)_k` before termination is a genuine pole.
pub fn hyp2f1_terminating(
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
) -> Result<Vec<BigRational>> {
    let term_index = |x: &BigRational| -> Option<u32> {
        (x.is_integer() && !x.is_positive()).then(|| {
            let v = -x.to_integer();
            u32::try_from(v.to_string().parse::<i64>().unwrap_or(i64::MAX)).unwrap_or(u32::MAX)
        })
    };
    let ka = term_index(a);
    let kb = term_index(b);
    let k_max = match (ka, kb) {
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) => x,
        (None, Some(y)) => y,
        (None, None) => {
            return Err(Error::Usage(format!(
                "F({a}, {b}; {c}; .) does not terminate: neither upper parameter \
                 is a nonpositive integer"
            )))
        }
    };
    let mut coeffs = Vec::with_capacity(k_max as usize + 1);
    let mut term = BigRational::one();
    let mut a_k = a.clone();
    let mut b_k = b.clone();
    let mut c_k = c.clone();
    for k in 0..=k_max {
        coeffs.push(term.clone());
        if k == k_max {
            break;
        }
        if c_k.is_zero() {
            return Err(Error::Domain(format!(
                "F({a}, {b}; {c}; .): (c)_k vanishes at k = {} before termination",
                k + 1
            )));
        }
        term *= &a_k * &b_k / (&c_k * BigRational::from_integer(BigInt::from(k + 1)));
        a_k += BigRational::one();
        b_k += BigRational::one();
        c_k += BigRational::one();
    }
    Ok(coeffs)
}

/// Evaluates exact polynomial coefficients at a float point (Horner).
pub fn eval_poly_f64(coeffs: &[BigRational], z: f64) -> f64 {
    let mut acc = 0.0;
    for c in coeffs.iter().rev() {
        acc = acc * z + rational_to_f64(c);
    }
    acc
}

/// Formal `k`-th derivative factor check helper: `(a)_k (b)_k / (c)_k`.
pub fn derivative_prefactor(a: &BigRational, b: &BigRational, c: &BigRational, k: u32) -> Result<BigRational> {
    let den = pochhammer(c, k);
    if den.is_zero() {
        return Err(Error::Domain(format!("(c)_k vanishes for c = {c}, k = {k}")));
    }
    Ok(pochhammer(a, k) * pochhammer(b, k) / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn strips_trailing_zeros() {
        let p = RadialPoly::from_rationals(2, vec![rat(1, 1), rat(0, 1), rat(0, 1)]);
        assert_eq!(p.coeffs().len(), 1);
        assert_eq!(p.degree(), Some(2));
    }

    #[test]
    fn derivative_shifts_parity() {
        // d/dr (r^2 + r^4) = 2r + 4r^3
        let p = RadialPoly::from_rationals(2, vec![rat(1, 1), rat(1, 1)]);
        let d = p.deriv().unwrap();
        assert_eq!(d.l(), 1);
        assert_eq!(d.rational_coeffs().unwrap(), vec![rat(2, 1), rat(4, 1)]);
        // l = 0: constant term dies
        let p = RadialPoly::from_rationals(0, vec![rat(5, 1), rat(1, 1)]);
        let d = p.deriv().unwrap();
        assert_eq!(d.l(), 1);
        assert_eq!(d.rational_coeffs().unwrap(), vec![rat(2, 1)]);
    }

    #[test]
    fn add_rebases_prefactor() {
        let a = RadialPoly::from_rationals(1, vec![rat(1, 1)]);
        let b = RadialPoly::from_rationals(3, vec![rat(2, 1)]);
        let s = a.add(&b).unwrap();
        assert_eq!(s.l(), 1);
        assert_eq!(s.rational_coeffs().unwrap(), vec![rat(1, 1), rat(2, 1)]);
        let c = RadialPoly::from_rationals(2, vec![rat(1, 1)]);
        assert!(a.add(&c).is_err());
    }

    #[test]
    fn integrate_monomials() {
        // p = 1, w = 3 -> 1/4
        let one = RadialPoly::from_rationals(0, vec![rat(1, 1)]);
        assert_eq!(
            radial_integrate(&one, 3).unwrap(),
            ExactScalar::from_ratio(1, 4)
        );
        // p = r^2, w = 3 -> 1/6
        let r2 = RadialPoly::from_rationals(2, vec![rat(1, 1)]);
        assert_eq!(
            radial_integrate(&r2, 3).unwrap(),
            ExactScalar::from_ratio(1, 6)
        );
        // p = 1, w = n -> 1/(n+1): the unit-ball volume ratio
        for n in 2..10 {
            assert_eq!(
                radial_integrate(&one, n).unwrap(),
                ExactScalar::from_ratio(1, i64::from(n) + 1)
            );
        }
    }

    #[test]
    fn terminating_hypergeometric() {
        // F(-1, b; c; z) = 1 - (b/c) z
        let co = hyp2f1_terminating(&rat(-1, 1), &rat(3, 2), &rat(5, 2)).unwrap();
        assert_eq!(co, vec![rat(1, 1), rat(-3, 5)]);
        // F(a, b; c; 0) -> leading coefficient 1
        let co = hyp2f1_terminating(&rat(-4, 1), &rat(1, 3), &rat(7, 2)).unwrap();
        assert_eq!(co[0], rat(1, 1));
        // F(-1, (n-3)/2; -2; 2 rho) at n = 7 -> 1 + 2 rho; var = 2 rho, so
        // coefficient of var is 1 and the polynomial in rho is 1 + 2 rho.
        let co = hyp2f1_terminating(&rat(-1, 1), &rat(2, 1), &rat(-2, 1)).unwrap();
        assert_eq!(co, vec![rat(1, 1), rat(1, 1)]);
        // non-terminating parameters are a usage error
        assert!(hyp2f1_terminating(&rat(1, 2), &rat(1, 3), &rat(2, 1)).is_err());
        // (c)_k vanishing before termination is a domain error
        assert!(hyp2f1_terminating(&rat(-3, 1), &rat(1, 2), &rat(-2, 1)).is_err());
    }

    #[test]
    fn differentiation_formula_exact() {
        // d^k/dz^k F(a,b;c;z) = (a)_k (b)_k / (c)_k F(a+k,b+k;c+k;z) as polynomials
        let a = rat(-4, 1);
        let b = rat(5, 2);
        let c = rat(7, 2);
        let base = hyp2f1_terminating(&a, &b, &c).unwrap();
        for k in 1..=4u32 {
            // formal k-th derivative of the coefficient list
            let mut lhs = base.clone();
            for _ in 0..k {
                lhs = lhs
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(j, cj)| cj * BigRational::from_integer(BigInt::from(j)))
                    .collect();
            }
            let pref = derivative_prefactor(&a, &b, &c, k).unwrap();
            let shift = BigRational::from_integer(BigInt::from(k));
            let rhs = hyp2f1_terminating(&(&a + &shift), &(&b + &shift), &(&c + &shift)).unwrap();
            let rhs: Vec<_> = rhs.iter().map(|x| x * &pref).collect();
            let lhs: Vec<_> = lhs.into_iter().filter(|x| !x.is_zero()).collect();
            let rhs: Vec<_> = rhs.into_iter().filter(|x| !x.is_zero()).collect();
            assert_eq!(lhs, rhs, "k = {k}");
        }
    }
}
