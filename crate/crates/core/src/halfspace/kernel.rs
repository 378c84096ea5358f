//! Exact verification of the half-space kernel differentiation identity:
//! a weighted Euler-operator sum applied to the first-order kernel
//! reproduces the order-(2m+1) kernel, with coefficients polynomial in the
//! boundary dimension `n` (kept symbolic).
//!
//! The working algebra is spanned by terms
//! `coeff(n) * y^a / (|x|^2 + y^2)^{(n+1)/2 + j}`,
//! which is closed under `y d/dy`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Result;

/// Dense polynomial in the symbolic dimension `n`, rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NPoly(Vec<BigRational>);

impl NPoly {
    pub fn zero() -> Self {
        NPoly(Vec::new())
    }

    pub fn constant(c: BigRational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            NPoly(vec![c])
        }
    }

    /// `a + b n`.
    pub fn linear(a: BigRational, b: BigRational) -> Self {
        let mut p = NPoly(vec![a, b]);
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.0.clone();
        if out.len() < other.0.len() {
            out.resize(other.0.len(), BigRational::zero());
        }
        for (i, c) in other.0.iter().enumerate() {
            out[i] += c;
        }
        let mut p = NPoly(out);
        p.normalize();
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        let mut p = NPoly(out);
        p.normalize();
        p
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        let mut p = NPoly(self.0.iter().map(|c| c * s).collect());
        p.normalize();
        p
    }

    pub fn eval(&self, n: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * n + c;
        }
        acc
    }
}

/// `coeff(n) * y^a / (|x|^2 + y^2)^{(n+1)/2 + j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelTerm {
    pub coeff: NPoly,
    pub y_pow: u32,
    pub denom_shift: u32,
}

/// A finite sum of kernel terms, kept collected by `(y_pow, denom_shift)`.
#[derive(Clone, Debug, Default)]
pub struct KernelSum {
    terms: BTreeMap<(u32, u32), NPoly>,
}

impl KernelSum {
    pub fn from_term(t: KernelTerm) -> Self {
        let mut s = Self::default();
        s.push(t);
        s
    }

    fn push(&mut self, t: KernelTerm) {
        if t.coeff.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry((t.y_pow, t.denom_shift))
            .or_insert_with(NPoly::zero);
        *entry = entry.add(&t.coeff);
        if entry.is_zero() {
            self.terms.remove(&(t.y_pow, t.denom_shift));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((a, j), c) in &other.terms {
            out.push(KernelTerm { coeff: c.clone(), y_pow: *a, denom_shift: *j });
        }
        out
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        let mut out = Self::default();
        for ((a, j), c) in &self.terms {
            out.push(KernelTerm { coeff: c.scale(s), y_pow: *a, denom_shift: *j });
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> Vec<KernelTerm> {
        self.terms
            .iter()
            .map(|((a, j), c)| KernelTerm { coeff: c.clone(), y_pow: *a, denom_shift: *j })
            .collect()
    }

    /// Exact `d/dy`: `d/dy [y^a D^{-b}] = a y^{a-1} D^{-b} - 2b y^{a+1} D^{-b-1}`
    /// with `D = |x|^2 + y^2` and `b = (n+1)/2 + j`.
    pub fn d_dy(&self) -> Self {
        let mut out = Self::default();
        for ((a, j), c) in &self.terms {
            if *a > 0 {
                out.push(KernelTerm {
                    coeff: c.scale(&BigRational::from_integer(BigInt::from(*a))),
                    y_pow: a - 1,
                    denom_shift: *j,
                });
            }
            // -2b = -(n + 1 + 2j): linear in n
            let minus_2b = NPoly::linear(
                BigRational::from_integer(BigInt::from(-(1 + 2 * i64::from(*j)))),
                -BigRational::one(),
            );
            out.push(KernelTerm {
                coeff: c.mul(&minus_2b),
                y_pow: a + 1,
                denom_shift: j + 1,
            });
        }
        out
    }

    /// Numeric evaluation at a concrete integer dimension and point
    /// (`x2 = |x|^2`).
    pub fn eval_at(&self, n: i64, x2: f64, y: f64) -> f64 {
        let nq = BigRational::from_integer(BigInt::from(n));
        let nf = n as f64;
        self.terms
            .iter()
            .map(|((a, j), c)| {
                crate::exact::eval_poly_f64(std::slice::from_ref(&c.eval(&nq)), 0.0)
                    * y.powi(*a as i32)
                    / (x2 + y * y).powf((nf + 1.0) / 2.0 + f64::from(*j))
            })
            .sum()
    }
}

/// The first-order kernel `y / (|x|^2 + y^2)^{(n+1)/2}`.
pub fn base_kernel() -> KernelSum {
    KernelSum::from_term(KernelTerm {
        coeff: NPoly::constant(BigRational::one()),
        y_pow: 1,
        denom_shift: 0,
    })
}

/// Operator coefficient `(2^k / k!) (2m - k)! / (m - k)!`.
fn operator_coefficient(m: u32, k: u32) -> BigRational {
    let mut num = BigInt::from(2).pow(k);
    for i in 2..=(2 * i64::from(m) - i64::from(k)) {
        num *= i;
    }
    let mut den = BigInt::one();
    for i in 2..=i64::from(k) {
        den *= i;
    }
    for i in 2..=(i64::from(m) - i64::from(k)) {
        den *= i;
    }
    BigRational::new(num, den)
}

/// Applies the order-`m` Euler-operator sum
/// `sum_k (2^k/k!) (2m-k)!/(m-k)! (-y)^k d^k/dy^k` to the first-order
/// kernel, subtracts `2^{2m} ((n+1)/2)_m` times the order-(2m+1) kernel,
/// and returns the residual sum (empty = identity verified for all `n`).
pub fn kernel_identity_check(m: u32) -> Result<Vec<KernelTerm>> {
    let base = base_kernel();
    let mut lhs = KernelSum::default();
    let mut derivative = base.clone();
    for k in 0..=m {
        if k > 0 {
            derivative = derivative.d_dy();
        }
        // (-y)^k d^k/dy^k: shift y-power up by k with sign (-1)^k
        let mut shifted = KernelSum::default();
        for t in derivative.terms() {
            shifted.push(KernelTerm {
                coeff: t.coeff,
                y_pow: t.y_pow + k,
                denom_shift: t.denom_shift,
            });
        }
        let sign = if k % 2 == 0 { BigRational::one() } else { -BigRational::one() };
        lhs = lhs.add(&shifted.scale(&(operator_coefficient(m, k) * sign)));
    }
    // rhs coefficient: 2^{2m} Gamma(m + (n+1)/2)/Gamma((n+1)/2)
    //   = 2^{2m} prod_{i=0}^{m-1} ((n+1)/2 + i) = prod_{i=0}^{m-1} (2(n+1)/2 + 2i) ... kept
    //   as an exact polynomial in n.
    let mut rhs_coeff = NPoly::constant(BigRational::from_integer(BigInt::from(2).pow(2 * m)));
    for i in 0..m {
        let lin = NPoly::linear(
            BigRational::new((1 + 2 * i64::from(i)).into(), 2.into()),
            BigRational::new(1.into(), 2.into()),
        );
        rhs_coeff = rhs_coeff.mul(&lin);
    }
    let rhs = KernelSum::from_term(KernelTerm {
        coeff: rhs_coeff,
        y_pow: 1 + 2 * m,
        denom_shift: m,
    });
    let residual = lhs.add(&rhs.scale(&-BigRational::one()));
    Ok(residual.terms())
}
