//! Exact Gamma evaluation at positive half-integers, Pochhammer symbols,
//! and pi-cancelling Gamma ratios.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

use super::scalar::{ExactScalar, HalfInt};

/// Exact `Gamma(x)` for positive half-integer `x`.
///
/// Integer `x = k` gives `(k-1)!`; half-odd `x = k + 1/2` gives
/// `(2k)! / (4^k k!) * sqrt(pi)`, anchored at `Gamma(1/2) = sqrt(pi)`.
pub fn gamma_half(x: HalfInt) -> Result<ExactScalar> {
    if !x.is_positive() {
        return Err(Error::Domain(format!(
            "Gamma({x}) at a nonpositive half-integer (pole or undefined by policy)"
        )));
    }
    if let Some(k) = x.integer_value() {
        let mut acc = BigInt::one();
        for i in 2..k {
            acc *= i;
        }
        return Ok(ExactScalar::from_rational(BigRational::from_integer(acc)));
    }
    // x = k + 1/2 with k >= 0
    let k = (x.twice() - 1) / 2;
    let mut num = BigInt::one();
    for i in 2..=(2 * k) {
        num *= i;
    }
    let mut den = BigInt::one();
    for i in 2..=k {
        den *= i;
    }
    den *= BigInt::from(4).pow(k as u32);
    ExactScalar::new(BigRational::new(num, den), 1)
}

/// Rising factorial `(a)_k = a (a+1) ... (a+k-1)`, with `(a)_0 = 1` as the
/// empty product.
pub fn pochhammer(a: &BigRational, k: u32) -> BigRational {
    let mut acc = BigRational::one();
    let mut term = a.clone();
    for _ in 0..k {
        acc *= &term;
        term += BigRational::one();
    }
    acc
}

/// `(a)_k` for a half-integer start.
pub fn pochhammer_half(a: HalfInt, k: u32) -> BigRational {
    pochhammer(&a.to_rational(), k)
}

/// Exact `Gamma(x) / Gamma(y)` for positive half-integers.
///
/// Integer difference collapses to a Pochhammer product (no `sqrt(pi)`);
/// a half-odd difference is evaluated through the `sqrt(pi)` algebra and
/// fails when the quotient would carry `1/sqrt(pi)`.
pub fn gamma_ratio(x: HalfInt, y: HalfInt) -> Result<ExactScalar> {
    if !x.is_positive() || !y.is_positive() {
        return Err(Error::Domain(format!(
            "Gamma ratio at nonpositive argument: Gamma({x})/Gamma({y})"
        )));
    }
    let d = x.sub(y);
    if let Some(di) = d.integer_value() {
        let q = if di >= 0 {
            pochhammer_half(y, di as u32)
        } else {
            let p = pochhammer_half(x, (-di) as u32);
            if p.is_zero() {
                return Err(Error::Domain(format!(
                    "Gamma({x})/Gamma({y}): zero Pochhammer in the denominator"
                )));
            }
            p.recip()
        };
        return Ok(ExactScalar::from_rational(q));
    }
    gamma_half(x)?.div(&gamma_half(y)?)
}

/// Exact `prod Gamma(nums) / prod Gamma(dens)` with pairwise `pi`
/// cancellation; the net `sqrt(pi)` exponent must land in `{0, 1}`.
///
/// This is the entry point for the trace-formula coefficients such as
/// `Gamma(m+1) Gamma(1/2) / Gamma(m+1/2)`, which is rational even though
/// each factor is not.
pub fn gamma_product_ratio(nums: &[HalfInt], dens: &[HalfInt]) -> Result<ExactScalar> {
    let n: Result<Vec<_>> = nums.iter().map(|&x| gamma_half(x)).collect();
    let d: Result<Vec<_>> = dens.iter().map(|&x| gamma_half(x)).collect();
    ExactScalar::ratio_prod(&n?, &d?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn gamma_half_anchors() {
        // Gamma(1/2) = sqrt(pi)
        assert_eq!(gamma_half(HalfInt::new(1)).unwrap(), ExactScalar::sqrt_pi());
        // Gamma(4) = 3! = 6
        assert_eq!(
            gamma_half(HalfInt::from_int(4)).unwrap(),
            ExactScalar::from_int(6)
        );
        // Gamma(5/2) = (3/4) sqrt(pi)
        let g = gamma_half(HalfInt::new(5)).unwrap();
        assert_eq!(g.rational_part(), &rat(3, 4));
        assert_eq!(g.sqrt_pi_pow(), 1);
        assert!(gamma_half(HalfInt::new(-1)).is_err());
        assert!(gamma_half(HalfInt::from_int(0)).is_err());
    }

    #[test]
    fn recurrence_holds() {
        // Gamma(x+1) = x Gamma(x) over a grid of half-integers
        for twice in 1..30 {
            let x = HalfInt::new(twice);
            let lhs = gamma_half(x.add_int(1)).unwrap();
            let rhs = gamma_half(x)
                .unwrap()
                .mul(&ExactScalar::from_rational(x.to_rational()))
                .unwrap();
            assert_eq!(lhs, rhs, "x = {x}");
        }
    }

    #[test]
    fn duplication_formula() {
        // Gamma(2z) = 2^{2z-1} Gamma(z) Gamma(z+1/2) / sqrt(pi)
        for twice in 1..20 {
            let z = HalfInt::new(twice);
            let two_z = HalfInt::new(2 * twice);
            let lhs = gamma_half(two_z).unwrap();
            let pow = rat(2, 1).pow(twice as i32 - 1);
            let rhs = ExactScalar::ratio_prod(
                &[
                    ExactScalar::from_rational(pow),
                    gamma_half(z).unwrap(),
                    gamma_half(z.add(HalfInt::new(1))).unwrap(),
                ],
                &[ExactScalar::sqrt_pi()],
            )
            .unwrap();
            assert_eq!(lhs, rhs, "z = {z}");
        }
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&rat(5, 1), 0), rat(1, 1));
        assert_eq!(pochhammer(&rat(-2, 1), 3), rat(0, 1));
        assert_eq!(pochhammer(&rat(3, 1), 2), rat(12, 1));
        // (-m)_{m+1} = 0 kills every over-iterated Laplacian
        for m in 0..6i64 {
            assert!(pochhammer(&rat(-m, 1), m as u32 + 1).is_zero());
            assert!(!pochhammer(&rat(-m, 1), m as u32).is_zero());
        }
    }

    #[test]
    fn pochhammer_additivity() {
        // (a)_k (a+k)_j = (a)_{k+j}
        for num in [-5i64, -1, 2, 7] {
            for den in [1i64, 2, 3] {
                let a = rat(num, den);
                for k in 0..5u32 {
                    for j in 0..5u32 {
                        let shifted = &a + BigRational::from_integer(BigInt::from(k));
                        assert_eq!(
                            pochhammer(&a, k) * pochhammer(&shifted, j),
                            pochhammer(&a, k + j)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn gamma_ratio_integer_difference() {
        // Gamma(7/2)/Gamma(1/2) = (1/2)(3/2)(5/2) = 15/8
        let r = gamma_ratio(HalfInt::new(7), HalfInt::new(1)).unwrap();
        assert_eq!(r, ExactScalar::from_ratio(15, 8));
        // identity
        assert_eq!(
            gamma_ratio(HalfInt::from_int(3), HalfInt::from_int(3)).unwrap(),
            ExactScalar::one()
        );
        // the order-3 eigenvalue at l = 0, n = 4: Gamma(7/2)/Gamma(1/2)
        let r = gamma_ratio(HalfInt::new(7), HalfInt::new(1)).unwrap();
        assert_eq!(r.rational_part(), &rat(15, 8));
        // inverse direction
        let r = gamma_ratio(HalfInt::new(1), HalfInt::new(7)).unwrap();
        assert_eq!(r, ExactScalar::from_ratio(8, 15));
        assert!(gamma_ratio(HalfInt::new(-3), HalfInt::new(1)).is_err());
    }

    #[test]
    fn gamma_ratio_half_odd_difference() {
        // Gamma(3/2)/Gamma(1) = sqrt(pi)/2
        let r = gamma_ratio(HalfInt::new(3), HalfInt::from_int(1)).unwrap();
        assert_eq!(r.rational_part(), &rat(1, 2));
        assert_eq!(r.sqrt_pi_pow(), 1);
        // Gamma(1)/Gamma(3/2) would carry 1/sqrt(pi): rejected
        assert!(gamma_ratio(HalfInt::from_int(1), HalfInt::new(3)).is_err());
    }

    #[test]
    fn product_ratio_constants() {
        // c_m = Gamma(m+1) Gamma(1/2) / Gamma(m+1/2): 1, 2, 8/3, 16/5, 128/35, 256/63
        let expect = [rat(1, 1), rat(2, 1), rat(8, 3), rat(16, 5), rat(128, 35), rat(256, 63)];
        for (m, want) in expect.iter().enumerate() {
            let c = gamma_product_ratio(
                &[HalfInt::from_int(m as i64 + 1), HalfInt::new(1)],
                &[HalfInt::int_plus_half(m as i64)],
            )
            .unwrap();
            assert!(c.is_rational());
            assert_eq!(c.rational_part(), want, "m = {m}");
        }
        // pure-trace multiplier at m = 2, k = 1:
        // Gamma(3/2)^2 / (Gamma(1/2) Gamma(5/2)) = 1/3
        let v = gamma_product_ratio(
            &[HalfInt::new(3), HalfInt::new(3)],
            &[HalfInt::new(1), HalfInt::new(5)],
        )
        .unwrap();
        assert_eq!(v, ExactScalar::from_ratio(1, 3));
    }
}
