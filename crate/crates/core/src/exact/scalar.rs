//! Scalars of the form `q * (sqrt(pi))^e` with `q` an arbitrary-precision
//! rational and `e` in `{0, 1}`, together with exact half-integers.
//!
//! Every constant the exact pipeline touches lives in `Q ∪ Q·sqrt(pi)`:
//! Gamma values at half-integers, their ratios, and all polynomial
//! coefficients derived from them. A product that would create the exponent
//! `e = 2` signals a derivation bug upstream, so the checked operations
//! refuse it instead of silently folding `pi` into the rational part. The
//! one legitimate way for `pi` powers to cancel across a ratio of products
//! is [`ExactScalar::ratio_prod`].

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `q * sqrt(pi)^e` with `q` rational in lowest terms and `e` in `{0, 1}`.
///
/// The canonical zero has `e = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactScalar {
    q: BigRational,
    sqrt_pi_pow: u8,
}

impl ExactScalar {
    pub fn new(q: BigRational, sqrt_pi_pow: u8) -> Result<Self> {
        if sqrt_pi_pow > 1 {
            return Err(Error::Structural(format!(
                "sqrt(pi) exponent {sqrt_pi_pow} outside {{0, 1}}"
            )));
        }
        Ok(Self::normalized(q, sqrt_pi_pow))
    }

    fn normalized(q: BigRational, sqrt_pi_pow: u8) -> Self {
        let e = if q.is_zero() { 0 } else { sqrt_pi_pow };
        Self { q, sqrt_pi_pow: e }
    }

    pub fn zero() -> Self {
        Self::normalized(BigRational::zero(), 0)
    }

    pub fn one() -> Self {
        Self::normalized(BigRational::one(), 0)
    }

    /// The constant `sqrt(pi)`, i.e. `q = 1`, `e = 1`.
    pub fn sqrt_pi() -> Self {
        Self::normalized(BigRational::one(), 1)
    }

    pub fn from_int(v: i64) -> Self {
        Self::normalized(BigRational::from_integer(BigInt::from(v)), 0)
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::normalized(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            0,
        )
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::normalized(q, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.sqrt_pi_pow == 0
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.q
    }

    pub fn sqrt_pi_pow(&self) -> u8 {
        self.sqrt_pi_pow
    }

    /// The rational value, failing when a genuine `sqrt(pi)` factor remains.
    pub fn into_rational(self) -> Result<BigRational> {
        if self.sqrt_pi_pow == 0 {
            Ok(self.q)
        } else {
            Err(Error::Structural(format!(
                "value {self} carries sqrt(pi); expected a pure rational"
            )))
        }
    }

    pub fn neg(&self) -> Self {
        Self::normalized(-self.q.clone(), self.sqrt_pi_pow)
    }

    /// Addition; defined only between operands of equal `sqrt(pi)` exponent
    /// (zero is compatible with either side).
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.sqrt_pi_pow != other.sqrt_pi_pow {
            return Err(Error::Structural(format!(
                "mixed sqrt(pi) exponents in addition: {self} + {other}"
            )));
        }
        Ok(Self::normalized(&self.q + &other.q, self.sqrt_pi_pow))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Multiplication; the exponents add and must land in `{0, 1}`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let e = self.sqrt_pi_pow + other.sqrt_pi_pow;
        if e > 1 {
            return Err(Error::Structural(format!(
                "product {self} * {other} would carry pi; use ratio_prod for \
                 pi-cancelling combinations"
            )));
        }
        Ok(Self::normalized(&self.q * &other.q, e))
    }

    /// Division; the exponents subtract and must land in `{0, 1}`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if self.sqrt_pi_pow < other.sqrt_pi_pow {
            return Err(Error::Structural(format!(
                "quotient {self} / {other} would carry 1/sqrt(pi)"
            )));
        }
        Ok(Self::normalized(
            &self.q / &other.q,
            self.sqrt_pi_pow - other.sqrt_pi_pow,
        ))
    }

    /// Exact ratio of products `prod(nums) / prod(dens)` in which whole
    /// powers of `pi` may cancel. The net `sqrt(pi)` exponent must land in
    /// `{0, 1}`; any paired exponents cancel exactly.
    pub fn ratio_prod(nums: &[ExactScalar], dens: &[ExactScalar]) -> Result<Self> {
        let mut q = BigRational::one();
        let mut e_num: i64 = 0;
        for x in nums {
            if x.is_zero() {
                return Ok(Self::zero());
            }
            q *= &x.q;
            e_num += i64::from(x.sqrt_pi_pow);
        }
        for x in dens {
            if x.is_zero() {
                return Err(Error::Domain("zero denominator in ratio_prod".into()));
            }
            q /= &x.q;
            e_num -= i64::from(x.sqrt_pi_pow);
        }
        match e_num {
            0 => Ok(Self::normalized(q, 0)),
            1 => Ok(Self::normalized(q, 1)),
            e => Err(Error::Structural(format!(
                "ratio_prod leaves net sqrt(pi) exponent {e}"
            ))),
        }
    }

    pub fn to_f64(&self) -> f64 {
        let base = rational_to_f64(&self.q);
        match self.sqrt_pi_pow {
            0 => base,
            _ => base * std::f64::consts::PI.sqrt(),
        }
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sqrt_pi_pow == 0 {
            write!(f, "{}", self.q)
        } else {
            write!(f, "{}*sqrt(pi)", self.q)
        }
    }
}

/// Rational-to-float conversion that survives numerators far beyond the
/// `f64` integer range by deferring to `BigRational::to_f64`.
pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact half-integer `twice / 2`.
///
/// Houses every Gamma argument appearing in the trace formulas; comparisons
/// and arithmetic are exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    /// Builds the half-integer `twice/2`.
    pub fn new(twice: i64) -> Self {
        Self { twice }
    }

    pub fn from_int(v: i64) -> Self {
        Self { twice: 2 * v }
    }

    /// `v + 1/2`.
    pub fn int_plus_half(v: i64) -> Self {
        Self { twice: 2 * v + 1 }
    }

    pub fn twice(&self) -> i64 {
        self.twice
    }

    pub fn is_integer(&self) -> bool {
        self.twice % 2 == 0
    }

    /// True for odd multiples of 1/2.
    pub fn is_half_odd(&self) -> bool {
        self.twice.rem_euclid(2) == 1
    }

    pub fn integer_value(&self) -> Option<i64> {
        self.is_integer().then_some(self.twice / 2)
    }

    pub fn is_positive(&self) -> bool {
        self.twice > 0
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(self.twice), BigInt::from(2))
    }

    pub fn to_f64(&self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub fn add(&self, other: HalfInt) -> HalfInt {
        HalfInt::new(self.twice + other.twice)
    }

    pub fn sub(&self, other: HalfInt) -> HalfInt {
        HalfInt::new(self.twice - other.twice)
    }

    pub fn add_int(&self, v: i64) -> HalfInt {
        HalfInt::new(self.twice + 2 * v)
    }
}

impl PartialOrd for HalfInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HalfInt {
    fn cmp(&self, other: &Self) -> Ordering {
        self.twice.cmp(&other.twice)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}
