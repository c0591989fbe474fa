//! Exact integer and rational scalars.
//!
//! [`Integer`] is an arbitrary-precision signed integer. [`Rational`] wraps a
//! reduced big-integer fraction; every constructor and operation returns the
//! canonical form (positive denominator, coprime numerator and denominator,
//! zero stored as `0/1`), so structural equality is value equality.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub type Integer = BigInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("argument must be non-negative, got {0}")]
    NegativeArgument(Integer),
    #[error("argument too large: {0}")]
    TooLarge(Integer),
    #[error("invalid rational literal {0:?}")]
    Parse(String),
}

/// `C(n, k)`; zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> Integer {
    if k < 0 || k as u64 > n {
        return Integer::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = Integer::one();
    for i in 0..k {
        // acc * (n - i) is always divisible by (i + 1) at this point
        acc = acc * Integer::from(n - i) / Integer::from(i + 1);
    }
    acc
}

/// [`binomial`] for big-integer arguments; negative `n` is rejected.
pub fn binomial_checked(n: &Integer, k: &Integer) -> Result<Integer, ArithError> {
    if n.is_negative() {
        return Err(ArithError::NegativeArgument(n.clone()));
    }
    let n_small = n.to_u64().ok_or_else(|| ArithError::TooLarge(n.clone()))?;
    if k.is_negative() || k > n {
        return Ok(Integer::zero());
    }
    let k_small = k.to_i64().ok_or_else(|| ArithError::TooLarge(k.clone()))?;
    Ok(binomial(n_small, k_small))
}

pub fn factorial(n: u64) -> Integer {
    (2..=n).fold(Integer::one(), |acc, i| acc * Integer::from(i))
}

pub fn factorial_checked(n: &Integer) -> Result<Integer, ArithError> {
    if n.is_negative() {
        return Err(ArithError::NegativeArgument(n.clone()));
    }
    let n = n.to_u64().ok_or_else(|| ArithError::TooLarge(n.clone()))?;
    Ok(factorial(n))
}

/// Arbitrary-precision fraction in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `numer / denom`, reducing to canonical form.
    pub fn new(numer: impl Into<Integer>, denom: impl Into<Integer>) -> Result<Self, ArithError> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(n: impl Into<Integer>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &Integer {
        self.0.numer()
    }

    pub fn denom(&self) -> &Integer {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self, ArithError> {
        if rhs.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn pow(&self, exp: u32) -> Self {
        Rational(num_traits::pow(self.0.clone(), exp as usize))
    }

    /// Integer power allowing negative exponents; `0^-k` is a division by zero.
    pub fn powi(&self, exp: i64) -> Result<Self, ArithError> {
        let base = if exp < 0 { self.recip()? } else { self.clone() };
        Ok(Rational(num_traits::pow(base.0, exp.unsigned_abs() as usize)))
    }

    pub fn to_f64(&self) -> f64 {
        // Ratio::to_f64 handles numerators and denominators beyond f64 range
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// `(-1)^n` as a rational.
    pub fn sign_power(n: u64) -> Self {
        if n.is_multiple_of(2) {
            Rational::one()
        } else {
            -Rational::one()
        }
    }

    /// `2^n`, with negative `n` meaning `1 / 2^|n|`.
    pub fn pow2(n: i64) -> Self {
        let p = Integer::one() << n.unsigned_abs();
        if n >= 0 {
            Rational::from_integer(p)
        } else {
            Rational(BigRational::new_raw(Integer::one(), p))
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_integer(s: &str) -> Option<Integer> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let n: Integer = digits.parse().ok()?;
    Some(if s.starts_with('-') { -n } else { n })
}

impl FromStr for Rational {
    type Err = ArithError;

    /// Accepts `p` or `p/q` with an optional sign on `p`; `q` must be a
    /// positive digit string.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ArithError::Parse(s.to_string());
        match s.split_once('/') {
            None => parse_integer(s).map(Rational::from_integer).ok_or_else(err),
            Some((p, q)) => {
                let p = parse_integer(p).ok_or_else(err)?;
                if q.starts_with(['+', '-']) {
                    return Err(err());
                }
                let q = parse_integer(q).ok_or_else(err)?;
                Rational::new(p, q)
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! from_int {
    ($($t:ty),*) => {$(
        impl From<$t> for Rational {
            fn from(n: $t) -> Self {
                Rational::from_integer(n)
            }
        }
    )*};
}
from_int!(i32, i64, u32, u64, usize);

impl From<Integer> for Rational {
    fn from(n: Integer) -> Self {
        Rational::from_integer(n)
    }
}

impl From<&Integer> for Rational {
    fn from(n: &Integer) -> Self {
        Rational::from_integer(n.clone())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

// Panics on a zero divisor, like integer division; use `checked_div` when
// the divisor is not known to be nonzero.
binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

/// Total order matches numeric order.
pub fn compare(a: &Rational, b: &Rational) -> Ordering {
    a.cmp(b)
}

/// Convenience constructor for literals in tests and tables; panics on `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p, q).expect("nonzero denominator")
}

/// `true` when `gcd(|p|, q) = 1` and `q > 0`.
pub fn is_canonical(x: &Rational) -> bool {
    x.denom().is_positive() && x.numer().abs().gcd(x.denom()).is_one()
}
