//! Truncated power series with a fixed order.
//!
//! A `Series<C>` of order `N` stores exactly the coefficients of
//! `t^0 .. t^N`. Arithmetic between series of different orders is refused
//! rather than silently truncated.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{factorial, Rational};
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("order {order} needs {} coefficients, got {got}", order + 1)]
    Length { order: usize, got: usize },
}

/// Coefficient ring of a [`Series`]: a commutative ring that is also an
/// algebra over the rationals. Implemented for [`Rational`] and [`Poly`].
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
}

impl Coeff for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
}

impl Coeff for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scale(&self, c: &Rational) -> Self {
        Poly::scale(self, c)
    }
}

#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSeries<C>", into = "RawSeries<C>")]
#[serde(bound(
    serialize = "C: Serialize + Clone",
    deserialize = "C: Deserialize<'de> + Coeff"
))]
pub struct Series<C> {
    order: usize,
    coeffs: Vec<C>,
}

#[derive(Serialize, Deserialize)]
struct RawSeries<C> {
    order: usize,
    coefficients: Vec<C>,
}

impl<C: Coeff> TryFrom<RawSeries<C>> for Series<C> {
    type Error = SeriesError;
    fn try_from(raw: RawSeries<C>) -> Result<Self, Self::Error> {
        Series::from_coeffs(raw.order, raw.coefficients)
    }
}

impl<C> From<Series<C>> for RawSeries<C> {
    fn from(s: Series<C>) -> Self {
        RawSeries { order: s.order, coefficients: s.coeffs }
    }
}

impl<C: Coeff> Series<C> {
    pub fn from_coeffs(order: usize, coeffs: Vec<C>) -> Result<Self, SeriesError> {
        if coeffs.len() != order + 1 {
            return Err(SeriesError::Length { order, got: coeffs.len() });
        }
        Ok(Series { order, coeffs })
    }

    /// Builds `Σ f(n) t^n` for `n = 0..=order`.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> C) -> Self {
        Series { order, coeffs: (0..=order).map(f).collect() }
    }

    /// Builds the exponential generating function `Σ f(n) t^n / n!`.
    pub fn egf(order: usize, mut f: impl FnMut(usize) -> C) -> Self {
        Series::from_fn(order, |n| {
            f(n).scale(&Rational::from(factorial(n as u64)).recip().expect("n! > 0"))
        })
    }

    pub fn constant(order: usize, c: C) -> Self {
        Series::from_fn(order, |n| if n == 0 { c.clone() } else { C::zero() })
    }

    pub fn zero(order: usize) -> Self {
        Series::constant(order, C::zero())
    }

    pub fn one(order: usize) -> Self {
        Series::constant(order, C::one())
    }

    /// `e^{l t}` truncated at `order`: coefficient `n` is `l^n / n!`.
    pub fn exp_linear(l: &C, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = C::one();
        coeffs.push(term.clone());
        for n in 1..=order {
            term = term.mul(l).scale(&Rational::new(1, n as i64).expect("n > 0"));
            coeffs.push(term.clone());
        }
        Series { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    fn check_order(&self, rhs: &Self) -> Result<(), SeriesError> {
        if self.order != rhs.order {
            return Err(SeriesError::OrderMismatch(self.order, rhs.order));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, SeriesError> {
        self.check_order(rhs)?;
        Ok(Series::from_fn(self.order, |n| self.coeffs[n].add(&rhs.coeffs[n])))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, SeriesError> {
        self.check_order(rhs)?;
        Ok(Series::from_fn(self.order, |n| self.coeffs[n].sub(&rhs.coeffs[n])))
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, rhs: &Self) -> Result<Self, SeriesError> {
        self.check_order(rhs)?;
        Ok(Series::from_fn(self.order, |n| {
            let mut acc = C::zero();
            for i in 0..=n {
                let (a, b) = (&self.coeffs[i], &rhs.coeffs[n - i]);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc = acc.add(&a.mul(b));
            }
            acc
        }))
    }

    /// Multiplies every coefficient by a ring element.
    pub fn mul_coeff(&self, c: &C) -> Self {
        Series::from_fn(self.order, |n| self.coeffs[n].mul(c))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Series::from_fn(self.order, |n| self.coeffs[n].scale(c))
    }

    /// First index `n <= up_to` where the coefficients differ.
    pub fn first_difference(&self, rhs: &Self, up_to: usize) -> Result<Option<usize>, SeriesError> {
        self.check_order(rhs)?;
        Ok((0..=up_to.min(self.order)).find(|&n| self.coeffs[n] != rhs.coeffs[n]))
    }
}

impl<C: Coeff> fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series(order {})[", self.order)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}
