//! Dense univariate polynomials over [`Rational`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::arith::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    ZeroDivisor,
}

/// Coefficients lowest degree first. The zero polynomial has no
/// coefficients; otherwise the last coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The identity polynomial `u`.
    pub fn var() -> Self {
        Poly::new(vec![Rational::zero(), Rational::one()])
    }

    /// `u - root`.
    pub fn linear_factor(root: &Rational) -> Self {
        Poly::new(vec![-root, Rational::one()])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Rational::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `u^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, mut exp: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    /// `p(c * u)`.
    pub fn scale_arg(&self, c: &Rational) -> Poly {
        let mut power = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for coef in &self.coeffs {
            out.push(coef * &power);
            power *= c;
        }
        Poly::new(out)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from(i))
                .collect(),
        )
    }

    /// The antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Poly {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(Rational::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push(c / Rational::from(i + 1));
        }
        Poly::new(out)
    }

    /// Exact `∫_a^b p(u) du`; swapping the limits negates the result.
    pub fn definite_integral(&self, a: &Rational, b: &Rational) -> Rational {
        let anti = self.antiderivative();
        anti.eval(b) - anti.eval(a)
    }

    /// Euclidean division: `(quotient, remainder)` with `deg r < deg q`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly), PolyError> {
        let lead = divisor.leading().ok_or(PolyError::ZeroDivisor)?;
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let lead_inv = lead.recip().expect("leading coefficient is nonzero");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let t = &c * d;
                rem[i + j] -= &t;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// The quotient when `divisor` divides `self` exactly, `None` when a
    /// nonzero remainder is left.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Option<Poly>, PolyError> {
        let (q, r) = self.div_rem(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(Rational::is_integer)
    }

    /// Renders in the given variable, highest degree first.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let show_coef = i == 0 || !mag.is_one();
            if show_coef {
                if mag.is_integer() || i == 0 {
                    out.push_str(&mag.to_string());
                } else {
                    out.push_str(&format!("({mag})"));
                }
            }
            match i {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{i}")),
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("u"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]", self)
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Vec::<Rational>::deserialize(deserializer).map(Poly::new)
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

fn add_coeffs(a: &[Rational], b: &[Rational], negate_b: bool) -> Poly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
        out.push(match b.get(i) {
            Some(y) if negate_b => x - y,
            Some(y) => x + y,
            None => x,
        });
    }
    Poly::new(out)
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        add_coeffs(&self.coeffs, &rhs.coeffs, false)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        add_coeffs(&self.coeffs, &rhs.coeffs, true)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::new(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Self {
        iter.fold(Poly::zero(), |acc, p| acc + p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn ring_operations() {
        let u = Poly::var();
        assert_eq!(&u * &(&u - &Poly::one()), p(&[0, -1, 1]));
        assert_eq!(&p(&[1, 2, 3]) + &Poly::zero(), p(&[1, 2, 3]));
        assert_eq!(p(&[1, 1]) * p(&[-1, 1]), p(&[-1, 0, 1]));
        assert_eq!(p(&[1, 1]) - p(&[1, 1]), Poly::zero());
        assert_eq!(p(&[1, 1]).pow(3), p(&[1, 3, 3, 1]));
        assert_eq!(p(&[2, 4]).scale(&rat(1, 2)), p(&[1, 2]));
        assert_eq!(p(&[2, 4]).scale(&Rational::zero()), Poly::zero());
    }

    #[test]
    fn canonical_form_trims_trailing_zeros() {
        let q = p(&[1, 2, 0, 0]);
        assert_eq!(q.degree(), Some(1));
        assert_eq!(q.coeffs().len(), 2);
        assert_eq!(p(&[0, 0]).degree(), None);
        assert_eq!(p(&[1, 0, 1]) - p(&[0, 0, 1]), Poly::one());
    }

    #[test]
    fn evaluation() {
        assert_eq!(p(&[0, -1, 1]).eval(&rat(1, 3)), rat(-2, 9));
        assert_eq!(p(&[7, 3, 5]).eval(&Rational::zero()), Rational::from(7));
        assert_eq!(p(&[-1, 2]).eval(&rat(1, 2)), Rational::zero());
        assert_eq!(p(&[0, -1, 1]).scale_arg(&Rational::from(2)), p(&[0, -2, 4]));
    }

    #[test]
    fn definite_integrals() {
        let zero = Rational::zero();
        let one = Rational::one();
        assert_eq!(Poly::var().definite_integral(&zero, &one), rat(1, 2));
        assert_eq!(p(&[0, -1, 1]).definite_integral(&zero, &one), rat(-1, 6));
        assert_eq!(p(&[1, 0, -1]).definite_integral(&-&one, &one), rat(4, 3));
        assert_eq!(p(&[1, 2, 3]).derivative(), p(&[2, 6]));
        assert_eq!(p(&[2, 6]).antiderivative(), p(&[0, 2, 3]));
    }

    #[test]
    fn exact_division() {
        assert_eq!(p(&[-1, 0, 1]).exact_div(&p(&[-1, 1])).unwrap(), Some(p(&[1, 1])));
        assert_eq!(p(&[-1, 0, 1]).exact_div(&Poly::var()).unwrap(), None);
        let (_, r) = p(&[-1, 0, 1]).div_rem(&Poly::var()).unwrap();
        assert_eq!(r, p(&[-1]));
        assert_eq!(p(&[1, 1]).exact_div(&Poly::zero()), Err(PolyError::ZeroDivisor));
        // P_2(u; -1, 1) = u^2 - 1; its square over 1 - u^2
        let p2 = p(&[-1, 0, 1]);
        let q = (&p2 * &p2).exact_div(&p(&[1, 0, -1])).unwrap().unwrap();
        assert_eq!(q, p(&[1, 0, -1]));
        // lower degree dividend
        assert_eq!(p(&[3]).div_rem(&p(&[0, 1])).unwrap(), (Poly::zero(), p(&[3])));
    }

    #[test]
    fn display_and_json() {
        assert_eq!(p(&[1, -3, 0, 2]).to_string(), "2u^3 - 3u + 1");
        assert_eq!(Poly::new(vec![rat(1, 6), -Rational::one(), Rational::one()]).display_in("x"), "x^2 - x + 1/6");
        assert_eq!(Poly::zero().to_string(), "0");
        let json = serde_json::to_string(&p(&[0, -1, 1])).unwrap();
        assert_eq!(json, r#"["0","-1","1"]"#);
        let back: Poly = serde_json::from_str(r#"["1/2","0","0"]"#).unwrap();
        assert_eq!(back, Poly::constant(rat(1, 2)));
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((-9i64..=9, 1i64..=4), 0..6)
            .prop_map(|v| Poly::new(v.into_iter().map(|(a, b)| rat(a, b)).collect()))
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-9i64..=9, 1i64..=5).prop_map(|(a, b)| rat(a, b))
    }

    proptest! {
        #[test]
        fn integral_is_orientation_sensitive(q in small_poly(), a in small_rat(), b in small_rat()) {
            prop_assert_eq!(q.definite_integral(&a, &b), -q.definite_integral(&b, &a));
        }

        #[test]
        fn exact_div_inverts_mul(h in small_poly(), d in small_poly()) {
            prop_assume!(!d.is_zero());
            let prod = &h * &d;
            let q = prod.exact_div(&d).unwrap().expect("product is divisible");
            prop_assert_eq!(&q * &d, prod);
            prop_assert_eq!(q, h);
        }

        #[test]
        fn div_rem_reconstructs(a in small_poly(), d in small_poly()) {
            prop_assume!(!d.is_zero());
            let (q, r) = a.div_rem(&d).unwrap();
            prop_assert_eq!(&(&q * &d) + &r, a.clone());
            prop_assert!(r.degree() < d.degree());
            if let Some(h) = a.exact_div(&d).unwrap() {
                prop_assert_eq!(&h * &d, a);
            }
        }

        #[test]
        fn eval_is_a_ring_homomorphism(a in small_poly(), b in small_poly(), x in small_rat()) {
            prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
            prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
        }
    }
}
