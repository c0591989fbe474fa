//! Derivative polynomials of the constant-coefficient Riccati equation
//! `u' = r(u-a)(u-b)` and of its companion `v' = r v (u - (a+b)/2 + d)`,
//! plus the Eulerian and MacMahon polynomials they reduce to.
//!
//! `P_n` is indexed so that `u^{(n)} = r^n P_{n+1}(u)`; the power of `r`
//! stays outside the polynomial, which is why no builder here reads `r`.
//! Likewise `v^{(n)} = v (r/2)^n Q_n(u)` and `v^{(n)} = v (r/2)^n S_n(u)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{binomial, Rational};
use crate::poly::Poly;
use crate::special::{SpecialError, Tables};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("r must be nonzero")]
    ZeroRate,
    #[error("a and b must differ (both {0})")]
    EqualRoots(Rational),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("P_n is defined for n >= 1")]
    ZeroIndex,
    #[error(transparent)]
    Table(#[from] SpecialError),
}

/// `(r, a, b)` of `u' = r(u-a)(u-b)`, with `r != 0` and `a != b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRiccati")]
pub struct RiccatiParams {
    r: Rational,
    a: Rational,
    b: Rational,
}

#[derive(Deserialize)]
struct RawRiccati {
    r: Rational,
    a: Rational,
    b: Rational,
}

impl TryFrom<RawRiccati> for RiccatiParams {
    type Error = ParamError;
    fn try_from(raw: RawRiccati) -> Result<Self, ParamError> {
        RiccatiParams::new(raw.r, raw.a, raw.b)
    }
}

impl RiccatiParams {
    pub fn new(r: Rational, a: Rational, b: Rational) -> Result<Self, ParamError> {
        if r.is_zero() {
            return Err(ParamError::ZeroRate);
        }
        if a == b {
            return Err(ParamError::EqualRoots(a));
        }
        Ok(RiccatiParams { r, a, b })
    }

    /// `r = 1`; only the roots matter for the polynomial families.
    pub fn roots(a: Rational, b: Rational) -> Result<Self, ParamError> {
        RiccatiParams::new(Rational::one(), a, b)
    }

    /// The logistic curve `u = q/(1 + p e^{-sz})` solves
    /// `u' = -(s/q)(u-q)u`, i.e. `r = -s/q`, `a = q`, `b = 0`.
    pub fn logistic(q: &Rational, s: &Rational) -> Result<Self, ParamError> {
        // q = 0 collapses both roots onto 0
        let r = -(s.checked_div(q).map_err(|_| ParamError::EqualRoots(Rational::zero()))?);
        RiccatiParams::new(r, q.clone(), Rational::zero())
    }

    pub fn r(&self) -> &Rational {
        &self.r
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn with_shift(self, d: Rational) -> ShiftedParams {
        ShiftedParams { base: self, d }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ShiftedParams {
    pub base: RiccatiParams,
    pub d: Rational,
}

impl ShiftedParams {
    pub fn unshifted(base: RiccatiParams) -> Self {
        ShiftedParams { base, d: Rational::zero() }
    }
}

/// Polynomial families exposed on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    P,
    Q,
    S,
    E,
    A,
    M,
}

impl Family {
    pub fn needs_roots(self) -> bool {
        matches!(self, Family::P | Family::Q | Family::S)
    }
}

impl std::str::FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "P" => Family::P,
            "Q" => Family::Q,
            "S" => Family::S,
            "E" => Family::E,
            "A" => Family::A,
            "M" => Family::M,
            _ => return Err(format!("unknown polynomial family {s:?}")),
        })
    }
}

/// `Σ_k c_k x^{m-k} y^k` with `m = coeffs.len() - 1`, by Horner's rule in `x`.
fn homogeneous_sum(x: &Poly, y: &Poly, coeffs: &[Rational]) -> Poly {
    let mut acc = Poly::zero();
    let mut y_pow = Poly::one();
    for (k, c) in coeffs.iter().enumerate() {
        if k > 0 {
            y_pow = &y_pow * y;
        }
        acc = &acc * x + y_pow.scale(c);
    }
    acc
}

impl Tables {
    /// `P_1 = u - a`; for `n >= 2`,
    /// `P_n = Σ_{k=0}^{n-2} ⟨n-1,k⟩ (u-a)^{k+1} (u-b)^{n-1-k}`.
    pub fn build_p(&self, n: usize, params: &RiccatiParams) -> Result<Poly, BuildError> {
        match n {
            0 => Err(BuildError::ZeroIndex),
            1 => Ok(Poly::linear_factor(params.a())),
            _ => {
                // (u-a)(u-b) Σ_k ⟨n-1,k⟩ (u-a)^k (u-b)^{n-2-k}
                let coeffs: Vec<Rational> = self.eulerian_row(n - 1)?.into_iter().rev().map(Rational::from).collect();
                let ua = Poly::linear_factor(params.a());
                let ub = Poly::linear_factor(params.b());
                Ok(&(&ua * &ub) * &homogeneous_sum(&ua, &ub, &coeffs))
            }
        }
    }

    /// `Q_n = Σ_{k=1}^{n+1} M_{n+1,k} (u-a)^{n+1-k} (u-b)^{k-1}`.
    pub fn build_q(&self, n: usize, params: &RiccatiParams) -> Result<Poly, BuildError> {
        let coeffs: Vec<Rational> = self.macmahon_row(n + 1)?.into_iter().map(Rational::from).collect();
        let ua = Poly::linear_factor(params.a());
        let ub = Poly::linear_factor(params.b());
        Ok(homogeneous_sum(&ua, &ub, &coeffs))
    }

    /// `S_n = Σ_{k=0}^{n} C(n,k) (2d)^k Q_{n-k}`.
    pub fn build_s(&self, n: usize, params: &ShiftedParams) -> Result<Poly, BuildError> {
        let two_d = Rational::from(2) * &params.d;
        let mut acc = Poly::zero();
        for k in 0..=n {
            let c = Rational::from(binomial(n as u64, k as i64)) * two_d.pow(k as u32);
            if c.is_zero() {
                continue;
            }
            acc = acc + self.build_q(n - k, &params.base)?.scale(&c);
        }
        Ok(acc)
    }

    /// `A_0 = 1`, `A_n(x) = Σ_{k=0}^{n-1} ⟨n,k⟩ x^k`.
    pub fn build_a(&self, n: usize) -> Result<Poly, BuildError> {
        if n == 0 {
            return Ok(Poly::one());
        }
        Ok(Poly::new(self.eulerian_row(n)?.into_iter().map(Rational::from).collect()))
    }

    /// `E_0 = 1`, `E_n(x) = x A_n(x)`.
    pub fn build_e(&self, n: usize) -> Result<Poly, BuildError> {
        if n == 0 {
            return Ok(Poly::one());
        }
        Ok(&self.build_a(n)? * &Poly::var())
    }

    /// `M_n(x) = Σ_{k=1}^{n+1} M_{n+1,k} x^{k-1}`.
    pub fn build_m(&self, n: usize) -> Result<Poly, BuildError> {
        Ok(Poly::new(self.macmahon_row(n + 1)?.into_iter().map(Rational::from).collect()))
    }
}

pub fn build_p(n: usize, params: &RiccatiParams) -> Result<Poly, BuildError> {
    Tables::standard().build_p(n, params)
}

pub fn build_q(n: usize, params: &RiccatiParams) -> Poly {
    Tables::standard().build_q(n, params).expect("row n+1 >= 1")
}

pub fn build_s(n: usize, params: &ShiftedParams) -> Poly {
    Tables::standard().build_s(n, params).expect("row n+1 >= 1")
}

pub fn build_e(n: usize) -> Poly {
    Tables::standard().build_e(n).expect("n >= 1 checked")
}

pub fn build_a(n: usize) -> Poly {
    Tables::standard().build_a(n).expect("n >= 1 checked")
}

pub fn build_m(n: usize) -> Poly {
    Tables::standard().build_m(n).expect("row n+1 >= 1")
}

/// Parameters echoed in a [`PolyRecord`]; absent entries were not used.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordParams {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub a: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub b: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub d: Option<Rational>,
}

/// JSON form of one built polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyRecord {
    pub family: Family,
    pub n: usize,
    pub params: RecordParams,
    pub coefficients: Poly,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn zero_one() -> RiccatiParams {
        RiccatiParams::roots(Rational::zero(), Rational::one()).unwrap()
    }

    #[test]
    fn params_validation() {
        assert_eq!(RiccatiParams::new(Rational::zero(), rat(0, 1), rat(1, 1)), Err(ParamError::ZeroRate));
        assert!(matches!(RiccatiParams::new(Rational::one(), rat(1, 2), rat(1, 2)), Err(ParamError::EqualRoots(_))));
        let lg = RiccatiParams::logistic(&Rational::from(2), &Rational::one()).unwrap();
        assert_eq!((lg.r(), lg.a(), lg.b()), (&rat(-1, 2), &Rational::from(2), &Rational::zero()));
        let json = r#"{"r":"1","a":"1/2","b":"1/2"}"#;
        assert!(serde_json::from_str::<RiccatiParams>(json).is_err());
    }

    #[test]
    fn p_family() {
        let pr = zero_one();
        assert_eq!(build_p(1, &pr).unwrap(), p(&[0, 1]));
        assert_eq!(build_p(2, &pr).unwrap(), p(&[0, -1, 1]));
        assert_eq!(build_p(3, &pr).unwrap(), p(&[0, 1, -3, 2]));
        assert_eq!(build_p(0, &pr), Err(BuildError::ZeroIndex));
        // P_2 = (u-a)(u-b) for any roots
        let gen = RiccatiParams::roots(rat(-1, 3), rat(5, 2)).unwrap();
        let expect = &Poly::linear_factor(gen.a()) * &Poly::linear_factor(gen.b());
        assert_eq!(build_p(2, &gen).unwrap(), expect);
    }

    #[test]
    fn q_family() {
        let pr = zero_one();
        assert_eq!(build_q(0, &pr), Poly::one());
        assert_eq!(build_q(1, &pr), p(&[-1, 2]));
        assert_eq!(build_q(2, &pr), p(&[1, -8, 8]));
    }

    #[test]
    fn s_family() {
        let pr = zero_one();
        for n in 0..6 {
            assert_eq!(build_s(n, &ShiftedParams::unshifted(pr.clone())), build_q(n, &pr));
        }
        assert_eq!(build_s(0, &pr.clone().with_shift(rat(7, 3))), Poly::one());
        assert_eq!(build_s(1, &pr.with_shift(rat(-1, 2))), p(&[-2, 2]));
    }

    #[test]
    fn eulerian_and_macmahon_polynomials() {
        assert_eq!(build_e(3), p(&[0, 1, 4, 1]));
        assert_eq!(build_e(0), Poly::one());
        assert_eq!(build_a(0), Poly::one());
        assert_eq!(build_a(1), Poly::one());
        assert_eq!(build_a(4), p(&[1, 11, 11, 1]));
        for n in 1..10 {
            assert_eq!(build_e(n), &build_a(n) * &Poly::var());
        }
        assert_eq!(build_m(0), Poly::one());
        assert_eq!(build_m(2), p(&[1, 6, 1]));
        assert_eq!(build_m(3), p(&[1, 23, 23, 1]));
    }

    #[test]
    fn degrees_and_roots() {
        let gen = RiccatiParams::new(rat(3, 2), rat(-2, 3), rat(7, 4)).unwrap();
        for n in 1..=20 {
            let pn = build_p(n, &gen).unwrap();
            assert_eq!(pn.degree(), Some(n));
            assert!(pn.eval(gen.a()).is_zero());
            if n >= 2 {
                assert!(pn.eval(gen.b()).is_zero());
            }
            assert_eq!(build_q(n, &gen).degree(), Some(n));
            assert_eq!(build_s(n, &gen.clone().with_shift(rat(1, 5))).degree(), Some(n));
        }
    }

    #[test]
    fn poly_record_json() {
        let rec = PolyRecord {
            family: Family::P,
            n: 2,
            params: RecordParams { a: Some(Rational::zero()), b: Some(Rational::one()), ..Default::default() },
            coefficients: p(&[0, -1, 1]),
        };
        let json = serde_json::to_string(&rec).unwrap();
        assert_eq!(json, r#"{"family":"P","n":2,"params":{"a":"0","b":"1"},"coefficients":["0","-1","1"]}"#);
        assert_eq!(serde_json::from_str::<PolyRecord>(&json).unwrap(), rec);
    }
}
