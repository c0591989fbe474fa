//! Integral representations of Bernoulli numbers and polynomials.

use crate::arith::Rational;
use crate::derivative::RiccatiParams;
use crate::poly::Poly;
use crate::special::{bernoulli, bernoulli_value};

use super::quadrature::{integrate, QuadError};
use super::{Params, Verdict, Verifier, VerifyError};

/// Half-width of the window `[-W, W]` used for the numeric integral.
pub const NUMERIC_WINDOW: f64 = 20.0;
const NUMERIC_ABS_TOL: f64 = 1e-12;
const NUMERIC_MAX_INTERVALS: usize = 4000;

fn roots(a: &Rational, b: &Rational) -> Result<RiccatiParams, VerifyError> {
    RiccatiParams::roots(a.clone(), b.clone()).map_err(|e| VerifyError::Precondition(e.to_string()))
}

fn tanh_params() -> RiccatiParams {
    RiccatiParams::new(-Rational::one(), -Rational::one(), Rational::one()).expect("-1 != 1")
}

impl Verifier<'_> {
    /// `∫_a^b P_n(u;a,b) du = -(b-a)^{n+1} B_n`.
    pub fn check_integral_p(&self, n: usize, a: &Rational, b: &Rational) -> Result<Verdict, VerifyError> {
        let pr = roots(a, b)?;
        let lhs = self.tables().build_p(n, &pr)?.definite_integral(a, b);
        let rhs = -(b - a).pow(n as u32 + 1) * bernoulli(n);
        let params = Params::new().with("n", n).with("a", a).with("b", b);
        Ok(Verdict::from_pairs("integral_p", params, [(n, lhs, rhs)]))
    }

    /// `∫_a^b Q_n(u;a,b) du = 2^n B_n(1/2) (b-a)^{n+1}`.
    pub fn check_integral_q(&self, n: usize, a: &Rational, b: &Rational) -> Result<Verdict, VerifyError> {
        let pr = roots(a, b)?;
        let lhs = self.tables().build_q(n, &pr)?.definite_integral(a, b);
        let half = Rational::new(1, 2).expect("nonzero");
        let rhs = Rational::pow2(n as i64) * bernoulli_value(n, &half) * (b - a).pow(n as u32 + 1);
        let params = Params::new().with("n", n).with("a", a).with("b", b);
        Ok(Verdict::from_pairs("integral_q", params, [(n, lhs, rhs)]))
    }

    /// `∫_a^b S_n(u;a,b,d) du = 2^n (b-a)^{n+1} B_n(1/2 + d/(b-a))`.
    pub fn check_integral_s(&self, n: usize, a: &Rational, b: &Rational, d: &Rational) -> Result<Verdict, VerifyError> {
        if n == 0 {
            return Err(VerifyError::Precondition("n must be at least 1".into()));
        }
        let sp = roots(a, b)?.with_shift(d.clone());
        let lhs = self.tables().build_s(n, &sp)?.definite_integral(a, b);
        let width = b - a;
        let arg = Rational::new(1, 2).expect("nonzero") + d / &width;
        let rhs = Rational::pow2(n as i64) * width.pow(n as u32 + 1) * bernoulli_value(n, &arg);
        let params = Params::new().with("n", n).with("a", a).with("b", b).with("d", d);
        Ok(Verdict::from_pairs("integral_s", params, [(n, lhs, rhs)]))
    }

    /// `(-1)^{n-1} ∫_{-1}^{1} P_n(u;-1,1) du = (-1)^n 2^{n+1} B_n`.
    pub fn check_integral_i3(&self, n: usize) -> Result<Verdict, VerifyError> {
        let one = Rational::one();
        let integral = self.tables().build_p(n, &tanh_params())?.definite_integral(&-&one, &one);
        let lhs = Rational::sign_power(n as u64 + 1) * integral;
        let rhs = Rational::sign_power(n as u64) * Rational::pow2(n as i64 + 1) * bernoulli(n);
        Ok(Verdict::from_pairs("integral_i3", Params::new().with("n", n), [(n, lhs, rhs)]))
    }

    /// The squared `(m-1)`-th derivative of `sech^2 x` is `P_{m+1}(tanh x;-1,1)^2`,
    /// and `u = tanh x` turns `dx` into `du/(1-u^2)`. With
    /// `R_m = P_{m+1}^2 / (1-u^2)` (an exact polynomial division) this checks
    /// `B_{2m} = (-1)^{m-1} 2^{-(2m+1)} ∫_{-1}^{1} R_m du`.
    pub fn grosset_veselov_exact(&self, m: usize) -> Result<Verdict, VerifyError> {
        if m == 0 {
            return Err(VerifyError::Precondition("m must be at least 1".into()));
        }
        let params = Params::new().with("m", m);
        let p = self.tables().build_p(m + 1, &tanh_params())?;
        let square = &p * &p;
        let one_minus_u2 = Poly::from_ints(&[1, 0, -1]);
        let Some(reduced) = square.exact_div(&one_minus_u2)? else {
            let (_, rem) = square.div_rem(&one_minus_u2)?;
            return Ok(Verdict::fail("grosset_veselov_exact", params, 0, format!("remainder {rem}"), "0"));
        };
        let one = Rational::one();
        let integral = reduced.definite_integral(&-&one, &one);
        let lhs = Rational::sign_power(m as u64 - 1) * Rational::pow2(-(2 * m as i64 + 1)) * integral;
        let rhs = bernoulli(2 * m);
        Ok(Verdict::from_pairs("grosset_veselov_exact", params, [(1, lhs, rhs)]))
    }

    /// Floating-point cross-check of the same formula before substitution:
    /// `∫_{-W}^{W} P_{m+1}(tanh x;-1,1)^2 dx ≈ (-1)^{m-1} 2^{2m+1} B_{2m}`.
    pub fn grosset_veselov_numeric(&self, m: usize, tol: f64) -> Result<Verdict, VerifyError> {
        if !(1..=3).contains(&m) {
            return Err(VerifyError::Precondition(format!("numeric check supports 1 <= m <= 3, got {m}")));
        }
        if tol.is_nan() || tol <= 0.0 {
            return Err(VerifyError::Precondition("tolerance must be positive".into()));
        }
        let p = self.tables().build_p(m + 1, &tanh_params())?;
        let target = (Rational::sign_power(m as u64 - 1) * Rational::pow2(2 * m as i64 + 1) * bernoulli(2 * m)).to_f64();
        let params = Params::new().with("m", m).with("tol", tol);
        let integrand = |x: f64| {
            let y = p.eval_f64(x.tanh());
            y * y
        };
        match integrate(integrand, -NUMERIC_WINDOW, NUMERIC_WINDOW, NUMERIC_ABS_TOL, NUMERIC_MAX_INTERVALS) {
            Ok(value) if (value - target).abs() < tol => Ok(Verdict::pass("grosset_veselov_numeric", params)),
            Ok(value) => Ok(Verdict::fail("grosset_veselov_numeric", params, m, format!("{value:.15e}"), format!("{target:.15e}"))),
            Err(QuadError::NoConvergence { .. }) => Ok(Verdict::inconclusive("grosset_veselov_numeric", params)),
        }
    }
}
