//! Exponential generating functions, checked by cross-multiplication.
//!
//! `A = B / C` is verified as `A·C = B` through order `N-1`, so no series
//! is ever inverted. Over `Poly` coefficients the constant term of `C`
//! (e.g. `1 - x`) is not a unit, which rules out series division anyway.

use crate::arith::Rational;
use crate::derivative::RiccatiParams;
use crate::poly::Poly;
use crate::series::{Coeff, Series};

use super::{Params, Verdict, Verifier, VerifyError};

fn require_order(n: usize) -> Result<(), VerifyError> {
    if n == 0 {
        return Err(VerifyError::Precondition("series order N must be at least 1".into()));
    }
    Ok(())
}

fn require_unit_interval(u0: &Rational) -> Result<(), VerifyError> {
    if u0 <= &Rational::zero() || u0 >= &Rational::one() {
        return Err(VerifyError::Precondition(format!("u0 = {u0} must lie strictly between 0 and 1")));
    }
    Ok(())
}

/// Compares `lhs · factor` with `rhs` at orders `0..n`.
fn cross_check<C: Coeff>(
    identity: &str,
    params: Params,
    lhs: &Series<C>,
    factor: &Series<C>,
    rhs: &Series<C>,
    display: impl Fn(&C) -> String,
) -> Result<Verdict, VerifyError> {
    let product = lhs.mul(factor)?;
    let n = lhs.order();
    let pairs = (0..n).map(|i| (i, display(product.coeff(i)), display(rhs.coeff(i))));
    Ok(Verdict::from_pairs(identity, params, pairs))
}

fn in_x(p: &Poly) -> String {
    p.display_in("x")
}

fn one_minus_x() -> Poly {
    Poly::from_ints(&[1, -1])
}

impl Verifier<'_> {
    /// `(Σ E_n y^n/n!) (1 - x e^{(1-x)y}) = 1 - x`.
    pub fn check_egf_eulerian(&self, n: usize) -> Result<Verdict, VerifyError> {
        require_order(n)?;
        let t = self.tables();
        let lhs = Series::egf(n, |k| t.build_e(k).expect("rows exist"));
        let exp = Series::exp_linear(&one_minus_x(), n);
        let factor = Series::one(n).sub(&exp.mul_coeff(&Poly::var()))?;
        let rhs = Series::constant(n, one_minus_x());
        cross_check("egf_eulerian", Params::new().with("N", n), &lhs, &factor, &rhs, in_x)
    }

    /// `(Σ A_n y^n/n!) (x - e^{(x-1)y}) = x - 1`.
    pub fn check_egf_a(&self, n: usize) -> Result<Verdict, VerifyError> {
        require_order(n)?;
        let t = self.tables();
        let x_minus_one = Poly::from_ints(&[-1, 1]);
        let lhs = Series::egf(n, |k| t.build_a(k).expect("rows exist"));
        let factor = Series::constant(n, Poly::var()).sub(&Series::exp_linear(&x_minus_one, n))?;
        let rhs = Series::constant(n, x_minus_one);
        cross_check("egf_a", Params::new().with("N", n), &lhs, &factor, &rhs, in_x)
    }

    /// `(Σ M_n y^n/n!) (1 - x e^{2(1-x)y}) = (1-x) e^{(1-x)y}`.
    pub fn check_egf_macmahon(&self, n: usize) -> Result<Verdict, VerifyError> {
        require_order(n)?;
        let t = self.tables();
        let lhs = Series::egf(n, |k| t.build_m(k).expect("rows exist"));
        let two_lin = one_minus_x().scale(&Rational::from(2));
        let factor = Series::one(n).sub(&Series::exp_linear(&two_lin, n).mul_coeff(&Poly::var()))?;
        let rhs = Series::exp_linear(&one_minus_x(), n).mul_coeff(&one_minus_x());
        cross_check("egf_macmahon", Params::new().with("N", n), &lhs, &factor, &rhs, in_x)
    }

    /// Halved argument: `(Σ M_n/2^n y^n/n!) (1 - x e^{(1-x)y}) = (1-x) e^{(1-x)y/2}`.
    pub fn check_egf_macmahon_halved(&self, n: usize) -> Result<Verdict, VerifyError> {
        require_order(n)?;
        let t = self.tables();
        let lhs = Series::egf(n, |k| {
            t.build_m(k).expect("rows exist").scale(&Rational::pow2(-(k as i64)))
        });
        let factor = Series::one(n).sub(&Series::exp_linear(&one_minus_x(), n).mul_coeff(&Poly::var()))?;
        let half_lin = one_minus_x().scale(&Rational::new(1, 2).expect("nonzero"));
        let rhs = Series::exp_linear(&half_lin, n).mul_coeff(&one_minus_x());
        cross_check("egf_macmahon_halved", Params::new().with("N", n), &lhs, &factor, &rhs, in_x)
    }

    /// `F(u0,t) = Σ P_{n+1}(u0;0,1) t^n/n!` satisfies
    /// `F · (u0 + (1-u0) e^t) = u0`.
    pub fn check_f_closed_form(&self, u0: &Rational, n: usize) -> Result<Verdict, VerifyError> {
        require_order(n)?;
        require_unit_interval(u0)?;
        let params = RiccatiParams::roots(Rational::zero(), Rational::one()).expect("0 != 1");
        let mut coeffs = Vec::with_capacity(n + 1);
        for k in 0..=n {
            coeffs.push(self.tables().build_p(k + 1, &params)?.eval(u0));
        }
        let lhs = Series::egf(n, |k| coeffs[k].clone());
        let factor = Series::constant(n, u0.clone())
            .add(&Series::exp_linear(&Rational::one(), n).scale(&(Rational::one() - u0)))?;
        let rhs = Series::constant(n, u0.clone());
        let p = Params::new().with("u0", u0).with("N", n);
        cross_check("f_closed_form", p, &lhs, &factor, &rhs, Rational::to_string)
    }

    /// `H(u0,t) = Σ S_n(u0;0,1,d)/2^n t^n/n!` satisfies
    /// `H · (u0 + (1-u0) e^t) = e^{(1/2+d)t}`; `d = 0` is the MacMahon
    /// generating function `G`.
    pub fn check_h_closed_form(&self, u0: &Rational, d: &Rational, n: usize) -> Result<Verdict, VerifyError> {
        require_order(n)?;
        require_unit_interval(u0)?;
        let params = RiccatiParams::roots(Rational::zero(), Rational::one())
            .expect("0 != 1")
            .with_shift(d.clone());
        let mut coeffs = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let s = self.tables().build_s(k, &params)?.eval(u0);
            coeffs.push(s * Rational::pow2(-(k as i64)));
        }
        let lhs = Series::egf(n, |k| coeffs[k].clone());
        let factor = Series::constant(n, u0.clone())
            .add(&Series::exp_linear(&Rational::one(), n).scale(&(Rational::one() - u0)))?;
        let rate = Rational::new(1, 2).expect("nonzero") + d;
        let rhs = Series::exp_linear(&rate, n);
        let p = Params::new().with("u0", u0).with("d", d).with("N", n);
        cross_check("h_closed_form", p, &lhs, &factor, &rhs, Rational::to_string)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{factorial, rat};
    use crate::derivative::build_p;

    #[test]
    fn eulerian_egf() {
        let v = Verifier::standard();
        assert!(v.check_egf_eulerian(1).unwrap().passed());
        assert!(v.check_egf_eulerian(8).unwrap().passed());
        assert!(v.check_egf_eulerian(0).is_err());
    }

    #[test]
    fn eulerian_egf_order_one_by_hand() {
        // E_1 (1-x) - x (1-x) E_0 = 0
        let e1 = crate::derivative::build_e(1);
        let lhs = &e1 * &one_minus_x() - &(&Poly::var() * &one_minus_x());
        assert!(lhs.is_zero());
    }

    #[test]
    fn a_egf_and_coefficient_extraction() {
        let v = Verifier::standard();
        assert!(v.check_egf_a(8).unwrap().passed());
        // Recover A_n order by order from (Σ A_n y^n/n!)(x - e^{(x-1)y}) = x - 1:
        // at order n, A_n/n! (x-1) = -Σ_{k<n} A_k/k! [y^{n-k}](x - e^{(x-1)y}).
        let n_max = 8;
        let xm1 = Poly::from_ints(&[-1, 1]);
        let factor = Series::constant(n_max, Poly::var()).sub(&Series::exp_linear(&xm1, n_max)).unwrap();
        let mut scaled: Vec<Poly> = vec![Poly::one()];
        for n in 1..=n_max {
            let s: Poly = (0..n).map(|k| &scaled[k] * factor.coeff(n - k)).sum();
            let an = (-s).exact_div(&xm1).unwrap().expect("divisible by x - 1");
            scaled.push(an);
        }
        for (n, a) in scaled.iter().enumerate() {
            let an = a.scale(&Rational::from(factorial(n as u64)));
            assert_eq!(an, crate::derivative::build_a(n), "A_{n}");
        }
    }

    #[test]
    fn macmahon_egfs() {
        let v = Verifier::standard();
        assert!(v.check_egf_macmahon(1).unwrap().passed());
        assert!(v.check_egf_macmahon(8).unwrap().passed());
        assert!(v.check_egf_macmahon_halved(8).unwrap().passed());
    }

    #[test]
    fn closed_forms() {
        let v = Verifier::standard();
        let half = rat(1, 2);
        let f = v.check_f_closed_form(&half, 1).unwrap();
        assert!(f.passed());
        assert!(v.check_f_closed_form(&rat(1, 3), 10).unwrap().passed());
        assert!(v.check_h_closed_form(&rat(1, 3), &rat(1, 4), 10).unwrap().passed());
        assert!(v.check_h_closed_form(&rat(1, 3), &Rational::zero(), 10).unwrap().passed());
        assert!(v.check_h_closed_form(&rat(1, 3), &rat(-1, 2), 10).unwrap().passed());
        assert!(v.check_f_closed_form(&Rational::one(), 4).is_err());
        assert!(v.check_h_closed_form(&rat(3, 2), &Rational::zero(), 4).is_err());
    }

    #[test]
    fn h_at_minus_half_is_f_over_u0() {
        let u0 = rat(1, 3);
        let pr = RiccatiParams::roots(Rational::zero(), Rational::one()).unwrap();
        let sp = pr.clone().with_shift(rat(-1, 2));
        for n in 0..=10 {
            let h = crate::derivative::build_s(n, &sp).eval(&u0) * Rational::pow2(-(n as i64));
            let f = build_p(n + 1, &pr).unwrap().eval(&u0) / &u0;
            assert_eq!(h, f, "n = {n}");
        }
    }
}
