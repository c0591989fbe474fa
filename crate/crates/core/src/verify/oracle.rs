//! Power-series solutions of the Riccati pair, used as an independent
//! oracle for the derivative-polynomial formulas.

use crate::arith::{factorial, Rational};
use crate::derivative::ShiftedParams;
use crate::series::Series;

use super::{Params, Verdict, Verifier, VerifyError};

/// Initial data `u(0) = u0`, `v(0) = v0` and the series order to expand to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleInstance {
    pub params: ShiftedParams,
    pub u0: Rational,
    pub v0: Rational,
    pub order: usize,
}

impl OracleInstance {
    pub fn new(params: ShiftedParams, u0: Rational, v0: Rational, order: usize) -> Result<Self, VerifyError> {
        if v0.is_zero() {
            return Err(VerifyError::Instance("v0 must be nonzero".into()));
        }
        if order == 0 {
            return Err(VerifyError::Instance("order must be at least 1".into()));
        }
        Ok(OracleInstance { params, u0, v0, order })
    }

    fn base_params(&self) -> Params {
        let p = &self.params.base;
        Params::new()
            .with("r", p.r())
            .with("a", p.a())
            .with("b", p.b())
            .with("u0", &self.u0)
    }
}

/// Taylor coefficients of `u(z)` at `z = 0` from
/// `(n+1) c_{n+1} = r [z^n] (u-a)(u-b)`.
pub fn riccati_series(inst: &OracleInstance) -> Series<Rational> {
    let p = &inst.params.base;
    let mut c: Vec<Rational> = vec![inst.u0.clone()];
    // coefficients of u - a and u - b, extended as c grows
    let mut ua = vec![&inst.u0 - p.a()];
    let mut ub = vec![&inst.u0 - p.b()];
    for n in 0..inst.order {
        let conv: Rational = (0..=n).map(|i| &ua[i] * &ub[n - i]).sum();
        let next = p.r() * conv / Rational::from(n + 1);
        ua.push(next.clone());
        ub.push(next.clone());
        c.push(next);
    }
    Series::from_coeffs(inst.order, c).expect("order + 1 coefficients")
}

/// Taylor coefficients of `v(z)` from
/// `(n+1) w_{n+1} = r [z^n] v (u - (a+b)/2 + d)`.
pub fn v_series(inst: &OracleInstance) -> Series<Rational> {
    let p = &inst.params.base;
    let u = riccati_series(inst);
    let shift = (p.a() + p.b()) / Rational::from(2) - &inst.params.d;
    let mut s: Vec<Rational> = u.coeffs().to_vec();
    s[0] -= &shift;
    let mut w = vec![inst.v0.clone()];
    for n in 0..inst.order {
        let conv: Rational = (0..=n).map(|i| &w[i] * &s[n - i]).sum();
        w.push(p.r() * conv / Rational::from(n + 1));
    }
    Series::from_coeffs(inst.order, w).expect("order + 1 coefficients")
}

fn check_bound(n_max: usize, order: usize) -> Result<(), VerifyError> {
    if n_max > order {
        return Err(VerifyError::OrderTooSmall { n: n_max, order });
    }
    Ok(())
}

impl Verifier<'_> {
    /// `n! c_n = r^n P_{n+1}(u0)` for `1 <= n <= n_max`.
    pub fn check_theorem1(&self, inst: &OracleInstance, n_max: usize) -> Result<Verdict, VerifyError> {
        check_bound(n_max, inst.order)?;
        let u = riccati_series(inst);
        let p = &inst.params.base;
        let mut pairs = Vec::with_capacity(n_max);
        for n in 1..=n_max {
            let lhs = Rational::from(factorial(n as u64)) * u.coeff(n);
            let rhs = p.r().pow(n as u32) * self.tables().build_p(n + 1, p)?.eval(&inst.u0);
            pairs.push((n, lhs, rhs));
        }
        let params = inst.base_params().with("n_max", n_max);
        Ok(Verdict::from_pairs("theorem1", params, pairs))
    }

    /// `n! w_n = v0 (r/2)^n Q_n(u0)` with the shift forced to `d = 0`.
    pub fn check_theorem2(&self, inst: &OracleInstance, n_max: usize) -> Result<Verdict, VerifyError> {
        check_bound(n_max, inst.order)?;
        let unshifted = OracleInstance {
            params: ShiftedParams::unshifted(inst.params.base.clone()),
            ..inst.clone()
        };
        let w = v_series(&unshifted);
        let p = &inst.params.base;
        let half_r = p.r() / Rational::from(2);
        let mut pairs = Vec::with_capacity(n_max);
        for n in 1..=n_max {
            let lhs = Rational::from(factorial(n as u64)) * w.coeff(n);
            let rhs = &inst.v0 * half_r.pow(n as u32) * self.tables().build_q(n, p)?.eval(&inst.u0);
            pairs.push((n, lhs, rhs));
        }
        let params = inst.base_params().with("v0", &inst.v0).with("n_max", n_max);
        Ok(Verdict::from_pairs("theorem2", params, pairs))
    }

    /// `n! w_n = v0 (r/2)^n S_n(u0)` for the instance's shift `d`.
    pub fn check_theorem3(&self, inst: &OracleInstance, n_max: usize) -> Result<Verdict, VerifyError> {
        check_bound(n_max, inst.order)?;
        let w = v_series(inst);
        let half_r = inst.params.base.r() / Rational::from(2);
        let mut pairs = Vec::with_capacity(n_max);
        for n in 1..=n_max {
            let lhs = Rational::from(factorial(n as u64)) * w.coeff(n);
            let rhs = &inst.v0 * half_r.pow(n as u32) * self.tables().build_s(n, &inst.params)?.eval(&inst.u0);
            pairs.push((n, lhs, rhs));
        }
        let params = inst
            .base_params()
            .with("d", &inst.params.d)
            .with("v0", &inst.v0)
            .with("n_max", n_max);
        Ok(Verdict::from_pairs("theorem3", params, pairs))
    }
}
