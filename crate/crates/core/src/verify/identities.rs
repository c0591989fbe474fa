//! Exact polynomial identities for the `u' = u(u-1)` case.

use crate::arith::{binomial, Rational};
use crate::derivative::RiccatiParams;
use crate::poly::Poly;

use super::{Params, Verdict, Verifier, VerifyError};

fn require_positive(n: usize) -> Result<(), VerifyError> {
    if n == 0 {
        return Err(VerifyError::Precondition("n must be at least 1".into()));
    }
    Ok(())
}

fn c(n: usize, k: usize) -> Rational {
    Rational::from(binomial(n as u64, k as i64))
}

impl Verifier<'_> {
    /// `P_{n+1}(u;0,1) = (u-1) Σ_{k=0}^{n-1} C(n,k) P_{k+1}(u;0,1)`.
    pub fn check_lemma1(&self, n: usize) -> Result<Verdict, VerifyError> {
        require_positive(n)?;
        let pr = RiccatiParams::roots(Rational::zero(), Rational::one()).expect("0 != 1");
        let t = self.tables();
        let lhs = t.build_p(n + 1, &pr)?;
        let mut sum = Poly::zero();
        for k in 0..n {
            sum = sum + t.build_p(k + 1, &pr)?.scale(&c(n, k));
        }
        let rhs = &Poly::from_ints(&[-1, 1]) * &sum;
        Ok(Verdict::from_pairs("lemma1", Params::new().with("n", n), [(n, lhs, rhs)]))
    }

    /// `E_n = Σ_{k=1}^{n-1} C(n,k) E_k (x-1)^{n-1-k} + E_1 (x-1)^{n-1}` and
    /// `A_n = Σ_{k=0}^{n-1} C(n,k) A_k (x-1)^{n-1-k}`. The witness index is
    /// 0 for the `E` form and 1 for the `A` form.
    pub fn check_classical(&self, n: usize) -> Result<Verdict, VerifyError> {
        require_positive(n)?;
        let t = self.tables();
        let xm1 = Poly::from_ints(&[-1, 1]);
        let e_lhs = t.build_e(n)?;
        let mut e_rhs = &t.build_e(1)? * &xm1.pow(n as u32 - 1);
        for k in 1..n {
            e_rhs = e_rhs + (&t.build_e(k)? * &xm1.pow((n - 1 - k) as u32)).scale(&c(n, k));
        }
        let a_lhs = t.build_a(n)?;
        let mut a_rhs = Poly::zero();
        for k in 0..n {
            a_rhs = a_rhs + (&t.build_a(k)? * &xm1.pow((n - 1 - k) as u32)).scale(&c(n, k));
        }
        let pairs = [(0, e_lhs.display_in("x"), e_rhs.display_in("x")), (1, a_lhs.display_in("x"), a_rhs.display_in("x"))];
        Ok(Verdict::from_pairs("classical", Params::new().with("n", n), pairs))
    }
}
