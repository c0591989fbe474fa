//! Structural relations between the polynomial families.

use crate::arith::Rational;
use crate::derivative::RiccatiParams;
use crate::poly::Poly;
use crate::special::eulerian_explicit;

use super::{Params, Verdict, Verifier, VerifyError};

impl Verifier<'_> {
    /// `E_n((u-a)/(u-b)) = P_{n+1}(u) / (u-b)^{n+1}` at each sample `u != b`.
    pub fn check_substitution_e(&self, n: usize, params: &RiccatiParams, samples: &[Rational]) -> Result<Verdict, VerifyError> {
        let e = self.tables().build_e(n)?;
        let p = self.tables().build_p(n + 1, params)?;
        self.substitution("substitution_e", n, params, samples, &e, &p, n as u32 + 1)
    }

    /// `M_n((u-a)/(u-b)) = Q_n(u) / (u-b)^n` at each sample `u != b`.
    pub fn check_substitution_m(&self, n: usize, params: &RiccatiParams, samples: &[Rational]) -> Result<Verdict, VerifyError> {
        let m = self.tables().build_m(n)?;
        let q = self.tables().build_q(n, params)?;
        self.substitution("substitution_m", n, params, samples, &m, &q, n as u32)
    }

    #[allow(clippy::too_many_arguments)]
    fn substitution(
        &self,
        identity: &str,
        n: usize,
        params: &RiccatiParams,
        samples: &[Rational],
        in_x: &Poly,
        in_u: &Poly,
        power: u32,
    ) -> Result<Verdict, VerifyError> {
        let (a, b) = (params.a(), params.b());
        let mut pairs = Vec::with_capacity(samples.len());
        for (i, u) in samples.iter().enumerate() {
            let denom = u - b;
            if denom.is_zero() {
                return Err(VerifyError::Precondition(format!("sample u = {u} equals b")));
            }
            let x = (u - a) / &denom;
            pairs.push((i, in_x.eval(&x), in_u.eval(u) / denom.pow(power)));
        }
        let p = Params::new().with("n", n).with("a", a).with("b", b);
        Ok(Verdict::from_pairs(identity, p, pairs))
    }

    /// `Q_n(λu; λa, λb) = λ^n Q_n(u; a, b)` at each sample.
    pub fn check_homogeneity_q(&self, n: usize, params: &RiccatiParams, lambda: &Rational, samples: &[Rational]) -> Result<Verdict, VerifyError> {
        if lambda.is_zero() {
            return Err(VerifyError::Precondition("lambda must be nonzero".into()));
        }
        let scaled = RiccatiParams::roots(lambda * params.a(), lambda * params.b())
            .map_err(|e| VerifyError::Precondition(e.to_string()))?;
        let q = self.tables().build_q(n, params)?;
        let q_scaled = self.tables().build_q(n, &scaled)?;
        let ln = lambda.pow(n as u32);
        let pairs = samples
            .iter()
            .enumerate()
            .map(|(i, u)| (i, q_scaled.eval(&(lambda * u)), &ln * q.eval(u)));
        let p = Params::new()
            .with("n", n)
            .with("a", params.a())
            .with("b", params.b())
            .with("lambda", lambda);
        Ok(Verdict::from_pairs("homogeneity_q", p, pairs.collect::<Vec<_>>()))
    }

    /// `S_n(u;0,1,-1/2) = 2^n P_{n+1}(u;0,1)/u`, with integer coefficients
    /// after dividing by `2^n`. Witness index 0 flags a failed division by
    /// `u`, 1 a mismatch, 2 a non-integer coefficient.
    pub fn check_integrality(&self, n: usize) -> Result<Verdict, VerifyError> {
        let pr = RiccatiParams::roots(Rational::zero(), Rational::one()).expect("0 != 1");
        let half = Rational::new(-1, 2).expect("nonzero");
        let s = self.tables().build_s(n, &pr.clone().with_shift(half))?;
        let p = self.tables().build_p(n + 1, &pr)?;
        let params = Params::new().with("n", n);
        let identity = "integrality";
        let Some(quotient) = p.exact_div(&Poly::var())? else {
            return Ok(Verdict::fail(identity, params, 0, p, "divisible by u"));
        };
        let scaled = s.scale(&Rational::pow2(-(n as i64)));
        if scaled != quotient {
            return Ok(Verdict::fail(identity, params, 1, scaled, quotient));
        }
        if !scaled.has_integer_coeffs() {
            return Ok(Verdict::fail(identity, params, 2, scaled, "integer coefficients"));
        }
        Ok(Verdict::pass(identity, params))
    }

    /// Recurrence and explicit alternating sum agree on row `n`.
    pub fn check_eulerian_explicit(&self, n: usize) -> Result<Verdict, VerifyError> {
        let row = self.tables().eulerian_row(n).map_err(crate::derivative::BuildError::from)?;
        let mut pairs = Vec::with_capacity(n);
        for (k, value) in row.into_iter().enumerate() {
            let explicit = eulerian_explicit(n, k).map_err(crate::derivative::BuildError::from)?;
            pairs.push((k, value, explicit));
        }
        Ok(Verdict::from_pairs("eulerian_explicit", Params::new().with("n", n), pairs))
    }
}
