//! Named verification suites and their default bounds.

use std::str::FromStr;

use rayon::prelude::*;

use crate::arith::{rat, Rational};
use crate::derivative::RiccatiParams;

use super::{OracleInstance, Verdict, Verifier, VerifyError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    All,
    Theorem1,
    Theorem2,
    Theorem3,
    Egf,
    Lemma1,
    Classical,
    Integrals,
    GrossetVeselov,
    Relations,
}

impl Suite {
    pub const NAMES: [&'static str; 10] = [
        "all",
        "theorem1",
        "theorem2",
        "theorem3",
        "egf",
        "lemma1",
        "classical",
        "integrals",
        "grosset-veselov",
        "relations",
    ];

    fn parts(self) -> &'static [Suite] {
        use Suite::*;
        match self {
            All => &[Theorem1, Theorem2, Theorem3, Egf, Lemma1, Classical, Integrals, GrossetVeselov, Relations],
            Theorem1 => &[Theorem1],
            Theorem2 => &[Theorem2],
            Theorem3 => &[Theorem3],
            Egf => &[Egf],
            Lemma1 => &[Lemma1],
            Classical => &[Classical],
            Integrals => &[Integrals],
            GrossetVeselov => &[GrossetVeselov],
            Relations => &[Relations],
        }
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        use Suite::*;
        Ok(match s {
            "all" => All,
            "theorem1" => Theorem1,
            "theorem2" => Theorem2,
            "theorem3" => Theorem3,
            "egf" => Egf,
            "lemma1" => Lemma1,
            "classical" => Classical,
            "integrals" => Integrals,
            "grosset-veselov" => GrossetVeselov,
            "relations" => Relations,
            _ => return Err(format!("unknown suite {s:?}")),
        })
    }
}

/// Largest bounds accepted from callers.
pub const MAX_N: usize = 40;
pub const MAX_M: usize = 16;
pub const MAX_ORDER: usize = 40;

/// One `(r, a, b, u0, v0)` row of initial data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceSpec {
    pub r: Rational,
    pub a: Rational,
    pub b: Rational,
    pub u0: Rational,
    pub v0: Rational,
}

impl InstanceSpec {
    fn new(r: Rational, a: Rational, b: Rational, u0: Rational, v0: Rational) -> Self {
        InstanceSpec { r, a, b, u0, v0 }
    }

    fn instance(&self, d: &Rational, order: usize) -> OracleInstance {
        let base = RiccatiParams::new(self.r.clone(), self.a.clone(), self.b.clone()).expect("valid instance table");
        OracleInstance::new(base.with_shift(d.clone()), self.u0.clone(), self.v0.clone(), order)
            .expect("valid instance table")
    }
}

/// Bounds and parameter sets for every suite.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub instances: Vec<InstanceSpec>,
    /// Extra `u0` values run through theorem 1 for each instance's `(r,a,b)`.
    pub theorem1_extra_u0: Vec<Rational>,
    pub shifts: Vec<Rational>,
    pub theorem1_n: usize,
    pub theorem23_n: usize,
    pub egf_order: usize,
    pub closed_form_u0: Vec<Rational>,
    pub lemma_n: usize,
    pub classical_n: usize,
    pub integral_pq_n: usize,
    pub integral_s_n: usize,
    pub pairs: Vec<(Rational, Rational)>,
    pub triples: Vec<(Rational, Rational, Rational)>,
    pub gv_m: usize,
    pub gv_numeric_m: usize,
    pub gv_tol: f64,
    pub i3_n: usize,
    pub relations_n: usize,
    pub homogeneity_n: usize,
    pub integrality_n: usize,
    pub lambdas: Vec<Rational>,
    pub samples: Vec<Rational>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        let one = Rational::one;
        let zero = Rational::zero;
        SuiteConfig {
            instances: vec![
                InstanceSpec::new(one(), zero(), one(), rat(1, 3), one()),
                // tanh / sech
                InstanceSpec::new(-one(), -one(), one(), zero(), one()),
                // coth / csch
                InstanceSpec::new(one(), -one(), one(), Rational::from(2), rat(1, 3)),
                // 1/(1+e^z), e^{z/2}/(1+e^z)
                InstanceSpec::new(one(), zero(), one(), rat(1, 2), rat(1, 2)),
                // 1/(1+e^{-z})
                InstanceSpec::new(-one(), zero(), one(), rat(1, 2), rat(1, 2)),
                // logistic q = 2, p = 3, s = 1
                InstanceSpec::new(rat(-1, 2), Rational::from(2), zero(), rat(1, 2), rat(1, 2)),
            ],
            theorem1_extra_u0: vec![rat(1, 5), rat(3, 4), rat(-7, 3), Rational::from(5)],
            shifts: vec![rat(1, 4), rat(-1, 2)],
            theorem1_n: 15,
            theorem23_n: 12,
            egf_order: 10,
            closed_form_u0: vec![rat(1, 2), rat(1, 3), rat(5, 7)],
            lemma_n: 15,
            classical_n: 15,
            integral_pq_n: 20,
            integral_s_n: 12,
            pairs: vec![(zero(), one()), (-one(), Rational::from(3)), (rat(5, 2), rat(-1, 3))],
            triples: vec![
                (zero(), one(), rat(1, 3)),
                (-one(), one(), rat(1, 2)),
                (Rational::from(2), Rational::from(5), -one()),
            ],
            gv_m: 8,
            gv_numeric_m: 3,
            gv_tol: 1e-8,
            i3_n: 16,
            relations_n: 12,
            homogeneity_n: 10,
            integrality_n: 20,
            lambdas: vec![Rational::from(2), Rational::from(-3), rat(1, 5)],
            samples: vec![rat(1, 3), rat(-2, 5), rat(7, 2), rat(9, 11), rat(-13, 4)],
        }
    }
}

impl SuiteConfig {
    /// Applies a single `n` bound to every degree-indexed check.
    pub fn with_n_max(mut self, n: usize) -> Self {
        self.theorem1_n = n;
        self.theorem23_n = n;
        self.lemma_n = n;
        self.classical_n = n;
        self.integral_pq_n = n;
        self.integral_s_n = n;
        self.i3_n = n;
        self.relations_n = n;
        self.homogeneity_n = n;
        self.integrality_n = n;
        self
    }

    pub fn with_m_max(mut self, m: usize) -> Self {
        self.gv_m = m;
        self.gv_numeric_m = self.gv_numeric_m.min(m);
        self
    }

    pub fn with_egf_order(mut self, order: usize) -> Self {
        self.egf_order = order;
        self
    }

    /// Restricts the integral checks to one `(a, b)` pair and shift `d`.
    pub fn with_interval(mut self, a: Rational, b: Rational, d: Rational) -> Self {
        self.pairs = vec![(a.clone(), b.clone())];
        self.triples = vec![(a, b, d)];
        self
    }

    pub fn validate(&self) -> Result<(), VerifyError> {
        let bad = |what: &str, v: usize, max: usize| {
            Err(VerifyError::Precondition(format!("{what} = {v} exceeds the maximum {max}")))
        };
        let ns = [
            self.theorem1_n,
            self.theorem23_n,
            self.lemma_n,
            self.classical_n,
            self.integral_pq_n,
            self.integral_s_n,
            self.i3_n,
            self.relations_n,
            self.homogeneity_n,
            self.integrality_n,
        ];
        if let Some(&n) = ns.iter().find(|&&n| n > MAX_N) {
            return bad("n", n, MAX_N);
        }
        if self.gv_m > MAX_M {
            return bad("m", self.gv_m, MAX_M);
        }
        if self.egf_order > MAX_ORDER {
            return bad("order", self.egf_order, MAX_ORDER);
        }
        if self.egf_order == 0 {
            return Err(VerifyError::Precondition("order must be at least 1".into()));
        }
        for spec in &self.instances {
            if self.samples.contains(&spec.b) {
                return Err(VerifyError::Precondition(format!("sample point {} equals b", spec.b)));
            }
        }
        for (a, b) in &self.pairs {
            if a == b {
                return Err(VerifyError::Precondition(format!("a and b must differ (both {a})")));
            }
        }
        Ok(())
    }
}

/// One scheduled check.
#[derive(Debug, Clone)]
enum Job {
    Theorem1(OracleInstance, usize),
    Theorem2(OracleInstance, usize),
    Theorem3(OracleInstance, usize),
    EgfEulerian(usize),
    EgfA(usize),
    EgfMacmahon(usize),
    EgfMacmahonHalved(usize),
    FClosed(Rational, usize),
    HClosed(Rational, Rational, usize),
    Lemma1(usize),
    Classical(usize),
    IntegralP(usize, Rational, Rational),
    IntegralQ(usize, Rational, Rational),
    IntegralS(usize, Rational, Rational, Rational),
    IntegralI3(usize),
    GvExact(usize),
    GvNumeric(usize, f64),
    SubstitutionE(usize, RiccatiParams),
    SubstitutionM(usize, RiccatiParams),
    Homogeneity(usize, RiccatiParams, Rational),
    Integrality(usize),
    EulerianExplicit(usize),
}

impl Job {
    fn run(&self, v: &Verifier<'_>, cfg: &SuiteConfig) -> Result<Verdict, VerifyError> {
        match self {
            Job::Theorem1(inst, n) => v.check_theorem1(inst, *n),
            Job::Theorem2(inst, n) => v.check_theorem2(inst, *n),
            Job::Theorem3(inst, n) => v.check_theorem3(inst, *n),
            Job::EgfEulerian(n) => v.check_egf_eulerian(*n),
            Job::EgfA(n) => v.check_egf_a(*n),
            Job::EgfMacmahon(n) => v.check_egf_macmahon(*n),
            Job::EgfMacmahonHalved(n) => v.check_egf_macmahon_halved(*n),
            Job::FClosed(u0, n) => v.check_f_closed_form(u0, *n),
            Job::HClosed(u0, d, n) => v.check_h_closed_form(u0, d, *n),
            Job::Lemma1(n) => v.check_lemma1(*n),
            Job::Classical(n) => v.check_classical(*n),
            Job::IntegralP(n, a, b) => v.check_integral_p(*n, a, b),
            Job::IntegralQ(n, a, b) => v.check_integral_q(*n, a, b),
            Job::IntegralS(n, a, b, d) => v.check_integral_s(*n, a, b, d),
            Job::IntegralI3(n) => v.check_integral_i3(*n),
            Job::GvExact(m) => v.grosset_veselov_exact(*m),
            Job::GvNumeric(m, tol) => v.grosset_veselov_numeric(*m, *tol),
            Job::SubstitutionE(n, p) => v.check_substitution_e(*n, p, &cfg.samples),
            Job::SubstitutionM(n, p) => v.check_substitution_m(*n, p, &cfg.samples),
            Job::Homogeneity(n, p, l) => v.check_homogeneity_q(*n, p, l, &cfg.samples),
            Job::Integrality(n) => v.check_integrality(*n),
            Job::EulerianExplicit(n) => v.check_eulerian_explicit(*n),
        }
    }
}

fn plan_part(part: Suite, cfg: &SuiteConfig, jobs: &mut Vec<Job>) {
    let zero = Rational::zero();
    match part {
        Suite::All => unreachable!("expanded by Suite::parts"),
        Suite::Theorem1 => {
            let n = cfg.theorem1_n;
            for spec in &cfg.instances {
                jobs.push(Job::Theorem1(spec.instance(&zero, n.max(1)), n));
                for u0 in &cfg.theorem1_extra_u0 {
                    let variant = InstanceSpec { u0: u0.clone(), ..spec.clone() };
                    jobs.push(Job::Theorem1(variant.instance(&zero, n.max(1)), n));
                }
            }
        }
        Suite::Theorem2 => {
            let n = cfg.theorem23_n;
            for spec in &cfg.instances {
                jobs.push(Job::Theorem2(spec.instance(&zero, n.max(1)), n));
            }
        }
        Suite::Theorem3 => {
            let n = cfg.theorem23_n;
            for spec in &cfg.instances {
                for d in &cfg.shifts {
                    jobs.push(Job::Theorem3(spec.instance(d, n.max(1)), n));
                }
            }
        }
        Suite::Egf => {
            let n = cfg.egf_order;
            jobs.extend([Job::EgfEulerian(n), Job::EgfA(n), Job::EgfMacmahon(n), Job::EgfMacmahonHalved(n)]);
            for u0 in &cfg.closed_form_u0 {
                jobs.push(Job::FClosed(u0.clone(), n));
                jobs.push(Job::HClosed(u0.clone(), zero.clone(), n));
                for d in &cfg.shifts {
                    jobs.push(Job::HClosed(u0.clone(), d.clone(), n));
                }
            }
        }
        Suite::Lemma1 => jobs.extend((1..=cfg.lemma_n).map(Job::Lemma1)),
        Suite::Classical => jobs.extend((1..=cfg.classical_n).map(Job::Classical)),
        Suite::Integrals => {
            for (a, b) in &cfg.pairs {
                for n in 1..=cfg.integral_pq_n {
                    jobs.push(Job::IntegralP(n, a.clone(), b.clone()));
                }
                for n in 0..=cfg.integral_pq_n {
                    jobs.push(Job::IntegralQ(n, a.clone(), b.clone()));
                }
            }
            for (a, b, d) in &cfg.triples {
                for n in 1..=cfg.integral_s_n {
                    jobs.push(Job::IntegralS(n, a.clone(), b.clone(), d.clone()));
                }
            }
        }
        Suite::GrossetVeselov => {
            jobs.extend((1..=cfg.gv_m).map(Job::GvExact));
            jobs.extend((1..=cfg.gv_numeric_m.min(cfg.gv_m)).map(|m| Job::GvNumeric(m, cfg.gv_tol)));
        }
        Suite::Relations => {
            for spec in &cfg.instances {
                let pr = RiccatiParams::roots(spec.a.clone(), spec.b.clone()).expect("valid instance table");
                for n in 1..=cfg.relations_n {
                    jobs.push(Job::SubstitutionE(n, pr.clone()));
                }
                for n in 0..=cfg.relations_n {
                    jobs.push(Job::SubstitutionM(n, pr.clone()));
                }
                for l in &cfg.lambdas {
                    for n in 0..=cfg.homogeneity_n {
                        jobs.push(Job::Homogeneity(n, pr.clone(), l.clone()));
                    }
                }
            }
            jobs.extend((0..=cfg.integrality_n).map(Job::Integrality));
            jobs.extend((1..=cfg.i3_n).map(Job::IntegralI3));
            jobs.extend((1..=cfg.relations_n).map(Job::EulerianExplicit));
        }
    }
}

/// Runs every check of `suite` (in parallel on the current rayon pool) and
/// returns the verdicts in canonical order.
pub fn run_suite(verifier: &Verifier<'_>, suite: Suite, cfg: &SuiteConfig) -> Result<Vec<Verdict>, VerifyError> {
    cfg.validate()?;
    let mut jobs = Vec::new();
    for &part in suite.parts() {
        plan_part(part, cfg, &mut jobs);
    }
    let mut verdicts = jobs
        .par_iter()
        .map(|job| job.run(verifier, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    verdicts.sort_by(Verdict::canonical_cmp);
    // identical (r,a,b) rows can schedule the same check twice
    verdicts.dedup_by(|x, y| x.canonical_cmp(y).is_eq() && x == y);
    Ok(verdicts)
}
