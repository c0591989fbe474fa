//! Identity verification engine.
//!
//! Every check produces a [`Verdict`]. Exact checks compare both sides as
//! rationals or polynomials with no tolerance; the only floating-point path
//! is [`Verifier::grosset_veselov_numeric`].

use std::cmp::Ordering;
use std::fmt;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::Rational;
use crate::derivative::BuildError;
use crate::poly::PolyError;
use crate::series::SeriesError;
use crate::special::Tables;

mod egf;
mod identities;
mod integrals;
mod oracle;
pub mod quadrature;
mod relations;
pub mod suite;

pub use oracle::{riccati_series, v_series, OracleInstance};
pub use suite::{run_suite, Suite, SuiteConfig};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("invalid oracle instance: {0}")]
    Instance(String),
    #[error("check bound {n} exceeds series order {order}")]
    OrderTooSmall { n: usize, order: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Pass,
    Fail,
    /// The numeric path did not converge; neither pass nor fail.
    Inconclusive,
}

/// A parameter value echoed in a verdict.
#[derive(Debug, Clone, PartialEq)]
pub enum Param {
    Int(i64),
    Rat(Rational),
    Float(f64),
}

impl Param {
    fn rank(&self) -> u8 {
        match self {
            Param::Int(_) => 0,
            Param::Rat(_) => 1,
            Param::Float(_) => 2,
        }
    }

    fn cmp_value(&self, other: &Param) -> Ordering {
        match (self, other) {
            (Param::Int(a), Param::Int(b)) => a.cmp(b),
            (Param::Rat(a), Param::Rat(b)) => a.cmp(b),
            (Param::Float(a), Param::Float(b)) => a.total_cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Int(n) => write!(f, "{n}"),
            Param::Rat(r) => write!(f, "{r}"),
            Param::Float(x) => write!(f, "{x:e}"),
        }
    }
}

impl From<usize> for Param {
    fn from(n: usize) -> Self {
        Param::Int(n as i64)
    }
}

impl From<Rational> for Param {
    fn from(r: Rational) -> Self {
        Param::Rat(r)
    }
}

impl From<&Rational> for Param {
    fn from(r: &Rational) -> Self {
        Param::Rat(r.clone())
    }
}

impl From<f64> for Param {
    fn from(x: f64) -> Self {
        Param::Float(x)
    }
}

impl Serialize for Param {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Param::Int(n) => serializer.serialize_i64(*n),
            Param::Rat(r) => r.serialize(serializer),
            Param::Float(x) => serializer.serialize_f64(*x),
        }
    }
}

/// Ordered parameter list; serialized as a JSON object in insertion order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Params(Vec<(String, Param)>);

impl Params {
    pub fn new() -> Self {
        Params(Vec::new())
    }

    pub fn with(mut self, key: &str, value: impl Into<Param>) -> Self {
        self.0.push((key.to_string(), value.into()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Param> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Param)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v))
    }

    fn cmp_canonical(&self, other: &Params) -> Ordering {
        for ((ka, va), (kb, vb)) in self.0.iter().zip(&other.0) {
            let ord = ka.cmp(kb).then_with(|| va.cmp_value(vb));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub lhs: String,
    pub rhs: String,
}

/// Result of one identity instance. A failing verdict always carries a
/// witness: both sides at the first index where they disagree.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub identity: String,
    pub params: Params,
    pub outcome: Outcome,
    pub first_failure: Option<usize>,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn pass(identity: &str, params: Params) -> Self {
        Verdict {
            identity: identity.to_string(),
            params,
            outcome: Outcome::Pass,
            first_failure: None,
            witness: None,
        }
    }

    pub fn fail(identity: &str, params: Params, index: usize, lhs: impl fmt::Display, rhs: impl fmt::Display) -> Self {
        Verdict {
            identity: identity.to_string(),
            params,
            outcome: Outcome::Fail,
            first_failure: Some(index),
            witness: Some(Witness { lhs: lhs.to_string(), rhs: rhs.to_string() }),
        }
    }

    pub fn inconclusive(identity: &str, params: Params) -> Self {
        Verdict { outcome: Outcome::Inconclusive, ..Verdict::pass(identity, params) }
    }

    /// Passes iff `lhs == rhs` at every index; otherwise fails at the first
    /// mismatch.
    pub fn from_pairs<T, I>(identity: &str, params: Params, pairs: I) -> Self
    where
        T: PartialEq + fmt::Display,
        I: IntoIterator<Item = (usize, T, T)>,
    {
        for (i, lhs, rhs) in pairs {
            if lhs != rhs {
                return Verdict::fail(identity, params, i, lhs, rhs);
            }
        }
        Verdict::pass(identity, params)
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    /// Canonical output order: identity name, then parameters.
    pub fn canonical_cmp(&self, other: &Verdict) -> Ordering {
        self.identity
            .cmp(&other.identity)
            .then_with(|| self.params.cmp_canonical(&other.params))
    }

    /// One human-readable line.
    pub fn to_plain(&self) -> String {
        let tag = match self.outcome {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Inconclusive => "INCONCLUSIVE",
        };
        let mut line = format!("{tag} {} {}", self.identity, self.params);
        if let (Some(i), Some(w)) = (self.first_failure, &self.witness) {
            line.push_str(&format!(" first_failure={i} lhs={} rhs={}", w.lhs, w.rhs));
        }
        line
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let inconclusive = self.outcome == Outcome::Inconclusive;
        let mut st = serializer.serialize_struct("Verdict", if inconclusive { 6 } else { 5 })?;
        st.serialize_field("identity", &self.identity)?;
        st.serialize_field("params", &self.params)?;
        st.serialize_field("pass", &self.passed())?;
        st.serialize_field("first_failure", &self.first_failure)?;
        st.serialize_field("witness", &self.witness)?;
        if inconclusive {
            st.serialize_field("inconclusive", &true)?;
        }
        st.end()
    }
}

/// Runs checks against a particular set of triangles.
#[derive(Debug, Clone, Copy)]
pub struct Verifier<'t> {
    tables: &'t Tables,
}

impl Verifier<'static> {
    pub fn standard() -> Self {
        Verifier { tables: Tables::standard() }
    }
}

impl<'t> Verifier<'t> {
    pub fn new(tables: &'t Tables) -> Self {
        Verifier { tables }
    }

    pub fn tables(&self) -> &'t Tables {
        self.tables
    }
}
