//! Exact construction of Eulerian and MacMahon triangles, Bernoulli numbers,
//! and the derivative polynomials of the constant-coefficient Riccati
//! equation, together with an engine that verifies the identities linking
//! them (derivative formulas, generating functions, integral
//! representations) over arbitrary-precision rationals.
//!
//! ```
//! use derivpoly::verify::Verifier;
//! use derivpoly::{build_q, rat, RiccatiParams};
//!
//! let roots = RiccatiParams::roots(rat(0, 1), rat(1, 1)).unwrap();
//! assert_eq!(build_q(2, &roots).to_string(), "8u^2 - 8u + 1");
//!
//! let verdict = Verifier::standard().check_lemma1(10).unwrap();
//! assert!(verdict.passed());
//! ```

pub mod arith;
pub mod derivative;
pub mod poly;
pub mod series;
pub mod special;
pub mod verify;

pub use arith::{binomial, factorial, rat, ArithError, Integer, Rational};
pub use derivative::{
    build_a, build_e, build_m, build_p, build_q, build_s, BuildError, Family, ParamError, PolyRecord,
    RecordParams, RiccatiParams, ShiftedParams,
};
pub use poly::{Poly, PolyError};
pub use series::{Coeff, Series, SeriesError};
pub use special::{
    bernoulli, bernoulli_numbers, bernoulli_poly, bernoulli_poly_table, bernoulli_value, eulerian, eulerian_explicit, macmahon,
    BernoulliCache, Table, TableKind, Tables, Triangle, TriangleKind,
};
pub use verify::{Outcome, Verdict};
