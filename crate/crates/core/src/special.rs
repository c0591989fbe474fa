//! Eulerian and MacMahon triangles, Bernoulli numbers and polynomials.
//!
//! Triangles are memoized in a [`Tables`] value and grow row by row on
//! demand. The Eulerian recurrence step is pluggable so that a deliberately
//! broken recurrence can be pushed through every downstream check.

use std::sync::{OnceLock, RwLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{binomial, factorial, Integer, Rational};
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecialError {
    #[error("row index must be at least 1, got {0}")]
    RowIndex(usize),
    #[error("column {k} outside 0..{n} for row {n}")]
    Column { n: usize, k: i64 },
    #[error("malformed table: {0}")]
    Table(String),
}

/// Computes `⟨n+1, k⟩` from `⟨n, k⟩` (`same`) and `⟨n, k-1⟩` (`prev`).
pub type EulerianStep = fn(n: u64, k: u64, same: &Integer, prev: &Integer) -> Integer;

/// `⟨n+1,k⟩ = (k+1)⟨n,k⟩ + (n-k+1)⟨n,k-1⟩`.
pub fn standard_eulerian_step(n: u64, k: u64, same: &Integer, prev: &Integer) -> Integer {
    Integer::from(k + 1) * same + Integer::from(n + 1 - k) * prev
}

/// Memoized triangles. Row `n` is stored at index `n - 1`.
pub struct Tables {
    eulerian_step: EulerianStep,
    eulerian: RwLock<Vec<Vec<Integer>>>,
    macmahon: RwLock<Vec<Vec<Integer>>>,
}

impl Default for Tables {
    fn default() -> Self {
        Tables::with_eulerian_step(standard_eulerian_step)
    }
}

impl std::fmt::Debug for Tables {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Tables")
            .field("eulerian_rows", &self.eulerian.read().unwrap().len())
            .field("macmahon_rows", &self.macmahon.read().unwrap().len())
            .finish()
    }
}

fn lookup(row: &[Integer], idx: i64) -> Integer {
    usize::try_from(idx)
        .ok()
        .and_then(|i| row.get(i))
        .cloned()
        .unwrap_or_else(Integer::zero)
}

impl Tables {
    pub fn new() -> Self {
        Tables::default()
    }

    pub fn with_eulerian_step(step: EulerianStep) -> Self {
        Tables {
            eulerian_step: step,
            eulerian: RwLock::new(vec![vec![Integer::one()]]),
            macmahon: RwLock::new(vec![vec![Integer::one()]]),
        }
    }

    /// Shared tables built with the standard recurrences.
    pub fn standard() -> &'static Tables {
        static STANDARD: OnceLock<Tables> = OnceLock::new();
        STANDARD.get_or_init(Tables::new)
    }

    fn grow_eulerian(&self, n: usize) {
        if self.eulerian.read().unwrap().len() >= n {
            return;
        }
        let mut rows = self.eulerian.write().unwrap();
        while rows.len() < n {
            let m = rows.len() as u64; // last stored row is row m
            let last = rows.last().expect("row 1 is seeded");
            let next = (0..=m as i64)
                .map(|k| (self.eulerian_step)(m, k as u64, &lookup(last, k), &lookup(last, k - 1)))
                .collect();
            rows.push(next);
        }
    }

    fn grow_macmahon(&self, n: usize) {
        if self.macmahon.read().unwrap().len() >= n {
            return;
        }
        let mut rows = self.macmahon.write().unwrap();
        while rows.len() < n {
            let n_new = rows.len() as i64 + 1;
            let last = rows.last().expect("row 1 is seeded");
            // M_{n,k} = (2k-1) M_{n-1,k} + (2n-2k+1) M_{n-1,k-1}; row stores k = 1..n at k-1
            let next = (1..=n_new)
                .map(|k| {
                    Integer::from(2 * k - 1) * lookup(last, k - 1)
                        + Integer::from(2 * n_new - 2 * k + 1) * lookup(last, k - 2)
                })
                .collect();
            rows.push(next);
        }
    }

    /// Row `n` of the Eulerian triangle, `k = 0..n-1`.
    pub fn eulerian_row(&self, n: usize) -> Result<Vec<Integer>, SpecialError> {
        if n == 0 {
            return Err(SpecialError::RowIndex(n));
        }
        self.grow_eulerian(n);
        Ok(self.eulerian.read().unwrap()[n - 1].clone())
    }

    /// `⟨n, k⟩`; zero outside `0 <= k <= n-1`.
    pub fn eulerian(&self, n: usize, k: i64) -> Result<Integer, SpecialError> {
        if n == 0 {
            return Err(SpecialError::RowIndex(n));
        }
        self.grow_eulerian(n);
        Ok(lookup(&self.eulerian.read().unwrap()[n - 1], k))
    }

    /// Row `n` of the MacMahon triangle, `k = 1..n`.
    pub fn macmahon_row(&self, n: usize) -> Result<Vec<Integer>, SpecialError> {
        if n == 0 {
            return Err(SpecialError::RowIndex(n));
        }
        self.grow_macmahon(n);
        Ok(self.macmahon.read().unwrap()[n - 1].clone())
    }

    /// `M_{n,k}`; zero outside `1 <= k <= n`.
    pub fn macmahon(&self, n: usize, k: i64) -> Result<Integer, SpecialError> {
        if n == 0 {
            return Err(SpecialError::RowIndex(n));
        }
        self.grow_macmahon(n);
        Ok(lookup(&self.macmahon.read().unwrap()[n - 1], k - 1))
    }

    pub fn eulerian_triangle(&self, n_max: usize) -> Triangle {
        Triangle {
            kind: TriangleKind::Eulerian,
            rows: (1..=n_max).map(|n| self.eulerian_row(n).expect("n >= 1")).collect(),
        }
    }

    pub fn macmahon_triangle(&self, n_max: usize) -> Triangle {
        Triangle {
            kind: TriangleKind::MacMahon,
            rows: (1..=n_max).map(|n| self.macmahon_row(n).expect("n >= 1")).collect(),
        }
    }
}

pub fn eulerian(n: usize, k: i64) -> Result<Integer, SpecialError> {
    Tables::standard().eulerian(n, k)
}

pub fn macmahon(n: usize, k: i64) -> Result<Integer, SpecialError> {
    Tables::standard().macmahon(n, k)
}

/// `⟨n,k⟩ = Σ_{j=0}^{k} (-1)^j C(n+1, j) (k-j+1)^n`.
pub fn eulerian_explicit(n: usize, k: usize) -> Result<Integer, SpecialError> {
    if n == 0 {
        return Err(SpecialError::RowIndex(n));
    }
    if k >= n {
        return Err(SpecialError::Column { n, k: k as i64 });
    }
    let mut sum = Integer::zero();
    for j in 0..=k {
        let term = binomial(n as u64 + 1, j as i64) * num_traits::pow(Integer::from(k - j + 1), n);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(sum)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TriangleKind {
    Eulerian,
    MacMahon,
}

/// A finite slice of an integer triangle, rows `1..=rows.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    pub kind: TriangleKind,
    pub rows: Vec<Vec<Integer>>,
}

impl Triangle {
    /// Entry at row `n`, column `k` in the triangle's own indexing
    /// (`k` from 0 for Eulerian, from 1 for MacMahon); zero off support.
    pub fn get(&self, n: usize, k: i64) -> Integer {
        let offset = match self.kind {
            TriangleKind::Eulerian => 0,
            TriangleKind::MacMahon => 1,
        };
        match n.checked_sub(1).and_then(|i| self.rows.get(i)) {
            Some(row) => lookup(row, k - offset),
            None => Integer::zero(),
        }
    }

    pub fn to_table(&self) -> Table {
        Table {
            kind: match self.kind {
                TriangleKind::Eulerian => TableKind::Eulerian,
                TriangleKind::MacMahon => TableKind::Macmahon,
            },
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(Integer::to_string).collect())
                .collect(),
        }
    }
}

impl TryFrom<Table> for Triangle {
    type Error = SpecialError;

    fn try_from(table: Table) -> Result<Self, Self::Error> {
        let kind = match table.kind {
            TableKind::Eulerian => TriangleKind::Eulerian,
            TableKind::Macmahon => TriangleKind::MacMahon,
            other => return Err(SpecialError::Table(format!("{other:?} is not a triangle"))),
        };
        let rows = table
            .rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                if row.len() != i + 1 {
                    return Err(SpecialError::Table(format!("row {} has {} entries", i + 1, row.len())));
                }
                row.iter()
                    .map(|s| s.parse::<Integer>().map_err(|e| SpecialError::Table(format!("{s:?}: {e}"))))
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        Ok(Triangle { kind, rows })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableKind {
    Eulerian,
    Macmahon,
    Bernoulli,
    BernoulliPoly,
}

/// Serialized table: every value is an exact decimal string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub kind: TableKind,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        self.rows.iter().map(|r| r.join(",") + "\n").collect()
    }

    pub fn to_plain(&self) -> String {
        self.rows.iter().map(|r| r.join(" ") + "\n").collect()
    }
}

/// Bernoulli numbers `B_0..=B_N` with `B_1 = -1/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernoulliCache {
    pub values: Vec<Rational>,
}

impl BernoulliCache {
    pub fn get(&self, n: usize) -> Option<&Rational> {
        self.values.get(n)
    }

    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    /// One single-entry row per `B_n`.
    pub fn to_table(&self) -> Table {
        Table {
            kind: TableKind::Bernoulli,
            rows: self.values.iter().map(|b| vec![b.to_string()]).collect(),
        }
    }
}

/// Solves `(Σ B_n t^n/n!) · ((e^t - 1)/t) = 1` one coefficient at a time.
/// With `β_n = B_n/n!` and `(e^t-1)/t = Σ t^k/(k+1)!` this reads
/// `β_n = -Σ_{k=1}^{n} β_{n-k} / (k+1)!`.
pub fn bernoulli_numbers(n_max: usize) -> BernoulliCache {
    let inv_fact: Vec<Rational> = (0..=n_max as u64 + 1)
        .map(|k| Rational::from(factorial(k)).recip().expect("k! > 0"))
        .collect();
    let mut scaled: Vec<Rational> = Vec::with_capacity(n_max + 1);
    scaled.push(Rational::one());
    for n in 1..=n_max {
        let s: Rational = (1..=n).map(|k| &scaled[n - k] * &inv_fact[k + 1]).sum();
        scaled.push(-s);
    }
    let values = scaled
        .into_iter()
        .enumerate()
        .map(|(n, b)| b * Rational::from(factorial(n as u64)))
        .collect();
    BernoulliCache { values }
}

/// `B_n` from a shared cache that grows on demand.
pub fn bernoulli(n: usize) -> Rational {
    static CACHE: RwLock<Vec<Rational>> = RwLock::new(Vec::new());
    if let Some(b) = CACHE.read().unwrap().get(n) {
        return b.clone();
    }
    let mut cache = CACHE.write().unwrap();
    if cache.len() <= n {
        *cache = bernoulli_numbers((2 * n).max(32)).values;
    }
    cache[n].clone()
}

/// `B_n(x) = Σ_k C(n,k) B_k x^{n-k}`.
pub fn bernoulli_poly(n: usize) -> Poly {
    let mut coeffs = vec![Rational::zero(); n + 1];
    for k in 0..=n {
        coeffs[n - k] = Rational::from(binomial(n as u64, k as i64)) * bernoulli(k);
    }
    Poly::new(coeffs)
}

pub fn bernoulli_value(n: usize, x: &Rational) -> Rational {
    bernoulli_poly(n).eval(x)
}

/// Rows `B_0(x) .. B_N(x)`, coefficients lowest degree first.
pub fn bernoulli_poly_table(n_max: usize) -> Table {
    Table {
        kind: TableKind::BernoulliPoly,
        rows: (0..=n_max)
            .map(|n| bernoulli_poly(n).coeffs().iter().map(Rational::to_string).collect())
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    /// Counts permutations of 0..n by number of ascents.
    fn ascent_counts(n: usize) -> Vec<u64> {
        fn permute(prefix: &mut Vec<usize>, used: &mut [bool], counts: &mut [u64]) {
            if prefix.len() == used.len() {
                let asc = prefix.windows(2).filter(|w| w[0] < w[1]).count();
                counts[asc] += 1;
                return;
            }
            for i in 0..used.len() {
                if !used[i] {
                    used[i] = true;
                    prefix.push(i);
                    permute(prefix, used, counts);
                    prefix.pop();
                    used[i] = false;
                }
            }
        }
        let mut counts = vec![0; n];
        permute(&mut Vec::new(), &mut vec![false; n], &mut counts);
        counts
    }

    #[test]
    fn eulerian_rows_match_permutation_counts() {
        for n in 1..=7 {
            let brute: Vec<Integer> = ascent_counts(n).into_iter().map(Integer::from).collect();
            assert_eq!(Tables::standard().eulerian_row(n).unwrap(), brute, "row {n}");
        }
    }

    #[test]
    fn eulerian_values() {
        assert_eq!(Tables::standard().eulerian_row(3).unwrap(), ints(&[1, 4, 1]));
        for n in 1..=12 {
            assert_eq!(eulerian(n, n as i64 - 1).unwrap(), Integer::one());
        }
        assert_eq!(eulerian(5, 2).unwrap(), Integer::from(66));
        assert_eq!(eulerian(4, -1).unwrap(), Integer::zero());
        assert_eq!(eulerian(4, 4).unwrap(), Integer::zero());
        assert_eq!(eulerian(0, 0), Err(SpecialError::RowIndex(0)));
    }

    #[test]
    fn explicit_formula() {
        assert_eq!(eulerian_explicit(3, 1).unwrap(), Integer::from(4));
        for n in 1..=10 {
            assert_eq!(eulerian_explicit(n, 0).unwrap(), Integer::one());
        }
        // brute-force ascent counts: row 6 is 1 57 302 302 57 1, row 7 has 2416 at k = 3
        assert_eq!(eulerian_explicit(6, 3).unwrap(), Integer::from(302));
        assert_eq!(eulerian_explicit(7, 3).unwrap(), Integer::from(2416));
        assert_eq!(ascent_counts(7)[3], 2416);
        assert!(matches!(eulerian_explicit(3, 3), Err(SpecialError::Column { .. })));
        assert!(eulerian_explicit(0, 0).is_err());
    }

    #[test]
    fn recurrence_equals_explicit() {
        for n in 1..=12 {
            for k in 0..n {
                assert_eq!(eulerian(n, k as i64).unwrap(), eulerian_explicit(n, k).unwrap());
            }
        }
    }

    #[test]
    fn eulerian_symmetry_and_row_sums() {
        for n in 1..=25 {
            let row = Tables::standard().eulerian_row(n).unwrap();
            assert_eq!(row.len(), n);
            for k in 0..n {
                assert_eq!(row[k], row[n - k - 1]);
                assert!(row[k] > Integer::zero());
            }
            if n <= 12 {
                assert_eq!(row.iter().sum::<Integer>(), factorial(n as u64));
            }
        }
    }

    #[test]
    fn macmahon_rows() {
        let t = Tables::standard();
        assert_eq!(t.macmahon_row(1).unwrap(), ints(&[1]));
        assert_eq!(t.macmahon_row(2).unwrap(), ints(&[1, 1]));
        assert_eq!(t.macmahon_row(3).unwrap(), ints(&[1, 6, 1]));
        assert_eq!(t.macmahon_row(4).unwrap(), ints(&[1, 23, 23, 1]));
        for n in 1..=30 {
            assert_eq!(macmahon(n, 1).unwrap(), Integer::one());
        }
        assert_eq!(macmahon(4, 0).unwrap(), Integer::zero());
        assert_eq!(macmahon(4, 5).unwrap(), Integer::zero());
        assert!(macmahon(0, 1).is_err());
    }

    #[test]
    fn macmahon_symmetry_and_row_sums() {
        for n in 1..=20usize {
            let row = Tables::standard().macmahon_row(n).unwrap();
            for k in 1..=n {
                assert_eq!(row[k - 1], row[n - k]);
            }
            // Σ_k M_{n,k} = 2^{n-1} (n-1)!
            let expected = (Integer::one() << (n - 1)) * factorial(n as u64 - 1);
            assert_eq!(row.iter().sum::<Integer>(), expected);
        }
    }

    #[test]
    fn triangle_lookup_and_table_round_trip() {
        let tri = Tables::standard().macmahon_triangle(5);
        assert_eq!(tri.get(4, 2), Integer::from(23));
        assert_eq!(tri.get(4, 0), Integer::zero());
        assert_eq!(tri.get(9, 1), Integer::zero());
        let json = serde_json::to_string(&tri.to_table()).unwrap();
        assert!(json.starts_with(r#"{"kind":"macmahon","rows":[["1"],["1","1"]"#));
        let back: Table = serde_json::from_str(&json).unwrap();
        assert_eq!(Triangle::try_from(back).unwrap(), tri);

        let eul = Tables::standard().eulerian_triangle(3);
        assert_eq!(eul.get(3, 1), Integer::from(4));
        assert_eq!(eul.to_table().to_csv(), "1\n1,1\n1,4,1\n");
        let bad = Table { kind: TableKind::Eulerian, rows: vec![vec!["1".into(), "2".into()]] };
        assert!(Triangle::try_from(bad).is_err());
    }

    #[test]
    fn bernoulli_numbers_values() {
        let b = bernoulli_numbers(12);
        assert_eq!(b.values[0], Rational::one());
        assert_eq!(b.values[1], rat(-1, 2));
        assert_eq!(b.values[2], rat(1, 6));
        assert_eq!(b.values[3], Rational::zero());
        assert_eq!(b.values[4], rat(-1, 30));
        assert_eq!(b.values[12], rat(-691, 2730));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        let big = bernoulli_numbers(29);
        for m in 1..=14 {
            assert!(big.values[2 * m + 1].is_zero(), "B_{}", 2 * m + 1);
        }
    }

    #[test]
    fn bernoulli_numbers_satisfy_their_recurrence() {
        // Σ_{k=0}^{n} C(n+1,k) B_k = 0 for n >= 1
        let b = bernoulli_numbers(20);
        for n in 1..=20u64 {
            let s: Rational = (0..=n)
                .map(|k| Rational::from(binomial(n + 1, k as i64)) * &b.values[k as usize])
                .sum();
            assert!(s.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn bernoulli_polynomials() {
        assert_eq!(bernoulli_poly(1), Poly::new(vec![rat(-1, 2), Rational::one()]));
        assert_eq!(bernoulli_poly(2), Poly::new(vec![rat(1, 6), -Rational::one(), Rational::one()]));
        for n in 0..=12 {
            assert_eq!(bernoulli_value(n, &Rational::zero()), bernoulli(n));
        }
        assert_eq!(bernoulli_value(2, &rat(1, 2)), rat(-1, 12));
        assert_eq!(bernoulli_value(1, &rat(1, 2)), Rational::zero());
    }

    #[test]
    fn bernoulli_addition_formula() {
        let pairs = [(rat(1, 3), rat(2, 5)), (rat(-1, 2), rat(7, 3)), (rat(5, 4), rat(-2, 9)), (Rational::zero(), rat(1, 7)), (rat(-3, 2), rat(-1, 6))];
        for (x, y) in &pairs {
            for n in 0..=12usize {
                let lhs = bernoulli_value(n, &(x + y));
                let rhs: Rational = (0..=n)
                    .map(|k| Rational::from(binomial(n as u64, k as i64)) * bernoulli_value(k, x) * y.pow((n - k) as u32))
                    .sum();
                assert_eq!(lhs, rhs, "n={n} x={x} y={y}");
            }
        }
    }

    #[test]
    fn mutated_step_changes_the_triangle() {
        fn off_by_one(n: u64, k: u64, same: &Integer, prev: &Integer) -> Integer {
            Integer::from(k + 2) * same + Integer::from(n + 1 - k) * prev
        }
        let t = Tables::with_eulerian_step(off_by_one);
        assert_ne!(t.eulerian_row(3).unwrap(), ints(&[1, 4, 1]));
        assert_eq!(t.macmahon_row(3).unwrap(), ints(&[1, 6, 1]));
    }
}
