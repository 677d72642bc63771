//! Minimal module generators via degreewise quotient dimensions.
//!
//! For each degree `k` the alternants span `A_k`, and the part reachable from
//! lower degrees is `B_k = span{η_s · Alt(x^A) : 1 ≤ |s| ≤ n, |A| = k - |s|}`
//! (the `η_s` generate the positive-degree symmetric polynomials as an ideal of
//! the invariant ring). The number of degree-`k` generators in any minimal
//! homogeneous generating set is `dim A_k - dim B_k`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::alternants::{alternants_of_degree, Alternant, AlternantCoordinates};
use super::bounds::binomial;
use crate::error::{Error, Result};
use crate::linalg::{self, SpanTracker, MODULAR_PRIME};
use crate::poly::Polynomial;
use crate::symmetric::{enumerate_generators, powersum};

pub const DEFAULT_MONOMIAL_LIMIT: u128 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RankMethod {
    /// Fraction-free elimination over ℤ.
    Exact,
    /// Rank modulo a 62-bit prime only (a lower bound, almost always exact).
    Modular,
    /// Rank modulo the prime, confirmed exactly unless it is already full.
    ModularConfirmed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuotientOptions {
    /// Largest number of degree-`k` monomials in `dn` variables allowed.
    pub monomial_limit: u128,
    pub rank_method: RankMethod,
}

impl Default for QuotientOptions {
    fn default() -> Self {
        Self {
            monomial_limit: DEFAULT_MONOMIAL_LIMIT,
            rank_method: RankMethod::Exact,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeQuotient {
    pub degree: u32,
    /// `dim A_k`.
    pub alternants: usize,
    /// `dim B_k`.
    pub reachable: usize,
    /// `dim A_k - dim B_k`.
    pub quotient_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientReport {
    pub n: usize,
    pub d: usize,
    pub degrees: Vec<DegreeQuotient>,
    pub total: usize,
}

fn monomial_count(n: usize, d: usize, k: u32) -> u128 {
    let vars = (n * d) as u64;
    binomial(k as u64 + vars - 1, vars - 1).to_u128().unwrap_or(u128::MAX)
}

fn check_guard(n: usize, d: usize, k: u32, opts: &QuotientOptions) -> Result<()> {
    let count = monomial_count(n, d, k);
    if count > opts.monomial_limit {
        return Err(Error::GuardExceeded {
            degree: k,
            monomials: count,
            limit: opts.monomial_limit,
        });
    }
    Ok(())
}

fn check_args(n: usize, d: usize) -> Result<()> {
    if n < 2 || d < 1 {
        return Err(Error::InvalidArgument("generator counts need n ≥ 2 and d ≥ 1".into()));
    }
    Ok(())
}

/// Alternant bases for degrees `0..=max`, computed once and shared.
struct AlternantTable {
    by_degree: Vec<Vec<Alternant>>,
}

impl AlternantTable {
    fn new(n: usize, d: usize, max: u32) -> Self {
        let by_degree = (0..=max)
            .into_par_iter()
            .map(|k| alternants_of_degree(n, d, k))
            .collect();
        Self { by_degree }
    }
}

/// Coordinate vectors (over the degree-`k` alternant basis) spanning `B_k`.
fn reachable_rows(
    k: u32,
    table: &AlternantTable,
    powersums: &[(u32, Polynomial)],
) -> (AlternantCoordinates, Vec<Vec<BigRational>>) {
    let basis = &table.by_degree[k as usize];
    let coords = AlternantCoordinates::new(&basis.iter().map(|a| a.rows.clone()).collect::<Vec<_>>());
    let mut rows = Vec::new();
    for (deg, eta) in powersums {
        if *deg > k {
            continue;
        }
        for alt in &table.by_degree[(k - deg) as usize] {
            let v = coords.coordinates(&(eta * &alt.polynomial));
            if v.iter().any(|x| !x.is_zero()) {
                rows.push(v);
            }
        }
    }
    (coords, rows)
}

fn positive_powersums(n: usize, d: usize) -> Vec<(u32, Polynomial)> {
    enumerate_generators(n, d)
        .into_iter()
        .filter(|g| g.degree() > 0)
        .map(|g| (g.degree(), powersum(&g.s, n, d).expect("enumerated generator")))
        .collect()
}

fn rank_of(rows: &[Vec<BigRational>], full: usize, method: RankMethod) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ints: Vec<Vec<BigInt>> = rows.iter().map(|r| linalg::clear_denominators(r)).collect();
    match method {
        RankMethod::Exact => linalg::rank_exact(ints),
        RankMethod::Modular => linalg::rank_mod_p(&ints, MODULAR_PRIME),
        RankMethod::ModularConfirmed => {
            let r = linalg::rank_mod_p(&ints, MODULAR_PRIME);
            // the modular rank never exceeds the true rank, so a full rank is certified
            if r == full {
                r
            } else {
                linalg::rank_exact(ints)
            }
        }
    }
}

fn degree_quotient(
    k: u32,
    table: &AlternantTable,
    powersums: &[(u32, Polynomial)],
    method: RankMethod,
) -> DegreeQuotient {
    let (coords, rows) = reachable_rows(k, table, powersums);
    let dim = coords.dim();
    let reachable = rank_of(&rows, dim, method);
    DegreeQuotient {
        degree: k,
        alternants: dim,
        reachable,
        quotient_dim: dim - reachable,
    }
}

/// `dim A_k - dim B_k` for a single degree.
pub fn quotient_dimension(n: usize, d: usize, k: u32, opts: &QuotientOptions) -> Result<DegreeQuotient> {
    check_args(n, d)?;
    check_guard(n, d, k, opts)?;
    let table = AlternantTable::new(n, d, k);
    Ok(degree_quotient(k, &table, &positive_powersums(n, d), opts.rank_method))
}

/// Quotient dimensions for every degree `0..=C(n,2)`.
pub fn quotient_report(n: usize, d: usize, opts: &QuotientOptions) -> Result<QuotientReport> {
    check_args(n, d)?;
    let top = (n * (n - 1) / 2) as u32;
    for k in 0..=top {
        check_guard(n, d, k, opts)?;
    }
    let table = AlternantTable::new(n, d, top);
    let powersums = positive_powersums(n, d);
    let degrees: Vec<DegreeQuotient> = (0..=top)
        .into_par_iter()
        .map(|k| degree_quotient(k, &table, &powersums, opts.rank_method))
        .collect();
    let total = degrees.iter().map(|q| q.quotient_dim).sum();
    Ok(QuotientReport { n, d, degrees, total })
}

/// Minimal number of generators of the antisymmetric polynomials as a module
/// over the symmetric ones.
pub fn minimal_generator_count(n: usize, d: usize, opts: &QuotientOptions) -> Result<usize> {
    Ok(quotient_report(n, d, opts)?.total)
}

/// A homogeneous generating set of minimal size: in each degree, the
/// alternants with the smallest row tuples that extend `B_k` to `A_k`.
pub fn minimal_generators(n: usize, d: usize, opts: &QuotientOptions) -> Result<Vec<Alternant>> {
    check_args(n, d)?;
    let top = (n * (n - 1) / 2) as u32;
    for k in 0..=top {
        check_guard(n, d, k, opts)?;
    }
    let table = AlternantTable::new(n, d, top);
    let powersums = positive_powersums(n, d);
    let per_degree: Vec<Vec<Alternant>> = (0..=top)
        .into_par_iter()
        .map(|k| {
            let (coords, rows) = reachable_rows(k, &table, &powersums);
            let mut tracker = SpanTracker::new(coords.dim());
            for r in &rows {
                tracker.insert(r);
            }
            let mut chosen = Vec::new();
            for alt in &table.by_degree[k as usize] {
                if tracker.rank() == coords.dim() {
                    break;
                }
                if tracker.insert(&coords.coordinates(&alt.polynomial)) {
                    chosen.push(alt.clone());
                }
            }
            chosen
        })
        .collect();
    Ok(per_degree.into_iter().flatten().collect())
}

/// Group chosen generators by degree, for reporting.
pub fn degree_histogram(gens: &[Alternant]) -> HashMap<u32, usize> {
    let mut h = HashMap::new();
    for g in gens {
        *h.entry(g.degree()).or_insert(0) += 1;
    }
    h
}
