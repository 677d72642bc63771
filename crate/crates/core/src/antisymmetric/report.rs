//! Bounds and exact generator counts in one record.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::bounds::{catalan_exact, decompose_nrj, lower_bound, upper_bound};
use super::quotient::{minimal_generator_count, minimal_generators, QuotientOptions};
use super::vandermonde;
use crate::error::{Error, Result};
use crate::poly::{Polynomial, PolynomialJson};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExactMethod {
    D1,
    N2,
    CatalanD2,
    QuotientRank,
    None,
}

impl ExactMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            ExactMethod::D1 => "d1",
            ExactMethod::N2 => "n2",
            ExactMethod::CatalanD2 => "catalan_d2",
            ExactMethod::QuotientRank => "quotient_rank",
            ExactMethod::None => "none",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorReport {
    pub n: usize,
    pub d: usize,
    pub r: u64,
    pub j: u64,
    pub lower_bound: BigInt,
    pub upper_bound: BigInt,
    pub exact: Option<BigInt>,
    pub exact_method: ExactMethod,
    pub generators: Option<Vec<Polynomial>>,
}

#[derive(Serialize)]
struct ReportJson {
    n: usize,
    d: usize,
    r: u64,
    j: u64,
    lower_bound: String,
    upper_bound: String,
    exact: Option<String>,
    exact_method: ExactMethod,
    generators: Option<Vec<PolynomialJson>>,
}

impl GeneratorReport {
    /// JSON with big integers as decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        let j = ReportJson {
            n: self.n,
            d: self.d,
            r: self.r,
            j: self.j,
            lower_bound: self.lower_bound.to_string(),
            upper_bound: self.upper_bound.to_string(),
            exact: self.exact.as_ref().map(BigInt::to_string),
            exact_method: self.exact_method,
            generators: self
                .generators
                .as_ref()
                .map(|gs| gs.iter().map(PolynomialJson::from).collect()),
        };
        serde_json::to_value(j).expect("report serializes")
    }
}

/// Bounds always; the exact count by the cheapest applicable route: `d = 1`
/// gives 1, `n = 2` gives `d`, `d = 2` gives the Catalan number, and anything
/// else falls back to quotient ranks when the monomial guard allows.
pub fn generator_report(n: usize, d: usize, want_generators: bool, opts: &QuotientOptions) -> Result<GeneratorReport> {
    if n < 2 || d < 1 {
        return Err(Error::InvalidArgument("reports need n ≥ 2 and d ≥ 1".into()));
    }
    let nrj = decompose_nrj(n as u64, d as u64)?;
    let lower = lower_bound(n as u64, d as u64)?;
    let upper = upper_bound(n as u64, d as u64)?;

    let (exact, method) = if d == 1 {
        (Some(BigInt::from(1)), ExactMethod::D1)
    } else if n == 2 {
        (Some(BigInt::from(d)), ExactMethod::N2)
    } else if d == 2 {
        (Some(catalan_exact(n as u64)), ExactMethod::CatalanD2)
    } else {
        match minimal_generator_count(n, d, opts) {
            Ok(c) => (Some(BigInt::from(c)), ExactMethod::QuotientRank),
            Err(Error::GuardExceeded { .. }) => (None, ExactMethod::None),
            Err(e) => return Err(e),
        }
    };

    let generators = if !want_generators {
        None
    } else if d == 1 || n == 2 {
        Some((1..=d).map(|l| vandermonde(n, d, l)).collect::<Result<Vec<_>>>()?)
    } else {
        match minimal_generators(n, d, opts) {
            Ok(gs) => Some(gs.into_iter().map(|a| a.polynomial).collect()),
            Err(Error::GuardExceeded { .. }) => None,
            Err(e) => return Err(e),
        }
    };

    Ok(GeneratorReport {
        n,
        d,
        r: nrj.r,
        j: nrj.j,
        lower_bound: lower,
        upper_bound: upper,
        exact,
        exact_method: method,
        generators,
    })
}
