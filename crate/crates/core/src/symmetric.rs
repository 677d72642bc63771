//! Multi-symmetric power sums `η_s(x) = Σ_i Π_j x_ij^{s_j}` (`|s| ≤ n`), the
//! Deep-Sets embedding `φ` and rewriting of totally symmetric polynomials as
//! polynomials in the `η_s`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::is_symmetric;
use crate::linalg;
use crate::poly::{check_point_shape, format_rational, graded_lex_vec, parse_rational, Monomial, Polynomial};

/// Renders terms as `1/2*eta(1)^2 - 1/2*eta(2)`, generators named by `s`.
impl std::fmt::Display for PowerSumExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let neg = t.coef < BigRational::zero();
            let mag = if neg { -t.coef.clone() } else { t.coef.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> = t
                .powers
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| {
                    let s: Vec<String> = self.generators[i].s.iter().map(u32::to_string).collect();
                    let name = format!("eta({})", s.join(","));
                    if p == 1 {
                        name
                    } else {
                        format!("{name}^{p}")
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&mag), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Index `s ∈ Z_{≥0}^d` of a power-sum generator together with its position
/// in the fixed graded-lex enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorIndex {
    pub s: Vec<u32>,
    pub ordinal: usize,
}

impl GeneratorIndex {
    pub fn degree(&self) -> u32 {
        self.s.iter().sum()
    }
}

/// All `s` with `|s| ≤ n`, increasing in graded-lex order. There are
/// `C(n+d, n)` of them.
pub fn enumerate_generators(n: usize, d: usize) -> Vec<GeneratorIndex> {
    let mut all = Vec::new();
    let mut cur = vec![0u32; d];
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[pos] = v;
            rec(pos + 1, left - v, cur, out);
        }
        cur[pos] = 0;
    }
    rec(0, n as u32, &mut cur, &mut all);
    all.sort_by(|a, b| graded_lex_vec(a, b));
    all.into_iter()
        .enumerate()
        .map(|(ordinal, s)| GeneratorIndex { s, ordinal })
        .collect()
}

/// `η_s` as a polynomial in `n × d` variables.
pub fn powersum(s: &[u32], n: usize, d: usize) -> Result<Polynomial> {
    if s.len() != d {
        return Err(Error::InvalidArgument(format!(
            "power-sum index has length {}, expected d={d}",
            s.len()
        )));
    }
    let deg: u32 = s.iter().sum();
    if deg as usize > n {
        return Err(Error::InvalidArgument(format!(
            "|s| = {deg} exceeds n = {n}; not a generator"
        )));
    }
    let mut p = Polynomial::zero(n, d);
    for i in 0..n {
        let mut exps = vec![0u32; n * d];
        exps[i * d..(i + 1) * d].copy_from_slice(s);
        p.add_term(Monomial::new(n, d, exps)?, BigRational::one());
    }
    Ok(p)
}

/// `φ(ξ) = (h_s(ξ))_s` with `h_s(ξ) = Π_j ξ_j^{s_j}`, in generator order.
pub fn phi_embed(xi: &[BigRational], n: usize, d: usize) -> Result<Vec<BigRational>> {
    if xi.len() != d {
        return Err(Error::InvalidArgument(format!(
            "embedding input has length {}, expected d={d}",
            xi.len()
        )));
    }
    Ok(enumerate_generators(n, d)
        .iter()
        .map(|g| {
            g.s.iter()
                .zip(xi)
                .fold(BigRational::one(), |acc, (&e, x)| acc * num_traits::pow::pow(x.clone(), e as usize))
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSumTerm {
    pub coef: BigRational,
    /// Exponent of each generator, indexed by ordinal.
    pub powers: Vec<u32>,
}

/// `Σ_k C_k Π_i η_i^{k_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSumExpr {
    n: usize,
    d: usize,
    generators: Vec<GeneratorIndex>,
    terms: Vec<PowerSumTerm>,
}

impl PowerSumExpr {
    /// Build from terms, merging duplicate power vectors and dropping zeros.
    pub fn new(n: usize, d: usize, terms: Vec<PowerSumTerm>) -> Result<Self> {
        let generators = enumerate_generators(n, d);
        let m = generators.len();
        let mut merged: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        for t in terms {
            if t.powers.len() != m {
                return Err(Error::InvalidArgument(format!(
                    "power vector has length {}, expected M={m}",
                    t.powers.len()
                )));
            }
            *merged.entry(t.powers).or_insert_with(BigRational::zero) += t.coef;
        }
        let terms = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(powers, coef)| PowerSumTerm { coef, powers })
            .collect();
        Ok(Self { n, d, generators, terms })
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n, self.d)
    }

    /// Embedding dimension `M`.
    pub fn embedding_dim(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[GeneratorIndex] {
        &self.generators
    }

    pub fn terms(&self) -> &[PowerSumTerm] {
        &self.terms
    }

    /// Expand over the monomial basis.
    pub fn expand(&self) -> Polynomial {
        let mut cache = ProductCache::new(self.n, self.d);
        let mut out = Polynomial::zero(self.n, self.d);
        for t in &self.terms {
            out = &out + &cache.product(&t.powers).scale(&t.coef);
        }
        out
    }

    /// `g(Σ_i φ(x_i))` where `g` is this expression read as a polynomial in
    /// `M` variables.
    pub fn evaluate_deepsets(&self, x: &[Vec<BigRational>]) -> Result<BigRational> {
        check_point_shape((self.n, self.d), x)?;
        let mut pooled = vec![BigRational::zero(); self.embedding_dim()];
        for row in x {
            for (acc, v) in pooled.iter_mut().zip(phi_embed(row, self.n, self.d)?) {
                *acc += v;
            }
        }
        Ok(self.evaluate_pooled(&pooled))
    }

    /// Evaluate the outer polynomial at an already pooled `M`-vector.
    pub fn evaluate_pooled(&self, pooled: &[BigRational]) -> BigRational {
        self.terms.iter().fold(BigRational::zero(), |acc, t| {
            let v = t
                .powers
                .iter()
                .zip(pooled)
                .filter(|(&p, _)| p > 0)
                .fold(t.coef.clone(), |a, (&p, y)| a * num_traits::pow::pow(y.clone(), p as usize));
            acc + v
        })
    }

    pub fn to_json(&self) -> PowerSumExprJson {
        PowerSumExprJson {
            n: self.n,
            d: self.d,
            m: self.embedding_dim(),
            generators: self.generators.iter().map(|g| g.s.clone()).collect(),
            terms: self
                .terms
                .iter()
                .map(|t| PowerSumTermJson {
                    coef: format_rational(&t.coef),
                    powers: t.powers.clone(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &PowerSumExprJson) -> Result<Self> {
        let expr = Self::new(
            j.n,
            j.d,
            j.terms
                .iter()
                .map(|t| {
                    Ok(PowerSumTerm {
                        coef: parse_rational(&t.coef)?,
                        powers: t.powers.clone(),
                    })
                })
                .collect::<Result<Vec<_>>>()?,
        )?;
        if j.m != expr.embedding_dim() {
            return Err(Error::InvalidArgument(format!(
                "M = {} does not match C(n+d, n) = {}",
                j.m,
                expr.embedding_dim()
            )));
        }
        Ok(expr)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerSumExprJson {
    pub n: usize,
    pub d: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub generators: Vec<Vec<u32>>,
    pub terms: Vec<PowerSumTermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerSumTermJson {
    pub coef: String,
    pub powers: Vec<u32>,
}

/// Memoized expansions of power-sum products.
pub(crate) struct ProductCache {
    n: usize,
    d: usize,
    generators: Vec<Polynomial>,
    products: HashMap<Vec<u32>, Polynomial>,
}

impl ProductCache {
    pub(crate) fn new(n: usize, d: usize) -> Self {
        let generators = enumerate_generators(n, d)
            .iter()
            .map(|g| powersum(&g.s, n, d).expect("enumerated indices are generators"))
            .collect();
        Self {
            n,
            d,
            generators,
            products: HashMap::new(),
        }
    }

    pub(crate) fn product(&mut self, powers: &[u32]) -> Polynomial {
        if let Some(p) = self.products.get(powers) {
            return p.clone();
        }
        let out = match powers.iter().rposition(|&e| e > 0) {
            None => Polynomial::one(self.n, self.d),
            Some(i) => {
                let mut smaller = powers.to_vec();
                smaller[i] -= 1;
                &self.product(&smaller) * &self.generators[i]
            }
        };
        self.products.insert(powers.to_vec(), out.clone());
        out
    }
}

/// Power vectors of all products of positive-degree generators with total
/// degree exactly `t`, ordered by number of factors then lexicographically.
fn products_of_degree(gens: &[GeneratorIndex], t: u32) -> Vec<Vec<u32>> {
    let positive: Vec<&GeneratorIndex> = gens.iter().filter(|g| g.degree() > 0).collect();
    let mut out = Vec::new();
    let mut powers = vec![0u32; gens.len()];
    fn rec(
        positive: &[&GeneratorIndex],
        start: usize,
        left: u32,
        powers: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if left == 0 {
            out.push(powers.clone());
            return;
        }
        for k in start..positive.len() {
            let g = positive[k];
            if g.degree() <= left {
                powers[g.ordinal] += 1;
                rec(positive, k, left - g.degree(), powers, out);
                powers[g.ordinal] -= 1;
            }
        }
    }
    rec(&positive, 0, t, &mut powers, &mut out);
    out.sort_by(|a, b| graded_lex_vec(a, b));
    out
}

/// Orbit representative: rows sorted ascending in graded-lex order.
fn is_sorted_rows(m: &Monomial) -> bool {
    let rows: Vec<&[u32]> = m.rows().collect();
    rows.windows(2).all(|w| graded_lex_vec(w[0], w[1]) != std::cmp::Ordering::Greater)
}

/// Rewrite a totally symmetric polynomial over the power-sum generators.
///
/// Works one homogeneous degree at a time: every product of positive-degree
/// generators of that degree is expanded, and the coefficients of the
/// orbit-representative monomials are matched by an exact linear solve. The
/// constant term becomes the empty product.
pub fn rewrite_in_powersums(p: &Polynomial) -> Result<PowerSumExpr> {
    if !is_symmetric(p) {
        return Err(Error::NotSymmetric);
    }
    let (n, d) = p.shape();
    let gens = enumerate_generators(n, d);
    let mut cache = ProductCache::new(n, d);
    let mut terms = Vec::new();
    for (t, component) in p.homogeneous_components() {
        let candidates = products_of_degree(&gens, t);
        let expansions: Vec<Polynomial> = candidates.iter().map(|c| cache.product(c)).collect();
        let mut rows: BTreeMap<Monomial, usize> = BTreeMap::new();
        for poly in expansions.iter().chain(std::iter::once(&component)) {
            for (m, _) in poly.terms() {
                if is_sorted_rows(m) {
                    let next = rows.len();
                    rows.entry(m.clone()).or_insert(next);
                }
            }
        }
        let mut a = vec![vec![BigRational::zero(); candidates.len()]; rows.len()];
        for (col, poly) in expansions.iter().enumerate() {
            for (m, c) in poly.terms() {
                if let Some(&r) = rows.get(m) {
                    a[r][col] = c.clone();
                }
            }
        }
        let mut b = vec![BigRational::zero(); rows.len()];
        for (m, c) in component.terms() {
            if let Some(&r) = rows.get(m) {
                b[r] = c.clone();
            }
        }
        let x = linalg::solve(&a, &b).ok_or_else(|| {
            Error::Internal(format!("no power-sum representation found in degree {t}"))
        })?;
        for (powers, coef) in candidates.into_iter().zip(x) {
            if !coef.is_zero() {
                terms.push(PowerSumTerm { coef, powers });
            }
        }
    }
    let expr = PowerSumExpr::new(n, d, terms)?;
    debug_assert_eq!(&expr.expand(), p);
    Ok(expr)
}

/// `C(n+d, n)`.
pub fn embedding_dimension(n: usize, d: usize) -> BigInt {
    crate::antisymmetric::binomial(n as u64 + d as u64, n as u64)
}
