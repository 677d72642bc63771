//! C^k norms on permutation-closed grids, least-squares fitting, the
//! projection monotonicity checks, and the power-sum counterexample ratio.
//!
//! Grid maxima stand in for sups over the compact domain. All reported
//! totals are grid surrogates.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::antisymmetric::row_vectors;
use crate::error::{Error, Result};
use crate::group::{antisymmetrize, apply_to_point, point_set_closed, symmetrize, FiniteGroup};
use crate::linalg;
use crate::poly::{check_point_shape, format_rational, rational_to_f64, Monomial, MultiIndex, Polynomial};

/// An `n×d` matrix of exact rationals.
pub type Point = Vec<Vec<BigRational>>;

/// Largest grid `build_grid` will materialize.
pub const MAX_GRID_POINTS: usize = 1_000_000;

/// A finite point set closed under a group's action on rows.
#[derive(Clone, Debug)]
pub struct SampleGrid {
    n: usize,
    d: usize,
    points: Vec<Point>,
    group: FiniteGroup,
}

impl SampleGrid {
    /// Sorts and deduplicates `points`, then verifies closure under `group`.
    pub fn from_points(mut points: Vec<Point>, group: &FiniteGroup) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::InvalidArgument("a grid needs at least one point".into()));
        };
        let (n, d) = (first.len(), first.first().map_or(0, Vec::len));
        if n != group.n() {
            return Err(Error::shape((group.n(), d), (n, d)));
        }
        for p in &points {
            check_point_shape((n, d), p)?;
        }
        points.sort();
        points.dedup();
        if !point_set_closed(&points, group)? {
            return Err(Error::GridNotClosed);
        }
        Ok(Self {
            n,
            d,
            points,
            group: group.clone(),
        })
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n, self.d)
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Add the orbits of `extra` under the grid's group.
    pub fn extended(&self, extra: &[Point]) -> Result<Self> {
        let mut points = self.points.clone();
        for x in extra {
            check_point_shape((self.n, self.d), x)?;
            for s in self.group.elements() {
                points.push(apply_to_point(s, x)?);
            }
        }
        Self::from_points(points, &self.group)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "d": self.d,
            "group": self.group.elements(),
            "points": self
                .points
                .iter()
                .map(|p| p.iter().map(|r| r.iter().map(format_rational).collect::<Vec<_>>()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

/// Tensor grid on `Ω^n`, `Ω = Π_j [lo_j, hi_j]`, with `resolution` equispaced
/// values per axis. Closure under `group` is checked, not imposed.
pub fn build_grid(
    lo: &[BigRational],
    hi: &[BigRational],
    resolution: usize,
    n: usize,
    group: &FiniteGroup,
) -> Result<SampleGrid> {
    let d = lo.len();
    if d == 0 || hi.len() != d {
        return Err(Error::InvalidArgument("lo and hi must be nonempty and of equal length".into()));
    }
    if lo.iter().zip(hi).any(|(a, b)| a >= b) {
        return Err(Error::InvalidArgument("degenerate box: need lo < hi in every coordinate".into()));
    }
    if resolution < 2 {
        return Err(Error::InvalidArgument("resolution must be at least 2".into()));
    }
    let total = (resolution as u128).checked_pow((n * d) as u32).unwrap_or(u128::MAX);
    if total > MAX_GRID_POINTS as u128 {
        return Err(Error::InvalidArgument(format!("grid would have {total} points (limit {MAX_GRID_POINTS})")));
    }
    let steps = BigRational::from_integer(BigInt::from(resolution - 1));
    let axes: Vec<Vec<BigRational>> = (0..d)
        .map(|j| {
            let width = &hi[j] - &lo[j];
            (0..resolution)
                .map(|t| &lo[j] + &width * BigRational::from_integer(BigInt::from(t)) / &steps)
                .collect()
        })
        .collect();
    let mut points = Vec::with_capacity(total as usize);
    let mut idx = vec![0usize; n * d];
    loop {
        points.push(
            (0..n)
                .map(|i| (0..d).map(|j| axes[j][idx[i * d + j]].clone()).collect())
                .collect(),
        );
        let mut pos = idx.len();
        loop {
            if pos == 0 {
                return SampleGrid::from_points(points, group);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < resolution {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Scalars the norm layer can accumulate: exact rationals or floats.
pub trait NormValue: Clone + PartialOrd + Send + Sync + fmt::Debug + 'static {
    fn zero_value() -> Self;
    fn magnitude(&self) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn from_rational(q: &BigRational) -> Self;
    fn as_f64(&self) -> f64;
    /// Order-insensitive total.
    fn total(values: &[Self]) -> Self;
    /// Equality for invariance checks: exact, or within `1e-12` for floats.
    fn matches(&self, other: &Self) -> bool;
    /// Slack allowed when comparing `lhs ≤ rhs`; zero for exact values.
    fn slack(rhs: &Self) -> Self;
    fn render(&self) -> String;
}

impl NormValue for BigRational {
    fn zero_value() -> Self {
        Zero::zero()
    }
    fn magnitude(&self) -> Self {
        Signed::abs(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
    fn as_f64(&self) -> f64 {
        rational_to_f64(self)
    }
    fn total(values: &[Self]) -> Self {
        values.iter().fold(<BigRational as Zero>::zero(), |a, b| a + b)
    }
    fn matches(&self, other: &Self) -> bool {
        self == other
    }
    fn slack(_: &Self) -> Self {
        <BigRational as Zero>::zero()
    }
    fn render(&self) -> String {
        format_rational(self)
    }
}

pub const FLOAT_TOLERANCE: f64 = 1e-12;

fn pairwise_sum(v: &[f64]) -> f64 {
    match v.len() {
        0 => 0.0,
        1 => v[0],
        len => {
            let (a, b) = v.split_at(len / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}

impl NormValue for f64 {
    fn zero_value() -> Self {
        0.0
    }
    fn magnitude(&self) -> Self {
        f64::abs(*self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn from_rational(q: &BigRational) -> Self {
        rational_to_f64(q)
    }
    fn as_f64(&self) -> f64 {
        *self
    }
    fn total(values: &[Self]) -> Self {
        pairwise_sum(values)
    }
    fn matches(&self, other: &Self) -> bool {
        (self - other).abs() <= FLOAT_TOLERANCE * (1.0 + f64::abs(*self).max(f64::abs(*other)))
    }
    fn slack(rhs: &Self) -> Self {
        FLOAT_TOLERANCE * (1.0 + f64::abs(*rhs))
    }
    fn render(&self) -> String {
        format!("{self}")
    }
}

/// Something whose derivatives `D^α` can be evaluated at grid points.
pub trait CkTarget: Sync {
    type Value: NormValue;
    fn shape(&self) -> (usize, usize);
    fn derivative_values(&self, alpha: &MultiIndex, points: &[Point]) -> Result<Vec<Self::Value>>;
}

impl CkTarget for Polynomial {
    type Value = BigRational;

    fn shape(&self) -> (usize, usize) {
        Polynomial::shape(self)
    }

    fn derivative_values(&self, alpha: &MultiIndex, points: &[Point]) -> Result<Vec<BigRational>> {
        let dp = self.differentiate(alpha)?;
        points.par_iter().map(|x| dp.evaluate(x)).collect()
    }
}

pub type DerivativeFn = Box<dyn Fn(&[Vec<f64>]) -> f64 + Send + Sync>;

/// A black-box target given by one callback per multi-index.
pub struct CallbackTarget {
    n: usize,
    d: usize,
    callbacks: BTreeMap<MultiIndex, DerivativeFn>,
}

impl CallbackTarget {
    pub fn new(n: usize, d: usize) -> Self {
        Self {
            n,
            d,
            callbacks: BTreeMap::new(),
        }
    }

    pub fn with(mut self, alpha: MultiIndex, f: impl Fn(&[Vec<f64>]) -> f64 + Send + Sync + 'static) -> Self {
        self.insert(alpha, f);
        self
    }

    pub fn insert(&mut self, alpha: MultiIndex, f: impl Fn(&[Vec<f64>]) -> f64 + Send + Sync + 'static) {
        self.callbacks.insert(alpha, Box::new(f));
    }

    pub fn callback(&self, alpha: &MultiIndex) -> Result<&DerivativeFn> {
        self.callbacks
            .get(alpha)
            .ok_or_else(|| Error::MissingDerivative(alpha.to_string()))
    }

    pub fn alphas(&self) -> impl Iterator<Item = &MultiIndex> {
        self.callbacks.keys()
    }
}

fn point_to_f64(x: &Point) -> Vec<Vec<f64>> {
    x.iter().map(|r| r.iter().map(rational_to_f64).collect()).collect()
}

impl CkTarget for CallbackTarget {
    type Value = f64;

    fn shape(&self) -> (usize, usize) {
        (self.n, self.d)
    }

    fn derivative_values(&self, alpha: &MultiIndex, points: &[Point]) -> Result<Vec<f64>> {
        let f = self.callback(alpha)?;
        Ok(points.par_iter().map(|x| f(&point_to_f64(x))).collect())
    }
}

/// The grid surrogate of `Σ_{|α| ≤ k} max_x |D^α f(x)|`.
#[derive(Clone, Debug, PartialEq)]
pub struct CkReport<V> {
    pub k: u32,
    pub per_alpha_max: BTreeMap<MultiIndex, V>,
    pub total: V,
}

impl<V: NormValue> CkReport<V> {
    /// `alpha,max` rows followed by a `total` line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("alpha,max\n");
        for (a, v) in &self.per_alpha_max {
            out.push_str(&format!("{a},{}\n", v.render()));
        }
        out.push_str(&format!("total,{}\n", self.total.render()));
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Row {
            alpha: Vec<u32>,
            max: String,
        }
        serde_json::json!({
            "k": self.k,
            "surrogate": "grid",
            "per_alpha_max": self
                .per_alpha_max
                .iter()
                .map(|(a, v)| Row { alpha: a.entries().to_vec(), max: v.render() })
                .collect::<Vec<_>>(),
            "total": self.total.render(),
        })
    }
}

fn max_abs<V: NormValue>(values: &[V]) -> V {
    values.iter().fold(V::zero_value(), |m, v| {
        let a = v.magnitude();
        if a > m {
            a
        } else {
            m
        }
    })
}

fn check_target_shape<T: CkTarget + ?Sized>(f: &T, grid: &SampleGrid) -> Result<()> {
    if f.shape() != grid.shape() {
        return Err(Error::shape(grid.shape(), f.shape()));
    }
    Ok(())
}

fn report_with<V: NormValue>(n: usize, d: usize, k: u32, values: impl Fn(&MultiIndex) -> Result<Vec<V>>) -> Result<CkReport<V>> {
    let mut per_alpha_max = BTreeMap::new();
    for alpha in MultiIndex::all_up_to(n, d, k) {
        let m = max_abs(&values(&alpha)?);
        per_alpha_max.insert(alpha, m);
    }
    let maxima: Vec<V> = per_alpha_max.values().cloned().collect();
    Ok(CkReport {
        k,
        total: V::total(&maxima),
        per_alpha_max,
    })
}

pub fn ck_norm_on_grid<T: CkTarget + ?Sized>(f: &T, grid: &SampleGrid, k: u32) -> Result<CkReport<T::Value>> {
    check_target_shape(f, grid)?;
    let (n, d) = grid.shape();
    report_with(n, d, k, |alpha| f.derivative_values(alpha, grid.points()))
}

/// C^k report of `f - p` on the grid.
pub fn ck_distance<T: CkTarget + ?Sized>(f: &T, p: &Polynomial, grid: &SampleGrid, k: u32) -> Result<CkReport<T::Value>> {
    check_target_shape(f, grid)?;
    if p.shape() != grid.shape() {
        return Err(Error::shape(grid.shape(), p.shape()));
    }
    let (n, d) = grid.shape();
    report_with(n, d, k, |alpha| {
        let fv = f.derivative_values(alpha, grid.points())?;
        let pv = p.derivative_values(alpha, grid.points())?;
        Ok(fv
            .iter()
            .zip(&pv)
            .map(|(a, b)| a.minus(&T::Value::from_rational(b)))
            .collect())
    })
}

/// Central-difference cross-check of the callbacks: for every pair of
/// supplied `α` and `α + e_{ij}`, the largest relative discrepancy between
/// the callback for `α + e_{ij}` and the difference quotient of the one for
/// `α`. Diagnostic only.
pub fn finite_difference_discrepancy(f: &CallbackTarget, grid: &SampleGrid, h: f64) -> Result<f64> {
    let (n, d) = f.shape();
    let mut worst: f64 = 0.0;
    for alpha in f.alphas() {
        let base = f.callback(alpha)?;
        for i in 0..n {
            for j in 0..d {
                let next = alpha.add(&MultiIndex::unit(n, d, i, j))?;
                let Ok(deriv) = f.callback(&next) else { continue };
                for x in grid.points() {
                    let x = point_to_f64(x);
                    let mut plus = x.clone();
                    let mut minus = x.clone();
                    plus[i][j] += h;
                    minus[i][j] -= h;
                    let fd = (base(&plus) - base(&minus)) / (2.0 * h);
                    let exact = deriv(&x);
                    worst = worst.max((fd - exact).abs() / (1.0 + exact.abs()));
                }
            }
        }
    }
    Ok(worst)
}

pub const FINITE_DIFFERENCE_TOLERANCE: f64 = 1e-6;

/// `lhs = ‖f - projected‖`, `rhs = ‖f - P̂‖`, `ok = lhs ≤ rhs (+ slack)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Monotonicity<V> {
    pub lhs: V,
    pub rhs: V,
    pub ok: bool,
}

fn value_index(grid: &SampleGrid) -> HashMap<&Point, usize> {
    grid.points().iter().enumerate().map(|(i, p)| (p, i)).collect()
}

/// Check `f(σ.x) = sign(σ)^{signed} f(x)` on the grid for every given `σ`.
fn check_grid_symmetry<T: CkTarget + ?Sized>(f: &T, grid: &SampleGrid, perms: &[crate::group::Permutation], signed: bool) -> Result<bool> {
    let (n, d) = grid.shape();
    let values = f.derivative_values(&MultiIndex::zero(n, d), grid.points())?;
    let index = value_index(grid);
    for s in perms {
        for (x, v) in grid.points().iter().zip(&values) {
            let y = apply_to_point(s, x)?;
            let Some(&iy) = index.get(&y) else {
                return Err(Error::GridNotClosed);
            };
            let expected = if signed && s.sign() < 0 { v.negated() } else { v.clone() };
            if !values[iy].matches(&expected) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn compare<V: NormValue>(lhs: V, rhs: V) -> Monotonicity<V> {
    let ok = lhs <= rhs.plus(&V::slack(&rhs));
    Monotonicity { lhs, rhs, ok }
}

/// `‖f - Sym_G(P̂)‖ ≤ ‖f - P̂‖` on a `G`-closed grid for `G`-invariant `f`.
pub fn symmetrization_monotonicity_check<T: CkTarget + ?Sized>(
    f: &T,
    p_hat: &Polynomial,
    group: &FiniteGroup,
    grid: &SampleGrid,
    k: u32,
) -> Result<Monotonicity<T::Value>> {
    check_target_shape(f, grid)?;
    if !point_set_closed(grid.points(), group)? {
        return Err(Error::GridNotClosed);
    }
    if !check_grid_symmetry(f, grid, group.elements(), false)? {
        return Err(Error::NotInvariant);
    }
    let projected = symmetrize(p_hat, group)?;
    let lhs = ck_distance(f, &projected, grid, k)?.total;
    let rhs = ck_distance(f, p_hat, grid, k)?.total;
    Ok(compare(lhs, rhs))
}

/// `‖f - Alt(P̂)‖ ≤ ‖f - P̂‖` on an `S_n`-closed grid for antisymmetric `f`.
pub fn antisymmetrization_monotonicity_check<T: CkTarget + ?Sized>(
    f: &T,
    p_hat: &Polynomial,
    grid: &SampleGrid,
    k: u32,
) -> Result<Monotonicity<T::Value>> {
    check_target_shape(f, grid)?;
    let sn = FiniteGroup::symmetric(grid.shape().0)?;
    if !point_set_closed(grid.points(), &sn)? {
        return Err(Error::GridNotClosed);
    }
    if !check_grid_symmetry(f, grid, sn.generators(), true)? {
        return Err(Error::NotAntisymmetric);
    }
    let projected = antisymmetrize(p_hat);
    let lhs = ck_distance(f, &projected, grid, k)?.total;
    let rhs = ck_distance(f, p_hat, grid, k)?.total;
    Ok(compare(lhs, rhs))
}

/// Monomials of total degree `≤ degree`, ascending in graded-lex order.
pub fn monomial_basis(n: usize, d: usize, degree: u32) -> Vec<Monomial> {
    row_vectors(n * d, degree)
        .into_iter()
        .map(|v| Monomial::new(n, d, v).expect("flat exponent vector"))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactFit {
    pub polynomial: Polynomial,
    /// Sum of squared residuals.
    pub residual: BigRational,
}

/// Exact least squares in the monomial basis via the normal equations.
pub fn fit_polynomial(samples: &[(Point, BigRational)], degree: u32, n: usize, d: usize) -> Result<ExactFit> {
    for (x, _) in samples {
        check_point_shape((n, d), x)?;
    }
    let basis = monomial_basis(n, d, degree);
    let design: Vec<Vec<BigRational>> = samples
        .par_iter()
        .map(|(x, _)| {
            basis
                .iter()
                .map(|m| Polynomial::from_monomial(m.clone(), BigRational::one()).evaluate(x))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let rank = linalg::rank_rational(&design);
    if rank < basis.len() {
        return Err(Error::RankDeficient {
            rank,
            columns: basis.len(),
            deficiency: basis.len() - rank,
        });
    }
    let cols = basis.len();
    let gram: Vec<Vec<BigRational>> = (0..cols)
        .into_par_iter()
        .map(|a| {
            (0..cols)
                .map(|b| design.iter().fold(<BigRational as Zero>::zero(), |s, row| s + &row[a] * &row[b]))
                .collect()
        })
        .collect();
    let rhs: Vec<BigRational> = (0..cols)
        .map(|a| design.iter().zip(samples).fold(<BigRational as Zero>::zero(), |s, (row, (_, y))| s + &row[a] * y))
        .collect();
    let coef = linalg::solve(&gram, &rhs).ok_or_else(|| Error::Internal("normal equations unsolvable".into()))?;
    let polynomial = Polynomial::from_terms(n, d, basis.into_iter().zip(coef.iter().cloned()))?;
    let residual = design.iter().zip(samples).fold(<BigRational as Zero>::zero(), |s, (row, (_, y))| {
        let fitted = row.iter().zip(&coef).fold(<BigRational as Zero>::zero(), |a, (r, c)| a + r * c);
        let e = y - fitted;
        s + &e * &e
    });
    Ok(ExactFit { polynomial, residual })
}

#[derive(Clone, Debug, PartialEq)]
pub struct FloatFit {
    pub n: usize,
    pub d: usize,
    pub basis: Vec<Monomial>,
    pub coefficients: Vec<f64>,
    /// Sum of squared residuals.
    pub residual: f64,
}

impl FloatFit {
    pub fn evaluate(&self, x: &[Vec<f64>]) -> Result<f64> {
        check_point_shape((self.n, self.d), x)?;
        Ok(self
            .basis
            .iter()
            .zip(&self.coefficients)
            .map(|(m, c)| c * monomial_f64(m, x))
            .sum())
    }

    /// Nearest rational coefficients.
    pub fn to_polynomial(&self) -> Result<Polynomial> {
        let terms = self
            .basis
            .iter()
            .zip(&self.coefficients)
            .filter_map(|(m, &c)| BigRational::from_float(c).map(|q| (m.clone(), q)));
        Polynomial::from_terms(self.n, self.d, terms)
    }
}

fn monomial_f64(m: &Monomial, x: &[Vec<f64>]) -> f64 {
    let d = m.d();
    m.exponents()
        .iter()
        .enumerate()
        .map(|(v, &e)| x[v / d][v % d].powi(e as i32))
        .product()
}

/// Floating-point least squares (SVD) in the monomial basis.
pub fn fit_polynomial_f64(samples: &[(Vec<Vec<f64>>, f64)], degree: u32, n: usize, d: usize) -> Result<FloatFit> {
    for (x, _) in samples {
        check_point_shape((n, d), x)?;
    }
    let basis = monomial_basis(n, d, degree);
    let cols = basis.len();
    let design = DMatrix::from_fn(samples.len(), cols, |r, c| monomial_f64(&basis[c], &samples[r].0));
    let y = DVector::from_iterator(samples.len(), samples.iter().map(|(_, v)| *v));
    let svd = design.clone().svd(true, true);
    let largest = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let eps = 1e-10 * largest.max(1.0);
    let rank = svd.rank(eps);
    if rank < cols {
        return Err(Error::RankDeficient {
            rank,
            columns: cols,
            deficiency: cols - rank,
        });
    }
    let coef = svd
        .solve(&y, eps)
        .map_err(|e| Error::Internal(format!("least squares failed: {e}")))?;
    let resid = &design * &coef - &y;
    let squares: Vec<f64> = resid.iter().map(|e| e * e).collect();
    Ok(FloatFit {
        n,
        d,
        basis,
        coefficients: coef.iter().cloned().collect(),
        residual: pairwise_sum(&squares),
    })
}

/// One sample of `|f(x(ε))| / ‖η(x(ε))‖` at `x(ε) = (ε, 0)`, with
/// `f = x_1^{4/3} - x_2^{4/3}` and `η(x(ε)) = (ε^3, ε^4, …, ε^{m+2})`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CounterexampleRatio {
    pub eps: f64,
    pub f_val: f64,
    pub eta_norm: f64,
    pub ratio: f64,
}

pub fn counterexample_ratio(eps: &BigRational, m: usize) -> Result<CounterexampleRatio> {
    if !eps.is_positive() || eps > &BigRational::one() {
        return Err(Error::InvalidArgument("need 0 < eps ≤ 1".into()));
    }
    if m < 4 {
        return Err(Error::InvalidArgument(format!("need m ≥ 4, got {m}")));
    }
    // ‖η‖² = Σ_{i=1}^m ε^{2(i+2)}, exact before the square root
    let sq = eps * eps;
    let mut term = sq.pow(3);
    let mut norm_sq = <BigRational as Zero>::zero();
    for _ in 0..m {
        norm_sq += &term;
        term *= &sq;
    }
    let scale = eps.pow(3);
    // ‖η‖ = ε^3 · sqrt(Σ_{i<m} ε^{2i}), kept as a product to avoid underflow
    let eta_norm = rational_to_f64(&scale) * rational_to_f64(&(norm_sq / (&scale * &scale))).sqrt();
    let e = ToPrimitive::to_f64(eps).unwrap_or(f64::NAN);
    let f_val = e.powf(4.0 / 3.0);
    Ok(CounterexampleRatio {
        eps: e,
        f_val,
        eta_norm,
        ratio: f_val / eta_norm,
    })
}
