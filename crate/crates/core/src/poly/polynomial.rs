use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Monomial, MultiIndex};
use crate::error::{Error, Result};

/// Sparse polynomial over ℚ in the variables `x_ij`, `i ∈ [n]`, `j ∈ [d]`.
///
/// Terms are kept in canonical form: no stored coefficient is zero, so
/// structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    n: usize,
    d: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(n: usize, d: usize) -> Self {
        assert!(n >= 1 && d >= 1, "polynomial shape must be non-empty");
        Self {
            n,
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, d: usize, c: BigRational) -> Self {
        Self::from_monomial(Monomial::one(n, d), c)
    }

    pub fn one(n: usize, d: usize) -> Self {
        Self::constant(n, d, BigRational::one())
    }

    /// The variable `x_{i+1, j+1}` (zero-based arguments).
    pub fn var(n: usize, d: usize, i: usize, j: usize) -> Self {
        Self::from_monomial(Monomial::var(n, d, i, j), BigRational::one())
    }

    pub fn from_monomial(m: Monomial, c: BigRational) -> Self {
        let (n, d) = m.shape();
        let mut p = Self::zero(n, d);
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I>(n: usize, d: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = Self::zero(n, d);
        for (m, c) in terms {
            if m.shape() != (n, d) {
                return Err(Error::shape((n, d), m.shape()));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n, self.d)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coefficient(&Monomial::one(self.n, self.d))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        debug_assert_eq!(m.shape(), self.shape());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_shape(&self, other: &Polynomial) {
        assert_eq!(
            self.shape(),
            other.shape(),
            "polynomial shapes differ: {:?} vs {:?}",
            self.shape(),
            other.shape()
        );
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n, self.d);
        }
        Polynomial {
            n: self.n,
            d: self.d,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n, self.d);
        }
        Polynomial {
            n: self.n,
            d: self.d,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(self.n, self.d);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The degree-`j` homogeneous component `f^{(j)}`.
    pub fn homogeneous_component(&self, j: u32) -> Polynomial {
        Polynomial {
            n: self.n,
            d: self.d,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == j)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Nonzero homogeneous components keyed by degree.
    pub fn homogeneous_components(&self) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| Polynomial::zero(self.n, self.d))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(first) => degs.all(|d| d == first),
        }
    }

    /// `D^α p`.
    pub fn differentiate(&self, alpha: &MultiIndex) -> Result<Polynomial> {
        if alpha.shape() != self.shape() {
            return Err(Error::shape(self.shape(), alpha.shape()));
        }
        let a = alpha.entries();
        let mut out = Polynomial::zero(self.n, self.d);
        'terms: for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut exps = m.exponents().to_vec();
            for (e, &k) in exps.iter_mut().zip(a) {
                if k > *e {
                    continue 'terms;
                }
                // falling factorial e (e-1) ... (e-k+1)
                let mut ff = BigInt::one();
                for t in 0..k {
                    ff *= *e - t;
                }
                coef *= BigRational::from_integer(ff);
                *e -= k;
            }
            out.add_term(Monomial::from_flat_unchecked(self.d, exps), coef);
        }
        Ok(out)
    }

    /// Exact value at an `n × d` rational point.
    pub fn evaluate(&self, point: &[Vec<BigRational>]) -> Result<BigRational> {
        check_point_shape(self.shape(), point)?;
        let mut total = BigRational::zero();
        let flat: Vec<&BigRational> = point.iter().flatten().collect();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in flat.iter().zip(m.exponents()) {
                if e > 0 {
                    v *= num_traits::pow::pow((*x).clone(), e as usize);
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Floating-point value; coefficients are rounded to `f64` first.
    pub fn evaluate_f64(&self, point: &[Vec<f64>]) -> Result<f64> {
        check_point_shape(self.shape(), point)?;
        let flat: Vec<f64> = point.iter().flatten().copied().collect();
        let mut total = 0.0;
        for (m, c) in &self.terms {
            let mut v = rational_to_f64(c);
            for (x, &e) in flat.iter().zip(m.exponents()) {
                if e > 0 {
                    v *= x.powi(e as i32);
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Substitute polynomial `images[v]` for the variable with flat index `v`.
    /// All images must share one shape, which becomes the result's shape.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.n * self.d {
            return Err(Error::InvalidArgument(format!(
                "substitution needs {} images, got {}",
                self.n * self.d,
                images.len()
            )));
        }
        let (tn, td) = images[0].shape();
        if let Some(bad) = images.iter().find(|p| p.shape() != (tn, td)) {
            return Err(Error::shape((tn, td), bad.shape()));
        }
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Polynomial::one(tn, td), p.clone()]).collect();
        let mut out = Polynomial::zero(tn, td);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(tn, td, c.clone());
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[v].len() <= e as usize {
                    let next = &powers[v][powers[v].len() - 1] * &images[v];
                    powers[v].push(next);
                }
                term = &term * &powers[v][e as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Multivariate division by a single divisor under graded-lex order.
    /// Returns `(quotient, remainder)` with `self = quotient·divisor + remainder`
    /// and no term of the remainder divisible by the divisor's leading monomial.
    pub fn divide(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        if divisor.shape() != self.shape() {
            return Err(Error::shape(self.shape(), divisor.shape()));
        }
        let Some((lm, lc)) = divisor.leading_term() else {
            return Err(Error::InvalidArgument("division by the zero polynomial".into()));
        };
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rest = self.clone();
        let mut quotient = Polynomial::zero(self.n, self.d);
        let mut remainder = Polynomial::zero(self.n, self.d);
        while let Some((m, c)) = rest.leading_term() {
            let (m, c) = (m.clone(), c.clone());
            if lm.divides(&m) {
                let qm = lm.quotient_of(&m);
                let qc = &c / &lc;
                rest = &rest - &divisor.mul_monomial(&qm, &qc);
                quotient.add_term(qm, qc);
            } else {
                rest.terms.remove(&m);
                remainder.add_term(m, c);
            }
        }
        Ok((quotient, remainder))
    }

    /// Multiply by the least positive integer making every coefficient integral.
    pub fn clear_denominators(&self) -> Polynomial {
        let lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
        self.scale(&BigRational::from_integer(lcm))
    }

    /// Reinterpret with a different number of rows, keeping the first `n`
    /// rows. Fails when a dropped row carries a nonzero exponent.
    pub fn truncate_rows(&self, n: usize) -> Result<Polynomial> {
        let d = self.d;
        let mut out = Polynomial::zero(n, d);
        for (m, c) in &self.terms {
            if m.exponents()[n * d..].iter().any(|&e| e != 0) {
                return Err(Error::InvalidArgument("dropped row is not constant".into()));
            }
            out.add_term(Monomial::from_flat_unchecked(d, m.exponents()[..n * d].to_vec()), c.clone());
        }
        Ok(out)
    }
}

pub(crate) fn check_point_shape<T>(shape: (usize, usize), point: &[Vec<T>]) -> Result<()> {
    let found = (point.len(), point.first().map_or(0, Vec::len));
    if found != shape || point.iter().any(|r| r.len() != shape.1) {
        return Err(Error::shape(shape, found));
    }
    Ok(())
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.check_shape(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.check_shape(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_shape(rhs);
        let mut out = Polynomial::zero(self.n, self.d);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            n: self.n,
            d: self.d,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(mut iter: I) -> Polynomial {
        let first = iter.next().expect("sum of an empty polynomial iterator has no shape");
        iter.fold(first, |acc, p| &acc + &p)
    }
}

pub(crate) fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.degree() == 0 {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&abs))?;
            }
        }
        Ok(())
    }
}
