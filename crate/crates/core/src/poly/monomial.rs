use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Monomial `x^A` for an `n × d` exponent matrix `A`, stored row-major.
///
/// Ordering is graded lexicographic: total degree first, then the flattened
/// exponent vector compared lexicographically under
/// `x_11 > x_12 > … > x_1d > x_21 > … > x_nd`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    d: usize,
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn new(n: usize, d: usize, exps: Vec<u32>) -> Result<Self> {
        if d == 0 || n == 0 {
            return Err(Error::InvalidArgument("monomial shape must be non-empty".into()));
        }
        if exps.len() != n * d {
            return Err(Error::InvalidArgument(format!(
                "expected {} exponents for n={n}, d={d}, got {}",
                n * d,
                exps.len()
            )));
        }
        let degree = exps.iter().sum();
        Ok(Self { d, exps, degree })
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let d = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidArgument("ragged exponent matrix".into()));
        }
        Self::new(rows.len(), d, rows.concat())
    }

    pub fn one(n: usize, d: usize) -> Self {
        Self {
            d,
            exps: vec![0; n * d],
            degree: 0,
        }
    }

    /// The variable `x_{i+1, j+1}` (indices are zero-based here).
    pub fn var(n: usize, d: usize, i: usize, j: usize) -> Self {
        let mut m = Self::one(n, d);
        m.exps[i * d + j] = 1;
        m.degree = 1;
        m
    }

    pub(crate) fn from_flat_unchecked(d: usize, exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Self { d, exps, degree }
    }

    pub fn n(&self) -> usize {
        self.exps.len() / self.d
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n(), self.d)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.exps[i * self.d + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.exps[i * self.d..(i + 1) * self.d]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.exps.chunks(self.d)
    }

    pub fn row_vectors(&self) -> Vec<Vec<u32>> {
        self.rows().map(<[u32]>::to_vec).collect()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.shape(), other.shape());
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial {
            d: self.d,
            exps,
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.shape() == other.shape() && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let exps = other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect();
        Monomial {
            d: self.d,
            exps,
            degree: other.degree - self.degree,
        }
    }

    /// Monomial whose row `targets[i]` is row `i` of `self`.
    pub(crate) fn relabel_rows(&self, targets: &[usize]) -> Monomial {
        let d = self.d;
        let mut exps = vec![0; self.exps.len()];
        for (i, &t) in targets.iter().enumerate() {
            exps[t * d..(t + 1) * d].copy_from_slice(self.row(i));
        }
        Monomial {
            d,
            exps,
            degree: self.degree,
        }
    }

    /// True when any two rows coincide.
    pub fn has_repeated_rows(&self) -> bool {
        let rows: Vec<&[u32]> = self.rows().collect();
        (0..rows.len()).any(|i| (i + 1..rows.len()).any(|j| rows[i] == rows[j]))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.d, self.exps.len())
            .cmp(&(other.d, other.exps.len()))
            .then(self.degree.cmp(&other.degree))
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

/// Graded-lex comparison of two monomials of the same shape.
pub fn compare_graded_lex(a: &Monomial, b: &Monomial) -> Result<Ordering> {
    if a.shape() != b.shape() {
        return Err(Error::shape(a.shape(), b.shape()));
    }
    Ok(a.cmp(b))
}

/// Graded-lex order on exponent vectors of `Z_{≥0}^d`, used to order the rows
/// of alternant exponent matrices and power-sum indices.
pub fn graded_lex_vec(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (idx, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x_{}_{}", idx / self.d + 1, idx % self.d + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(rows: &[&[u32]]) -> Monomial {
        Monomial::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn degree_is_cached_sum() {
        let m = mono(&[&[2, 1], &[0, 3]]);
        assert_eq!(m.degree(), 6);
        assert_eq!(m.row(1), &[0, 3]);
    }

    #[test]
    fn graded_lex_examples() {
        // x11^2 vs x11 x12 (n=1, d=2)
        let a = mono(&[&[2, 0]]);
        let b = mono(&[&[1, 1]]);
        assert_eq!(compare_graded_lex(&a, &b).unwrap(), Ordering::Greater);
        // x11 vs x21^3 (n=2, d=1)
        let a = mono(&[&[1], &[0]]);
        let b = mono(&[&[0], &[3]]);
        assert_eq!(compare_graded_lex(&a, &b).unwrap(), Ordering::Less);
        // x12 x21 vs x11 x22 (n=2, d=2)
        let a = mono(&[&[0, 1], &[1, 0]]);
        let b = mono(&[&[1, 0], &[0, 1]]);
        assert_eq!(compare_graded_lex(&a, &b).unwrap(), Ordering::Less);
    }

    #[test]
    fn comparing_different_shapes_fails() {
        let a = mono(&[&[1]]);
        let b = mono(&[&[1], &[0]]);
        assert!(matches!(
            compare_graded_lex(&a, &b),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn relabel_moves_rows() {
        let m = mono(&[&[1, 0], &[0, 2], &[3, 3]]);
        let r = m.relabel_rows(&[2, 0, 1]);
        assert_eq!(r.row_vectors(), vec![vec![0, 2], vec![3, 3], vec![1, 0]]);
    }

    #[test]
    fn repeated_rows() {
        assert!(mono(&[&[1, 0], &[0, 1], &[1, 0]]).has_repeated_rows());
        assert!(!mono(&[&[1, 0], &[0, 1]]).has_repeated_rows());
    }

    #[test]
    fn display() {
        assert_eq!(mono(&[&[2, 0], &[0, 1]]).to_string(), "x_1_1^2*x_2_2");
        assert_eq!(Monomial::one(2, 2).to_string(), "1");
    }
}
