//! Alternants `Alt(x^A)` and the basis of strictly increasing row tuples.

use std::collections::HashMap;

use num_rational::BigRational;

use crate::group::antisymmetrize;
use crate::poly::{graded_lex_vec, Monomial, Polynomial};

/// One alternant `Alt(x^A)` with its defining exponent rows `a_1 < … < a_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alternant {
    pub rows: Vec<Vec<u32>>,
    pub polynomial: Polynomial,
}

impl Alternant {
    pub fn degree(&self) -> u32 {
        self.rows.iter().flatten().sum()
    }

    pub fn monomial(&self) -> Monomial {
        Monomial::from_rows(&self.rows).expect("rectangular rows")
    }
}

/// `Alt(x^A)`.
pub fn alternant(a: &Monomial) -> Polynomial {
    antisymmetrize(&Polynomial::from_monomial(a.clone(), BigRational::from_integer(1.into())))
}

/// Every vector of `Z_{≥0}^d` with total degree `≤ max_degree`, ascending in
/// graded-lex order.
pub fn row_vectors(d: usize, max_degree: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
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
    rec(0, max_degree, &mut cur, &mut out);
    out.sort_by(|a, b| graded_lex_vec(a, b));
    out
}

/// Strictly increasing `n`-tuples of row vectors (graded-lex order) whose
/// total degree is exactly `degree` (or at most `degree` when `at_most`).
/// Tuples come out in lexicographic order of their rows.
pub fn increasing_row_tuples(n: usize, d: usize, degree: u32, at_most: bool) -> Vec<Vec<Vec<u32>>> {
    row_tuples(n, d, degree, at_most, true)
}

/// Row tuples ascending in graded-lex order, strictly when `strict`.
pub(crate) fn row_tuples(n: usize, d: usize, degree: u32, at_most: bool, strict: bool) -> Vec<Vec<Vec<u32>>> {
    let vecs = row_vectors(d, degree);
    let degs: Vec<u32> = vecs.iter().map(|v| v.iter().sum()).collect();
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    #[allow(clippy::too_many_arguments)]
    fn rec(
        n: usize,
        strict: bool,
        start: usize,
        sum: u32,
        degree: u32,
        at_most: bool,
        vecs: &[Vec<u32>],
        degs: &[u32],
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<Vec<u32>>>,
    ) {
        if chosen.len() == n {
            if at_most || sum == degree {
                out.push(chosen.iter().map(|&i| vecs[i].clone()).collect());
            }
            return;
        }
        let remaining = (n - chosen.len()) as u32;
        for i in start..vecs.len() {
            // later rows have degree ≥ degs[i]
            if sum + remaining * degs[i] > degree {
                break;
            }
            chosen.push(i);
            rec(n, strict, if strict { i + 1 } else { i }, sum + degs[i], degree, at_most, vecs, degs, chosen, out);
            chosen.pop();
        }
    }
    rec(n, strict, 0, 0, degree, at_most, &vecs, &degs, &mut chosen, &mut out);
    out
}

/// Alternants of exactly the given degree, in tie-breaking order.
pub fn alternants_of_degree(n: usize, d: usize, degree: u32) -> Vec<Alternant> {
    increasing_row_tuples(n, d, degree, false)
        .into_iter()
        .map(|rows| {
            let m = Monomial::from_rows(&rows).expect("rectangular rows");
            Alternant {
                polynomial: alternant(&m),
                rows,
            }
        })
        .collect()
}

/// `Λ_{n,d}`: alternants of strictly increasing row tuples with total degree
/// at most `C(n,2)`, ordered by degree.
pub fn alternant_basis(n: usize, d: usize) -> Vec<Alternant> {
    let cap = (n * (n - 1) / 2) as u32;
    (0..=cap).flat_map(|k| alternants_of_degree(n, d, k)).collect()
}

/// Coordinates of antisymmetric polynomials in the alternant basis of a fixed
/// degree: the coefficient of the strictly increasing representative `x^A`
/// determines the coefficient of `Alt(x^A)` (up to the factor `n!`).
#[derive(Clone, Debug)]
pub(crate) struct AlternantCoordinates {
    index: HashMap<Monomial, usize>,
}

impl AlternantCoordinates {
    pub(crate) fn new(basis_rows: &[Vec<Vec<u32>>]) -> Self {
        let index = basis_rows
            .iter()
            .enumerate()
            .map(|(i, rows)| (Monomial::from_rows(rows).expect("rectangular rows"), i))
            .collect();
        Self { index }
    }

    pub(crate) fn dim(&self) -> usize {
        self.index.len()
    }

    pub(crate) fn coordinates(&self, p: &Polynomial) -> Vec<BigRational> {
        let mut v = vec![BigRational::from_integer(0.into()); self.index.len()];
        for (m, c) in p.terms() {
            if let Some(&i) = self.index.get(m) {
                v[i] = c.clone();
            }
        }
        v
    }
}

/// Rows strictly increasing in graded-lex order.
pub(crate) fn is_strictly_increasing(m: &Monomial) -> bool {
    let rows: Vec<&[u32]> = m.rows().collect();
    rows.windows(2).all(|w| graded_lex_vec(w[0], w[1]).is_lt())
}
