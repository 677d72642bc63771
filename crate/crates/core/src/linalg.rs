//! Exact linear algebra over ℚ: fraction-free (Bareiss) elimination for ranks
//! and particular solutions, an incremental span tracker, and a modular rank
//! fast path.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// 2^62 - 57, the largest prime below 2^62.
pub const MODULAR_PRIME: u64 = 4_611_686_018_427_387_847;

/// Scale a rational row by the lcm of its denominators, giving an integer row
/// spanning the same line.
pub fn clear_denominators(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    row.iter()
        .map(|q| q.numer() * (&lcm / q.denom()))
        .collect()
}

/// In-place fraction-free forward elimination. Returns the pivot columns in
/// order; rows `0..pivots.len()` are the echelon rows afterwards. Pivots are
/// taken in the leftmost available column among the first `pivot_cols`;
/// every column of the rows is updated.
fn bareiss_forward(m: &mut [Vec<BigInt>], pivot_cols: usize) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in rest.iter_mut() {
            let factor = row[c].clone();
            if factor.is_zero() {
                for v in row[c + 1..].iter_mut() {
                    if !v.is_zero() {
                        *v = (&*v * pivot) / &prev;
                    }
                }
            } else {
                for j in c + 1..cols {
                    let v = &row[j] * pivot - &factor * &pivot_row[j];
                    row[j] = v / &prev;
                }
                row[c] = BigInt::zero();
            }
        }
        prev = pivot.clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Exact rank of an integer matrix given as rows.
pub fn rank_exact(mut rows: Vec<Vec<BigInt>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    bareiss_forward(&mut rows, cols).len()
}

/// Exact rank of a rational matrix given as rows.
pub fn rank_rational(rows: &[Vec<BigRational>]) -> usize {
    rank_exact(rows.iter().map(|r| clear_denominators(r)).collect())
}

fn reduce_mod(v: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = v.mod_floor(&m);
    r.to_u64().expect("residue fits in u64")
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Rank of an integer matrix modulo the prime `p`. Never exceeds the rank
/// over ℚ; equal to it unless `p` divides every maximal nonzero minor.
pub fn rank_mod_p(rows: &[Vec<BigInt>], p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|v| reduce_mod(v, p)).collect())
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        if rank == m.len() {
            break;
        }
        let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = pow_mod(m[rank][c], p - 2, p);
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            if row[c] == 0 {
                continue;
            }
            let f = mul_mod(row[c], inv, p);
            for j in c..cols {
                let sub = mul_mod(f, pivot_row[j], p);
                row[j] = (row[j] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Solve `a · x = b` exactly. Returns the particular solution whose free
/// variables are zero, pivoting on the leftmost columns first; `None` when
/// the system is inconsistent.
pub fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    assert_eq!(a.len(), b.len(), "row count of a and b must agree");
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut full = row.clone();
            full.push(rhs.clone());
            clear_denominators(&full)
        })
        .collect();
    let pivots = bareiss_forward(&mut aug, cols);
    let rank = pivots.len();
    if aug[rank..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate().rev() {
        let row = &aug[r];
        let mut acc = BigRational::from_integer(row[cols].clone());
        for (&cc, xv) in pivots[r + 1..].iter().map(|cc| (cc, &x[*cc])) {
            if !row[cc].is_zero() {
                acc -= BigRational::from_integer(row[cc].clone()) * xv;
            }
        }
        x[c] = acc / BigRational::from_integer(row[c].clone());
    }
    Some(x)
}

/// Incrementally maintained reduced row-echelon basis of a subspace of ℚ^dim.
#[derive(Debug, Clone)]
pub struct SpanTracker {
    dim: usize,
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl SpanTracker {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn reduce(&self, v: &mut [BigRational]) {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }

    /// True when `v` lies in the current span.
    pub fn contains(&self, v: &[BigRational]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Zero::is_zero)
    }

    /// Add `v` to the span. Returns true when it was independent.
    pub fn insert(&mut self, v: &[BigRational]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].recip();
        for x in w.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&w) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push((p, w));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    fn is_prime(n: u64) -> bool {
        // deterministic Miller-Rabin for 64-bit inputs
        if n < 2 {
            return false;
        }
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
            if n.is_multiple_of(p) {
                return n == p;
            }
        }
        let mut d = n - 1;
        let mut s = 0;
        while d.is_multiple_of(2) {
            d /= 2;
            s += 1;
        }
        'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
            let mut x = pow_mod(a, d, n);
            if x == 1 || x == n - 1 {
                continue;
            }
            for _ in 1..s {
                x = mul_mod(x, x, n);
                if x == n - 1 {
                    continue 'witness;
                }
            }
            return false;
        }
        true
    }

    #[test]
    fn modulus_is_a_62_bit_prime() {
        assert!(is_prime(MODULAR_PRIME));
        const { assert!(MODULAR_PRIME < 1 << 62 && MODULAR_PRIME > 1 << 61) };
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank_exact(ints(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank_exact(ints(&[&[0, 1, 2], &[1, 0, 3], &[1, 1, 5]])), 2);
        assert_eq!(rank_exact(ints(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank_exact(ints(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]])), 3);
        // zero column in the middle exercises the column-skipping path
        assert_eq!(
            rank_exact(ints(&[&[1, 0, 2, 3], &[2, 0, 4, 7], &[3, 0, 1, 1]])),
            3
        );
    }

    #[test]
    fn modular_rank_agrees_on_small_matrices() {
        let m = ints(&[&[1, 0, 2, 3], &[2, 0, 4, 7], &[3, 0, 6, 10]]);
        assert_eq!(rank_mod_p(&m, MODULAR_PRIME), rank_exact(m.clone()));
        // a matrix singular only modulo 7
        let m = ints(&[&[7, 0], &[0, 1]]);
        assert_eq!(rank_mod_p(&m, 7), 1);
        assert_eq!(rank_exact(m), 2);
    }

    #[test]
    fn solve_particular_solution() {
        let a = vec![vec![q(1), q(1)], vec![q(1), q(-1)]];
        let x = solve(&a, &[q(3), q(1)]).unwrap();
        assert_eq!(x, vec![q(2), q(1)]);

        // underdetermined: free variable set to zero
        let a = vec![vec![q(1), q(1), q(1)]];
        let x = solve(&a, &[q(5)]).unwrap();
        assert_eq!(x, vec![q(5), q(0), q(0)]);

        // inconsistent
        let a = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert!(solve(&a, &[q(1), q(3)]).is_none());
    }

    #[test]
    fn solve_with_rational_entries() {
        let half = BigRational::new(1.into(), 2.into());
        let a = vec![vec![half.clone(), q(0)], vec![q(0), q(3)]];
        let x = solve(&a, &[q(1), half.clone()]).unwrap();
        assert_eq!(x, vec![q(2), BigRational::new(1.into(), 6.into())]);
    }

    #[test]
    fn span_tracker_detects_dependence() {
        let mut t = SpanTracker::new(3);
        assert!(t.insert(&[q(1), q(2), q(0)]));
        assert!(t.insert(&[q(0), q(1), q(1)]));
        assert!(!t.insert(&[q(1), q(3), q(1)]));
        assert!(t.contains(&[q(2), q(5), q(1)]));
        assert!(!t.contains(&[q(0), q(0), q(1)]));
        assert_eq!(t.rank(), 2);
        assert!(t.insert(&[q(0), q(0), q(1)]));
        assert_eq!(t.rank(), 3);
    }
}
