//! Exact membership tests: antisymmetric module membership over symmetric
//! coefficients, and membership in the ideal generated by positive-degree
//! symmetric polynomials.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::alternants::{is_strictly_increasing, row_tuples, row_vectors};
use crate::error::{Error, Result};
use crate::group::{all_permutations, is_antisymmetric};
use crate::linalg;
use crate::poly::{Monomial, Polynomial};
use crate::symmetric::{enumerate_generators, powersum, GeneratorIndex};

/// Orbit sums `Σ x^{σ.A}` over distinct row rearrangements, one per multiset of
/// rows with total degree `t`. A basis of the degree-`t` symmetric polynomials.
pub fn symmetric_basis(n: usize, d: usize, t: u32) -> Vec<Polynomial> {
    let perms = all_permutations(n);
    row_tuples(n, d, t, false, false)
        .into_iter()
        .map(|rows| {
            let orbit: BTreeSet<Vec<Vec<u32>>> = perms
                .iter()
                .map(|p| (0..n).map(|i| rows[p.apply(i)].clone()).collect())
                .collect();
            let mut out = Polynomial::zero(n, d);
            for r in orbit {
                out.add_term(Monomial::from_rows(&r).expect("rectangular rows"), BigRational::one());
            }
            out
        })
        .collect()
}

fn all_monomials(n: usize, d: usize, t: u32) -> Vec<Monomial> {
    row_vectors(n * d, t)
        .into_iter()
        .filter(|v| v.iter().sum::<u32>() == t)
        .map(|v| Monomial::new(n, d, v).expect("flat exponent vector"))
        .collect()
}

/// Solve `target = Σ_c x_c · columns[c]` matching coefficients on the
/// monomials accepted by `keep`.
fn solve_columns(
    target: &Polynomial,
    columns: &[Polynomial],
    keep: impl Fn(&Monomial) -> bool,
) -> Option<Vec<BigRational>> {
    let mut rows: BTreeMap<&Monomial, usize> = BTreeMap::new();
    for p in columns.iter().chain(std::iter::once(target)) {
        for (m, _) in p.terms() {
            if keep(m) {
                let next = rows.len();
                rows.entry(m).or_insert(next);
            }
        }
    }
    let mut a = vec![vec![BigRational::zero(); columns.len()]; rows.len()];
    for (col, p) in columns.iter().enumerate() {
        for (m, c) in p.terms() {
            if let Some(&r) = rows.get(m) {
                a[r][col] = c.clone();
            }
        }
    }
    let mut b = vec![BigRational::zero(); rows.len()];
    for (m, c) in target.terms() {
        if let Some(&r) = rows.get(m) {
            b[r] = c.clone();
        }
    }
    if columns.is_empty() {
        return b.iter().all(Zero::is_zero).then(Vec::new);
    }
    linalg::solve(&a, &b)
}

/// Symmetric `u_i` with `f = Σ u_i·gens[i]` and `deg u_i ≤ deg f - deg gens[i]`,
/// or `None` when no such combination exists.
pub fn module_membership(f: &Polynomial, gens: &[Polynomial]) -> Result<Option<Vec<Polynomial>>> {
    let (n, d) = f.shape();
    if let Some(g) = gens.iter().find(|g| g.shape() != (n, d)) {
        return Err(Error::shape((n, d), g.shape()));
    }
    if !is_antisymmetric(f) || gens.iter().any(|g| !is_antisymmetric(g)) {
        return Err(Error::NotAntisymmetric);
    }
    let mut u = vec![Polynomial::zero(n, d); gens.len()];
    let Some(top) = f.degree() else {
        return Ok(Some(u));
    };
    let usable: Vec<usize> = (0..gens.len())
        .filter(|&i| gens[i].degree().is_some_and(|g| g <= top))
        .collect();
    let homogeneous = usable.iter().all(|&i| gens[i].is_homogeneous());

    // (target, per-generator multiplier degrees)
    let blocks: Vec<(Polynomial, Vec<Vec<u32>>)> = if homogeneous {
        f.homogeneous_components()
            .into_iter()
            .map(|(t, part)| {
                let degs = usable
                    .iter()
                    .map(|&i| {
                        let g = gens[i].degree().unwrap();
                        if g <= t {
                            vec![t - g]
                        } else {
                            vec![]
                        }
                    })
                    .collect();
                (part, degs)
            })
            .collect()
    } else {
        let degs = usable.iter().map(|&i| (0..=top - gens[i].degree().unwrap()).collect()).collect();
        vec![(f.clone(), degs)]
    };

    let mut basis_cache: BTreeMap<u32, Vec<Polynomial>> = BTreeMap::new();
    for (target, degs) in blocks {
        let mut columns = Vec::new();
        let mut owners = Vec::new();
        for (slot, &i) in usable.iter().enumerate() {
            for &t in &degs[slot] {
                let basis = basis_cache.entry(t).or_insert_with(|| symmetric_basis(n, d, t));
                for b in basis.iter() {
                    columns.push(b * &gens[i]);
                    owners.push((i, b.clone()));
                }
            }
        }
        let Some(x) = solve_columns(&target, &columns, is_strictly_increasing) else {
            return Ok(None);
        };
        for ((i, b), c) in owners.into_iter().zip(x) {
            if !c.is_zero() {
                u[i] = &u[i] + &b.scale(&c);
            }
        }
    }
    let recombined: Polynomial = u
        .iter()
        .zip(gens)
        .fold(Polynomial::zero(n, d), |acc, (ui, g)| &acc + &(ui * g));
    if &recombined != f {
        return Err(Error::Internal("module membership solution does not reproduce f".into()));
    }
    Ok(Some(u))
}

/// Cofactors `q_s` with `p = Σ_{|s| ≥ 1} η_s·q_s`, paired with their generator
/// index, or `None` when `p` is outside the ideal generated by the
/// positive-degree symmetric polynomials.
pub fn ideal_membership(p: &Polynomial) -> Option<Vec<(GeneratorIndex, Polynomial)>> {
    let (n, d) = p.shape();
    let gens: Vec<GeneratorIndex> = enumerate_generators(n, d).into_iter().filter(|g| g.degree() > 0).collect();
    let etas: Vec<Polynomial> = gens.iter().map(|g| powersum(&g.s, n, d).expect("enumerated generator")).collect();
    let mut q = vec![Polynomial::zero(n, d); gens.len()];
    for (t, part) in p.homogeneous_components() {
        let mut columns = Vec::new();
        let mut owners = Vec::new();
        for (gi, g) in gens.iter().enumerate() {
            if g.degree() > t {
                continue;
            }
            for m in all_monomials(n, d, t - g.degree()) {
                columns.push(etas[gi].mul_monomial(&m, &BigRational::one()));
                owners.push((gi, m));
            }
        }
        let x = solve_columns(&part, &columns, |_| true)?;
        for ((gi, m), c) in owners.into_iter().zip(x) {
            if !c.is_zero() {
                q[gi].add_term(m, c);
            }
        }
    }
    Some(gens.into_iter().zip(q).collect())
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

fn multinomial(c: &[u32]) -> BigInt {
    let total: u32 = c.iter().sum();
    c.iter().fold(factorial(total), |acc, &ci| acc / factorial(ci))
}

/// The coefficient of `z^b` in `h_{k,n-k+1}(y_{k,z}, …, y_{n,z})` with
/// `y_{ℓ,z} = Σ_j z_j x_{ℓj}`: the sum over splittings `c_k + … + c_n = b` of
/// `Π_ℓ (|c_ℓ|! / Π_j c_{ℓj}!) x_ℓ^{c_ℓ}`. Rows are 1-based in `k`.
pub fn p_knb(k: usize, n: usize, b: &[u32]) -> Result<Polynomial> {
    let d = b.len();
    if d == 0 {
        return Err(Error::InvalidArgument("b must have at least one entry".into()));
    }
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("need 1 ≤ k ≤ n, got k = {k}, n = {n}")));
    }
    let total: u32 = b.iter().sum();
    if total as usize != k {
        return Err(Error::InvalidArgument(format!("|b| = {total} differs from k = {k}")));
    }
    let first = k - 1;
    let mut out = Polynomial::zero(n, d);
    let mut rows = vec![vec![0u32; d]; n];

    fn vectors_below(rem: &[u32]) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for &r in rem {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u32>| {
                    (0..=r).map(move |v| {
                        let mut p = prefix.clone();
                        p.push(v);
                        p
                    })
                })
                .collect();
        }
        out
    }

    fn rec(row: usize, rem: &[u32], coef: BigInt, rows: &mut Vec<Vec<u32>>, out: &mut Polynomial) {
        let n = rows.len();
        if row == n - 1 {
            rows[row] = rem.to_vec();
            let c = coef * multinomial(rem);
            out.add_term(Monomial::from_rows(rows).expect("rectangular rows"), BigRational::from_integer(c));
            rows[row] = vec![0; rem.len()];
            return;
        }
        for c in vectors_below(rem) {
            let next: Vec<u32> = rem.iter().zip(&c).map(|(r, v)| r - v).collect();
            rows[row] = c.clone();
            rec(row + 1, &next, &coef * multinomial(&c), rows, out);
        }
        rows[row] = vec![0; rem.len()];
    }

    rec(first, b, BigInt::one(), &mut rows, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::antisymmetric::vandermonde;
    use crate::group::{is_symmetric, symmetrize, FiniteGroup};
    use crate::poly::parse;

    #[test]
    fn symmetric_basis_dimensions() {
        // partitions-of-a-multiset counting for (n, d) = (2, 1): degree t gives ⌊t/2⌋ + 1
        for t in 0..6 {
            assert_eq!(symmetric_basis(2, 1, t).len(), (t / 2 + 1) as usize);
        }
        for p in symmetric_basis(3, 2, 3) {
            assert!(is_symmetric(&p));
            assert!(p.is_homogeneous());
        }
    }

    #[test]
    fn constructed_instance() {
        let d1 = vandermonde(2, 2, 1).unwrap();
        let s = parse("x_1_1 + x_2_1", 2, 2).unwrap();
        let f = &d1 * &s;
        let u = module_membership(&f, &[d1]).unwrap().unwrap();
        assert_eq!(u, vec![s]);
    }

    #[test]
    fn generator_itself() {
        let gens = vec![vandermonde(3, 2, 1).unwrap(), vandermonde(3, 2, 2).unwrap()];
        let u = module_membership(&gens[0], &gens).unwrap().unwrap();
        assert_eq!(u, vec![Polynomial::one(3, 2), Polynomial::zero(3, 2)]);
    }

    #[test]
    fn degree_two_example_not_in_vandermonde_span() {
        let f = parse("(x_2_2 - x_1_2)*(x_3_1 - x_1_1) + (x_1_2 - x_3_2)*(x_2_1 - x_1_1)", 3, 2).unwrap();
        let gens = vec![vandermonde(3, 2, 1).unwrap(), vandermonde(3, 2, 2).unwrap()];
        assert_eq!(module_membership(&f, &gens).unwrap(), None);
    }

    #[test]
    fn rejects_non_antisymmetric() {
        let f = parse("x_1_1", 2, 1).unwrap();
        assert!(matches!(module_membership(&f, &[]), Err(Error::NotAntisymmetric)));
    }

    #[test]
    fn non_homogeneous_generators() {
        let d = vandermonde(2, 1, 1).unwrap();
        let g = &d * &parse("1 + x_1_1 + x_2_1", 2, 1).unwrap();
        let f = &g * &parse("x_1_1*x_2_1", 2, 1).unwrap();
        let u = module_membership(&f, &[g]).unwrap().unwrap();
        assert_eq!(u[0], parse("x_1_1*x_2_1", 2, 1).unwrap());
    }

    #[test]
    fn p_knb_examples() {
        assert_eq!(p_knb(1, 2, &[1]).unwrap(), parse("x_1_1 + x_2_1", 2, 1).unwrap());
        let p = p_knb(2, 2, &[1, 1]).unwrap();
        let (lm, lc) = p.leading_term().unwrap();
        assert_eq!(lm, &Monomial::from_rows(&[vec![0, 0], vec![1, 1]]).unwrap());
        assert_eq!(lc, &BigRational::from_integer(2.into()));
        assert!(p_knb(2, 3, &[1, 0]).is_err());
        assert!(p_knb(4, 3, &[4]).is_err());
    }

    #[test]
    fn p_knb_matches_z_expansion() {
        // expand h_{k,n-k+1}(y_k, …, y_n) with z as an extra row, then read off z^b
        let (n, d, k) = (3usize, 2usize, 2usize);
        let m = n - k + 1;
        let y: Vec<Polynomial> = (k - 1..n)
            .map(|l| (0..d).map(|j| &Polynomial::var(n + 1, d, n, j) * &Polynomial::var(n + 1, d, l, j)).sum())
            .collect();
        let mut h = Polynomial::zero(n + 1, d);
        for a in row_vectors(m, k as u32).into_iter().filter(|a| a.iter().sum::<u32>() == k as u32) {
            let mut term = Polynomial::one(n + 1, d);
            for (yl, &e) in y.iter().zip(&a) {
                term = &term * &yl.pow(e);
            }
            h = &h + &term;
        }
        for b in [[2u32, 0], [1, 1], [0, 2]] {
            let mut extracted = Polynomial::zero(n + 1, d);
            for (mono, c) in h.terms() {
                if mono.row(n) == b {
                    let mut exps = mono.exponents().to_vec();
                    for e in &mut exps[n * d..] {
                        *e = 0;
                    }
                    extracted.add_term(Monomial::new(n + 1, d, exps).unwrap(), c.clone());
                }
            }
            assert_eq!(extracted.truncate_rows(n).unwrap(), p_knb(k, n, &b).unwrap());
        }
    }

    #[test]
    fn p_knb_in_ideal() {
        for (k, n, b) in [(1usize, 2usize, vec![1u32]), (2, 2, vec![2]), (2, 3, vec![1, 1]), (3, 3, vec![2, 1])] {
            let p = p_knb(k, n, &b).unwrap();
            let q = ideal_membership(&p).expect("p_knb lies in the ideal");
            let back: Polynomial = q
                .iter()
                .map(|(g, qi)| &powersum(&g.s, n, b.len()).unwrap() * qi)
                .fold(Polynomial::zero(n, b.len()), |a, t| &a + &t);
            assert_eq!(back, p);
        }
    }

    #[test]
    fn ideal_membership_rejects_non_members() {
        // the staircase monomial x_1^0 x_2^1 is not in the ideal for n = 2, d = 1
        assert!(ideal_membership(&parse("x_2_1", 2, 1).unwrap()).is_none());
        assert!(ideal_membership(&Polynomial::one(2, 1)).is_none());
        let s = symmetrize(&parse("x_1_1^2*x_2_1", 2, 1).unwrap(), &FiniteGroup::symmetric(2).unwrap()).unwrap();
        assert!(ideal_membership(&s).is_some());
    }
}
