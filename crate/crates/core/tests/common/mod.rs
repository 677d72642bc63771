#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::Rng;
use symalt::group::Permutation;
use symalt::poly::{Monomial, MultiIndex, Polynomial};

pub fn q(a: i64) -> BigRational {
    BigRational::from_integer(a.into())
}

pub fn frac(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// Random exponent vector of total degree at most `max_deg`.
pub fn random_exps<R: Rng>(rng: &mut R, vars: usize, max_deg: u32) -> Vec<u32> {
    let target = rng.gen_range(0..=max_deg);
    let mut e = vec![0u32; vars];
    for _ in 0..target {
        e[rng.gen_range(0..vars)] += 1;
    }
    e
}

pub fn random_rational<R: Rng>(rng: &mut R) -> BigRational {
    let num = rng.gen_range(-9i64..=9);
    let den = rng.gen_range(1i64..=4);
    frac(if num == 0 { 1 } else { num }, den)
}

pub fn random_poly<R: Rng>(rng: &mut R, n: usize, d: usize, max_deg: u32, max_terms: usize) -> Polynomial {
    let terms = rng.gen_range(1..=max_terms);
    let mut p = Polynomial::zero(n, d);
    for _ in 0..terms {
        let m = Monomial::new(n, d, random_exps(rng, n * d, max_deg)).unwrap();
        p.add_term(m, random_rational(rng));
    }
    p
}

pub fn random_point<R: Rng>(rng: &mut R, n: usize, d: usize) -> Vec<Vec<BigRational>> {
    (0..n)
        .map(|_| (0..d).map(|_| frac(rng.gen_range(-6..=6), rng.gen_range(1..=3))).collect())
        .collect()
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        images.swap(i, rng.gen_range(0..=i));
    }
    Permutation::new(images).unwrap()
}

pub fn random_multiindex<R: Rng>(rng: &mut R, n: usize, d: usize, max_order: u32) -> MultiIndex {
    MultiIndex::new(n, d, random_exps(rng, n * d, max_order)).unwrap()
}

/// Whether two exponent rows coincide, by pairwise comparison.
pub fn has_equal_rows(m: &Monomial) -> bool {
    let rows: Vec<&[u32]> = m.rows().collect();
    (0..rows.len()).any(|i| (i + 1..rows.len()).any(|j| rows[i] == rows[j]))
}

// proptest strategies

pub fn arb_rational() -> impl Strategy<Value = BigRational> {
    (-9i64..=9, 1i64..=5).prop_map(|(a, b)| frac(a, b))
}

pub fn arb_poly(n: usize, d: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    let vars = n * d;
    prop::collection::vec(
        (prop::collection::vec(0u32..=max_deg, vars), arb_rational()),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        let mut p = Polynomial::zero(n, d);
        for (mut e, c) in terms {
            // trim to the degree cap from the front
            let mut total: u32 = e.iter().sum();
            for x in e.iter_mut() {
                while total > max_deg && *x > 0 {
                    *x -= 1;
                    total -= 1;
                }
            }
            p.add_term(Monomial::new(n, d, e).unwrap(), c);
        }
        p
    })
}

pub fn arb_point(n: usize, d: usize) -> impl Strategy<Value = Vec<Vec<BigRational>>> {
    prop::collection::vec(prop::collection::vec(arb_rational(), d), n)
}

pub fn arb_permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

pub fn arb_multiindex(n: usize, d: usize, max_order: u32) -> impl Strategy<Value = MultiIndex> {
    prop::collection::vec(0u32..=max_order, n * d).prop_map(move |mut e| {
        let mut total: u32 = e.iter().sum();
        for x in e.iter_mut() {
            while total > max_order && *x > 0 {
                *x -= 1;
                total -= 1;
            }
        }
        MultiIndex::new(n, d, e).unwrap()
    })
}
