//! Permutations of `[n]`, finite subgroups of `S_n`, their actions on points,
//! polynomials and multi-indices, and the Sym/Alt projectors.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{check_point_shape, MultiIndex, Polynomial};

/// Default cap on generated group sizes (8!).
pub const DEFAULT_GROUP_CAP: usize = 40_320;

/// Above this order invariance predicates only check a generating set.
const FULL_CHECK_LIMIT: usize = 720;

/// A bijection σ on `[n]`, stored zero-based as `images[i] = σ(i)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
    sign: i8,
}

impl Permutation {
    /// Build from zero-based images.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(Error::InvalidArgument(format!(
                    "{images:?} is not a permutation of 0..{n}"
                )));
            }
            seen[v] = true;
        }
        let sign = sign_of(&images);
        Ok(Self { images, sign })
    }

    /// Build from the 1-based one-line notation `[σ(1), …, σ(n)]`.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidArgument("one-line images are 1-based".into()));
        }
        Self::new(images.iter().map(|v| v - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
            sign: 1,
        }
    }

    /// The transposition swapping zero-based `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        let sign = if a == b { 1 } else { -1 };
        Self { images, sign }
    }

    /// The cycle `0 → 1 → … → n-1 → 0`.
    pub fn cycle(n: usize) -> Self {
        Self::new((0..n).map(|i| (i + 1) % n).collect()).expect("cycle is a bijection")
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|v| v + 1).collect()
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n(), "permutations act on different sets");
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
            sign: self.sign * other.sign,
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Permutation {
            images: inv,
            sign: self.sign,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }
}

fn sign_of(images: &[usize]) -> i8 {
    let mut inversions = 0usize;
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            if images[i] > images[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_line().iter().map(usize::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_line().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(de)?;
        Permutation::from_one_line(&v).map_err(serde::de::Error::custom)
    }
}

/// Finite subgroup of `S_n`: elements closed under composition and inverse,
/// together with the generating set it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    n: usize,
    elements: Vec<Permutation>,
    generators: Vec<Permutation>,
}

impl FiniteGroup {
    pub fn trivial(n: usize) -> Self {
        Self {
            n,
            elements: vec![Permutation::identity(n)],
            generators: Vec::new(),
        }
    }

    /// `S_n` generated by adjacent transpositions.
    pub fn symmetric(n: usize) -> Result<Self> {
        generate_subgroup(n, &adjacent_transpositions(n), DEFAULT_GROUP_CAP)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.contains(p)
    }

    /// Elements used by the invariance predicates: everything for small
    /// groups, only the generators otherwise.
    fn witnesses(&self) -> &[Permutation] {
        if self.order() <= FULL_CHECK_LIMIT || self.generators.is_empty() {
            &self.elements
        } else {
            &self.generators
        }
    }
}

pub fn adjacent_transpositions(n: usize) -> Vec<Permutation> {
    (0..n.saturating_sub(1))
        .map(|i| Permutation::transposition(n, i, i + 1))
        .collect()
}

/// Smallest subgroup of `S_n` containing `generators`, by breadth-first
/// closure. Fails once more than `cap` elements are found.
pub fn generate_subgroup(n: usize, generators: &[Permutation], cap: usize) -> Result<FiniteGroup> {
    if let Some(g) = generators.iter().find(|g| g.n() != n) {
        return Err(Error::InvalidArgument(format!(
            "generator {g} does not act on [{n}]"
        )));
    }
    let id = Permutation::identity(n);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut elements = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in generators {
            let q = g.compose(&p);
            if seen.insert(q.clone()) {
                if seen.len() > cap {
                    return Err(Error::GroupTooLarge { cap });
                }
                elements.push(q.clone());
                queue.push_back(q);
            }
        }
    }
    Ok(FiniteGroup {
        n,
        elements,
        generators: generators.to_vec(),
    })
}

/// `σ.x`: row `i` of the result is row `σ(i)` of `x`.
pub fn apply_to_point<T: Clone>(sigma: &Permutation, x: &[Vec<T>]) -> Result<Vec<Vec<T>>> {
    if x.len() != sigma.n() {
        return Err(Error::InvalidArgument(format!(
            "point has {} blocks, permutation acts on {}",
            x.len(),
            sigma.n()
        )));
    }
    Ok(sigma.images().iter().map(|&s| x[s].clone()).collect())
}

/// `p ∘ σ`, satisfying `(p∘σ)(x) = p(σ.x)`.
pub fn apply_to_poly(sigma: &Permutation, p: &Polynomial) -> Result<Polynomial> {
    if sigma.n() != p.n() {
        return Err(Error::InvalidArgument(format!(
            "permutation acts on {} blocks, polynomial has {}",
            sigma.n(),
            p.n()
        )));
    }
    // x^A(σ.x) = Π x_{σ(i)j}^{A_ij}: row i of A moves to row σ(i).
    Polynomial::from_terms(
        p.n(),
        p.d(),
        p.terms().map(|(m, c)| (m.relabel_rows(sigma.images()), c.clone())),
    )
}

/// `σ.α`, sending `e_{i,j}` to `e_{σ^{-1}(i),j}`; entry `(i, j)` of the result
/// is entry `(σ(i), j)` of α.
pub fn permute_multiindex(sigma: &Permutation, alpha: &MultiIndex) -> Result<MultiIndex> {
    let (n, d) = alpha.shape();
    if n != sigma.n() {
        return Err(Error::InvalidArgument(format!(
            "multi-index has {n} blocks, permutation acts on {}",
            sigma.n()
        )));
    }
    let mut entries = Vec::with_capacity(n * d);
    for i in 0..n {
        for j in 0..d {
            entries.push(alpha.get(sigma.apply(i), j));
        }
    }
    MultiIndex::new(n, d, entries)
}

fn check_group(p: &Polynomial, g: &FiniteGroup) -> Result<()> {
    if p.n() != g.n() {
        return Err(Error::InvalidArgument(format!(
            "group acts on {} blocks, polynomial has {}",
            g.n(),
            p.n()
        )));
    }
    Ok(())
}

/// `(1/|G|) Σ_{σ∈G} p∘σ`.
pub fn symmetrize(p: &Polynomial, g: &FiniteGroup) -> Result<Polynomial> {
    check_group(p, g)?;
    let sum = g
        .elements()
        .par_iter()
        .map(|s| apply_to_poly(s, p).expect("shape checked"))
        .reduce(|| Polynomial::zero(p.n(), p.d()), |a, b| &a + &b);
    Ok(sum.scale(&BigRational::new(1.into(), BigInt::from(g.order()))))
}

/// All of `S_n` as a flat list; `n!` elements.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
        if cur.len() == n {
            out.push(Permutation::new(cur.clone()).expect("bijection"));
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

/// `Alt(p) = (1/n!) Σ_{σ∈S_n} sgn(σ) p∘σ`.
pub fn antisymmetrize(p: &Polynomial) -> Polynomial {
    let perms = all_permutations(p.n());
    let sum = perms
        .par_iter()
        .map(|s| {
            let q = apply_to_poly(s, p).expect("shape matches");
            if s.sign() < 0 {
                -q
            } else {
                q
            }
        })
        .reduce(|| Polynomial::zero(p.n(), p.d()), |a, b| &a + &b);
    sum.scale(&BigRational::new(1.into(), BigInt::from(perms.len())))
}

/// Exact check of `p∘σ = p` for every σ in `G`.
pub fn is_invariant(p: &Polynomial, g: &FiniteGroup) -> bool {
    if p.n() != g.n() {
        return false;
    }
    g.witnesses()
        .iter()
        .all(|s| apply_to_poly(s, p).map(|q| &q == p).unwrap_or(false))
}

/// Exact check of `p∘σ = sgn(σ) p` for every σ in `S_n`: the adjacent
/// transpositions always, and every permutation when `n! ≤ 720`.
pub fn is_antisymmetric(p: &Polynomial) -> bool {
    let n = p.n();
    let neg = -p;
    let check = |s: &Permutation| {
        let q = apply_to_poly(s, p).expect("shape matches");
        if s.sign() < 0 {
            q == neg
        } else {
            &q == p
        }
    };
    if !adjacent_transpositions(n).iter().all(check) {
        return false;
    }
    if n <= 6 {
        all_permutations(n).iter().all(check)
    } else {
        true
    }
}

/// Totally symmetric check (invariance under all of `S_n`).
pub fn is_symmetric(p: &Polynomial) -> bool {
    adjacent_transpositions(p.n())
        .iter()
        .all(|s| apply_to_poly(s, p).map(|q| &q == p).unwrap_or(false))
}

/// Check that a point set is closed under `G`'s action on blocks.
pub fn point_set_closed<T: Clone + Eq + std::hash::Hash>(
    points: &[Vec<Vec<T>>],
    g: &FiniteGroup,
) -> Result<bool> {
    let set: HashSet<&Vec<Vec<T>>> = points.iter().collect();
    for x in points {
        check_point_shape((g.n(), x.first().map_or(0, Vec::len)), x)?;
        for s in g.witnesses() {
            if !set.contains(&apply_to_point(s, x)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
