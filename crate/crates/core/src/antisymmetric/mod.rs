//! Antisymmetric polynomials as a module over the symmetric ones.

mod alternants;
mod bounds;
mod membership;
mod quotient;
mod report;

use num_rational::BigRational;

pub use alternants::{
    alternant, alternant_basis, alternants_of_degree, increasing_row_tuples, row_vectors, Alternant,
};
pub use bounds::{
    binomial, catalan_exact, decompose_nrj, lower_bound, scientific_3sf, upper_bound, NrjDecomposition,
};
pub use membership::{ideal_membership, module_membership, p_knb, symmetric_basis};
pub use quotient::{
    degree_histogram, minimal_generator_count, minimal_generators, quotient_dimension, quotient_report,
    DegreeQuotient, QuotientOptions, QuotientReport, RankMethod, DEFAULT_MONOMIAL_LIMIT,
};
pub use report::{generator_report, ExactMethod, GeneratorReport};

use crate::error::{Error, Result};
use crate::group::{is_antisymmetric, is_symmetric};
use crate::poly::Polynomial;

/// `D_l(x) = Π_{i<j} (x_{il} - x_{jl})`, with `l` 1-based.
pub fn vandermonde(n: usize, d: usize, l: usize) -> Result<Polynomial> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("Vandermonde needs n ≥ 2, got {n}")));
    }
    if l == 0 || l > d {
        return Err(Error::InvalidArgument(format!("coordinate {l} outside 1..={d}")));
    }
    let mut out = Polynomial::one(n, d);
    for i in 0..n {
        for j in i + 1..n {
            let diff = &Polynomial::var(n, d, i, l - 1) - &Polynomial::var(n, d, j, l - 1);
            out = &out * &diff;
        }
    }
    Ok(out)
}

/// For `d = 1`, the symmetric `g` with `f = D·g`.
pub fn factor_d1(f: &Polynomial) -> Result<Polynomial> {
    let (n, d) = f.shape();
    if d != 1 {
        return Err(Error::InvalidArgument(format!("factor_d1 needs d = 1, got d = {d}")));
    }
    if !is_antisymmetric(f) {
        return Err(Error::NotAntisymmetric);
    }
    if f.is_zero() {
        return Ok(Polynomial::zero(n, d));
    }
    if n < 2 {
        // empty Vandermonde product
        return Ok(f.clone());
    }
    let (q, r) = f.divide(&vandermonde(n, 1, 1)?)?;
    if !r.is_zero() {
        return Err(Error::Internal("nonzero remainder dividing by the Vandermonde".into()));
    }
    if !is_symmetric(&q) {
        return Err(Error::Internal("Vandermonde cofactor is not symmetric".into()));
    }
    Ok(q)
}

/// For `n = 2`, symmetric `g_1, …, g_d` with `f = Σ_l D_l·g_l`.
///
/// In `y_1 = x_1 - x_2`, `y_2 = x_1 + x_2` an antisymmetric `f` is odd in `y_1`,
/// so each monomial has an odd exponent in some `y_{1j}`; the first such `j`
/// takes the monomial (divided by `y_{1j}`) into `g_j`.
pub fn decompose_n2(f: &Polynomial) -> Result<Vec<Polynomial>> {
    let (n, d) = f.shape();
    if n != 2 {
        return Err(Error::InvalidArgument(format!("decompose_n2 needs n = 2, got n = {n}")));
    }
    if !is_antisymmetric(f) {
        return Err(Error::NotAntisymmetric);
    }
    let half = BigRational::new(1.into(), 2.into());
    let y = |i: usize, j: usize| Polynomial::var(2, d, i, j);

    // x_{1j} = (y_{1j} + y_{2j})/2, x_{2j} = (y_{2j} - y_{1j})/2
    let mut to_y = Vec::with_capacity(2 * d);
    for j in 0..d {
        to_y.push((&y(0, j) + &y(1, j)).scale(&half));
    }
    for j in 0..d {
        to_y.push((&y(1, j) - &y(0, j)).scale(&half));
    }
    let fy = f.substitute(&to_y)?;

    let mut gy = vec![Polynomial::zero(2, d); d];
    for (m, c) in fy.terms() {
        let row1 = m.row(0);
        let Some(j) = row1.iter().position(|e| e % 2 == 1) else {
            return Err(Error::Internal("even part in y_1 does not vanish".into()));
        };
        let mut exps = m.exponents().to_vec();
        exps[j] -= 1;
        let cof = crate::poly::Monomial::new(2, d, exps)?;
        gy[j].add_term(cof, c.clone());
    }

    // y_{1j} = x_{1j} - x_{2j}, y_{2j} = x_{1j} + x_{2j}
    let x = |i: usize, j: usize| Polynomial::var(2, d, i, j);
    let mut to_x = Vec::with_capacity(2 * d);
    for j in 0..d {
        to_x.push(&x(0, j) - &x(1, j));
    }
    for j in 0..d {
        to_x.push(&x(0, j) + &x(1, j));
    }
    let gs = gy
        .iter()
        .map(|g| g.substitute(&to_x))
        .collect::<Result<Vec<_>>>()?;
    if gs.iter().any(|g| !is_symmetric(g)) {
        return Err(Error::Internal("n = 2 cofactor is not symmetric".into()));
    }
    Ok(gs)
}

/// `Σ_l D_l·g_l`.
pub fn recombine_n2(gs: &[Polynomial], d: usize) -> Result<Polynomial> {
    let mut out = Polynomial::zero(2, d);
    for (l, g) in gs.iter().enumerate() {
        out = &out + &(&vandermonde(2, d, l + 1)? * g);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{is_invariant, FiniteGroup};
    use crate::poly::parse;

    #[test]
    fn vandermonde_examples() {
        assert_eq!(vandermonde(2, 1, 1).unwrap(), parse("x_1_1 - x_2_1", 2, 1).unwrap());
        let d3 = vandermonde(3, 1, 1).unwrap();
        assert_eq!(
            d3,
            parse("(x_1_1 - x_2_1)*(x_1_1 - x_3_1)*(x_2_1 - x_3_1)", 3, 1).unwrap()
        );
        assert_eq!(d3.degree(), Some(3));
        let d32 = vandermonde(3, 2, 2).unwrap();
        assert_eq!(
            d32,
            parse("(x_1_2 - x_2_2)*(x_1_2 - x_3_2)*(x_2_2 - x_3_2)", 3, 2).unwrap()
        );
        assert!(is_antisymmetric(&d32));
        assert!(vandermonde(3, 2, 3).is_err());
        assert!(vandermonde(3, 2, 0).is_err());
    }

    #[test]
    fn factor_d1_examples() {
        let f = parse("x_1_1^2*x_2_1 - x_1_1*x_2_1^2", 2, 1).unwrap();
        assert_eq!(factor_d1(&f).unwrap(), parse("x_1_1*x_2_1", 2, 1).unwrap());
        assert!(factor_d1(&Polynomial::zero(3, 1)).unwrap().is_zero());
        let d = vandermonde(4, 1, 1).unwrap();
        assert_eq!(factor_d1(&d).unwrap(), Polynomial::one(4, 1));
        assert!(matches!(
            factor_d1(&parse("x_1_1", 2, 1).unwrap()),
            Err(Error::NotAntisymmetric)
        ));
        assert!(factor_d1(&vandermonde(2, 2, 1).unwrap()).is_err());
    }

    #[test]
    fn decompose_n2_examples() {
        let g = decompose_n2(&parse("x_1_1 - x_2_1", 2, 2).unwrap()).unwrap();
        assert_eq!(g, vec![Polynomial::one(2, 2), Polynomial::zero(2, 2)]);

        let f = parse("x_1_1*x_2_2 - x_2_1*x_1_2", 2, 2).unwrap();
        let g = decompose_n2(&f).unwrap();
        assert_eq!(recombine_n2(&g, 2).unwrap(), f);
        let s2 = FiniteGroup::symmetric(2).unwrap();
        assert!(g.iter().all(|gi| is_invariant(gi, &s2)));
        assert_eq!(g[0], parse("1/2*x_1_2 + 1/2*x_2_2", 2, 2).unwrap());
        assert_eq!(g[1], parse("-1/2*x_1_1 - 1/2*x_2_1", 2, 2).unwrap());

        let g = decompose_n2(&Polynomial::zero(2, 3)).unwrap();
        assert_eq!(g.len(), 3);
        assert!(g.iter().all(Polynomial::is_zero));

        assert!(decompose_n2(&vandermonde(3, 2, 1).unwrap()).is_err());
        assert!(matches!(
            decompose_n2(&parse("x_1_1", 2, 2).unwrap()),
            Err(Error::NotAntisymmetric)
        ));
    }
}
