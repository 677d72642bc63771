mod common;

use common::*;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use symalt::group::{antisymmetrize, apply_to_point, symmetrize, FiniteGroup, Permutation};
use symalt::numeric::*;
use symalt::poly::{MultiIndex, Polynomial};
use symalt::Error;

fn grid(n: usize, d: usize, res: usize) -> SampleGrid {
    build_grid(&vec![q(-1); d], &vec![q(1); d], res, n, &FiniteGroup::symmetric(n).unwrap()).unwrap()
}

/// Σ_{|α| ≤ k} max |D^α p| over the points, by direct differentiation.
fn norm_oracle(p: &Polynomial, points: &[Point], k: u32) -> BigRational {
    let (n, d) = p.shape();
    let mut total = BigRational::zero();
    for alpha in MultiIndex::all_up_to(n, d, k) {
        let dp = p.differentiate(&alpha).unwrap();
        let m = points.iter().map(|x| dp.evaluate(x).unwrap().abs()).max().unwrap_or_else(BigRational::zero);
        total += m;
    }
    total
}

fn norm(p: &Polynomial, g: &SampleGrid, k: u32) -> BigRational {
    ck_norm_on_grid(p, g, k).unwrap().total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn norm_matches_oracle(p in arb_poly(2, 1, 4, 5), k in 0u32..=2) {
        let g = grid(2, 1, 3);
        prop_assert_eq!(norm(&p, &g, k), norm_oracle(&p, g.points(), k));
    }

    #[test]
    fn norm_is_homogeneous(p in arb_poly(2, 2, 3, 4), c in arb_rational(), k in 0u32..=2) {
        let g = grid(2, 2, 2);
        let scaled = &Polynomial::constant(2, 2, c.clone()) * &p;
        prop_assert_eq!(norm(&scaled, &g, k), c.abs() * norm(&p, &g, k));
    }

    #[test]
    fn triangle_inequality(p in arb_poly(3, 1, 3, 4), r in arb_poly(3, 1, 3, 4), k in 0u32..=2) {
        let g = grid(3, 1, 3);
        prop_assert!(norm(&(&p + &r), &g, k) <= norm(&p, &g, k) + norm(&r, &g, k));
    }

    #[test]
    fn norm_grows_with_k_and_grid(p in arb_poly(2, 1, 4, 5), extra in arb_point(2, 1)) {
        let g = grid(2, 1, 3);
        let orbit: Vec<Point> = FiniteGroup::symmetric(2).unwrap().elements().iter().map(|s| apply_to_point(s, &extra).unwrap()).collect();
        let bigger = g.extended(&orbit).unwrap();
        for k in 0..=2 {
            prop_assert!(norm(&p, &g, k) <= norm(&p, &bigger, k));
            prop_assert!(norm(&p, &g, k) <= norm(&p, &g, k + 1));
        }
    }

    #[test]
    fn symmetrization_never_hurts(p in arb_poly(3, 1, 3, 4), p_hat in arb_poly(3, 1, 3, 4), k in 0u32..=2) {
        let sn = FiniteGroup::symmetric(3).unwrap();
        let f = symmetrize(&p, &sn).unwrap();
        let g = grid(3, 1, 3);
        let m = symmetrization_monotonicity_check(&f, &p_hat, &sn, &g, k).unwrap();
        prop_assert!(m.ok && m.lhs <= m.rhs);
    }

    #[test]
    fn antisymmetrization_never_hurts(p in arb_poly(2, 2, 3, 4), p_hat in arb_poly(2, 2, 3, 4), k in 0u32..=2) {
        let f = antisymmetrize(&p);
        let g = grid(2, 2, 3);
        let m = antisymmetrization_monotonicity_check(&f, &p_hat, &g, k).unwrap();
        prop_assert!(m.ok && m.lhs <= m.rhs);
    }

    #[test]
    fn subgroup_symmetrization_never_hurts(p in arb_poly(3, 1, 3, 4), p_hat in arb_poly(3, 1, 3, 4)) {
        let g2 = symalt::group::generate_subgroup(3, &[Permutation::transposition(3, 0, 1)], 8).unwrap();
        let f = symmetrize(&p, &g2).unwrap();
        let g = grid(3, 1, 3);
        prop_assert!(symmetrization_monotonicity_check(&f, &p_hat, &g2, &g, 1).unwrap().ok);
    }

    #[test]
    fn fit_then_project(p in arb_poly(2, 1, 2, 4)) {
        // exact data from a symmetric quadratic is refit exactly, and projecting changes nothing
        let sn = FiniteGroup::symmetric(2).unwrap();
        let f = symmetrize(&p, &sn).unwrap();
        let g = grid(2, 1, 4);
        let samples: Vec<(Point, BigRational)> = g.points().iter().map(|x| (x.clone(), f.evaluate(x).unwrap())).collect();
        let fit = fit_polynomial(&samples, 2, 2, 1).unwrap();
        prop_assert!(fit.residual.is_zero());
        prop_assert_eq!(&fit.polynomial, &f);
        prop_assert_eq!(symmetrize(&fit.polynomial, &sn).unwrap(), fit.polynomial);
    }
}

#[test]
fn float_fit_agrees_with_exact() {
    let f = symalt::poly::parse("x_1_1^2 - 3*x_1_1*x_2_1 + 1/2", 2, 1).unwrap();
    let g = grid(2, 1, 4);
    let samples: Vec<(Vec<Vec<f64>>, f64)> = g
        .points()
        .iter()
        .map(|x| {
            let xf = x.iter().map(|r| r.iter().map(symalt::poly::rational_to_f64).collect()).collect();
            (xf, symalt::poly::rational_to_f64(&f.evaluate(x).unwrap()))
        })
        .collect();
    let fit = fit_polynomial_f64(&samples, 2, 2, 1).unwrap();
    assert!(fit.residual < 1e-20);
    let got = fit.evaluate(&[vec![0.3], vec![-0.7]]).unwrap();
    assert!((got - (0.09 + 3.0 * 0.21 + 0.5)).abs() < 1e-10);
    assert!(fit_polynomial_f64(&samples[..3], 2, 2, 1).is_err());
}

#[test]
fn under_sampled_fit_is_rank_deficient() {
    let samples = vec![(vec![vec![q(0)], vec![q(0)]], q(1)), (vec![vec![q(1)], vec![q(1)]], q(2))];
    match fit_polynomial(&samples, 1, 2, 1) {
        Err(Error::RankDeficient { columns, .. }) => assert_eq!(columns, 3),
        other => panic!("expected rank deficiency, got {other:?}"),
    }
}

#[test]
fn monotonicity_preconditions() {
    let sn = FiniteGroup::symmetric(2).unwrap();
    let p = symalt::poly::parse("x_1_1", 2, 1).unwrap();
    let g = grid(2, 1, 3);
    assert!(matches!(symmetrization_monotonicity_check(&p, &p, &sn, &g, 0), Err(Error::NotInvariant)));
    assert!(matches!(antisymmetrization_monotonicity_check(&p, &p, &g, 0), Err(Error::NotAntisymmetric)));

    let open = SampleGrid::from_points(vec![vec![vec![q(0)], vec![q(1)]]], &FiniteGroup::trivial(2)).unwrap();
    let f = symalt::poly::parse("x_1_1 + x_2_1", 2, 1).unwrap();
    assert!(matches!(symmetrization_monotonicity_check(&f, &p, &sn, &open, 0), Err(Error::GridNotClosed)));
    assert!(SampleGrid::from_points(vec![vec![vec![q(0)], vec![q(1)]]], &sn).is_err());
}

#[test]
fn callbacks_match_the_polynomial_they_describe() {
    // f = x1^2 x2 with hand-written derivatives
    let e1 = MultiIndex::unit(2, 1, 0, 0);
    let e2 = MultiIndex::unit(2, 1, 1, 0);
    let cb = CallbackTarget::new(2, 1)
        .with(MultiIndex::zero(2, 1), |x| x[0][0] * x[0][0] * x[1][0])
        .with(e1.clone(), |x| 2.0 * x[0][0] * x[1][0])
        .with(e2.clone(), |x| x[0][0] * x[0][0]);
    let g = grid(2, 1, 5);
    let exact = ck_norm_on_grid(&symalt::poly::parse("x_1_1^2*x_2_1", 2, 1).unwrap(), &g, 1).unwrap();
    let float = ck_norm_on_grid(&cb, &g, 1).unwrap();
    assert!((float.total - symalt::poly::rational_to_f64(&exact.total)).abs() < 1e-12);
    assert!(finite_difference_discrepancy(&cb, &g, 1e-5).unwrap() < FINITE_DIFFERENCE_TOLERANCE);
    assert!(matches!(ck_norm_on_grid(&cb, &g, 2), Err(Error::MissingDerivative(_))));
}

#[test]
fn counterexample_ratio_increases() {
    let eps: Vec<BigRational> = (1..=6).map(|e| frac(1, 10i64.pow(e))).collect();
    let ratios: Vec<f64> = eps.iter().map(|e| counterexample_ratio(e, 4).unwrap().ratio).collect();
    assert!(ratios.windows(2).all(|w| w[1] > w[0]));
    // ratio ≈ ε^{4/3 - 3} for small ε
    let target = 10f64.powf(5.0 / 3.0);
    assert!((ratios[5] / ratios[4] / target - 1.0).abs() < 1e-6);
    assert!(counterexample_ratio(&q(0), 4).is_err());
    assert!(counterexample_ratio(&q(2), 4).is_err());
    assert!(counterexample_ratio(&frac(1, 2), 3).is_err());
}
