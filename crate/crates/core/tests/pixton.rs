mod common;

use common::{genus0_degree1, q};
use itertools::Itertools;
use num_traits::Zero;
use proptest::prelude::*;
use tautdr::pixton::{constant_term, dr_cycle, pixton_class, r_polynomial, r_polynomial_from, DRProblem};
use tautdr::{DecoratedStratum, Rational, StableGraph, TautClass};

fn divisor(n: usize, s: &[usize]) -> DecoratedStratum {
    let legs: Vec<usize> = (1..=n).map(|m| usize::from(!s.contains(&m))).collect();
    DecoratedStratum::bare(StableGraph::from_edges(&[0, 0], &legs, &[(0, 1)]).unwrap()).unwrap()
}

fn psi_stratum(n: usize, i: usize) -> DecoratedStratum {
    TautClass::<Rational>::psi(0, n, i).unwrap().terms().next().unwrap().0.clone()
}

fn weight_vectors(n: usize, max: i64) -> Vec<Vec<i64>> {
    (0..n - 1)
        .map(|_| -max..=max)
        .multi_cartesian_product()
        .filter_map(|mut a| {
            let last = -a.iter().sum::<i64>();
            (last.abs() <= max).then(|| {
                a.push(last);
                a
            })
        })
        .collect()
}

#[test]
fn genus_zero_degree_one_matches_hand_formula() {
    for n in [4, 5] {
        for a in weight_vectors(n, 2) {
            let p = DRProblem::new(0, a.clone(), 1).unwrap();
            for r in [p.r_bound() + 1, p.r_bound() + 4] {
                let class = pixton_class(&p, r).unwrap();
                let (psi, divisors) = genus0_degree1(&a, r);
                let mut expected = TautClass::zero(0, n).unwrap();
                for (i, c) in psi.iter().enumerate() {
                    expected.add_term(psi_stratum(n, i + 1), c.clone()).unwrap();
                }
                for (s, c) in &divisors {
                    expected.add_term(divisor(n, s), c.clone()).unwrap();
                }
                assert_eq!(class, expected, "A = {a:?}, r = {r}");
            }
        }
    }
}

#[test]
fn spec_example_m04() {
    let p = DRProblem::new(0, vec![1, -1, 0, 0], 1).unwrap();
    for r in [9, 10, 17] {
        let c = pixton_class(&p, r).unwrap();
        assert_eq!(c.coefficient(&psi_stratum(4, 1)), q(1, 2));
        assert_eq!(c.coefficient(&psi_stratum(4, 2)), q(1, 2));
        assert_eq!(c.coefficient(&divisor(4, &[1, 3])), q(r as i64 - 1, 2));
        assert_eq!(c.coefficient(&divisor(4, &[1, 4])), q(r as i64 - 1, 2));
        assert_eq!(c.coefficient(&divisor(4, &[1, 2])), Rational::zero());
    }
}

/// `Σ_w w (r - w)` over residues of the loop, divided by `r`, `2^d` and `|Aut| = 2`.
fn self_edge_oracle(r: u64) -> Rational {
    let r = r as i64;
    let sum: i64 = (0..r).map(|w| w * ((r - w) % r)).sum();
    q(sum, 4 * r)
}

#[test]
fn self_edge_coefficient() {
    let loop11 = DecoratedStratum::bare(StableGraph::from_edges(&[0], &[0], &[(0, 0)]).unwrap()).unwrap();
    let p = DRProblem::new(1, vec![0], 1).unwrap();
    for r in [4, 5, 7, 11, 30] {
        let c = pixton_class(&p, r).unwrap();
        assert_eq!(c.pushforward_coefficient(&loop11), self_edge_oracle(r));
        assert_eq!(self_edge_oracle(r), q(r as i64 * r as i64 - 1, 24));
        assert_eq!(c.len(), 1);
    }
}

/// Lagrange interpolation at 0 through `(x_i, y_i)`.
fn value_at_zero(points: &[(i64, Rational)]) -> Rational {
    let mut total = Rational::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut term = yi.clone();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                term *= q(-xj, xi - xj);
            }
        }
        total += term;
    }
    total
}

#[test]
fn genus_one_dr_integral() {
    let points: Vec<(i64, Rational)> = (4..=8).map(|r| (r, self_edge_oracle(r as u64))).collect();
    let oracle = value_at_zero(&points);
    assert_eq!(oracle, q(-1, 24));
    assert_eq!(dr_cycle(1, &[0]).unwrap().integrate(), oracle);
}

#[test]
fn genus_zero_dr_is_fundamental() {
    for a in [vec![1, -1, 0], vec![2, -1, -1], vec![3, -2, -1, 0], vec![1, 1, -1, -1, 0]] {
        let n = a.len();
        assert_eq!(dr_cycle(0, &a).unwrap(), TautClass::fundamental(0, n).unwrap(), "{a:?}");
    }
}

#[test]
fn window_start_does_not_change_the_polynomial() {
    let p = DRProblem::new(1, vec![2, -1, -1], 2).unwrap();
    let low = r_polynomial(&p).unwrap();
    let high = r_polynomial_from(&p, 40).unwrap();
    assert_eq!(low.class, high.class);
    assert_eq!(constant_term(&low), constant_term(&high));
    assert!(r_polynomial_from(&p, 3).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn polynomial_reproduces_direct_evaluation(
        shape in 0usize..5,
        raw in prop::collection::vec(-3i64..=3, 4),
        d in 0usize..=3,
        extra in 0u64..40,
    ) {
        let (g, n) = [(0, 4), (0, 5), (1, 1), (1, 2), (1, 3)][shape];
        let mut a: Vec<i64> = raw[..n - 1].to_vec();
        a.push(-a.iter().sum::<i64>());
        let p = DRProblem::new(g, a, d).unwrap();
        let poly = r_polynomial(&p).unwrap();
        let r = p.r_bound() + 1 + extra;
        prop_assert_eq!(poly.eval(r), pixton_class(&p, r).unwrap());
    }
}
