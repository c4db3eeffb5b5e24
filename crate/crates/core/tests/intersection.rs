mod common;

use common::{factorial, genus0_psi, q};
use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use tautdr::intersection::{cached_psi_values, decorated_strata, psi_integral};
use tautdr::{Rational, TautClass};

#[test]
fn genus_zero_closed_form() {
    for n in 3..=8usize {
        for d in (0..n).map(|_| 0..=(n as u32 - 3)).multi_cartesian_product() {
            if d.iter().sum::<u32>() as usize == n - 3 {
                assert_eq!(psi_integral(0, &d).unwrap(), genus0_psi(&d), "{d:?}");
            }
        }
    }
    assert_eq!(psi_integral(0, &[0, 0, 0]).unwrap(), q(1, 1));
    assert_eq!(psi_integral(1, &[1]).unwrap(), q(1, 24));
}

#[test]
fn top_single_insertion() {
    // <τ_{3g-2}>_g = 1 / (24^g g!)
    for g in 1..=5u32 {
        let den = BigInt::from(24).pow(g) * factorial(g as u64);
        assert_eq!(psi_integral(g, &[3 * g - 2]).unwrap(), Rational::new(BigInt::from(1), den));
    }
}

#[test]
fn string_and_dilaton_on_cache() {
    for g in 0..=3u32 {
        for n in 1..=4usize {
            if 2 * g as i64 - 2 + n as i64 <= 0 {
                continue;
            }
            let dim = 3 * g + n as u32 - 3;
            for d in (0..n).map(|_| 0..=dim).multi_cartesian_product() {
                psi_integral(g, &d).unwrap();
            }
        }
    }
    let values = cached_psi_values();
    assert!(values.len() > 50);
    for (g, d, value) in values {
        let n = d.len();
        if 2 * g as i64 - 2 + n as i64 - 1 <= 0 {
            continue;
        }
        if let Some(i) = d.iter().position(|&x| x == 0) {
            let mut rest = d.clone();
            rest.remove(i);
            let mut sum = Rational::zero();
            for j in 0..rest.len() {
                if rest[j] > 0 {
                    let mut lower = rest.clone();
                    lower[j] -= 1;
                    sum += psi_integral(g, &lower).unwrap();
                }
            }
            assert_eq!(value, sum, "string at g={g} {d:?}");
        }
        if let Some(i) = d.iter().position(|&x| x == 1) {
            let mut rest = d.clone();
            rest.remove(i);
            let factor = q(2 * g as i64 - 2 + rest.len() as i64, 1);
            assert_eq!(value, factor * psi_integral(g, &rest).unwrap(), "dilaton at g={g} {d:?}");
        }
    }
}

fn generators(g: u32, n: usize, deg: usize) -> Vec<TautClass<Rational>> {
    decorated_strata(g, n, deg, false).unwrap().into_iter().map(|s| TautClass::from_stratum(s, q(1, 1))).collect()
}

fn all_generators(g: u32, n: usize) -> Vec<TautClass<Rational>> {
    (0..=3 * g as usize + n - 3).flat_map(|deg| generators(g, n, deg)).collect()
}

fn combination(g: u32, n: usize, deg: usize, coeffs: &[i64]) -> TautClass<Rational> {
    let mut out = TautClass::zero(g, n).unwrap();
    for (c, x) in coeffs.iter().cycle().zip(generators(g, n, deg)) {
        out = out.checked_add(&x.scale(&q(*c, 1))).unwrap();
    }
    out
}

/// Equality in cohomology: all pairings with generators agree.
fn assert_numerically_equal(x: &TautClass<Rational>, y: &TautClass<Rational>, gens: &[TautClass<Rational>]) {
    let diff = x.checked_sub(y).unwrap();
    for gen in gens {
        if let (Some(a), Some(b)) = (diff.degree(), gen.degree()) {
            if a + b != diff.ambient_dim() {
                continue;
            }
        }
        assert!(diff.pair(gen).unwrap().is_zero(), "classes differ against {gen:?}");
    }
}

const SPACES: [(u32, usize); 4] = [(0, 4), (0, 5), (1, 1), (1, 2)];

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn product_laws(
        space in 0usize..SPACES.len(),
        degrees in prop::collection::vec(0usize..=2, 3),
        ca in prop::collection::vec(-3i64..=3, 1..6),
        cb in prop::collection::vec(-3i64..=3, 1..6),
        cc in prop::collection::vec(-3i64..=3, 1..6),
    ) {
        let (g, n) = SPACES[space];
        let dim = 3 * g as usize + n - 3;
        let [da, db, dc] = [degrees[0].min(dim), degrees[1].min(dim), degrees[2].min(dim)];
        let gens = all_generators(g, n);
        let a = combination(g, n, da, &ca);
        let a2 = combination(g, n, da, &cc);
        let b = combination(g, n, db, &cb);
        let c = combination(g, n, dc, &cc);
        let ab = a.product(&b).unwrap();
        assert_numerically_equal(&ab, &b.product(&a).unwrap(), &gens);
        assert_numerically_equal(&ab.product(&c).unwrap(), &a.product(&b.product(&c).unwrap()).unwrap(), &gens);
        let lhs = a.checked_add(&a2).unwrap().product(&b).unwrap();
        let rhs = ab.checked_add(&a2.product(&b).unwrap()).unwrap();
        assert_numerically_equal(&lhs, &rhs, &gens);
        assert_numerically_equal(&a.scale(&q(3, 2)).product(&b).unwrap(), &ab.scale(&q(3, 2)), &gens);
        let one = TautClass::fundamental(g, n).unwrap();
        assert_numerically_equal(&a.product(&one).unwrap(), &a, &gens);
    }
}

#[test]
fn psi_squared_on_m05() {
    // ψ_1² integrates to 1 on M̄_{0,5}
    let psi = TautClass::<Rational>::psi(0, 5, 1).unwrap();
    assert_eq!(psi.product(&psi).unwrap().integrate(), q(1, 1));
    let psi2 = TautClass::<Rational>::psi(0, 5, 2).unwrap();
    assert_eq!(psi.pair(&psi2).unwrap(), q(2, 1));
}
