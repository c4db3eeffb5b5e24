//! ψ/κ intersection numbers and the algebra of decorated strata.

mod class;
mod generators;
mod product;
mod psi;
mod stratum;

pub use class::{JsonCoefficient, TautClass};
pub(crate) use generators::compositions;
pub use generators::decorated_strata;
pub use product::PRODUCT_DIMENSION_LIMIT;
pub use psi::{cached_psi_values, kappa_psi_integral, load_psi_cache, psi_integral, save_psi_cache};
pub(crate) use stratum::{sum_mul, Monomial, MonomialSum};
pub use stratum::DecoratedStratum;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rational, Rational};
    use crate::stable_graphs::StableGraph;

    type Q = TautClass<Rational>;

    fn loop_graph(g: u32, n: usize) -> StableGraph {
        StableGraph::from_edges(&[g], &vec![0; n], &[(0, 0)]).unwrap()
    }

    /// Two genus-0 vertices, markings listed per side.
    fn split(g: u32, left: &[usize], n: usize) -> StableGraph {
        let legs: Vec<usize> = (1..=n).map(|m| usize::from(!left.contains(&m))).collect();
        StableGraph::from_edges(&[0, g], &legs, &[(0, 1)]).unwrap()
    }

    #[test]
    fn integrate_examples() {
        assert_eq!(Q::psi(1, 1, 1).unwrap().integrate(), rational(1, 24));
        assert_eq!(Q::boundary(loop_graph(0, 1)).unwrap().integrate(), rational(1, 2));
        assert_eq!(Q::fundamental(1, 1).unwrap().integrate(), int(0));
        assert_eq!(Q::kappa(1, 1, 1).unwrap().integrate(), rational(1, 24));
    }

    #[test]
    fn genus_zero_four_points() {
        let d12 = Q::boundary(split(0, &[1, 2], 4)).unwrap();
        let d13 = Q::boundary(split(0, &[1, 3], 4)).unwrap();
        let d14 = Q::boundary(split(0, &[1, 4], 4)).unwrap();
        assert!(d13.product(&d14).unwrap().is_zero());
        assert!(d12.product(&d12).unwrap().is_zero());
        assert_eq!(d12.integrate(), int(1));
        let psi1 = Q::psi(0, 4, 1).unwrap();
        assert_eq!(psi1.integrate(), int(1));
        let one = Q::fundamental(0, 4).unwrap();
        assert_eq!(one.product(&d13).unwrap(), d13);
        assert_eq!(psi1.pair(&one).unwrap(), int(1));
    }

    #[test]
    fn permuting_markings() {
        let swap = [1, 0, 2, 3];
        assert_eq!(Q::psi(0, 4, 1).unwrap().permute_markings(&swap).unwrap(), Q::psi(0, 4, 2).unwrap());
        let d12 = Q::boundary(split(0, &[1, 2], 4)).unwrap();
        assert_eq!(d12.permute_markings(&swap).unwrap(), d12);
        let d13 = Q::boundary(split(0, &[1, 3], 4)).unwrap();
        let d14 = Q::boundary(split(0, &[1, 4], 4)).unwrap();
        assert_eq!(d13.permute_markings(&[0, 1, 3, 2]).unwrap(), d14);
        assert!(d13.permute_markings(&[0, 0, 1, 2]).is_err());
    }

    #[test]
    fn genus_one_two_points() {
        let psi1 = Q::psi(1, 2, 1).unwrap();
        let irr = Q::boundary(loop_graph(0, 2)).unwrap();
        let d0 = Q::boundary(split(1, &[1, 2], 2)).unwrap();
        assert_eq!(irr.pair(&psi1).unwrap(), rational(1, 2));
        assert_eq!(d0.pair(&psi1).unwrap(), int(0));
        assert_eq!(d0.pair(&d0).unwrap(), rational(-1, 24));
        assert_eq!(irr.pair(&d0).unwrap(), rational(1, 2));
        assert_eq!(irr.pair(&irr).unwrap(), int(0));
        // ψ_1 = δ_irr / 12 + δ_0 holds numerically against the divisor basis
        let rhs = irr.scale(&rational(1, 12)).checked_add(&d0).unwrap();
        for test in [&psi1, &irr, &d0, &Q::psi(1, 2, 2).unwrap()] {
            assert_eq!(psi1.pair(test).unwrap(), rhs.pair(test).unwrap());
        }
    }

    #[test]
    fn genus_zero_five_points() {
        let d12 = Q::boundary(split(0, &[1, 2], 5)).unwrap();
        let d34 = Q::boundary(split(0, &[3, 4], 5)).unwrap();
        assert_eq!(d12.pair(&d12).unwrap(), int(-1));
        assert_eq!(d12.pair(&d34).unwrap(), int(1));
        let psi1 = Q::psi(0, 5, 1).unwrap();
        assert_eq!(psi1.pair(&psi1).unwrap(), int(1));
        assert_eq!(d12.pair(&psi1).unwrap(), int(0));
        let k = Q::kappa(0, 5, 1).unwrap();
        assert_eq!(k.pair(&k).unwrap(), int(5));
        assert_eq!(k.pair(&d12).unwrap(), int(1));
    }

    #[test]
    fn mismatches_are_errors() {
        let a = Q::psi(1, 2, 1).unwrap();
        let b = Q::psi(0, 4, 1).unwrap();
        assert!(a.product(&b).is_err());
        let f = Q::fundamental(1, 2).unwrap();
        assert!(matches!(a.checked_add(&f), Err(crate::Error::DegreeMismatch(1, 0))));
        assert_eq!(a.pair(&Q::zero(1, 2).unwrap()).unwrap(), int(0));
    }

    #[test]
    fn beyond_capability_is_reported() {
        let g = split(0, &[1, 2], 8);
        let d = Q::boundary(g).unwrap();
        assert!(matches!(d.product(&d), Err(crate::Error::ProductBeyondCapability { .. })));
        // trivial factors are always fine
        assert!(d.product(&Q::psi(0, 8, 3).unwrap()).is_ok());
    }

    #[test]
    fn json_shape() {
        let c = Q::boundary(loop_graph(0, 1)).unwrap().scale(&rational(-1, 12));
        let v = c.to_json();
        assert_eq!(v["ambient"], serde_json::json!([1, 1]));
        assert_eq!(v["terms"][0]["coeff"], "-1/12");
    }
}
