//! Pixton's formula for the point target: the classes P^{d,r}, their
//! polynomiality in r, constant terms and DR cycles.

mod class;
mod interpolate;
mod problem;
mod vanishing;
mod weights;

pub use class::{pixton_class, pixton_class_unchecked};
pub use interpolate::{constant_term, dr_cycle, r_polynomial, r_polynomial_from, RPolynomialClass, HELD_OUT};
pub use problem::DRProblem;
pub use vanishing::{dr_report, pairing_report, vanishing_check, DRReport, VanishingReport, Verdict};
pub use weights::weight_sum;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intersection::{DecoratedStratum, TautClass};
    use crate::poly::Polynomial;
    use crate::scalar::{int, rational, Rational};
    use crate::stable_graphs::StableGraph;

    fn loop11() -> DecoratedStratum {
        DecoratedStratum::bare(StableGraph::from_edges(&[0], &[0], &[(0, 0)]).unwrap()).unwrap()
    }

    fn split04(left: [usize; 2]) -> DecoratedStratum {
        let legs: Vec<usize> = (1..=4).map(|m| usize::from(!left.contains(&m))).collect();
        DecoratedStratum::bare(StableGraph::from_edges(&[0, 0], &legs, &[(0, 1)]).unwrap()).unwrap()
    }

    fn psi04(i: usize) -> DecoratedStratum {
        let c = TautClass::<Rational>::psi(0, 4, i).unwrap();
        let s = c.terms().next().unwrap().0.clone();
        s
    }

    #[test]
    fn degree_zero_is_fundamental() {
        let p = DRProblem::new(1, vec![2, -2], 0).unwrap();
        let c = pixton_class(&p, 10).unwrap();
        assert_eq!(c, TautClass::fundamental(1, 2).unwrap());
        let rp = r_polynomial(&p).unwrap();
        assert_eq!(rp.class, TautClass::fundamental(1, 2).unwrap());
    }

    #[test]
    fn genus_one_self_edge() {
        let p = DRProblem::new(1, vec![0], 1).unwrap();
        for r in 4..9i64 {
            let c = pixton_class(&p, r as u64).unwrap();
            assert_eq!(c.len(), 1);
            assert_eq!(c.pushforward_coefficient(&loop11()), rational(r * r - 1, 24));
        }
        let rp = r_polynomial(&p).unwrap();
        assert_eq!(rp.class.coefficient(&loop11()), Polynomial::new(vec![rational(-1, 12), int(0), rational(1, 12)]));
        let ct = constant_term(&rp);
        assert_eq!(ct.pushforward_coefficient(&loop11()), rational(-1, 24));
        assert_eq!(ct.integrate(), rational(-1, 24));
        assert_eq!(dr_cycle(1, &[0]).unwrap(), ct);
    }

    #[test]
    fn genus_zero_four_points() {
        let p = DRProblem::new(0, vec![1, -1, 0, 0], 1).unwrap();
        let r = 9i64;
        let c = pixton_class(&p, r as u64).unwrap();
        assert_eq!(c.coefficient(&psi04(1)), rational(1, 2));
        assert_eq!(c.coefficient(&psi04(2)), rational(1, 2));
        assert_eq!(c.coefficient(&split04([1, 3])), rational(r - 1, 2));
        assert_eq!(c.coefficient(&split04([1, 4])), rational(r - 1, 2));
        assert_eq!(c.coefficient(&split04([1, 2])), int(0));
        assert_eq!(c.len(), 4);
        let ct = constant_term(&r_polynomial(&p).unwrap());
        assert_eq!(ct.coefficient(&split04([1, 3])), rational(-1, 2));
        assert_eq!(ct.integrate(), int(0));
        let report = vanishing_check(&p).unwrap();
        assert_eq!(report.verdict, Verdict::PairingNull);
        assert_eq!(report.pairings.len(), 1);
    }

    #[test]
    fn bounds_and_errors() {
        let p = DRProblem::new(0, vec![1, -1, 0, 0], 1).unwrap();
        assert!(matches!(pixton_class(&p, 5), Err(crate::Error::RBelowBound { .. })));
        assert!(vanishing_check(&DRProblem::new(1, vec![0], 1).unwrap()).is_err());
        let empty = DRProblem::new(1, vec![0], 2).unwrap();
        let report = vanishing_check(&empty).unwrap();
        assert_eq!(report.verdict, Verdict::PairingNull);
        assert!(report.pairings.is_empty());
    }

    #[test]
    fn genus_zero_dr_is_fundamental() {
        for a in [vec![1, -1, 0], vec![2, -1, -1, 0], vec![3, -2, -1]] {
            let n = a.len();
            assert_eq!(dr_cycle(0, &a).unwrap(), TautClass::fundamental(0, n).unwrap());
        }
    }

    #[test]
    fn report_json() {
        let p = DRProblem::new(1, vec![0], 1).unwrap();
        let report = dr_report(&p, None).unwrap();
        let v = report.to_json();
        assert_eq!(v["constant_term_integral"], "-1/24");
        assert!(v["verdict"].is_null());
        assert_eq!(v["samples"].as_array().unwrap().len(), 5);
    }
}
