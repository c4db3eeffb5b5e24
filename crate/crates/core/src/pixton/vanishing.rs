use num_traits::Zero;
use serde_json::{json, Value};

use super::interpolate::{constant_term, r_polynomial, r_polynomial_from, RPolynomialClass};
use super::problem::DRProblem;
use crate::error::{Error, Result};
use crate::intersection::{decorated_strata, JsonCoefficient, TautClass, PRODUCT_DIMENSION_LIMIT};
use crate::scalar::{format_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// every available pairing is exactly zero
    PairingNull,
    /// some pairing is nonzero
    Fail,
    /// all computed pairings vanish but some generators were out of reach
    Incomplete,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::PairingNull => "pairing-null",
            Verdict::Fail => "FAIL",
            Verdict::Incomplete => "incomplete",
        }
    }
}

#[derive(Clone, Debug)]
pub struct VanishingReport {
    pub pairings: Vec<(String, Rational)>,
    pub verdict: Verdict,
    /// true when boundary generators were skipped for lack of product support
    pub incomplete_generators: bool,
}

/// Pairs a class against all decorated strata of complementary degree.
pub fn pairing_report(class: &TautClass<Rational>, d: usize) -> Result<VanishingReport> {
    let dim = class.ambient_dim();
    let mut pairings = Vec::new();
    let mut incomplete = false;
    if d <= dim {
        let c = dim - d;
        let only_trivial = c > 0 && dim > PRODUCT_DIMENSION_LIMIT && class.terms().any(|(s, _)| !s.graph().is_trivial());
        incomplete = only_trivial && !decorated_strata(class.genus(), class.num_markings(), c, false)?
            .iter()
            .all(|s| s.graph().is_trivial());
        for gen in decorated_strata(class.genus(), class.num_markings(), c, only_trivial)? {
            let value = class.pair(&TautClass::from_stratum(gen.clone(), Rational::from_integer(1.into())))?;
            pairings.push((gen.label(), value));
        }
    }
    let verdict = if pairings.iter().any(|(_, v)| !v.is_zero()) {
        Verdict::Fail
    } else if incomplete {
        Verdict::Incomplete
    } else {
        Verdict::PairingNull
    };
    Ok(VanishingReport { pairings, verdict, incomplete_generators: incomplete })
}

/// Certifies `P^d = 0` for `d > g` by pairing its constant term against every
/// generator of complementary degree.
pub fn vanishing_check(p: &DRProblem) -> Result<VanishingReport> {
    if p.d as u32 <= p.g {
        return Err(Error::InvalidProblem(format!("vanishing needs d > g, got d = {} and g = {}", p.d, p.g)));
    }
    let c = constant_term(&r_polynomial(p)?);
    pairing_report(&c, p.d)
}

/// Full report for one problem: the r-polynomial class, its constant term,
/// and pairings when `d > g`.
#[derive(Clone, Debug)]
pub struct DRReport {
    pub problem: DRProblem,
    pub rpoly: RPolynomialClass,
    pub constant_term: TautClass<Rational>,
    pub constant_term_integral: Rational,
    pub vanishing: Option<VanishingReport>,
}

pub fn dr_report(p: &DRProblem, start: Option<u64>) -> Result<DRReport> {
    let rpoly = match start {
        Some(s) => r_polynomial_from(p, s)?,
        None => r_polynomial(p)?,
    };
    let constant_term = constant_term(&rpoly);
    let vanishing = if p.d as u32 > p.g { Some(pairing_report(&constant_term, p.d)?) } else { None };
    Ok(DRReport {
        problem: p.clone(),
        constant_term_integral: constant_term.integrate(),
        rpoly,
        constant_term,
        vanishing,
    })
}

impl DRReport {
    pub fn verdict(&self) -> Option<Verdict> {
        self.vanishing.as_ref().map(|v| v.verdict)
    }

    pub fn to_json(&self) -> Value {
        let pairings: Vec<Value> = self
            .vanishing
            .iter()
            .flat_map(|v| &v.pairings)
            .map(|(id, q)| json!([id, format_rational(q)]))
            .collect();
        json!({
            "problem": {"g": self.problem.g, "A": self.problem.a, "d": self.problem.d},
            "samples": self.rpoly.samples,
            "held_out": self.rpoly.held_out,
            "class": self.rpoly.class.to_json(),
            "constant_term": self.constant_term.to_json(),
            "constant_term_integral": self.constant_term_integral.to_json(),
            "pairings": pairings,
            "verdict": self.verdict().map(Verdict::as_str),
        })
    }
}
