use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use super::product::stratum_product;
use super::stratum::DecoratedStratum;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::{format_rational, parse_rational, Coefficient, Rational};
use crate::stable_graphs::{check_stable, StableGraph};

/// Finite linear combination of decorated strata on M̄_{g,n}.
///
/// A term `(Φ, δ) -> c` stands for `c / |Aut Φ| · j_{Φ*}(δ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TautClass<C> {
    g: u32,
    n: usize,
    terms: BTreeMap<DecoratedStratum, C>,
}

impl<C: Coefficient> TautClass<C> {
    pub fn zero(g: u32, n: usize) -> Result<Self> {
        check_stable(g, n)?;
        Ok(Self { g, n, terms: BTreeMap::new() })
    }

    pub fn from_stratum(stratum: DecoratedStratum, coeff: C) -> Self {
        let g = stratum.graph().genus();
        let n = stratum.graph().num_legs();
        let mut class = Self { g, n, terms: BTreeMap::new() };
        if !coeff.is_zero() {
            class.terms.insert(stratum, coeff);
        }
        class
    }

    pub fn fundamental(g: u32, n: usize) -> Result<Self> {
        let one = C::from_rational_coeff(&Rational::one());
        Ok(Self::from_stratum(DecoratedStratum::bare(StableGraph::trivial(g, n)?)?, one))
    }

    /// `∏ ψ_i^{exps[i]}` on the smooth locus.
    pub fn psi_monomial(g: u32, exps: &[u32]) -> Result<Self> {
        Self::monomial(g, exps, &[])
    }

    /// `ψ_i` for a 1-based marking `i`.
    pub fn psi(g: u32, n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::InvalidGraph(format!("marking {i} out of range 1..={n}")));
        }
        let mut exps = vec![0; n];
        exps[i - 1] = 1;
        Self::psi_monomial(g, &exps)
    }

    pub fn kappa(g: u32, n: usize, a: u32) -> Result<Self> {
        Self::monomial(g, &vec![0; n], &[a])
    }

    /// `∏ ψ_i^{exps[i]} ∏ κ_{b}` on the smooth locus.
    pub fn monomial(g: u32, exps: &[u32], kappas: &[u32]) -> Result<Self> {
        let graph = StableGraph::trivial(g, exps.len())?;
        let stratum = DecoratedStratum::new(graph, exps.to_vec(), vec![kappas.to_vec()])?;
        let one = C::from_rational_coeff(&Rational::one());
        Ok(Self::from_stratum(stratum, one))
    }

    /// Cycle class of the closure of a boundary stratum, `1/|Aut| · j_*1`.
    pub fn boundary(graph: StableGraph) -> Result<Self> {
        let one = C::from_rational_coeff(&Rational::one());
        Ok(Self::from_stratum(DecoratedStratum::bare(graph)?, one))
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    pub fn num_markings(&self) -> usize {
        self.n
    }

    pub fn ambient_dim(&self) -> usize {
        (3 * self.g as usize + self.n).saturating_sub(3)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common degree of the terms, `None` for the zero class.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next().map(|s| s.degree())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DecoratedStratum, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Stored coefficient of a stratum (zero if absent).
    pub fn coefficient(&self, stratum: &DecoratedStratum) -> C {
        self.terms.get(stratum).cloned().unwrap_or_else(C::zero)
    }

    /// Coefficient in front of `j_{Φ*}(δ)`, i.e. the stored one over `|Aut Φ|`.
    pub fn pushforward_coefficient(&self, stratum: &DecoratedStratum) -> C {
        self.coefficient(stratum).scale(&aut_inverse(stratum))
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if (self.g, self.n) != (other.g, other.n) {
            return Err(Error::AmbientMismatch(self.g, self.n, other.g, other.n));
        }
        Ok(())
    }

    fn insert(&mut self, stratum: DecoratedStratum, coeff: C) {
        let entry = self.terms.entry(stratum);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                if !coeff.is_zero() {
                    v.insert(coeff);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_term(&mut self, stratum: DecoratedStratum, coeff: C) -> Result<()> {
        let graph = stratum.graph();
        if (graph.genus(), graph.num_legs()) != (self.g, self.n) {
            return Err(Error::AmbientMismatch(self.g, self.n, graph.genus(), graph.num_legs()));
        }
        if let Some(d) = self.degree() {
            if d != stratum.degree() {
                return Err(Error::DegreeMismatch(d, stratum.degree()));
            }
        }
        self.insert(stratum, coeff);
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        if let (Some(a), Some(b)) = (self.degree(), other.degree()) {
            if a != b {
                return Err(Error::DegreeMismatch(a, b));
            }
        }
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.insert(s.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c.clone())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self.map_coeffs(|c| c.scale(q))
    }

    pub fn mul_coeff(&self, k: &C) -> Self {
        self.map_coeffs(|c| c.clone() * k.clone())
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> TautClass<D> {
        let terms = self.terms.iter().map(|(s, c)| (s.clone(), f(c))).filter(|(_, c)| !c.is_zero()).collect();
        TautClass { g: self.g, n: self.n, terms }
    }

    /// Pushforward along the relabeling `i + 1 -> perm[i] + 1` of markings.
    pub fn permute_markings(&self, perm: &[usize]) -> Result<Self> {
        let mut out = Self { g: self.g, n: self.n, terms: BTreeMap::new() };
        for (s, c) in &self.terms {
            out.insert(s.permute_markings(perm)?, c.clone());
        }
        Ok(out)
    }

    /// Intersection product; terms above the ambient dimension vanish.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut out = Self { g: self.g, n: self.n, terms: BTreeMap::new() };
        for (sa, ca) in &self.terms {
            for (sb, cb) in &other.terms {
                if sa.degree() + sb.degree() > self.ambient_dim() {
                    continue;
                }
                let coeff = ca.clone() * cb.clone();
                for (s, q) in stratum_product(sa, sb)?.iter() {
                    out.insert(s.clone(), coeff.scale(q));
                }
            }
        }
        Ok(out)
    }

    /// Degree-`3g-3+n` part integrated; zero for other degrees.
    pub fn integrate(&self) -> C {
        let dim = self.ambient_dim();
        let mut acc = C::zero();
        for (s, c) in &self.terms {
            if s.degree() != dim {
                continue;
            }
            let value = s.integral_of_pushforward();
            if !value.is_zero() {
                acc = acc + c.scale(&(value * aut_inverse(s)));
            }
        }
        acc
    }

    pub fn pair(&self, other: &Self) -> Result<C> {
        Ok(self.product(other)?.integrate())
    }
}

fn aut_inverse(s: &DecoratedStratum) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(s.automorphisms()))
}

/// JSON encoding of class coefficients.
pub trait JsonCoefficient: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

impl JsonCoefficient for Rational {
    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }

    fn from_json(v: &Value) -> Result<Self> {
        v.as_str().ok_or_else(|| Error::Parse(format!("expected rational string, got {v}"))).and_then(parse_rational)
    }
}

impl JsonCoefficient for Polynomial<Rational> {
    fn to_json(&self) -> Value {
        json!({ "poly_r": self.coeffs().iter().map(format_rational).collect::<Vec<_>>() })
    }

    fn from_json(v: &Value) -> Result<Self> {
        let list = v
            .get("poly_r")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse(format!("expected {{\"poly_r\": [...]}}, got {v}")))?;
        Ok(Polynomial::new(list.iter().map(Rational::from_json).collect::<Result<_>>()?))
    }
}

impl<C: Coefficient + JsonCoefficient> TautClass<C> {
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(s, c)| {
                let psi: Map<String, Value> = s
                    .psi()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(h, e)| (h.to_string(), json!(e)))
                    .collect();
                let kappa: Map<String, Value> = s
                    .kappa()
                    .iter()
                    .enumerate()
                    .filter(|(_, k)| !k.is_empty())
                    .map(|(v, k)| (v.to_string(), json!(k)))
                    .collect();
                json!({
                    "graph": s.graph().to_json(),
                    "psi": psi,
                    "kappa": kappa,
                    "coeff": c.to_json(),
                    "label": s.label(),
                })
            })
            .collect();
        json!({ "ambient": [self.g, self.n], "terms": terms })
    }
}
