use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, Rational};

/// Opaque commuting generators of the localization classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    /// target ψ-class of Γ^∞
    Psi,
    /// `Ψ_∞` of the 0-side factor with this index
    PsiInf(usize),
    /// `ψ̄_e` at a half-edge
    PsiBar(usize),
    /// `ev_e^* D` at a half-edge
    EvD(usize),
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Psi => write!(f, "Psi"),
            Symbol::PsiInf(i) => write!(f, "Psi_inf[{i}]"),
            Symbol::PsiBar(h) => write!(f, "psibar[{h}]"),
            Symbol::EvD(h) => write!(f, "evD[{h}]"),
        }
    }
}

pub type SymbolMonomial = BTreeMap<Symbol, u32>;

/// Polynomial in [`Symbol`]s with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolPoly {
    terms: BTreeMap<SymbolMonomial, Rational>,
}

impl SymbolPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(SymbolMonomial::new(), c);
        p
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn symbol(s: Symbol) -> Self {
        let mut p = Self::zero();
        p.add_term(SymbolMonomial::from([(s, 1)]), Rational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SymbolMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &SymbolMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of the empty monomial.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&SymbolMonomial::new())
    }

    pub fn add_term(&mut self, m: SymbolMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * q);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut m = ma.clone();
                for (s, e) in mb {
                    *m.entry(*s).or_insert(0) += e;
                }
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// `{"monomials": [{"Psi": k, "Psi_inf": {i: k}, "psibar": {e: k}, "evD": {e: k}, "coeff": "p/q"}]}`
    pub fn to_json(&self) -> Value {
        let monomials: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut psi = 0;
                let (mut inf, mut bar, mut ev) = (Map::new(), Map::new(), Map::new());
                for (s, &e) in m {
                    match s {
                        Symbol::Psi => psi = e,
                        Symbol::PsiInf(i) => drop(inf.insert(i.to_string(), json!(e))),
                        Symbol::PsiBar(h) => drop(bar.insert(h.to_string(), json!(e))),
                        Symbol::EvD(h) => drop(ev.insert(h.to_string(), json!(e))),
                    }
                }
                json!({"Psi": psi, "Psi_inf": inf, "psibar": bar, "evD": ev, "coeff": format_rational(c)})
            })
            .collect();
        json!({ "monomials": monomials })
    }
}

impl fmt::Display for SymbolPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut s = format_rational(c);
                for (sym, e) in m {
                    s += &if *e == 1 { format!("*{sym}") } else { format!("*{sym}^{e}") };
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Laurent series in `t` with [`SymbolPoly`] coefficients, known down to
/// `t^order`; finitely many positive powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentClassSeries {
    coeffs: BTreeMap<i64, SymbolPoly>,
    order: i64,
}

impl LaurentClassSeries {
    /// The zero series known down to `t^order`.
    pub fn zero(order: i64) -> Self {
        Self { coeffs: BTreeMap::new(), order }
    }

    pub fn monomial(power: i64, c: SymbolPoly, order: i64) -> Self {
        let mut s = Self::zero(order);
        s.add_term(power, c);
        s
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// Highest power with a nonzero coefficient.
    pub fn top(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &SymbolPoly)> {
        self.coeffs.iter()
    }

    pub fn add_term(&mut self, power: i64, c: SymbolPoly) {
        if power < self.order || c.is_zero() {
            return;
        }
        let sum = self.coeffs.get(&power).map_or(c.clone(), |old| old.add(&c));
        if sum.is_zero() {
            self.coeffs.remove(&power);
        } else {
            self.coeffs.insert(power, sum);
        }
    }

    /// Coefficient of `t^power`; an error below the truncation order.
    pub fn coefficient(&self, power: i64) -> Result<SymbolPoly> {
        if power < self.order {
            return Err(Error::Truncation(format!("t^{power} is below the known order t^{}", self.order)));
        }
        Ok(self.coeffs.get(&power).cloned().unwrap_or_default())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.order.max(other.order));
        for (p, c) in self.coeffs.iter().chain(&other.coeffs) {
            out.add_term(*p, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        // a series with no known terms may still have terms below its order
        let top_a = self.top().unwrap_or(self.order - 1);
        let top_b = other.top().unwrap_or(other.order - 1);
        let order = (self.order + top_b).max(other.order + top_a);
        let mut out = Self::zero(order);
        for (pa, ca) in &self.coeffs {
            for (pb, cb) in &other.coeffs {
                if pa + pb >= order {
                    out.add_term(pa + pb, ca.mul(cb));
                }
            }
        }
        out
    }

    /// `{"order": N, "terms": [{"power": p, "coeff": poly}]}`
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> =
            self.coeffs.iter().rev().map(|(p, c)| json!({"power": p, "coeff": c.to_json()})).collect();
        json!({"order": self.order, "terms": terms})
    }
}
