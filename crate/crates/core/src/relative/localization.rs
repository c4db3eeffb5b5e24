use num_traits::One;
use serde_json::{json, Value};

use super::bipartite::{BipartiteGraph, HalfEdgeKind, RootType};
use super::series::{LaurentClassSeries, Symbol, SymbolPoly};
use crate::error::{Error, Result};
use crate::scalar::{int, Rational};

/// Which ∞-roots of a 0-side vertex enter a product or sum.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum RootSet {
    /// ∞-roots of node type only
    #[default]
    NodeOnly,
    /// ∞-roots of both types
    AllInfinity,
}

impl RootSet {
    pub fn as_str(self) -> &'static str {
        match self {
            RootSet::NodeOnly => "node_only",
            RootSet::AllInfinity => "all_infinity",
        }
    }

    fn contains(self, kind: HalfEdgeKind) -> bool {
        match self {
            RootSet::NodeOnly => kind == HalfEdgeKind::InfinityRoot(RootType::Node),
            RootSet::AllInfinity => matches!(kind, HalfEdgeKind::InfinityRoot(_)),
        }
    }
}

/// Index sets for `σ_k` and for the denominator of `C_{Γ⁰}(t)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct RootConfig {
    pub sigma: RootSet,
    pub denominator: RootSet,
}

impl RootConfig {
    pub fn to_json(&self) -> Value {
        json!({"sigma": self.sigma.as_str(), "denominator": self.denominator.as_str()})
    }
}

/// `t / (t + Ψ) = Σ_k (-Ψ)^k t^{-k}` down to `t^{-n}`.
pub fn c_gamma_infty(n: u32) -> LaurentClassSeries {
    let order = -(n as i64);
    let mut s = LaurentClassSeries::zero(order);
    let minus_psi = SymbolPoly::symbol(Symbol::Psi).scale(&-Rational::one());
    for k in 0..=n {
        s.add_term(-(k as i64), minus_psi.pow(k));
    }
    s
}

struct Factor {
    rho_inf: usize,
    /// `(half-edge, d_e)` in the σ set
    sigma: Vec<(usize, i64)>,
    denominator: Vec<(usize, i64)>,
}

fn factor(graph: &BipartiteGraph, index: usize, config: RootConfig) -> Result<Factor> {
    let zero = graph.zero_side();
    let &v = zero
        .get(index)
        .ok_or_else(|| Error::InvalidBipartite(format!("no 0-side factor {index} (have {})", zero.len())))?;
    let at = graph.half_edges_at(v);
    let pick = |set: RootSet| -> Vec<(usize, i64)> {
        at.iter()
            .map(|&h| (h, graph.half_edges()[h]))
            .filter(|(_, he)| set.contains(he.kind))
            .map(|(h, he)| (h, -he.weight))
            .collect()
    };
    let rho_inf = at.iter().filter(|&&h| matches!(graph.half_edges()[h].kind, HalfEdgeKind::InfinityRoot(_))).count();
    Ok(Factor {
        rho_inf,
        sigma: pick(config.sigma),
        denominator: pick(config.denominator),
    })
}

/// `d_e ψ̄_e - ev_e^* D`.
fn p_class(h: usize, d: i64) -> SymbolPoly {
    SymbolPoly::symbol(Symbol::PsiBar(h)).scale(&int(d)).sub(&SymbolPoly::symbol(Symbol::EvD(h)))
}

/// Elementary symmetric polynomials `σ_0, …, σ_k` of the `p` classes.
fn elementary(ps: &[SymbolPoly]) -> Vec<SymbolPoly> {
    let mut e = vec![SymbolPoly::one()];
    for p in ps {
        e.push(SymbolPoly::zero());
        for k in (1..e.len()).rev() {
            e[k] = e[k].add(&e[k - 1].mul(p));
        }
    }
    e
}

fn c_from(f: &Factor, index: usize, l: u32) -> SymbolPoly {
    let ps: Vec<SymbolPoly> = f.sigma.iter().map(|&(h, d)| p_class(h, d)).collect();
    let sigma = elementary(&ps);
    let psi_inf = SymbolPoly::symbol(Symbol::PsiInf(index));
    let mut c = SymbolPoly::zero();
    for (i, s) in sigma.iter().enumerate().take(l as usize + 1) {
        let sign = if i % 2 == 0 { int(1) } else { int(-1) };
        c = c.add(&psi_inf.pow(l - i as u32).mul(s).scale(&sign));
    }
    c
}

/// `c(l) = Σ_i (-1)^i Ψ_∞^{l-i} σ_i` for the 0-side factor `index`.
pub fn c_coefficient(graph: &BipartiteGraph, index: usize, l: u32, config: RootConfig) -> Result<SymbolPoly> {
    Ok(c_from(&factor(graph, index, config)?, index, l))
}

/// Highest possible power of `t` in `C_{Γ⁰_i}(t)`.
pub fn c_gamma0_top(graph: &BipartiteGraph, index: usize, config: RootConfig) -> Result<i64> {
    let f = factor(graph, index, config)?;
    Ok(f.rho_inf as i64 - 1 - f.denominator.len() as i64)
}

/// `C_{Γ⁰_i}(t)` down to `t^{-n}`.
///
/// The numerator is `Σ_{j≥0} c(j) t^{ρ_∞-1-j}`; each denominator factor is
/// expanded as `((t + ev)/d - ψ̄)^{-1} = Σ_k d p^k t^{-1-k}` with
/// `p = dψ̄ - ev`.
pub fn c_gamma0(graph: &BipartiteGraph, index: usize, n: u32, config: RootConfig) -> Result<LaurentClassSeries> {
    let f = factor(graph, index, config)?;
    if f.rho_inf == 0 {
        return Err(Error::Truncation(format!("0-side factor {index} has no ∞-roots")));
    }
    let target = -(n as i64);
    let num_top = f.rho_inf as i64 - 1;
    let den = f.denominator.len() as i64;

    // orders chosen so the product is exact down to t^target
    let num_order = target + den;
    let mut series = LaurentClassSeries::zero(num_order);
    let mut j = 0u32;
    while num_top - j as i64 >= num_order {
        series.add_term(num_top - j as i64, c_from(&f, index, j));
        j += 1;
    }
    let den_order = target - num_top + den - 1;
    for &(h, d) in &f.denominator {
        let p = p_class(h, d);
        let mut inv = LaurentClassSeries::zero(den_order);
        let mut k = 0u32;
        while -1 - k as i64 >= den_order {
            inv.add_term(-1 - k as i64, p.pow(k).scale(&int(d)));
            k += 1;
        }
        series = series.mul(&inv);
    }
    let mut out = LaurentClassSeries::zero(target);
    for (&p, c) in series.terms() {
        out.add_term(p, c.clone());
    }
    Ok(out)
}

/// Truncation that makes the `t⁰` coefficient exact.
pub fn auto_truncation(graph: &BipartiteGraph, config: RootConfig) -> Result<u32> {
    let mut n = 0i64;
    for i in 0..graph.zero_side().len() {
        n += c_gamma0_top(graph, i, config)?.max(0);
    }
    Ok(n as u32 + 1)
}

/// `[C_{Γ^∞}(t) ∏_i C_{Γ⁰_i}(t)]_{t⁰}` with every factor expanded to `t^{-n}`.
pub fn assemble_t0_at(graph: &BipartiteGraph, config: RootConfig, n: u32) -> Result<SymbolPoly> {
    let mut product = c_gamma_infty(n);
    for i in 0..graph.zero_side().len() {
        product = product.mul(&c_gamma0(graph, i, n, config)?);
    }
    product.coefficient(0)
}

/// The `t⁰` coefficient at the automatic truncation, rechecked two orders deeper.
pub fn assemble_t0(graph: &BipartiteGraph, config: RootConfig) -> Result<SymbolPoly> {
    let n = auto_truncation(graph, config)?;
    let value = assemble_t0_at(graph, config, n)?;
    let deeper = assemble_t0_at(graph, config, n + 2)?;
    if value != deeper {
        return Err(Error::Truncation(format!("t⁰ coefficient changed between truncations {n} and {}", n + 2)));
    }
    Ok(value)
}
