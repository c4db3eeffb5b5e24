//! Products of decorated strata over common degenerations.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use parking_lot::RwLock;

use super::stratum::{pullback, sum_mul, DecoratedStratum, Monomial, MonomialSum};
use crate::error::{Error, Result};
use crate::scalar::Rational;
use crate::stable_graphs::{graphs_with_edges, isomorphisms, StableGraph};

/// Largest ambient dimension for products of two non-trivial strata.
pub const PRODUCT_DIMENSION_LIMIT: usize = 4;

pub(crate) type StratumSum = Vec<(DecoratedStratum, Rational)>;

static PRODUCTS: Lazy<RwLock<HashMap<(DecoratedStratum, DecoratedStratum), Arc<StratumSum>>>> =
    Lazy::new(Default::default);

/// One way of seeing a target graph as a contraction of `graph`.
struct Structure {
    /// kept edges, by smaller half-edge
    edges: Vec<usize>,
    /// target half-edge -> half-edge of `graph`
    half_map: Vec<usize>,
    /// vertex of `graph` -> target vertex
    vertex_map: Vec<usize>,
}

fn structures(graph: &StableGraph, target: &StableGraph) -> Vec<Structure> {
    let edges: Vec<usize> = graph.edges().into_iter().map(|(h, _)| h).collect();
    let k = target.num_edges();
    let mut out = Vec::new();
    for_each_subset(edges.len(), k, &mut |subset| {
        let keep: Vec<usize> = subset.iter().map(|&i| edges[i]).collect();
        let (contracted, vmap, surviving) = graph.contract_except(&keep);
        for iso in isomorphisms(&contracted, target) {
            let mut half_map = vec![0; target.num_half_edges()];
            for (i, &t) in iso.half_map.iter().enumerate() {
                half_map[t] = surviving[i];
            }
            let vertex_map = vmap.iter().map(|&c| iso.vertex_map[c]).collect();
            out.push(Structure { edges: keep.clone(), half_map, vertex_map });
        }
    });
    out
}

fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), f);
}

fn decoration(s: &DecoratedStratum) -> Monomial {
    Monomial { psi: s.psi().to_vec(), kappa: s.kappa().to_vec() }
}

fn vertex_overloaded(graph: &StableGraph, m: &Monomial) -> bool {
    (0..graph.num_vertices()).any(|v| {
        let deg: usize = graph.half_edges_at(v).iter().map(|&h| m.psi[h] as usize).sum::<usize>()
            + m.kappa[v].iter().map(|&k| k as usize).sum::<usize>();
        deg > graph.vertex_dim(v)
    })
}

fn collect(graph: &StableGraph, sum: MonomialSum, weight: &Rational, out: &mut HashMap<DecoratedStratum, Rational>) {
    for (m, c) in sum {
        if vertex_overloaded(graph, &m) {
            continue;
        }
        let s = DecoratedStratum::canonical(graph, &m.psi, m.kappa);
        *out.entry(s).or_insert_with(Rational::zero) += c * weight;
    }
}

/// Product of the classes of two strata (each with coefficient one), in the
/// stored-coefficient convention.
pub(crate) fn stratum_product(a: &DecoratedStratum, b: &DecoratedStratum) -> Result<Arc<StratumSum>> {
    let key = if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
    if let Some(found) = PRODUCTS.read().get(&key) {
        return Ok(found.clone());
    }
    let result = Arc::new(compute(&key.0, &key.1)?);
    PRODUCTS.write().insert(key, result.clone());
    Ok(result)
}

fn compute(a: &DecoratedStratum, b: &DecoratedStratum) -> Result<StratumSum> {
    let graph_a = a.graph();
    let graph_b = b.graph();
    let g = graph_a.genus();
    let n = graph_a.num_legs();
    let dim = graph_a.ambient_dim();
    let mut out: HashMap<DecoratedStratum, Rational> = HashMap::new();
    if a.degree() + b.degree() > dim {
        return Ok(Vec::new());
    }
    if graph_a.is_trivial() || graph_b.is_trivial() {
        let (t, other) = if graph_a.is_trivial() { (a, b) } else { (b, a) };
        let graph = other.graph();
        let vertex_map = vec![0; graph.num_vertices()];
        let pulled = pullback(graph, t.psi(), t.kappa(), graph.legs(), &vertex_map);
        let own = MonomialSum::from([(decoration(other), Rational::one())]);
        collect(graph, sum_mul(&pulled, &own), &Rational::one(), &mut out);
    } else {
        if dim > PRODUCT_DIMENSION_LIMIT {
            return Err(Error::ProductBeyondCapability { dim, limit: PRODUCT_DIMENSION_LIMIT });
        }
        let (ea, eb) = (graph_a.num_edges(), graph_b.num_edges());
        let weight = Rational::new(BigInt::one(), BigInt::from(a.automorphisms() * b.automorphisms()));
        for m in ea.max(eb)..=(ea + eb).min(dim) {
            for graph in graphs_with_edges(g, n, m)? {
                let sa = structures(&graph, graph_a);
                if sa.is_empty() {
                    continue;
                }
                let sb = structures(&graph, graph_b);
                for x in &sa {
                    for y in &sb {
                        if x.edges.len() + y.edges.len() - shared(&x.edges, &y.edges).len() != m {
                            continue;
                        }
                        let mut sum = sum_mul(
                            &pullback(&graph, a.psi(), a.kappa(), &x.half_map, &x.vertex_map),
                            &pullback(&graph, b.psi(), b.kappa(), &y.half_map, &y.vertex_map),
                        );
                        for h in shared(&x.edges, &y.edges) {
                            sum = sum_mul(&sum, &excess(&graph, h));
                        }
                        collect(&graph, sum, &weight, &mut out);
                    }
                }
            }
        }
    }
    let mut terms: StratumSum = out.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    terms.sort();
    Ok(terms)
}

fn shared(x: &[usize], y: &[usize]) -> Vec<usize> {
    x.iter().copied().filter(|h| y.contains(h)).collect()
}

/// `-ψ_h - ψ_h'` for the edge with smaller half-edge `h`.
fn excess(graph: &StableGraph, h: usize) -> MonomialSum {
    let mut out = MonomialSum::new();
    for x in [h, graph.involution(h)] {
        let mut m = Monomial::one(graph);
        m.psi[x] = 1;
        out.insert(m, -Rational::one());
    }
    out
}
