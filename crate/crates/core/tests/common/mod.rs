//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library's enumeration or canonical-form code.
#![allow(dead_code)]

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use tautdr::relative::{BipartiteGraph, HalfEdgeKind, RootType, Side, TopologicalType};
use tautdr::{Rational, StableGraph};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn connected(nv: usize, pairs: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; nv];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in pairs {
            for (x, y) in [(a, b), (b, a)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn multiplicity_factor<T: Ord + Clone>(items: &[T]) -> u64 {
    let mut counts: BTreeMap<T, u64> = BTreeMap::new();
    for x in items {
        *counts.entry(x.clone()).or_default() += 1;
    }
    counts.values().map(|&m| (1..=m).product::<u64>()).product()
}

// ---- stable graphs -------------------------------------------------------

/// A stable graph as vertex genera, the vertex of each marking and the
/// sorted multiset of vertex pairs joined by edges.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GraphKey {
    pub genera: Vec<u32>,
    pub legs: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl GraphKey {
    fn relabel(&self, perm: &[usize]) -> GraphKey {
        let mut genera = vec![0; self.genera.len()];
        for (v, &g) in self.genera.iter().enumerate() {
            genera[perm[v]] = g;
        }
        let legs = self.legs.iter().map(|&v| perm[v]).collect();
        let mut edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (perm[a], perm[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        edges.sort_unstable();
        GraphKey { genera, legs, edges }
    }

    pub fn canonical(&self) -> GraphKey {
        let nv = self.genera.len();
        (0..nv).permutations(nv).map(|p| self.relabel(&p)).min().expect("at least one vertex")
    }

    /// Vertex permutations fixing the graph, times edge permutations and
    /// loop flips.
    pub fn automorphisms(&self) -> u64 {
        let me = self.relabel(&(0..self.genera.len()).collect::<Vec<_>>());
        let nv = self.genera.len();
        let fixing = (0..nv).permutations(nv).filter(|p| self.relabel(p) == me).count() as u64;
        let loops = self.edges.iter().filter(|(a, b)| a == b).count() as u32;
        fixing * multiplicity_factor(&self.edges) * 2u64.pow(loops)
    }

    pub fn of(graph: &StableGraph) -> GraphKey {
        let legs = graph.legs().iter().map(|&h| graph.vertex_of(h)).collect();
        let edges = graph
            .edges()
            .into_iter()
            .map(|(a, b)| {
                let (x, y) = (graph.vertex_of(a), graph.vertex_of(b));
                (x.min(y), x.max(y))
            })
            .collect();
        GraphKey { genera: graph.genera().to_vec(), legs, edges }.canonical()
    }
}

/// Every stable graph of type `(g, n)` by exhaustive search, keyed by
/// canonical form, with its automorphism count.
pub fn brute_stable_graphs(g: u32, n: usize) -> BTreeMap<GraphKey, u64> {
    let mut out = BTreeMap::new();
    let max_vertices = (2 * g as usize + n).saturating_sub(2).max(1);
    for nv in 1..=max_vertices {
        let pairs: Vec<(usize, usize)> = (0..nv).flat_map(|a| (a..nv).map(move |b| (a, b))).collect();
        for genera in (0..nv).map(|_| 0..=g).multi_cartesian_product() {
            let sum: u32 = genera.iter().sum();
            if sum > g {
                continue;
            }
            let ne = nv - 1 + (g - sum) as usize;
            for legs in (0..n).map(|_| 0..nv).multi_cartesian_product() {
                for edges in pairs.iter().copied().combinations_with_replacement(ne) {
                    if !connected(nv, &edges) {
                        continue;
                    }
                    let mut valence = vec![0i64; nv];
                    for &v in &legs {
                        valence[v] += 1;
                    }
                    for &(a, b) in &edges {
                        valence[a] += 1;
                        valence[b] += 1;
                    }
                    if (0..nv).any(|v| 2 * genera[v] as i64 - 2 + valence[v] <= 0) {
                        continue;
                    }
                    let key = GraphKey { genera: genera.clone(), legs: legs.clone(), edges }.canonical();
                    let aut = key.automorphisms();
                    out.insert(key, aut);
                }
            }
        }
    }
    out
}

// ---- weightings ----------------------------------------------------------

/// Σ over weightings mod r of ∏_e (w(h) w(h'))^{exps[e]}, by trying every
/// residue on the first half-edge of every edge.
pub fn brute_weight_sum(graph: &StableGraph, a: &[i64], exps: &[u32], r: u64) -> (u64, Rational) {
    let r_i = r as i64;
    let edges = graph.edges();
    let mut count = 0;
    let mut total = Rational::zero();
    for ws in (0..edges.len()).map(|_| 0..r_i).multi_cartesian_product() {
        let mut w = vec![0i64; graph.num_half_edges()];
        for (i, &h) in graph.legs().iter().enumerate() {
            w[h] = a[i].rem_euclid(r_i);
        }
        for (&(h, o), &x) in edges.iter().zip(&ws) {
            w[h] = x;
            w[o] = (-x).rem_euclid(r_i);
        }
        let mut at = vec![0i64; graph.num_vertices()];
        for (h, &x) in w.iter().enumerate() {
            at[graph.vertex_of(h)] += x;
        }
        if at.iter().any(|s| s.rem_euclid(r_i) != 0) {
            continue;
        }
        count += 1;
        let mut term = Rational::one();
        for (&(h, o), &e) in edges.iter().zip(exps) {
            for _ in 0..e {
                term *= Rational::from_integer(BigInt::from(w[h] * w[o]));
            }
        }
        total += term;
    }
    (count, total)
}

// ---- intersection numbers ------------------------------------------------

/// `<τ_{d_1} ... τ_{d_n}>_0 = (n-3)! / ∏ d_i!` when `Σ d_i = n - 3`.
pub fn genus0_psi(d: &[u32]) -> Rational {
    let n = d.len() as i64;
    if n < 3 || d.iter().map(|&x| x as i64).sum::<i64>() != n - 3 {
        return Rational::zero();
    }
    let den = d.iter().fold(BigInt::one(), |acc, &x| acc * factorial(x as u64));
    Rational::new(factorial(n as u64 - 3), den)
}

// ---- Pixton's class in degree one, genus zero ----------------------------

/// Coefficients of `P^{1,r}` on `M̄_{0,n}`: `a_i²/2` on `ψ_i`, and on the
/// divisor `D_S` (`1 ∈ S`) half the product of the two half-edge weights.
pub fn genus0_degree1(a: &[i64], r: u64) -> (Vec<Rational>, BTreeMap<Vec<usize>, Rational>) {
    let n = a.len();
    let r_i = r as i64;
    let psi = a.iter().map(|&x| q(x * x, 2)).collect();
    let mut divisors = BTreeMap::new();
    for size in 2..=n - 2 {
        for s in (1..=n).combinations(size).filter(|s| s[0] == 1) {
            let w = (-s.iter().map(|&i| a[i - 1]).sum::<i64>()).rem_euclid(r_i);
            let other = (-w).rem_euclid(r_i);
            divisors.insert(s, q(w * other, 2));
        }
    }
    (psi, divisors)
}

// ---- bipartite graphs ----------------------------------------------------

fn kind_code(k: HalfEdgeKind) -> u8 {
    match k {
        HalfEdgeKind::Leg => 0,
        HalfEdgeKind::ZeroRoot => 1,
        HalfEdgeKind::InfinityRoot(RootType::Marking) => 2,
        HalfEdgeKind::Root(RootType::Marking) => 3,
        HalfEdgeKind::InfinityRoot(RootType::Node) => 4,
        HalfEdgeKind::Root(RootType::Node) => 5,
    }
}

/// A bipartite graph as vertex data `(is ∞-side, genus, degree)`, the
/// vertex and kind of each label, and edges `(0-side vertex, ∞-side vertex, weight)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BipartiteKey {
    pub vertices: Vec<(bool, u32, i64)>,
    pub labels: Vec<(usize, u8)>,
    pub edges: Vec<(usize, usize, i64)>,
}

impl BipartiteKey {
    fn relabel(&self, perm: &[usize]) -> BipartiteKey {
        let mut vertices = vec![(false, 0, 0); self.vertices.len()];
        for (v, &data) in self.vertices.iter().enumerate() {
            vertices[perm[v]] = data;
        }
        let labels = self.labels.iter().map(|&(v, k)| (perm[v], k)).collect();
        let mut edges: Vec<_> = self.edges.iter().map(|&(s, v, w)| (perm[s], perm[v], w)).collect();
        edges.sort_unstable();
        BipartiteKey { vertices, labels, edges }
    }

    pub fn canonical(&self) -> BipartiteKey {
        let nv = self.vertices.len();
        (0..nv).permutations(nv).map(|p| self.relabel(&p)).min().expect("nonempty")
    }

    pub fn automorphisms(&self) -> u64 {
        let nv = self.vertices.len();
        let me = self.relabel(&(0..nv).collect::<Vec<_>>());
        let fixing = (0..nv).permutations(nv).filter(|p| self.relabel(p) == me).count() as u64;
        fixing * multiplicity_factor(&self.edges)
    }

    pub fn of(graph: &BipartiteGraph) -> BipartiteKey {
        let he = graph.half_edges();
        let vertices =
            graph.vertices().iter().map(|v| (v.side == Side::Infinity, v.genus, v.degree)).collect();
        let labels = graph.labels().iter().map(|&h| (he[h].vertex, kind_code(he[h].kind))).collect();
        let edges = graph.edges().iter().map(|&(a, b)| (he[a].vertex, he[b].vertex, he[b].weight)).collect();
        BipartiteKey { vertices, labels, edges }.canonical()
    }
}

/// Every admissible bipartite graph of type `t` with at most `max_zero`
/// 0-side vertices and ∞-side degrees at most `max_degree`, by exhaustive search.
pub fn brute_bipartite(t: &TopologicalType, max_zero: usize, max_degree: i64) -> BTreeMap<BipartiteKey, u64> {
    let mut out = BTreeMap::new();
    let beta = t.beta;
    let weights: Vec<i64> = std::iter::repeat_n(0, t.n).chain(t.mu.iter().copied()).collect();
    for m0 in 0..=max_zero {
        for m_inf in 1..=(beta as usize + 1) {
            let nv = m0 + m_inf;
            let options: Vec<Vec<(usize, u8)>> = weights
                .iter()
                .map(|&w| {
                    if w == 0 {
                        (0..nv).map(|v| (v, 0)).collect()
                    } else if w > 0 {
                        (0..m0).map(|v| (v, 1)).chain((m0..nv).map(|v| (v, 3))).collect()
                    } else {
                        (0..m0).map(|v| (v, 2)).collect()
                    }
                })
                .collect();
            let triples: Vec<(usize, usize, i64)> = (0..m0)
                .flat_map(|s| (m0..nv).flat_map(move |v| (1..=beta).map(move |w| (s, v, w))))
                .collect();
            for degrees in (0..m_inf).map(|_| 0..=beta.min(max_degree)).multi_cartesian_product() {
                if degrees.iter().sum::<i64>() != beta {
                    continue;
                }
                for genera in (0..nv).map(|_| 0..=t.g).multi_cartesian_product() {
                    for labels in options.iter().cloned().multi_cartesian_product() {
                        for ne in 0..=beta as usize {
                            for edges in triples.iter().copied().combinations_with_replacement(ne) {
                                let vertices: Vec<(bool, u32, i64)> = (0..nv)
                                    .map(|v| (v >= m0, genera[v], if v >= m0 { degrees[v - m0] } else { 0 }))
                                    .collect();
                                if admissible(t, &vertices, &labels, &weights, &edges) {
                                    let key = BipartiteKey { vertices, labels: labels.clone(), edges }.canonical();
                                    let aut = key.automorphisms();
                                    out.insert(key, aut);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn admissible(
    t: &TopologicalType,
    vertices: &[(bool, u32, i64)],
    labels: &[(usize, u8)],
    weights: &[i64],
    edges: &[(usize, usize, i64)],
) -> bool {
    let nv = vertices.len();
    let mut root_sum = vec![0i64; nv];
    let mut count = vec![0i64; nv];
    for (&(v, _), &w) in labels.iter().zip(weights) {
        root_sum[v] += w;
        count[v] += 1;
    }
    for &(s, v, w) in edges {
        root_sum[s] -= w;
        root_sum[v] += w;
        count[s] += 1;
        count[v] += 1;
    }
    for (v, &(_, g, b)) in vertices.iter().enumerate() {
        if root_sum[v] != b {
            return false;
        }
        if b == 0 && count[v] <= 2 - 2 * g as i64 {
            return false;
        }
    }
    let pairs: Vec<(usize, usize)> = edges.iter().map(|&(s, v, _)| (s, v)).collect();
    if !connected(nv, &pairs) {
        return false;
    }
    let genus = vertices.iter().map(|v| v.1 as i64).sum::<i64>() + edges.len() as i64 - nv as i64 + 1;
    genus == t.g as i64
}

/// Topological types with `β ≤ max_beta`, `ρ ≤ max_rho`, `n ≤ max_n`,
/// `g ≤ max_genus` and contact orders bounded by `max_mu` in absolute value.
pub fn topological_types(max_genus: u32, max_n: usize, max_beta: i64, max_rho: usize, max_mu: i64) -> Vec<TopologicalType> {
    let orders: Vec<i64> = (-max_mu..=max_mu).filter(|&m| m != 0).collect();
    let mut out = Vec::new();
    for g in 0..=max_genus {
        for n in 0..=max_n {
            for beta in 0..=max_beta {
                for rho in 0..=max_rho {
                    for mu in orders.iter().copied().combinations_with_replacement(rho) {
                        if mu.iter().sum::<i64>() == beta {
                            out.push(TopologicalType::new(g, n, beta, mu).expect("valid type"));
                        }
                    }
                }
            }
        }
    }
    out
}
