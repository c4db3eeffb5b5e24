use std::collections::BTreeMap;

use super::bipartite::{BipartiteGraph, HalfEdgeKind, RootType, Side, Vertex};
use super::topology::TopologicalType;
use crate::error::Result;
use crate::intersection::compositions;

/// Caps for [`enumerate_bipartite`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_zero_vertices: usize,
    /// cap on `b(v)` for ∞-side vertices
    pub max_vertex_degree: i64,
}

impl Default for Bounds {
    fn default() -> Self {
        Self { max_zero_vertices: 2, max_vertex_degree: 2 }
    }
}

/// All admissible bipartite graphs of type `t` within `bounds`, up to
/// isomorphism, each with `|Aut|`. Sorted by canonical form.
pub fn enumerate_bipartite(t: &TopologicalType, bounds: &Bounds) -> Result<Vec<(BipartiteGraph, u64)>> {
    t.validate()?;
    let mut found: BTreeMap<BipartiteGraph, u64> = BTreeMap::new();
    let max_inf = t.beta.max(1) as usize;
    for m0 in 0..=bounds.max_zero_vertices {
        for m_inf in 1..=max_inf {
            enumerate_shape(t, bounds, m0, m_inf, &mut found);
        }
    }
    Ok(found.into_iter().collect())
}

fn enumerate_shape(t: &TopologicalType, bounds: &Bounds, m0: usize, m_inf: usize, found: &mut BTreeMap<BipartiteGraph, u64>) {
    let nv = m0 + m_inf;
    let zero: Vec<usize> = (0..m0).collect();
    let inf: Vec<usize> = (m0..nv).collect();

    // possible (vertex, kind) for every label
    let mut choices: Vec<Vec<(usize, HalfEdgeKind)>> = Vec::new();
    for _ in 0..t.n {
        choices.push((0..nv).map(|v| (v, HalfEdgeKind::Leg)).collect());
    }
    for &m in &t.mu {
        let options = if m > 0 {
            let mut o: Vec<_> = zero.iter().map(|&v| (v, HalfEdgeKind::ZeroRoot)).collect();
            o.extend(inf.iter().map(|&v| (v, HalfEdgeKind::Root(RootType::Marking))));
            o
        } else {
            zero.iter().map(|&v| (v, HalfEdgeKind::InfinityRoot(RootType::Marking))).collect()
        };
        choices.push(options);
    }
    let weights: Vec<i64> = std::iter::repeat_n(0, t.n).chain(t.mu.iter().copied()).collect();

    let degree_vectors: Vec<Vec<i64>> = compositions(t.beta as u32, m_inf)
        .into_iter()
        .map(|c| c.into_iter().map(i64::from).collect::<Vec<_>>())
        .filter(|c: &Vec<i64>| c.iter().all(|&b| b <= bounds.max_vertex_degree))
        .collect();

    for_each_product(&choices, &mut |placement| {
        let mut root_sum = vec![0i64; nv];
        for (&(v, _), &w) in placement.iter().zip(&weights) {
            root_sum[v] += w;
        }
        // every 0-side vertex needs a positive node demand to reach Γ^∞
        if zero.iter().any(|&s| root_sum[s] <= 0) {
            return;
        }
        let demand: Vec<i64> = zero.iter().map(|&s| root_sum[s]).collect();
        let labeled: Vec<(usize, HalfEdgeKind, i64)> =
            placement.iter().zip(&weights).map(|(&(v, k), &w)| (v, k, w)).collect();
        for degrees in &degree_vectors {
            let capacity: Vec<i64> = inf.iter().zip(degrees).map(|(&v, &b)| b - root_sum[v]).collect();
            if capacity.iter().any(|&c| c < 0) {
                continue;
            }
            let mut vertices: Vec<Vertex> = vec![Vertex { side: Side::Zero, genus: 0, degree: 0 }; m0];
            vertices.extend(degrees.iter().map(|&b| Vertex { side: Side::Infinity, genus: 0, degree: b }));
            for_each_edge_set(&demand, capacity, m0, &mut |edges| {
                let h1 = edges.len() as i64 - nv as i64 + 1;
                if h1 < 0 || h1 > t.g as i64 {
                    return;
                }
                for genera in compositions(t.g - h1 as u32, nv) {
                    let mut verts = vertices.clone();
                    for (v, g) in verts.iter_mut().zip(genera) {
                        v.genus = g;
                    }
                    if let Ok(graph) = BipartiteGraph::build(verts, &labeled, edges) {
                        let (canon, aut) = graph.canonical_with_automorphisms();
                        found.insert(canon, aut);
                    }
                }
            });
        }
    });
}

fn for_each_product<T: Copy>(choices: &[Vec<T>], f: &mut dyn FnMut(&[T])) {
    fn rec<T: Copy>(choices: &[Vec<T>], acc: &mut Vec<T>, f: &mut dyn FnMut(&[T])) {
        let Some((first, rest)) = choices.split_first() else {
            f(acc);
            return;
        };
        for &c in first {
            acc.push(c);
            rec(rest, acc, f);
            acc.pop();
        }
    }
    rec(choices, &mut Vec::new(), f);
}

/// Edge multisets `(s, v, w)` with `Σ w` at each 0-side vertex equal to its
/// demand and at each ∞-side vertex equal to its capacity.
fn for_each_edge_set(demand: &[i64], capacity: Vec<i64>, m0: usize, f: &mut dyn FnMut(&[(usize, usize, i64)])) {
    fn rec(
        s: usize,
        left: i64,
        min_item: (usize, i64),
        demand: &[i64],
        capacity: &mut Vec<i64>,
        m0: usize,
        acc: &mut Vec<(usize, usize, i64)>,
        f: &mut dyn FnMut(&[(usize, usize, i64)]),
    ) {
        if left == 0 {
            if s + 1 == demand.len() {
                if capacity.iter().all(|&c| c == 0) {
                    f(acc);
                }
            } else {
                rec(s + 1, demand[s + 1], (0, 1), demand, capacity, m0, acc, f);
            }
            return;
        }
        for v in min_item.0..capacity.len() {
            let start = if v == min_item.0 { min_item.1 } else { 1 };
            for w in start..=left.min(capacity[v]) {
                capacity[v] -= w;
                acc.push((s, m0 + v, w));
                rec(s, left - w, (v, w), demand, capacity, m0, acc, f);
                acc.pop();
                capacity[v] += w;
            }
        }
    }
    let mut capacity = capacity;
    if demand.is_empty() {
        if capacity.iter().all(|&c| c == 0) {
            f(&[]);
        }
        return;
    }
    rec(0, demand[0], (0, 1), demand, &mut capacity, m0, &mut Vec::new(), f);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn degree_one_single_contact() {
        let t = TopologicalType::new(0, 0, 1, vec![1]).unwrap();
        let bounds = Bounds { max_zero_vertices: 2, max_vertex_degree: 1 };
        let graphs = enumerate_bipartite(&t, &bounds).unwrap();
        // only the ∞-side vertex with its marking root; a 0-side vertex would
        // be genus 0 with two roots
        assert_eq!(graphs.len(), 1);
        assert!(graphs[0].0.zero_side().is_empty());
        assert_eq!(graphs[0].1, 1);
    }

    #[test]
    fn negative_contact_needs_rubber() {
        let t = TopologicalType::new(0, 0, 1, vec![2, -1]).unwrap();
        let graphs = enumerate_bipartite(&t, &Bounds::default()).unwrap();
        assert!(!graphs.is_empty());
        for (g, aut) in &graphs {
            g.validate().unwrap();
            assert_eq!(g.topological_type(), t);
            assert!(*aut >= 1);
            // the negative contact sits on a 0-side vertex
            assert!(!g.zero_side().is_empty());
        }
    }

    #[test]
    fn loops_appear_in_genus_one() {
        let t = TopologicalType::new(1, 0, 2, vec![2]).unwrap();
        let graphs = enumerate_bipartite(&t, &Bounds::default()).unwrap();
        assert!(graphs.iter().any(|(g, aut)| g.h1() == 1 && *aut == 2));
        assert!(graphs.iter().all(|(g, _)| g.genus() == 1));
    }

    #[test]
    fn mismatched_degree_is_an_error() {
        let t = TopologicalType { g: 0, n: 0, beta: 2, mu: vec![1] };
        assert!(matches!(enumerate_bipartite(&t, &Bounds::default()), Err(Error::InvalidTopologicalType(_))));
    }
}
