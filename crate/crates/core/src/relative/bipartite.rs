use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::topology::TopologicalType;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// rubber vertices (graphs of type 0)
    Zero,
    /// vertices of Γ^∞
    Infinity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootType {
    Node,
    Marking,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HalfEdgeKind {
    Leg,
    /// positive root of a 0-side vertex
    ZeroRoot,
    /// negative root of a 0-side vertex
    InfinityRoot(RootType),
    /// positive root of an ∞-side vertex
    Root(RootType),
}

impl HalfEdgeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            HalfEdgeKind::Leg => "leg",
            HalfEdgeKind::ZeroRoot => "zero_root",
            HalfEdgeKind::InfinityRoot(RootType::Node) => "inf_root_node",
            HalfEdgeKind::InfinityRoot(RootType::Marking) => "inf_root_marking",
            HalfEdgeKind::Root(RootType::Node) => "root_node",
            HalfEdgeKind::Root(RootType::Marking) => "root_marking",
        }
    }

    pub fn is_node(self) -> bool {
        matches!(self, HalfEdgeKind::InfinityRoot(RootType::Node) | HalfEdgeKind::Root(RootType::Node))
    }

    pub fn is_root(self) -> bool {
        self != HalfEdgeKind::Leg
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub side: Side,
    pub genus: u32,
    /// `b(v)`; always 0 on the 0-side since `H_2(pt) = 0`
    pub degree: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfEdge {
    pub vertex: usize,
    pub kind: HalfEdgeKind,
    /// contact weight; 0 for legs
    pub weight: i64,
}

/// Admissible bipartite graph for the target `(P¹, pt)`.
///
/// `edges[k] = (a, b)` joins the node-type ∞-root `a` of a 0-side vertex to
/// the node-type root `b` of an ∞-side vertex. `labels[i]` is the half-edge
/// carrying label `i + 1`; legs come first. Graphs returned by
/// [`BipartiteGraph::canonical`] compare equal iff they are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BipartiteGraph {
    vertices: Vec<Vertex>,
    half_edges: Vec<HalfEdge>,
    edges: Vec<(usize, usize)>,
    labels: Vec<usize>,
}

impl BipartiteGraph {
    pub fn new(
        vertices: Vec<Vertex>,
        half_edges: Vec<HalfEdge>,
        edges: Vec<(usize, usize)>,
        labels: Vec<usize>,
    ) -> Result<Self> {
        let graph = Self { vertices, half_edges, edges, labels };
        graph.validate()?;
        Ok(graph)
    }

    /// Builds a graph from its labeled half-edges (in label order) and its
    /// edges `(0-side vertex, ∞-side vertex, weight > 0)`.
    pub fn build(vertices: Vec<Vertex>, labeled: &[(usize, HalfEdgeKind, i64)], edges: &[(usize, usize, i64)]) -> Result<Self> {
        let (half_edges, edge_pairs, labels) = assemble(labeled, edges);
        Self::new(vertices, half_edges, edge_pairs, labels)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn half_edges(&self) -> &[HalfEdge] {
        &self.half_edges
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Indices of the 0-side vertices, in order; these are the factors `Γ⁰_i`.
    pub fn zero_side(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.vertices[v].side == Side::Zero).collect()
    }

    pub fn infinity_side(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.vertices[v].side == Side::Infinity).collect()
    }

    pub fn half_edges_at(&self, v: usize) -> Vec<usize> {
        (0..self.half_edges.len()).filter(|&h| self.half_edges[h].vertex == v).collect()
    }

    pub fn num_legs(&self) -> usize {
        self.labels.iter().take_while(|&&h| self.half_edges[h].kind == HalfEdgeKind::Leg).count()
    }

    pub fn h1(&self) -> usize {
        self.edges.len() + 1 - self.vertices.len()
    }

    /// `Σ g(v) + h¹`.
    pub fn genus(&self) -> u32 {
        self.vertices.iter().map(|v| v.genus).sum::<u32>() + self.h1() as u32
    }

    pub fn topological_type(&self) -> TopologicalType {
        let n = self.num_legs();
        TopologicalType {
            g: self.genus(),
            n,
            beta: self.vertices.iter().map(|v| v.degree).sum(),
            mu: self.labels[n..].iter().map(|&h| self.half_edges[h].weight).collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidBipartite(msg));
        let nv = self.vertices.len();
        if !self.vertices.iter().any(|v| v.side == Side::Infinity) {
            return bad("Γ^∞ has no vertices".into());
        }
        for (v, vert) in self.vertices.iter().enumerate() {
            if vert.side == Side::Zero && vert.degree != 0 {
                return bad(format!("0-side vertex {v} has degree {}", vert.degree));
            }
            if vert.degree < 0 {
                return bad(format!("vertex {v} has negative degree"));
            }
        }
        for (h, he) in self.half_edges.iter().enumerate() {
            if he.vertex >= nv {
                return bad(format!("half-edge {h} attached to missing vertex"));
            }
            let side = self.vertices[he.vertex].side;
            let ok = match he.kind {
                HalfEdgeKind::Leg => he.weight == 0,
                HalfEdgeKind::ZeroRoot => side == Side::Zero && he.weight > 0,
                HalfEdgeKind::InfinityRoot(_) => side == Side::Zero && he.weight < 0,
                HalfEdgeKind::Root(_) => side == Side::Infinity && he.weight > 0,
            };
            if !ok {
                return bad(format!("half-edge {h} of kind {} has weight {} on the {side:?} side", he.kind.as_str(), he.weight));
            }
        }

        let mut used = vec![0usize; self.half_edges.len()];
        for &(a, b) in &self.edges {
            if a >= self.half_edges.len() || b >= self.half_edges.len() {
                return bad("edge refers to a missing half-edge".into());
            }
            let (ha, hb) = (self.half_edges[a], self.half_edges[b]);
            if ha.kind != HalfEdgeKind::InfinityRoot(RootType::Node) || hb.kind != HalfEdgeKind::Root(RootType::Node) {
                return bad(format!("edge ({a}, {b}) does not join node-type roots across the sides"));
            }
            if ha.weight + hb.weight != 0 {
                return bad(format!("edge ({a}, {b}) has weights summing to {}", ha.weight + hb.weight));
            }
            used[a] += 1;
            used[b] += 1;
        }
        for &h in &self.labels {
            if h >= self.half_edges.len() {
                return bad("label refers to a missing half-edge".into());
            }
            used[h] += 1;
        }
        for (h, &count) in used.iter().enumerate() {
            if count != 1 {
                let role = if self.half_edges[h].kind.is_node() { "edge" } else { "label" };
                return bad(format!("half-edge {h} is covered by {count} {role}s, expected 1"));
            }
            if self.half_edges[h].kind.is_node() == self.labels.contains(&h) {
                return bad(format!("half-edge {h} has the wrong role"));
            }
        }
        let n = self.num_legs();
        if self.labels[n..].iter().any(|&h| self.half_edges[h].kind == HalfEdgeKind::Leg) {
            return bad("legs must carry the first labels".into());
        }

        for (v, vert) in self.vertices.iter().enumerate() {
            let at = self.half_edges_at(v);
            let roots: i64 = at.iter().map(|&h| self.half_edges[h].weight).sum();
            if roots != vert.degree {
                return bad(format!("root weights at vertex {v} sum to {roots}, expected {}", vert.degree));
            }
            if vert.degree == 0 && at.len() as i64 <= 2 - 2 * vert.genus as i64 {
                return bad(format!("vertex {v} is unstable"));
            }
        }

        let mut seen = vec![false; nv];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                let (x, y) = (self.half_edges[a].vertex, self.half_edges[b].vertex);
                for (p, q) in [(x, y), (y, x)] {
                    if p == v && !seen[q] {
                        seen[q] = true;
                        stack.push(q);
                    }
                }
            }
        }
        if seen.contains(&false) {
            return bad("graph is disconnected".into());
        }
        Ok(())
    }

    /// Per-vertex signature used for canonical ordering.
    fn signature(&self, v: usize) -> (Side, u32, i64, Vec<usize>) {
        let vert = self.vertices[v];
        let labels = (0..self.labels.len()).filter(|&i| self.half_edges[self.labels[i]].vertex == v).collect();
        (vert.side, vert.genus, vert.degree, labels)
    }

    fn edge_triples(&self, pos: &[usize]) -> Vec<(usize, usize, i64)> {
        let mut out: Vec<_> = self
            .edges
            .iter()
            .map(|&(a, b)| (pos[self.half_edges[a].vertex], pos[self.half_edges[b].vertex], self.half_edges[b].weight))
            .collect();
        out.sort_unstable();
        out
    }

    /// Canonical representative and `|Aut|`.
    ///
    /// Automorphisms fix every labeled half-edge; they permute vertices and
    /// node-type pairs.
    pub fn canonical_with_automorphisms(&self) -> (Self, u64) {
        let mut order: Vec<usize> = (0..self.vertices.len()).collect();
        let sigs: Vec<_> = order.iter().map(|&v| self.signature(v)).collect();
        order.sort_by(|&a, &b| sigs[a].cmp(&sigs[b]));
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for &v in &order {
            match groups.last_mut() {
                Some(gr) if sigs[gr[0]] == sigs[v] => gr.push(v),
                _ => groups.push(vec![v]),
            }
        }
        let mut best: Option<(Vec<(usize, usize, i64)>, Vec<usize>)> = None;
        let mut count = 0u64;
        for_each_arrangement(&groups, &mut |arranged| {
            let mut pos = vec![0; arranged.len()];
            for (i, &v) in arranged.iter().enumerate() {
                pos[v] = i;
            }
            let enc = self.edge_triples(&pos);
            match &best {
                Some((b, _)) if *b < enc => {}
                Some((b, _)) if *b == enc => count += 1,
                _ => {
                    best = Some((enc, pos));
                    count = 1;
                }
            }
        });
        let (triples, pos) = best.expect("at least one vertex");
        let mut vertices = vec![self.vertices[0]; self.vertices.len()];
        for (v, &p) in pos.iter().enumerate() {
            vertices[p] = self.vertices[v];
        }
        let labeled: Vec<_> = self
            .labels
            .iter()
            .map(|&h| {
                let he = self.half_edges[h];
                (pos[he.vertex], he.kind, he.weight)
            })
            .collect();
        let (half_edges, edges, labels) = assemble(&labeled, &triples);
        let mut parallel: BTreeMap<(usize, usize, i64), u64> = BTreeMap::new();
        for t in &triples {
            *parallel.entry(*t).or_default() += 1;
        }
        let aut = parallel.values().fold(count, |acc, &m| acc * (1..=m).product::<u64>());
        (Self { vertices, half_edges, edges, labels }, aut)
    }

    pub fn canonical(&self) -> Self {
        self.canonical_with_automorphisms().0
    }

    pub fn automorphism_count(&self) -> u64 {
        self.canonical_with_automorphisms().1
    }

    pub fn to_json(&self) -> Value {
        let side = |s: Side| match s {
            Side::Zero => "0",
            Side::Infinity => "inf",
        };
        json!({
            "S0": self.zero_side(),
            "Ginf": self.infinity_side(),
            "vertices": self.vertices.iter().enumerate().map(|(i, v)| json!({
                "id": i, "side": side(v.side), "genus": v.genus, "degree": v.degree,
            })).collect::<Vec<_>>(),
            "half_edges": self.half_edges.iter().enumerate().map(|(i, h)| json!({
                "id": i, "vertex": h.vertex, "kind": h.kind.as_str(), "weight": h.weight,
            })).collect::<Vec<_>>(),
            "E": self.edges.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
            "I": self.labels,
            "genus": self.genus(),
            "topological_type": self.topological_type().to_json(),
        })
    }
}

/// `Σ g(v) + h¹(𝔊)`.
pub fn genus_of(graph: &BipartiteGraph) -> u32 {
    graph.genus()
}

type Parts = (Vec<HalfEdge>, Vec<(usize, usize)>, Vec<usize>);

fn assemble(labeled: &[(usize, HalfEdgeKind, i64)], edges: &[(usize, usize, i64)]) -> Parts {
    let mut half_edges: Vec<HalfEdge> =
        labeled.iter().map(|&(vertex, kind, weight)| HalfEdge { vertex, kind, weight }).collect();
    let labels = (0..half_edges.len()).collect();
    let mut pairs = Vec::new();
    for &(s, v, w) in edges {
        let h = half_edges.len();
        half_edges.push(HalfEdge { vertex: s, kind: HalfEdgeKind::InfinityRoot(RootType::Node), weight: -w });
        half_edges.push(HalfEdge { vertex: v, kind: HalfEdgeKind::Root(RootType::Node), weight: w });
        pairs.push((h, h + 1));
    }
    (half_edges, pairs, labels)
}

/// Calls `f` on every concatenation of permutations of the groups.
fn for_each_arrangement(groups: &[Vec<usize>], f: &mut dyn FnMut(&[usize])) {
    fn rec(groups: &[Vec<usize>], acc: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        let Some((first, rest)) = groups.split_first() else {
            f(acc);
            return;
        };
        let mut items = first.clone();
        permute(&mut items, 0, &mut |p| {
            let len = acc.len();
            acc.extend_from_slice(p);
            rec(rest, acc, f);
            acc.truncate(len);
        });
    }
    fn permute(items: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
        if k == items.len() {
            f(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            permute(items, k + 1, f);
            items.swap(k, i);
        }
    }
    rec(groups, &mut Vec::new(), f);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zero(genus: u32) -> Vertex {
        Vertex { side: Side::Zero, genus, degree: 0 }
    }

    fn inf(genus: u32, degree: i64) -> Vertex {
        Vertex { side: Side::Infinity, genus, degree }
    }

    const ZR: HalfEdgeKind = HalfEdgeKind::ZeroRoot;
    const IM: HalfEdgeKind = HalfEdgeKind::InfinityRoot(RootType::Marking);
    const RM: HalfEdgeKind = HalfEdgeKind::Root(RootType::Marking);

    #[test]
    fn genus_examples() {
        // (g=1, g=0) joined by one edge
        let g = BipartiteGraph::build(vec![zero(1), inf(0, 1)], &[(0, ZR, 1)], &[(0, 1, 1)]).unwrap();
        assert_eq!(genus_of(&g), 1);
        // two genus-0 vertices, two parallel edges
        let g = BipartiteGraph::build(vec![zero(0), inf(0, 2)], &[(0, ZR, 2)], &[(0, 1, 1), (0, 1, 1)]).unwrap();
        assert_eq!(g.h1(), 1);
        assert_eq!(genus_of(&g), 1);
        assert_eq!(g.automorphism_count(), 2);
        assert_eq!(g.topological_type(), TopologicalType::new(1, 0, 2, vec![2]).unwrap());
    }

    #[test]
    fn rejects_invalid() {
        // 0-side vertex of genus 2 without edges
        assert!(BipartiteGraph::build(vec![zero(2), inf(0, 1)], &[(1, RM, 1)], &[]).is_err());
        // edge weights summing to -1: ∞-root -2 against root +1
        let half_edges = vec![
            HalfEdge { vertex: 0, kind: ZR, weight: 2 },
            HalfEdge { vertex: 0, kind: HalfEdgeKind::InfinityRoot(RootType::Node), weight: -2 },
            HalfEdge { vertex: 1, kind: HalfEdgeKind::Root(RootType::Node), weight: 1 },
            HalfEdge { vertex: 0, kind: HalfEdgeKind::Leg, weight: 0 },
        ];
        let err = BipartiteGraph::new(vec![zero(0), inf(0, 1)], half_edges, vec![(1, 2)], vec![3, 0]).unwrap_err();
        assert!(err.to_string().contains("summing to -1"), "{err}");
        // genus-0 0-side vertex with two half-edges
        let err = BipartiteGraph::build(vec![zero(0), inf(0, 1)], &[(0, ZR, 1)], &[(0, 1, 1)]).unwrap_err();
        assert!(err.to_string().contains("unstable"), "{err}");
        // root sum at the ∞ vertex differs from its degree
        assert!(BipartiteGraph::build(vec![inf(0, 2)], &[(0, RM, 1)], &[]).is_err());
        // no ∞-side vertex
        assert!(BipartiteGraph::build(vec![zero(1)], &[(0, ZR, 1), (0, IM, -1)], &[]).is_err());
    }

    #[test]
    fn canonical_form_identifies_relabelings() {
        let a = BipartiteGraph::build(
            vec![zero(0), inf(0, 1), inf(0, 1)],
            &[(0, HalfEdgeKind::Leg, 0), (0, ZR, 2)],
            &[(0, 1, 1), (0, 2, 1)],
        )
        .unwrap();
        let b = BipartiteGraph::build(
            vec![inf(0, 1), inf(0, 1), zero(0)],
            &[(2, HalfEdgeKind::Leg, 0), (2, ZR, 2)],
            &[(2, 1, 1), (2, 0, 1)],
        )
        .unwrap();
        assert_eq!(a.canonical(), b.canonical());
        assert_eq!(a.automorphism_count(), 2);
        assert_eq!(a.canonical().canonical_with_automorphisms(), a.canonical_with_automorphisms());
    }

    #[test]
    fn json_fields() {
        let g = BipartiteGraph::build(vec![zero(0), inf(0, 1)], &[(0, ZR, 2), (0, IM, -1)], &[(0, 1, 1)]).unwrap();
        let j = g.to_json();
        assert_eq!(j["S0"], json!([0]));
        assert_eq!(j["E"], json!([[2, 3]]));
        assert_eq!(j["I"], json!([0, 1]));
        assert_eq!(j["topological_type"]["mu"], json!([2, -1]));
        assert_eq!(j["half_edges"][1]["kind"], "inf_root_marking");
    }
}
