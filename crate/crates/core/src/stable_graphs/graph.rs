use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Dual graph of a stable curve with `n` ordered markings.
///
/// Half-edges are `0..num_half_edges()`. Fixed points of the involution are
/// legs; `legs[i]` is the half-edge carrying marking `i + 1`. Graphs produced
/// by enumeration are in canonical labeling, so structural equality is
/// isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StableGraph {
    genera: Vec<u32>,
    vertex_of: Vec<usize>,
    involution: Vec<usize>,
    legs: Vec<usize>,
}

pub fn check_stable(g: u32, n: usize) -> Result<()> {
    if 2 * g as i64 - 2 + n as i64 > 0 {
        Ok(())
    } else {
        Err(Error::Unstable { g, n })
    }
}

impl StableGraph {
    pub fn new(genera: Vec<u32>, vertex_of: Vec<usize>, involution: Vec<usize>, legs: Vec<usize>) -> Result<Self> {
        let graph = Self::new_unchecked(genera, vertex_of, involution, legs);
        graph.validate()?;
        Ok(graph)
    }

    pub(crate) fn new_unchecked(
        genera: Vec<u32>,
        vertex_of: Vec<usize>,
        involution: Vec<usize>,
        legs: Vec<usize>,
    ) -> Self {
        Self { genera, vertex_of, involution, legs }
    }

    /// The single-vertex graph of the smooth locus.
    pub fn trivial(g: u32, n: usize) -> Result<Self> {
        check_stable(g, n)?;
        Ok(Self::new_unchecked(vec![g], vec![0; n], (0..n).collect(), (0..n).collect()))
    }

    /// Graph from a vertex genus list, per-marking vertices and an edge list.
    pub fn from_edges(genera: &[u32], leg_vertices: &[usize], edges: &[(usize, usize)]) -> Result<Self> {
        let n = leg_vertices.len();
        let mut vertex_of: Vec<usize> = leg_vertices.to_vec();
        let mut involution: Vec<usize> = (0..n).collect();
        for &(a, b) in edges {
            let h = vertex_of.len();
            vertex_of.push(a);
            vertex_of.push(b);
            involution.push(h + 1);
            involution.push(h);
        }
        Self::new(genera.to_vec(), vertex_of, involution, (0..n).collect())
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidGraph(msg));
        let nh = self.vertex_of.len();
        let nv = self.genera.len();
        if nv == 0 {
            return bad("no vertices".into());
        }
        if self.involution.len() != nh {
            return bad("involution length differs from half-edge count".into());
        }
        for h in 0..nh {
            if self.vertex_of[h] >= nv {
                return bad(format!("half-edge {h} attached to missing vertex"));
            }
            let j = self.involution[h];
            if j >= nh || self.involution[j] != h {
                return bad(format!("involution is not an involution at {h}"));
            }
        }
        let mut seen = vec![false; nh];
        for &l in &self.legs {
            if l >= nh || self.involution[l] != l || seen[l] {
                return bad(format!("leg {l} is not a distinct fixed point"));
            }
            seen[l] = true;
        }
        if (0..nh).filter(|&h| self.involution[h] == h).count() != self.legs.len() {
            return bad("fixed point of the involution that is not a leg".into());
        }
        if !self.is_connected() {
            return bad("graph is not connected".into());
        }
        for v in 0..nv {
            if 2 * self.genera[v] as i64 - 2 + self.valence(v) as i64 <= 0 {
                return bad(format!("vertex {v} is unstable"));
            }
        }
        Ok(())
    }

    fn is_connected(&self) -> bool {
        let nv = self.genera.len();
        let mut adj = vec![Vec::new(); nv];
        for (h, h2) in self.edges() {
            adj[self.vertex_of[h]].push(self.vertex_of[h2]);
            adj[self.vertex_of[h2]].push(self.vertex_of[h]);
        }
        let mut seen = vec![false; nv];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn genera(&self) -> &[u32] {
        &self.genera
    }

    pub fn vertex_genus(&self, v: usize) -> u32 {
        self.genera[v]
    }

    pub fn vertex_of(&self, h: usize) -> usize {
        self.vertex_of[h]
    }

    pub fn involution(&self, h: usize) -> usize {
        self.involution[h]
    }

    pub fn legs(&self) -> &[usize] {
        &self.legs
    }

    pub fn num_vertices(&self) -> usize {
        self.genera.len()
    }

    pub fn num_half_edges(&self) -> usize {
        self.vertex_of.len()
    }

    pub fn num_legs(&self) -> usize {
        self.legs.len()
    }

    pub fn num_edges(&self) -> usize {
        (self.num_half_edges() - self.num_legs()) / 2
    }

    /// Edges as half-edge pairs `(h, h')` with `h < h'`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.num_half_edges())
            .filter(|&h| self.involution[h] > h)
            .map(|h| (h, self.involution[h]))
            .collect()
    }

    pub fn is_leg(&self, h: usize) -> bool {
        self.involution[h] == h
    }

    /// Marking index (0-based) of a leg half-edge.
    pub fn marking_of(&self, h: usize) -> Option<usize> {
        self.legs.iter().position(|&l| l == h)
    }

    pub fn half_edges_at(&self, v: usize) -> Vec<usize> {
        (0..self.num_half_edges()).filter(|&h| self.vertex_of[h] == v).collect()
    }

    pub fn valence(&self, v: usize) -> usize {
        self.vertex_of.iter().filter(|&&w| w == v).count()
    }

    pub fn h1(&self) -> usize {
        self.num_edges() + 1 - self.num_vertices()
    }

    pub fn genus(&self) -> u32 {
        self.genera.iter().sum::<u32>() + self.h1() as u32
    }

    /// Dimension `3g - 3 + n` of the ambient moduli space.
    pub fn ambient_dim(&self) -> usize {
        (3 * self.genus() as usize + self.num_legs()).saturating_sub(3)
    }

    /// Dimension of the moduli space attached to vertex `v`.
    pub fn vertex_dim(&self, v: usize) -> usize {
        3 * self.genera[v] as usize + self.valence(v) - 3
    }

    pub fn is_trivial(&self) -> bool {
        self.num_vertices() == 1 && self.num_edges() == 0
    }

    /// Relabels markings: marking `i + 1` becomes marking `perm[i] + 1`.
    pub fn permute_legs(&self, perm: &[usize]) -> Result<Self> {
        let n = self.legs.len();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidGraph(format!("{perm:?} is not a permutation of {n} markings")));
        }
        let mut legs = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            legs[p] = self.legs[i];
        }
        Ok(Self::new_unchecked(self.genera.clone(), self.vertex_of.clone(), self.involution.clone(), legs))
    }

    /// Contracts every edge not in `keep` (edges given by their smaller half-edge).
    ///
    /// Returns the contracted graph (half-edges renumbered in increasing order of
    /// the surviving original half-edges), the vertex map from this graph, and
    /// the list of surviving original half-edges.
    pub fn contract_except(&self, keep: &[usize]) -> (StableGraph, Vec<usize>, Vec<usize>) {
        let nv = self.num_vertices();
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        let edges = self.edges();
        let mut contracted_edges = Vec::new();
        for &(h, h2) in &edges {
            if !keep.contains(&h) {
                contracted_edges.push((h, h2));
                let a = find(&mut parent, self.vertex_of[h]);
                let b = find(&mut parent, self.vertex_of[h2]);
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let mut root_index = vec![usize::MAX; nv];
        let mut vertex_map = vec![0; nv];
        let mut count = 0;
        for v in 0..nv {
            let r = find(&mut parent, v);
            if root_index[r] == usize::MAX {
                root_index[r] = count;
                count += 1;
            }
            vertex_map[v] = root_index[r];
        }
        let mut genera = vec![0u32; count];
        let mut comp_vertices = vec![0i64; count];
        let mut comp_edges = vec![0i64; count];
        for v in 0..nv {
            genera[vertex_map[v]] += self.genera[v];
            comp_vertices[vertex_map[v]] += 1;
        }
        for &(h, _) in &contracted_edges {
            comp_edges[vertex_map[self.vertex_of[h]]] += 1;
        }
        for c in 0..count {
            genera[c] += (comp_edges[c] - comp_vertices[c] + 1) as u32;
        }
        let surviving: Vec<usize> = (0..self.num_half_edges())
            .filter(|&h| self.is_leg(h) || keep.contains(&h.min(self.involution[h])))
            .collect();
        let mut new_index = vec![usize::MAX; self.num_half_edges()];
        for (i, &h) in surviving.iter().enumerate() {
            new_index[h] = i;
        }
        let vertex_of = surviving.iter().map(|&h| vertex_map[self.vertex_of[h]]).collect();
        let involution = surviving.iter().map(|&h| new_index[self.involution[h]]).collect();
        let legs = self.legs.iter().map(|&h| new_index[h]).collect();
        (StableGraph::new_unchecked(genera, vertex_of, involution, legs), vertex_map, surviving)
    }
}
