use std::collections::VecDeque;

use super::graph::StableGraph;
use crate::error::{Error, Result};

/// A weighting mod `r`: residues on half-edges satisfying the leg, edge and
/// vertex congruences.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightingModR {
    pub r: u64,
    pub w: Vec<u64>,
}

pub(crate) fn residue(x: i64, r: u64) -> u64 {
    x.rem_euclid(r as i64) as u64
}

/// Spanning-tree description of the weighting space of a graph.
///
/// Non-tree edges carry free weights `u_j` (the weight of their first
/// half-edge). The child-side half-edge of a tree edge has weight
/// `-(constant + sum_j sign_j u_j) mod r`.
#[derive(Clone, Debug)]
pub(crate) struct CycleParametrization {
    /// (first half-edge, second half-edge) of each free edge
    pub free_edges: Vec<(usize, usize)>,
    /// (child-side half-edge, parent-side half-edge, signs over free edges, leg sum on the child side)
    pub tree_edges: Vec<(usize, usize, Vec<i64>, i64)>,
    /// sum of all leg weights (must vanish mod r)
    pub total: i64,
}

impl CycleParametrization {
    pub fn new(graph: &StableGraph, a: &[i64]) -> Result<Self> {
        if a.len() != graph.num_legs() {
            return Err(Error::InvalidProblem(format!(
                "weight vector has length {}, graph has {} legs",
                a.len(),
                graph.num_legs()
            )));
        }
        let nv = graph.num_vertices();
        let edges = graph.edges();
        // BFS spanning tree from vertex 0
        let mut parent_edge: Vec<Option<(usize, usize)>> = vec![None; nv];
        let mut seen = vec![false; nv];
        let mut order = Vec::with_capacity(nv);
        let mut tree = vec![false; edges.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for (i, &(h, o)) in edges.iter().enumerate() {
                let (x, y) = (graph.vertex_of(h), graph.vertex_of(o));
                let (child, child_half, parent_half) = if x == v && !seen[y] {
                    (y, o, h)
                } else if y == v && !seen[x] {
                    (x, h, o)
                } else {
                    continue;
                };
                seen[child] = true;
                tree[i] = true;
                parent_edge[child] = Some((child_half, parent_half));
                queue.push_back(child);
            }
        }
        let free_edges: Vec<(usize, usize)> =
            edges.iter().zip(&tree).filter(|(_, &t)| !t).map(|(&e, _)| e).collect();

        // per-vertex contributions, accumulated bottom-up over the tree
        let k = free_edges.len();
        let mut signs = vec![vec![0i64; k]; nv];
        let mut consts = vec![0i64; nv];
        for (m, &h) in graph.legs().iter().enumerate() {
            consts[graph.vertex_of(h)] += a[m];
        }
        for (j, &(h, o)) in free_edges.iter().enumerate() {
            signs[graph.vertex_of(h)][j] += 1;
            signs[graph.vertex_of(o)][j] -= 1;
        }
        let mut tree_edges = Vec::new();
        for &v in order.iter().rev() {
            if let Some((child_half, parent_half)) = parent_edge[v] {
                tree_edges.push((child_half, parent_half, signs[v].clone(), consts[v]));
                let p = graph.vertex_of(parent_half);
                for j in 0..k {
                    signs[p][j] += signs[v][j];
                }
                consts[p] += consts[v];
            }
        }
        Ok(Self { free_edges, tree_edges, total: a.iter().sum() })
    }

    pub fn h1(&self) -> usize {
        self.free_edges.len()
    }
}

/// All weightings mod `r` of `graph` with leg residues `a`.
///
/// The count is `r^{h^1}` when `sum(a) = 0 mod r` and zero otherwise.
pub fn enumerate_weightings(graph: &StableGraph, a: &[i64], r: u64) -> Result<Vec<WeightingModR>> {
    if r < 2 {
        return Err(Error::InvalidProblem(format!("modulus r = {r} must be at least 2")));
    }
    let param = CycleParametrization::new(graph, a)?;
    if residue(param.total, r) != 0 {
        return Ok(Vec::new());
    }
    let k = param.h1();
    let mut out = Vec::with_capacity((r as usize).pow(k as u32));
    let mut u = vec![0u64; k];
    loop {
        let mut w = vec![0u64; graph.num_half_edges()];
        for (m, &h) in graph.legs().iter().enumerate() {
            w[h] = residue(a[m], r);
        }
        for (j, &(h, o)) in param.free_edges.iter().enumerate() {
            w[h] = u[j];
            w[o] = residue(-(u[j] as i64), r);
        }
        for (child, parent, signs, c) in &param.tree_edges {
            let x: i64 = c + signs.iter().zip(&u).map(|(s, &x)| s * x as i64).sum::<i64>();
            w[*child] = residue(-x, r);
            w[*parent] = residue(x, r);
        }
        out.push(WeightingModR { r, w });
        // odometer
        let mut i = 0;
        while i < k {
            u[i] += 1;
            if u[i] < r {
                break;
            }
            u[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
    }
    Ok(out)
}
