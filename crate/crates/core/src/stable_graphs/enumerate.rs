use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use once_cell::sync::Lazy;
use parking_lot::RwLock;

use super::canonical::canonicalize;
use super::graph::{check_stable, StableGraph};
use crate::error::{Error, Result};

/// Default refusal threshold on `3g - 3 + n`.
pub const DEFAULT_DIMENSION_LIMIT: usize = 8;

static CACHE: Lazy<RwLock<HashMap<(u32, usize), Arc<Vec<StableGraph>>>>> = Lazy::new(Default::default);

/// All stable graphs of `(g, n)` up to isomorphism, in canonical labeling,
/// ordered by edge count and then by canonical encoding.
pub fn enumerate_stable_graphs(g: u32, n: usize) -> Result<Vec<StableGraph>> {
    enumerate_stable_graphs_with_limit(g, n, DEFAULT_DIMENSION_LIMIT).map(|v| v.as_ref().clone())
}

pub fn enumerate_stable_graphs_with_limit(g: u32, n: usize, limit: usize) -> Result<Arc<Vec<StableGraph>>> {
    check_stable(g, n)?;
    let dim = 3 * g as usize + n - 3;
    if dim > limit {
        return Err(Error::TooLarge { g, n, limit });
    }
    if let Some(found) = CACHE.read().get(&(g, n)) {
        return Ok(found.clone());
    }
    let graphs = Arc::new(generate(g, n)?);
    CACHE.write().insert((g, n), graphs.clone());
    Ok(graphs)
}

/// Graphs with exactly `edges` edges.
pub(crate) fn graphs_with_edges(g: u32, n: usize, edges: usize) -> Result<Vec<StableGraph>> {
    Ok(enumerate_stable_graphs_with_limit(g, n, usize::MAX)?
        .iter()
        .filter(|gr| gr.num_edges() == edges)
        .cloned()
        .collect())
}

fn generate(g: u32, n: usize) -> Result<Vec<StableGraph>> {
    let mut all = Vec::new();
    let mut level: BTreeSet<StableGraph> = BTreeSet::from([StableGraph::trivial(g, n)?]);
    while !level.is_empty() {
        let mut next = BTreeSet::new();
        for graph in &level {
            for v in 0..graph.num_vertices() {
                for d in degenerations(graph, v) {
                    next.insert(canonicalize(&d));
                }
            }
        }
        all.extend(level);
        level = next;
    }
    Ok(all)
}

/// Graphs obtained from `graph` by adding one edge at vertex `v`: a self-edge
/// lowering its genus, or a split of `v` into two vertices.
fn degenerations(graph: &StableGraph, v: usize) -> Vec<StableGraph> {
    let mut out = Vec::new();
    let nh = graph.num_half_edges();
    let genera = graph.genera().to_vec();
    let vertex_of: Vec<usize> = (0..nh).map(|h| graph.vertex_of(h)).collect();
    let involution: Vec<usize> = (0..nh).map(|h| graph.involution(h)).collect();
    let legs = graph.legs().to_vec();

    if genera[v] > 0 {
        let mut gen = genera.clone();
        gen[v] -= 1;
        let mut vo = vertex_of.clone();
        vo.extend([v, v]);
        let mut inv = involution.clone();
        inv.extend([nh + 1, nh]);
        out.push(StableGraph::new_unchecked(gen, vo, inv, legs.clone()));
    }

    let at_v = graph.half_edges_at(v);
    let new_vertex = graph.num_vertices();
    for mask in 0u64..(1 << at_v.len()) {
        let moved = mask.count_ones() as i64;
        let stay = at_v.len() as i64 - moved;
        for g1 in 0..=genera[v] {
            let g0 = genera[v] - g1;
            if 2 * g0 as i64 - 2 + stay < 0 || 2 * g1 as i64 - 2 + moved < 0 {
                continue;
            }
            let mut gen = genera.clone();
            gen[v] = g0;
            gen.push(g1);
            let mut vo = vertex_of.clone();
            for (i, &h) in at_v.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    vo[h] = new_vertex;
                }
            }
            vo.extend([v, new_vertex]);
            let mut inv = involution.clone();
            inv.extend([nh + 1, nh]);
            out.push(StableGraph::new_unchecked(gen, vo, inv, legs.clone()));
        }
    }
    out
}
