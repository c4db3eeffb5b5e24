use std::collections::BTreeSet;

use super::stratum::DecoratedStratum;
use crate::error::Result;
use crate::stable_graphs::{enumerate_stable_graphs, StableGraph};

/// Partitions of `m` into positive parts, non-increasing.
fn partitions(m: u32, max: u32, out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>) {
    if m == 0 {
        out.push(cur.clone());
        return;
    }
    for p in (1..=m.min(max)).rev() {
        cur.push(p);
        partitions(m - p, p, out, cur);
        cur.pop();
    }
}

/// Exponent vectors of length `len` summing to `total`.
pub(crate) fn compositions(total: u32, len: usize) -> Vec<Vec<u32>> {
    fn rec(total: u32, len: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == len {
            cur.push(total);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in 0..=total {
            cur.push(x);
            rec(total - x, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if len == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(total, len, &mut Vec::new(), &mut out);
    out
}

/// Local ψ/κ monomials of a given degree at one vertex: (ψ exponents on its half-edges, κ multiset).
fn local_monomials(valence: usize, degree: u32) -> Vec<(Vec<u32>, Vec<u32>)> {
    let mut out = Vec::new();
    for kappa_degree in 0..=degree {
        let mut parts = Vec::new();
        partitions(kappa_degree, kappa_degree, &mut parts, &mut Vec::new());
        for psi in compositions(degree - kappa_degree, valence) {
            for k in &parts {
                let mut k = k.clone();
                k.sort_unstable();
                out.push((psi.clone(), k));
            }
        }
    }
    out
}

fn decorations_of(graph: &StableGraph, degree: usize, out: &mut BTreeSet<DecoratedStratum>) {
    let nv = graph.num_vertices();
    let halves: Vec<Vec<usize>> = (0..nv).map(|v| graph.half_edges_at(v)).collect();
    for split in compositions(degree as u32, nv) {
        if (0..nv).any(|v| split[v] as usize > graph.vertex_dim(v)) {
            continue;
        }
        let choices: Vec<Vec<(Vec<u32>, Vec<u32>)>> =
            (0..nv).map(|v| local_monomials(halves[v].len(), split[v])).collect();
        let mut idx = vec![0usize; nv];
        loop {
            let mut psi = vec![0u32; graph.num_half_edges()];
            let mut kappa = vec![Vec::new(); nv];
            for v in 0..nv {
                let (p, k) = &choices[v][idx[v]];
                for (&h, &e) in halves[v].iter().zip(p) {
                    psi[h] = e;
                }
                kappa[v] = k.clone();
            }
            out.insert(DecoratedStratum::canonical(graph, &psi, kappa));
            let mut v = 0;
            while v < nv {
                idx[v] += 1;
                if idx[v] < choices[v].len() {
                    break;
                }
                idx[v] = 0;
                v += 1;
            }
            if v == nv {
                break;
            }
        }
    }
}

/// Every decorated stratum of the given degree on M̄_{g,n} whose decoration
/// does not exceed the dimension at any vertex.
///
/// With `trivial_only`, only ψ/κ monomials on the smooth locus are returned.
pub fn decorated_strata(g: u32, n: usize, degree: usize, trivial_only: bool) -> Result<Vec<DecoratedStratum>> {
    let mut out = BTreeSet::new();
    for graph in enumerate_stable_graphs(g, n)? {
        if graph.num_edges() > degree || (trivial_only && !graph.is_trivial()) {
            continue;
        }
        decorations_of(&graph, degree - graph.num_edges(), &mut out);
    }
    Ok(out.into_iter().collect())
}
