//! Canonical labeling of (decorated) stable graphs and explicit isomorphisms.
//!
//! The canonical form is the minimal encoding over all vertex orderings that
//! respect a colour refinement of the vertices. Legs are labeled and never
//! permuted.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::graph::StableGraph;

type VertexKey = (u32, Vec<(usize, u32)>, Vec<u32>);
type EdgeKey = (usize, u32, usize, u32);

pub(crate) struct CanonicalForm {
    pub graph: StableGraph,
    /// old half-edge -> new half-edge
    pub half_map: Vec<usize>,
    /// Number of vertex orderings attaining the canonical encoding, i.e. the
    /// order of the group of vertex permutations preserving the coloured graph.
    pub vertex_automorphisms: u64,
}

fn rank<T: Ord + Clone>(sigs: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = sigs.to_vec();
    sorted.sort();
    sorted.dedup();
    sigs.iter().map(|s| sorted.binary_search(s).unwrap()).collect()
}

fn refine(graph: &StableGraph, half_color: &[u32], vertex_color: &[Vec<u32>]) -> Vec<usize> {
    let nv = graph.num_vertices();
    let mut initial = Vec::with_capacity(nv);
    for v in 0..nv {
        let mut marks: Vec<(usize, u32)> = Vec::new();
        let mut loops: Vec<(u32, u32)> = Vec::new();
        for h in graph.half_edges_at(v) {
            if let Some(m) = graph.marking_of(h) {
                marks.push((m, half_color[h]));
            } else {
                let o = graph.involution(h);
                if graph.vertex_of(o) == v && h < o {
                    let (x, y) = (half_color[h], half_color[o]);
                    loops.push((x.min(y), x.max(y)));
                }
            }
        }
        marks.sort();
        loops.sort();
        initial.push((graph.vertex_genus(v), marks, vertex_color[v].clone(), graph.valence(v), loops));
    }
    let mut ranks = rank(&initial);
    let mut classes = ranks.iter().max().map_or(0, |m| m + 1);
    loop {
        let sigs: Vec<(usize, Vec<(usize, u32, u32)>)> = (0..nv)
            .map(|v| {
                let mut nbrs: Vec<(usize, u32, u32)> = graph
                    .half_edges_at(v)
                    .into_iter()
                    .filter(|&h| !graph.is_leg(h))
                    .filter_map(|h| {
                        let o = graph.involution(h);
                        let u = graph.vertex_of(o);
                        (u != v).then(|| (ranks[u], half_color[h], half_color[o]))
                    })
                    .collect();
                nbrs.sort();
                (ranks[v], nbrs)
            })
            .collect();
        let next = rank(&sigs);
        let next_classes = next.iter().max().map_or(0, |m| m + 1);
        ranks = next;
        if next_classes == classes {
            break;
        }
        classes = next_classes;
    }
    ranks
}

fn encode(
    graph: &StableGraph,
    half_color: &[u32],
    vertex_color: &[Vec<u32>],
    pos: &[usize],
    order: &[usize],
) -> (Vec<VertexKey>, Vec<EdgeKey>) {
    let vertices = order
        .iter()
        .map(|&v| {
            let mut marks: Vec<(usize, u32)> = graph
                .half_edges_at(v)
                .into_iter()
                .filter_map(|h| graph.marking_of(h).map(|m| (m, half_color[h])))
                .collect();
            marks.sort();
            (graph.vertex_genus(v), marks, vertex_color[v].clone())
        })
        .collect();
    let mut edges: Vec<EdgeKey> = graph.edges().into_iter().map(|(h, o)| edge_key(graph, half_color, pos, h, o).0).collect();
    edges.sort();
    (vertices, edges)
}

/// Oriented key of an edge and whether `h` is the first end.
fn edge_key(graph: &StableGraph, half_color: &[u32], pos: &[usize], h: usize, o: usize) -> (EdgeKey, bool) {
    let x = (pos[graph.vertex_of(h)], half_color[h]);
    let y = (pos[graph.vertex_of(o)], half_color[o]);
    if x <= y {
        ((x.0, x.1, y.0, y.1), true)
    } else {
        ((y.0, y.1, x.0, x.1), false)
    }
}

fn for_each_ordering(classes: &[Vec<usize>], f: &mut dyn FnMut(&[usize])) {
    fn rec(classes: &[Vec<usize>], idx: usize, current: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if idx == classes.len() {
            f(current);
            return;
        }
        let mut items = classes[idx].clone();
        permute(&mut items, 0, &mut |perm| {
            let len = current.len();
            current.extend_from_slice(perm);
            rec(classes, idx + 1, current, f);
            current.truncate(len);
        });
    }
    rec(classes, 0, &mut Vec::new(), f);
}

/// Swap-based recursive permutation generator.
pub(crate) fn permute<T: Clone>(items: &mut Vec<T>, k: usize, f: &mut dyn FnMut(&[T])) {
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

pub(crate) fn canonical_form(graph: &StableGraph, half_color: &[u32], vertex_color: &[Vec<u32>]) -> CanonicalForm {
    let nv = graph.num_vertices();
    let ranks = refine(graph, half_color, vertex_color);
    let mut by_rank: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..nv {
        by_rank.entry(ranks[v]).or_default().push(v);
    }
    let classes: Vec<Vec<usize>> = by_rank.into_values().collect();

    let mut best: Option<((Vec<VertexKey>, Vec<EdgeKey>), Vec<usize>)> = None;
    let mut count = 0u64;
    let mut pos = vec![0usize; nv];
    for_each_ordering(&classes, &mut |order| {
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let enc = encode(graph, half_color, vertex_color, &pos, order);
        match &best {
            None => {
                best = Some((enc, order.to_vec()));
                count = 1;
            }
            Some((b, _)) => match enc.cmp(b) {
                Ordering::Less => {
                    best = Some((enc, order.to_vec()));
                    count = 1;
                }
                Ordering::Equal => count += 1,
                Ordering::Greater => {}
            },
        }
    });
    let (_, order) = best.expect("at least one ordering");
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }

    let n = graph.num_legs();
    let nh = graph.num_half_edges();
    let mut half_map = vec![0usize; nh];
    let mut vertex_of = vec![0usize; nh];
    let mut involution: Vec<usize> = (0..nh).collect();
    for (m, &h) in graph.legs().iter().enumerate() {
        half_map[h] = m;
        vertex_of[m] = pos[graph.vertex_of(h)];
    }
    let mut keyed: Vec<(EdgeKey, usize, usize)> = graph
        .edges()
        .into_iter()
        .map(|(h, o)| {
            let (key, first) = edge_key(graph, half_color, &pos, h, o);
            if first {
                (key, h, o)
            } else {
                (key, o, h)
            }
        })
        .collect();
    keyed.sort_by_key(|a| a.0);
    for (k, (key, h, o)) in keyed.into_iter().enumerate() {
        let (a, b) = (n + 2 * k, n + 2 * k + 1);
        half_map[h] = a;
        half_map[o] = b;
        vertex_of[a] = key.0;
        vertex_of[b] = key.2;
        involution[a] = b;
        involution[b] = a;
    }
    let genera = order.iter().map(|&v| graph.vertex_genus(v)).collect();
    CanonicalForm {
        graph: StableGraph::new_unchecked(genera, vertex_of, involution, (0..n).collect()),
        half_map,
        vertex_automorphisms: count,
    }
}

/// Canonical representative of an undecorated graph.
pub fn canonicalize(graph: &StableGraph) -> StableGraph {
    let zeros = vec![0u32; graph.num_half_edges()];
    let empty = vec![Vec::new(); graph.num_vertices()];
    canonical_form(graph, &zeros, &empty).graph
}

/// Order of the automorphism group of a stable graph (legs fixed pointwise).
///
/// Vertex automorphisms times, for every unordered vertex pair, the
/// permutations of parallel edges, and a factor 2 per self-edge.
pub fn automorphism_count(graph: &StableGraph) -> u64 {
    let zeros = vec![0u32; graph.num_half_edges()];
    let empty = vec![Vec::new(); graph.num_vertices()];
    let form = canonical_form(graph, &zeros, &empty);
    let mut multiplicity: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for (h, o) in graph.edges() {
        let (a, b) = (graph.vertex_of(h), graph.vertex_of(o));
        *multiplicity.entry((a.min(b), a.max(b))).or_default() += 1;
    }
    let mut total = form.vertex_automorphisms;
    for ((a, b), m) in multiplicity {
        total *= (1..=m).product::<u64>();
        if a == b {
            total *= 1u64 << m;
        }
    }
    total
}

/// A graph isomorphism `a -> b`: vertex map and half-edge map.
#[derive(Clone, Debug)]
pub(crate) struct Isomorphism {
    pub vertex_map: Vec<usize>,
    pub half_map: Vec<usize>,
}

/// All isomorphisms from `a` to `b` fixing legs (marking `i` to marking `i`).
pub(crate) fn isomorphisms(a: &StableGraph, b: &StableGraph) -> Vec<Isomorphism> {
    let nv = a.num_vertices();
    if nv != b.num_vertices()
        || a.num_half_edges() != b.num_half_edges()
        || a.num_legs() != b.num_legs()
        || a.num_edges() != b.num_edges()
    {
        return Vec::new();
    }
    let sig = |g: &StableGraph, v: usize| {
        let mut marks: Vec<usize> = g.half_edges_at(v).into_iter().filter_map(|h| g.marking_of(h)).collect();
        marks.sort();
        (g.vertex_genus(v), g.valence(v), marks)
    };
    let sa: Vec<_> = (0..nv).map(|v| sig(a, v)).collect();
    let sb: Vec<_> = (0..nv).map(|v| sig(b, v)).collect();
    let mult = |g: &StableGraph| {
        let mut m = vec![vec![Vec::new(); nv]; nv];
        for (h, o) in g.edges() {
            let (x, y) = (g.vertex_of(h), g.vertex_of(o));
            m[x][y].push((h, o));
            if x != y {
                m[y][x].push((o, h));
            }
        }
        m
    };
    let ma = mult(a);
    let mb = mult(b);

    let mut vertex_maps = Vec::new();
    let mut current = vec![usize::MAX; nv];
    let mut used = vec![false; nv];
    fn assign(
        v: usize,
        nv: usize,
        sa: &[(u32, usize, Vec<usize>)],
        sb: &[(u32, usize, Vec<usize>)],
        ma: &[Vec<Vec<(usize, usize)>>],
        mb: &[Vec<Vec<(usize, usize)>>],
        current: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if v == nv {
            out.push(current.clone());
            return;
        }
        for w in 0..nv {
            if used[w] || sa[v] != sb[w] {
                continue;
            }
            let consistent = (0..=v).all(|u| {
                let wu = if u == v { w } else { current[u] };
                ma[v][u].len() == mb[w][wu].len()
            });
            if !consistent {
                continue;
            }
            current[v] = w;
            used[w] = true;
            assign(v + 1, nv, sa, sb, ma, mb, current, used, out);
            used[w] = false;
            current[v] = usize::MAX;
        }
    }
    assign(0, nv, &sa, &sb, &ma, &mb, &mut current, &mut used, &mut vertex_maps);

    let mut result = Vec::new();
    for vmap in vertex_maps {
        // choices per vertex pair: list of alternative partial half-edge maps
        let mut groups: Vec<Vec<Vec<(usize, usize)>>> = Vec::new();
        for x in 0..nv {
            for y in x..nv {
                let ea = &ma[x][y];
                if ea.is_empty() {
                    continue;
                }
                let eb = &mb[vmap[x]][vmap[y]];
                let mut options = Vec::new();
                let mut idx: Vec<usize> = (0..eb.len()).collect();
                permute(&mut idx, 0, &mut |perm| {
                    if x != y {
                        let pairs: Vec<(usize, usize)> = ea
                            .iter()
                            .zip(perm)
                            .flat_map(|(&(h, o), &k)| [(h, eb[k].0), (o, eb[k].1)])
                            .collect();
                        options.push(pairs);
                    } else {
                        let m = ea.len();
                        for flips in 0..(1u32 << m) {
                            let pairs: Vec<(usize, usize)> = ea
                                .iter()
                                .zip(perm)
                                .enumerate()
                                .flat_map(|(i, (&(h, o), &k))| {
                                    let (p, q) = eb[k];
                                    if flips >> i & 1 == 1 {
                                        [(h, q), (o, p)]
                                    } else {
                                        [(h, p), (o, q)]
                                    }
                                })
                                .collect();
                            options.push(pairs);
                        }
                    }
                });
                groups.push(options);
            }
        }
        let mut base = vec![usize::MAX; a.num_half_edges()];
        for (m, &h) in a.legs().iter().enumerate() {
            base[h] = b.legs()[m];
        }
        let mut stack: Vec<Vec<usize>> = vec![base];
        for options in &groups {
            let mut next = Vec::with_capacity(stack.len() * options.len());
            for partial in &stack {
                for opt in options {
                    let mut hm = partial.clone();
                    for &(h, k) in opt {
                        hm[h] = k;
                    }
                    next.push(hm);
                }
            }
            stack = next;
        }
        for half_map in stack {
            result.push(Isomorphism { vertex_map: vmap.clone(), half_map });
        }
    }
    result
}
