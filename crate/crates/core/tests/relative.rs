mod common;

use std::collections::BTreeMap;

use common::{brute_bipartite, q, topological_types, BipartiteKey};
use num_traits::One;
use tautdr::relative::{
    assemble_t0, assemble_t0_at, auto_truncation, c_gamma0, enumerate_bipartite, loop_axiom_demo, BipartiteGraph,
    Bounds, HalfEdgeKind, RootConfig, RootSet, RootType, Symbol, SymbolPoly,
};

#[test]
fn enumeration_matches_brute_force() {
    let bounds = Bounds::default();
    let mut total = 0;
    for t in topological_types(1, 1, 2, 2, 3) {
        let oracle = brute_bipartite(&t, bounds.max_zero_vertices, bounds.max_vertex_degree);
        let graphs = enumerate_bipartite(&t, &bounds).unwrap();
        let found: BTreeMap<BipartiteKey, u64> = graphs.iter().map(|(g, aut)| (BipartiteKey::of(g), *aut)).collect();
        assert_eq!(found.len(), graphs.len(), "isomorphic duplicates for {t:?}");
        assert_eq!(found, oracle, "{t:?}");
        for (g, _) in &graphs {
            assert_eq!(g.topological_type(), t);
        }
        total += graphs.len();
    }
    assert!(total > 20);
}

#[test]
fn tighter_bounds_give_subsets() {
    for t in topological_types(1, 0, 2, 2, 2) {
        let all = enumerate_bipartite(&t, &Bounds::default()).unwrap();
        let few = enumerate_bipartite(&t, &Bounds { max_zero_vertices: 1, max_vertex_degree: 1 }).unwrap();
        let oracle = brute_bipartite(&t, 1, 1);
        let keys: Vec<BipartiteKey> = few.iter().map(|(g, _)| BipartiteKey::of(g)).collect();
        assert_eq!(keys, oracle.keys().cloned().collect::<Vec<_>>());
        assert!(few.iter().all(|x| all.contains(x)));
    }
}

type TSeries = BTreeMap<i64, SymbolPoly>;

fn mul(a: &TSeries, b: &TSeries) -> TSeries {
    let mut out = TSeries::new();
    for (pa, ca) in a {
        for (pb, cb) in b {
            let slot = out.entry(pa + pb).or_insert_with(SymbolPoly::zero);
            *slot = slot.add(&ca.mul(cb));
        }
    }
    out
}

/// Checks `C(t) ∏_e (t - p_e)/d_e (1 - Ψ_∞/t) = t^{ρ_∞ - 1} ∏_e (1 - p_e/t)`
/// wherever the truncated left side is exact.
fn check_factor(graph: &BipartiteGraph, index: usize, n: u32) {
    let v = graph.zero_side()[index];
    let he = graph.half_edges();
    let at = graph.half_edges_at(v);
    let rho_inf = at.iter().filter(|&&h| matches!(he[h].kind, HalfEdgeKind::InfinityRoot(_))).count() as i64;
    let nodes: Vec<(usize, i64)> = at
        .iter()
        .filter(|&&h| he[h].kind == HalfEdgeKind::InfinityRoot(RootType::Node))
        .map(|&h| (h, -he[h].weight))
        .collect();
    let p = |h: usize, d: i64| SymbolPoly::symbol(Symbol::PsiBar(h)).scale(&q(d, 1)).sub(&SymbolPoly::symbol(Symbol::EvD(h)));

    let series = c_gamma0(graph, index, n, RootConfig::default()).unwrap();
    let mut lhs: TSeries = series.terms().map(|(&k, c)| (k, c.clone())).collect();
    for &(h, d) in &nodes {
        let factor = TSeries::from([(1, SymbolPoly::constant(q(1, d))), (0, p(h, d).scale(&q(-1, d)))]);
        lhs = mul(&lhs, &factor);
    }
    let minus_psi = SymbolPoly::symbol(Symbol::PsiInf(index)).scale(&q(-1, 1));
    lhs = mul(&lhs, &TSeries::from([(0, SymbolPoly::one()), (-1, minus_psi)]));

    let mut rhs = TSeries::from([(rho_inf - 1, SymbolPoly::one())]);
    for &(h, d) in &nodes {
        rhs = mul(&rhs, &TSeries::from([(0, SymbolPoly::one()), (-1, p(h, d).scale(&q(-1, 1)))]));
    }
    let exact_from = -(n as i64) + nodes.len() as i64;
    let top = rho_inf - 1;
    for k in exact_from..=top + 1 {
        let l = lhs.get(&k).cloned().unwrap_or_default();
        let r = rhs.get(&k).cloned().unwrap_or_default();
        assert_eq!(l, r, "t^{k} of factor {index} at truncation {n}");
    }
    assert!(lhs.keys().all(|&k| k <= top.max(0) + 1));
}

#[test]
fn zero_side_factors_invert_their_denominators() {
    let mut checked = 0;
    for t in topological_types(1, 1, 2, 2, 3) {
        for (graph, _) in enumerate_bipartite(&t, &Bounds::default()).unwrap() {
            for index in 0..graph.zero_side().len() {
                for n in [3, 6] {
                    check_factor(&graph, index, n);
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 10);
}

#[test]
fn t0_stable_under_deeper_truncation() {
    for config in [
        RootConfig::default(),
        RootConfig { sigma: RootSet::AllInfinity, denominator: RootSet::AllInfinity },
    ] {
        for t in topological_types(1, 1, 2, 2, 3) {
            for (graph, _) in enumerate_bipartite(&t, &Bounds::default()).unwrap() {
                let n = auto_truncation(&graph, config).unwrap();
                let value = assemble_t0(&graph, config).unwrap();
                assert_eq!(assemble_t0_at(&graph, config, 2 * n).unwrap(), value);
                assert_eq!(assemble_t0_at(&graph, config, 2 * n + 5).unwrap(), value);
            }
        }
    }
}

#[test]
fn loop_partial_sums() {
    for k in 1..=20 {
        let row = loop_axiom_demo(k).unwrap();
        assert!(row.lhs.is_one());
        assert_eq!(row.partial_rhs, q(2 + 2 * k, 1));
    }
    assert!(loop_axiom_demo(0).is_err());
}
