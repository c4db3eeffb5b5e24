use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Rational;
use crate::stable_graphs::{automorphism_count, canonical_form, StableGraph};

/// A boundary stratum with a ψ/κ monomial on it.
///
/// `psi[h]` is the ψ exponent at half-edge `h`; `kappa[v]` is the sorted
/// multiset of κ indices at vertex `v`. Always stored in canonical labeling.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecoratedStratum {
    graph: StableGraph,
    psi: Vec<u32>,
    kappa: Vec<Vec<u32>>,
}

impl DecoratedStratum {
    pub fn new(graph: StableGraph, psi: Vec<u32>, kappa: Vec<Vec<u32>>) -> Result<Self> {
        graph.validate()?;
        if psi.len() != graph.num_half_edges() || kappa.len() != graph.num_vertices() {
            return Err(Error::InvalidGraph("decoration does not match the graph".into()));
        }
        if kappa.iter().flatten().any(|&k| k == 0) {
            return Err(Error::InvalidGraph("κ indices must be positive".into()));
        }
        Ok(Self::canonical(&graph, &psi, kappa))
    }

    /// Undecorated stratum class of a graph.
    pub fn bare(graph: StableGraph) -> Result<Self> {
        let psi = vec![0; graph.num_half_edges()];
        let kappa = vec![Vec::new(); graph.num_vertices()];
        Self::new(graph, psi, kappa)
    }

    pub(crate) fn canonical(graph: &StableGraph, psi: &[u32], mut kappa: Vec<Vec<u32>>) -> Self {
        for k in &mut kappa {
            k.sort_unstable();
        }
        let form = canonical_form(graph, psi, &kappa);
        let mut new_psi = vec![0; psi.len()];
        for (h, &e) in psi.iter().enumerate() {
            new_psi[form.half_map[h]] = e;
        }
        let mut new_kappa = vec![Vec::new(); kappa.len()];
        for h in 0..graph.num_half_edges() {
            new_kappa[form.graph.vertex_of(form.half_map[h])] = kappa[graph.vertex_of(h)].clone();
        }
        // a lone vertex without half-edges (n = 0, no edges)
        if graph.num_half_edges() == 0 {
            new_kappa = kappa;
        }
        Self { graph: form.graph, psi: new_psi, kappa: new_kappa }
    }

    pub fn graph(&self) -> &StableGraph {
        &self.graph
    }

    pub fn psi(&self) -> &[u32] {
        &self.psi
    }

    pub fn kappa(&self) -> &[Vec<u32>] {
        &self.kappa
    }

    pub fn degree(&self) -> usize {
        self.graph.num_edges()
            + self.psi.iter().map(|&e| e as usize).sum::<usize>()
            + self.kappa.iter().flatten().map(|&k| k as usize).sum::<usize>()
    }

    pub fn automorphisms(&self) -> u64 {
        automorphism_count(&self.graph)
    }

    /// `∫ j_*(decoration)` without the automorphism factor.
    pub(crate) fn integral_of_pushforward(&self) -> Rational {
        let mut acc = Rational::one();
        for v in 0..self.graph.num_vertices() {
            let halves = self.graph.half_edges_at(v);
            let exps: Vec<u32> = halves.iter().map(|&h| self.psi[h]).collect();
            let value = super::psi::kappa_psi_integral(self.graph.vertex_genus(v), &exps, &self.kappa[v])
                .expect("vertices of a stable graph are stable");
            if value.is_zero() {
                return value;
            }
            acc *= value;
        }
        acc
    }

    /// The same decoration with markings relabeled as in [`StableGraph::permute_legs`].
    pub fn permute_markings(&self, perm: &[usize]) -> Result<Self> {
        Ok(Self::canonical(&self.graph.permute_legs(perm)?, &self.psi, self.kappa.clone()))
    }

    /// Short human-readable id, e.g. `psi1^2` or `graph[...]`.
    pub fn label(&self) -> String {
        let g = &self.graph;
        let mut parts = Vec::new();
        for (m, &h) in g.legs().iter().enumerate() {
            match self.psi[h] {
                0 => {}
                1 => parts.push(format!("psi{}", m + 1)),
                e => parts.push(format!("psi{}^{e}", m + 1)),
            }
        }
        for (v, ks) in self.kappa.iter().enumerate() {
            for k in ks {
                if g.is_trivial() {
                    parts.push(format!("kappa{k}"));
                } else {
                    parts.push(format!("kappa{k}@v{v}"));
                }
            }
        }
        for (h, o) in g.edges() {
            for x in [h, o] {
                if self.psi[x] > 0 {
                    parts.push(format!("psi[h{x}]^{}", self.psi[x]));
                }
            }
        }
        let deco = if parts.is_empty() { "1".to_string() } else { parts.join("*") };
        if g.is_trivial() {
            return deco;
        }
        let vertices: Vec<String> = (0..g.num_vertices())
            .map(|v| {
                let marks: Vec<String> = g
                    .half_edges_at(v)
                    .into_iter()
                    .filter_map(|h| g.marking_of(h))
                    .map(|m| (m + 1).to_string())
                    .collect();
                format!("g{}({})", g.vertex_genus(v), marks.join(","))
            })
            .collect();
        let edges: Vec<String> =
            g.edges().iter().map(|&(h, o)| format!("{}-{}", g.vertex_of(h), g.vertex_of(o))).collect();
        format!("[{};{}]{}", vertices.join(" "), edges.join(" "), deco)
    }
}

/// ψ/κ monomial on a fixed (not canonicalized) graph, used while building products.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Monomial {
    pub psi: Vec<u32>,
    pub kappa: Vec<Vec<u32>>,
}

impl Monomial {
    pub fn one(graph: &StableGraph) -> Self {
        Self { psi: vec![0; graph.num_half_edges()], kappa: vec![Vec::new(); graph.num_vertices()] }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let psi = self.psi.iter().zip(&other.psi).map(|(a, b)| a + b).collect();
        let kappa = self
            .kappa
            .iter()
            .zip(&other.kappa)
            .map(|(a, b)| {
                let mut k: Vec<u32> = a.iter().chain(b).copied().collect();
                k.sort_unstable();
                k
            })
            .collect();
        Self { psi, kappa }
    }
}

/// Rational linear combination of monomials on one graph.
pub(crate) type MonomialSum = BTreeMap<Monomial, Rational>;

pub(crate) fn sum_mul(a: &MonomialSum, b: &MonomialSum) -> MonomialSum {
    let mut out = MonomialSum::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let c = out.entry(ma.mul(mb)).or_insert_with(Rational::zero);
            *c += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Pullback of a decoration along a contraction `graph -> target`.
///
/// `half_map[h]` is the half-edge of `graph` that target half-edge `h` becomes
/// and `vertex_map[v]` the target vertex of graph vertex `v`. κ classes pull
/// back to sums over the preimage vertices.
pub(crate) fn pullback(
    graph: &StableGraph,
    target_psi: &[u32],
    target_kappa: &[Vec<u32>],
    half_map: &[usize],
    vertex_map: &[usize],
) -> MonomialSum {
    let mut base = Monomial::one(graph);
    for (h, &e) in target_psi.iter().enumerate() {
        base.psi[half_map[h]] += e;
    }
    let mut out = MonomialSum::from([(base, Rational::one())]);
    for (tv, ks) in target_kappa.iter().enumerate() {
        let preimage: Vec<usize> = (0..graph.num_vertices()).filter(|&v| vertex_map[v] == tv).collect();
        for &k in ks {
            let mut factor = MonomialSum::new();
            for &v in &preimage {
                let mut m = Monomial::one(graph);
                m.kappa[v].push(k);
                factor.insert(m, Rational::one());
            }
            out = sum_mul(&out, &factor);
        }
    }
    out
}
