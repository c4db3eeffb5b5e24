use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use parking_lot::{Mutex, RwLock};

use super::problem::DRProblem;
use super::weights::{sum_forms, EdgeForms};
use crate::error::Result;
use crate::intersection::{compositions, sum_mul, DecoratedStratum, Monomial, MonomialSum, TautClass};
use crate::scalar::{binomial, factorial, Coefficient, Rational};
use crate::stable_graphs::{enumerate_stable_graphs, StableGraph};

/// ψ powers at the legs, with the strata they expand into.
struct LegProfile {
    legs: Vec<u32>,
    /// stratum index -> a- and r-independent factor, over `Skeleton::den`
    strata: Vec<(usize, BigInt)>,
}

/// All terms of one graph sharing the expansion orders `k_e` at the edges;
/// they share one weight sum.
struct Group {
    edges: Vec<u32>,
    profiles: Vec<LegProfile>,
}

struct GraphSkeleton {
    graph: StableGraph,
    groups: Vec<Group>,
}

/// Everything in the degree-d part that depends only on `(g, n, d)`.
pub(crate) struct Skeleton {
    pub strata: Vec<DecoratedStratum>,
    graphs: Vec<GraphSkeleton>,
    /// common denominator of all profile factors
    pub den: BigInt,
}

static SKELETONS: Lazy<RwLock<HashMap<(u32, usize, usize), Arc<Skeleton>>>> = Lazy::new(Default::default);

fn skeleton(g: u32, n: usize, d: usize) -> Result<Arc<Skeleton>> {
    if let Some(s) = SKELETONS.read().get(&(g, n, d)) {
        return Ok(s.clone());
    }
    let built = Arc::new(build_skeleton(g, n, d)?);
    SKELETONS.write().insert((g, n, d), built.clone());
    Ok(built)
}

fn inverse(x: BigInt) -> Rational {
    Rational::new(BigInt::one(), x)
}

fn build_skeleton(g: u32, n: usize, d: usize) -> Result<Skeleton> {
    let mut strata = Vec::new();
    let mut index: HashMap<DecoratedStratum, usize> = HashMap::new();
    let mut graphs: Vec<(StableGraph, Vec<(Vec<u32>, Vec<u32>, Vec<(usize, Rational)>)>)> = Vec::new();
    if d > 3 * g as usize + n - 3 {
        return Ok(Skeleton { strata, graphs: Vec::new(), den: BigInt::one() });
    }
    for graph in enumerate_stable_graphs(g, n)? {
        let ne = graph.num_edges();
        if ne > d {
            continue;
        }
        let edges = graph.edges();
        let mut profiles = Vec::new();
        for split in compositions((d - ne) as u32, ne + n) {
            let (ks, legs) = split.split_at(ne);
            // exp(a²ψ/2) at legs and (1 - exp(-x s))/s = Σ (-1)^k x^{k+1} s^k/(k+1)! at edges
            let mut constant = Rational::one();
            for &p in legs {
                constant *= inverse(factorial(p as u64) * (BigInt::one() << p));
            }
            for &k in ks {
                let c = inverse(factorial(k as u64 + 1) * (BigInt::one() << (k + 1)));
                constant *= if k % 2 == 1 { -c } else { c };
            }
            let mut base = Monomial::one(&graph);
            for (m, &p) in legs.iter().enumerate() {
                base.psi[graph.legs()[m]] = p;
            }
            let mut sum = MonomialSum::from([(base, constant)]);
            for (&(h, o), &k) in edges.iter().zip(ks) {
                let mut factor = MonomialSum::new();
                for j in 0..=k {
                    let mut m = Monomial::one(&graph);
                    m.psi[h] = j;
                    m.psi[o] = k - j;
                    factor.insert(m, Rational::from_integer(binomial(k as u64, j as u64)));
                }
                sum = sum_mul(&sum, &factor);
            }
            let mut collected: HashMap<usize, Rational> = HashMap::new();
            for (m, c) in sum {
                let overloaded = (0..graph.num_vertices()).any(|v| {
                    graph.half_edges_at(v).iter().map(|&h| m.psi[h] as usize).sum::<usize>() > graph.vertex_dim(v)
                });
                if overloaded {
                    continue;
                }
                let s = DecoratedStratum::canonical(&graph, &m.psi, m.kappa);
                let id = *index.entry(s.clone()).or_insert_with(|| {
                    strata.push(s);
                    strata.len() - 1
                });
                *collected.entry(id).or_insert_with(Rational::zero) += c;
            }
            let mut terms: Vec<(usize, Rational)> = collected.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if terms.is_empty() {
                continue;
            }
            terms.sort();
            profiles.push((ks.to_vec(), legs.to_vec(), terms));
        }
        if !profiles.is_empty() {
            graphs.push((graph, profiles));
        }
    }
    let den = graphs
        .iter()
        .flat_map(|(_, ps)| ps.iter().flat_map(|(_, _, t)| t.iter().map(|(_, c)| c.denom())))
        .fold(BigInt::one(), |acc, d| acc.lcm(d));
    let graphs = graphs
        .into_iter()
        .map(|(graph, profiles)| {
            let mut groups: Vec<Group> = Vec::new();
            for (ks, legs, terms) in profiles {
                let strata = terms.into_iter().map(|(id, c)| (id, c.numer() * (&den / c.denom()))).collect();
                let profile = LegProfile { legs, strata };
                match groups.iter_mut().find(|gr| gr.edges == ks) {
                    Some(gr) => gr.profiles.push(profile),
                    None => groups.push(Group { edges: ks, profiles: vec![profile] }),
                }
            }
            GraphSkeleton { graph, groups }
        })
        .collect();
    Ok(Skeleton { strata, graphs, den })
}

/// A group with the leg factors of one problem folded in.
pub(crate) struct PreparedGroup {
    pub forms: Arc<EdgeForms>,
    /// exponents `k_e + 1` of `w(h) w(h')`
    pub exps: Vec<u32>,
    /// over `Skeleton::den`
    pub strata: Vec<(usize, BigInt)>,
}

/// The problem-dependent but r-independent part of the class: per group,
/// `Σ_profiles ∏ a_i^{2 p_i} · factor` on each stratum.
pub(crate) struct Prepared {
    pub skeleton: Arc<Skeleton>,
    pub groups: Vec<PreparedGroup>,
}

const RECENT: usize = 4;

static RECENT_PREPARED: Lazy<Mutex<VecDeque<(DRProblem, Arc<Prepared>)>>> = Lazy::new(Default::default);

/// [`prepare_uncached`] behind a small memo of the latest problems, since a
/// fit is usually followed by direct evaluations of the same problem.
pub(crate) fn prepare(p: &DRProblem) -> Result<Arc<Prepared>> {
    if let Some((_, hit)) = RECENT_PREPARED.lock().iter().find(|(q, _)| q == p) {
        return Ok(hit.clone());
    }
    let built = Arc::new(prepare_uncached(p)?);
    let mut recent = RECENT_PREPARED.lock();
    if recent.len() == RECENT {
        recent.pop_front();
    }
    recent.push_back((p.clone(), built.clone()));
    Ok(built)
}

fn prepare_uncached(p: &DRProblem) -> Result<Prepared> {
    let sk = skeleton(p.g, p.n(), p.d)?;
    let squares: Vec<BigInt> = p.a.iter().map(|&x| BigInt::from(x * x)).collect();
    let mut groups = Vec::new();
    for gs in &sk.graphs {
        let forms = Arc::new(EdgeForms::new(&gs.graph, &p.a)?);
        for group in &gs.groups {
            let mut acc: HashMap<usize, BigInt> = HashMap::new();
            for profile in &group.profiles {
                let mut factor = BigInt::one();
                for (sq, &e) in squares.iter().zip(&profile.legs) {
                    if e > 0 {
                        factor *= sq.pow(e);
                    }
                }
                if factor.is_zero() {
                    continue;
                }
                for (id, c) in &profile.strata {
                    *acc.entry(*id).or_insert_with(BigInt::zero) += &factor * c;
                }
            }
            let mut strata: Vec<(usize, BigInt)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if strata.is_empty() {
                continue;
            }
            strata.sort();
            let exps = group.edges.iter().map(|k| k + 1).collect();
            groups.push(PreparedGroup { forms: forms.clone(), exps, strata });
        }
    }
    Ok(Prepared { skeleton: sk, groups })
}

/// `r^{-h¹} Σ_{w ∈ W} ∏_e (w(h) w(h'))^{k_e + 1}` for one group.
pub(crate) fn group_weight(forms: &EdgeForms, exps: &[u32], r: u64) -> Rational {
    let s: Rational = sum_forms(forms, exps, r);
    if forms.free == 0 {
        return s;
    }
    s / Rational::from_integer(BigInt::from(r).pow(forms.free as u32))
}

impl Prepared {
    /// Dense stored coefficients at one value of `r`.
    pub fn evaluate(&self, r: u64) -> Vec<Rational> {
        let weights: Vec<Rational> = self.groups.iter().map(|g| group_weight(&g.forms, &g.exps, r)).collect();
        let common = weights.iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let mut acc = vec![BigInt::zero(); self.skeleton.strata.len()];
        for (group, w) in self.groups.iter().zip(&weights) {
            if w.is_zero() {
                continue;
            }
            let w = w.numer() * (&common / w.denom());
            for (id, c) in &group.strata {
                acc[*id] += &w * c;
            }
        }
        let den = &self.skeleton.den * common;
        acc.into_iter().map(|x| Rational::new(x, den.clone())).collect()
    }

    pub fn to_class<C: Coefficient>(&self, p: &DRProblem, coeffs: Vec<C>) -> Result<TautClass<C>> {
        let mut class = TautClass::zero(p.g, p.n())?;
        for (s, c) in self.skeleton.strata.iter().zip(coeffs) {
            if !c.is_zero() {
                class.add_term(s.clone(), c)?;
            }
        }
        Ok(class)
    }
}

/// The degree-`d` part of Pixton's class for the point target at a fixed `r`.
///
/// Stored coefficients follow the [`TautClass`] convention, so the automorphism
/// factor of each graph is applied at integration time.
pub fn pixton_class(p: &DRProblem, r: u64) -> Result<TautClass<Rational>> {
    p.check_r(r)?;
    pixton_class_unchecked(p, r)
}

/// Same as [`pixton_class`] without the lower bound on `r` (any `r >= 2`).
pub fn pixton_class_unchecked(p: &DRProblem, r: u64) -> Result<TautClass<Rational>> {
    let prepared = prepare(p)?;
    prepared.to_class(p, prepared.evaluate(r))
}
