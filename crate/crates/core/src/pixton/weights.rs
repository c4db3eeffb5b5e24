//! Closed-form sums over weightings mod r of products of `w(h) w(h')` powers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{sum_over_range, Polynomial};
use crate::scalar::{Rational, Scalar};
use crate::stable_graphs::{residue, CycleParametrization, StableGraph};

/// Each edge weight as `c + Σ_j s_j u_j (mod r)` over the free cycle variables.
#[derive(Clone, Debug)]
pub(crate) struct EdgeForms {
    pub forms: Vec<(i64, Vec<i64>)>,
    pub free: usize,
}

impl EdgeForms {
    pub fn new(graph: &StableGraph, a: &[i64]) -> Result<Self> {
        let param = CycleParametrization::new(graph, a)?;
        let edges = graph.edges();
        let index = |h: usize, o: usize| edges.iter().position(|&(x, _)| x == h.min(o)).expect("edge of graph");
        let free = param.h1();
        let mut forms = vec![(0, Vec::new()); edges.len()];
        for (j, &(h, o)) in param.free_edges.iter().enumerate() {
            let mut s = vec![0; free];
            s[j] = 1;
            forms[index(h, o)] = (0, s);
        }
        for (child, parent, signs, c) in &param.tree_edges {
            forms[index(*child, *parent)] = (*c, signs.clone());
        }
        Ok(Self { forms, free })
    }
}

fn edge_value<S: Scalar>(w: u64, r: u64) -> S {
    S::from_int(w as i64 * (r - w) as i64)
}

/// `Σ_{w ∈ W} ∏_e (w(h) w(h'))^{m_e}` with residues in `[0, r)`.
///
/// The last free variable is summed by power sums over the intervals on
/// which every edge weight is linear in it; the others are enumerated.
pub(crate) fn sum_forms<S: Scalar>(forms: &EdgeForms, exps: &[u32], r: u64) -> S {
    let k = forms.free;
    let ri = r as i64;
    let eval = |c: i64, s: &[i64], u: &[u64]| -> u64 {
        residue(c + s.iter().zip(u).map(|(a, &b)| a * b as i64).sum::<i64>(), r)
    };
    if k == 0 {
        let mut acc = BigInt::one();
        for ((c, _), &m) in forms.forms.iter().zip(exps) {
            let w = residue(*c, r);
            acc *= BigInt::from(w * (r - w)).pow(m);
        }
        return S::from_big(&acc);
    }
    let last = k - 1;
    let mut total = S::zero();
    let mut u = vec![0u64; last];
    loop {
        let mut fixed = S::one();
        let mut moving: Vec<(i64, u32)> = Vec::new();
        for ((c, s), &m) in forms.forms.iter().zip(exps) {
            let outer = c + s[..last].iter().zip(&u).map(|(a, &b)| a * b as i64).sum::<i64>();
            match s[last] {
                0 => fixed = fixed * pow(edge_value::<S>(eval(outer, &[], &[]), r), m),
                sign => moving.push((residue(sign * outer, r) as i64, m)),
            }
        }
        if !fixed.is_zero() {
            let mut cuts: Vec<i64> = vec![0, ri];
            cuts.extend(moving.iter().filter(|(b, _)| *b > 0).map(|(b, _)| ri - b));
            cuts.sort_unstable();
            cuts.dedup();
            let mut inner = S::zero();
            for pair in cuts.windows(2) {
                let (lo, hi) = (pair[0], pair[1] - 1);
                let mut poly = Polynomial::<S>::one();
                for &(b, m) in &moving {
                    let shift = if b > 0 && lo >= ri - b { b - ri } else { b };
                    // v = u + shift, factor v (r - v)
                    let v = Polynomial::new(vec![S::from_int(shift), S::one()]);
                    let rest = Polynomial::new(vec![S::from_int(ri - shift), -S::one()]);
                    poly = poly * (v * rest).pow(m);
                }
                inner = inner + sum_over_range(&poly, lo, hi);
            }
            total = total + fixed * inner;
        }
        let mut i = 0;
        while i < last {
            u[i] += 1;
            if u[i] < r {
                break;
            }
            u[i] = 0;
            i += 1;
        }
        if i == last {
            break;
        }
    }
    total
}

fn pow<S: Scalar>(x: S, m: u32) -> S {
    (0..m).fold(S::one(), |acc, _| acc * x.clone())
}

/// Sum over all weightings mod `r` of `∏_e (w(h) w(h'))^{exps[e]}`, edges in
/// the order of [`StableGraph::edges`].
pub fn weight_sum(graph: &StableGraph, a: &[i64], exps: &[u32], r: u64) -> Result<Rational> {
    if exps.len() != graph.num_edges() {
        return Err(Error::InvalidProblem(format!(
            "{} edge exponents for a graph with {} edges",
            exps.len(),
            graph.num_edges()
        )));
    }
    if r < 2 {
        return Err(Error::InvalidProblem(format!("modulus r = {r} must be at least 2")));
    }
    if residue(a.iter().sum(), r) != 0 {
        return Ok(Rational::zero());
    }
    Ok(sum_forms(&EdgeForms::new(graph, a)?, exps, r))
}
