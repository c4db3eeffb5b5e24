use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::insertion::{pairing_matrix, truncated_basis, InsertionClass, InsertionElement};
use crate::error::{Error, Result};
use crate::scalar::{format_rational, Rational};
use crate::TautClassQ;

/// A family `Ω_{g,m}(v_1, …, v_m)` on a finite slice of the state space.
pub trait CohFTFamily {
    /// Names of the basis vectors.
    fn basis(&self) -> Vec<String>;

    /// Gram matrix `η` of the basis.
    fn eta(&self) -> Vec<Vec<Rational>>;

    /// Index of the unit among the basis vectors.
    fn unit(&self) -> Option<usize>;

    /// `None` when the family does not supply this value.
    fn omega(&self, g: u32, inputs: &[usize]) -> Option<TautClassQ>;
}

/// ψ exponents per marking and the sorted κ indices of a monomial on the
/// smooth locus.
pub type Mono = (Vec<u32>, Vec<u32>);

/// A class on the smooth locus as a combination of ψ/κ monomials.
pub type MonomialClass = BTreeMap<Mono, Rational>;

/// Element of `H*(M̄_{g1,n1}) ⊗ H*(M̄_{g2,n2})` spanned by products of monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorClass {
    terms: BTreeMap<(Mono, Mono), Rational>,
}

impl TensorClass {
    pub fn add(&mut self, left: Mono, right: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (left, right);
        let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Mono, Mono), &Rational)> {
        self.terms.iter()
    }
}

fn mono_degree(m: &Mono) -> usize {
    m.0.iter().chain(&m.1).map(|&e| e as usize).sum()
}

fn dim(g: u32, n: usize) -> usize {
    3 * g as usize + n - 3
}

fn add_to(class: &mut MonomialClass, m: Mono, c: Rational) {
    if c.is_zero() {
        return;
    }
    let slot = class.entry(m.clone()).or_insert_with(Rational::zero);
    *slot += c;
    if slot.is_zero() {
        class.remove(&m);
    }
}

/// Expansion of a class supported on the smooth locus; `None` if any term
/// lives on a boundary stratum. Terms above the dimension are dropped.
pub fn monomial_expansion(class: &TautClassQ) -> Option<MonomialClass> {
    let mut out = MonomialClass::new();
    for (s, c) in class.terms() {
        let graph = s.graph();
        if !graph.is_trivial() {
            return None;
        }
        let psi: Vec<u32> = graph.legs().iter().map(|&h| s.psi()[h]).collect();
        let m = (psi, s.kappa()[0].clone());
        if mono_degree(&m) <= class.ambient_dim() {
            add_to(&mut out, m, c.clone());
        }
    }
    Some(out)
}

/// Pullback along the gluing map `M̄_{g1,|S1|+1} × M̄_{g2,|S2|+1} -> M̄_{g,m}`;
/// the node is the last marking on each side.
fn split_pullback(class: &MonomialClass, s1: &[usize], s2: &[usize], dims: (usize, usize)) -> TensorClass {
    let mut out = TensorClass::default();
    for ((psi, kappa), c) in class {
        let mut p1: Vec<u32> = s1.iter().map(|&i| psi[i]).collect();
        let mut p2: Vec<u32> = s2.iter().map(|&i| psi[i]).collect();
        p1.push(0);
        p2.push(0);
        // κ_a pulls back to κ_a ⊗ 1 + 1 ⊗ κ_a
        for mask in 0u64..1 << kappa.len() {
            let (mut k1, mut k2) = (Vec::new(), Vec::new());
            for (i, &a) in kappa.iter().enumerate() {
                if mask >> i & 1 == 0 { k1.push(a) } else { k2.push(a) }
            }
            let (m1, m2) = ((p1.clone(), k1), (p2.clone(), k2));
            if mono_degree(&m1) <= dims.0 && mono_degree(&m2) <= dims.1 {
                out.add(m1, m2, c.clone());
            }
        }
    }
    out
}

fn invert(m: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::InvalidInsertion("pairing is degenerate".into()))?;
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for x in &mut a[col] {
            *x /= &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..2 * n {
                    let sub = &f * &a[col][j];
                    a[r][j] -= sub;
                }
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxiomStatus {
    Holds,
    Fails,
    /// nothing in range could be checked
    Unchecked,
}

impl AxiomStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            AxiomStatus::Holds => "holds",
            AxiomStatus::Fails => "fails",
            AxiomStatus::Unchecked => "unchecked",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub genus: u32,
    pub inputs: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub checked: usize,
    /// instances needing values or pullbacks that are not available
    pub skipped: usize,
    pub failures: Vec<AxiomFailure>,
}

impl AxiomCheck {
    fn new() -> Self {
        Self { checked: 0, skipped: 0, failures: Vec::new() }
    }

    pub fn status(&self) -> AxiomStatus {
        if !self.failures.is_empty() {
            AxiomStatus::Fails
        } else if self.checked == 0 {
            AxiomStatus::Unchecked
        } else {
            AxiomStatus::Holds
        }
    }

    fn record(&mut self, ok: Option<bool>, failure: impl FnOnce() -> AxiomFailure) {
        match ok {
            None => self.skipped += 1,
            Some(true) => self.checked += 1,
            Some(false) => {
                self.checked += 1;
                self.failures.push(failure());
            }
        }
    }

    fn to_json(&self) -> Value {
        json!({
            "status": self.status().as_str(),
            "checked": self.checked,
            "skipped": self.skipped,
            "failures": self.failures.iter().map(|f| json!({
                "genus": f.genus, "inputs": f.inputs, "detail": f.detail,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Outcome of [`check_cohft_axioms`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohFTReport {
    pub symmetry: AxiomCheck,
    pub unit: AxiomCheck,
    pub splitting: AxiomCheck,
    pub loop_axiom: AxiomCheck,
}

impl CohFTReport {
    /// Some instance was skipped for lack of data.
    pub fn is_partial(&self) -> bool {
        [&self.symmetry, &self.unit, &self.splitting, &self.loop_axiom].iter().any(|a| a.skipped > 0)
    }

    /// All axioms except the loop axiom hold.
    pub fn is_partial_cohft(&self) -> bool {
        [&self.symmetry, &self.unit, &self.splitting].iter().all(|a| a.status() == AxiomStatus::Holds)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "symmetry": self.symmetry.to_json(),
            "unit": self.unit.to_json(),
            "splitting": self.splitting.to_json(),
            "loop": self.loop_axiom.to_json(),
            "partial": self.is_partial(),
        })
    }
}

/// Range of `(g, m)` to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckRange {
    pub max_genus: u32,
    pub max_markings: usize,
}

fn stable(g: u32, m: usize) -> bool {
    2 * g as i64 - 2 + m as i64 > 0
}

fn tuples(base: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..base).map(move |b| {
                    let mut u = t.clone();
                    u.push(b);
                    u
                })
            })
            .collect();
    }
    out
}

fn describe(class: &MonomialClass) -> String {
    if class.is_empty() {
        return "0".into();
    }
    class
        .iter()
        .map(|((psi, kappa), c)| {
            let mut s = format_rational(c);
            for (i, &e) in psi.iter().enumerate() {
                if e > 0 {
                    s += &format!("*psi{}^{e}", i + 1);
                }
            }
            for k in kappa {
                s += &format!("*kappa{k}");
            }
            s
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// `(ξ^* Ω_{g+1,m}(v), Σ η^{jk} Ω_{g,m+2}(v, e_j, e_k))` on `M̄_{g,m+2}`, where
/// `ξ` glues the last two markings.
pub fn loop_sides(family: &dyn CohFTFamily, g: u32, inputs: &[usize]) -> Result<Option<(MonomialClass, MonomialClass)>> {
    let inv = invert(&family.eta())?;
    Ok(loop_sides_with(family, &inv, g, inputs))
}

fn loop_sides_with(
    family: &dyn CohFTFamily,
    inv: &[Vec<Rational>],
    g: u32,
    inputs: &[usize],
) -> Option<(MonomialClass, MonomialClass)> {
    let m = inputs.len();
    let target_dim = dim(g, m + 2);
    let upper = monomial_expansion(&family.omega(g + 1, inputs)?)?;
    let mut lhs = MonomialClass::new();
    for ((psi, kappa), c) in upper {
        let mut p = psi;
        p.extend([0, 0]);
        let mono = (p, kappa);
        if mono_degree(&mono) <= target_dim {
            add_to(&mut lhs, mono, c);
        }
    }
    let mut rhs = MonomialClass::new();
    for (j, row) in inv.iter().enumerate() {
        for (k, coeff) in row.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let mut v = inputs.to_vec();
            v.extend([j, k]);
            for (mono, c) in monomial_expansion(&family.omega(g, &v)?)? {
                add_to(&mut rhs, mono, c * coeff);
            }
        }
    }
    Some((lhs, rhs))
}

/// Checks S_m-invariance, the unit axiom, splitting and the loop axiom on
/// `range`, as identities of ψ/κ expansions on the smooth locus.
///
/// Pullbacks are only available for classes supported on the smooth locus,
/// and forgetful pullbacks only for degree 0; other instances are skipped.
pub fn check_cohft_axioms(family: &dyn CohFTFamily, range: CheckRange) -> Result<CohFTReport> {
    let names = family.basis();
    let base = names.len();
    let eta = family.eta();
    let inv = invert(&eta)?;
    let label = |v: &[usize]| v.iter().map(|&i| names[i].clone()).collect::<Vec<_>>();
    let mut report = CohFTReport {
        symmetry: AxiomCheck::new(),
        unit: AxiomCheck::new(),
        splitting: AxiomCheck::new(),
        loop_axiom: AxiomCheck::new(),
    };

    for g in 0..=range.max_genus {
        for m in 0..=range.max_markings {
            if !stable(g, m) {
                continue;
            }
            for v in tuples(base, m) {
                let omega = family.omega(g, &v);

                for i in 0..m.saturating_sub(1) {
                    let mut w = v.clone();
                    w.swap(i, i + 1);
                    let mut perm: Vec<usize> = (0..m).collect();
                    perm.swap(i, i + 1);
                    let ok = match (&omega, family.omega(g, &w)) {
                        (Some(a), Some(b)) => Some(a.permute_markings(&perm)? == b),
                        _ => None,
                    };
                    report.symmetry.record(ok, || AxiomFailure {
                        genus: g,
                        inputs: label(&v),
                        detail: format!("swapping inputs {} and {} does not permute markings", i + 1, i + 2),
                    });
                }

                if let Some(u) = family.unit() {
                    if (g, m) == (0, 2) {
                        let mut w = v.clone();
                        w.push(u);
                        let ok = family.omega(0, &w).and_then(|c| monomial_expansion(&c)).map(|c| {
                            let expected: MonomialClass =
                                [((vec![0; 3], vec![]), eta[v[0]][v[1]].clone())].into_iter().filter(|(_, c)| !c.is_zero()).collect();
                            c == expected
                        });
                        report.unit.record(ok, || AxiomFailure {
                            genus: 0,
                            inputs: label(&w),
                            detail: format!("Ω_(0,3)(v1, v2, 1) differs from η(v1, v2) = {}", eta[v[0]][v[1]]),
                        });
                    }
                    if stable(g, m) && m < range.max_markings {
                        let mut w = v.clone();
                        w.push(u);
                        let lower = omega.as_ref().and_then(monomial_expansion);
                        let upper = family.omega(g, &w).as_ref().and_then(monomial_expansion);
                        let ok = match (lower, upper) {
                            (Some(lo), Some(up)) if lo.keys().all(|k| mono_degree(k) == 0) => {
                                let pulled: MonomialClass =
                                    lo.into_values().map(|c| ((vec![0; m + 1], vec![]), c)).collect();
                                Some(pulled == up)
                            }
                            _ => None,
                        };
                        report.unit.record(ok, || AxiomFailure {
                            genus: g,
                            inputs: label(&w),
                            detail: "Ω(v, 1) is not the pullback of Ω(v)".into(),
                        });
                    }
                }

                for (s1, s2, g1) in separating_splits(g, m) {
                    let g2 = g - g1;
                    let dims = (dim(g1, s1.len() + 1), dim(g2, s2.len() + 1));
                    let ok = (|| {
                        let lhs = split_pullback(&monomial_expansion(omega.as_ref()?)?, &s1, &s2, dims);
                        let mut rhs = TensorClass::default();
                        for (j, row) in inv.iter().enumerate() {
                            for (k, coeff) in row.iter().enumerate() {
                                if coeff.is_zero() {
                                    continue;
                                }
                                let mut a: Vec<usize> = s1.iter().map(|&i| v[i]).collect();
                                let mut b: Vec<usize> = s2.iter().map(|&i| v[i]).collect();
                                a.push(j);
                                b.push(k);
                                let left = monomial_expansion(&family.omega(g1, &a)?)?;
                                let right = monomial_expansion(&family.omega(g2, &b)?)?;
                                for (ma, ca) in &left {
                                    for (mb, cb) in &right {
                                        rhs.add(ma.clone(), mb.clone(), ca * cb * coeff);
                                    }
                                }
                            }
                        }
                        Some(lhs == rhs)
                    })();
                    report.splitting.record(ok, || AxiomFailure {
                        genus: g,
                        inputs: label(&v),
                        detail: format!("splitting ({g1}, {:?} | {g2}, {:?}) fails", plus_one(&s1), plus_one(&s2)),
                    });
                }

                if g >= 1 && stable(g - 1, m + 2) && m + 2 <= range.max_markings {
                    let sides = loop_sides_with(family, &inv, g - 1, &v);
                    let ok = sides.as_ref().map(|(l, r)| l == r);
                    report.loop_axiom.record(ok, || {
                        let (l, r) = sides.clone().expect("recorded failures have values");
                        AxiomFailure {
                            genus: g,
                            inputs: label(&v),
                            detail: format!("pullback {} vs sum over the pairing {}", describe(&l), describe(&r)),
                        }
                    });
                }
            }
        }
    }
    Ok(report)
}

fn plus_one(s: &[usize]) -> Vec<usize> {
    s.iter().map(|i| i + 1).collect()
}

/// Unordered separating splits `(S1, S2, g1)` with both sides stable; marking
/// 1 is always in `S1`.
fn separating_splits(g: u32, m: usize) -> Vec<(Vec<usize>, Vec<usize>, u32)> {
    let mut out = Vec::new();
    for mask in 0u64..1 << m {
        if m > 0 && mask & 1 == 0 {
            continue;
        }
        let s1: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
        let s2: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 0).collect();
        for g1 in 0..=g {
            if m == 0 && g1 > g - g1 {
                continue;
            }
            if stable(g1, s1.len() + 1) && stable(g - g1, s2.len() + 1) {
                out.push((s1.clone(), s2.clone(), g1));
            }
        }
    }
    out
}

/// The degree-0 part of the relative theory of `(P¹, pt)` on levels `-k..=k`.
///
/// Genus 0 values are `c·[M̄_{0,m}]` for inputs with at most one pair of
/// opposite nonzero levels; genus 1 is supplied for one input, from
/// `c_1(E^∨ ⊠ T_{P¹}(-log pt))`. Inputs whose levels do not sum to 0 give 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct P1PointFragment {
    pub k: i64,
}

impl P1PointFragment {
    fn elements(&self) -> Vec<InsertionElement> {
        truncated_basis(self.k)
    }
}

impl CohFTFamily for P1PointFragment {
    fn basis(&self) -> Vec<String> {
        self.elements()
            .iter()
            .map(|e| match &e.class {
                InsertionClass::Target { omega, .. } if omega.is_zero() => "[1]_0".to_string(),
                InsertionClass::Target { .. } => "[w]_0".to_string(),
                InsertionClass::Divisor(_) => format!("[1]_{}", e.level),
            })
            .collect()
    }

    fn eta(&self) -> Vec<Vec<Rational>> {
        pairing_matrix(self.k)
    }

    fn unit(&self) -> Option<usize> {
        Some(0)
    }

    fn omega(&self, g: u32, inputs: &[usize]) -> Option<TautClassQ> {
        let m = inputs.len();
        let basis = self.elements();
        let levels: Vec<i64> = inputs.iter().map(|&i| basis[i].level).collect();
        if levels.iter().sum::<i64>() != 0 {
            return TautClassQ::zero(g, m).ok();
        }
        let points = inputs.iter().filter(|&&i| i == 1).count();
        let nonzero = levels.iter().filter(|&&l| l != 0).count();
        match (g, m) {
            (0, _) if m >= 3 => {
                let c = match nonzero {
                    0 => points == 1,
                    2 => points == 0,
                    _ => return None,
                };
                let one = TautClassQ::fundamental(0, m).ok()?;
                Some(if c { one } else { TautClassQ::zero(0, m).ok()? })
            }
            (1, 1) => match inputs[0] {
                0 => TautClassQ::fundamental(1, 1).ok(),
                // -λ_1 = -ψ_1 on M̄_{1,1}
                1 => Some(TautClassQ::psi(1, 1, 1).ok()?.neg()),
                _ => TautClassQ::zero(1, 1).ok(),
            },
            _ => None,
        }
    }
}
