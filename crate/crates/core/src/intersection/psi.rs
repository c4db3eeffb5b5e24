//! Intersection numbers of ψ and κ classes on M̄_{g,n}.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use parking_lot::RwLock;

use crate::error::{Error, Result};
use crate::scalar::{format_rational, odd_double_factorial, parse_rational, rational, Rational};
use crate::stable_graphs::check_stable;

type PsiKey = (u32, Vec<u32>);
type KappaKey = (u32, Vec<u32>, Vec<u32>);

static PSI_CACHE: Lazy<RwLock<HashMap<PsiKey, Rational>>> = Lazy::new(|| RwLock::new(HashMap::new()));
static KAPPA_CACHE: Lazy<RwLock<HashMap<KappaKey, Rational>>> = Lazy::new(|| RwLock::new(HashMap::new()));

fn dim(g: u32, n: usize) -> i64 {
    3 * g as i64 - 3 + n as i64
}

/// `<τ_{d_1} ... τ_{d_n}>_g`, zero unless the degree is `3g - 3 + n`.
pub fn psi_integral(g: u32, d: &[u32]) -> Result<Rational> {
    check_stable(g, d.len())?;
    let mut key = d.to_vec();
    key.sort_unstable();
    Ok(psi_sorted(g, key))
}

/// Unstable or wrong-degree correlators are zero.
fn psi_sorted(g: u32, d: Vec<u32>) -> Rational {
    let n = d.len();
    if 2 * g as i64 - 2 + n as i64 <= 0 || d.iter().map(|&x| x as i64).sum::<i64>() != dim(g, n) {
        return Rational::zero();
    }
    let key = (g, d);
    if let Some(v) = PSI_CACHE.read().get(&key) {
        return v.clone();
    }
    let value = psi_compute(key.0, &key.1);
    PSI_CACHE.write().insert(key, value.clone());
    value
}

fn without(d: &[u32], i: usize) -> Vec<u32> {
    let mut rest = d.to_vec();
    rest.remove(i);
    rest
}

fn sorted(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable();
    v
}

fn psi_compute(g: u32, d: &[u32]) -> Rational {
    let n = d.len();
    if g == 0 && n == 3 {
        return Rational::one();
    }
    if g == 1 && n == 1 {
        return rational(1, 24);
    }
    // d is sorted, so any τ_0 or τ_1 sits in front
    if d[0] == 0 {
        let rest = &d[1..];
        let mut acc = Rational::zero();
        for i in 0..rest.len() {
            if rest[i] > 0 {
                let mut next = rest.to_vec();
                next[i] -= 1;
                acc += psi_sorted(g, sorted(next));
            }
        }
        return acc;
    }
    if d[0] == 1 {
        let factor = Rational::from_integer(BigInt::from(2 * g as i64 - 2 + n as i64 - 1));
        return factor * psi_sorted(g, d[1..].to_vec());
    }
    dvv(g, d)
}

/// Virasoro recursion on the largest exponent; only reached when every `d_i >= 2`.
fn dvv(g: u32, d: &[u32]) -> Rational {
    let n = d.len();
    let k = d[n - 1] as i64;
    let rest = &d[..n - 1];
    let df = |m: i64| Rational::from_integer(odd_double_factorial(m));
    let mut acc = Rational::zero();
    for j in 0..rest.len() {
        let dj = rest[j] as i64;
        let mut next = without(rest, j);
        next.push((k + dj - 1) as u32);
        acc += df(k + dj) / df(dj) * psi_sorted(g, sorted(next));
    }
    let mut split = Rational::zero();
    for a in 0..=(k - 2) {
        let b = k - 2 - a;
        let weight = df(a + 1) * df(b + 1);
        let mut term = Rational::zero();
        if g > 0 {
            let mut next = rest.to_vec();
            next.push(a as u32);
            next.push(b as u32);
            term += psi_sorted(g - 1, sorted(next));
        }
        let m = rest.len();
        for mask in 0u64..(1 << m) {
            let left: Vec<u32> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| rest[i]).collect();
            let right: Vec<u32> = (0..m).filter(|i| mask >> i & 1 == 0).map(|i| rest[i]).collect();
            for g1 in 0..=g {
                let mut l = left.clone();
                l.push(a as u32);
                let mut r = right.clone();
                r.push(b as u32);
                let x = psi_sorted(g1, sorted(l));
                if x.is_zero() {
                    continue;
                }
                term += x * psi_sorted(g - g1, sorted(r));
            }
        }
        split += weight * term;
    }
    acc += split / Rational::from_integer(BigInt::from(2));
    acc / df(k + 1)
}

/// `∫ ∏ ψ_i^{d_i} ∏ κ_{b_j}` over M̄_{g,n}, with `κ_b = π_*(ψ_{n+1}^{b+1})`.
pub fn kappa_psi_integral(g: u32, psi: &[u32], kappas: &[u32]) -> Result<Rational> {
    check_stable(g, psi.len())?;
    if kappas.contains(&0) {
        return Err(Error::InvalidProblem("κ indices must be positive".into()));
    }
    Ok(kappa_sorted(g, sorted(psi.to_vec()), sorted(kappas.to_vec())))
}

fn kappa_sorted(g: u32, psi: Vec<u32>, kappas: Vec<u32>) -> Rational {
    let degree: i64 = psi.iter().chain(&kappas).map(|&x| x as i64).sum();
    if degree != dim(g, psi.len()) {
        return Rational::zero();
    }
    if kappas.is_empty() {
        return psi_sorted(g, psi);
    }
    let key = (g, psi, kappas);
    if let Some(v) = KAPPA_CACHE.read().get(&key) {
        return v.clone();
    }
    let (g, psi, kappas) = key;
    // κ_{b_1..b_m} on n points = π_* of ψ_{n+1}^{b_m+1} ∏_{j<m} (κ_{b_j} - ψ_{n+1}^{b_j})
    let m = kappas.len();
    let last = kappas[m - 1];
    let mut value = Rational::zero();
    for mask in 0u64..(1 << (m - 1)) {
        let mut extra = last + 1;
        let mut kept = Vec::new();
        let mut sign = 1;
        for (j, &b) in kappas[..m - 1].iter().enumerate() {
            if mask >> j & 1 == 1 {
                extra += b;
                sign = -sign;
            } else {
                kept.push(b);
            }
        }
        let mut p = psi.clone();
        p.push(extra);
        let x = kappa_sorted(g, sorted(p), kept);
        if sign > 0 {
            value += x;
        } else {
            value -= x;
        }
    }
    KAPPA_CACHE.write().insert((g, psi, kappas), value.clone());
    value
}

/// Snapshot of the memoized ψ intersection numbers.
pub fn cached_psi_values() -> Vec<(u32, Vec<u32>, Rational)> {
    let mut out: Vec<_> = PSI_CACHE.read().iter().map(|((g, d), v)| (*g, d.clone(), v.clone())).collect();
    out.sort();
    out
}

fn format_key(g: u32, d: &[u32]) -> String {
    let parts: Vec<String> = d.iter().map(|x| x.to_string()).collect();
    format!("{g}:{}", parts.join(","))
}

/// Loads a memo file of lines `g:d1,d2,...<TAB>p/q`. Missing files are not an error.
pub fn load_psi_cache(path: &Path) -> Result<usize> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(0),
        Err(e) => return Err(Error::Parse(format!("{}: {e}", path.display()))),
    };
    let mut count = 0;
    let mut cache = PSI_CACHE.write();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let bad = || Error::Parse(format!("bad cache line {line:?}"));
        let (key, value) = line.split_once('\t').ok_or_else(bad)?;
        let (g, d) = key.split_once(':').ok_or_else(bad)?;
        let g: u32 = g.parse().map_err(|_| bad())?;
        let d: Vec<u32> = if d.is_empty() {
            Vec::new()
        } else {
            d.split(',').map(|x| x.parse().map_err(|_| bad())).collect::<Result<_>>()?
        };
        cache.insert((g, sorted(d)), parse_rational(value)?);
        count += 1;
    }
    Ok(count)
}

pub fn save_psi_cache(path: &Path) -> Result<()> {
    let io = |e: std::io::Error| Error::Parse(format!("{}: {e}", path.display()));
    let mut file = fs::File::create(path).map_err(io)?;
    for (g, d, v) in cached_psi_values() {
        writeln!(file, "{}\t{}", format_key(g, &d), format_rational(&v)).map_err(io)?;
    }
    Ok(())
}
