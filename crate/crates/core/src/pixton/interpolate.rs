use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use parking_lot::RwLock;
use rayon::prelude::*;

use super::class::{group_weight, prepare};
use super::problem::DRProblem;
use crate::error::{Error, Result};
use crate::intersection::TautClass;
use crate::poly::Polynomial;
use crate::scalar::Rational;

/// Pixton's class with coefficients interpolated as polynomials in `r`.
#[derive(Clone, Debug)]
pub struct RPolynomialClass {
    pub class: TautClass<Polynomial<Rational>>,
    /// r values used for the fit
    pub samples: Vec<u64>,
    /// r values used only for verification
    pub held_out: Vec<u64>,
    pub degree_bound: usize,
}

impl RPolynomialClass {
    pub fn eval(&self, r: u64) -> TautClass<Rational> {
        let x = BigInt::from(r);
        self.class.map_coeffs(|c| eval_at_integer(c, &x))
    }
}

/// Interpolates `values` at `start, start + 1, …` in integers: with `L` a
/// common denominator, `L (m-1)! P(x) = Σ_k Δ^k(L y)_0 (m-1)!/k! ∏_{i<k} (x - x_i)`.
fn interpolate_consecutive(start: u64, values: &[Rational]) -> Polynomial<Rational> {
    let m = values.len();
    let den = values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let mut diffs: Vec<BigInt> = values.iter().map(|v| v.numer() * (&den / v.denom())).collect();
    let mut leading = Vec::with_capacity(m);
    for level in 0..m {
        leading.push(diffs[0].clone());
        for i in 0..m - 1 - level {
            diffs[i] = &diffs[i + 1] - &diffs[i];
        }
    }
    let fact: Vec<BigInt> = (0..m).scan(BigInt::one(), |f, k| {
        if k > 0 {
            *f *= k;
        }
        Some(f.clone())
    }).collect();
    let top = &fact[m - 1];
    // Horner in Newton form with integer coefficients, lowest degree first
    let mut acc: Vec<BigInt> = Vec::new();
    for k in (0..m).rev() {
        let node = BigInt::from(start + k as u64);
        let mut next = vec![BigInt::zero(); acc.len() + 1];
        for (i, c) in acc.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * &node;
        }
        next[0] += &leading[k] * (top / &fact[k]);
        acc = next;
    }
    let scale = den * top;
    Polynomial::new(acc.into_iter().map(|c| Rational::new(c, scale.clone())).collect())
}

/// Horner over a common denominator: one reduction instead of one per step.
fn eval_at_integer(p: &Polynomial<Rational>, x: &BigInt) -> Rational {
    let den = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let num = p.coeffs().iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c.numer() * (&den / c.denom()));
    Rational::new(num, den)
}

pub const HELD_OUT: usize = 3;

type FitKey = (Vec<(i64, Vec<i64>)>, Vec<u32>, u64, usize);

static FITS: Lazy<RwLock<HashMap<FitKey, Polynomial<Rational>>>> = Lazy::new(Default::default);

/// Interpolates the class from `2d + 3` consecutive admissible `r` and checks
/// three further values.
pub fn r_polynomial(p: &DRProblem) -> Result<RPolynomialClass> {
    r_polynomial_from(p, p.r_bound() + 1)
}

/// As [`r_polynomial`], with the sample window starting at `start`.
///
/// Every stored coefficient is a fixed linear combination of per-group weight
/// sums, so the fit and the held-out check are done on those sums; this gives
/// the same polynomials as fitting each coefficient separately.
pub fn r_polynomial_from(p: &DRProblem, start: u64) -> Result<RPolynomialClass> {
    p.check_r(start)?;
    let degree_bound = 2 * p.d;
    let fit = degree_bound + 3;
    let all: Vec<u64> = (start..start + (fit + HELD_OUT) as u64).collect();
    let prepared = prepare(p)?;
    let fits: Vec<Polynomial<Rational>> = prepared
        .groups
        .par_iter()
        .map(|group| {
            let key = (group.forms.forms.clone(), group.exps.clone(), start, fit);
            if let Some(found) = FITS.read().get(&key) {
                return Ok(found.clone());
            }
            let values: Vec<Rational> = all.iter().map(|&r| group_weight(&group.forms, &group.exps, r)).collect();
            let poly = interpolate_consecutive(start, &values[..fit]);
            if poly.degree().is_some_and(|deg| deg > degree_bound) {
                return Err(Error::PolynomialityViolation(format!(
                    "weight sum has degree {:?} > {degree_bound} in r",
                    poly.degree()
                )));
            }
            for (&r, v) in all[fit..].iter().zip(&values[fit..]) {
                if eval_at_integer(&poly, &BigInt::from(r)) != *v {
                    return Err(Error::PolynomialityViolation(format!("weight sum does not match at held-out r = {r}")));
                }
            }
            FITS.write().insert(key, poly.clone());
            Ok(poly)
        })
        .collect::<Result<_>>()?;

    let common = fits.iter().flat_map(|w| w.coeffs()).fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut coeffs: Vec<Vec<BigInt>> = vec![Vec::new(); prepared.skeleton.strata.len()];
    for (group, w) in prepared.groups.iter().zip(&fits) {
        if w.is_zero() {
            continue;
        }
        let scaled: Vec<BigInt> = w.coeffs().iter().map(|c| c.numer() * (&common / c.denom())).collect();
        for (id, c) in &group.strata {
            let row = &mut coeffs[*id];
            if row.len() < scaled.len() {
                row.resize(scaled.len(), BigInt::zero());
            }
            for (slot, wi) in row.iter_mut().zip(&scaled) {
                if !wi.is_zero() {
                    *slot += wi * c;
                }
            }
        }
    }
    let den = &prepared.skeleton.den * common;
    let polys = coeffs
        .into_iter()
        .map(|row| Polynomial::new(row.into_iter().map(|x| Rational::new(x, den.clone())).collect()))
        .collect();
    Ok(RPolynomialClass {
        class: prepared.to_class(p, polys)?,
        samples: all[..fit].to_vec(),
        held_out: all[fit..].to_vec(),
        degree_bound,
    })
}

/// Substitutes `r = 0` in every coefficient.
pub fn constant_term(c: &RPolynomialClass) -> TautClass<Rational> {
    c.class.map_coeffs(|p| p.constant_term())
}

/// `DR_g(A)` as the constant term of the degree-`g` part.
pub fn dr_cycle(g: u32, a: &[i64]) -> Result<TautClass<Rational>> {
    let p = DRProblem::new(g, a.to_vec(), g as usize)?;
    Ok(constant_term(&r_polynomial(&p)?))
}
