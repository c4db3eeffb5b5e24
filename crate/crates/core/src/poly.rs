//! Univariate polynomials over a scalar field, exact interpolation and
//! closed-form power sums.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use parking_lot::RwLock;

use crate::error::{Error, Result};
use crate::scalar::{binomial, Coefficient, Rational, Scalar};

/// Dense polynomial, coefficients in increasing degree, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Polynomial<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![S::zero(), S::one()])
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> S {
        self.coeffs.get(i).cloned().unwrap_or_else(S::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &S) -> S {
        self.coeffs.iter().rev().fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn constant_term(&self) -> S {
        self.coeff(0)
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    /// Substitutes `x -> x + shift`.
    pub fn shift(&self, shift: &S) -> Self {
        let lin = Self::new(vec![shift.clone(), S::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc * lin.clone() + Self::constant(c.clone()))
    }

    /// Newton interpolation through the given points.
    pub fn interpolate(points: &[(S, S)]) -> Result<Self> {
        let n = points.len();
        for i in 0..n {
            for j in 0..i {
                if points[i].0 == points[j].0 {
                    return Err(Error::PolynomialityViolation(format!(
                        "repeated interpolation node {}",
                        points[i].0
                    )));
                }
            }
        }
        let mut table: Vec<S> = points.iter().map(|p| p.1.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = table[i].clone() - table[i - 1].clone();
                let den = points[i].0.clone() - points[i - level].0.clone();
                table[i] = num / den;
            }
        }
        let mut result = Self::zero();
        for i in (0..n).rev() {
            let lin = Self::new(vec![-points[i].0.clone(), S::one()]);
            result = result * lin + Self::constant(table[i].clone());
        }
        Ok(result)
    }
}

impl<S: Scalar> Zero for Polynomial<S> {
    fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<S: Scalar> One for Polynomial<S> {
    fn one() -> Self {
        Self::constant(S::one())
    }
}

impl<S: Scalar> Add for Polynomial<S> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<S: Scalar> Sub for Polynomial<S> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<S: Scalar> Neg for Polynomial<S> {
    type Output = Self;

    fn neg(self) -> Self {
        Self { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<S: Scalar> Mul for Polynomial<S> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }
}

impl<S: Scalar> Coefficient for Polynomial<S> {
    fn scale(&self, q: &Rational) -> Self {
        Polynomial::scale(self, &S::from_rational(q))
    }

    fn from_rational_coeff(q: &Rational) -> Self {
        Self::constant(S::from_rational(q))
    }
}

impl<S: Scalar> fmt::Display for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*r")?,
                _ => write!(f, "({c})*r^{i}")?,
            }
        }
        Ok(())
    }
}

static BERNOULLI: Lazy<RwLock<Vec<Rational>>> = Lazy::new(|| RwLock::new(vec![Rational::one()]));

/// Bernoulli numbers with `B_1 = -1/2`.
pub fn bernoulli(m: usize) -> Rational {
    if let Some(b) = BERNOULLI.read().get(m) {
        return b.clone();
    }
    let mut table = BERNOULLI.write();
    while table.len() <= m {
        let k = table.len();
        let mut acc = Rational::zero();
        for (j, b) in table.iter().enumerate() {
            acc += Rational::from_integer(binomial((k + 1) as u64, j as u64)) * b;
        }
        let next = -acc / Rational::from_integer(((k + 1) as i64).into());
        table.push(next);
    }
    table[m].clone()
}

/// `sum_{u=0}^{n} u^p` for any integer `n >= -1`, by Faulhaber's formula.
pub fn power_sum<S: Scalar>(p: u32, n: &S) -> S {
    // sum_{k=0}^{m-1} k^p = 1/(p+1) sum_j C(p+1, j) B_j m^{p+1-j}, with m = n + 1
    let m = n.clone() + S::one();
    let mut acc = S::zero();
    let mut m_pow = S::one();
    // accumulate from j = p down to j = 0 so that m_pow = m^{p+1-j}
    for j in (0..=p as usize).rev() {
        m_pow = m_pow * m.clone();
        let c = Rational::from_integer(binomial(p as u64 + 1, j as u64)) * bernoulli(j);
        acc = acc + S::from_rational(&c) * m_pow.clone();
    }
    acc / S::from_int(p as i64 + 1)
}

/// `sum_{u=lo}^{hi} P(u)` in closed form; zero when `hi < lo`.
pub fn sum_over_range<S: Scalar>(poly: &Polynomial<S>, lo: i64, hi: i64) -> S {
    if hi < lo {
        return S::zero();
    }
    // shift so the range starts at zero
    let shifted = poly.shift(&S::from_int(lo));
    let top = S::from_int(hi - lo);
    shifted
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(S::zero(), |acc, (p, c)| acc + c.clone() * power_sum(p as u32, &top))
}
