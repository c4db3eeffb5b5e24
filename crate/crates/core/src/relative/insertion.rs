use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Cohomology part of an insertion for `(P¹, pt)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InsertionClass {
    /// `a·1 + b·ω` in `H*(P¹)`
    Target { one: Rational, omega: Rational },
    /// a multiple of `1` in `H*(pt)`
    Divisor(Rational),
}

/// An element `[α]_i` of the insertion ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InsertionElement {
    pub level: i64,
    pub class: InsertionClass,
}

impl InsertionElement {
    pub fn new(level: i64, class: InsertionClass) -> Result<Self> {
        match (&class, level == 0) {
            (InsertionClass::Target { .. }, true) | (InsertionClass::Divisor(_), false) => Ok(Self { level, class }),
            (InsertionClass::Target { .. }, false) => {
                Err(Error::InvalidInsertion(format!("level {level} carries a class on D, not on X")))
            }
            (InsertionClass::Divisor(_), true) => Err(Error::InvalidInsertion("level 0 carries a class on X".into())),
        }
    }

    /// `[1]_0`
    pub fn unit() -> Self {
        Self { level: 0, class: InsertionClass::Target { one: Rational::one(), omega: Rational::zero() } }
    }

    /// `[ω]_0`
    pub fn point() -> Self {
        Self { level: 0, class: InsertionClass::Target { one: Rational::zero(), omega: Rational::one() } }
    }

    /// `[1]_i` for `i ≠ 0`.
    pub fn divisor_unit(level: i64) -> Result<Self> {
        Self::new(level, InsertionClass::Divisor(Rational::one()))
    }
}

/// The pairing: `∫_X α∪β` at levels `0, 0`, `∫_D α∪β` at levels `i, -i`, else 0.
pub fn insertion_pairing(a: &InsertionElement, b: &InsertionElement) -> Rational {
    if a.level + b.level != 0 {
        return Rational::zero();
    }
    match (&a.class, &b.class) {
        (InsertionClass::Target { one: a1, omega: aw }, InsertionClass::Target { one: b1, omega: bw }) => a1 * bw + aw * b1,
        (InsertionClass::Divisor(x), InsertionClass::Divisor(y)) => x * y,
        _ => unreachable!("levels summing to zero are both zero or both nonzero"),
    }
}

/// Basis `[1]_0, [ω]_0, [1]_i (0 < |i| ≤ k)` of the levels `-k..=k`, with
/// nonzero levels ordered `-k, …, -1, 1, …, k`.
pub fn truncated_basis(k: i64) -> Vec<InsertionElement> {
    let mut basis = vec![InsertionElement::unit(), InsertionElement::point()];
    for i in (-k..=k).filter(|&i| i != 0) {
        basis.push(InsertionElement { level: i, class: InsertionClass::Divisor(Rational::one()) });
    }
    basis
}

/// Gram matrix of [`insertion_pairing`] on [`truncated_basis`].
pub fn pairing_matrix(k: i64) -> Vec<Vec<Rational>> {
    let basis = truncated_basis(k);
    basis.iter().map(|a| basis.iter().map(|b| insertion_pairing(a, b)).collect()).collect()
}
