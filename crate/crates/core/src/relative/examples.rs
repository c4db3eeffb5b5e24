use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, int, Rational};

/// Degree of `T_C(-log D)` on a smooth curve of genus `g` with `|D| = points`.
pub fn log_tangent_degree(g: u32, points: u32) -> i64 {
    2 - 2 * g as i64 - points as i64
}

/// Worked values of the relative theory of `(P¹, pt)` in degree 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExampleOmegaValues {
    /// `Ω_{1,1,0}([1]_0)` as a multiple of `1 ∈ H⁰(M̄_{1,1})`
    pub omega_113: Rational,
}

impl ExampleOmegaValues {
    /// `Ω_{0,3,0}([1]_0, [1]_i, [1]_{-i})` as a multiple of `1 ∈ H⁰(M̄_{0,3})`.
    pub fn omega_033(&self, i: i64) -> Result<Rational> {
        if i == 0 {
            return Err(Error::InvalidInsertion("the level must be nonzero".into()));
        }
        // one negative contact order, degree 0: the cycle is the fundamental class
        Ok(Rational::one())
    }

    /// `Ω_{0,3,0}([1]_0, [1]_0, [ω]_0) = ∫_{P¹} ω`.
    pub fn omega_03_point(&self) -> Rational {
        Rational::one()
    }
}

/// The virtual class over `M̄_{1,1} × P¹` is `c_1(E^∨ ⊠ T(-log pt)) =
/// -λ_1 ⊗ 1 + 1 ⊗ c_1(T(-log pt))`; pushing forward to `M̄_{1,1}` keeps only
/// the second term, which integrates over `P¹` to its degree.
pub fn example_omega_values() -> ExampleOmegaValues {
    let lambda_part = Rational::zero();
    let omega_113 = lambda_part + int(log_tangent_degree(0, 1));
    ExampleOmegaValues { omega_113 }
}

/// Both sides of the loop axiom for `Ω_{1,1,0}([1]_0)`, with the sum over
/// levels cut at `|i| ≤ k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopDemo {
    pub k: i64,
    pub lhs: Rational,
    pub partial_rhs: Rational,
}

impl LoopDemo {
    pub fn to_json(&self) -> Value {
        json!({"K": self.k, "lhs": format_rational(&self.lhs), "partial_rhs": format_rational(&self.partial_rhs)})
    }
}

pub fn loop_axiom_demo(k: i64) -> Result<LoopDemo> {
    if k < 1 {
        return Err(Error::InvalidInsertion(format!("K = {k} must be at least 1")));
    }
    let values = example_omega_values();
    let mut rhs = int(2) * values.omega_03_point();
    for i in (-k..=k).filter(|&i| i != 0) {
        rhs += values.omega_033(i)?;
    }
    Ok(LoopDemo { k, lhs: values.omega_113, partial_rhs: rhs })
}
