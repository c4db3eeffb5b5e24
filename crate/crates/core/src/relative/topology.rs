use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Topological type `(g, n, β, ρ, μ)` of a relative map to `(P¹, pt)`.
///
/// `ρ` is `mu.len()`; `β` is the degree, which is also `∫_β D`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TopologicalType {
    pub g: u32,
    pub n: usize,
    pub beta: i64,
    pub mu: Vec<i64>,
}

impl TopologicalType {
    pub fn new(g: u32, n: usize, beta: i64, mu: Vec<i64>) -> Result<Self> {
        let t = Self { g, n, beta, mu };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidTopologicalType(msg));
        if self.beta < 0 {
            return bad(format!("negative degree {}", self.beta));
        }
        if self.mu.contains(&0) {
            return bad("contact orders must be nonzero".into());
        }
        let total: i64 = self.mu.iter().sum();
        if total != self.beta {
            return bad(format!("contact orders sum to {total}, expected {}", self.beta));
        }
        Ok(())
    }

    pub fn rho(&self) -> usize {
        self.mu.len()
    }

    pub fn negative_count(&self) -> usize {
        self.mu.iter().filter(|&&m| m < 0).count()
    }

    pub fn to_json(&self) -> Value {
        json!({"g": self.g, "n": self.n, "beta": self.beta, "rho": self.rho(), "mu": self.mu})
    }
}

/// `Σ_{μ>0} μ/r + Σ_{μ<0} (r+μ)/r - (Σ μ)/r`, the number of large ages.
pub fn rho_minus(mu: &[i64], r: u64) -> Result<i64> {
    let bound = mu.iter().map(|m| m.unsigned_abs()).max().unwrap_or(0);
    if r <= bound {
        return Err(Error::RBelowBound { r, bound });
    }
    let r_int = BigInt::from(r);
    let mut numer = BigInt::zero();
    for &m in mu {
        if m > 0 {
            numer += m;
        } else {
            numer += &r_int + m;
        }
    }
    numer -= mu.iter().sum::<i64>();
    let value = Rational::new(numer, r_int);
    if !value.is_integer() {
        return Err(Error::InvalidTopologicalType(format!("ρ₋ = {value} is not an integer")));
    }
    Ok(value.to_integer().to_i64().expect("ρ₋ is at most the number of contact orders"))
}
