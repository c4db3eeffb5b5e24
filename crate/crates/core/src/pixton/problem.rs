use crate::error::{Error, Result};
use crate::stable_graphs::check_stable;

/// Double ramification data for the point target: genus, weights summing to
/// zero, and the codimension of the component of interest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DRProblem {
    pub g: u32,
    pub a: Vec<i64>,
    pub d: usize,
}

impl DRProblem {
    pub fn new(g: u32, a: Vec<i64>, d: usize) -> Result<Self> {
        let sum: i64 = a.iter().sum();
        if sum != 0 {
            return Err(Error::InvalidProblem(format!("weights must sum to 0, got {sum}")));
        }
        check_stable(g, a.len())?;
        Ok(Self { g, a, d })
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn ambient_dim(&self) -> usize {
        3 * self.g as usize + self.n() - 3
    }

    /// `r` must be strictly larger than this for the class to be polynomial.
    pub fn r_bound(&self) -> u64 {
        let max = self.a.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0).max(1);
        let total: u64 = self.a.iter().map(|x| x.unsigned_abs()).sum();
        self.d as u64 * max + total + 2
    }

    pub fn check_r(&self, r: u64) -> Result<()> {
        let bound = self.r_bound();
        if r <= bound {
            return Err(Error::RBelowBound { r, bound });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_and_bound() {
        assert!(DRProblem::new(0, vec![1, 1], 0).is_err());
        assert!(DRProblem::new(0, vec![1, 1, -2], 0).is_ok());
        assert!(DRProblem::new(0, vec![1, -1], 0).is_err());
        let p = DRProblem::new(0, vec![2, -1, -1, 0], 1).unwrap();
        assert_eq!(p.r_bound(), 2 + 4 + 2);
        assert!(p.check_r(8).is_err());
        assert!(p.check_r(9).is_ok());
        assert_eq!(DRProblem::new(1, vec![0], 1).unwrap().r_bound(), 3);
    }
}
