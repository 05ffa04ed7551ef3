use num_bigint::BigInt;

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Direction of the differential as seen by the user.
///
/// Storage is always cohomological (`d: K^n -> K^{n+1}`); a chain complex
/// `C_m` is stored at cohomological degree `-m`, so one reduction engine
/// serves both orientations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Grading {
    /// Differential lowers the degree (`diff_degree = -1`).
    Chain,
    /// Differential raises the degree (`diff_degree = +1`).
    Cochain,
}

impl Grading {
    pub fn diff_degree(self) -> i64 {
        match self {
            Grading::Chain => -1,
            Grading::Cochain => 1,
        }
    }

    /// Converts a user-facing degree to the stored cohomological degree
    /// (and back; the map is an involution).
    pub fn to_cohomological(self, degree: i64) -> i64 {
        match self {
            Grading::Chain => -degree,
            Grading::Cochain => degree,
        }
    }
}

/// A bounded complex of finitely generated free abelian groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    grading: Grading,
    lo: i64,
    ranks: Vec<usize>,
    /// `diffs[i]: K^{lo+i} -> K^{lo+i+1}`.
    diffs: Vec<IntMatrix>,
}

impl ChainComplex {
    pub fn zero(grading: Grading) -> Self {
        Self {
            grading,
            lo: 0,
            ranks: Vec::new(),
            diffs: Vec::new(),
        }
    }

    /// Builds a complex from cohomological data: `ranks[i]` is the rank of
    /// `K^{lo+i}` and `diffs[i]` the map `K^{lo+i} -> K^{lo+i+1}`. The last
    /// differential may be omitted.
    pub fn from_cohomological(
        grading: Grading,
        lo: i64,
        ranks: Vec<usize>,
        mut diffs: Vec<IntMatrix>,
    ) -> Result<Self> {
        if diffs.len() + 1 == ranks.len() {
            diffs.push(IntMatrix::zeros(0, *ranks.last().unwrap()));
        }
        if diffs.len() != ranks.len() {
            return Err(Error::Validation(format!(
                "{} ranks but {} differentials",
                ranks.len(),
                diffs.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            let next = ranks.get(i + 1).copied().unwrap_or(0);
            if d.shape() != (next, ranks[i]) {
                return Err(Error::Validation(format!(
                    "differential out of degree {} has shape {:?}, expected {:?}",
                    lo + i as i64,
                    d.shape(),
                    (next, ranks[i])
                )));
            }
        }
        for i in 0..diffs.len().saturating_sub(1) {
            if !diffs[i + 1].mul(&diffs[i]).is_zero() {
                return Err(Error::Validation(format!(
                    "d o d != 0 at degree {}",
                    lo + i as i64
                )));
            }
        }
        Ok(Self {
            grading,
            lo,
            ranks,
            diffs,
        }
        .trimmed())
    }

    /// A chain complex from ranks of `C_0, C_1, ...` and boundary maps
    /// `boundaries[m-1] = ∂_m: C_m -> C_{m-1}`.
    pub fn chain(ranks: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self> {
        let top = ranks.len() as i64 - 1;
        if ranks.is_empty() {
            return Ok(Self::zero(Grading::Chain));
        }
        if boundaries.len() + 1 != ranks.len() {
            return Err(Error::Validation(format!(
                "{} ranks need {} boundary maps, got {}",
                ranks.len(),
                ranks.len() - 1,
                boundaries.len()
            )));
        }
        // cohomological degree -top first
        let c_ranks: Vec<usize> = ranks.iter().rev().copied().collect();
        let c_diffs: Vec<IntMatrix> = boundaries.into_iter().rev().collect();
        Self::from_cohomological(Grading::Chain, -top, c_ranks, c_diffs)
    }

    /// A cochain complex from ranks of `K^lo, K^{lo+1}, ...`.
    pub fn cochain(lo: i64, ranks: Vec<usize>, diffs: Vec<IntMatrix>) -> Result<Self> {
        Self::from_cohomological(Grading::Cochain, lo, ranks, diffs)
    }

    fn trimmed(mut self) -> Self {
        while self.ranks.last() == Some(&0) {
            self.ranks.pop();
            self.diffs.pop();
        }
        while self.ranks.first() == Some(&0) {
            self.ranks.remove(0);
            self.diffs.remove(0);
            self.lo += 1;
        }
        if self.ranks.is_empty() {
            self.lo = 0;
        } else {
            // the new top differential must land in the zero group
            let last = self.ranks.len() - 1;
            self.diffs[last] = IntMatrix::zeros(0, self.ranks[last]);
        }
        self
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn with_grading(&self, grading: Grading) -> Self {
        Self {
            grading,
            ..self.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Inclusive range of stored cohomological degrees, `None` if zero.
    pub fn cohomological_range(&self) -> Option<(i64, i64)> {
        if self.ranks.is_empty() {
            None
        } else {
            Some((self.lo, self.lo + self.ranks.len() as i64 - 1))
        }
    }

    /// Inclusive range of user-facing degrees, `None` if zero.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        self.cohomological_range().map(|(a, b)| {
            let (x, y) = (
                self.grading.to_cohomological(a),
                self.grading.to_cohomological(b),
            );
            (x.min(y), x.max(y))
        })
    }

    pub fn rank_c(&self, n: i64) -> usize {
        let i = n - self.lo;
        if i < 0 {
            0
        } else {
            self.ranks.get(i as usize).copied().unwrap_or(0)
        }
    }

    /// `d: K^n -> K^{n+1}` (cohomological degrees), zero-shaped outside the
    /// stored range.
    pub fn d_c(&self, n: i64) -> IntMatrix {
        let i = n - self.lo;
        if i >= 0 {
            if let Some(d) = self.diffs.get(i as usize) {
                if d.rows() == self.rank_c(n + 1) {
                    return d.clone();
                }
            }
        }
        IntMatrix::zeros(self.rank_c(n + 1), self.rank_c(n))
    }

    /// Rank in user-facing degree.
    pub fn rank(&self, degree: i64) -> usize {
        self.rank_c(self.grading.to_cohomological(degree))
    }

    /// Differential out of user-facing degree `degree`.
    pub fn differential(&self, degree: i64) -> IntMatrix {
        self.d_c(self.grading.to_cohomological(degree))
    }

    /// Checks `d o d = 0` in every degree.
    pub fn verify_square_zero(&self) -> Result<()> {
        if let Some((lo, hi)) = self.cohomological_range() {
            for n in lo..=hi {
                if !self.d_c(n + 1).mul(&self.d_c(n)).is_zero() {
                    return Err(Error::Internal(format!("d o d != 0 at degree {n}")));
                }
            }
        }
        Ok(())
    }

    /// Replaces one stored differential without validation. Used by the
    /// verification suite to check that a broken complex is reported.
    #[doc(hidden)]
    pub fn corrupt_differential(&mut self, n: i64, entry: (usize, usize), value: BigInt) {
        let i = (n - self.lo) as usize;
        self.diffs[i][entry] = value;
    }
}
