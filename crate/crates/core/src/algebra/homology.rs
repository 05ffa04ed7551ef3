//! Integral homology with explicit representatives.
//!
//! ```text
//!          d_in            d_out
//!  K^{n-1} -----> K^n -----------> K^{n+1}
//!                  |  V_out^{-1} (rows r..)
//!                  v
//!              ker d_out = Z^k   ⊇  im d_in  (matrix B = Kc * d_in)
//!                  |  U_B
//!                  v
//!              Z^k with image  d_1 Z + ... + d_s Z
//! ```
//! Coordinates with `d_i = 1` are boundaries and are dropped; `d_i > 1` give
//! torsion generators, coordinates beyond the rank of `B` are free.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::abelian::AbelianGroup;
use super::complex::ChainComplex;
use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct HomologyGroup {
    /// User-facing degree.
    pub degree: i64,
    pub group: AbelianGroup,
    /// Cycle representatives, free generators first, then torsion
    /// generators in divisibility order.
    generators: Vec<Vec<BigInt>>,
    /// Maps a cycle (chain coordinates) to unreduced class coordinates.
    coords: IntMatrix,
    /// Outgoing differential, for cycle checks.
    d_out: IntMatrix,
}

impl HomologyGroup {
    pub fn betti(&self) -> usize {
        self.group.betti
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.group.torsion
    }

    pub fn cycle_basis(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    /// Rank of the chain group the representatives live in.
    pub fn chain_rank(&self) -> usize {
        self.coords.cols()
    }

    pub fn is_cycle(&self, chain: &[BigInt]) -> bool {
        self.d_out.mul_vec(chain).iter().all(Zero::is_zero)
    }

    /// Class coordinates of a cycle, torsion entries reduced.
    pub fn class_of(&self, cycle: &[BigInt]) -> Result<Vec<BigInt>> {
        if cycle.len() != self.chain_rank() {
            return Err(Error::Validation(format!(
                "chain of length {} in a group of rank {}",
                cycle.len(),
                self.chain_rank()
            )));
        }
        if !self.is_cycle(cycle) {
            return Err(Error::Precondition("chain is not a cycle".into()));
        }
        let mut c = self.coords.mul_vec(cycle);
        self.group.reduce(&mut c);
        Ok(c)
    }

    pub fn is_boundary(&self, cycle: &[BigInt]) -> Result<bool> {
        Ok(self.group.is_zero_element(&self.class_of(cycle)?))
    }

    /// A cycle representing the class with the given coordinates.
    pub fn representative(&self, class: &[BigInt]) -> Vec<BigInt> {
        let mut z = vec![BigInt::zero(); self.chain_rank()];
        for (c, g) in class.iter().zip(&self.generators) {
            if c.is_zero() {
                continue;
            }
            for (zi, gi) in z.iter_mut().zip(g) {
                *zi += c * gi;
            }
        }
        z
    }
}

/// Homology of `complex` in the user-facing `degree`. Degrees outside the
/// stored range give the zero group.
pub fn homology(complex: &ChainComplex, degree: i64) -> HomologyGroup {
    let n = complex.grading().to_cohomological(degree);
    let d_in = complex.d_c(n - 1);
    let d_out = complex.d_c(n);
    let dim = complex.rank_c(n);

    let out = smith_normal_form(&d_out);
    let r_out = out.rank();
    let k = dim - r_out;
    let kernel = out.v.submatrix(0..dim, r_out..dim);
    let kernel_coords = out.v_inv.submatrix(r_out..dim, 0..dim);

    let b = kernel_coords.mul(&d_in);
    let inner = smith_normal_form(&b);
    let factors = inner.invariant_factors();
    let new_basis = kernel.mul(&inner.u_inv);
    let full_coords = inner.u.mul(&kernel_coords);

    // free coordinates first, then torsion in divisibility order
    let mut kept: Vec<usize> = (inner.rank()..k).collect();
    let mut torsion = Vec::new();
    for (i, d) in factors.iter().enumerate() {
        if !d.is_one() {
            kept.push(i);
            torsion.push(d.clone());
        }
    }
    let generators = kept.iter().map(|&j| new_basis.column(j)).collect();
    let coords = full_coords.select_rows(&kept);
    HomologyGroup {
        degree,
        group: AbelianGroup {
            betti: k - inner.rank(),
            torsion,
        },
        generators,
        coords,
        d_out,
    }
}

/// Homology in every degree of the stored range, in increasing user degree.
pub fn all_homology(complex: &ChainComplex) -> Vec<HomologyGroup> {
    match complex.degree_range() {
        None => Vec::new(),
        Some((lo, hi)) => (lo..=hi).map(|k| homology(complex, k)).collect(),
    }
}
