//! Finitely generated abelian groups in invariant-factor form and
//! homomorphisms between them.
//!
//! A group `Z^b + Z/t_1 + ... + Z/t_k` is presented on `b + k` generators,
//! free generators first, with relation matrix `diag(t_i)` on the torsion
//! coordinates. Elements are integer coordinate vectors; torsion coordinates
//! are kept reduced into `[0, t_i)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::IntMatrix;
use super::snf::{smith_normal_form, solve_integer};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AbelianGroup {
    pub betti: usize,
    /// Torsion coefficients, each >= 2, in divisibility order.
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self {
            betti: rank,
            torsion: Vec::new(),
        }
    }

    /// Normalizes a list of cyclic orders (0 meaning infinite order, 1 meaning
    /// trivial) into invariant-factor form.
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Self {
        let betti = orders.iter().filter(|o| o.is_zero()).count();
        let finite: Vec<BigInt> = orders
            .iter()
            .filter(|o| !o.is_zero() && !o.is_one())
            .cloned()
            .collect();
        let diag = IntMatrix::diagonal(finite.len(), finite.len(), &finite);
        let torsion = smith_normal_form(&diag)
            .invariant_factors()
            .into_iter()
            .filter(|t| !t.is_one())
            .collect();
        Self { betti, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    pub fn generator_count(&self) -> usize {
        self.betti + self.torsion.len()
    }

    /// Order of generator `i`, `None` for free generators.
    pub fn generator_order(&self, i: usize) -> Option<&BigInt> {
        if i < self.betti {
            None
        } else {
            Some(&self.torsion[i - self.betti])
        }
    }

    /// Relation matrix: `g x k`, column `j` is `t_j` times the `j`-th torsion
    /// generator.
    pub fn relations(&self) -> IntMatrix {
        let g = self.generator_count();
        let mut r = IntMatrix::zeros(g, self.torsion.len());
        for (j, t) in self.torsion.iter().enumerate() {
            r[(self.betti + j, j)] = t.clone();
        }
        r
    }

    pub fn reduce(&self, coords: &mut [BigInt]) {
        for (i, t) in self.torsion.iter().enumerate() {
            let c = &mut coords[self.betti + i];
            *c = c.mod_floor(t);
        }
    }

    pub fn is_zero_element(&self, coords: &[BigInt]) -> bool {
        coords
            .iter()
            .enumerate()
            .all(|(i, c)| match self.generator_order(i) {
                None => c.is_zero(),
                Some(t) => c.is_multiple_of(t),
            })
    }

    /// `Z^b + Z/t1 + Z/t2`, with `0` for the trivial group.
    pub fn describe(&self) -> String {
        self.render(true)
    }

    /// As [`describe`](Self::describe) but writes `Z` rather than `Z^1`.
    pub fn compact(&self) -> String {
        self.render(false)
    }

    fn render(&self, always_exponent: bool) -> String {
        let mut parts = Vec::new();
        if self.betti > 0 {
            if self.betti == 1 && !always_exponent {
                parts.push("Z".to_string());
            } else {
                parts.push(format!("Z^{}", self.betti));
            }
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    /// `Hom(self, Z)`.
    pub fn hom_to_z(&self) -> AbelianGroup {
        AbelianGroup::free(self.betti)
    }

    /// `Ext^1(self, Z)`.
    pub fn ext_to_z(&self) -> AbelianGroup {
        AbelianGroup {
            betti: 0,
            torsion: self.torsion.clone(),
        }
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut orders: Vec<BigInt> = Vec::new();
        orders.extend(std::iter::repeat_n(
            BigInt::zero(),
            self.betti + other.betti,
        ));
        orders.extend(self.torsion.iter().cloned());
        orders.extend(other.torsion.iter().cloned());
        AbelianGroup::from_cyclic_orders(&orders)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// A homomorphism `source -> target` given by its values on generators.
#[derive(Clone, Debug)]
pub struct GroupHom {
    pub source: AbelianGroup,
    pub target: AbelianGroup,
    /// `target.generator_count() x source.generator_count()`.
    pub matrix: IntMatrix,
}

impl GroupHom {
    pub fn new(source: AbelianGroup, target: AbelianGroup, mut matrix: IntMatrix) -> Self {
        assert_eq!(matrix.rows(), target.generator_count());
        assert_eq!(matrix.cols(), source.generator_count());
        for j in 0..matrix.cols() {
            let mut col = matrix.column(j);
            target.reduce(&mut col);
            for (i, c) in col.into_iter().enumerate() {
                matrix[(i, j)] = c;
            }
        }
        Self {
            source,
            target,
            matrix,
        }
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut y = self.matrix.mul_vec(x);
        self.target.reduce(&mut y);
        y
    }

    pub fn is_zero(&self) -> bool {
        (0..self.matrix.cols()).all(|j| self.target.is_zero_element(&self.matrix.column(j)))
    }

    pub fn compose(&self, first: &GroupHom) -> GroupHom {
        assert_eq!(
            first.target, self.source,
            "composition of incompatible maps"
        );
        GroupHom::new(
            first.source.clone(),
            self.target.clone(),
            self.matrix.mul(&first.matrix),
        )
    }

    pub fn is_surjective(&self) -> bool {
        let g = self.target.generator_count();
        let span = self.matrix.hstack(&self.target.relations());
        let snf = smith_normal_form(&span);
        snf.rank() == g && snf.invariant_factors().iter().all(One::is_one)
    }

    /// A surjection between isomorphic finitely generated abelian groups is an
    /// isomorphism (such groups are Hopfian).
    pub fn is_isomorphism(&self) -> bool {
        self.source == self.target && self.is_surjective()
    }

    /// Some `x` with `self(x) = y`, if `y` is in the image.
    pub fn preimage(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        let span = self.matrix.hstack(&self.target.relations());
        let sol = solve_integer(&span, y)?;
        let mut x = sol[..self.source.generator_count()].to_vec();
        self.source.reduce(&mut x);
        Some(x)
    }

    /// Generators (as coordinate vectors in the source) of the kernel.
    pub fn kernel_generators(&self) -> Vec<Vec<BigInt>> {
        let gs = self.source.generator_count();
        let span = self.matrix.hstack(&self.target.relations());
        let basis = smith_normal_form(&span).kernel_basis();
        (0..basis.cols())
            .map(|j| basis.column(j)[..gs].to_vec())
            .filter(|x| !self.source.is_zero_element(x))
            .collect()
    }

    /// Whether `x` lies in the image of this map.
    pub fn image_contains(&self, x: &[BigInt]) -> bool {
        self.preimage(x).is_some()
    }
}

/// Exactness of `a --f--> b --g--> c` at `b`: `g f = 0` and `ker g` inside
/// `im f`.
pub fn is_exact_at(f: &GroupHom, g: &GroupHom) -> bool {
    assert_eq!(f.target, g.source);
    g.compose(f).is_zero() && g.kernel_generators().iter().all(|x| f.image_contains(x))
}
