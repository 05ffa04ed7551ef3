use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::abelian::GroupHom;
use super::complex::ChainComplex;
use super::homology::{homology, HomologyGroup};
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Graded integer matrices `f^n: K^n -> L^{n + shift}` (cohomological
/// degrees) satisfying `f o d = sign * d o f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    shift: i64,
    sign: i8,
    matrices: BTreeMap<i64, IntMatrix>,
}

impl ChainMap {
    /// Validates shapes and the commutation relation.
    pub fn new(
        source: ChainComplex,
        target: ChainComplex,
        shift: i64,
        sign: i8,
        matrices: BTreeMap<i64, IntMatrix>,
    ) -> Result<Self> {
        let map = Self::new_unchecked(source, target, shift, sign, matrices)?;
        map.check_commutes()?;
        Ok(map)
    }

    /// Validates shapes only.
    pub fn new_unchecked(
        source: ChainComplex,
        target: ChainComplex,
        shift: i64,
        sign: i8,
        matrices: BTreeMap<i64, IntMatrix>,
    ) -> Result<Self> {
        if sign != 1 && sign != -1 {
            return Err(Error::Validation(format!("sign must be ±1, got {sign}")));
        }
        for (&n, m) in &matrices {
            let expected = (target.rank_c(n + shift), source.rank_c(n));
            if m.shape() != expected {
                return Err(Error::Validation(format!(
                    "map component at degree {n} has shape {:?}, expected {:?}",
                    m.shape(),
                    expected
                )));
            }
        }
        Ok(Self {
            source,
            target,
            shift,
            sign,
            matrices,
        })
    }

    pub fn identity(k: &ChainComplex) -> Self {
        let mut matrices = BTreeMap::new();
        if let Some((lo, hi)) = k.cohomological_range() {
            for n in lo..=hi {
                matrices.insert(n, IntMatrix::identity(k.rank_c(n)));
            }
        }
        Self {
            source: k.clone(),
            target: k.clone(),
            shift: 0,
            sign: 1,
            matrices,
        }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Self {
        Self {
            source: source.clone(),
            target: target.clone(),
            shift: 0,
            sign: 1,
            matrices: BTreeMap::new(),
        }
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    /// Degree shift in cohomological indexing.
    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// Component out of cohomological degree `n`.
    pub fn at_c(&self, n: i64) -> IntMatrix {
        self.matrices.get(&n).cloned().unwrap_or_else(|| {
            IntMatrix::zeros(self.target.rank_c(n + self.shift), self.source.rank_c(n))
        })
    }

    /// Component out of user-facing degree `degree` of the source.
    pub fn at(&self, degree: i64) -> IntMatrix {
        self.at_c(self.source.grading().to_cohomological(degree))
    }

    fn relevant_degrees(&self) -> Vec<i64> {
        let mut degrees: Vec<i64> = Vec::new();
        if let Some((lo, hi)) = self.source.cohomological_range() {
            degrees.extend(lo - 1..=hi);
        }
        if let Some((lo, hi)) = self.target.cohomological_range() {
            degrees.extend(lo - 1 - self.shift..=hi - self.shift);
        }
        degrees.sort_unstable();
        degrees.dedup();
        degrees
    }

    pub fn check_commutes(&self) -> Result<()> {
        for n in self.relevant_degrees() {
            let lhs = self.at_c(n + 1).mul(&self.source.d_c(n));
            let rhs = self.target.d_c(n + self.shift).mul(&self.at_c(n));
            let rhs = rhs.signed(self.sign < 0);
            if lhs != rhs {
                return Err(Error::Validation(format!(
                    "not a chain map: f d != {} d f at degree {n}",
                    if self.sign < 0 { "-" } else { "" }
                )));
            }
        }
        Ok(())
    }

    /// `self o first`.
    pub fn compose(&self, first: &ChainMap) -> Result<ChainMap> {
        if first.target != self.source {
            return Err(Error::Validation(
                "composition of chain maps with mismatched complexes".into(),
            ));
        }
        let mut matrices = BTreeMap::new();
        for &n in first.matrices.keys() {
            let m = self.at_c(n + first.shift).mul(&first.at_c(n));
            matrices.insert(n, m);
        }
        Ok(ChainMap {
            source: first.source.clone(),
            target: self.target.clone(),
            shift: self.shift + first.shift,
            sign: self.sign * first.sign,
            matrices,
        })
    }

    pub fn negate(&self) -> ChainMap {
        ChainMap {
            matrices: self.matrices.iter().map(|(&n, m)| (n, m.neg())).collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.source != other.source
            || self.target != other.target
            || self.shift != other.shift
            || self.sign != other.sign
        {
            return Err(Error::Validation("sum of incompatible chain maps".into()));
        }
        let mut matrices = self.matrices.clone();
        for (&n, m) in &other.matrices {
            let sum = self.at_c(n).add(m);
            matrices.insert(n, sum);
        }
        Ok(ChainMap {
            matrices,
            ..self.clone()
        })
    }

    pub fn is_zero(&self) -> bool {
        self.matrices.values().all(IntMatrix::is_zero)
    }
}

/// A homomorphism between homology groups induced by a chain map.
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub source: HomologyGroup,
    pub target: HomologyGroup,
    pub hom: GroupHom,
}

/// The map `H(source) -> H(target)` in user-facing source degree `degree`.
///
/// Maps that commute with the differentials up to sign still send cycles to
/// cycles and boundaries to boundaries, so either declared sign is accepted.
pub fn induced_map_on_homology(f: &ChainMap, degree: i64) -> Result<InducedMap> {
    f.check_commutes()?;
    Ok(induced_map_unchecked(f, degree))
}

pub(crate) fn induced_map_unchecked(f: &ChainMap, degree: i64) -> InducedMap {
    let n = f.source.grading().to_cohomological(degree);
    let target_degree = f.target.grading().to_cohomological(n + f.shift);
    let source = homology(&f.source, degree);
    let target = homology(&f.target, target_degree);
    let m = f.at_c(n);
    let columns: Vec<Vec<BigInt>> = source
        .cycle_basis()
        .iter()
        .map(|z| {
            let image = m.mul_vec(z);
            target
                .class_of(&image)
                .expect("chain maps send cycles to cycles")
        })
        .collect();
    let matrix = IntMatrix::from_columns(target.group.generator_count(), &columns);
    let hom = GroupHom::new(source.group.clone(), target.group.clone(), matrix);
    InducedMap {
        source,
        target,
        hom,
    }
}

#[derive(Clone, Debug)]
pub struct QuasiIsoReport {
    /// `(user-facing source degree, induced map is an isomorphism)`.
    pub degrees: Vec<(i64, bool)>,
}

impl QuasiIsoReport {
    pub fn is_quasi_isomorphism(&self) -> bool {
        self.degrees.iter().all(|&(_, ok)| ok)
    }
}

pub fn is_quasi_isomorphism(f: &ChainMap) -> Result<QuasiIsoReport> {
    f.check_commutes()?;
    let grading = f.source.grading();
    let mut degrees = Vec::new();
    for n in f.relevant_degrees() {
        // relevant_degrees pads one below the range; the padding degree
        // still has to be an isomorphism (usually 0 -> 0)
        let d = grading.to_cohomological(n);
        let ind = induced_map_unchecked(f, d);
        degrees.push((d, ind.hom.is_isomorphism()));
    }
    degrees.sort_unstable();
    degrees.dedup();
    Ok(QuasiIsoReport { degrees })
}
