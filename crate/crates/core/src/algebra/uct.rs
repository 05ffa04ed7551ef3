use super::abelian::AbelianGroup;
use super::complex::ChainComplex;
use super::construct::dual_hom_z;
use super::homology::homology;

/// One degree of the universal-coefficient comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UctLine {
    /// Cohomological degree `p` of the dual complex.
    pub degree: i64,
    /// `H^p(D(K))`, computed directly.
    pub dual_homology: AbelianGroup,
    /// `Ext^1(H^{1-p}(K), Z) ⊕ Hom(H^{-p}(K), Z)`.
    pub predicted: AbelianGroup,
}

impl UctLine {
    pub fn holds(&self) -> bool {
        self.dual_homology == self.predicted
    }
}

#[derive(Clone, Debug)]
pub struct UctReport {
    pub lines: Vec<UctLine>,
}

impl UctReport {
    pub fn holds(&self) -> bool {
        self.lines.iter().all(UctLine::holds)
    }
}

/// Compares `H^p(D(K))` with `Ext^1(H^{-p+1}(K)) ⊕ Hom(H^{-p}(K))` for every
/// `p` where either side can be nonzero.
pub fn uct_check(k: &ChainComplex) -> UctReport {
    let dual = dual_hom_z(k);
    let Some((lo, hi)) = k.cohomological_range() else {
        return UctReport { lines: Vec::new() };
    };
    let kh = |n: i64| homology(k, k.grading().to_cohomological(n)).group;
    let lines = (-hi - 1..=-lo + 1)
        .map(|p| {
            let predicted = kh(1 - p).ext_to_z().direct_sum(&kh(-p).hom_to_z());
            UctLine {
                degree: p,
                dual_homology: homology(&dual, p).group,
                predicted,
            }
        })
        .collect();
    UctReport { lines }
}
