//! Borel-Moore homology of an open complement `U = X - Y`, modelled by the
//! pair `(X, Y)`, and the cap product with supports on it.

use std::sync::Arc;

use crate::algebra::{
    homology, is_quasi_isomorphism, long_exact_sequence, HomologyGroup, LongExactSequence,
};
use crate::bridge::{
    relative_chain_complex, relative_map, subdivision_chain_map, RelativeChains, SimplicialChain,
    SimplicialCochain,
};
use crate::complex::{barycentric_subdivide, SimplicialComplex, Subcomplex};
use crate::error::{Error, Result};
use crate::products::{localized_supported_cap, relative_supported_cap, SupportedCapResult};

/// A compact pair `(X, Y)` standing for the open space `X - Y`.
#[derive(Clone, Debug)]
pub struct OpenSpaceModel {
    ambient: Arc<SimplicialComplex>,
    boundary: Subcomplex,
}

impl OpenSpaceModel {
    pub fn new(ambient: &Arc<SimplicialComplex>, boundary: &Subcomplex) -> Result<Self> {
        boundary.check_parent(ambient)?;
        Ok(Self {
            ambient: ambient.clone(),
            boundary: boundary.clone(),
        })
    }

    /// `Y = ∅`: the compact space `X` itself.
    pub fn compact(ambient: &Arc<SimplicialComplex>) -> Self {
        Self {
            ambient: ambient.clone(),
            boundary: Subcomplex::empty(ambient),
        }
    }

    pub fn ambient(&self) -> &Arc<SimplicialComplex> {
        &self.ambient
    }

    pub fn boundary(&self) -> &Subcomplex {
        &self.boundary
    }

    pub fn chains(&self) -> RelativeChains {
        relative_chain_complex(&self.ambient, &self.boundary).expect("validated pair")
    }
}

/// `H^BM_m(X - Y) = H_m(C_*(X)/C_*(Y))`.
pub fn bm_homology(model: &OpenSpaceModel, m: i64) -> HomologyGroup {
    homology(&model.chains().complex, m)
}

/// `H^BM_m` for `m = 0..=dim X`.
pub fn bm_homology_all(model: &OpenSpaceModel) -> Vec<HomologyGroup> {
    let chains = model.chains();
    (0..=model.ambient.dim().map_or(-1, |d| d as i64))
        .map(|m| homology(&chains.complex, m))
        .collect()
}

/// `... -> H_m(Y) -> H_m(X) -> H_m(X, Y) -> H_{m-1}(Y) -> ...`, built and
/// checked for exactness at every node.
pub fn pair_long_exact_sequence(
    x: &Arc<SimplicialComplex>,
    y: &Subcomplex,
) -> Result<LongExactSequence> {
    let rel = relative_chain_complex(x, y)?;
    let les = long_exact_sequence(&rel.inclusion, &rel.quotient, ["Y", "X", "X,Y"])?;
    if let Some(node) = les.nodes.iter().find(|n| !n.exact) {
        return Err(Error::Internal(format!(
            "pair sequence is not exact at {}",
            node.label
        )));
    }
    Ok(les)
}

#[derive(Clone, Debug)]
pub struct InvarianceReport {
    pub times: usize,
    /// `(degree, sd_# induces an isomorphism)`.
    pub degrees: Vec<(i64, bool)>,
}

impl InvarianceReport {
    pub fn holds(&self) -> bool {
        self.degrees.iter().all(|&(_, ok)| ok)
    }
}

/// Checks that the relative subdivision map `C_*(X, Y) -> C_*(sd^k X, sd^k Y)`
/// is a quasi-isomorphism.
pub fn subdivision_invariance_check(
    model: &OpenSpaceModel,
    times: usize,
) -> Result<InvarianceReport> {
    if times == 0 {
        return Err(Error::Validation(
            "subdivision count must be at least 1".into(),
        ));
    }
    let mut x = model.ambient.clone();
    let mut y = model.boundary.clone();
    let mut rel = model.chains();
    let mut total = None;
    for _ in 0..times {
        let sd = barycentric_subdivide(&x)?;
        let next_y = sd.subdivide_subcomplex(&y)?;
        let next_rel = relative_chain_complex(&sd.complex, &next_y)?;
        let step = relative_map(&subdivision_chain_map(&sd), &rel, &next_rel)?;
        total = Some(match total {
            None => step,
            Some(prev) => step.compose(&prev)?,
        });
        x = sd.complex.clone();
        y = next_y;
        rel = next_rel;
    }
    let report = is_quasi_isomorphism(&total.expect("times >= 1"))?;
    Ok(InvarianceReport {
        times,
        degrees: report.degrees,
    })
}

#[derive(Clone, Debug)]
pub struct BmCapReport {
    pub result: SupportedCapResult,
    /// When `Z ∩ Y = ∅`: whether the computation localized to the closed
    /// star of `Z` gives the same chain and class.
    pub localization_agrees: Option<bool>,
}

/// The supported cap `H^BM_m(U) ⊗ H^p_Z -> H^BM_{m-p}(Z)` through the pair
/// model.
pub fn bm_supported_cap(
    model: &OpenSpaceModel,
    z: &Subcomplex,
    u: &SimplicialCochain,
    alpha: &SimplicialChain,
    presubdivide: usize,
) -> Result<BmCapReport> {
    let x = &model.ambient;
    let result = relative_supported_cap(x, &model.boundary, z, u, alpha, presubdivide)?;
    let localization_agrees = if model.boundary.intersection(z)?.is_empty() {
        let local = localized_supported_cap(x, z, u, alpha, presubdivide)?;
        let same_class = match (&local.class_in_z, &result.class_in_z) {
            (Some(a), Some(b)) => a.group == b.group && a.coords == b.coords,
            _ => false,
        };
        Some(same_class && local.chain_image == result.chain_image)
    } else {
        None
    };
    Ok(BmCapReport {
        result,
        localization_agrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use num_bigint::BigInt;

    #[test]
    fn real_line() {
        let x = fixtures::interval();
        let y = fixtures::manifold_boundary(&x);
        let model = OpenSpaceModel::new(&x, &y).unwrap();
        assert_eq!(bm_homology(&model, 1).betti(), 1);
        assert!(bm_homology(&model, 0).group.is_trivial());
        let les = pair_long_exact_sequence(&x, &y).unwrap();
        assert!(les.is_exact());
        assert!(subdivision_invariance_check(&model, 1).unwrap().holds());
    }

    #[test]
    fn open_cylinder() {
        let x = fixtures::cylinder();
        let y = fixtures::manifold_boundary(&x);
        let model = OpenSpaceModel::new(&x, &y).unwrap();
        let groups: Vec<String> = bm_homology_all(&model)
            .iter()
            .map(|h| h.group.describe())
            .collect();
        assert_eq!(groups, ["0", "Z^1", "Z^1"]);
    }

    #[test]
    fn disc_connecting_map() {
        let x = fixtures::simplex(2);
        let y = fixtures::manifold_boundary(&x);
        let les = pair_long_exact_sequence(&x, &y).unwrap();
        // δ: H_2(X, Y) -> H_1(Y), at cohomological degree -2
        let (_, delta) = les.connecting.iter().find(|(n, _)| *n == -2).unwrap();
        assert!(delta.is_isomorphism());
    }

    #[test]
    fn empty_boundary_is_ordinary_homology() {
        let x = fixtures::torus();
        let model = OpenSpaceModel::compact(&x);
        assert_eq!(bm_homology(&model, 1).betti(), 2);
        assert!(subdivision_invariance_check(&model, 1).unwrap().holds());
        assert!(subdivision_invariance_check(&model, 0).is_err());
    }

    #[test]
    fn midpoint_cap() {
        let x = fixtures::interval();
        let y = fixtures::manifold_boundary(&x);
        let model = OpenSpaceModel::new(&x, &y).unwrap();
        let z = Subcomplex::from_labels(&x, &[vec!["m".into()]]).unwrap();
        let u = SimplicialCochain::from_labels(
            &x,
            1,
            [(vec!["a".into(), "m".into()], BigInt::from(1))],
        )
        .unwrap();
        let alpha = SimplicialChain::from_labels(
            &x,
            1,
            [
                (vec!["a".into(), "m".into()], BigInt::from(1)),
                (vec!["m".into(), "b".into()], BigInt::from(1)),
            ],
        )
        .unwrap();
        let report = bm_supported_cap(&model, &z, &u, &alpha, 0).unwrap();
        assert_eq!(report.localization_agrees, Some(true));
        assert_eq!(report.result.class().unwrap().coords, vec![BigInt::from(1)]);
    }
}
