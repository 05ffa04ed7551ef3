//! Long exact homology sequences of short exact sequences of complexes.

use num_bigint::BigInt;

use super::abelian::{is_exact_at, GroupHom};
use super::homology::homology;
use super::map::{induced_map_unchecked, ChainMap};
use super::matrix::IntMatrix;
use super::snf::{smith_normal_form, solve_with};
use crate::error::{Error, Result};

/// One node of the long exact sequence and whether it is exact there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessNode {
    pub label: String,
    pub exact: bool,
}

#[derive(Clone, Debug)]
pub struct LongExactSequence {
    /// `H^n(A) -> H^n(B)` for each cohomological `n`, in increasing `n`.
    pub sub_maps: Vec<(i64, GroupHom)>,
    /// `H^n(B) -> H^n(C)`.
    pub quotient_maps: Vec<(i64, GroupHom)>,
    /// `δ: H^n(C) -> H^{n+1}(A)`.
    pub connecting: Vec<(i64, GroupHom)>,
    pub nodes: Vec<ExactnessNode>,
}

impl LongExactSequence {
    pub fn is_exact(&self) -> bool {
        self.nodes.iter().all(|n| n.exact)
    }
}

/// The connecting map `H^n(C) -> H^{n+1}(A)` for `0 -> A -i-> B -p-> C -> 0`:
/// lift a cycle along `p`, apply `d_B`, pull back along `i`.
pub fn connecting_map(i: &ChainMap, p: &ChainMap, n: i64) -> Result<GroupHom> {
    let c = p.target();
    let b = p.source();
    let a = i.source();
    let hc = homology(c, c.grading().to_cohomological(n));
    let ha = homology(a, a.grading().to_cohomological(n + 1));
    let lift = smith_normal_form(&p.at_c(n));
    let pull = smith_normal_form(&i.at_c(n + 1));
    let d = b.d_c(n);
    let mut columns: Vec<Vec<BigInt>> = Vec::new();
    for z in hc.cycle_basis() {
        let lifted = solve_with(&lift, z)
            .ok_or_else(|| Error::Internal(format!("quotient map not surjective at degree {n}")))?;
        let db = d.mul_vec(&lifted);
        let pre = solve_with(&pull, &db).ok_or_else(|| {
            Error::Internal(format!(
                "boundary of lift not in the subcomplex at degree {n}"
            ))
        })?;
        columns.push(ha.class_of(&pre)?);
    }
    let matrix = IntMatrix::from_columns(ha.group.generator_count(), &columns);
    Ok(GroupHom::new(hc.group.clone(), ha.group.clone(), matrix))
}

/// Builds every map of the long exact sequence of `0 -> A -> B -> C -> 0`
/// and checks exactness at every node. `labels` names the three complexes.
pub fn long_exact_sequence(
    i: &ChainMap,
    p: &ChainMap,
    labels: [&str; 3],
) -> Result<LongExactSequence> {
    for f in [i, p] {
        if f.shift() != 0 || f.sign() != 1 {
            return Err(Error::Validation(
                "short exact sequence maps must be degree-0 chain maps".into(),
            ));
        }
        f.check_commutes()?;
    }
    if i.target() != p.source() {
        return Err(Error::Validation(
            "short exact sequence does not compose".into(),
        ));
    }
    let ranges = [i.source(), i.target(), p.target()]
        .iter()
        .filter_map(|c| c.cohomological_range())
        .collect::<Vec<_>>();
    let Some(lo) = ranges.iter().map(|r| r.0).min() else {
        return Ok(LongExactSequence {
            sub_maps: Vec::new(),
            quotient_maps: Vec::new(),
            connecting: Vec::new(),
            nodes: Vec::new(),
        });
    };
    let hi = ranges.iter().map(|r| r.1).max().unwrap();
    let (lo, hi) = (lo - 1, hi + 1);

    let user = |c: &super::complex::ChainComplex, n: i64| c.grading().to_cohomological(n);
    let mut sub_maps = Vec::new();
    let mut quotient_maps = Vec::new();
    let mut connecting = Vec::new();
    for n in lo..=hi {
        sub_maps.push((n, induced_map_unchecked(i, user(i.source(), n)).hom));
        quotient_maps.push((n, induced_map_unchecked(p, user(p.source(), n)).hom));
        connecting.push((n, connecting_map(i, p, n)?));
    }

    let mut nodes = Vec::new();
    let grading = i.source().grading();
    let name = |label: &str, n: i64| match grading {
        super::complex::Grading::Chain => format!("H_{}({label})", -n),
        super::complex::Grading::Cochain => format!("H^{}({label})", n),
    };
    for k in 0..sub_maps.len() {
        let n = lo + k as i64;
        if k > 0 {
            nodes.push(ExactnessNode {
                label: name(labels[0], n),
                exact: is_exact_at(&connecting[k - 1].1, &sub_maps[k].1),
            });
        }
        nodes.push(ExactnessNode {
            label: name(labels[1], n),
            exact: is_exact_at(&sub_maps[k].1, &quotient_maps[k].1),
        });
        nodes.push(ExactnessNode {
            label: name(labels[2], n),
            exact: is_exact_at(&quotient_maps[k].1, &connecting[k].1),
        });
    }
    Ok(LongExactSequence {
        sub_maps,
        quotient_maps,
        connecting,
        nodes,
    })
}
