//! Duals, shifts, mapping cones and the isomorphism identifying the dual of
//! a shifted cone with the cone of the negated dual map.
//!
//! All constructions work in cohomological indexing:
//!
//! * `D(K)^p = Hom(K^{-p}, Z)` with `(df)(x) = (-1)^{|f|+1} f(dx)`;
//! * `(K[n])^i = K^{i+n}` with differential `(-1)^n d`;
//! * `Cone(u)^n = K^{n+1} ⊕ L^n` with `d(k, l) = (-dk, u(k) + dl)`.

use std::collections::BTreeMap;

use super::complex::{ChainComplex, Grading};
use super::map::ChainMap;
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

fn parity_negative(n: i64) -> bool {
    n.rem_euclid(2) == 1
}

/// `Hom(K, Z)` with the sign-twisted transpose differential. The result is
/// cochain-graded: `D(K)^p` dualizes `K^{-p}`.
pub fn dual_hom_z(k: &ChainComplex) -> ChainComplex {
    let Some((lo, hi)) = k.cohomological_range() else {
        return ChainComplex::zero(Grading::Cochain);
    };
    let (dlo, dhi) = (-hi, -lo);
    let ranks: Vec<usize> = (dlo..=dhi).map(|p| k.rank_c(-p)).collect();
    let diffs: Vec<IntMatrix> = (dlo..=dhi)
        .map(|p| k.d_c(-p - 1).transpose().signed(parity_negative(p + 1)))
        .collect();
    ChainComplex::from_cohomological(Grading::Cochain, dlo, ranks, diffs)
        .expect("dual of a valid complex is valid")
}

/// `u' = Hom(u, Z): D(L) -> D(K)` for a degree-preserving map `u: K -> L`.
pub fn dual_map(u: &ChainMap) -> Result<ChainMap> {
    if u.shift() != 0 {
        return Err(Error::Validation(
            "dual_map needs a degree-0 chain map".into(),
        ));
    }
    let source = dual_hom_z(u.target());
    let target = dual_hom_z(u.source());
    let mut matrices = BTreeMap::new();
    if let Some((lo, hi)) = source.cohomological_range() {
        for p in lo..=hi {
            matrices.insert(p, u.at_c(-p).transpose());
        }
    }
    ChainMap::new(source, target, 0, u.sign(), matrices)
}

/// `K[n]`.
pub fn shift(k: &ChainComplex, n: i64) -> ChainComplex {
    let Some((lo, hi)) = k.cohomological_range() else {
        return k.clone();
    };
    let ranks = (lo..=hi).map(|i| k.rank_c(i)).collect();
    let diffs = (lo..=hi)
        .map(|i| k.d_c(i).signed(parity_negative(n)))
        .collect();
    ChainComplex::from_cohomological(k.grading(), lo - n, ranks, diffs)
        .expect("shift of a valid complex is valid")
}

/// `f[n]: K[n] -> L[n]`, `(f[n])^i = f^{i+n}`.
pub fn shift_map(f: &ChainMap, n: i64) -> ChainMap {
    let source = shift(f.source(), n);
    let target = shift(f.target(), n);
    let mut matrices = BTreeMap::new();
    if let Some((lo, hi)) = source.cohomological_range() {
        for i in lo..=hi {
            matrices.insert(i, f.at_c(i + n));
        }
    }
    ChainMap::new_unchecked(source, target, f.shift(), f.sign(), matrices)
        .expect("shapes preserved by shifting")
}

/// The mapping cone with its canonical maps `L -> Cone(u) -> K[1]`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: ChainComplex,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
}

pub fn cone(u: &ChainMap) -> Result<Cone> {
    if u.shift() != 0 || u.sign() != 1 {
        return Err(Error::Validation(
            "cone needs a degree-0 map commuting with the differentials".into(),
        ));
    }
    u.check_commutes()?;
    let k = u.source();
    let l = u.target();
    let range =
        |c: &ChainComplex, off: i64| c.cohomological_range().map(|(a, b)| (a - off, b - off));
    let (lo, hi) = match (range(k, 1), range(l, 0)) {
        (None, None) => {
            let complex = ChainComplex::zero(l.grading());
            let inclusion = ChainMap::zero(l, &complex);
            let projection = ChainMap::zero(&complex, &shift(k, 1));
            return Ok(Cone {
                complex,
                inclusion,
                projection,
            });
        }
        (Some(a), None) | (None, Some(a)) => a,
        (Some((a, b)), Some((c, d))) => (a.min(c), b.max(d)),
    };
    let mut ranks = Vec::new();
    let mut diffs = Vec::new();
    for n in lo..=hi {
        let (kn, ln) = (k.rank_c(n + 1), l.rank_c(n));
        ranks.push(kn + ln);
        let (kn1, ln1) = (k.rank_c(n + 2), l.rank_c(n + 1));
        let d = IntMatrix::block(
            &k.d_c(n + 1).neg(),
            &IntMatrix::zeros(kn1, ln),
            &u.at_c(n + 1),
            &l.d_c(n),
        );
        debug_assert_eq!(d.shape(), (kn1 + ln1, kn + ln));
        diffs.push(d);
    }
    let complex = ChainComplex::from_cohomological(l.grading(), lo, ranks, diffs)?;

    let k1 = shift(k, 1);
    let mut inc = BTreeMap::new();
    let mut proj = BTreeMap::new();
    for n in lo..=hi {
        let (kn, ln) = (k.rank_c(n + 1), l.rank_c(n));
        inc.insert(n, IntMatrix::zeros(kn, ln).vstack(&IntMatrix::identity(ln)));
        proj.insert(n, IntMatrix::identity(kn).hstack(&IntMatrix::zeros(kn, ln)));
    }
    let inclusion = ChainMap::new(l.clone(), complex.clone(), 0, 1, inc)?;
    let projection = ChainMap::new(complex.clone(), k1, 0, 1, proj)?;
    Ok(Cone {
        complex,
        inclusion,
        projection,
    })
}

/// `D(Cone(u)) -> Cone(-u')[-1]`, `(g, h) ↦ (h, (-1)^n g)` in degree `n`,
/// where `g ∈ D(K)^{n-1}` and `h ∈ D(L)^n`.
pub fn cone_hom_iso(u: &ChainMap) -> Result<ChainMap> {
    let c = cone(u)?;
    let source = dual_hom_z(&c.complex);
    let neg_dual = dual_map(u)?.negate();
    let target = shift(&cone(&neg_dual)?.complex, -1);
    let (dk, dl) = (dual_hom_z(u.source()), dual_hom_z(u.target()));
    let mut matrices = BTreeMap::new();
    let degrees = source
        .cohomological_range()
        .into_iter()
        .chain(target.cohomological_range())
        .flat_map(|(a, b)| a..=b);
    for n in degrees {
        let (g, h) = (dk.rank_c(n - 1), dl.rank_c(n));
        let m = IntMatrix::block(
            &IntMatrix::zeros(h, g),
            &IntMatrix::identity(h),
            &IntMatrix::identity(g).signed(parity_negative(n)),
            &IntMatrix::zeros(g, h),
        );
        if m.rows() > 0 || m.cols() > 0 {
            matrices.insert(n, m);
        }
    }
    ChainMap::new(source, target, 0, 1, matrices)
}

/// `D(A[-1]) -> D(A)[1]`: the two complexes share their groups degreewise;
/// the identification multiplies degree `n` by `(-1)^{n+1}`.
pub fn hom_shift_identification(a: &ChainComplex) -> Result<ChainMap> {
    let source = dual_hom_z(&shift(a, -1));
    let target = shift(&dual_hom_z(a), 1);
    let mut matrices = BTreeMap::new();
    if let Some((lo, hi)) = source.cohomological_range() {
        for n in lo..=hi {
            let r = source.rank_c(n);
            matrices.insert(n, IntMatrix::identity(r).signed(parity_negative(n + 1)));
        }
    }
    ChainMap::new(source, target, 0, 1, matrices)
}

/// The isomorphism `D(Cone(u)[-1]) -> Cone(-u')`, composed from
/// [`hom_shift_identification`] and the shift of [`cone_hom_iso`].
pub fn cone_dual_iso(u: &ChainMap) -> Result<ChainMap> {
    let c = cone(u)?;
    let first = hom_shift_identification(&c.complex)?;
    let second = shift_map(&cone_hom_iso(u)?, 1);
    let composite = second.compose(&first)?;
    composite.check_commutes()?;
    Ok(composite)
}
