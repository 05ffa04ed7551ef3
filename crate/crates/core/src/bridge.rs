//! From simplicial complexes to chain algebra: oriented chains and cochains,
//! relative complexes, subdivision and last-vertex chain maps, and the ξ
//! pairing of chains with cochains.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{dual_hom_z, ChainComplex, ChainMap, IntMatrix};
use crate::complex::{
    same_complex, Simplex, SimplicialComplex, Subcomplex, SubdivisionResult, VertexId,
};
use crate::error::{Error, Result};

fn sign_of(odd: bool) -> BigInt {
    if odd {
        -BigInt::one()
    } else {
        BigInt::one()
    }
}

macro_rules! sparse_vector {
    ($name:ident, $what:literal) => {
        #[derive(Clone, Debug, PartialEq, Eq)]
        pub struct $name {
            complex: Arc<SimplicialComplex>,
            degree: i64,
            /// Simplex index within `degree` to nonzero coefficient.
            entries: BTreeMap<usize, BigInt>,
        }

        impl $name {
            pub fn zero(complex: &Arc<SimplicialComplex>, degree: i64) -> Self {
                Self {
                    complex: complex.clone(),
                    degree,
                    entries: BTreeMap::new(),
                }
            }

            pub fn from_entries(
                complex: &Arc<SimplicialComplex>,
                degree: i64,
                entries: impl IntoIterator<Item = (Simplex, BigInt)>,
            ) -> Result<Self> {
                let mut out = Self::zero(complex, degree);
                for (s, c) in entries {
                    if s.dim() as i64 != degree {
                        return Err(Error::Validation(format!(
                            concat!($what, " of degree {} given a simplex of dimension {}"),
                            degree,
                            s.dim()
                        )));
                    }
                    let i = complex.index_of(&s).ok_or_else(|| {
                        Error::Validation(
                            concat!($what, " names a simplex outside the complex").into(),
                        )
                    })?;
                    out.add_at(i, &c);
                }
                Ok(out)
            }

            /// Entries keyed by token tuples in increasing vertex order.
            pub fn from_labels(
                complex: &Arc<SimplicialComplex>,
                degree: i64,
                entries: impl IntoIterator<Item = (Vec<VertexId>, BigInt)>,
            ) -> Result<Self> {
                let mut simplices = Vec::new();
                for (labels, c) in entries {
                    simplices.push((complex.simplex_from_labels(&labels)?, c));
                }
                Self::from_entries(complex, degree, simplices)
            }

            /// The indicator of one simplex.
            pub fn indicator(complex: &Arc<SimplicialComplex>, s: &Simplex) -> Result<Self> {
                Self::from_entries(complex, s.dim() as i64, [(s.clone(), BigInt::one())])
            }

            pub fn from_vector(
                complex: &Arc<SimplicialComplex>,
                degree: i64,
                values: &[BigInt],
            ) -> Result<Self> {
                let n = rank(complex, degree);
                if values.len() != n {
                    return Err(Error::Validation(format!(
                        "vector of length {} for {} simplices of dimension {degree}",
                        values.len(),
                        n
                    )));
                }
                let mut out = Self::zero(complex, degree);
                for (i, c) in values.iter().enumerate() {
                    out.add_at(i, c);
                }
                Ok(out)
            }

            pub fn to_vector(&self) -> Vec<BigInt> {
                let mut v = vec![BigInt::zero(); rank(&self.complex, self.degree)];
                for (&i, c) in &self.entries {
                    v[i] = c.clone();
                }
                v
            }

            pub fn complex(&self) -> &Arc<SimplicialComplex> {
                &self.complex
            }

            pub fn degree(&self) -> i64 {
                self.degree
            }

            pub fn is_zero(&self) -> bool {
                self.entries.is_empty()
            }

            pub fn get(&self, s: &Simplex) -> BigInt {
                self.complex
                    .index_of(s)
                    .filter(|_| s.dim() as i64 == self.degree)
                    .and_then(|i| self.entries.get(&i).cloned())
                    .unwrap_or_default()
            }

            pub(crate) fn get_index(&self, i: usize) -> Option<&BigInt> {
                self.entries.get(&i)
            }

            /// Nonzero entries in simplex order.
            pub fn iter(&self) -> impl Iterator<Item = (&Simplex, &BigInt)> + '_ {
                let d = self.degree as usize;
                self.entries
                    .iter()
                    .map(move |(&i, c)| (self.complex.simplex(d, i), c))
            }

            #[allow(dead_code)]
            pub(crate) fn iter_indexed(&self) -> impl Iterator<Item = (usize, &BigInt)> + '_ {
                self.entries.iter().map(|(&i, c)| (i, c))
            }

            pub(crate) fn add_at(&mut self, i: usize, c: &BigInt) {
                if c.is_zero() {
                    return;
                }
                let e = self.entries.entry(i).or_default();
                *e += c;
                if e.is_zero() {
                    self.entries.remove(&i);
                }
            }

            fn check_compatible(&self, other: &Self) -> Result<()> {
                if !same_complex(&self.complex, &other.complex) {
                    return Err(Error::Validation(
                        concat!($what, "s on different complexes").into(),
                    ));
                }
                if self.degree != other.degree {
                    return Err(Error::Validation(format!(
                        concat!($what, "s of degrees {} and {}"),
                        self.degree, other.degree
                    )));
                }
                Ok(())
            }

            pub fn add(&self, other: &Self) -> Result<Self> {
                self.check_compatible(other)?;
                let mut out = self.clone();
                for (&i, c) in &other.entries {
                    out.add_at(i, c);
                }
                Ok(out)
            }

            pub fn sub(&self, other: &Self) -> Result<Self> {
                self.add(&other.neg())
            }

            pub fn neg(&self) -> Self {
                self.scale(&-BigInt::one())
            }

            pub fn scale(&self, c: &BigInt) -> Self {
                let mut out = Self::zero(&self.complex, self.degree);
                if !c.is_zero() {
                    out.entries = self.entries.iter().map(|(&i, v)| (i, v * c)).collect();
                }
                out
            }

            /// Entries rendered as `c·[v0,...,vk]`, joined by ` + `; `0` if empty.
            pub fn render(&self) -> String {
                if self.is_zero() {
                    return "0".into();
                }
                self.iter()
                    .map(|(s, c)| {
                        let body = self.complex.render(s);
                        if c.is_one() {
                            body
                        } else if *c == -BigInt::one() {
                            format!("-{body}")
                        } else {
                            format!("{c}·{body}")
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" + ")
            }
        }
    };
}

sparse_vector!(SimplicialChain, "chain");
sparse_vector!(SimplicialCochain, "cochain");

fn rank(complex: &SimplicialComplex, degree: i64) -> usize {
    if degree < 0 {
        0
    } else {
        complex.count(degree as usize)
    }
}

impl SimplicialChain {
    /// `∂[v_0..v_m] = Σ (-1)^i [v_0..v̂_i..v_m]`.
    pub fn boundary(&self) -> SimplicialChain {
        let mut out = SimplicialChain::zero(&self.complex, self.degree - 1);
        if self.degree <= 0 {
            return out;
        }
        for (s, c) in self.iter() {
            for i in 0..=s.dim() {
                let f = self.complex.index_of(&s.face(i)).expect("face-closed");
                out.add_at(f, &(c * sign_of(i % 2 == 1)));
            }
        }
        out
    }

    /// Every simplex of the support lies in `sub`.
    pub fn is_supported_on(&self, sub: &Subcomplex) -> bool {
        self.iter().all(|(s, _)| sub.contains(s))
    }
}

impl SimplicialCochain {
    /// `u(α) = Σ u(σ) α(σ)`; zero when the degrees differ.
    pub fn evaluate(&self, alpha: &SimplicialChain) -> Result<BigInt> {
        if !same_complex(&self.complex, alpha.complex()) {
            return Err(Error::Validation(
                "cochain and chain on different complexes".into(),
            ));
        }
        if self.degree != alpha.degree() {
            return Ok(BigInt::zero());
        }
        Ok(self
            .entries
            .iter()
            .filter_map(|(i, u)| alpha.get_index(*i).map(|a| u * a))
            .sum())
    }

    /// `(du)(x) = (-1)^{p+1} u(∂x)`.
    pub fn coboundary(&self) -> SimplicialCochain {
        let p = self.degree;
        let mut out = SimplicialCochain::zero(&self.complex, p + 1);
        if p < 0 {
            return out;
        }
        let sign = sign_of((p + 1) % 2 == 1);
        for (x, t) in self.complex.simplices((p + 1) as usize).iter().enumerate() {
            let mut acc = BigInt::zero();
            for i in 0..=t.dim() {
                let f = self.complex.index_of(&t.face(i)).expect("face-closed");
                if let Some(u) = self.entries.get(&f) {
                    acc += u * sign_of(i % 2 == 1);
                }
            }
            out.add_at(x, &(acc * &sign));
        }
        out
    }

    /// True when `u` vanishes on every simplex of `sub`.
    pub fn vanishes_on(&self, sub: &Subcomplex) -> bool {
        self.iter().all(|(s, _)| !sub.contains(s))
    }
}

/// The matrix of `∂_m: C_m -> C_{m-1}` in simplex order.
pub fn boundary_matrix(x: &SimplicialComplex, m: usize) -> IntMatrix {
    let rows = if m == 0 { 0 } else { x.count(m - 1) };
    let mut d = IntMatrix::zeros(rows, x.count(m));
    if m == 0 {
        return d;
    }
    for (j, s) in x.simplices(m).iter().enumerate() {
        for i in 0..=m {
            let f = x.index_of(&s.face(i)).expect("face-closed");
            d[(f, j)] = sign_of(i % 2 == 1);
        }
    }
    d
}

/// `C_*(X)`, graded by simplex dimension.
pub fn chain_complex_of(x: &SimplicialComplex) -> ChainComplex {
    let top = x.dim().map_or(0, |d| d + 1);
    let ranks = (0..top).map(|m| x.count(m)).collect();
    let boundaries = (1..top).map(|m| boundary_matrix(x, m)).collect();
    ChainComplex::chain(ranks, boundaries).expect("simplicial boundary squares to zero")
}

/// `C^*(X)` with `d^p = (-1)^{p+1} ∂_{p+1}^T`.
pub fn cochain_complex(x: &SimplicialComplex) -> ChainComplex {
    let top = x.dim().map_or(0, |d| d + 1);
    let ranks = (0..top).map(|p| x.count(p)).collect();
    let diffs = (0..top)
        .map(|p| boundary_matrix(x, p + 1).transpose().signed(p % 2 == 0))
        .collect();
    ChainComplex::cochain(0, ranks, diffs).expect("simplicial coboundary squares to zero")
}

/// `C_*(X)/C_*(Y)` with its quotient map and the inclusion `C_*(Y) -> C_*(X)`.
#[derive(Clone, Debug)]
pub struct RelativeChains {
    pub complex: ChainComplex,
    /// `basis[m][k]`: index in `X` of the `k`-th relative basis simplex.
    pub basis: Vec<Vec<usize>>,
    pub quotient: ChainMap,
    pub sub: Subcomplex,
    /// `Y` as a complex in its own right.
    pub sub_complex: Arc<SimplicialComplex>,
    pub inclusion: ChainMap,
}

impl RelativeChains {
    /// Projects an absolute chain of `X` onto relative coordinates.
    pub fn project(&self, alpha: &SimplicialChain) -> Vec<BigInt> {
        let d = alpha.degree();
        let basis = if d < 0 {
            &[][..]
        } else {
            self.basis.get(d as usize).map_or(&[][..], Vec::as_slice)
        };
        basis
            .iter()
            .map(|&i| alpha.get_index(i).cloned().unwrap_or_default())
            .collect()
    }

    /// Lifts relative coordinates to the absolute chain supported off `Y`.
    pub fn lift(
        &self,
        x: &Arc<SimplicialComplex>,
        degree: i64,
        coords: &[BigInt],
    ) -> SimplicialChain {
        let mut out = SimplicialChain::zero(x, degree);
        if degree >= 0 {
            if let Some(basis) = self.basis.get(degree as usize) {
                for (&i, c) in basis.iter().zip(coords) {
                    out.add_at(i, c);
                }
            }
        }
        out
    }
}

pub fn relative_chain_complex(
    x: &Arc<SimplicialComplex>,
    y: &Subcomplex,
) -> Result<RelativeChains> {
    y.check_parent(x)?;
    let top = x.dim().map_or(0, |d| d + 1);
    let basis: Vec<Vec<usize>> = (0..top)
        .map(|m| {
            (0..x.count(m))
                .filter(|&i| !y.contains_index(m, i))
                .collect()
        })
        .collect();
    let ranks = basis.iter().map(Vec::len).collect();
    let boundaries = (1..top)
        .map(|m| {
            boundary_matrix(x, m)
                .select_rows(&basis[m - 1])
                .select_columns(&basis[m])
        })
        .collect();
    let complex = ChainComplex::chain(ranks, boundaries)?;
    let absolute = chain_complex_of(x);
    let mut q = BTreeMap::new();
    for (m, kept) in basis.iter().enumerate().take(top) {
        let mut mat = IntMatrix::zeros(kept.len(), x.count(m));
        for (k, &i) in kept.iter().enumerate() {
            mat[(k, i)] = BigInt::one();
        }
        q.insert(-(m as i64), mat);
    }
    let quotient = ChainMap::new(absolute.clone(), complex.clone(), 0, 1, q)?;

    let (yc, embedding) = y.to_complex();
    let sub_chains = chain_complex_of(&yc);
    let mut inc = BTreeMap::new();
    for (m, emb) in embedding.iter().enumerate() {
        let mut mat = IntMatrix::zeros(x.count(m), emb.len());
        for (k, &i) in emb.iter().enumerate() {
            mat[(i, k)] = BigInt::one();
        }
        inc.insert(-(m as i64), mat);
    }
    let inclusion = ChainMap::new(sub_chains, absolute, 0, 1, inc)?;
    Ok(RelativeChains {
        complex,
        basis,
        quotient,
        sub: y.clone(),
        sub_complex: Arc::new(yc),
        inclusion,
    })
}

/// `C^*(X, A)`: cochains vanishing on `A`, the dual of `C_*(X)/C_*(A)`.
/// Returns the complex and, per degree, the indices in `X` of its basis.
pub fn relative_cochain_complex(
    x: &Arc<SimplicialComplex>,
    a: &Subcomplex,
) -> Result<(ChainComplex, Vec<Vec<usize>>)> {
    let rel = relative_chain_complex(x, a)?;
    Ok((dual_hom_z(&rel.complex), rel.basis))
}

/// Restricts an absolute map `C_*(X) -> C_*(X')` that carries `C_*(Y)` into
/// `C_*(Y')` to the quotients.
pub fn relative_map(
    f: &ChainMap,
    source: &RelativeChains,
    target: &RelativeChains,
) -> Result<ChainMap> {
    let mut matrices = BTreeMap::new();
    for (m, (sb, tb)) in source.basis.iter().zip(&target.basis).enumerate() {
        let n = -(m as i64);
        let full = f.at_c(n);
        // the discarded columns must land in Y'
        let kept_cols: HashSet<usize> = sb.iter().copied().collect();
        for j in (0..full.cols()).filter(|j| !kept_cols.contains(j)) {
            if tb.iter().any(|&i| !full[(i, j)].is_zero()) {
                return Err(Error::Validation(
                    "map does not carry the subcomplex into the target subcomplex".into(),
                ));
            }
        }
        matrices.insert(n, full.select_rows(tb).select_columns(sb));
    }
    ChainMap::new(
        source.complex.clone(),
        target.complex.clone(),
        0,
        1,
        matrices,
    )
}

fn subdivided_chains(sd: &SubdivisionResult) -> Vec<Vec<BTreeMap<usize, BigInt>>> {
    let x = &sd.parent;
    let y = &sd.complex;
    let mut images: Vec<Vec<BTreeMap<usize, BigInt>>> = Vec::new();
    for m in 0..x.dim().map_or(0, |d| d + 1) {
        let mut level = Vec::with_capacity(x.count(m));
        for (i, s) in x.simplices(m).iter().enumerate() {
            let b = sd.barycenter_of[m][i];
            let mut image = BTreeMap::new();
            if m == 0 {
                image.insert(b as usize, BigInt::one());
            } else {
                // b · sd(∂σ): b is the largest vertex of every flag through σ,
                // so moving it from the front to the back costs (-1)^m
                for k in 0..=m {
                    let f = x.index_of(&s.face(k)).expect("face-closed");
                    let face_sign = sign_of((k + m) % 2 == 1);
                    for (&t, c) in &images[m - 1][f] {
                        let mut verts = y.simplex(m - 1, t).vertices().to_vec();
                        verts.push(b);
                        let idx = y.index_of(&Simplex::new(verts)).expect("flag in sd");
                        let e: &mut BigInt = image.entry(idx).or_default();
                        *e += c * &face_sign;
                    }
                }
                image.retain(|_, c: &mut BigInt| !c.is_zero());
            }
            level.push(image);
        }
        images.push(level);
    }
    images
}

/// `sd_#: C_*(X) -> C_*(sd X)`, the barycentric cone recursion.
pub fn subdivision_chain_map(sd: &SubdivisionResult) -> ChainMap {
    let images = subdivided_chains(sd);
    let mut matrices = BTreeMap::new();
    for (m, level) in images.iter().enumerate() {
        let mut mat = IntMatrix::zeros(sd.complex.count(m), level.len());
        for (j, image) in level.iter().enumerate() {
            for (&i, c) in image {
                mat[(i, j)] = c.clone();
            }
        }
        matrices.insert(-(m as i64), mat);
    }
    ChainMap::new(
        chain_complex_of(&sd.parent),
        chain_complex_of(&sd.complex),
        0,
        1,
        matrices,
    )
    .expect("subdivision is a chain map")
}

/// Image of one sd-simplex under the last-vertex map, with orientation sign;
/// `None` when it degenerates.
fn last_vertex_image(sd: &SubdivisionResult, pi: &[u32], s: &Simplex) -> Option<(usize, i8)> {
    let image: Vec<u32> = s.vertices().iter().map(|&v| pi[v as usize]).collect();
    let (t, sign) = Simplex::from_ordered(image)?;
    Some((
        sd.parent
            .index_of(&t)
            .expect("last-vertex map is simplicial"),
        sign,
    ))
}

/// `π_#: C_*(sd X) -> C_*(X)`.
pub fn last_vertex_chain_map(sd: &SubdivisionResult) -> ChainMap {
    let pi = sd.last_vertex_approximation();
    let mut matrices = BTreeMap::new();
    for m in 0..sd.complex.dim().map_or(0, |d| d + 1) {
        let mut mat = IntMatrix::zeros(sd.parent.count(m), sd.complex.count(m));
        for (j, s) in sd.complex.simplices(m).iter().enumerate() {
            if let Some((i, sign)) = last_vertex_image(sd, &pi, s) {
                mat[(i, j)] = BigInt::from(sign);
            }
        }
        matrices.insert(-(m as i64), mat);
    }
    ChainMap::new(
        chain_complex_of(&sd.complex),
        chain_complex_of(&sd.parent),
        0,
        1,
        matrices,
    )
    .expect("last-vertex map is a chain map")
}

/// `sd_#` applied to one chain.
pub fn subdivide_chain(sd: &SubdivisionResult, alpha: &SimplicialChain) -> Result<SimplicialChain> {
    if !same_complex(alpha.complex(), &sd.parent) {
        return Err(Error::Validation(
            "chain is not on the subdivided complex".into(),
        ));
    }
    let m = alpha.degree();
    let f = subdivision_chain_map(sd);
    let image = f.at_c(-m).mul_vec(&alpha.to_vector());
    SimplicialChain::from_vector(&sd.complex, m, &image)
}

/// `π^# u = u ∘ π_#`.
pub fn cochain_pullback(
    sd: &SubdivisionResult,
    u: &SimplicialCochain,
) -> Result<SimplicialCochain> {
    if !same_complex(u.complex(), &sd.parent) {
        return Err(Error::Validation(
            "cochain is not on the subdivided complex".into(),
        ));
    }
    let pi = sd.last_vertex_approximation();
    let p = u.degree();
    let mut out = SimplicialCochain::zero(&sd.complex, p);
    if p < 0 {
        return Ok(out);
    }
    for (j, s) in sd.complex.simplices(p as usize).iter().enumerate() {
        if let Some((i, sign)) = last_vertex_image(sd, &pi, s) {
            if let Some(v) = u.get_index(i) {
                out.add_at(j, &(v * BigInt::from(sign)));
            }
        }
    }
    Ok(out)
}

/// `⟨ξ(α), u⟩ = (-1)^m u(α)`.
pub fn xi_pairing(alpha: &SimplicialChain, u: &SimplicialCochain) -> Result<BigInt> {
    if alpha.degree() != u.degree() {
        return Err(Error::Validation(format!(
            "ξ pairs a {}-chain with a {}-cochain",
            alpha.degree(),
            u.degree()
        )));
    }
    Ok(u.evaluate(alpha)? * sign_of(alpha.degree() % 2 != 0))
}

/// An element of `D(C^*(X))^{-m} = Hom(C^m(X), Z)`, stored by its values on
/// the indicator cochains of the `m`-simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functional {
    pub complex: Arc<SimplicialComplex>,
    /// Cohomological degree `-m` in the dual complex.
    pub degree: i64,
    pub values: Vec<BigInt>,
}

impl Functional {
    pub fn zero(complex: &Arc<SimplicialComplex>, degree: i64) -> Self {
        Self {
            complex: complex.clone(),
            degree,
            values: vec![BigInt::zero(); rank(complex, -degree)],
        }
    }

    pub fn apply(&self, v: &SimplicialCochain) -> Result<BigInt> {
        if v.degree() != -self.degree {
            return Ok(BigInt::zero());
        }
        if !same_complex(v.complex(), &self.complex) {
            return Err(Error::Validation(
                "functional and cochain on different complexes".into(),
            ));
        }
        Ok(v.iter_indexed().map(|(i, c)| c * &self.values[i]).sum())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }
}

/// `ξ(α)` as a functional on cochains.
pub fn xi(alpha: &SimplicialChain) -> Functional {
    let s = sign_of(alpha.degree() % 2 != 0);
    Functional {
        complex: alpha.complex().clone(),
        degree: -alpha.degree(),
        values: alpha.to_vector().into_iter().map(|c| c * &s).collect(),
    }
}

/// `ξ: C_*(X) -> D(C^*(X))` as a chain map.
pub fn xi_map(x: &SimplicialComplex) -> ChainMap {
    let source = chain_complex_of(x);
    let target = dual_hom_z(&cochain_complex(x));
    let mut matrices = BTreeMap::new();
    for m in 0..x.dim().map_or(0, |d| d + 1) {
        matrices.insert(
            -(m as i64),
            IntMatrix::identity(x.count(m)).signed(m % 2 == 1),
        );
    }
    ChainMap::new(source, target, 0, 1, matrices).expect("ξ is a chain map")
}
