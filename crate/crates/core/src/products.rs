//! Cup and cap products and the cap product supported on a subcomplex.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{induced_map_on_homology, AbelianGroup, ChainMap, IntMatrix};
use crate::bridge::{
    chain_complex_of, cochain_pullback, relative_chain_complex, relative_map, subdivide_chain,
    Functional, SimplicialChain, SimplicialCochain,
};
use crate::complex::{
    barycentric_subdivide, closed_star, nonmeeting_complement, same_complex, SimplicialComplex,
    Subcomplex,
};
use crate::error::{Error, Result};

fn check_same(a: &Arc<SimplicialComplex>, b: &Arc<SimplicialComplex>, what: &str) -> Result<()> {
    if same_complex(a, b) {
        Ok(())
    } else {
        Err(Error::Validation(format!(
            "{what} live on different complexes"
        )))
    }
}

/// `(u ∪ v)[v_0..v_{p+q}] = u[v_0..v_p] · v[v_p..v_{p+q}]`.
pub fn cup(u: &SimplicialCochain, v: &SimplicialCochain) -> Result<SimplicialCochain> {
    check_same(u.complex(), v.complex(), "cochains")?;
    let x = u.complex();
    let (p, q) = (u.degree(), v.degree());
    let mut out = SimplicialCochain::zero(x, p + q);
    if p < 0 || q < 0 || u.is_zero() || v.is_zero() {
        return Ok(out);
    }
    let (p, q) = (p as usize, q as usize);
    for (i, s) in x.simplices(p + q).iter().enumerate() {
        let a = u.get(&s.front(p));
        if a.is_zero() {
            continue;
        }
        let b = v.get(&s.back(q));
        out.add_at(i, &(a * b));
    }
    Ok(out)
}

/// `σ ∩ u = u(front_p σ) · back_{m-p} σ`, extended linearly.
pub fn cap(alpha: &SimplicialChain, u: &SimplicialCochain) -> Result<SimplicialChain> {
    check_same(alpha.complex(), u.complex(), "chain and cochain")?;
    let (m, p) = (alpha.degree(), u.degree());
    if p > m {
        return Err(Error::Validation(format!(
            "cannot cap a {m}-chain with a {p}-cochain"
        )));
    }
    let x = alpha.complex();
    let mut out = SimplicialChain::zero(x, m - p);
    if p < 0 {
        return Ok(out);
    }
    let p = p as usize;
    let q = (m as usize) - p;
    for (s, c) in alpha.iter() {
        let a = u.get(&s.front(p));
        if a.is_zero() {
            continue;
        }
        let back = x.index_of(&s.back(q)).expect("face-closed");
        out.add_at(back, &(a * c));
    }
    Ok(out)
}

/// `⟨f ∩ u, v⟩ = (-1)^{|f||u|} ⟨f, v ∪ u⟩` for `f ∈ D(C^*(X))^{-m}`.
pub fn dual_cap(f: &Functional, u: &SimplicialCochain) -> Result<Functional> {
    check_same(&f.complex, u.complex(), "functional and cochain")?;
    let (m, p) = (-f.degree, u.degree());
    if p > m || p < 0 {
        return Err(Error::Validation(format!(
            "cannot cap a functional of degree {} with a {p}-cochain",
            f.degree
        )));
    }
    let x = &f.complex;
    let mut out = Functional::zero(x, f.degree + p);
    let sign = if (f.degree * p) % 2 != 0 {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let (p, k) = (p as usize, (m - p) as usize);
    for (j, s) in x.simplices(m as usize).iter().enumerate() {
        if f.values[j].is_zero() {
            continue;
        }
        let w = u.get(&s.back(p));
        if w.is_zero() {
            continue;
        }
        let front = x.index_of(&s.front(k)).expect("face-closed");
        out.values[front] += &f.values[j] * w * &sign;
    }
    Ok(out)
}

/// A homology class in explicit generator coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyClass {
    pub degree: i64,
    pub group: AbelianGroup,
    pub coords: Vec<BigInt>,
    /// Rendered name of the space, e.g. `Z` or `Z, Z∩Y`.
    pub space: String,
}

impl HomologyClass {
    pub fn is_zero(&self) -> bool {
        self.group.is_zero_element(&self.coords)
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{c}·g{i}"))
            .collect();
        let value = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        };
        write!(
            f,
            "{value} in H_{}({}) = {}",
            self.degree,
            self.space,
            self.group.compact()
        )
    }
}

/// Outcome of the supported cap product.
#[derive(Clone, Debug)]
pub struct SupportedCapResult {
    /// The complex the computation ran on, after any presubdivision.
    pub complex: Arc<SimplicialComplex>,
    pub support: Subcomplex,
    pub boundary: Subcomplex,
    /// `N`, the closed star of the support.
    pub star: Subcomplex,
    /// `N'`, the closed star of `Y ∩ Z` inside `Y`.
    pub star_boundary: Subcomplex,
    /// `α ∩ u`, supported on `N`.
    pub chain_image: SimplicialChain,
    pub class_in_star: HomologyClass,
    /// Preimage of `class_in_star` under `H(Z, Z∩Y) -> H(N, N')`.
    pub class_in_z: Option<HomologyClass>,
    /// A chain on `Z` representing `class_in_z`.
    pub z_representative: Option<SimplicialChain>,
    /// Whether the inclusion induced an isomorphism in the relevant degree.
    pub inclusion_is_iso: bool,
}

impl SupportedCapResult {
    pub fn class(&self) -> Result<&HomologyClass> {
        self.class_in_z.as_ref().ok_or_else(|| {
            Error::RetractFailed(format!(
                "inclusion of the support into its closed star is not an isomorphism on H_{}",
                self.class_in_star.degree
            ))
        })
    }
}

/// Re-expresses a chain on a complex whose simplices, read as token tuples,
/// all occur in `target`.
pub(crate) fn transfer_chain(
    alpha: &SimplicialChain,
    target: &Arc<SimplicialComplex>,
) -> Result<SimplicialChain> {
    let source = alpha.complex();
    let mut entries = Vec::new();
    for (s, c) in alpha.iter() {
        entries.push((source.labels(s), c.clone()));
    }
    SimplicialChain::from_labels(target, alpha.degree(), entries)
}

/// `sub`, a subcomplex of some complex, as a subcomplex of `target`.
fn transfer_subcomplex(sub: &Subcomplex, target: &Arc<SimplicialComplex>) -> Result<Subcomplex> {
    let parent = sub.parent();
    let mut tuples = Vec::new();
    for d in 0..=parent.dim().unwrap_or(0) {
        for s in sub.simplices(d) {
            tuples.push(parent.labels(s));
        }
    }
    Subcomplex::from_labels(target, &tuples)
}

/// Absolute chain map induced by inclusion of `small` into `large`, both
/// standalone complexes whose simplices are token-compatible.
fn inclusion_map(
    small: &Arc<SimplicialComplex>,
    large: &Arc<SimplicialComplex>,
) -> Result<ChainMap> {
    let mut matrices = BTreeMap::new();
    for m in 0..small.dim().map_or(0, |d| d + 1) {
        let mut mat = IntMatrix::zeros(large.count(m), small.count(m));
        for (j, s) in small.simplices(m).iter().enumerate() {
            let t = large.simplex_from_labels(&small.labels(s))?;
            mat[(large.index_of(&t).expect("looked up"), j)] = BigInt::one();
        }
        matrices.insert(-(m as i64), mat);
    }
    ChainMap::new(
        chain_complex_of(small),
        chain_complex_of(large),
        0,
        1,
        matrices,
    )
}

/// The closure of the simplices of `y` having a vertex in `y ∩ z`.
pub fn boundary_star(
    x: &Arc<SimplicialComplex>,
    y: &Subcomplex,
    z: &Subcomplex,
) -> Result<Subcomplex> {
    let yz = y.intersection(z)?;
    let mut meeting = Vec::new();
    for d in 0..=x.dim().unwrap_or(0) {
        for s in y.simplices(d) {
            if s.vertices().iter().any(|&v| yz.contains_vertex(v)) {
                meeting.push(s.clone());
            }
        }
    }
    Subcomplex::closure_of(x, &meeting)
}

struct CapInput<'a> {
    x: &'a Arc<SimplicialComplex>,
    y: &'a Subcomplex,
    z: &'a Subcomplex,
    u: &'a SimplicialCochain,
    alpha: &'a SimplicialChain,
    /// Restrict `α` to the closed star before capping; `α` need not be a
    /// cycle, only `α ∩ u`.
    localize: bool,
}

fn validate(input: &CapInput<'_>) -> Result<()> {
    let CapInput {
        x,
        y,
        z,
        u,
        alpha,
        localize,
    } = input;
    y.check_parent(x)?;
    z.check_parent(x)?;
    check_same(u.complex(), x, "cochain and complex")?;
    check_same(alpha.complex(), x, "chain and complex")?;
    let (m, p) = (alpha.degree(), u.degree());
    if p < 0 || m < 0 || p > m {
        return Err(Error::Validation(format!(
            "cannot cap a {m}-chain with a {p}-cochain"
        )));
    }
    if !u.coboundary().is_zero() {
        return Err(Error::Precondition(
            "cochain is not a cocycle (du != 0)".into(),
        ));
    }
    if !localize && !alpha.boundary().is_supported_on(y) {
        return Err(Error::Precondition(if y.is_empty() {
            "chain is not a cycle".into()
        } else {
            "chain is not a relative cycle (boundary leaves Y)".into()
        }));
    }
    Ok(())
}

fn check_vanishing(
    x: &Arc<SimplicialComplex>,
    z: &Subcomplex,
    u: &SimplicialCochain,
    after: bool,
) -> Result<()> {
    let nc = nonmeeting_complement(x, z)?;
    if u.vanishes_on(&nc) {
        Ok(())
    } else if after {
        Err(Error::Precondition(
            "transported cochain does not vanish on N^c of the subdivided complex".into(),
        ))
    } else {
        Err(Error::Precondition(
            "cochain does not vanish on N^c (simplices not meeting the support)".into(),
        ))
    }
}

fn run(input: CapInput<'_>, presubdivide: usize, strict: bool) -> Result<SupportedCapResult> {
    validate(&input)?;
    check_vanishing(input.x, input.z, input.u, false)?;
    let mut x = input.x.clone();
    let mut y = input.y.clone();
    let mut z = input.z.clone();
    let mut u = input.u.clone();
    let mut alpha = input.alpha.clone();
    for _ in 0..presubdivide {
        let sd = barycentric_subdivide(&x)?;
        u = cochain_pullback(&sd, &u)?;
        alpha = subdivide_chain(&sd, &alpha)?;
        y = sd.subdivide_subcomplex(&y)?;
        z = sd.subdivide_subcomplex(&z)?;
        x = sd.complex.clone();
    }
    if presubdivide > 0 {
        check_vanishing(&x, &z, &u, true)?;
    }
    let relative = !y.is_empty();
    let star = closed_star(&x, &z)?;
    let star_boundary = boundary_star(&x, &y, &z)?;
    if input.localize {
        alpha = restrict_chain(&alpha, &star);
    }
    let image = cap(&alpha, &u)?;
    if !image.is_supported_on(&star) {
        return Err(Error::Internal("cap product leaves the closed star".into()));
    }
    let k = image.degree();

    let n_complex = Arc::new(star.to_complex().0);
    let n_sub = transfer_subcomplex(&star_boundary, &n_complex)?;
    let z_complex = Arc::new(z.to_complex().0);
    let zy = z.intersection(&y)?;
    let z_sub = transfer_subcomplex(&zy, &z_complex)?;
    let rel_n = relative_chain_complex(&n_complex, &n_sub)?;
    let rel_z = relative_chain_complex(&z_complex, &z_sub)?;
    let inclusion = relative_map(&inclusion_map(&z_complex, &n_complex)?, &rel_z, &rel_n)?;
    let induced = induced_map_on_homology(&inclusion, k)?;

    let on_n = transfer_chain(&image, &n_complex)?;
    let coords = induced
        .target
        .class_of(&rel_n.project(&on_n))
        .map_err(|_| {
            Error::Internal("cap of a relative cycle is not a relative cycle of (N, N')".into())
        })?;
    let (z_name, n_name) = if relative {
        ("Z, Z∩Y", "N, N'")
    } else {
        ("Z", "N")
    };
    let class_in_star = HomologyClass {
        degree: k,
        group: induced.target.group.clone(),
        coords: coords.clone(),
        space: n_name.into(),
    };
    let inclusion_is_iso = induced.hom.is_isomorphism();
    let (class_in_z, z_representative) = if inclusion_is_iso {
        let pre = induced
            .hom
            .preimage(&coords)
            .ok_or_else(|| Error::Internal("isomorphism failed to invert a class".into()))?;
        let mut pre = pre;
        induced.source.group.reduce(&mut pre);
        let rep = induced.source.representative(&pre);
        let chain = transfer_chain(&rel_z.lift(&z_complex, k, &rep), &x)?;
        (
            Some(HomologyClass {
                degree: k,
                group: induced.source.group.clone(),
                coords: pre,
                space: z_name.into(),
            }),
            Some(chain),
        )
    } else {
        (None, None)
    };
    let result = SupportedCapResult {
        complex: x,
        support: z,
        boundary: y,
        star,
        star_boundary,
        chain_image: image,
        class_in_star,
        class_in_z,
        z_representative,
        inclusion_is_iso,
    };
    if strict {
        result.class()?;
    }
    Ok(result)
}

fn restrict_chain(alpha: &SimplicialChain, sub: &Subcomplex) -> SimplicialChain {
    let entries: Vec<_> = alpha
        .iter()
        .filter(|(s, _)| sub.contains(s))
        .map(|(s, c)| (s.clone(), c.clone()))
        .collect();
    SimplicialChain::from_entries(alpha.complex(), alpha.degree(), entries).expect("restriction")
}

/// The absolute supported cap of `α` restricted to the closed star of `Z`.
/// Only the simplices meeting `Z` contribute to `α ∩ u`, so when `Z` avoids
/// `Y` this localizes a relative computation to chains away from `Y`.
pub(crate) fn localized_supported_cap(
    x: &Arc<SimplicialComplex>,
    z: &Subcomplex,
    u: &SimplicialCochain,
    alpha: &SimplicialChain,
    presubdivide: usize,
) -> Result<SupportedCapResult> {
    let y = Subcomplex::empty(x);
    run(
        CapInput {
            x,
            y: &y,
            z,
            u,
            alpha,
            localize: true,
        },
        presubdivide,
        false,
    )
}

/// `α ∩ u` for a cycle `α` and a cocycle `u` vanishing on `N^c`, with its
/// class pulled back to `H_{m-p}(Z)`. Fails with [`Error::RetractFailed`]
/// when `H(Z) -> H(N)` is not an isomorphism in that degree.
pub fn supported_cap(
    x: &Arc<SimplicialComplex>,
    z: &Subcomplex,
    u: &SimplicialCochain,
    alpha: &SimplicialChain,
    presubdivide: usize,
) -> Result<SupportedCapResult> {
    let y = Subcomplex::empty(x);
    run(
        CapInput {
            x,
            y: &y,
            z,
            u,
            alpha,
            localize: false,
        },
        presubdivide,
        true,
    )
}

/// As [`supported_cap`], but a non-invertible inclusion is reported in the
/// result instead of failing.
pub fn supported_cap_report(
    x: &Arc<SimplicialComplex>,
    z: &Subcomplex,
    u: &SimplicialCochain,
    alpha: &SimplicialChain,
    presubdivide: usize,
) -> Result<SupportedCapResult> {
    let y = Subcomplex::empty(x);
    run(
        CapInput {
            x,
            y: &y,
            z,
            u,
            alpha,
            localize: false,
        },
        presubdivide,
        false,
    )
}

/// The supported cap of a relative cycle of `(X, Y)`, landing in
/// `H(N, N')` and pulled back to `H(Z, Z∩Y)`.
pub fn relative_supported_cap(
    x: &Arc<SimplicialComplex>,
    y: &Subcomplex,
    z: &Subcomplex,
    u: &SimplicialCochain,
    alpha: &SimplicialChain,
    presubdivide: usize,
) -> Result<SupportedCapResult> {
    run(
        CapInput {
            x,
            y,
            z,
            u,
            alpha,
            localize: false,
        },
        presubdivide,
        true,
    )
}

/// As [`relative_supported_cap`] without failing on a non-invertible
/// inclusion.
pub fn relative_supported_cap_report(
    x: &Arc<SimplicialComplex>,
    y: &Subcomplex,
    z: &Subcomplex,
    u: &SimplicialCochain,
    alpha: &SimplicialChain,
    presubdivide: usize,
) -> Result<SupportedCapResult> {
    run(
        CapInput {
            x,
            y,
            z,
            u,
            alpha,
            localize: false,
        },
        presubdivide,
        false,
    )
}
