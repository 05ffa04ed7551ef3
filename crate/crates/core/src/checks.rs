//! Seeded randomized verification of the product identities, the duality
//! maps and the invariance statements on a given complex.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    cone_dual_iso, dual_hom_z, homology, induced_map_on_homology, is_quasi_isomorphism, uct_check,
    ChainComplex, HomologyGroup, IntMatrix,
};
use crate::bm::{pair_long_exact_sequence, subdivision_invariance_check, OpenSpaceModel};
use crate::bridge::{
    chain_complex_of, cochain_complex, last_vertex_chain_map, relative_cochain_complex,
    subdivision_chain_map, xi, SimplicialChain, SimplicialCochain,
};
use crate::complex::{
    barycentric_subdivide, closed_star, nonmeeting_complement, SimplicialComplex, Subcomplex,
};
use crate::error::{Error, Result};
use crate::fixtures::manifold_boundary;
use crate::products::{cap, cup, dual_cap, supported_cap, transfer_chain};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn pass(name: &str, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: true,
            detail: detail.into(),
        }
    }

    fn fail(name: &str, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: false,
            detail: detail.into(),
        }
    }

    fn from_result(name: &str, r: Result<String>) -> Self {
        match r {
            Ok(detail) => Self::pass(name, detail),
            Err(e) => Self::fail(name, e.to_string()),
        }
    }
}

fn sign(odd: bool) -> BigInt {
    if odd {
        -BigInt::one()
    } else {
        BigInt::one()
    }
}

fn top_dim(x: &SimplicialComplex) -> Option<i64> {
    x.dim().map(|d| d as i64)
}

fn random_values(rng: &mut ChaCha8Rng, n: usize) -> Vec<BigInt> {
    (0..n)
        .map(|_| {
            if rng.gen_bool(0.5) {
                BigInt::from(rng.gen_range(-3i64..=3))
            } else {
                BigInt::zero()
            }
        })
        .collect()
}

pub fn random_chain(rng: &mut ChaCha8Rng, x: &Arc<SimplicialComplex>, m: i64) -> SimplicialChain {
    let n = if m < 0 { 0 } else { x.count(m as usize) };
    SimplicialChain::from_vector(x, m, &random_values(rng, n)).expect("sized")
}

pub fn random_cochain(
    rng: &mut ChaCha8Rng,
    x: &Arc<SimplicialComplex>,
    p: i64,
) -> SimplicialCochain {
    let n = if p < 0 { 0 } else { x.count(p as usize) };
    SimplicialCochain::from_vector(x, p, &random_values(rng, n)).expect("sized")
}

fn combination(rng: &mut ChaCha8Rng, h: &HomologyGroup) -> Vec<BigInt> {
    let class: Vec<BigInt> = (0..h.group.generator_count())
        .map(|_| BigInt::from(rng.gen_range(-2i64..=2)))
        .collect();
    h.representative(&class)
}

/// Caches homology of the chain and cochain complexes of one complex.
struct Context {
    x: Arc<SimplicialComplex>,
    chains: ChainComplex,
    cochains: ChainComplex,
    dual: ChainComplex,
    chain_h: HashMap<i64, HomologyGroup>,
    cochain_h: HashMap<i64, HomologyGroup>,
    dual_h: HashMap<i64, HomologyGroup>,
}

impl Context {
    fn new(x: &Arc<SimplicialComplex>) -> Self {
        let cochains = cochain_complex(x);
        Self {
            x: x.clone(),
            chains: chain_complex_of(x),
            dual: dual_hom_z(&cochains),
            cochains,
            chain_h: HashMap::new(),
            cochain_h: HashMap::new(),
            dual_h: HashMap::new(),
        }
    }

    fn chain_homology(&mut self, m: i64) -> &HomologyGroup {
        let c = &self.chains;
        self.chain_h.entry(m).or_insert_with(|| homology(c, m))
    }

    fn cochain_homology(&mut self, p: i64) -> &HomologyGroup {
        let c = &self.cochains;
        self.cochain_h.entry(p).or_insert_with(|| homology(c, p))
    }

    fn dual_homology(&mut self, n: i64) -> &HomologyGroup {
        let c = &self.dual;
        self.dual_h.entry(n).or_insert_with(|| homology(c, n))
    }

    /// A random cycle: random multiples of homology generators plus a boundary.
    fn random_cycle(&mut self, rng: &mut ChaCha8Rng, m: i64) -> SimplicialChain {
        let x = self.x.clone();
        let base = combination(rng, self.chain_homology(m));
        let z = SimplicialChain::from_vector(&x, m, &base).expect("sized");
        let b = random_chain(rng, &x, m + 1).boundary();
        z.add(&b).expect("same degree")
    }

    /// A random cocycle: random multiples of cohomology generators plus a
    /// coboundary.
    fn random_cocycle(&mut self, rng: &mut ChaCha8Rng, p: i64) -> SimplicialCochain {
        let x = self.x.clone();
        let base = combination(rng, self.cochain_homology(p));
        let z = SimplicialCochain::from_vector(&x, p, &base).expect("sized");
        let b = random_cochain(rng, &x, p - 1).coboundary();
        z.add(&b).expect("same degree")
    }
}

/// `d ∘ d = 0` for every differential of `k`.
pub fn square_zero(k: &ChainComplex) -> CheckResult {
    const NAME: &str = "d∘d=0";
    match k.verify_square_zero() {
        Ok(()) => CheckResult::pass(NAME, "all degrees"),
        Err(e) => CheckResult::fail(NAME, e.to_string()),
    }
}

fn trial_loop(
    name: &str,
    trials: usize,
    mut body: impl FnMut(usize) -> Result<Option<String>>,
) -> CheckResult {
    for t in 0..trials {
        match body(t) {
            Ok(None) => {}
            Ok(Some(msg)) => return CheckResult::fail(name, format!("trial {t}: {msg}")),
            Err(e) => return CheckResult::fail(name, format!("trial {t}: {e}")),
        }
    }
    CheckResult::pass(name, format!("{trials} trials"))
}

fn vacuous(name: &str) -> CheckResult {
    CheckResult::pass(name, "vacuous (empty complex)")
}

/// `⟨du, α⟩ = (-1)^{p+1} ⟨u, ∂α⟩`.
pub fn pairing_identity(
    x: &Arc<SimplicialComplex>,
    trials: usize,
    rng: &mut ChaCha8Rng,
) -> CheckResult {
    const NAME: &str = "pairing ⟨du,α⟩=(-1)^(p+1)⟨u,∂α⟩";
    let Some(top) = top_dim(x) else {
        return vacuous(NAME);
    };
    trial_loop(NAME, trials, |_| {
        let p = rng.gen_range(0..top.max(1));
        let u = random_cochain(rng, x, p);
        let a = random_chain(rng, x, p + 1);
        let lhs = u.coboundary().evaluate(&a)?;
        let rhs = sign((p + 1) % 2 == 1) * u.evaluate(&a.boundary())?;
        Ok((lhs != rhs).then(|| format!("p={p}: {lhs} != {rhs}")))
    })
}

/// `d(u ∪ v) = (-1)^q (du) ∪ v + u ∪ dv`.
pub fn leibniz(x: &Arc<SimplicialComplex>, trials: usize, rng: &mut ChaCha8Rng) -> CheckResult {
    const NAME: &str = "Leibniz d(u∪v)=(-1)^q du∪v+u∪dv";
    let Some(top) = top_dim(x) else {
        return vacuous(NAME);
    };
    trial_loop(NAME, trials, |_| {
        let p = rng.gen_range(0..=top);
        let q = rng.gen_range(0..=top - p);
        let u = random_cochain(rng, x, p);
        let v = random_cochain(rng, x, q);
        let lhs = cup(&u, &v)?.coboundary();
        let rhs = cup(&u.coboundary(), &v)?
            .scale(&sign(q % 2 == 1))
            .add(&cup(&u, &v.coboundary())?)?;
        Ok((lhs != rhs).then(|| format!("p={p} q={q}: {} != {}", lhs.render(), rhs.render())))
    })
}

fn cap_or_zero(a: &SimplicialChain, u: &SimplicialCochain) -> Result<SimplicialChain> {
    if u.degree() > a.degree() {
        Ok(SimplicialChain::zero(a.complex(), a.degree() - u.degree()))
    } else {
        cap(a, u)
    }
}

/// `∂(α ∩ u) = (-1)^p (∂α) ∩ u + α ∩ du`.
pub fn boundary_cap(
    x: &Arc<SimplicialComplex>,
    trials: usize,
    rng: &mut ChaCha8Rng,
) -> CheckResult {
    const NAME: &str = "boundary-cap ∂(α∩u)=(-1)^p ∂α∩u+α∩du";
    let Some(top) = top_dim(x) else {
        return vacuous(NAME);
    };
    trial_loop(NAME, trials, |_| {
        let m = rng.gen_range(0..=top);
        let p = rng.gen_range(0..=m);
        let a = random_chain(rng, x, m);
        let u = random_cochain(rng, x, p);
        let lhs = cap(&a, &u)?.boundary();
        let rhs = cap_or_zero(&a.boundary(), &u)?
            .scale(&sign(p % 2 == 1))
            .add(&cap_or_zero(&a, &u.coboundary())?)?;
        Ok((lhs != rhs).then(|| format!("m={m} p={p}: {} != {}", lhs.render(), rhs.render())))
    })
}

/// `v(α ∩ u) = (u ∪ v)(α)`.
pub fn adjunction(x: &Arc<SimplicialComplex>, trials: usize, rng: &mut ChaCha8Rng) -> CheckResult {
    const NAME: &str = "adjunction v(α∩u)=(u∪v)(α)";
    let Some(top) = top_dim(x) else {
        return vacuous(NAME);
    };
    trial_loop(NAME, trials, |_| {
        let p = rng.gen_range(0..=top);
        let q = rng.gen_range(0..=top - p);
        let u = random_cochain(rng, x, p);
        let v = random_cochain(rng, x, q);
        let a = random_chain(rng, x, p + q);
        let lhs = v.evaluate(&cap(&a, &u)?)?;
        let rhs = cup(&u, &v)?.evaluate(&a)?;
        Ok((lhs != rhs).then(|| format!("p={p} q={q}: {lhs} != {rhs}")))
    })
}

/// `(u ∪ v) ∪ w = u ∪ (v ∪ w)`.
pub fn cup_associativity(
    x: &Arc<SimplicialComplex>,
    trials: usize,
    rng: &mut ChaCha8Rng,
) -> CheckResult {
    const NAME: &str = "cup associativity";
    let Some(top) = top_dim(x) else {
        return vacuous(NAME);
    };
    trial_loop(NAME, trials, |_| {
        let p = rng.gen_range(0..=top);
        let q = rng.gen_range(0..=top - p);
        let r = rng.gen_range(0..=top - p - q);
        let u = random_cochain(rng, x, p);
        let v = random_cochain(rng, x, q);
        let w = random_cochain(rng, x, r);
        let lhs = cup(&cup(&u, &v)?, &w)?;
        let rhs = cup(&u, &cup(&v, &w)?)?;
        Ok((lhs != rhs).then(|| format!("p={p} q={q} r={r}")))
    })
}

/// `[u ∪ v] = (-1)^{pq} [v ∪ u]` for cocycles.
pub fn graded_commutativity(
    x: &Arc<SimplicialComplex>,
    trials: usize,
    rng: &mut ChaCha8Rng,
) -> CheckResult {
    const NAME: &str = "graded commutativity on cohomology";
    let Some(top) = top_dim(x) else {
        return vacuous(NAME);
    };
    let mut ctx = Context::new(x);
    trial_loop(NAME, trials, |_| {
        let p = rng.gen_range(0..=top);
        let q = rng.gen_range(0..=top - p);
        let u = ctx.random_cocycle(rng, p);
        let v = ctx.random_cocycle(rng, q);
        let diff = cup(&u, &v)?.sub(&cup(&v, &u)?.scale(&sign(p * q % 2 == 1)))?;
        let h = ctx.cochain_homology(p + q);
        Ok((!h.is_boundary(&diff.to_vector())?).then(|| format!("p={p} q={q}: not a coboundary")))
    })
}

/// `⟨ξ(∂α), u⟩ = ⟨d ξ(α), u⟩` with the dual differential.
pub fn xi_chain_map(
    x: &Arc<SimplicialComplex>,
    trials: usize,
    rng: &mut ChaCha8Rng,
) -> CheckResult {
    const NAME: &str = "ξ is a chain map";
    let Some(top) = top_dim(x) else {
        return vacuous(NAME);
    };
    trial_loop(NAME, trials, |_| {
        let m = rng.gen_range(1..=top.max(1));
        let a = random_chain(rng, x, m);
        let u = random_cochain(rng, x, m - 1);
        let lhs = xi(&a.boundary()).apply(&u)?;
        // (df)(u) = (-1)^{|f|+1} f(du), |ξ(α)| = -m
        let rhs = sign((1 - m) % 2 != 0) * xi(&a).apply(&u.coboundary())?;
        Ok((lhs != rhs).then(|| format!("m={m}: {lhs} != {rhs}")))
    })
}

/// `[ξ(α ∩ u)] = [ξ(α) ∩ u]` in the homology of `D(C^*(X))`.
pub fn xi_compatibility(
    x: &Arc<SimplicialComplex>,
    trials: usize,
    rng: &mut ChaCha8Rng,
) -> CheckResult {
    const NAME: &str = "ξ-compatibility on homology";
    let Some(top) = top_dim(x) else {
        return vacuous(NAME);
    };
    let mut ctx = Context::new(x);
    trial_loop(NAME, trials, |_| {
        let m = rng.gen_range(0..=top);
        let p = rng.gen_range(0..=m);
        let a = ctx.random_cycle(rng, m);
        let u = ctx.random_cocycle(rng, p);
        let lhs = xi(&cap(&a, &u)?);
        let rhs = dual_cap(&xi(&a), &u)?;
        let h = ctx.dual_homology(p - m);
        let (cl, cr) = (h.class_of(&lhs.values)?, h.class_of(&rhs.values)?);
        Ok((cl != cr).then(|| format!("m={m} p={p}: {cl:?} != {cr:?}")))
    })
}

/// `sd_#` and `π_#` are quasi-isomorphisms and `π_# sd_#` is the identity on
/// homology.
pub fn subdivision_maps(x: &Arc<SimplicialComplex>) -> CheckResult {
    const NAME: &str = "subdivision maps are quasi-isomorphisms";
    let r = (|| -> Result<String> {
        let sd = barycentric_subdivide(x)?;
        let s = subdivision_chain_map(&sd);
        let p = last_vertex_chain_map(&sd);
        for (f, what) in [(&s, "sd_#"), (&p, "π_#")] {
            if !is_quasi_isomorphism(f)?.is_quasi_isomorphism() {
                return Err(Error::Internal(format!(
                    "{what} is not a quasi-isomorphism"
                )));
            }
        }
        let comp = p.compose(&s)?;
        for m in 0..=top_dim(x).unwrap_or(-1) {
            let ind = induced_map_on_homology(&comp, m)?;
            let n = ind.hom.source.generator_count();
            let id = crate::algebra::GroupHom::new(
                ind.hom.source.clone(),
                ind.hom.target.clone(),
                IntMatrix::identity(n),
            );
            if ind.hom.matrix != id.matrix {
                return Err(Error::Internal(format!(
                    "π_# sd_# is not the identity on H_{m}"
                )));
            }
        }
        Ok("sd_#, π_#, π_#∘sd_#".into())
    })();
    CheckResult::from_result(NAME, r)
}

pub fn uct(k: &ChainComplex) -> CheckResult {
    const NAME: &str = "universal coefficients";
    let report = uct_check(k);
    match report.lines.iter().find(|l| !l.holds()) {
        None => CheckResult::pass(NAME, format!("{} degrees", report.lines.len())),
        Some(l) => CheckResult::fail(
            NAME,
            format!(
                "degree {}: {} vs {}",
                l.degree,
                l.dual_homology.describe(),
                l.predicted.describe()
            ),
        ),
    }
}

/// The cone-dual isomorphism for the chain map `π_# sd_#` on `C_*(X)`.
pub fn cone_dual(x: &Arc<SimplicialComplex>) -> CheckResult {
    const NAME: &str = "cone-dual isomorphism";
    let r = (|| -> Result<String> {
        let sd = barycentric_subdivide(x)?;
        let f = last_vertex_chain_map(&sd).compose(&subdivision_chain_map(&sd))?;
        let iso = cone_dual_iso(&f)?;
        verify_degreewise_unimodular(&iso)?;
        Ok("commutes, degreewise unimodular".into())
    })();
    CheckResult::from_result(NAME, r)
}

pub(crate) fn verify_degreewise_unimodular(f: &crate::algebra::ChainMap) -> Result<()> {
    f.check_commutes()?;
    let range = |k: &ChainComplex| k.cohomological_range();
    let degrees = range(f.source())
        .into_iter()
        .chain(range(f.target()))
        .flat_map(|(a, b)| a..=b);
    for n in degrees {
        let m = f.at_c(n);
        if m.rows() != m.cols() || !crate::algebra::snf::is_unimodular(&m) {
            return Err(Error::Internal(format!(
                "component at degree {n} is not unimodular"
            )));
        }
    }
    Ok(())
}

/// Subcomplexes `Y` of `x` used for pair checks: the manifold boundary when
/// nonempty, and the closed star of the first vertex.
fn test_pairs(x: &Arc<SimplicialComplex>) -> Vec<(String, Subcomplex)> {
    let mut out = Vec::new();
    let boundary = manifold_boundary(x);
    if !boundary.is_empty() {
        out.push(("boundary".to_string(), boundary));
    }
    if !x.is_empty() {
        let v = Subcomplex::closure_of(x, &[x.simplex(0, 0).clone()]).expect("vertex");
        let star = closed_star(x, &v).expect("subcomplex");
        out.push((format!("star({})", x.vertex(0)), star));
    }
    out
}

pub fn pair_sequences(x: &Arc<SimplicialComplex>) -> CheckResult {
    const NAME: &str = "pair long exact sequences";
    let r = (|| -> Result<String> {
        let pairs = test_pairs(x);
        for (_, y) in &pairs {
            pair_long_exact_sequence(x, y)?;
        }
        Ok(format!("{} pairs", pairs.len()))
    })();
    CheckResult::from_result(NAME, r)
}

pub fn pair_invariance(x: &Arc<SimplicialComplex>) -> CheckResult {
    const NAME: &str = "pair subdivision invariance";
    let r = (|| -> Result<String> {
        let mut pairs = test_pairs(x);
        pairs.push(("∅".into(), Subcomplex::empty(x)));
        for (name, y) in &pairs {
            let model = OpenSpaceModel::new(x, y)?;
            if !subdivision_invariance_check(&model, 1)?.holds() {
                return Err(Error::Internal(format!("fails for Y = {name}")));
            }
        }
        Ok(format!("{} pairs", pairs.len()))
    })();
    CheckResult::from_result(NAME, r)
}

/// A random cocycle of `C^*(X, N^c)` for the closed star `N` of `z`.
fn random_supported_cocycle(
    rng: &mut ChaCha8Rng,
    x: &Arc<SimplicialComplex>,
    z: &Subcomplex,
    p: i64,
) -> Result<SimplicialCochain> {
    let nc = nonmeeting_complement(x, z)?;
    let (rel, basis) = relative_cochain_complex(x, &nc)?;
    let h = homology(&rel, p);
    let coords = combination(rng, &h);
    let mut u = SimplicialCochain::zero(x, p);
    let lift = |coords: &[BigInt], degree: i64| -> SimplicialCochain {
        let mut c = SimplicialCochain::zero(x, degree);
        if degree >= 0 {
            for (&i, v) in basis[degree as usize].iter().zip(coords) {
                c.add_at(i, v);
            }
        }
        c
    };
    if p >= 0 && (p as usize) < basis.len() {
        u = lift(&coords, p);
    }
    if p >= 1 {
        let w = random_values(rng, basis[(p - 1) as usize].len());
        u = u.add(&lift(&w, p - 1).coboundary())?;
    }
    Ok(u)
}

/// Supported cap at a vertex: the class does not depend on the cocycle
/// representative, and enlarging `Z` to an edge maps classes compatibly.
pub fn supported_cap_consistency(
    x: &Arc<SimplicialComplex>,
    trials: usize,
    rng: &mut ChaCha8Rng,
) -> CheckResult {
    const NAME: &str = "supported cap representative independence";
    let Some(top) = top_dim(x) else {
        return vacuous(NAME);
    };
    let mut ctx = Context::new(x);
    let z = Subcomplex::closure_of(x, &[x.simplex(0, 0).clone()]).expect("vertex");
    let edge = x.simplices(1).iter().find(|e| e.first() == 0).cloned();
    let z_big = edge.map(|e| Subcomplex::closure_of(x, &[e]).expect("edge"));
    let nc = nonmeeting_complement(x, &z).expect("subcomplex");
    let mut compared = 0usize;
    let result = trial_loop(NAME, trials, |_| {
        let m = rng.gen_range(0..=top);
        let p = rng.gen_range(0..=m);
        let a = ctx.random_cycle(rng, m);
        let u = random_supported_cocycle(rng, x, &z, p)?;
        let base = supported_cap(x, &z, &u, &a, 0)?;
        if p >= 1 {
            let w = random_cochain(rng, x, p - 1);
            let w = SimplicialCochain::from_entries(
                x,
                p - 1,
                w.iter()
                    .filter(|(s, _)| !nc.contains(s))
                    .map(|(s, c)| (s.clone(), c.clone())),
            )?;
            let shifted = supported_cap(x, &z, &u.add(&w.coboundary())?, &a, 0)?;
            if shifted.class()?.coords != base.class()?.coords {
                return Ok(Some(format!("m={m} p={p}: class changed under u + dw")));
            }
        }
        if let Some(zb) = &z_big {
            let big = match supported_cap(x, zb, &u, &a, 0) {
                Err(Error::RetractFailed(_)) => None,
                other => Some(other?),
            };
            if let Some(big) = big {
                let rep = base.z_representative.as_ref().expect("strict result");
                let zc = Arc::new(zb.to_complex().0);
                let image = transfer_chain(rep, &zc)?;
                let h = homology(&chain_complex_of(&zc), image.degree());
                if h.class_of(&image.to_vector())? != big.class()?.coords {
                    return Ok(Some(format!("m={m} p={p}: enlarging Z changes the class")));
                }
                compared += 1;
            }
        }
        Ok(None)
    });
    if result.passed {
        CheckResult::pass(
            NAME,
            format!("{trials} trials, {compared} enlargement comparisons"),
        )
    } else {
        result
    }
}

/// Runs every suite applicable to `x`, sorted by name.
pub fn run_suite(x: &Arc<SimplicialComplex>, trials: usize, seed: u64) -> Vec<CheckResult> {
    run_suite_on(x, &chain_complex_of(x), trials, seed)
}

/// As [`run_suite`] with an explicit chain complex for the `d∘d = 0` and
/// universal-coefficient checks.
pub fn run_suite_on(
    x: &Arc<SimplicialComplex>,
    chains: &ChainComplex,
    trials: usize,
    seed: u64,
) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![square_zero(chains)];
    if chains.verify_square_zero().is_ok() {
        out.push(uct(chains));
    }
    out.push(pairing_identity(x, trials, &mut rng));
    out.push(leibniz(x, trials, &mut rng));
    out.push(boundary_cap(x, trials, &mut rng));
    out.push(adjunction(x, trials, &mut rng));
    out.push(cup_associativity(x, trials, &mut rng));
    out.push(graded_commutativity(x, trials, &mut rng));
    out.push(xi_chain_map(x, trials, &mut rng));
    out.push(xi_compatibility(x, trials, &mut rng));
    out.push(supported_cap_consistency(x, trials, &mut rng));
    out.push(subdivision_maps(x));
    out.push(cone_dual(x));
    out.push(pair_sequences(x));
    out.push(pair_invariance(x));
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}
