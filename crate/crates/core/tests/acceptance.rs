//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines appear in order; exits non-zero on any failure.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use bmtop_core::algebra::{
    cone, cone_dual_iso, dual_hom_z, dual_map, homology, is_quasi_isomorphism, shift, uct_check,
};
use bmtop_core::bm::{
    bm_homology, bm_homology_all, bm_supported_cap, pair_long_exact_sequence, OpenSpaceModel,
};
use bmtop_core::bridge::{
    chain_complex_of, cochain_complex, cochain_pullback, subdivide_chain, SimplicialChain,
    SimplicialCochain,
};
use bmtop_core::checks::{self, CheckResult};
use bmtop_core::complex::{barycentric_subdivide, SimplicialComplex, Subcomplex, VertexId};
use bmtop_core::fixtures;
use bmtop_core::products::{cap, relative_supported_cap, supported_cap, SupportedCapResult};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);
/// `(name, maximal simplices, (betti, torsion) per degree)`.
type CorpusEntry = (&'static str, Vec<Vec<i64>>, Vec<(usize, Vec<i128>)>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ints(v: &[i64]) -> Vec<VertexId> {
    v.iter().map(|&x| VertexId::Int(x)).collect()
}

fn labelled(v: &[(&[i64], i64)]) -> Vec<(Vec<VertexId>, BigInt)> {
    v.iter().map(|(s, c)| (ints(s), BigInt::from(*c))).collect()
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn check(results: &[CheckResult]) -> Result<(), String> {
    match results.iter().find(|r| !r.passed) {
        Some(r) => Err(format!("{}: {}", r.name, r.detail)),
        None => Ok(()),
    }
}

// 1

fn sign_identities() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let surfaces = fixtures::surfaces();
    for x in &surfaces {
        check(&[
            checks::leibniz(x, 300, &mut rng),
            checks::boundary_cap(x, 300, &mut rng),
            checks::adjunction(x, 300, &mut rng),
            checks::pairing_identity(x, 300, &mut rng),
        ])
        .map_err(|e| format!("{}: {e}", x.name().unwrap_or("?")))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "4 identities x 300 trials on {} fixtures in {elapsed:.2?}",
        surfaces.len()
    ))
}

// 2

/// Maximal simplices written out independently of the library fixtures.
fn corpus() -> Vec<CorpusEntry> {
    let sphere = vec![vec![1, 2, 3], vec![1, 2, 4], vec![1, 3, 4], vec![2, 3, 4]];
    let torus = (0..7)
        .flat_map(|i| {
            [
                vec![i, (i + 1) % 7, (i + 3) % 7],
                vec![i, (i + 2) % 7, (i + 3) % 7],
            ]
        })
        .collect();
    let rp2 = vec![
        vec![1, 2, 4],
        vec![1, 2, 6],
        vec![1, 3, 5],
        vec![1, 3, 6],
        vec![1, 4, 5],
        vec![2, 3, 4],
        vec![2, 3, 5],
        vec![2, 5, 6],
        vec![3, 4, 6],
        vec![4, 5, 6],
    ];
    // 3x3 grid, columns glued straight, rows glued with a flip
    let v = |i: i64, j: i64| {
        if i == 3 {
            (3 - j).rem_euclid(3)
        } else {
            10 * i + j.rem_euclid(3)
        }
    };
    let klein = (0..3)
        .flat_map(|i| {
            (0..3).flat_map(move |j| {
                [
                    vec![v(i, j), v(i + 1, j), v(i + 1, j + 1)],
                    vec![v(i, j), v(i, j + 1), v(i + 1, j + 1)],
                ]
            })
        })
        .collect();
    let mobius = (0..5).map(|i| vec![i, (i + 1) % 5, (i + 2) % 5]).collect();
    vec![
        ("S2", sphere, vec![(1, vec![]), (0, vec![]), (1, vec![])]),
        ("T2", torus, vec![(1, vec![]), (2, vec![]), (1, vec![])]),
        ("RP2", rp2, vec![(1, vec![]), (0, vec![2]), (0, vec![])]),
        ("Klein", klein, vec![(1, vec![]), (1, vec![2]), (0, vec![])]),
        (
            "Mobius",
            mobius,
            vec![(1, vec![]), (1, vec![]), (0, vec![])],
        ),
    ]
}

fn homology_corpus() -> Outcome {
    let library = [
        fixtures::sphere(),
        fixtures::torus(),
        fixtures::projective_plane(),
        fixtures::klein_bottle(),
        fixtures::mobius_band(),
    ];
    for ((name, maximal, expected), x) in corpus().into_iter().zip(&library) {
        let oracle = common::oracle::homology(&maximal);
        ensure(oracle == expected, || {
            format!("{name}: oracle gives {oracle:?}")
        })?;
        let chains = chain_complex_of(x);
        for (m, (betti, torsion)) in expected.iter().enumerate() {
            let h = homology(&chains, m as i64);
            let got: Vec<i128> = h
                .torsion()
                .iter()
                .map(|t| i128::try_from(t).unwrap())
                .collect();
            ensure(h.betti() == *betti && &got == torsion, || {
                format!(
                    "{name}: H_{m} = {} but expected rank {betti}, torsion {torsion:?}",
                    h.group.describe()
                )
            })?;
        }
    }
    Ok("5 surfaces match the expected groups and the i128 oracle".into())
}

// 3

fn uct_sequence() -> Outcome {
    let mut fixtures_checked = 0;
    for x in fixtures::surfaces()
        .into_iter()
        .chain(fixtures::pairs().into_iter().map(|(x, _)| x))
    {
        check(&[checks::uct(&chain_complex_of(&x))])?;
        fixtures_checked += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..200 {
        let k = common::random_complex(&mut rng, 4, 5);
        let report = uct_check(&k);
        ensure(report.holds(), || format!("random complex {i}: {report:?}"))?;
    }
    Ok(format!(
        "{fixtures_checked} fixtures and 200 random complexes"
    ))
}

// 4

fn cone_dual() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..100 {
        let u = common::random_chain_map(&mut rng, 4);
        let iso = cone_dual_iso(&u).map_err(|e| format!("map {i}: {e}"))?;
        let expected_source = dual_hom_z(&shift(&cone(&u).unwrap().complex, -1));
        let expected_target = cone(&dual_map(&u).unwrap().negate()).unwrap().complex;
        ensure(iso.source() == &expected_source, || {
            format!("map {i}: wrong source")
        })?;
        ensure(iso.target() == &expected_target, || {
            format!("map {i}: wrong target")
        })?;
        iso.check_commutes().map_err(|e| format!("map {i}: {e}"))?;
        if let Some((lo, hi)) = expected_source.cohomological_range() {
            for n in lo..=hi {
                let m = iso.at_c(n);
                let signed_permutation = m.rows() == m.cols()
                    && (0..m.rows()).all(|r| m.row(r).iter().filter(|x| !x.is_zero()).count() == 1)
                    && (0..m.cols())
                        .all(|c| m.column(c).iter().filter(|x| !x.is_zero()).count() == 1)
                    && (0..m.rows())
                        .all(|r| m.row(r).iter().all(|x| x.is_zero() || x.abs().is_one()));
                ensure(signed_permutation, || {
                    format!("map {i}: degree {n} is not a signed permutation")
                })?;
            }
        }
        let qi = is_quasi_isomorphism(&iso).map_err(|e| e.to_string())?;
        ensure(qi.is_quasi_isomorphism(), || {
            format!("map {i}: not a quasi-isomorphism")
        })?;
    }
    Ok("100 random chain maps".into())
}

// 5

fn hollow_triangle_instance() -> (
    Arc<SimplicialComplex>,
    Subcomplex,
    SimplicialCochain,
    SimplicialChain,
) {
    let x = fixtures::circle();
    let z = Subcomplex::from_labels(&x, &[ints(&[1])]).unwrap();
    let u = SimplicialCochain::from_labels(&x, 1, labelled(&[(&[1, 2], 1)])).unwrap();
    let alpha = SimplicialChain::from_labels(
        &x,
        1,
        labelled(&[(&[1, 2], 1), (&[2, 3], 1), (&[1, 3], -1)]),
    )
    .unwrap();
    (x, z, u, alpha)
}

fn sphere_instance() -> (
    Arc<SimplicialComplex>,
    Subcomplex,
    SimplicialCochain,
    SimplicialChain,
) {
    let x = fixtures::sphere();
    let z = Subcomplex::from_labels(&x, &[ints(&[1])]).unwrap();
    let u = SimplicialCochain::from_labels(&x, 2, labelled(&[(&[1, 2, 3], 1)])).unwrap();
    // ∂[1,2,3,4]
    let alpha = SimplicialChain::from_labels(
        &x,
        2,
        labelled(&[
            (&[2, 3, 4], 1),
            (&[1, 3, 4], -1),
            (&[1, 2, 4], 1),
            (&[1, 2, 3], -1),
        ]),
    )
    .unwrap();
    (x, z, u, alpha)
}

fn is_generator(r: &SupportedCapResult) -> Result<(), String> {
    let class = r.class().map_err(|e| e.to_string())?;
    ensure(
        class.group.betti == 1
            && class.group.torsion.is_empty()
            && class.coords.len() == 1
            && class.coords[0].abs().is_one(),
        || format!("class {class} is not a generator of Z"),
    )
}

fn desk_instances() -> Outcome {
    // Hand expansion: α∩u = u([1,2])·[2] = [2], homologous in N to the vertex 1.
    let (x, z, u, alpha) = hollow_triangle_instance();
    let r = supported_cap(&x, &z, &u, &alpha, 0).map_err(|e| e.to_string())?;
    let hand = SimplicialChain::from_labels(&x, 0, labelled(&[(&[2], 1)])).unwrap();
    ensure(r.chain_image == hand, || {
        format!("hollow triangle chain {}", r.chain_image.render())
    })?;
    is_generator(&r)?;

    // Hand expansion: ([a,m] + [m,b]) ∩ 1_[a,m] = [m].
    let x = fixtures::interval();
    let name = |s: &str| VertexId::from(s);
    let y = fixtures::manifold_boundary(&x);
    let z = Subcomplex::from_labels(&x, &[vec![name("m")]]).unwrap();
    let u = SimplicialCochain::from_labels(&x, 1, [(vec![name("a"), name("m")], BigInt::one())])
        .unwrap();
    let alpha = SimplicialChain::from_labels(
        &x,
        1,
        [
            (vec![name("a"), name("m")], BigInt::one()),
            (vec![name("m"), name("b")], BigInt::one()),
        ],
    )
    .unwrap();
    let model = OpenSpaceModel::new(&x, &y).unwrap();
    ensure(
        bm_homology(&model, 0).group.is_trivial() && bm_homology(&model, 1).betti() == 1,
        || "H^BM of the open interval is wrong".into(),
    )?;
    let r = relative_supported_cap(&x, &y, &z, &u, &alpha, 0).map_err(|e| e.to_string())?;
    let hand = SimplicialChain::from_labels(&x, 0, [(vec![name("m")], BigInt::one())]).unwrap();
    ensure(r.chain_image == hand, || {
        format!("interval chain {}", r.chain_image.render())
    })?;
    is_generator(&r)?;
    Ok("hollow triangle -> generator of H_0(Z); open interval -> generator of H^BM_0".into())
}

// 6

fn torus_duality() -> Outcome {
    let x = fixtures::torus();
    let chains = chain_complex_of(&x);
    let h2 = homology(&chains, 2);
    let h1 = homology(&chains, 1);
    let c1 = homology(&cochain_complex(&x), 1);
    ensure(
        h2.group.betti == 1 && h1.group.betti == 2 && c1.group.betti == 2,
        || "unexpected ranks".into(),
    )?;
    let fundamental = SimplicialChain::from_vector(&x, 2, &h2.representative(&big(&[1]))).unwrap();
    let mut matrix = Vec::new();
    for i in 0..2 {
        let mut e = vec![BigInt::zero(); 2];
        e[i] = BigInt::one();
        let u = SimplicialCochain::from_vector(&x, 1, &c1.representative(&e)).unwrap();
        let image = cap(&fundamental, &u).map_err(|e| e.to_string())?;
        matrix.push(h1.class_of(&image.to_vector()).map_err(|e| e.to_string())?);
    }
    let det = &matrix[0][0] * &matrix[1][1] - &matrix[0][1] * &matrix[1][0];
    ensure(det.abs().is_one(), || {
        format!("induced matrix {matrix:?} has determinant {det}")
    })?;
    Ok(format!("H^1 -> H_1 has determinant {det}"))
}

// 7

fn invariance_instance(
    name: &str,
    (x, z, u, alpha): (
        Arc<SimplicialComplex>,
        Subcomplex,
        SimplicialCochain,
        SimplicialChain,
    ),
) -> Result<(), String> {
    let err = |e: bmtop_core::Error| format!("{name}: {e}");
    let coarse = supported_cap(&x, &z, &u, &alpha, 0).map_err(err)?;
    let fine = supported_cap(&x, &z, &u, &alpha, 1).map_err(err)?;

    // the same computation with the transports done by hand
    let sd = barycentric_subdivide(&x).map_err(err)?;
    let u1 = cochain_pullback(&sd, &u).map_err(err)?;
    let alpha1 = subdivide_chain(&sd, &alpha).map_err(err)?;
    let z1 = sd.subdivide_subcomplex(&z).map_err(err)?;
    let manual = supported_cap(&sd.complex, &z1, &u1, &alpha1, 0).map_err(err)?;
    ensure(manual.chain_image == fine.chain_image, || {
        format!("{name}: manual transport differs")
    })?;
    ensure(manual.class_in_z == fine.class_in_z, || {
        format!("{name}: manual class differs")
    })?;

    // sd_# carries the coarse representative to a cycle homologous to the fine one in sd Z
    let rep0 = coarse
        .z_representative
        .clone()
        .ok_or(format!("{name}: no coarse class"))?;
    let rep1 = fine
        .z_representative
        .clone()
        .ok_or(format!("{name}: no fine class"))?;
    let carried = subdivide_chain(&sd, &rep0).map_err(err)?;
    let (zc, _) = z1.to_complex();
    let zc = Arc::new(zc);
    let on_z = |c: &SimplicialChain| {
        SimplicialChain::from_labels(
            &zc,
            c.degree(),
            c.iter().map(|(s, v)| (sd.complex.labels(s), v.clone())),
        )
    };
    let difference = on_z(&carried)
        .map_err(err)?
        .sub(&on_z(&rep1).map_err(err)?)
        .map_err(err)?;
    let hz = homology(&chain_complex_of(&zc), difference.degree());
    ensure(
        hz.is_boundary(&difference.to_vector()).map_err(err)?,
        || {
            format!(
                "{name}: sd_# of {} is not homologous to {}",
                rep0.render(),
                rep1.render()
            )
        },
    )?;
    ensure(
        coarse.class().map_err(err)? == fine.class().map_err(err)?,
        || format!("{name}: coordinates differ"),
    )
}

fn triangulation_invariance() -> Outcome {
    invariance_instance("hollow triangle", hollow_triangle_instance())?;
    invariance_instance("S2", sphere_instance())?;
    Ok("hollow triangle and S2 agree after one subdivision".into())
}

// 8

fn localization_pairs() -> Outcome {
    let start = Instant::now();
    for n in 1..=3 {
        let x = fixtures::simplex(n);
        let model = OpenSpaceModel::new(&x, &fixtures::manifold_boundary(&x)).unwrap();
        let groups: Vec<String> = bm_homology_all(&model)
            .iter()
            .map(|h| h.group.describe())
            .collect();
        let mut expected = vec!["0".to_string(); n + 1];
        expected[n] = "Z^1".into();
        ensure(groups == expected, || {
            format!("open {n}-simplex: {groups:?}")
        })?;
    }
    let x = fixtures::cylinder();
    let model = OpenSpaceModel::new(&x, &fixtures::manifold_boundary(&x)).unwrap();
    let groups: Vec<String> = bm_homology_all(&model)
        .iter()
        .map(|h| h.group.describe())
        .collect();
    ensure(groups == ["0", "Z^1", "Z^1"], || {
        format!("open cylinder: {groups:?}")
    })?;

    let pairs = fixtures::pairs();
    for (x, y) in &pairs {
        let les = pair_long_exact_sequence(x, y)
            .map_err(|e| format!("{}: {e}", x.name().unwrap_or("?")))?;
        ensure(les.is_exact(), || {
            format!("{}: not exact", x.name().unwrap_or("?"))
        })?;
    }

    let torus = fixtures::torus();
    let t_fund = homology(&chain_complex_of(&torus), 2).representative(&big(&[1]));
    let torus_instance = (
        torus.clone(),
        Subcomplex::from_labels(&torus, &[ints(&[1])]).unwrap(),
        SimplicialCochain::indicator(&torus, torus.simplex(2, 0)).unwrap(),
        SimplicialChain::from_vector(&torus, 2, &t_fund).unwrap(),
    );
    for (name, (x, z, u, alpha)) in [
        ("hollow triangle", hollow_triangle_instance()),
        ("S2", sphere_instance()),
        ("T2", torus_instance),
    ] {
        let err = |e: bmtop_core::Error| format!("{name}: {e}");
        let plain = supported_cap(&x, &z, &u, &alpha, 0).map_err(err)?;
        let bm = bm_supported_cap(&OpenSpaceModel::compact(&x), &z, &u, &alpha, 0).map_err(err)?;
        ensure(bm.result.chain_image == plain.chain_image, || {
            format!("{name}: chains differ")
        })?;
        ensure(
            bm.result.class().map_err(err)? == plain.class().map_err(err)?,
            || format!("{name}: classes differ"),
        )?;
        ensure(bm.localization_agrees == Some(true), || {
            format!("{name}: localization disagrees")
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{} pairs exact, 3 cap comparisons, {elapsed:.2?}",
        pairs.len()
    ))
}

// 9

fn xi_compatibility() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let all: Vec<_> = fixtures::surfaces()
        .into_iter()
        .chain([
            fixtures::simplex(2),
            fixtures::interval(),
            fixtures::cylinder(),
        ])
        .collect();
    for x in &all {
        check(&[checks::xi_compatibility(x, 100, &mut rng)])
            .map_err(|e| format!("{}: {e}", x.name().unwrap_or("?")))?;
    }
    Ok(format!(
        "100 closed cochains on each of {} fixtures",
        all.len()
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("sign identities", sign_identities),
        ("homology corpus", homology_corpus),
        ("universal coefficients", uct_sequence),
        ("cone-dual isomorphism", cone_dual),
        ("supported cap desk instances", desk_instances),
        ("torus duality", torus_duality),
        ("triangulation invariance", triangulation_invariance),
        ("localization and pairs", localization_pairs),
        ("ξ-compatibility", xi_compatibility),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|p| Err(format!("panicked: {}", panic_message(&p))));
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}

fn panic_message(p: &Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<String>()
        .cloned()
        .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_default()
}
