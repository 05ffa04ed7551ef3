//! Small triangulations used by the verification suites and tests.

use std::sync::Arc;

use crate::complex::{SimplicialComplex, Subcomplex, VertexId};

fn build(
    name: &str,
    maximal: Vec<Vec<VertexId>>,
    order: Option<Vec<VertexId>>,
) -> Arc<SimplicialComplex> {
    Arc::new(
        SimplicialComplex::from_maximal_simplices(&maximal, order.as_deref())
            .expect("fixture is valid")
            .with_name(name),
    )
}

fn ints(v: &[i64]) -> Vec<VertexId> {
    v.iter().map(|&x| VertexId::Int(x)).collect()
}

fn names(v: &[&str]) -> Vec<VertexId> {
    v.iter().map(|&x| VertexId::from(x)).collect()
}

/// The full simplex on vertices `1..=n+1`.
pub fn simplex(n: usize) -> Arc<SimplicialComplex> {
    let v: Vec<i64> = (1..=n as i64 + 1).collect();
    build(&format!("simplex{n}"), vec![ints(&v)], None)
}

/// The boundary of the `n`-simplex, a triangulated `(n-1)`-sphere.
pub fn simplex_boundary(n: usize) -> Arc<SimplicialComplex> {
    let v: Vec<i64> = (1..=n as i64 + 1).collect();
    let faces = (0..v.len())
        .map(|i| {
            let mut f = v.clone();
            f.remove(i);
            ints(&f)
        })
        .collect();
    build(&format!("sphere{}", n - 1), faces, None)
}

/// Hollow triangle on `{1, 2, 3}`.
pub fn circle() -> Arc<SimplicialComplex> {
    build(
        "S1",
        vec![ints(&[1, 2]), ints(&[2, 3]), ints(&[1, 3])],
        None,
    )
}

/// Boundary of the tetrahedron on `{1, 2, 3, 4}`.
pub fn sphere() -> Arc<SimplicialComplex> {
    let s = simplex_boundary(3);
    Arc::new((*s).clone().with_name("S2"))
}

/// The 7-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn torus() -> Arc<SimplicialComplex> {
    let mut tris = Vec::new();
    for i in 0..7 {
        tris.push(ints(&[i + 1, (i + 1) % 7 + 1, (i + 3) % 7 + 1]));
        tris.push(ints(&[i + 1, (i + 2) % 7 + 1, (i + 3) % 7 + 1]));
    }
    build("T2", tris, None)
}

/// The 6-vertex projective plane.
pub fn projective_plane() -> Arc<SimplicialComplex> {
    let tris = [
        [1, 2, 4],
        [1, 2, 6],
        [1, 3, 5],
        [1, 3, 6],
        [1, 4, 5],
        [2, 3, 4],
        [2, 3, 5],
        [2, 5, 6],
        [3, 4, 6],
        [4, 5, 6],
    ];
    build("RP2", tris.iter().map(|t| ints(t)).collect(), None)
}

/// A `3 x 3` square grid with opposite sides glued, the vertical pair with a
/// flip.
pub fn klein_bottle() -> Arc<SimplicialComplex> {
    const N: i64 = 3;
    let vertex = |i: i64, j: i64| -> i64 {
        let (i, j) = if i == N {
            (0, (N - j).rem_euclid(N))
        } else {
            (i, j.rem_euclid(N))
        };
        i * N + j + 1
    };
    let mut tris = Vec::new();
    for i in 0..N {
        for j in 0..N {
            tris.push(ints(&[
                vertex(i, j),
                vertex(i + 1, j),
                vertex(i + 1, j + 1),
            ]));
            tris.push(ints(&[
                vertex(i, j),
                vertex(i, j + 1),
                vertex(i + 1, j + 1),
            ]));
        }
    }
    build("Klein", tris, None)
}

/// The 5-vertex Möbius band: triangles `{i, i+1, i+2}` mod 5.
pub fn mobius_band() -> Arc<SimplicialComplex> {
    let tris = (0..5)
        .map(|i| ints(&[i + 1, (i + 1) % 5 + 1, (i + 2) % 5 + 1]))
        .collect();
    build("Mobius", tris, None)
}

/// Path `a - m - b` with the vertex order `a < m < b`.
pub fn interval() -> Arc<SimplicialComplex> {
    build(
        "interval",
        vec![names(&["a", "m"]), names(&["m", "b"])],
        Some(names(&["a", "m", "b"])),
    )
}

/// `S^1 x [0, 1]` on circles `a0 a1 a2` and `b0 b1 b2`.
pub fn cylinder() -> Arc<SimplicialComplex> {
    let mut tris = Vec::new();
    for i in 0..3 {
        let (a, a1) = (format!("a{i}"), format!("a{}", (i + 1) % 3));
        let (b, b1) = (format!("b{i}"), format!("b{}", (i + 1) % 3));
        tris.push(names(&[&a, &a1, &b]));
        tris.push(names(&[&a1, &b, &b1]));
    }
    build("cylinder", tris, None)
}

/// Closure of the codimension-one faces lying in exactly one top simplex.
pub fn manifold_boundary(x: &Arc<SimplicialComplex>) -> Subcomplex {
    let Some(top) = x.dim().filter(|&d| d > 0) else {
        return Subcomplex::empty(x);
    };
    let mut incidence = vec![0usize; x.count(top - 1)];
    for s in x.simplices(top) {
        for i in 0..=top {
            incidence[x.index_of(&s.face(i)).expect("face-closed")] += 1;
        }
    }
    let faces: Vec<_> = x
        .simplices(top - 1)
        .iter()
        .zip(&incidence)
        .filter(|(_, &n)| n == 1)
        .map(|(s, _)| s.clone())
        .collect();
    Subcomplex::closure_of(x, &faces).expect("faces of x")
}

/// The six closed surfaces and the circle used by the sign-identity suites.
pub fn surfaces() -> Vec<Arc<SimplicialComplex>> {
    vec![
        circle(),
        sphere(),
        torus(),
        projective_plane(),
        klein_bottle(),
        mobius_band(),
    ]
}

/// Pairs `(X, Y)` exercised by the long exact sequence and invariance checks.
pub fn pairs() -> Vec<(Arc<SimplicialComplex>, Subcomplex)> {
    let mut out = Vec::new();
    for x in [
        simplex(1),
        simplex(2),
        simplex(3),
        interval(),
        cylinder(),
        mobius_band(),
    ] {
        let y = manifold_boundary(&x);
        out.push((x, y));
    }
    for x in [circle(), torus(), projective_plane()] {
        let y = Subcomplex::empty(&x);
        out.push((x, y));
    }
    let t = torus();
    let edge = Subcomplex::closure_of(&t, &[t.simplex(1, 0).clone()]).expect("edge of torus");
    out.push((t, edge));
    out
}
