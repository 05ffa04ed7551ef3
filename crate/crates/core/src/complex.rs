//! Finite abstract simplicial complexes with a global vertex order.
//!
//! Vertex identifiers are opaque ordered tokens; internally every vertex is a
//! dense index into the complex's vertex order and every simplex is the
//! strictly increasing tuple of its vertex indices.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A vertex token. Integers sort before names; integers numerically, names
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexId {
    Int(i64),
    Name(String),
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexId::Int(i) => write!(f, "{i}"),
            VertexId::Name(s) => f.write_str(s),
        }
    }
}

impl From<i64> for VertexId {
    fn from(v: i64) -> Self {
        VertexId::Int(v)
    }
}

impl From<i32> for VertexId {
    fn from(v: i32) -> Self {
        VertexId::Int(v.into())
    }
}

impl From<&str> for VertexId {
    fn from(v: &str) -> Self {
        VertexId::Name(v.to_string())
    }
}

impl From<String> for VertexId {
    fn from(v: String) -> Self {
        VertexId::Name(v)
    }
}

/// Strictly increasing tuple of vertex indices of one complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<u32>);

impl Simplex {
    /// Panics unless `vertices` is nonempty and strictly increasing.
    pub fn new(vertices: Vec<u32>) -> Self {
        assert!(!vertices.is_empty(), "empty simplex");
        assert!(
            vertices.windows(2).all(|w| w[0] < w[1]),
            "simplex vertices must be strictly increasing: {vertices:?}"
        );
        Simplex(vertices)
    }

    /// Sorts an ordered tuple, returning the simplex and the sign of the
    /// sorting permutation, or `None` if a vertex repeats.
    pub fn from_ordered(mut vertices: Vec<u32>) -> Option<(Self, i8)> {
        let mut sign = 1i8;
        // insertion sort keeps the parity count simple
        for i in 1..vertices.len() {
            let mut j = i;
            while j > 0 && vertices[j - 1] > vertices[j] {
                vertices.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if vertices.windows(2).any(|w| w[0] == w[1]) || vertices.is_empty() {
            return None;
        }
        Some((Simplex(vertices), sign))
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn first(&self) -> u32 {
        self.0[0]
    }

    pub fn last(&self) -> u32 {
        *self.0.last().unwrap()
    }

    /// The `i`-th face, omitting vertex `i`.
    pub fn face(&self, i: usize) -> Simplex {
        let mut v = self.0.clone();
        v.remove(i);
        Simplex(v)
    }

    /// `[v_0, ..., v_p]`.
    pub fn front(&self, p: usize) -> Simplex {
        Simplex(self.0[..=p].to_vec())
    }

    /// `[v_{m-q}, ..., v_m]`.
    pub fn back(&self, q: usize) -> Simplex {
        let m = self.dim();
        Simplex(self.0[m - q..].to_vec())
    }

    pub fn contains_vertex(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// All nonempty faces, including the simplex itself.
    pub fn all_faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        (1u64..(1u64 << n)).map(move |mask| {
            Simplex(
                (0..n)
                    .filter(|&i| mask & (1 << i) != 0)
                    .map(|i| self.0[i])
                    .collect(),
            )
        })
    }
}

/// A finite abstract simplicial complex, closed under taking faces.
#[derive(Clone)]
pub struct SimplicialComplex {
    name: Option<String>,
    vertices: Vec<VertexId>,
    by_dim: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.by_dim == other.by_dim
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("name", &self.name)
            .field("f_vector", &self.f_vector())
            .finish()
    }
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self {
            name: None,
            vertices: Vec::new(),
            by_dim: Vec::new(),
            index: Vec::new(),
        }
    }

    /// Face closure of the given tuples. Without an explicit `order` the
    /// vertices are sorted by token.
    pub fn from_maximal_simplices(
        maximal: &[Vec<VertexId>],
        order: Option<&[VertexId]>,
    ) -> Result<Self> {
        let used: BTreeSet<&VertexId> = maximal.iter().flatten().collect();
        let vertices: Vec<VertexId> = match order {
            None => used.iter().map(|v| (*v).clone()).collect(),
            Some(order) => {
                let mut seen = BTreeSet::new();
                for v in order {
                    if !seen.insert(v) {
                        return Err(Error::Validation(format!(
                            "vertex {v} listed twice in the vertex order"
                        )));
                    }
                    if !used.contains(v) {
                        return Err(Error::Validation(format!(
                            "vertex {v} in the vertex order is not used by any simplex"
                        )));
                    }
                }
                if let Some(v) = used.iter().find(|v| !seen.contains(**v)) {
                    return Err(Error::Validation(format!(
                        "vertex {v} missing from the vertex order"
                    )));
                }
                order.to_vec()
            }
        };
        let position: HashMap<&VertexId, u32> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v, i as u32))
            .collect();
        let mut all = BTreeSet::new();
        for tuple in maximal {
            if tuple.is_empty() {
                return Err(Error::Validation("empty simplex".into()));
            }
            let mut idx: Vec<u32> = tuple.iter().map(|v| position[v]).collect();
            idx.sort_unstable();
            if idx.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Validation(format!(
                    "duplicate vertex in simplex [{}]",
                    join(tuple)
                )));
            }
            let s = Simplex(idx);
            all.extend(s.all_faces());
        }
        Self::from_closed(vertices, all)
    }

    /// Builds from a face-closed set of simplices over `vertices`.
    pub fn from_closed(
        vertices: Vec<VertexId>,
        simplices: impl IntoIterator<Item = Simplex>,
    ) -> Result<Self> {
        let mut by_dim: Vec<Vec<Simplex>> = Vec::new();
        for s in simplices {
            if s.0.iter().any(|&v| v as usize >= vertices.len()) {
                return Err(Error::Validation("simplex uses an unknown vertex".into()));
            }
            let d = s.dim();
            if by_dim.len() <= d {
                by_dim.resize_with(d + 1, Vec::new);
            }
            by_dim[d].push(s);
        }
        for level in &mut by_dim {
            level.sort_unstable();
            level.dedup();
        }
        let index: Vec<HashMap<Simplex, usize>> = by_dim
            .iter()
            .map(|level| {
                level
                    .iter()
                    .cloned()
                    .enumerate()
                    .map(|(i, s)| (s, i))
                    .collect()
            })
            .collect();
        let complex = Self {
            name: None,
            vertices,
            by_dim,
            index,
        };
        for level in complex.by_dim.iter().skip(1) {
            for s in level {
                for i in 0..=s.dim() {
                    if complex.index_of(&s.face(i)).is_none() {
                        return Err(Error::Validation(format!(
                            "not face-closed: missing a face of [{}]",
                            join(&complex.labels(s))
                        )));
                    }
                }
            }
        }
        if complex.vertex_count() != complex.count(0) {
            return Err(Error::Validation("every vertex must be a 0-simplex".into()));
        }
        Ok(complex)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn vertex(&self, i: u32) -> &VertexId {
        &self.vertices[i as usize]
    }

    pub fn vertex_index(&self, v: &VertexId) -> Option<u32> {
        self.vertices.iter().position(|w| w == v).map(|i| i as u32)
    }

    pub fn count(&self, dim: usize) -> usize {
        self.by_dim.get(dim).map_or(0, Vec::len)
    }

    pub fn simplices(&self, dim: usize) -> &[Simplex] {
        self.by_dim.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn simplex(&self, dim: usize, i: usize) -> &Simplex {
        &self.by_dim[dim][i]
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s.dim())?.get(s).copied()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index_of(s).is_some()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim
            .iter()
            .enumerate()
            .map(|(d, l)| {
                if d % 2 == 0 {
                    l.len() as i64
                } else {
                    -(l.len() as i64)
                }
            })
            .sum()
    }

    pub fn labels(&self, s: &Simplex) -> Vec<VertexId> {
        s.0.iter()
            .map(|&v| self.vertices[v as usize].clone())
            .collect()
    }

    /// Looks up a simplex given by tokens in increasing vertex order.
    pub fn simplex_from_labels(&self, labels: &[VertexId]) -> Result<Simplex> {
        if labels.is_empty() {
            return Err(Error::Validation("empty simplex".into()));
        }
        let mut idx = Vec::with_capacity(labels.len());
        for l in labels {
            idx.push(
                self.vertex_index(l)
                    .ok_or_else(|| Error::Validation(format!("unknown vertex {l}")))?,
            );
        }
        if idx.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Validation(format!(
                "simplex [{}] is not listed in increasing vertex order",
                join(labels)
            )));
        }
        let s = Simplex(idx);
        if !self.contains(&s) {
            return Err(Error::Validation(format!(
                "[{}] is not a simplex of the complex",
                join(labels)
            )));
        }
        Ok(s)
    }

    /// Simplices not properly contained in another simplex, by dimension then
    /// lexicographically.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut covered: BTreeSet<&Simplex> = BTreeSet::new();
        let mut faces = Vec::new();
        for level in self.by_dim.iter().skip(1) {
            for s in level {
                for i in 0..=s.dim() {
                    faces.push(s.face(i));
                }
            }
        }
        for f in &faces {
            covered.insert(f);
        }
        self.by_dim
            .iter()
            .flatten()
            .filter(|s| !covered.contains(s))
            .cloned()
            .collect()
    }

    /// Renders a simplex as `[a,b,c]`.
    pub fn render(&self, s: &Simplex) -> String {
        format!("[{}]", join(&self.labels(s)))
    }
}

pub(crate) fn join(labels: &[VertexId]) -> String {
    labels
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// A face-closed subset of a parent complex.
#[derive(Clone, Debug)]
pub struct Subcomplex {
    parent: Arc<SimplicialComplex>,
    mask: Vec<Vec<bool>>,
}

impl PartialEq for Subcomplex {
    fn eq(&self, other: &Self) -> bool {
        same_complex(&self.parent, &other.parent) && self.mask == other.mask
    }
}

impl Eq for Subcomplex {}

pub(crate) fn same_complex(a: &Arc<SimplicialComplex>, b: &Arc<SimplicialComplex>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Subcomplex {
    pub fn empty(parent: &Arc<SimplicialComplex>) -> Self {
        Self {
            parent: parent.clone(),
            mask: parent.by_dim.iter().map(|l| vec![false; l.len()]).collect(),
        }
    }

    pub fn full(parent: &Arc<SimplicialComplex>) -> Self {
        Self {
            parent: parent.clone(),
            mask: parent.by_dim.iter().map(|l| vec![true; l.len()]).collect(),
        }
    }

    /// Face closure of the given simplices, which must belong to `parent`.
    pub fn closure_of<'a>(
        parent: &Arc<SimplicialComplex>,
        simplices: impl IntoIterator<Item = &'a Simplex>,
    ) -> Result<Self> {
        let mut sub = Self::empty(parent);
        for s in simplices {
            if !parent.contains(s) {
                return Err(Error::Validation(
                    "subcomplex contains a simplex outside the parent complex".into(),
                ));
            }
            for f in s.all_faces() {
                let i = parent.index_of(&f).expect("parent is face-closed");
                sub.mask[f.dim()][i] = true;
            }
        }
        Ok(sub)
    }

    /// Face closure of token tuples (each sorted into the parent's order).
    pub fn from_labels(parent: &Arc<SimplicialComplex>, maximal: &[Vec<VertexId>]) -> Result<Self> {
        let mut simplices = Vec::new();
        for tuple in maximal {
            let mut idx = Vec::new();
            for v in tuple {
                idx.push(parent.vertex_index(v).ok_or_else(|| {
                    Error::Validation(format!("vertex {v} is not in the parent complex"))
                })?);
            }
            let (s, _) = Simplex::from_ordered(idx).ok_or_else(|| {
                Error::Validation(format!("duplicate vertex in simplex [{}]", join(tuple)))
            })?;
            simplices.push(s);
        }
        Self::closure_of(parent, &simplices)
    }

    /// From a per-dimension membership mask; rejects masks that are not
    /// face-closed.
    pub fn from_mask(parent: &Arc<SimplicialComplex>, mask: Vec<Vec<bool>>) -> Result<Self> {
        if mask.len() != parent.by_dim.len()
            || mask
                .iter()
                .zip(&parent.by_dim)
                .any(|(m, l)| m.len() != l.len())
        {
            return Err(Error::Validation(
                "mask shape does not match the parent".into(),
            ));
        }
        let sub = Self {
            parent: parent.clone(),
            mask,
        };
        for (d, level) in parent.by_dim.iter().enumerate().skip(1) {
            for (i, s) in level.iter().enumerate() {
                if sub.mask[d][i] && (0..=d).any(|k| !sub.contains(&s.face(k))) {
                    return Err(Error::Validation("subset is not face-closed".into()));
                }
            }
        }
        Ok(sub)
    }

    pub fn parent(&self) -> &Arc<SimplicialComplex> {
        &self.parent
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.parent
            .index_of(s)
            .is_some_and(|i| self.mask[s.dim()][i])
    }

    pub fn contains_index(&self, dim: usize, i: usize) -> bool {
        self.mask.get(dim).is_some_and(|m| m[i])
    }

    pub fn contains_vertex(&self, v: u32) -> bool {
        self.contains_index(0, v as usize)
    }

    pub fn is_empty(&self) -> bool {
        self.mask.iter().flatten().all(|b| !b)
    }

    pub fn count(&self, dim: usize) -> usize {
        self.mask
            .get(dim)
            .map_or(0, |m| m.iter().filter(|b| **b).count())
    }

    pub fn simplices(&self, dim: usize) -> impl Iterator<Item = &Simplex> + '_ {
        self.parent
            .simplices(dim)
            .iter()
            .zip(self.mask.get(dim).into_iter().flatten())
            .filter(|(_, b)| **b)
            .map(|(s, _)| s)
    }

    pub fn is_subset_of(&self, other: &Subcomplex) -> bool {
        same_complex(&self.parent, &other.parent)
            && self
                .mask
                .iter()
                .flatten()
                .zip(other.mask.iter().flatten())
                .all(|(a, b)| !a || *b)
    }

    pub fn intersection(&self, other: &Subcomplex) -> Result<Subcomplex> {
        self.check_same_parent(other)?;
        Ok(self.zip_with(other, |a, b| a && b))
    }

    pub fn union(&self, other: &Subcomplex) -> Result<Subcomplex> {
        self.check_same_parent(other)?;
        Ok(self.zip_with(other, |a, b| a || b))
    }

    fn zip_with(&self, other: &Subcomplex, f: impl Fn(bool, bool) -> bool) -> Subcomplex {
        Subcomplex {
            parent: self.parent.clone(),
            mask: self
                .mask
                .iter()
                .zip(&other.mask)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(*x, *y)).collect())
                .collect(),
        }
    }

    fn check_same_parent(&self, other: &Subcomplex) -> Result<()> {
        if same_complex(&self.parent, &other.parent) {
            Ok(())
        } else {
            Err(Error::Validation(
                "subcomplexes of different complexes".into(),
            ))
        }
    }

    /// Checks that this is a subcomplex of `x`.
    pub fn check_parent(&self, x: &Arc<SimplicialComplex>) -> Result<()> {
        if same_complex(&self.parent, x) {
            Ok(())
        } else {
            Err(Error::Validation(
                "not a subcomplex of the given complex".into(),
            ))
        }
    }

    /// The subcomplex as a complex in its own right, restricted vertex order
    /// preserved, with the index embedding into the parent per dimension.
    pub fn to_complex(&self) -> (SimplicialComplex, Vec<Vec<usize>>) {
        let used: Vec<u32> = self.simplices(0).map(|s| s.first()).collect();
        let renumber: HashMap<u32, u32> = used
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i as u32))
            .collect();
        let vertices = used
            .iter()
            .map(|&v| self.parent.vertex(v).clone())
            .collect();
        let simplices: Vec<Simplex> = (0..self.mask.len())
            .flat_map(|d| self.simplices(d))
            .map(|s| Simplex(s.0.iter().map(|v| renumber[v]).collect()))
            .collect();
        let complex =
            SimplicialComplex::from_closed(vertices, simplices).expect("subcomplex is face-closed");
        let embedding = (0..complex.by_dim.len())
            .map(|d| {
                complex
                    .simplices(d)
                    .iter()
                    .map(|s| {
                        let lifted = Simplex(s.0.iter().map(|&v| used[v as usize]).collect());
                        self.parent.index_of(&lifted).expect("embedded simplex")
                    })
                    .collect()
            })
            .collect();
        (complex, embedding)
    }
}

/// `N`: the face closure of all simplices having a vertex in `z`.
pub fn closed_star(x: &Arc<SimplicialComplex>, z: &Subcomplex) -> Result<Subcomplex> {
    z.check_parent(x)?;
    let meeting: Vec<&Simplex> = x
        .by_dim
        .iter()
        .flatten()
        .filter(|s| s.0.iter().any(|&v| z.contains_vertex(v)))
        .collect();
    Subcomplex::closure_of(x, meeting)
}

/// `N^c`: all simplices with no vertex in `z`.
pub fn nonmeeting_complement(x: &Arc<SimplicialComplex>, z: &Subcomplex) -> Result<Subcomplex> {
    z.check_parent(x)?;
    let mask = x
        .by_dim
        .iter()
        .map(|level| {
            level
                .iter()
                .map(|s| s.0.iter().all(|&v| !z.contains_vertex(v)))
                .collect()
        })
        .collect();
    Ok(Subcomplex {
        parent: x.clone(),
        mask,
    })
}

/// Barycentric subdivision together with the bookkeeping needed by the
/// subdivision and approximation chain maps.
#[derive(Clone, Debug)]
pub struct SubdivisionResult {
    pub parent: Arc<SimplicialComplex>,
    pub complex: Arc<SimplicialComplex>,
    /// `barycenter_of[d][i]`: new vertex index of parent simplex `(d, i)`.
    pub barycenter_of: Vec<Vec<u32>>,
    /// `carrier[v]`: parent simplex `(d, i)` whose barycenter is new vertex `v`.
    pub carrier: Vec<(usize, usize)>,
}

/// One barycentric subdivision.
///
/// A 0-simplex `{v}` keeps its token; the barycenter of a higher simplex is
/// named `b(v0.v1...)`. New vertices are ordered by the dimension of their
/// parent simplex, then lexicographically by parent tuple, so every flag
/// `σ_0 < ... < σ_k` is already an increasing tuple.
pub fn barycentric_subdivide(x: &Arc<SimplicialComplex>) -> Result<SubdivisionResult> {
    let mut vertices = Vec::new();
    let mut barycenter_of = Vec::new();
    let mut carrier = Vec::new();
    for (d, level) in x.by_dim.iter().enumerate() {
        let mut ids = Vec::with_capacity(level.len());
        for (i, s) in level.iter().enumerate() {
            ids.push(vertices.len() as u32);
            carrier.push((d, i));
            vertices.push(if d == 0 {
                x.vertex(s.first()).clone()
            } else {
                let parts: Vec<String> = x.labels(s).iter().map(ToString::to_string).collect();
                VertexId::Name(format!("b({})", parts.join(".")))
            });
        }
        barycenter_of.push(ids);
    }
    let distinct: BTreeSet<&VertexId> = vertices.iter().collect();
    if distinct.len() != vertices.len() {
        return Err(Error::Validation(
            "barycenter name collides with an existing vertex token".into(),
        ));
    }

    // flags ending at each simplex, built up by dimension
    let mut flags: Vec<Vec<Vec<Vec<u32>>>> = Vec::with_capacity(x.by_dim.len());
    let mut all = Vec::new();
    for (d, level) in x.by_dim.iter().enumerate() {
        let mut at_level = Vec::with_capacity(level.len());
        for (i, s) in level.iter().enumerate() {
            let top = barycenter_of[d][i];
            let mut ending_here = vec![vec![top]];
            for face in s.all_faces().filter(|f| f.dim() < d) {
                let fi = x.index_of(&face).expect("face-closed");
                for chain in &flags[face.dim()][fi] {
                    let mut c: Vec<u32> = chain.clone();
                    c.push(top);
                    ending_here.push(c);
                }
            }
            all.extend(ending_here.iter().cloned().map(Simplex));
            at_level.push(ending_here);
        }
        flags.push(at_level);
    }
    let mut complex = SimplicialComplex::from_closed(vertices, all)?;
    if let Some(name) = x.name() {
        complex = complex.with_name(format!("sd({name})"));
    }
    Ok(SubdivisionResult {
        parent: x.clone(),
        complex: Arc::new(complex),
        barycenter_of,
        carrier,
    })
}

impl SubdivisionResult {
    /// The parent simplex whose barycenter is new vertex `v`.
    pub fn carrier_simplex(&self, v: u32) -> &Simplex {
        let (d, i) = self.carrier[v as usize];
        self.parent.simplex(d, i)
    }

    /// `sd Z`: flags lying entirely in `z`.
    pub fn subdivide_subcomplex(&self, z: &Subcomplex) -> Result<Subcomplex> {
        z.check_parent(&self.parent)?;
        let mask = self
            .complex
            .by_dim
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|s| {
                        let (d, i) = self.carrier[s.last() as usize];
                        z.contains_index(d, i)
                    })
                    .collect()
            })
            .collect();
        Ok(Subcomplex {
            parent: self.complex.clone(),
            mask,
        })
    }

    /// Maps the barycenter of `σ` to the last vertex of `σ`.
    pub fn last_vertex_approximation(&self) -> Vec<u32> {
        (0..self.complex.vertex_count() as u32)
            .map(|v| self.carrier_simplex(v).last())
            .collect()
    }
}
