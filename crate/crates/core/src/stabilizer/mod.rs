//! CSS codes of cellulations.
//!
//! Orientation convention: face operators `A_f` are X-type and vertex
//! operators `B_v` are Z-type, the transpose of Kitaev's toric code. So
//! `x_stabilizers` is the face-edge incidence matrix and `z_stabilizers` the
//! vertex-edge one.
//!
//! An X error on a set of edges is invisible to every `B_v` exactly when it
//! is a cycle, and harmless exactly when it is a sum of face boundaries.
//! Hence the bit-flip distance `d_z` is the systole and `logical_z` holds
//! cycles of the surface; the phase distance `d_x` and `logical_x` live on
//! the dual. `logical_z[i] · logical_x[j] = δ_ij`.

mod distance;
mod pauli;
pub mod planar;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::{Echelon, Gf2Error, Gf2Matrix, Gf2Vector, DEFAULT_COSET_BUDGET};
use crate::homology::{ChainComplex, ClassMinimum, HomologyError, WEIGHT_ORDERED_MAX_EDGES};
use crate::surface::{self, incidence_matrices, Cellulation, SurfaceError};

use distance::VoltageGraph;
pub use pauli::PauliOperator;
pub use planar::{build_punctured_disk_code, planar_two_holes, Hole, PlanarLattice};

#[derive(Debug, Error)]
pub enum StabilizerError {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error("the code encodes no logical qubits")]
    NoLogicalQubits,
    #[error("X and Z stabilizers do not commute")]
    NotCommuting,
    #[error("face {face} out of range (code has {faces} faces)")]
    FaceOutOfRange { face: usize, faces: usize },
    #[error("vertex {vertex} out of range (code has {vertices} vertices)")]
    VertexOutOfRange { vertex: usize, vertices: usize },
    #[error("invalid planar lattice: {0}")]
    Lattice(String),
}

/// A CSS code with its full, unreduced generator lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CssCode {
    pub n: usize,
    #[serde(serialize_with = "serialize_rows")]
    pub x_stabilizers: Gf2Matrix,
    #[serde(serialize_with = "serialize_rows")]
    pub z_stabilizers: Gf2Matrix,
    pub k: usize,
    /// Phase distance; `None` when `k = 0`.
    pub d_x: Option<usize>,
    /// Bit-flip distance; `None` when `k = 0`.
    pub d_z: Option<usize>,
    #[serde(serialize_with = "serialize_vectors")]
    pub logical_x: Vec<Gf2Vector>,
    #[serde(serialize_with = "serialize_vectors")]
    pub logical_z: Vec<Gf2Vector>,
}

fn serialize_rows<S: serde::Serializer>(m: &Gf2Matrix, s: S) -> Result<S::Ok, S::Error> {
    serialize_vectors(m.rows(), s)
}

fn serialize_vectors<S: serde::Serializer>(rows: &[Gf2Vector], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(rows.len()))?;
    for r in rows {
        seq.serialize_element(&r.support())?;
    }
    seq.end()
}

/// `[[n,k,d_x,d_z]]`, with distances left out when undefined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParameters {
    pub n: usize,
    pub k: usize,
    pub d_x: Option<usize>,
    pub d_z: Option<usize>,
}

impl std::fmt::Display for CodeParameters {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.d_x, self.d_z) {
            (Some(dx), Some(dz)) => write!(f, "[[{},{},{},{}]]", self.n, self.k, dx, dz),
            _ => write!(f, "[[{},{},undefined,undefined]]", self.n, self.k),
        }
    }
}

impl CssCode {
    pub fn parameters(&self) -> CodeParameters {
        CodeParameters {
            n: self.n,
            k: self.k,
            d_x: self.d_x,
            d_z: self.d_z,
        }
    }

    pub fn stabilizers(&self) -> Vec<PauliOperator> {
        let x = self.x_stabilizers.rows().iter().cloned().map(PauliOperator::x_type);
        let z = self.z_stabilizers.rows().iter().cloned().map(PauliOperator::z_type);
        x.chain(z).collect()
    }

    /// One generator per line, X generators first.
    pub fn pauli_strings(&self) -> String {
        let mut out = String::new();
        for p in self.stabilizers() {
            out.push_str(&p.to_string());
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("codes serialize")
    }

    /// Same code with qubit `i` moved to position `perm[i]`.
    pub fn permute_qubits(&self, perm: &[usize]) -> Self {
        let mv = |v: &Gf2Vector| Gf2Vector::from_indices(self.n, v.support().into_iter().map(|i| perm[i]));
        Self {
            n: self.n,
            x_stabilizers: self.x_stabilizers.permute_columns(perm),
            z_stabilizers: self.z_stabilizers.permute_columns(perm),
            k: self.k,
            d_x: self.d_x,
            d_z: self.d_z,
            logical_x: self.logical_x.iter().map(mv).collect(),
            logical_z: self.logical_z.iter().map(mv).collect(),
        }
    }
}

/// Face and vertex stabilizer matrices of a cellulation.
pub fn stabilizer_matrices(c: &Cellulation) -> Result<(Gf2Matrix, Gf2Matrix), StabilizerError> {
    let inc = incidence_matrices(c)?;
    Ok((inc.face_edge, inc.vertex_edge))
}

/// Code of a cellulation. Distances come from the systoles of the surface
/// and its dual; logicals are lexicographically least minimum-weight
/// representatives, with `logical_x` recombined so the pairing is the
/// identity.
pub fn build_code(c: &Cellulation) -> Result<CssCode, StabilizerError> {
    build_code_with_budget(c, DEFAULT_COSET_BUDGET)
}

/// [`build_code`] with a cap on coset vectors examined by the distance
/// search.
pub fn build_code_with_budget(c: &Cellulation, budget: u64) -> Result<CssCode, StabilizerError> {
    let (hx, hz) = stabilizer_matrices(c)?;
    let primal = ChainComplex::from_matrices(hz.clone(), hx.clone());
    let dual = primal.transposed();
    from_complexes(hx, hz, &primal, &dual, budget)
}

/// Code from arbitrary check matrices. Distances use exhaustive search for
/// small codes and shortest cycles in a cover graph otherwise.
pub fn from_checks(hx: Gf2Matrix, hz: Gf2Matrix) -> Result<CssCode, StabilizerError> {
    if hx.col_count() != hz.col_count() {
        return Err(Gf2Error::LengthMismatch {
            expected: hx.col_count(),
            found: hz.col_count(),
        }
        .into());
    }
    if !matrices_commute(&hx, &hz) {
        return Err(StabilizerError::NotCommuting);
    }
    let primal = ChainComplex::from_matrices(hz.clone(), hx.clone());
    let dual = primal.transposed();
    from_complexes(hx, hz, &primal, &dual, DEFAULT_COSET_BUDGET)
}

fn from_complexes(
    hx: Gf2Matrix,
    hz: Gf2Matrix,
    primal: &ChainComplex,
    dual: &ChainComplex,
    budget: u64,
) -> Result<CssCode, StabilizerError> {
    let n = hx.col_count();
    let k = primal.h1_dim();
    let mut code = CssCode {
        n,
        x_stabilizers: hx,
        z_stabilizers: hz,
        k,
        d_x: None,
        d_z: None,
        logical_x: Vec::new(),
        logical_z: Vec::new(),
    };
    if k == 0 {
        return Ok(code);
    }
    let zmin = class_minima(primal, budget)?;
    let xmin = class_minima(dual, budget)?;
    code.d_z = Some(zmin[0].length);
    code.d_x = Some(xmin[0].length);
    let lz = independent_classes(primal, &zmin, k);
    let lx = independent_classes(dual, &xmin, k);
    code.logical_x = pair_with(&lz, lx);
    code.logical_z = lz;
    Ok(code)
}

/// Per-class minima, sorted by weight then support.
fn class_minima(c: &ChainComplex, budget: u64) -> Result<Vec<ClassMinimum>, StabilizerError> {
    if c.edge_count() <= WEIGHT_ORDERED_MAX_EDGES {
        return Ok(c.class_minima(budget)?);
    }
    let cologicals = c.transposed().homology_basis();
    if let Some(graph) = VoltageGraph::new(c.cycle_checks(), &cologicals) {
        let mut out: Vec<ClassMinimum> = graph
            .shortest_by_label()
            .into_iter()
            .flatten()
            .map(|(length, witness)| ClassMinimum {
                key: c.class_key(&witness),
                length,
                witness,
            })
            .collect();
        out.sort_by(|a, b| a.length.cmp(&b.length).then_with(|| a.witness.support_cmp(&b.witness)));
        return Ok(out);
    }
    Ok(c.class_minima(budget)?)
}

/// Greedily picks `k` minima whose classes are independent.
fn independent_classes(c: &ChainComplex, minima: &[ClassMinimum], k: usize) -> Vec<Gf2Vector> {
    let mut span = Echelon::new(c.edge_count());
    for b in c.boundaries().rows() {
        span.insert(b.clone());
    }
    let mut out = Vec::with_capacity(k);
    for m in minima {
        if out.len() == k {
            break;
        }
        if span.insert(m.witness.clone()) {
            out.push(m.witness.clone());
        }
    }
    assert_eq!(out.len(), k, "class minima span the homology");
    out
}

/// Recombines `x` so that `z[i] · x[j] = δ_ij`.
fn pair_with(z: &[Gf2Vector], x: Vec<Gf2Vector>) -> Vec<Gf2Vector> {
    let k = z.len();
    let mut m = Gf2Matrix::zeros(k, k);
    for (i, zi) in z.iter().enumerate() {
        for (j, xj) in x.iter().enumerate() {
            m.set(i, j, zi.dot(xj));
        }
    }
    if m == Gf2Matrix::identity(k) {
        return x;
    }
    // Want N with M Nᵀ = I, i.e. N = (M⁻¹)ᵀ.
    let n = m.inverse().expect("homology pairing is nondegenerate").transpose();
    (0..k)
        .map(|j| {
            let mut v = Gf2Vector::zeros(x[0].len());
            for (l, xl) in x.iter().enumerate() {
                if n.get(j, l) {
                    v.xor_assign(xl);
                }
            }
            v
        })
        .collect()
}

fn matrices_commute(hx: &Gf2Matrix, hz: &Gf2Matrix) -> bool {
    hx.rows().iter().all(|x| hz.rows().iter().all(|z| !x.dot(z)))
}

/// Product relations: all face operators multiply to the identity, and so
/// do all vertex operators.
pub fn check_relations(code: &CssCode) -> bool {
    code.x_stabilizers.row_sum().is_zero() && code.z_stabilizers.row_sum().is_zero()
}

pub fn commutes(code: &CssCode) -> bool {
    matrices_commute(&code.x_stabilizers, &code.z_stabilizers)
}

/// Do the X and Z stabilizer spaces of `c` equal the Z and X stabilizer
/// spaces of its dual? Dual edges keep the ids of the edges they cross.
pub fn hadamard_dual_equivalent(c: &Cellulation) -> Result<bool, StabilizerError> {
    let (hx, hz) = stabilizer_matrices(c)?;
    let (dhx, dhz) = stabilizer_matrices(&surface::dual(c)?)?;
    Ok(hx.same_row_space(&dhz) && hz.same_row_space(&dhx))
}

/// `(d_x, d_z)` of an arbitrary CSS code, computed from the check matrices
/// alone. Graph-like check matrices (every column of weight at most two,
/// always the case for cellulations) go through the cover-graph search;
/// anything else falls back to exhaustive coset search.
pub fn css_distance(code: &CssCode) -> Result<(usize, usize), StabilizerError> {
    css_distance_with_budget(code, DEFAULT_COSET_BUDGET)
}

pub fn css_distance_with_budget(code: &CssCode, budget: u64) -> Result<(usize, usize), StabilizerError> {
    if !commutes(code) {
        return Err(StabilizerError::NotCommuting);
    }
    let primal = ChainComplex::from_matrices(code.z_stabilizers.clone(), code.x_stabilizers.clone());
    if primal.h1_dim() == 0 {
        return Err(StabilizerError::NoLogicalQubits);
    }
    let dual = primal.transposed();
    Ok((min_logical_weight(&dual, budget)?, min_logical_weight(&primal, budget)?))
}

fn min_logical_weight(c: &ChainComplex, budget: u64) -> Result<usize, StabilizerError> {
    let cologicals = c.transposed().homology_basis();
    match VoltageGraph::new(c.cycle_checks(), &cologicals) {
        Some(graph) => Ok(graph
            .shortest_by_label()
            .into_iter()
            .flatten()
            .map(|(len, _)| len)
            .min()
            .expect("nonzero homology has a shortest essential cycle")),
        None => Ok(c.systole_by_cosets(budget)?.length),
    }
}

/// How the rest of the surface looks once a face and a vertex are removed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Planarity {
    /// Corners of the removed face at the removed vertex.
    pub shared_corners: usize,
    /// Euler characteristic of the surface minus the open face and the open
    /// vertex star.
    pub complement_euler: i64,
    pub complement_connected: bool,
    /// Connected with Euler characteristic 1, hence a disk.
    pub is_disk: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Puncture {
    pub face: usize,
    pub vertex: usize,
    pub code: CssCode,
    pub planarity: Planarity,
}

/// Drops `A_face` and `B_vertex` and reports whether what remains of the
/// surface is a disk. The dropped rows were redundant, so the code is the
/// same; its parameters are recomputed from the reduced matrices.
pub fn puncture(c: &Cellulation, face: usize, vertex: usize) -> Result<Puncture, StabilizerError> {
    let info = surface::validate(c)?;
    if face >= info.faces {
        return Err(StabilizerError::FaceOutOfRange { face, faces: info.faces });
    }
    if vertex >= info.vertices {
        return Err(StabilizerError::VertexOutOfRange {
            vertex,
            vertices: info.vertices,
        });
    }
    let (hx, hz) = stabilizer_matrices(c)?;
    let code = from_checks(hx.without_row(face), hz.without_row(vertex))?;
    let planarity = planarity(c, info.euler_characteristic, face, vertex);
    Ok(Puncture {
        face,
        vertex,
        code,
        planarity,
    })
}

fn planarity(c: &Cellulation, chi: i64, face: usize, vertex: usize) -> Planarity {
    let walk = &c.faces[face];
    let head = |t: &surface::Traversal| {
        let (a, b) = c.edges[t.edge];
        if t.forward {
            b
        } else {
            a
        }
    };
    let shared_corners = walk.iter().filter(|t| head(t) == vertex).count();
    // Removing an open disk costs one; removing the open star of a vertex
    // costs one more, and gives back one for every corner it shares with
    // the face, since there the two removed disks overlap.
    let complement_euler = chi - 2 + shared_corners as i64;

    // Pieces of the complement: remaining vertices (their stars), edges
    // (their middles) and faces, glued along incidences.
    let (nv, ne, nf) = (c.vertex_count, c.edges.len(), c.faces.len());
    let mut uf = UnionFind::new(nv + ne + nf);
    for (e, &(a, b)) in c.edges.iter().enumerate() {
        for x in [a, b] {
            if x != vertex {
                uf.union(nv + e, x);
            }
        }
    }
    for (f, w) in c.faces.iter().enumerate() {
        if f != face {
            for t in w {
                uf.union(nv + t.edge, nv + ne + f);
            }
        }
    }
    let mut roots = std::collections::BTreeSet::new();
    for x in (0..nv).filter(|&x| x != vertex) {
        roots.insert(uf.find(x));
    }
    for e in 0..ne {
        roots.insert(uf.find(nv + e));
    }
    for f in (0..nf).filter(|&f| f != face) {
        roots.insert(uf.find(nv + ne + f));
    }
    let complement_connected = roots.len() == 1;
    Planarity {
        shared_corners,
        complement_euler,
        complement_connected,
        is_disk: complement_connected && complement_euler == 1,
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
