//! Cellulations of closed surfaces.
//!
//! A [`Cellulation`] lists vertices, edges (ordered endpoint pairs, loops and
//! parallel edges allowed) and faces as closed walks of directed edge
//! traversals. A face may run along the same edge twice. Gluing the face
//! polygons along their edges recovers the surface.

pub mod catalog;
pub mod gmap;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::Gf2Matrix;
use gmap::{flags_of, FlagLayout};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("cellulation has no vertices")]
    Empty,
    #[error("edge {edge} has endpoint {vertex} but there are only {vertex_count} vertices")]
    VertexOutOfRange {
        edge: usize,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("face {face} uses edge {edge} which does not exist")]
    EdgeOutOfRange { face: usize, edge: usize },
    #[error("face {0} has an empty walk")]
    EmptyFace(usize),
    #[error("edge {edge} is used {uses} times by the face walks (expected exactly 2)")]
    EdgeUseCount { edge: usize, uses: usize },
    #[error("face {face} is not closed at step {step}: traversal ends at vertex {end}, next starts at {start}")]
    OpenWalk {
        face: usize,
        step: usize,
        end: usize,
        start: usize,
    },
    #[error("vertex {0} is not an endpoint of any edge")]
    IsolatedVertex(usize),
    #[error("vertex {vertex} has {links} separate link cycles; the complex is not a surface there")]
    NonManifoldVertex { vertex: usize, links: usize },
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),
}

/// One step of a face walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Traversal {
    pub edge: usize,
    /// `true` when the edge is walked from its first endpoint to its second.
    pub forward: bool,
}

impl Traversal {
    pub fn new(edge: usize, forward: bool) -> Self {
        Self { edge, forward }
    }
}

impl Serialize for Traversal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (self.edge, if self.forward { 1i8 } else { -1i8 }).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Traversal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (edge, dir) = <(usize, i64)>::deserialize(d)?;
        match dir {
            1 => Ok(Self::new(edge, true)),
            -1 => Ok(Self::new(edge, false)),
            other => Err(serde::de::Error::custom(format!(
                "direction must be +1 or -1, got {other}"
            ))),
        }
    }
}

/// Wire format: `{"vertices": N, "edges": [[a,b],...], "faces": [[[edge, dir],...],...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cellulation {
    #[serde(rename = "vertices")]
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
    pub faces: Vec<Vec<Traversal>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum SurfaceKind {
    Sphere,
    /// Orientable surface of genus `genus >= 1`.
    Orientable { genus: u64 },
    /// Connected sum of `crosscaps` projective planes.
    NonOrientable { crosscaps: u64 },
    Disconnected { components: usize },
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SurfaceKind::Sphere => write!(f, "sphere"),
            SurfaceKind::Orientable { genus: 1 } => write!(f, "torus"),
            SurfaceKind::Orientable { genus } => write!(f, "orientable genus {genus}"),
            SurfaceKind::NonOrientable { crosscaps: 1 } => write!(f, "projective plane"),
            SurfaceKind::NonOrientable { crosscaps: 2 } => write!(f, "Klein bottle"),
            SurfaceKind::NonOrientable { crosscaps } => write!(f, "non-orientable genus {crosscaps}"),
            SurfaceKind::Disconnected { components } => write!(f, "disconnected ({components} components)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceInfo {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler_characteristic: i64,
    pub orientable: bool,
    pub connected: bool,
    pub kind: SurfaceKind,
    pub surface_name: String,
}

impl SurfaceInfo {
    pub fn is_projective_plane(&self) -> bool {
        self.kind == SurfaceKind::NonOrientable { crosscaps: 1 }
    }
}

/// Closed connected surface with the given Euler characteristic and
/// orientability, if one exists.
pub fn classify(euler_characteristic: i64, orientable: bool) -> Option<SurfaceKind> {
    if orientable {
        if euler_characteristic > 2 || euler_characteristic % 2 != 0 {
            return None;
        }
        let genus = ((2 - euler_characteristic) / 2) as u64;
        Some(if genus == 0 {
            SurfaceKind::Sphere
        } else {
            SurfaceKind::Orientable { genus }
        })
    } else if euler_characteristic <= 1 {
        Some(SurfaceKind::NonOrientable {
            crosscaps: (2 - euler_characteristic) as u64,
        })
    } else {
        None
    }
}

/// The two incidence matrices of a cellulation over Z2, entries counted
/// with multiplicity mod 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Incidence {
    /// `F x E`; the transpose of the face boundary map.
    pub face_edge: Gf2Matrix,
    /// `V x E`; the edge boundary map. Loops contribute nothing.
    pub vertex_edge: Gf2Matrix,
}

impl Cellulation {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>, faces: Vec<Vec<Traversal>>) -> Self {
        Self {
            vertex_count,
            edges,
            faces,
        }
    }

    /// Builds faces from `(edge, +1/-1)` pairs.
    pub fn from_signed(vertex_count: usize, edges: Vec<(usize, usize)>, faces: &[&[(usize, i8)]]) -> Self {
        let faces = faces
            .iter()
            .map(|w| w.iter().map(|&(e, d)| Traversal::new(e, d > 0)).collect())
            .collect();
        Self::new(vertex_count, edges, faces)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    fn tail(&self, t: Traversal) -> usize {
        let (a, b) = self.edges[t.edge];
        if t.forward {
            a
        } else {
            b
        }
    }

    fn head(&self, t: Traversal) -> usize {
        let (a, b) = self.edges[t.edge];
        if t.forward {
            b
        } else {
            a
        }
    }

    /// Number of edge ends at each vertex (loops count twice).
    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    pub fn face_degrees(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("cellulation serialises")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    fn check_structure(&self) -> Result<(), SurfaceError> {
        if self.vertex_count == 0 {
            return Err(SurfaceError::Empty);
        }
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            for v in [a, b] {
                if v >= self.vertex_count {
                    return Err(SurfaceError::VertexOutOfRange {
                        edge: i,
                        vertex: v,
                        vertex_count: self.vertex_count,
                    });
                }
            }
        }
        let mut uses = vec![0usize; self.edges.len()];
        for (fi, walk) in self.faces.iter().enumerate() {
            if walk.is_empty() {
                return Err(SurfaceError::EmptyFace(fi));
            }
            for t in walk {
                if t.edge >= self.edges.len() {
                    return Err(SurfaceError::EdgeOutOfRange { face: fi, edge: t.edge });
                }
                uses[t.edge] += 1;
            }
        }
        if let Some((edge, &n)) = uses.iter().enumerate().find(|(_, &n)| n != 2) {
            return Err(SurfaceError::EdgeUseCount { edge, uses: n });
        }
        for (fi, walk) in self.faces.iter().enumerate() {
            for (i, &t) in walk.iter().enumerate() {
                let next = walk[(i + 1) % walk.len()];
                if self.head(t) != self.tail(next) {
                    return Err(SurfaceError::OpenWalk {
                        face: fi,
                        step: i,
                        end: self.head(t),
                        start: self.tail(next),
                    });
                }
            }
        }
        let deg = self.vertex_degrees();
        if let Some(v) = deg.iter().position(|&d| d == 0) {
            return Err(SurfaceError::IsolatedVertex(v));
        }
        Ok(())
    }

    pub(crate) fn flag_layout(&self) -> Result<FlagLayout, SurfaceError> {
        self.check_structure()?;
        let layout = flags_of(self).expect("structure checked");
        let orbits = layout.map.vertices();
        let mut links = vec![0usize; self.vertex_count];
        let mut seen = vec![false; orbits.count];
        for (d, &o) in orbits.label.iter().enumerate() {
            if !seen[o] {
                seen[o] = true;
                links[layout.vertex[d]] += 1;
            }
        }
        if let Some((vertex, &n)) = links.iter().enumerate().find(|(_, &n)| n != 1) {
            return Err(SurfaceError::NonManifoldVertex { vertex, links: n });
        }
        Ok(layout)
    }

    /// Orientation assignment by propagation: each face gets a sign so that
    /// the two traversals of every edge run in opposite directions.
    fn faces_orientable(&self) -> bool {
        let f = self.faces.len();
        let mut uses: Vec<Vec<(usize, bool)>> = vec![Vec::new(); self.edges.len()];
        for (fi, walk) in self.faces.iter().enumerate() {
            for t in walk {
                uses[t.edge].push((fi, t.forward));
            }
        }
        // Constraint graph: faces joined by edges, flag = orientations must differ.
        let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); f];
        for u in &uses {
            let ((f0, d0), (f1, d1)) = (u[0], u[1]);
            let differ = d0 == d1;
            if f0 == f1 {
                if differ {
                    return false;
                }
                continue;
            }
            adj[f0].push((f1, differ));
            adj[f1].push((f0, differ));
        }
        let mut sign = vec![None; f];
        for start in 0..f {
            if sign[start].is_some() {
                continue;
            }
            sign[start] = Some(false);
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                let sx = sign[x].unwrap();
                for &(y, differ) in &adj[x] {
                    let want = sx ^ differ;
                    match sign[y] {
                        None => {
                            sign[y] = Some(want);
                            stack.push(y);
                        }
                        Some(s) if s != want => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let n = p[y];
                p[y] = r;
                y = n;
            }
            r
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        (0..self.vertex_count).filter(|&v| find(&mut parent, v) == v).count()
    }
}

/// Checks the closed-surface conditions and classifies the surface.
pub fn validate(c: &Cellulation) -> Result<SurfaceInfo, SurfaceError> {
    c.flag_layout()?;
    let chi = c.euler_characteristic();
    let orientable = c.faces_orientable();
    let components = c.component_count();
    let connected = components == 1;
    let kind = if connected {
        classify(chi, orientable).expect("a glued polygon complex is a closed surface")
    } else {
        SurfaceKind::Disconnected { components }
    };
    Ok(SurfaceInfo {
        vertices: c.vertex_count,
        edges: c.edges.len(),
        faces: c.faces.len(),
        euler_characteristic: chi,
        orientable,
        connected,
        kind,
        surface_name: kind.to_string(),
    })
}

/// Incidence matrices of a cellulation that has already been validated.
pub(crate) fn incidence_unchecked(c: &Cellulation) -> Incidence {
    let e = c.edges.len();
    let mut face_edge = Gf2Matrix::zeros(c.faces.len(), e);
    for (fi, walk) in c.faces.iter().enumerate() {
        for t in walk {
            face_edge.flip(fi, t.edge);
        }
    }
    let mut vertex_edge = Gf2Matrix::zeros(c.vertex_count, e);
    for (i, &(a, b)) in c.edges.iter().enumerate() {
        vertex_edge.flip(a, i);
        vertex_edge.flip(b, i);
    }
    Incidence {
        face_edge,
        vertex_edge,
    }
}

pub fn incidence_matrices(c: &Cellulation) -> Result<Incidence, SurfaceError> {
    validate(c)?;
    Ok(incidence_unchecked(c))
}

/// The dual cellulation, keeping ids: dual vertex `f` for face `f`, dual
/// edge `e` crossing edge `e`, dual face `v` around vertex `v`.
pub fn dual(c: &Cellulation) -> Result<Cellulation, SurfaceError> {
    let layout = c.flag_layout()?;
    let dual_map = layout.map.dual();
    let vertices = FlagLayout::labels(&layout.face, c.faces.len());
    let edges = FlagLayout::labels(&layout.edge, c.edges.len());
    let faces = FlagLayout::labels(&layout.vertex, c.vertex_count);
    Ok(dual_map.to_cellulation_labeled(&vertices, &edges, &faces))
}
