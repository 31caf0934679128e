//! Exhaustive enumeration of small cellulations.
//!
//! Maps are grown one edge at a time. Every connected map with more edges
//! than the smallest possible on its surface has either a non-loop edge
//! (contract it) or an edge with different faces on its two sides (delete
//! it). Reversing those moves, each level is obtained from the previous one
//! by splitting a vertex or adding an edge across a face, then deduplicated
//! by canonical code. Starting from every map with `max(1, 2 - χ)` edges, the
//! levels therefore contain every isomorphism class exactly once.
//!
//! Vertex and face counts never decrease along the way, so a requested
//! vertex count bounds both and lets intermediate levels be pruned.

mod figures;
mod graph;

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::homology::{ChainComplex, MaskComplex};
use crate::surface::gmap::GMap;
use crate::surface::{incidence_unchecked, validate, Cellulation, SurfaceError};

pub use figures::{
    identify_vertices, reaches_by_identify_and_slide, reconstruct_figures, slide_edges, FigureCertificate,
    Reconstruction,
};
pub use graph::Multigraph;

pub const MAX_EDGES: usize = 10;
/// Largest number of classes held at one level.
pub const DEFAULT_CLASS_BUDGET: usize = 8_000_000;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("edge count {0} is outside 1..={MAX_EDGES}")]
    EdgeCount(usize),
    #[error("enumeration supports Euler characteristic >= -1, got {0}")]
    UnsupportedSurface(i64),
    #[error("level with {edges} edges exceeded the class budget of {budget}")]
    BudgetExceeded { edges: usize, budget: usize },
    #[error("systole bounds must be at least 1")]
    SystoleBound,
    #[error("no enumerated class satisfies the {0} constraints")]
    NoSurvivor(&'static str),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("{0}")]
    Code(String),
}

/// Euler characteristic and orientability of the surface to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceTarget {
    pub euler_characteristic: i64,
    pub orientable: bool,
}

impl SurfaceTarget {
    pub const SPHERE: Self = Self::new(2, true);
    pub const PROJECTIVE_PLANE: Self = Self::new(1, false);
    pub const TORUS: Self = Self::new(0, true);
    pub const KLEIN_BOTTLE: Self = Self::new(0, false);

    pub const fn new(euler_characteristic: i64, orientable: bool) -> Self {
        Self {
            euler_characteristic,
            orientable,
        }
    }

    /// Fewest edges of any cellulation of this surface.
    pub fn min_edges(&self) -> usize {
        (2 - self.euler_characteristic).max(1) as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationConstraints {
    pub edge_count: usize,
    pub surface: SurfaceTarget,
    pub min_primal_systole: usize,
    pub min_dual_systole: usize,
    pub vertex_count: Option<usize>,
    pub bigon_faces: Option<usize>,
    pub valence_two_vertices: Option<usize>,
}

impl EnumerationConstraints {
    /// Every projective-plane cellulation with `edge_count` edges.
    pub fn projective_plane(edge_count: usize) -> Self {
        Self {
            edge_count,
            surface: SurfaceTarget::PROJECTIVE_PLANE,
            min_primal_systole: 1,
            min_dual_systole: 1,
            vertex_count: None,
            bigon_faces: None,
            valence_two_vertices: None,
        }
    }

    pub fn with_systoles(mut self, primal: usize, dual: usize) -> Self {
        self.min_primal_systole = primal;
        self.min_dual_systole = dual;
        self
    }

    pub fn with_vertices(mut self, v: usize) -> Self {
        self.vertex_count = Some(v);
        self
    }

    fn validate(&self) -> Result<(), SearchError> {
        if self.edge_count == 0 || self.edge_count > MAX_EDGES {
            return Err(SearchError::EdgeCount(self.edge_count));
        }
        if self.surface.euler_characteristic < -1 {
            return Err(SearchError::UnsupportedSurface(self.surface.euler_characteristic));
        }
        if self.min_primal_systole == 0 || self.min_dual_systole == 0 {
            return Err(SearchError::SystoleBound);
        }
        Ok(())
    }

    /// Does a given cellulation meet every constraint?
    pub fn accepts(&self, c: &Cellulation) -> Result<bool, SearchError> {
        self.validate()?;
        let info = validate(c)?;
        if info.edges != self.edge_count
            || info.euler_characteristic != self.surface.euler_characteristic
            || info.orientable != self.surface.orientable
            || !info.connected
            || self.vertex_count.is_some_and(|v| v != info.vertices)
        {
            return Ok(false);
        }
        Ok(self.admits(&c.flag_layout()?.map))
    }

    /// Does a map already known to lie on the target surface with the
    /// requested vertex count pass the remaining filters?
    fn admits(&self, map: &GMap) -> bool {
        let count4 = |sizes: Vec<usize>| sizes.iter().filter(|&&s| s == 4).count();
        if let Some(b) = self.bigon_faces {
            if count4(map.faces().sizes()) != b {
                return false;
            }
        }
        if let Some(b) = self.valence_two_vertices {
            if count4(map.vertices().sizes()) != b {
                return false;
            }
        }
        let (primal, dual) = mask_complexes(map);
        let e = map.edge_count();
        !primal.has_essential_below(e, self.min_primal_systole)
            && !dual.has_essential_below(e, self.min_dual_systole)
    }
}

/// Counts for one edge count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusStats {
    pub edges: usize,
    /// Distinct underlying multigraphs among the classes.
    pub graphs: usize,
    /// Rooted maps, i.e. labelled embeddings up to relabelling of a root
    /// flag: the sum over classes of flags / automorphisms.
    pub rooted_maps: u64,
    /// Isomorphism classes on the target surface (with the requested vertex
    /// count, if any).
    pub classes: usize,
    pub survivors: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Census {
    pub constraints: EnumerationConstraints,
    pub stats: CensusStats,
    /// In order of canonical code.
    pub survivors: Vec<Cellulation>,
}

/// One isomorphism class: its canonical code and automorphism count.
#[derive(Clone, Debug)]
pub struct MapClass {
    pub code: Box<[u8]>,
    pub automorphisms: usize,
}

impl MapClass {
    pub fn map(&self) -> GMap {
        GMap::from_code(&self.code)
    }
}

/// Canonical code of a connected cellulation.
pub fn canonical_code(c: &Cellulation) -> Result<Box<[u8]>, SurfaceError> {
    let layout = c.flag_layout()?;
    if !layout.map.is_connected() {
        return Err(SurfaceError::Empty);
    }
    Ok(layout.map.canonical_form().code)
}

/// All classes with `edges` edges on `target`, sorted by canonical code.
/// With `vertex_count`, only classes with exactly that many vertices.
pub fn classes(
    target: SurfaceTarget,
    edges: usize,
    vertex_count: Option<usize>,
    budget: usize,
) -> Result<Vec<MapClass>, SearchError> {
    grow(target, edges, vertex_count, budget, &|_| true)
}

/// Like [`classes`], but only classes passing every constraint. Children on
/// the last level are filtered before they are canonicalised, which is much
/// cheaper than building the whole level.
pub fn survivors(constraints: &EnumerationConstraints, budget: usize) -> Result<Vec<MapClass>, SearchError> {
    constraints.validate()?;
    grow(
        constraints.surface,
        constraints.edge_count,
        constraints.vertex_count,
        budget,
        &|m| constraints.admits(m),
    )
}

fn grow(
    target: SurfaceTarget,
    edges: usize,
    vertex_count: Option<usize>,
    budget: usize,
    last: &(dyn Fn(&GMap) -> bool + Sync),
) -> Result<Vec<MapClass>, SearchError> {
    if edges == 0 || edges > MAX_EDGES {
        return Err(SearchError::EdgeCount(edges));
    }
    if target.euler_characteristic < -1 {
        return Err(SearchError::UnsupportedSurface(target.euler_characteristic));
    }
    let e0 = target.min_edges();
    if edges < e0 {
        return Ok(Vec::new());
    }
    let bound = vertex_count.map(|v| {
        let f = target.euler_characteristic + edges as i64 - v as i64;
        (v, f.max(0) as usize)
    });
    let within = |v: usize, f: usize| bound.is_none_or(|(bv, bf)| v <= bv && f <= bf);
    let exact_counts = |v: usize, f: usize| vertex_count.is_none_or(|t| v == t) && within(v, f);
    let mut level: Vec<Box<[u8]>> = base_level(target)
        .into_iter()
        .filter(|c| {
            let m = GMap::from_code(c);
            if edges == e0 {
                exact_counts(m.vertex_count(), m.face_count()) && last(&m)
            } else {
                within(m.vertex_count(), m.face_count())
            }
        })
        .collect();
    for e in e0 + 1..=edges {
        level = if e == edges {
            next_level(&level, &exact_counts, last)
        } else {
            next_level(&level, &within, &|_| true)
        };
        if level.len() > budget {
            return Err(SearchError::BudgetExceeded { edges: e, budget });
        }
    }
    Ok(level
        .into_iter()
        .map(|c| {
            let cf = GMap::from_code(&c).canonical_form();
            MapClass {
                code: cf.code,
                automorphisms: cf.automorphisms,
            }
        })
        .collect())
}

/// Maps with the fewest edges: brute force over all corner pairings.
fn base_level(target: SurfaceTarget) -> Vec<Box<[u8]>> {
    let e = target.min_edges();
    let n = 4 * e;
    let mut found = BTreeSet::new();
    let mut alpha1 = vec![u32::MAX; n];
    fn matchings(alpha1: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
        let Some(first) = alpha1.iter().position(|&x| x == u32::MAX) else {
            visit(alpha1);
            return;
        };
        for other in first + 1..alpha1.len() {
            if alpha1[other] == u32::MAX {
                alpha1[first] = other as u32;
                alpha1[other] = first as u32;
                matchings(alpha1, visit);
                alpha1[first] = u32::MAX;
                alpha1[other] = u32::MAX;
            }
        }
    }
    matchings(&mut alpha1, &mut |a1| {
        let alpha = (0..n)
            .map(|d| {
                let base = d & !3;
                [(base | ((d & 3) ^ 1)) as u32, a1[d], (base | ((d & 3) ^ 2)) as u32]
            })
            .collect();
        let map = GMap::from_raw(alpha);
        if map.is_connected()
            && map.euler_characteristic() == target.euler_characteristic
            && map.is_orientable() == target.orientable
        {
            found.insert(map.canonical_form().code);
        }
    });
    found.into_iter().collect()
}

/// Children of one map: a new edge across a face (one more face) or a split
/// vertex (one more vertex). `allow(vertices, faces)` is asked before either
/// kind is generated.
fn children(map: &GMap, allow: &impl Fn(usize, usize) -> bool, mut visit: impl FnMut(GMap)) {
    let (v, f) = (map.vertex_count(), map.face_count());
    if allow(v, f + 1) {
        for corners in map.corners_by_face() {
            for i in 0..corners.len() {
                for j in i..corners.len() {
                    visit(map.insert_edge(corners[i], corners[j]));
                }
            }
        }
    }
    if allow(v + 1, f) {
        for corners in map.corners_by_vertex() {
            for i in 0..corners.len() {
                for j in i..corners.len() {
                    visit(map.split_vertex(corners[i], corners[j]));
                }
            }
        }
    }
}

fn next_level(
    level: &[Box<[u8]>],
    allow: &(impl Fn(usize, usize) -> bool + Sync),
    keep: &(dyn Fn(&GMap) -> bool + Sync),
) -> Vec<Box<[u8]>> {
    let merged = level
        .par_iter()
        .fold(HashSet::new, |mut set, code| {
            children(&GMap::from_code(code), allow, |child| {
                if keep(&child) {
                    set.insert(child.canonical_form().code);
                }
            });
            set
        })
        .reduce(HashSet::new, |a, b| if a.len() < b.len() { merge(b, a) } else { merge(a, b) });
    let mut out: Vec<_> = merged.into_iter().collect();
    out.sort_unstable();
    out
}

fn merge(mut a: HashSet<Box<[u8]>>, b: HashSet<Box<[u8]>>) -> HashSet<Box<[u8]>> {
    a.extend(b);
    a
}

/// Primal and dual chain complexes of a map with at most 64 edges, as bit masks.
pub(crate) fn mask_complexes(map: &GMap) -> (MaskComplex, MaskComplex) {
    let inc = incidence_unchecked(&map.to_cellulation());
    let primal = ChainComplex::from_matrices(inc.vertex_edge.clone(), inc.face_edge.clone());
    let dual = ChainComplex::from_matrices(inc.face_edge, inc.vertex_edge);
    (MaskComplex::new(&primal), MaskComplex::new(&dual))
}

/// Enumerates `constraints.edge_count`-edge classes and filters them.
pub fn enumerate(constraints: &EnumerationConstraints, budget: usize) -> Result<Census, SearchError> {
    constraints.validate()?;
    let all = classes(
        constraints.surface,
        constraints.edge_count,
        constraints.vertex_count,
        budget,
    )?;
    let flags = 4 * constraints.edge_count as u64;
    let rooted_maps = all.iter().map(|c| flags / c.automorphisms as u64).sum();
    let graphs: HashSet<Vec<u8>> = all
        .par_iter()
        .map(|c| {
            let cell = c.map().to_cellulation();
            Multigraph::from_edges(cell.vertex_count, &cell.edges).canonical_code()
        })
        .collect();
    let survivors: Vec<Cellulation> = all
        .par_iter()
        .filter_map(|c| {
            let m = c.map();
            constraints.admits(&m).then(|| m.to_cellulation())
        })
        .collect();
    Ok(Census {
        constraints: constraints.clone(),
        stats: CensusStats {
            edges: constraints.edge_count,
            graphs: graphs.len(),
            rooted_maps,
            classes: all.len(),
            survivors: survivors.len(),
        },
        survivors,
    })
}

/// Census of projective-plane cellulations with both systoles at least 3.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NoSmallCodesReport {
    pub censuses: Vec<Census>,
}

impl NoSmallCodesReport {
    pub fn survivors_at(&self, edges: usize) -> Option<usize> {
        self.censuses
            .iter()
            .find(|c| c.stats.edges == edges)
            .map(|c| c.stats.survivors)
    }
}

/// Runs the distance-3 census at 5 and 7 edges, and at 9 when asked. The
/// 9-edge level holds a few million classes: expect minutes of CPU and
/// about a gigabyte of memory.
pub fn verify_no_small_codes(include_nine: bool, budget: usize) -> Result<NoSmallCodesReport, SearchError> {
    let mut edge_counts = vec![5, 7];
    if include_nine {
        edge_counts.push(9);
    }
    let censuses = edge_counts
        .into_iter()
        .map(|e| enumerate(&EnumerationConstraints::projective_plane(e).with_systoles(3, 3), budget))
        .collect::<Result<_, _>>()?;
    Ok(NoSmallCodesReport { censuses })
}
