//! Reconstruction of the nine-edge cellulations `fig2` and `fig3` from
//! their combinatorial constraints.
//!
//! fig3 has four vertices, three bigons and three rank-2 pairs, and turns
//! into the Shor cellulation when two of its vertices are identified and
//! the resulting loop has both ends slid to the other two vertices. fig2 has
//! five vertices, one bigon, one valence-2 vertex, two rank-2 pairs, and
//! turns into fig3 when two of its vertices are identified. The counts alone
//! leave three fig2 classes and two fig3 classes; the chain of moves leaves
//! one of each.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{canonical_code, survivors, EnumerationConstraints, MapClass, SearchError};
use crate::homology;
use crate::invariants::rank_profile;
use crate::stabilizer::build_code;
use crate::surface::catalog;
use crate::surface::gmap::GMap;
use crate::surface::Cellulation;

/// Filter values of a reconstructed figure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FigureCertificate {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub primal_systole: usize,
    pub dual_systole: usize,
    pub bigon_faces: usize,
    pub valence_two_vertices: usize,
    pub rank2_pairs: usize,
    /// Classes meeting the count constraints, before the chain of moves is
    /// required.
    pub matching_counts: usize,
    /// Classes meeting every constraint. More than one means the pinned
    /// choice (the least canonical code) is not forced by the constraints.
    pub candidates: usize,
    pub ambiguous: bool,
    /// fig3: identify two vertices, then slide two edge ends, to reach the
    /// Shor class. fig2: identify two vertices to reach fig3.
    pub reaches_next: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Reconstruction {
    pub fig2: Cellulation,
    pub fig3: Cellulation,
    pub fig2_certificate: FigureCertificate,
    pub fig3_certificate: FigureCertificate,
    /// Every class meeting the constraints, least canonical code first.
    pub fig2_candidates: Vec<Cellulation>,
    pub fig3_candidates: Vec<Cellulation>,
}

/// Every class obtained by joining two corners of distinct vertices across
/// a face and contracting the new edge, which merges the two vertices.
pub fn identify_vertices(map: &GMap) -> Vec<GMap> {
    let vertices = map.vertices();
    let mut out = BTreeSet::new();
    for corners in map.corners_by_face() {
        for (i, &a) in corners.iter().enumerate() {
            for &b in &corners[i + 1..] {
                if vertices.label[a] == vertices.label[b] {
                    continue;
                }
                let chord = map.insert_edge(a, b);
                let new_flag = map.flag_count();
                if let Some(merged) = chord.contract_edge(new_flag) {
                    out.insert(merged.canonical_form().code);
                }
            }
        }
    }
    out.into_iter().map(|c| GMap::from_code(&c)).collect()
}

/// Every class obtained by sliding one edge end along a neighbouring edge.
pub fn slide_edges(map: &GMap) -> Vec<GMap> {
    let out: BTreeSet<Box<[u8]>> = (0..map.flag_count())
        .filter_map(|d| map.slide_edge_end(d))
        .map(|m| m.canonical_form().code)
        .collect();
    out.into_iter().map(|c| GMap::from_code(&c)).collect()
}

/// Does identifying two vertices of `map` and then sliding at most two edge
/// ends reach the class `target`?
pub fn reaches_by_identify_and_slide(map: &GMap, target: &[u8]) -> bool {
    let mut seen = BTreeSet::new();
    let mut frontier: Vec<GMap> = identify_vertices(map);
    for _ in 0..=2 {
        let mut next = Vec::new();
        for m in frontier {
            let code = m.canonical_form().code;
            if &*code == target {
                return true;
            }
            if seen.insert(code) {
                next.extend(slide_edges(&m));
            }
        }
        frontier = next;
    }
    false
}

fn rank2_count(c: &Cellulation) -> Result<usize, SearchError> {
    let code = build_code(c).map_err(|e| SearchError::Code(e.to_string()))?;
    Ok(rank_profile(&code).rank2_pairs().len())
}

fn certificate(
    map: &GMap,
    rank2_pairs: usize,
    matching_counts: usize,
    candidates: usize,
    reaches_next: bool,
) -> Result<FigureCertificate, SearchError> {
    let c = map.to_cellulation();
    let systole = homology::systole(&c).map_err(|e| SearchError::Code(e.to_string()))?;
    let dual = homology::dual_systole(&c).map_err(|e| SearchError::Code(e.to_string()))?;
    let count4 = |s: Vec<usize>| s.into_iter().filter(|&x| x == 4).count();
    Ok(FigureCertificate {
        vertices: map.vertex_count(),
        edges: map.edge_count(),
        faces: map.face_count(),
        primal_systole: systole.length,
        dual_systole: dual.length,
        bigon_faces: count4(map.faces().sizes()),
        valence_two_vertices: count4(map.vertices().sizes()),
        rank2_pairs,
        matching_counts,
        candidates,
        ambiguous: candidates > 1,
        reaches_next,
    })
}

fn filter_by_rank2(classes: Vec<MapClass>, wanted: usize) -> Result<Vec<MapClass>, SearchError> {
    let mut out = Vec::new();
    for c in classes {
        if rank2_count(&c.map().to_cellulation())? == wanted {
            out.push(c);
        }
    }
    Ok(out)
}

/// Searches both figures from their constraints. Takes about a minute in
/// an optimized build.
pub fn reconstruct_figures(budget: usize) -> Result<Reconstruction, SearchError> {
    let shor = canonical_code(&catalog::fig4_shor())?;

    let mut c3 = EnumerationConstraints::projective_plane(9).with_systoles(3, 3).with_vertices(4);
    c3.bigon_faces = Some(3);
    let fig3_counts = filter_by_rank2(survivors(&c3, budget)?, 3)?;
    let fig3_all: Vec<MapClass> = fig3_counts
        .iter()
        .filter(|c| reaches_by_identify_and_slide(&c.map(), &shor))
        .cloned()
        .collect();
    let fig3 = fig3_all.first().ok_or(SearchError::NoSurvivor("fig3"))?;
    let fig3_map = fig3.map();

    let mut c2 = EnumerationConstraints::projective_plane(9).with_systoles(3, 3).with_vertices(5);
    c2.bigon_faces = Some(1);
    c2.valence_two_vertices = Some(1);
    let fig2_counts = filter_by_rank2(survivors(&c2, budget)?, 2)?;
    let fig2_all: Vec<MapClass> = fig2_counts
        .iter()
        .filter(|c| {
            identify_vertices(&c.map())
                .iter()
                .any(|m| m.canonical_form().code == fig3.code)
        })
        .cloned()
        .collect();
    let fig2 = fig2_all.first().ok_or(SearchError::NoSurvivor("fig2"))?;
    let fig2_map = fig2.map();

    Ok(Reconstruction {
        fig2: fig2_map.to_cellulation(),
        fig3: fig3_map.to_cellulation(),
        fig2_certificate: certificate(&fig2_map, 2, fig2_counts.len(), fig2_all.len(), true)?,
        fig3_certificate: certificate(&fig3_map, 3, fig3_counts.len(), fig3_all.len(), true)?,
        fig2_candidates: fig2_all.iter().map(|c| c.map().to_cellulation()).collect(),
        fig3_candidates: fig3_all.iter().map(|c| c.map().to_cellulation()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::validate;

    fn map_of(c: &Cellulation) -> GMap {
        GMap::from_code(&canonical_code(c).unwrap())
    }

    #[test]
    fn slides_keep_the_surface() {
        let shor = map_of(&catalog::fig4_shor());
        let slid = slide_edges(&shor);
        assert!(!slid.is_empty());
        for m in slid {
            let info = validate(&m.to_cellulation()).unwrap();
            assert!(info.is_projective_plane());
            assert_eq!((info.edges, info.vertices), (9, 3));
        }
    }

    #[test]
    fn identification_merges_two_vertices() {
        let fig2 = map_of(&catalog::fig2_nine_edge());
        for m in identify_vertices(&fig2) {
            let info = validate(&m.to_cellulation()).unwrap();
            assert_eq!((info.vertices, info.edges, info.faces), (4, 9, 6));
            assert!(info.is_projective_plane());
        }
    }

    #[test]
    fn catalog_chain() {
        let shor = canonical_code(&catalog::fig4_shor()).unwrap();
        let fig3 = canonical_code(&catalog::fig3_nine_edge()).unwrap();
        let fig2 = map_of(&catalog::fig2_nine_edge());
        assert!(identify_vertices(&fig2).iter().any(|m| m.canonical_form().code == fig3));
        assert!(reaches_by_identify_and_slide(&GMap::from_code(&fig3), &shor));
        // Identification alone does not reach the Shor class.
        assert!(identify_vertices(&GMap::from_code(&fig3))
            .iter()
            .all(|m| m.canonical_form().code != shor));
    }

    #[test]
    fn reconstruction_matches_catalog() {
        let r = reconstruct_figures(super::super::DEFAULT_CLASS_BUDGET).unwrap();
        assert_eq!(canonical_code(&r.fig2).unwrap(), canonical_code(&catalog::fig2_nine_edge()).unwrap());
        assert_eq!(canonical_code(&r.fig3).unwrap(), canonical_code(&catalog::fig3_nine_edge()).unwrap());
        for (cert, v, f, bigons, valence_two, rank2) in
            [(&r.fig2_certificate, 5, 5, 1, 1, 2), (&r.fig3_certificate, 4, 6, 3, 0, 3)]
        {
            assert_eq!((cert.vertices, cert.edges, cert.faces), (v, 9, f));
            assert_eq!((cert.primal_systole, cert.dual_systole), (3, 3));
            assert_eq!((cert.bigon_faces, cert.valence_two_vertices, cert.rank2_pairs), (bigons, valence_two, rank2));
            assert_eq!(cert.candidates, 1);
            assert!(!cert.ambiguous && cert.reaches_next);
        }
        assert_eq!(r.fig2_certificate.matching_counts, 3);
        assert_eq!(r.fig3_certificate.matching_counts, 2);
    }
}
