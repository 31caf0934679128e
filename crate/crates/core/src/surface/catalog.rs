//! Named cellulations used throughout the crate and its tests.

use std::collections::HashMap;

use super::{Cellulation, SurfaceError, Traversal};

/// Names accepted by [`cellulation`]. `toric(m,n)` takes two positive sizes.
pub const NAMES: &[&str] = &[
    "rp2_minimal",
    "fig1_hemi_icosahedron",
    "fig2_nine_edge",
    "fig3_nine_edge",
    "fig4_shor",
    "toric(m,n)",
    "cube_sphere",
];

/// Looks up a closed-surface catalog entry by name.
pub fn cellulation(name: &str) -> Result<Cellulation, SurfaceError> {
    let unknown = || SurfaceError::UnknownCatalogEntry(name.to_string());
    match name {
        "rp2_minimal" => Ok(rp2_minimal()),
        "fig1_hemi_icosahedron" => Ok(fig1_hemi_icosahedron()),
        "fig2_nine_edge" => Ok(fig2_nine_edge()),
        "fig3_nine_edge" => Ok(fig3_nine_edge()),
        "fig4_shor" => Ok(fig4_shor()),
        "cube_sphere" => Ok(cube_sphere()),
        _ => {
            let (m, n) = parse_toric(name).ok_or_else(unknown)?;
            Ok(toric(m, n))
        }
    }
}

/// Accepts `toric(3,3)`, `toric:3,3` and `toric:3x3`.
fn parse_toric(name: &str) -> Option<(usize, usize)> {
    let inner = name
        .strip_prefix("toric(")
        .and_then(|s| s.strip_suffix(')'))
        .or_else(|| name.strip_prefix("toric:"))?;
    let (a, b) = inner.split_once([',', 'x'])?;
    let m: usize = a.trim().parse().ok()?;
    let n: usize = b.trim().parse().ok()?;
    (m >= 1 && n >= 1).then_some((m, n))
}

/// Every fixed closed-surface entry, plus `toric(3,3)`.
pub fn closed_entries() -> Vec<(String, Cellulation)> {
    vec![
        ("rp2_minimal".into(), rp2_minimal()),
        ("fig1_hemi_icosahedron".into(), fig1_hemi_icosahedron()),
        ("fig2_nine_edge".into(), fig2_nine_edge()),
        ("fig3_nine_edge".into(), fig3_nine_edge()),
        ("fig4_shor".into(), fig4_shor()),
        ("toric(3,3)".into(), toric(3, 3)),
        ("cube_sphere".into(), cube_sphere()),
    ]
}

/// One vertex, one loop, one face running around the loop twice in the
/// same direction.
pub fn rp2_minimal() -> Cellulation {
    Cellulation::from_signed(1, vec![(0, 0)], &[&[(0, 1), (0, 1)]])
}

/// Builds faces of a cellulation without parallel edges from vertex cycles.
fn from_vertex_cycles(vertex_count: usize, edges: Vec<(usize, usize)>, cycles: &[&[usize]]) -> Cellulation {
    let index: HashMap<(usize, usize), usize> = edges
        .iter()
        .enumerate()
        .flat_map(|(i, &(a, b))| [((a, b), i), ((b, a), i)])
        .collect();
    let faces = cycles
        .iter()
        .map(|cyc| {
            (0..cyc.len())
                .map(|i| {
                    let (a, b) = (cyc[i], cyc[(i + 1) % cyc.len()]);
                    let e = index[&(a, b)];
                    Traversal::new(e, edges[e] == (a, b))
                })
                .collect()
        })
        .collect();
    Cellulation::new(vertex_count, edges, faces)
}

/// Antipodal quotient of the icosahedron: the six-vertex triangulation of
/// the projective plane whose graph is `K6`.
pub fn fig1_hemi_icosahedron() -> Cellulation {
    let edges: Vec<(usize, usize)> = (0..6).flat_map(|a| (a + 1..6).map(move |b| (a, b))).collect();
    from_vertex_cycles(
        6,
        edges,
        &[
            &[0, 1, 2],
            &[0, 2, 3],
            &[0, 3, 4],
            &[0, 4, 5],
            &[0, 5, 1],
            &[1, 2, 4],
            &[2, 3, 5],
            &[3, 4, 1],
            &[4, 5, 2],
            &[5, 1, 3],
        ],
    )
}

/// Vertices a, b, c; edges 0-2 join a-b, 3-5 join b-c, 6-8 join c-a. Six
/// bigons pair consecutive parallel edges and one hexagon runs
/// a-b-c-a-b-c along edges 0, 3, 6, 2, 5, 8.
pub fn fig4_shor() -> Cellulation {
    let edges = vec![(0, 1), (0, 1), (0, 1), (1, 2), (1, 2), (1, 2), (2, 0), (2, 0), (2, 0)];
    Cellulation::from_signed(
        3,
        edges,
        &[
            &[(0, 1), (1, -1)],
            &[(1, 1), (2, -1)],
            &[(3, 1), (4, -1)],
            &[(4, 1), (5, -1)],
            &[(6, 1), (7, -1)],
            &[(7, 1), (8, -1)],
            &[(0, 1), (3, 1), (6, 1), (2, 1), (5, 1), (8, 1)],
        ],
    )
}

/// Nine-edge projective plane with five vertices, one bigon and one
/// valence-2 vertex. Found by [`crate::search::reconstruct_figures`] and
/// frozen here; the search tests re-derive it.
pub fn fig2_nine_edge() -> Cellulation {
    Cellulation::from_json(FIG2_JSON).expect("frozen catalog entry parses")
}

/// Nine-edge projective plane with four vertices and three bigons, obtained
/// from [`fig2_nine_edge`] by identifying two vertices. Identifying two more
/// and sliding the ends of the loop this creates gives [`fig4_shor`].
pub fn fig3_nine_edge() -> Cellulation {
    Cellulation::from_json(FIG3_JSON).expect("frozen catalog entry parses")
}

const FIG2_JSON: &str = r#"{"vertices":5,"edges":[[0,1],[0,2],[1,3],[1,4],[2,3],[1,2],[2,4],[3,4],[1,2]],"faces":[[[0,1],[2,1],[4,-1],[1,-1]],[[0,1],[3,1],[6,-1],[1,-1]],[[2,1],[7,1],[6,-1],[5,-1]],[[3,1],[7,-1],[4,-1],[8,-1]],[[5,1],[8,-1]]]}"#;
const FIG3_JSON: &str = r#"{"vertices":4,"edges":[[0,1],[0,2],[1,3],[0,3],[1,2],[2,3],[1,3],[2,1],[3,2]],"faces":[[[0,1],[2,1],[5,-1],[1,-1]],[[0,1],[4,1],[8,-1],[3,-1]],[[1,1],[7,1],[6,1],[3,-1]],[[2,1],[6,-1]],[[4,1],[7,1]],[[5,1],[8,1]]]}"#;

/// Square `m x n` lattice on the torus. Vertex `(i,j)` is `i*n + j`;
/// horizontal edge `(i,j)->(i,j+1)` is `i*n + j`, vertical edge
/// `(i,j)->(i+1,j)` is `m*n + i*n + j`; face `(i,j)` is the square with
/// lower-left corner `(i,j)`.
pub fn toric(m: usize, n: usize) -> Cellulation {
    assert!(m >= 1 && n >= 1);
    let vid = |i: usize, j: usize| (i % m) * n + (j % n);
    let h = |i: usize, j: usize| (i % m) * n + (j % n);
    let v = |i: usize, j: usize| m * n + (i % m) * n + (j % n);
    let mut edges = Vec::with_capacity(2 * m * n);
    for i in 0..m {
        for j in 0..n {
            edges.push((vid(i, j), vid(i, j + 1)));
        }
    }
    for i in 0..m {
        for j in 0..n {
            edges.push((vid(i, j), vid(i + 1, j)));
        }
    }
    let mut faces = Vec::with_capacity(m * n);
    for i in 0..m {
        for j in 0..n {
            faces.push(vec![
                Traversal::new(h(i, j), true),
                Traversal::new(v(i, j + 1), true),
                Traversal::new(h(i + 1, j), false),
                Traversal::new(v(i, j), false),
            ]);
        }
    }
    Cellulation::new(m * n, edges, faces)
}

/// Boundary of the cube; vertex `i` has coordinates given by its bits.
pub fn cube_sphere() -> Cellulation {
    let mut edges = Vec::new();
    for a in 0..8usize {
        for bit in 0..3 {
            let b = a | (1 << bit);
            if b != a {
                edges.push((a, b));
            }
        }
    }
    from_vertex_cycles(
        8,
        edges,
        &[
            &[0, 1, 3, 2],
            &[4, 6, 7, 5],
            &[0, 4, 5, 1],
            &[2, 3, 7, 6],
            &[0, 2, 6, 4],
            &[1, 5, 7, 3],
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::validate;

    #[test]
    fn lookup_by_name() {
        assert_eq!(cellulation("rp2_minimal").unwrap(), rp2_minimal());
        assert_eq!(cellulation("toric(3,3)").unwrap(), toric(3, 3));
        assert_eq!(cellulation("toric:2x4").unwrap(), toric(2, 4));
        assert!(matches!(
            cellulation("toric(0,3)"),
            Err(SurfaceError::UnknownCatalogEntry(_))
        ));
        assert!(matches!(cellulation("klein"), Err(SurfaceError::UnknownCatalogEntry(_))));
    }

    #[test]
    fn shor_is_projective_plane() {
        let info = validate(&fig4_shor()).unwrap();
        assert_eq!(info.euler_characteristic, 1);
        assert!(!info.orientable);
    }

    #[test]
    fn hemi_icosahedron_is_projective_plane() {
        let info = validate(&fig1_hemi_icosahedron()).unwrap();
        assert_eq!((info.vertices, info.edges, info.faces), (6, 15, 10));
        assert!(info.is_projective_plane());
    }

    #[test]
    fn toric_counts() {
        let info = validate(&toric(3, 3)).unwrap();
        assert_eq!((info.vertices, info.edges, info.faces), (9, 18, 9));
        assert_eq!(info.euler_characteristic, 0);
        assert!(info.orientable);
        for (m, n) in [(1, 1), (1, 3), (2, 2), (4, 5)] {
            let info = validate(&toric(m, n)).unwrap();
            assert_eq!(info.surface_name, "torus", "{m}x{n}");
        }
    }

    #[test]
    fn cube_is_sphere() {
        let info = validate(&cube_sphere()).unwrap();
        assert_eq!(info.surface_name, "sphere");
        assert_eq!(info.euler_characteristic, 2);
    }

    #[test]
    fn every_entry_validates() {
        for (name, c) in closed_entries() {
            let info = validate(&c).unwrap_or_else(|e| panic!("{name}: {e}"));
            if name.starts_with("fig") || name.starts_with("rp2") {
                assert!(info.is_projective_plane(), "{name}");
            }
        }
    }
}
