//! Codes on a rectangle of the square lattice with rectangular holes.
//!
//! Qubits sit on every edge of the region, face operators on every unit
//! square and vertex operators on every vertex. Closing the disk up with one
//! big outer face and gluing a disk into each hole would give a closed
//! surface; the operators left out here are exactly the redundant ones, and
//! each hole carries one logical qubit.

use serde::{Deserialize, Serialize};

use super::{from_checks, CssCode, StabilizerError};
use crate::gf2::{Gf2Matrix, Gf2Vector};

/// A block of missing unit squares, `x..x+width` by `y..y+height`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hole {
    pub x: usize,
    pub y: usize,
    pub width: usize,
    pub height: usize,
}

/// `width x height` unit squares with holes removed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarLattice {
    pub width: usize,
    pub height: usize,
    #[serde(default)]
    pub holes: Vec<Hole>,
}

/// Edge and vertex numbering of a lattice.
#[derive(Clone, Debug)]
pub struct LatticeLayout {
    /// Vertex coordinates, in id order.
    pub vertices: Vec<(usize, usize)>,
    /// Edge endpoints as coordinates, in id order.
    pub edges: Vec<((usize, usize), (usize, usize))>,
    /// Lower-left corner of each kept square, in id order.
    pub squares: Vec<(usize, usize)>,
}

impl PlanarLattice {
    pub fn from_json(text: &str) -> Result<Self, StabilizerError> {
        serde_json::from_str(text).map_err(|e| StabilizerError::Lattice(e.to_string()))
    }

    pub fn validate(&self) -> Result<(), StabilizerError> {
        let bad = |m: String| Err(StabilizerError::Lattice(m));
        if self.width == 0 || self.height == 0 {
            return bad("lattice must have positive width and height".into());
        }
        for (i, h) in self.holes.iter().enumerate() {
            if h.width == 0 || h.height == 0 {
                return bad(format!("hole {i} is empty"));
            }
            if h.x == 0 || h.y == 0 || h.x + h.width >= self.width || h.y + h.height >= self.height {
                return bad(format!("hole {i} touches the outer boundary"));
            }
        }
        for (i, a) in self.holes.iter().enumerate() {
            for (j, b) in self.holes.iter().enumerate().skip(i + 1) {
                // Closed vertex ranges must be disjoint in some direction.
                let apart_x = a.x + a.width < b.x || b.x + b.width < a.x;
                let apart_y = a.y + a.height < b.y || b.y + b.height < a.y;
                if !apart_x && !apart_y {
                    return bad(format!("holes {i} and {j} overlap or touch"));
                }
            }
        }
        Ok(())
    }

    fn has_square(&self, x: isize, y: isize) -> bool {
        if x < 0 || y < 0 || x as usize >= self.width || y as usize >= self.height {
            return false;
        }
        let (x, y) = (x as usize, y as usize);
        !self
            .holes
            .iter()
            .any(|h| (h.x..h.x + h.width).contains(&x) && (h.y..h.y + h.height).contains(&y))
    }

    /// Kept squares, edges and vertices, each in row-major order.
    pub fn layout(&self) -> LatticeLayout {
        let (w, h) = (self.width, self.height);
        let squares: Vec<(usize, usize)> = (0..h)
            .flat_map(|y| (0..w).map(move |x| (x, y)))
            .filter(|&(x, y)| self.has_square(x as isize, y as isize))
            .collect();
        let mut edges = Vec::new();
        for y in 0..=h {
            for x in 0..w {
                let (xi, yi) = (x as isize, y as isize);
                if self.has_square(xi, yi) || self.has_square(xi, yi - 1) {
                    edges.push(((x, y), (x + 1, y)));
                }
            }
            if y < h {
                for x in 0..=w {
                    let (xi, yi) = (x as isize, y as isize);
                    if self.has_square(xi, yi) || self.has_square(xi - 1, yi) {
                        edges.push(((x, y), (x, y + 1)));
                    }
                }
            }
        }
        let mut used = vec![false; (w + 1) * (h + 1)];
        for &(a, b) in &edges {
            used[a.1 * (w + 1) + a.0] = true;
            used[b.1 * (w + 1) + b.0] = true;
        }
        let vertices = (0..=h)
            .flat_map(|y| (0..=w).map(move |x| (x, y)))
            .filter(|&(x, y)| used[y * (w + 1) + x])
            .collect();
        LatticeLayout {
            vertices,
            edges,
            squares,
        }
    }
}

/// Check matrices of the lattice: squares as X checks, vertices as Z checks.
pub fn lattice_matrices(lattice: &PlanarLattice) -> Result<(Gf2Matrix, Gf2Matrix), StabilizerError> {
    lattice.validate()?;
    let layout = lattice.layout();
    let n = layout.edges.len();
    let index: std::collections::HashMap<_, _> =
        layout.edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let hx = layout
        .squares
        .iter()
        .map(|&(x, y)| {
            let sides = [
                ((x, y), (x + 1, y)),
                ((x, y + 1), (x + 1, y + 1)),
                ((x, y), (x, y + 1)),
                ((x + 1, y), (x + 1, y + 1)),
            ];
            Gf2Vector::from_indices(n, sides.iter().map(|s| index[s]))
        })
        .collect();
    let mut incident = vec![Vec::new(); layout.vertices.len()];
    let vindex: std::collections::HashMap<_, _> =
        layout.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    for (e, &(a, b)) in layout.edges.iter().enumerate() {
        incident[vindex[&a]].push(e);
        incident[vindex[&b]].push(e);
    }
    let hz = incident.into_iter().map(|es| Gf2Vector::from_indices(n, es)).collect();
    Ok((Gf2Matrix::from_rows(n, hx)?, Gf2Matrix::from_rows(n, hz)?))
}

pub fn build_punctured_disk_code(lattice: &PlanarLattice) -> Result<CssCode, StabilizerError> {
    let (hx, hz) = lattice_matrices(lattice)?;
    from_checks(hx, hz)
}

/// Two 2x2 holes in a 22x14 patch, with six squares between the holes and
/// from each hole to the edge. A phase logical runs from the outer boundary
/// to a hole (6 + 1 edges); a bit-flip logical encircles a hole (8 edges).
pub fn planar_two_holes() -> PlanarLattice {
    PlanarLattice {
        width: 22,
        height: 14,
        holes: vec![
            Hole {
                x: 6,
                y: 6,
                width: 2,
                height: 2,
            },
            Hole {
                x: 14,
                y: 6,
                width: 2,
                height: 2,
            },
        ],
    }
}
