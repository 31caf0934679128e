//! Z2 homology of a cellulation and its essential cycles.
//!
//! A [`ChainComplex`] only needs two matrices over the edge space: one whose
//! kernel is the cycle space and one whose row space is the boundary space.
//! The primal complex uses (vertex-edge, face-edge); the dual complex swaps
//! them, so dual systoles need no explicit dual cellulation.

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::gf2::{binomial, Echelon, Gf2Error, Gf2Matrix, Gf2Vector, DEFAULT_COSET_BUDGET};
use crate::surface::{incidence_matrices, Cellulation, SurfaceError};

/// Above this many edges the systole search switches from weight-ordered
/// enumeration to coset enumeration.
pub const WEIGHT_ORDERED_MAX_EDGES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error("chain of length {found} does not match the {expected} edges")]
    LengthMismatch { expected: usize, found: usize },
    #[error("chain has nonzero boundary")]
    NotACycle,
    #[error("first homology is trivial; there is no essential cycle")]
    TrivialHomology,
    #[error("weight-ordered search would visit more than {budget} chains")]
    BudgetExceeded { budget: u64 },
}

/// Shortest essential cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Systole {
    pub length: usize,
    #[serde(serialize_with = "serialize_support")]
    pub witness: Gf2Vector,
}

pub(crate) fn serialize_support<S: serde::Serializer>(v: &Gf2Vector, s: S) -> Result<S::Ok, S::Error> {
    v.support().serialize(s)
}

/// Minimum-weight representative of one nonzero homology class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassMinimum {
    /// Normal form of the class (the representative reduced against the
    /// boundary echelon); equal keys mean equal classes.
    pub key: Gf2Vector,
    pub length: usize,
    pub witness: Gf2Vector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologySummary {
    pub z1_dim: usize,
    pub b1_dim: usize,
    pub h1_dim: usize,
    /// `None` when `h1_dim == 0` (infinite systole).
    pub primal_systole: Option<Systole>,
    pub dual_systole: Option<Systole>,
}

#[derive(Debug, Clone)]
pub struct ChainComplex {
    edges: usize,
    cycle_checks: Gf2Matrix,
    boundaries: Gf2Matrix,
    boundary_echelon: Echelon,
}

impl ChainComplex {
    /// `cycle_checks` has kernel Z1, `boundaries` has row space B1; both
    /// must have one column per edge.
    pub fn from_matrices(cycle_checks: Gf2Matrix, boundaries: Gf2Matrix) -> Self {
        assert_eq!(cycle_checks.col_count(), boundaries.col_count());
        let boundary_echelon = boundaries.echelon();
        Self {
            edges: boundaries.col_count(),
            cycle_checks,
            boundaries,
            boundary_echelon,
        }
    }

    pub fn primal(c: &Cellulation) -> Result<Self, HomologyError> {
        let inc = incidence_matrices(c)?;
        Ok(Self::from_matrices(inc.vertex_edge, inc.face_edge))
    }

    /// Homology of the dual cellulation, indexed by the same edges.
    pub fn dual_of(c: &Cellulation) -> Result<Self, HomologyError> {
        let inc = incidence_matrices(c)?;
        Ok(Self::from_matrices(inc.face_edge, inc.vertex_edge))
    }

    /// The complex with the roles of the two matrices exchanged.
    pub fn transposed(&self) -> Self {
        Self::from_matrices(self.boundaries.clone(), self.cycle_checks.clone())
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn cycle_checks(&self) -> &Gf2Matrix {
        &self.cycle_checks
    }

    pub fn boundaries(&self) -> &Gf2Matrix {
        &self.boundaries
    }

    pub fn z1_dim(&self) -> usize {
        self.edges - self.cycle_checks.rank()
    }

    pub fn b1_dim(&self) -> usize {
        self.boundary_echelon.rank()
    }

    pub fn h1_dim(&self) -> usize {
        self.z1_dim() - self.b1_dim()
    }

    fn check_len(&self, chain: &Gf2Vector) -> Result<(), HomologyError> {
        if chain.len() != self.edges {
            return Err(HomologyError::LengthMismatch {
                expected: self.edges,
                found: chain.len(),
            });
        }
        Ok(())
    }

    pub fn is_cycle(&self, chain: &Gf2Vector) -> Result<bool, HomologyError> {
        self.check_len(chain)?;
        Ok(self.cycle_checks.mul_vec(chain)?.is_zero())
    }

    pub fn is_boundary(&self, chain: &Gf2Vector) -> Result<bool, HomologyError> {
        self.check_len(chain)?;
        Ok(self.boundary_echelon.contains(chain))
    }

    /// A cycle is essential when it is not a boundary.
    pub fn is_essential(&self, chain: &Gf2Vector) -> Result<bool, HomologyError> {
        if !self.is_cycle(chain)? {
            return Err(HomologyError::NotACycle);
        }
        Ok(!self.boundary_echelon.contains(chain))
    }

    /// Canonical representative of the homology class of a cycle.
    pub fn class_key(&self, cycle: &Gf2Vector) -> Gf2Vector {
        let mut v = cycle.clone();
        self.boundary_echelon.reduce(&mut v);
        v
    }

    /// One cycle per basis element of H1.
    pub fn homology_basis(&self) -> Vec<Gf2Vector> {
        let mut ech = self.boundary_echelon.clone();
        self.cycle_checks
            .kernel_basis()
            .into_iter()
            .filter(|z| ech.insert(z.clone()))
            .collect()
    }

    /// Shortest essential cycle, choosing the strategy by size.
    pub fn systole(&self, budget: u64) -> Result<Systole, HomologyError> {
        if self.edges <= WEIGHT_ORDERED_MAX_EDGES {
            self.systole_by_weight(budget)
        } else {
            self.systole_by_cosets(budget)
        }
    }

    /// Enumerates chains by increasing weight, in support-lexicographic order
    /// within a weight, and stops at the first essential cycle.
    pub fn systole_by_weight(&self, budget: u64) -> Result<Systole, HomologyError> {
        if self.h1_dim() == 0 {
            return Err(HomologyError::TrivialHomology);
        }
        let mut found = None;
        self.visit_by_weight(budget, |mask_or_vec| {
            found = Some(mask_or_vec.clone());
            false
        })?;
        let witness = found.expect("nontrivial homology has an essential cycle");
        Ok(Systole {
            length: witness.weight(),
            witness,
        })
    }

    /// Minimum over the nontrivial homology classes of the exhaustive coset
    /// minimum of `class + B1`.
    pub fn systole_by_cosets(&self, budget: u64) -> Result<Systole, HomologyError> {
        let minima = self.class_minima_by_cosets(budget)?;
        let best = minima.into_iter().next().ok_or(HomologyError::TrivialHomology)?;
        Ok(Systole {
            length: best.length,
            witness: best.witness,
        })
    }

    /// Minimum-weight representative of every nonzero class, sorted by
    /// length then support.
    pub fn class_minima(&self, budget: u64) -> Result<Vec<ClassMinimum>, HomologyError> {
        if self.edges <= WEIGHT_ORDERED_MAX_EDGES {
            self.class_minima_by_weight(budget)
        } else {
            self.class_minima_by_cosets(budget)
        }
    }

    pub fn class_minima_by_weight(&self, budget: u64) -> Result<Vec<ClassMinimum>, HomologyError> {
        let h = self.h1_dim();
        if h == 0 {
            return Ok(Vec::new());
        }
        let wanted = (1usize << h) - 1;
        let mut seen: HashMap<Gf2Vector, ClassMinimum> = HashMap::new();
        self.visit_by_weight(budget, |c| {
            let key = self.class_key(c);
            seen.entry(key.clone()).or_insert_with(|| ClassMinimum {
                key,
                length: c.weight(),
                witness: c.clone(),
            });
            seen.len() < wanted
        })?;
        Ok(sorted(seen.into_values().collect()))
    }

    pub fn class_minima_by_cosets(&self, budget: u64) -> Result<Vec<ClassMinimum>, HomologyError> {
        let basis = self.homology_basis();
        let h = basis.len();
        if h == 0 {
            return Ok(Vec::new());
        }
        let b1 = self.boundary_echelon.basis();
        let mut out = Vec::with_capacity((1 << h) - 1);
        for combo in 1u64..(1u64 << h) {
            let mut offset = Gf2Vector::zeros(self.edges);
            for (i, z) in basis.iter().enumerate() {
                if combo >> i & 1 == 1 {
                    offset.xor_assign(z);
                }
            }
            let (length, witness) = crate::gf2::min_weight_in_coset(b1, &offset, budget)?;
            out.push(ClassMinimum {
                key: self.class_key(&offset),
                length,
                witness,
            });
        }
        Ok(sorted(out))
    }

    /// Calls `visit` on every essential cycle in weight-then-lexicographic
    /// order until it returns `false`.
    fn visit_by_weight(
        &self,
        budget: u64,
        mut visit: impl FnMut(&Gf2Vector) -> bool,
    ) -> Result<(), HomologyError> {
        let n = self.edges;
        if n <= 64 {
            let masks = MaskComplex::new(self);
            let mut spent = 0u64;
            for w in 1..=n {
                spent = spent.saturating_add(binomial(n, w));
                if spent > budget {
                    return Err(HomologyError::BudgetExceeded { budget });
                }
                let mut stop = false;
                for_each_mask_of_weight(n, w, |m| {
                    if masks.is_essential_cycle(m) && !visit(&Gf2Vector::from_mask(n, m)) {
                        stop = true;
                    }
                    !stop
                });
                if stop {
                    return Ok(());
                }
            }
            return Ok(());
        }
        let mut spent = 0u64;
        for w in 1..=n {
            spent = spent.saturating_add(binomial(n, w));
            if spent > budget {
                return Err(HomologyError::BudgetExceeded { budget });
            }
            for idx in crate::gf2::Combinations::new(n, w) {
                let v = Gf2Vector::from_indices(n, idx);
                if self.cycle_checks.mul_vec(&v)?.is_zero()
                    && !self.boundary_echelon.contains(&v)
                    && !visit(&v)
                {
                    return Ok(());
                }
            }
        }
        Ok(())
    }
}

fn sorted(mut v: Vec<ClassMinimum>) -> Vec<ClassMinimum> {
    v.sort_by(|a, b| a.length.cmp(&b.length).then_with(|| a.witness.support_cmp(&b.witness)));
    v
}

/// Word-sized copy of a complex with at most 64 edges.
pub(crate) struct MaskComplex {
    checks: Vec<u64>,
    boundary: Vec<(u64, u64)>,
}

impl MaskComplex {
    pub(crate) fn new(c: &ChainComplex) -> Self {
        assert!(c.edges <= 64);
        let checks = c
            .cycle_checks
            .rows()
            .iter()
            .map(Gf2Vector::as_mask)
            .filter(|&m| m != 0)
            .collect();
        let boundary = c
            .boundary_echelon
            .basis()
            .iter()
            .zip(c.boundary_echelon.pivots())
            .map(|(row, &p)| (1u64 << p, row.as_mask()))
            .collect();
        Self { checks, boundary }
    }

    #[inline]
    pub(crate) fn is_cycle(&self, m: u64) -> bool {
        self.checks.iter().all(|&r| (r & m).count_ones() % 2 == 0)
    }

    #[inline]
    pub(crate) fn is_boundary(&self, mut m: u64) -> bool {
        for &(p, row) in &self.boundary {
            if m & p != 0 {
                m ^= row;
            }
        }
        m == 0
    }

    #[inline]
    pub(crate) fn is_essential_cycle(&self, m: u64) -> bool {
        self.is_cycle(m) && !self.is_boundary(m)
    }

    /// Is there an essential cycle of weight strictly below `bound`?
    pub(crate) fn has_essential_below(&self, n: usize, bound: usize) -> bool {
        for w in 1..bound.min(n + 1) {
            let mut hit = false;
            for_each_mask_of_weight(n, w, |m| {
                hit = self.is_essential_cycle(m);
                !hit
            });
            if hit {
                return true;
            }
        }
        false
    }
}

/// Visits every `w`-subset of `0..n` as a bit mask, in support-lexicographic
/// order, while `f` returns `true`.
pub(crate) fn for_each_mask_of_weight(n: usize, w: usize, mut f: impl FnMut(u64) -> bool) {
    if w > n {
        return;
    }
    let mut idx: Vec<usize> = (0..w).collect();
    loop {
        let m = idx.iter().fold(0u64, |acc, &i| acc | 1 << i);
        if !f(m) {
            return;
        }
        let mut i = w;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - w + i {
                idx[i] += 1;
                for j in i + 1..w {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

pub fn h1_dim(c: &Cellulation) -> Result<usize, HomologyError> {
    Ok(ChainComplex::primal(c)?.h1_dim())
}

pub fn is_essential(c: &Cellulation, chain: &Gf2Vector) -> Result<bool, HomologyError> {
    ChainComplex::primal(c)?.is_essential(chain)
}

/// Shortest essential cycle of the cellulation.
pub fn systole(c: &Cellulation) -> Result<Systole, HomologyError> {
    ChainComplex::primal(c)?.systole(DEFAULT_COSET_BUDGET)
}

/// Shortest essential cycle of the dual cellulation, as a set of edges.
pub fn dual_systole(c: &Cellulation) -> Result<Systole, HomologyError> {
    ChainComplex::dual_of(c)?.systole(DEFAULT_COSET_BUDGET)
}

pub fn summary(c: &Cellulation) -> Result<HomologySummary, HomologyError> {
    let primal = ChainComplex::primal(c)?;
    let dual = primal.transposed();
    let optional = |cx: &ChainComplex| match cx.systole(DEFAULT_COSET_BUDGET) {
        Ok(s) => Ok(Some(s)),
        Err(HomologyError::TrivialHomology) => Ok(None),
        Err(e) => Err(e),
    };
    Ok(HomologySummary {
        z1_dim: primal.z1_dim(),
        b1_dim: primal.b1_dim(),
        h1_dim: primal.h1_dim(),
        primal_systole: optional(&primal)?,
        dual_systole: optional(&dual)?,
    })
}

/// Orders systoles by length then witness support.
pub fn systole_cmp(a: &Systole, b: &Systole) -> Ordering {
    a.length.cmp(&b.length).then_with(|| a.witness.support_cmp(&b.witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{catalog, dual};

    #[test]
    fn h1_of_catalog() {
        assert_eq!(h1_dim(&catalog::cube_sphere()).unwrap(), 0);
        assert_eq!(h1_dim(&catalog::toric(3, 3)).unwrap(), 2);
        for name in ["rp2_minimal", "fig1_hemi_icosahedron", "fig2_nine_edge", "fig3_nine_edge", "fig4_shor"] {
            assert_eq!(h1_dim(&catalog::cellulation(name).unwrap()).unwrap(), 1, "{name}");
        }
    }

    #[test]
    fn essential_chains_in_shor() {
        let c = catalog::fig4_shor();
        assert!(!is_essential(&c, &Gf2Vector::zeros(9)).unwrap());
        let inc = crate::surface::incidence_matrices(&c).unwrap();
        for row in inc.face_edge.rows() {
            assert!(!is_essential(&c, row).unwrap());
        }
        assert!(is_essential(&c, &Gf2Vector::from_indices(9, [0, 3, 6])).unwrap());
        assert_eq!(
            is_essential(&c, &Gf2Vector::from_indices(9, [0])),
            Err(HomologyError::NotACycle)
        );
    }

    #[test]
    fn catalog_systoles() {
        let h = catalog::fig1_hemi_icosahedron();
        assert_eq!(systole(&h).unwrap().length, 3);
        assert_eq!(systole(&dual(&h).unwrap()).unwrap().length, 5);
        assert_eq!(dual_systole(&h).unwrap().length, 5);
        assert_eq!(systole(&catalog::rp2_minimal()).unwrap().length, 1);
        assert_eq!(dual_systole(&catalog::fig4_shor()).unwrap().length, 3);
        assert_eq!(dual_systole(&catalog::fig2_nine_edge()).unwrap().length, 3);
        assert_eq!(dual_systole(&catalog::toric(3, 3)).unwrap().length, 3);
        assert_eq!(
            systole(&catalog::cube_sphere()),
            Err(HomologyError::TrivialHomology)
        );
    }

    #[test]
    fn shor_systole_witness_is_least_triangle() {
        let s = systole(&catalog::fig4_shor()).unwrap();
        assert_eq!(s.witness.support(), vec![0, 3, 6]);
    }

    #[test]
    fn strategies_agree() {
        for (name, c) in catalog::closed_entries() {
            for cx in [ChainComplex::primal(&c).unwrap(), ChainComplex::dual_of(&c).unwrap()] {
                if cx.h1_dim() == 0 {
                    continue;
                }
                let a = cx.systole_by_weight(DEFAULT_COSET_BUDGET).unwrap();
                let b = cx.systole_by_cosets(DEFAULT_COSET_BUDGET).unwrap();
                assert_eq!(a, b, "{name}");
                let ma = cx.class_minima_by_weight(DEFAULT_COSET_BUDGET).unwrap();
                let mb = cx.class_minima_by_cosets(DEFAULT_COSET_BUDGET).unwrap();
                assert_eq!(ma, mb, "{name}");
            }
        }
    }

    #[test]
    fn dual_systole_matches_systole_of_dual() {
        for (name, c) in catalog::closed_entries() {
            let d = dual(&c).unwrap();
            assert_eq!(
                dual_systole(&c).ok().map(|s| s.length),
                systole(&d).ok().map(|s| s.length),
                "{name}"
            );
        }
    }

    /// No cycle lighter than the systole is essential (full enumeration).
    #[test]
    fn systole_is_minimal_by_enumeration() {
        for (name, c) in catalog::closed_entries() {
            let cx = ChainComplex::primal(&c).unwrap();
            if cx.h1_dim() == 0 {
                continue;
            }
            let s = cx.systole(DEFAULT_COSET_BUDGET).unwrap();
            assert!(cx.is_essential(&s.witness).unwrap(), "{name}");
            let n = cx.edge_count();
            for m in 1u64..(1u64 << n) {
                if (m.count_ones() as usize) < s.length {
                    let v = Gf2Vector::from_mask(n, m);
                    if cx.is_cycle(&v).unwrap() {
                        assert!(!cx.is_essential(&v).unwrap(), "{name}: {v}");
                    }
                }
            }
        }
    }

    #[test]
    fn boundaries_do_not_change_essentiality() {
        for (name, c) in catalog::closed_entries() {
            let cx = ChainComplex::primal(&c).unwrap();
            let Ok(s) = cx.systole(DEFAULT_COSET_BUDGET) else { continue };
            for b in cx.boundaries().rows() {
                assert!(cx.is_essential(&s.witness.xor(b)).unwrap(), "{name}");
            }
        }
    }

    #[test]
    fn summary_reports_infinite_systole_as_none() {
        let s = summary(&catalog::cube_sphere()).unwrap();
        assert_eq!(s.h1_dim, 0);
        assert!(s.primal_systole.is_none() && s.dual_systole.is_none());
        let t = summary(&catalog::toric(3, 3)).unwrap();
        assert_eq!((t.z1_dim, t.b1_dim, t.h1_dim), (10, 8, 2));
    }

    #[test]
    fn mask_walk_is_lexicographic() {
        let mut seen = Vec::new();
        for_each_mask_of_weight(5, 3, |m| {
            seen.push(m);
            true
        });
        assert_eq!(seen.len(), 10);
        assert_eq!(seen[0], 0b00111);
        assert_eq!(seen[1], 0b01011);
        assert_eq!(seen[2], 0b10011);
        assert_eq!(seen[9], 0b11100);
    }
}
