//! Dense bit-packed linear algebra over GF(2).
//!
//! Vectors store bit `i` in word `i / 64` at position `i % 64`. Matrices are
//! row-major lists of vectors. Everything here is schoolbook elimination with
//! word-parallel XOR, which is plenty for complexes with a few hundred cells.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

/// Default cap on the number of subspace combinations an exhaustive coset
/// search may visit.
pub const DEFAULT_COSET_BUDGET: u64 = 1 << 28;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("search budget exceeded: 2^{dimension} combinations required, budget is {budget}")]
    BudgetExceeded { dimension: usize, budget: u64 },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Vector {
    len: usize,
    words: Vec<u64>,
}

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

impl Gf2Vector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; word_count(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    /// Vector with ones exactly at `indices`. Repeated indices cancel.
    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.flip(i);
        }
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector of length `len <= 64` from the low bits of `mask`.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= 64);
        let mut v = Self::zeros(len);
        if len > 0 {
            let keep = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
            v.words[0] = mask & keep;
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Low 64 bits; only meaningful for vectors of length at most 64.
    pub fn as_mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let bit = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= bit;
        } else {
            self.words[i / 64] &= !bit;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Indices of the set bits, increasing.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight());
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(wi * 64 + b);
                w &= w - 1;
            }
        }
        out
    }

    fn check_len(&self, other: &Self) -> Result<(), Gf2Error> {
        if self.len != other.len {
            return Err(Gf2Error::LengthMismatch {
                expected: self.len,
                found: other.len,
            });
        }
        Ok(())
    }

    /// In-place addition. Panics on a length mismatch.
    #[inline]
    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "xor of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn try_xor(&self, other: &Self) -> Result<Self, Gf2Error> {
        self.check_len(other)?;
        let mut out = self.clone();
        out.xor_assign(other);
        Ok(out)
    }

    pub fn xor(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Dot product over GF(2). Panics on a length mismatch.
    #[inline]
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "dot of vectors with different lengths");
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    /// Lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// Copy keeping only the positions listed in `columns`, in that order.
    pub fn select(&self, columns: &[usize]) -> Self {
        let mut out = Self::zeros(columns.len());
        for (j, &c) in columns.iter().enumerate() {
            if self.get(c) {
                out.set(j, true);
            }
        }
        out
    }

    /// Ordering used for every tie-break in the crate: compares sorted
    /// supports lexicographically, so `{0, 5}` precedes `{1, 2}`.
    pub fn support_cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.words.iter().zip(&other.words) {
            let diff = a ^ b;
            if diff != 0 {
                let bit = 1u64 << diff.trailing_zeros();
                return if a & bit != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        self.len.cmp(&other.len)
    }

    /// Weight first, then [`Gf2Vector::support_cmp`].
    pub fn weight_then_support_cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.support_cmp(other))
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Vector({self})")
    }
}

impl fmt::Display for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    cols: usize,
    rows: Vec<Gf2Vector>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![Gf2Vector::zeros(cols); rows],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of equal length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Gf2Vector>) -> Result<Self, Gf2Error> {
        for r in &rows {
            if r.len() != cols {
                return Err(Gf2Error::LengthMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
        }
        Ok(Self { cols, rows })
    }

    /// Builds a matrix from 0/1 literals; handy in tests.
    pub fn from_dense(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols);
                Gf2Vector::from_bits(&r.iter().map(|&b| b != 0).collect::<Vec<_>>())
            })
            .collect();
        Self { cols, rows }
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Gf2Vector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &Gf2Vector {
        &self.rows[i]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.rows[r].flip(c);
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.support() {
                t.set(j, i, true);
            }
        }
        t
    }

    /// `M · v`.
    pub fn mul_vec(&self, v: &Gf2Vector) -> Result<Gf2Vector, Gf2Error> {
        if v.len() != self.cols {
            return Err(Gf2Error::LengthMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut out = Gf2Vector::zeros(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            if row.dot(v) {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// `A · B`.
    pub fn mul(&self, other: &Self) -> Result<Self, Gf2Error> {
        if other.row_count() != self.cols {
            return Err(Gf2Error::LengthMismatch {
                expected: self.cols,
                found: other.row_count(),
            });
        }
        let mut out = Self::zeros(self.rows.len(), other.cols);
        for (i, row) in self.rows.iter().enumerate() {
            for k in row.support() {
                out.rows[i].xor_assign(&other.rows[k]);
            }
        }
        Ok(out)
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stacked(&self, other: &Self) -> Result<Self, Gf2Error> {
        if other.cols != self.cols {
            return Err(Gf2Error::LengthMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(Self {
            cols: self.cols,
            rows,
        })
    }

    pub fn without_row(&self, index: usize) -> Self {
        let mut rows = self.rows.clone();
        rows.remove(index);
        Self {
            cols: self.cols,
            rows,
        }
    }

    /// Restriction to the listed columns.
    pub fn select_columns(&self, columns: &[usize]) -> Self {
        Self {
            cols: columns.len(),
            rows: self.rows.iter().map(|r| r.select(columns)).collect(),
        }
    }

    /// Applies a column relabelling: column `c` of `self` becomes column
    /// `perm[c]` of the result.
    pub fn permute_columns(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.cols);
        let mut out = Self::zeros(self.rows.len(), self.cols);
        for (i, row) in self.rows.iter().enumerate() {
            for c in row.support() {
                out.set(i, perm[c], true);
            }
        }
        out
    }

    /// XOR of all rows.
    pub fn row_sum(&self) -> Gf2Vector {
        let mut acc = Gf2Vector::zeros(self.cols);
        for r in &self.rows {
            acc.xor_assign(r);
        }
        acc
    }

    pub fn echelon(&self) -> Echelon {
        Echelon::from_vectors(self.cols, self.rows.iter())
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Basis of `{v : M·v = 0}`, one vector per free column, ordered by
    /// free column.
    pub fn kernel_basis(&self) -> Vec<Gf2Vector> {
        let ech = self.echelon();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut p = vec![None; self.cols];
            for (r, &c) in ech.pivots.iter().enumerate() {
                p[c] = Some(r);
            }
            p
        };
        let mut basis = Vec::with_capacity(self.cols - ech.rank());
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = Gf2Vector::zeros(self.cols);
            v.set(free, true);
            // Fully reduced rows: pivot variable = sum of that row's free entries.
            for (r, row) in ech.rows.iter().enumerate() {
                if row.get(free) {
                    v.set(ech.pivots[r], true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Inverse of a square matrix, if it is invertible.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.rows.len();
        if n != self.cols {
            return None;
        }
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| a.get(r, col))?;
            a.rows.swap(col, pivot);
            inv.rows.swap(col, pivot);
            for r in 0..n {
                if r != col && a.get(r, col) {
                    let (src_a, src_i) = (a.rows[col].clone(), inv.rows[col].clone());
                    a.rows[r].xor_assign(&src_a);
                    inv.rows[r].xor_assign(&src_i);
                }
            }
        }
        Some(inv)
    }

    /// Same row space as `other` (both must have equal width).
    pub fn same_row_space(&self, other: &Self) -> bool {
        if self.cols != other.cols {
            return false;
        }
        let r = self.rank();
        r == other.rank() && self.stacked(other).map(|s| s.rank()) == Ok(r)
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{} [", self.rows.len(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        write!(f, "]")
    }
}

/// Fully reduced row echelon form of a set of vectors. Supports membership
/// tests and reduction of arbitrary vectors against the span.
#[derive(Clone, Debug)]
pub struct Echelon {
    len: usize,
    rows: Vec<Gf2Vector>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors<'a>(len: usize, vectors: impl IntoIterator<Item = &'a Gf2Vector>) -> Self {
        let mut e = Self::new(len);
        for v in vectors {
            e.insert(v.clone());
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Gf2Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` in place against the stored rows.
    pub fn reduce(&self, v: &mut Gf2Vector) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
    }

    pub fn contains(&self, v: &Gf2Vector) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }

    /// Adds `v` to the span. Returns `true` if the rank grew.
    pub fn insert(&mut self, mut v: Gf2Vector) -> bool {
        assert_eq!(v.len(), self.len);
        self.reduce(&mut v);
        let Some(p) = v.first_one() else {
            return false;
        };
        for row in &mut self.rows {
            if row.get(p) {
                row.xor_assign(&v);
            }
        }
        // Keep pivots sorted so rows stay in a canonical order.
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }
}

pub fn rank(m: &Gf2Matrix) -> usize {
    m.rank()
}

pub fn kernel_basis(m: &Gf2Matrix) -> Vec<Gf2Vector> {
    m.kernel_basis()
}

/// Is `v` a GF(2) combination of `basis`?
pub fn in_span(basis: &[Gf2Vector], v: &Gf2Vector) -> Result<bool, Gf2Error> {
    for b in basis {
        v.check_len(b)?;
    }
    Ok(Echelon::from_vectors(v.len(), basis).contains(v))
}

/// Minimum weight over `offset + span(subspace_basis)`, with the
/// support-lexicographically smallest witness among minimisers.
///
/// Enumerates the span in Gray-code order, one XOR per step.
pub fn min_weight_in_coset(
    subspace_basis: &[Gf2Vector],
    offset: &Gf2Vector,
    budget: u64,
) -> Result<(usize, Gf2Vector), Gf2Error> {
    for b in subspace_basis {
        offset.check_len(b)?;
    }
    let ech = Echelon::from_vectors(offset.len(), subspace_basis);
    let dim = ech.rank();
    if dim >= 64 || (1u64 << dim) > budget {
        return Err(Gf2Error::BudgetExceeded {
            dimension: dim,
            budget,
        });
    }
    let basis = ech.basis();
    let mut current = offset.clone();
    let mut best_weight = current.weight();
    let mut best = current.clone();
    for step in 1u64..(1u64 << dim) {
        current.xor_assign(&basis[step.trailing_zeros() as usize]);
        let w = current.weight();
        if w < best_weight || (w == best_weight && current.support_cmp(&best) == Ordering::Less) {
            best_weight = w;
            best.clone_from(&current);
        }
    }
    Ok((best_weight, best))
}

/// Iterates all `k`-subsets of `0..n` in lexicographic order.
pub(crate) struct Combinations {
    n: usize,
    idx: Vec<usize>,
    first: bool,
    done: bool,
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            idx: (0..k).collect(),
            first: true,
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if self.first {
            self.first = false;
            return Some(self.idx.clone());
        }
        let k = self.idx.len();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                return Some(self.idx.clone());
            }
        }
        self.done = true;
        None
    }
}

/// `C(n, k)` saturating at `u64::MAX`.
pub(crate) fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Vertex-edge incidence of the nine-edge Shor cellulation: three
    /// vertices, edges 0-2 join a-b, 3-5 join b-c, 6-8 join c-a.
    fn shor_vertex_edge() -> Gf2Matrix {
        Gf2Matrix::from_dense(&[
            &[1, 1, 1, 0, 0, 0, 1, 1, 1],
            &[1, 1, 1, 1, 1, 1, 0, 0, 0],
            &[0, 0, 0, 1, 1, 1, 1, 1, 1],
        ])
    }

    fn shor_face_edge() -> Gf2Matrix {
        Gf2Matrix::from_dense(&[
            &[1, 1, 0, 0, 0, 0, 0, 0, 0],
            &[0, 1, 1, 0, 0, 0, 0, 0, 0],
            &[0, 0, 0, 1, 1, 0, 0, 0, 0],
            &[0, 0, 0, 0, 1, 1, 0, 0, 0],
            &[0, 0, 0, 0, 0, 0, 1, 1, 0],
            &[0, 0, 0, 0, 0, 0, 0, 1, 1],
            &[1, 0, 1, 1, 0, 1, 1, 0, 1],
        ])
    }

    #[test]
    fn rank_basics() {
        assert_eq!(rank(&Gf2Matrix::identity(3)), 3);
        assert_eq!(rank(&Gf2Matrix::zeros(3, 3)), 0);
        assert_eq!(rank(&shor_vertex_edge()), 2);
    }

    #[test]
    fn kernel_sizes() {
        assert!(kernel_basis(&Gf2Matrix::identity(3)).is_empty());
        assert_eq!(kernel_basis(&Gf2Matrix::zeros(2, 3)).len(), 3);
        let m = shor_vertex_edge();
        let ker = kernel_basis(&m);
        assert_eq!(ker.len(), 7);
        for v in &ker {
            assert!(m.mul_vec(v).unwrap().is_zero());
        }
    }

    #[test]
    fn span_membership() {
        let faces = shor_face_edge();
        let basis = faces.rows().to_vec();
        assert!(in_span(&basis, &Gf2Vector::zeros(9)).unwrap());
        assert!(in_span(&basis, &basis[3]).unwrap());
        let triangle = Gf2Vector::from_indices(9, [0, 3, 6]);
        assert!(!in_span(&basis, &triangle).unwrap());
        assert!(matches!(
            in_span(&basis, &Gf2Vector::zeros(4)),
            Err(Gf2Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn coset_minimum() {
        let offset = Gf2Vector::from_indices(6, [0, 2, 3, 5]);
        assert_eq!(
            min_weight_in_coset(&[], &offset, DEFAULT_COSET_BUDGET).unwrap(),
            (4, offset.clone())
        );
        let full: Vec<_> = (0..6).map(|i| Gf2Vector::from_indices(6, [i])).collect();
        assert_eq!(
            min_weight_in_coset(&full, &offset, DEFAULT_COSET_BUDGET).unwrap(),
            (0, Gf2Vector::zeros(6))
        );
        let faces = shor_face_edge();
        let triangle = Gf2Vector::from_indices(9, [0, 3, 6]);
        let (w, witness) = min_weight_in_coset(faces.rows(), &triangle, DEFAULT_COSET_BUDGET).unwrap();
        assert_eq!(w, 3);
        // Lexicographically least weight-3 representative of the class.
        assert_eq!(witness.support(), vec![0, 3, 6]);
    }

    #[test]
    fn coset_budget_is_enforced() {
        let basis: Vec<_> = (0..10).map(|i| Gf2Vector::from_indices(10, [i])).collect();
        let err = min_weight_in_coset(&basis, &Gf2Vector::zeros(10), 512).unwrap_err();
        assert_eq!(
            err,
            Gf2Error::BudgetExceeded {
                dimension: 10,
                budget: 512
            }
        );
    }

    #[test]
    fn support_order_prefers_low_indices() {
        let a = Gf2Vector::from_indices(8, [0, 5]);
        let b = Gf2Vector::from_indices(8, [1, 2]);
        assert_eq!(a.support_cmp(&b), Ordering::Less);
        assert_eq!(b.support_cmp(&a), Ordering::Greater);
        assert_eq!(a.support_cmp(&a), Ordering::Equal);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Gf2Matrix::from_dense(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Gf2Matrix::identity(3));
        assert!(Gf2Matrix::from_dense(&[&[1, 1], &[1, 1]]).inverse().is_none());
    }

    #[test]
    fn combinations_are_lexicographic() {
        let all: Vec<_> = Combinations::new(4, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
        assert_eq!(binomial(18, 3), 816);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn matrix() -> impl Strategy<Value = Gf2Matrix> {
            (1usize..9, 1usize..80).prop_flat_map(|(r, c)| {
                proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r).prop_map(
                    move |rows| {
                        Gf2Matrix::from_rows(c, rows.iter().map(|b| Gf2Vector::from_bits(b)).collect())
                            .unwrap()
                    },
                )
            })
        }

        proptest! {
            #[test]
            fn rank_equals_transpose_rank(m in matrix()) {
                prop_assert_eq!(m.rank(), m.transpose().rank());
                prop_assert!(m.rank() <= m.row_count().min(m.col_count()));
            }

            #[test]
            fn rank_nullity(m in matrix()) {
                prop_assert_eq!(m.col_count(), m.rank() + m.kernel_basis().len());
            }

            #[test]
            fn rank_invariant_under_column_permutation(m in matrix(), seed in any::<u64>()) {
                let n = m.col_count();
                let mut perm: Vec<usize> = (0..n).collect();
                let mut s = seed;
                for i in (1..n).rev() {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    perm.swap(i, (s >> 33) as usize % (i + 1));
                }
                prop_assert_eq!(m.rank(), m.permute_columns(&perm).rank());
            }

            #[test]
            fn kernel_membership_matches_product(m in matrix(), bits in proptest::collection::vec(any::<bool>(), 80)) {
                let v = Gf2Vector::from_bits(&bits[..m.col_count()]);
                let ker = m.kernel_basis();
                prop_assert_eq!(in_span(&ker, &v).unwrap(), m.mul_vec(&v).unwrap().is_zero());
            }

            #[test]
            fn coset_witness_is_in_coset(m in matrix(), bits in proptest::collection::vec(any::<bool>(), 80)) {
                let offset = Gf2Vector::from_bits(&bits[..m.col_count()]);
                let (w, witness) = min_weight_in_coset(m.rows(), &offset, 1 << 12).unwrap();
                prop_assert!(w <= offset.weight());
                prop_assert_eq!(w, witness.weight());
                prop_assert!(in_span(m.rows(), &witness.xor(&offset)).unwrap());
            }
        }
    }
}
