//! Ranks of two-qubit reduced states of the code projector.
//!
//! For a stabilizer group `S` the normalized projector is
//! `2^-n Σ_{g∈S} g`; reducing it to qubits `{i,j}` keeps exactly the
//! elements supported on the pair, so the reduced state is a scaled
//! projector of rank `4 / |S_pair|`. For a CSS code `S_pair` splits into its
//! X and Z parts, each counted by how much rank the generator matrix loses
//! when the pair's columns are dropped.
//!
//! Pair ranks survive local unitaries and qubit relabelling, so differing
//! histograms prove two codes inequivalent.

use std::collections::{BTreeMap, HashMap};

use nalgebra::Matrix4;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::{Echelon, Gf2Matrix};
use crate::stabilizer::CssCode;

/// Largest code the dense oracle accepts.
pub const DENSE_MAX_QUBITS: usize = 14;
/// Singular values at or below this count as zero.
pub const SINGULAR_VALUE_THRESHOLD: f64 = 1e-9;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InvariantsError {
    #[error("pair ({0}, {0}) is not two distinct qubits")]
    PairNotDistinct(usize),
    #[error("qubit {qubit} out of range for {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("dense computation needs at most {max} qubits, code has {n}")]
    TooLarge { n: usize, max: usize },
    #[error("codes have {a} and {b} qubits")]
    SizeMismatch { a: usize, b: usize },
}

fn check_pair(n: usize, (i, j): (usize, usize)) -> Result<(usize, usize), InvariantsError> {
    if i == j {
        return Err(InvariantsError::PairNotDistinct(i));
    }
    for q in [i, j] {
        if q >= n {
            return Err(InvariantsError::QubitOutOfRange { qubit: q, n });
        }
    }
    Ok((i.min(j), i.max(j)))
}

/// `log2` of the number of row-space elements supported inside `pair`.
fn supported_in_pair(m: &Gf2Matrix, full_rank: usize, pair: (usize, usize)) -> u32 {
    let rest: Vec<usize> = (0..m.col_count()).filter(|&c| c != pair.0 && c != pair.1).collect();
    (full_rank - m.select_columns(&rest).rank()) as u32
}

/// Pair rank by counting stabilizer elements supported on the pair.
pub fn pair_rank_stabilizer(code: &CssCode, pair: (usize, usize)) -> Result<u8, InvariantsError> {
    let pair = check_pair(code.n, pair)?;
    let rx = code.x_stabilizers.rank();
    let rz = code.z_stabilizers.rank();
    Ok(rank_from_counts(
        supported_in_pair(&code.x_stabilizers, rx, pair) + supported_in_pair(&code.z_stabilizers, rz, pair),
    ))
}

fn rank_from_counts(log_s: u32) -> u8 {
    4u8 >> log_s
}

/// A Pauli string `phase · X^x Z^z` on at most 64 qubits.
#[derive(Clone, Copy, Debug)]
struct DensePauli {
    x: u64,
    z: u64,
    phase: Complex64,
}

impl DensePauli {
    /// `self |y>` as (basis state, amplitude).
    fn apply(&self, y: u64) -> (u64, Complex64) {
        let sign = if (self.z & y).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        (y ^ self.x, self.phase * sign)
    }

    fn conjugate_hadamard(&mut self, q: usize) {
        let (xq, zq) = (self.x >> q & 1, self.z >> q & 1);
        if xq == 1 && zq == 1 {
            self.phase = -self.phase;
        }
        self.x = (self.x & !(1 << q)) | zq << q;
        self.z = (self.z & !(1 << q)) | xq << q;
    }

    fn conjugate_phase_gate(&mut self, q: usize) {
        if self.x >> q & 1 == 1 {
            self.z ^= 1 << q;
            self.phase *= Complex64::i();
        }
    }
}

/// A single-qubit Clifford applied by conjugation before the dense
/// computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalGate {
    Hadamard(usize),
    Phase(usize),
}

/// All 4x4 reduced matrices of the code projector, normalized to trace 1.
struct DenseReduction {
    n: usize,
    blocks: HashMap<(usize, usize), Matrix4<Complex64>>,
}

fn independent_rows(m: &Gf2Matrix) -> Vec<u64> {
    let mut span = Echelon::new(m.col_count());
    m.rows()
        .iter()
        .filter(|r| span.insert((*r).clone()))
        .map(|r| r.as_mask())
        .collect()
}

impl DenseReduction {
    fn new(code: &CssCode, gates: &[LocalGate]) -> Result<Self, InvariantsError> {
        let n = code.n;
        if n > DENSE_MAX_QUBITS {
            return Err(InvariantsError::TooLarge {
                n,
                max: DENSE_MAX_QUBITS,
            });
        }
        let one = Complex64::new(1.0, 0.0);
        let mut gens: Vec<DensePauli> = independent_rows(&code.x_stabilizers)
            .into_iter()
            .map(|x| DensePauli { x, z: 0, phase: one })
            .chain(
                independent_rows(&code.z_stabilizers)
                    .into_iter()
                    .map(|z| DensePauli { x: 0, z, phase: one }),
            )
            .collect();
        for g in &mut gens {
            for gate in gates {
                match *gate {
                    LocalGate::Hadamard(q) => g.conjugate_hadamard(q),
                    LocalGate::Phase(q) => g.conjugate_phase_gate(q),
                }
            }
        }
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let zero = Matrix4::<Complex64>::zeros();
        let pair_index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();

        // Column x of P = Π (1 + g)/2, kept sparse.
        let column = |x: u64| -> Vec<(u64, Complex64)> {
            let mut v: HashMap<u64, Complex64> = HashMap::from([(x, one)]);
            for g in &gens {
                let mut next: HashMap<u64, Complex64> = HashMap::with_capacity(2 * v.len());
                for (&y, &a) in &v {
                    *next.entry(y).or_default() += a * 0.5;
                    let (gy, c) = g.apply(y);
                    *next.entry(gy).or_default() += a * c * 0.5;
                }
                next.retain(|_, a| a.norm() > 1e-12);
                v = next;
            }
            v.into_iter().collect()
        };
        let local = |s: u64, (i, j): (usize, usize)| ((s >> i & 1) << 1 | (s >> j & 1)) as usize;

        let (blocks, trace) = (0..1u64 << n)
            .into_par_iter()
            .fold(
                || (vec![zero; pairs.len()], Complex64::default()),
                |(mut blocks, mut trace), x| {
                    for (y, a) in column(x) {
                        let d = x ^ y;
                        match d.count_ones() {
                            0 => {
                                trace += a;
                                for (k, &p) in pairs.iter().enumerate() {
                                    blocks[k][(local(y, p), local(x, p))] += a;
                                }
                            }
                            1 => {
                                let i = d.trailing_zeros() as usize;
                                for j in (0..n).filter(|&j| j != i) {
                                    let p = (i.min(j), i.max(j));
                                    let k = pair_index[&p];
                                    blocks[k][(local(y, p), local(x, p))] += a;
                                }
                            }
                            2 => {
                                let i = d.trailing_zeros() as usize;
                                let j = 63 - d.leading_zeros() as usize;
                                let p = (i, j);
                                blocks[pair_index[&p]][(local(y, p), local(x, p))] += a;
                            }
                            _ => {}
                        }
                    }
                    (blocks, trace)
                },
            )
            .reduce(
                || (vec![zero; pairs.len()], Complex64::default()),
                |(mut a, ta), (b, tb)| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    (a, ta + tb)
                },
            );
        let blocks = pairs
            .into_iter()
            .zip(blocks)
            .map(|(p, m)| (p, m / trace))
            .collect();
        Ok(Self { n, blocks })
    }

    fn rank(&self, pair: (usize, usize)) -> Result<u8, InvariantsError> {
        let pair = check_pair(self.n, pair)?;
        let m = self.blocks[&pair];
        let svd = m.svd(false, false);
        Ok(svd
            .singular_values
            .iter()
            .filter(|&&s| s > SINGULAR_VALUE_THRESHOLD)
            .count() as u8)
    }
}

/// Pair rank by building the projector densely and tracing out the rest.
pub fn pair_rank_dense(code: &CssCode, pair: (usize, usize)) -> Result<u8, InvariantsError> {
    check_pair(code.n, pair)?;
    DenseReduction::new(code, &[])?.rank(pair)
}

/// Every pair rank from the dense route, after conjugating the projector by
/// `gates` (applied in order).
pub fn dense_profile(code: &CssCode, gates: &[LocalGate]) -> Result<RankProfile, InvariantsError> {
    let dense = DenseReduction::new(code, gates)?;
    let ranks = all_pairs(code.n)
        .map(|p| dense.rank(p).map(|r| (p, r)))
        .collect::<Result<_, _>>()?;
    Ok(RankProfile { n: code.n, ranks })
}

fn all_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

/// Ranks of all `n(n-1)/2` pairs, in lexicographic pair order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankProfile {
    pub n: usize,
    pub ranks: Vec<((usize, usize), u8)>,
}

/// Exported form of a [`RankProfile`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankProfileJson {
    pub n: usize,
    pub rank2_pairs: Vec<[usize; 2]>,
    pub histogram: BTreeMap<String, usize>,
}

impl RankProfile {
    pub fn rank(&self, pair: (usize, usize)) -> Option<u8> {
        let p = (pair.0.min(pair.1), pair.0.max(pair.1));
        self.ranks.iter().find(|(q, _)| *q == p).map(|&(_, r)| r)
    }

    pub fn rank2_pairs(&self) -> Vec<(usize, usize)> {
        self.ranks.iter().filter(|(_, r)| *r == 2).map(|&(p, _)| p).collect()
    }

    /// Count per rank value; ranks 1, 2 and 4 always appear.
    pub fn histogram(&self) -> BTreeMap<u8, usize> {
        let mut h = BTreeMap::from([(1, 0), (2, 0), (4, 0)]);
        for &(_, r) in &self.ranks {
            *h.entry(r).or_default() += 1;
        }
        h
    }

    pub fn export(&self) -> RankProfileJson {
        RankProfileJson {
            n: self.n,
            rank2_pairs: self.rank2_pairs().into_iter().map(|(i, j)| [i, j]).collect(),
            histogram: self.histogram().into_iter().map(|(r, c)| (r.to_string(), c)).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.export()).expect("profiles serialize")
    }
}

pub fn rank_profile(code: &CssCode) -> RankProfile {
    let rx = code.x_stabilizers.rank();
    let rz = code.z_stabilizers.rank();
    let pairs: Vec<_> = all_pairs(code.n).collect();
    let ranks = pairs
        .par_iter()
        .map(|&p| {
            let s = supported_in_pair(&code.x_stabilizers, rx, p) + supported_in_pair(&code.z_stabilizers, rz, p);
            (p, rank_from_counts(s))
        })
        .collect();
    RankProfile { n: code.n, ranks }
}

/// Proof that two codes are not related by local unitaries and a qubit
/// permutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequivalenceCertificate {
    pub histogram_a: BTreeMap<String, usize>,
    pub histogram_b: BTreeMap<String, usize>,
    pub rank2_counts: [usize; 2],
}

/// A certificate when the pair-rank histograms differ; `None` means the
/// invariant cannot tell the codes apart, not that they are equivalent.
pub fn certify_inequivalent(a: &CssCode, b: &CssCode) -> Result<Option<InequivalenceCertificate>, InvariantsError> {
    if a.n != b.n {
        return Err(InvariantsError::SizeMismatch { a: a.n, b: b.n });
    }
    let (pa, pb) = (rank_profile(a).export(), rank_profile(b).export());
    if pa.histogram == pb.histogram {
        return Ok(None);
    }
    Ok(Some(InequivalenceCertificate {
        rank2_counts: [pa.rank2_pairs.len(), pb.rank2_pairs.len()],
        histogram_a: pa.histogram,
        histogram_b: pb.histogram,
    }))
}
