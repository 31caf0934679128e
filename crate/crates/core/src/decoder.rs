//! Syndromes, minimum-weight correction and Monte Carlo failure rates.
//!
//! X errors are seen by the vertex checks and Z errors by the face checks;
//! the two sides are decoded independently. A correction fails exactly when
//! error plus correction is a logical operator, i.e. an essential cycle on
//! the X side or an essential dual cycle on the Z side.

use std::collections::HashMap;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::{Combinations, Echelon, Gf2Error, Gf2Matrix, Gf2Vector};
use crate::homology::for_each_mask_of_weight;
use crate::stabilizer::CssCode;

/// Codes up to this length get a full syndrome table.
pub const TABLE_MAX_QUBITS: usize = 24;
/// Candidate corrections tried per syndrome on larger codes.
pub const DEFAULT_SEARCH_BUDGET: u64 = 1 << 26;
/// Recorded with every Monte Carlo result.
pub const RNG_ALGORITHM: &str = "ChaCha8Rng (rand_chacha 0.3), stream = trial index";
pub const CSV_HEADER: &str = "p_x,p_z,trials,x_failures,z_failures,seed";

#[derive(Debug, Error)]
pub enum DecoderError {
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error("{0} syndrome is not produced by any error")]
    InconsistentSyndrome(Side),
    #[error("error and correction have different {0} syndromes")]
    SyndromeMismatch(Side),
    #[error("no correction found within {budget} candidates")]
    BudgetExceeded { budget: u64 },
    #[error("probability {0} outside [0, 1]")]
    Probability(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    /// Bit flips, seen by the vertex checks.
    X,
    /// Phase flips, seen by the face checks.
    Z,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::X => "vertex-check",
            Side::Z => "face-check",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ErrorPattern {
    pub x_errors: Gf2Vector,
    pub z_errors: Gf2Vector,
}

impl ErrorPattern {
    pub fn none(n: usize) -> Self {
        Self {
            x_errors: Gf2Vector::zeros(n),
            z_errors: Gf2Vector::zeros(n),
        }
    }

    pub fn x(x_errors: Gf2Vector) -> Self {
        let n = x_errors.len();
        Self {
            x_errors,
            z_errors: Gf2Vector::zeros(n),
        }
    }

    pub fn z(z_errors: Gf2Vector) -> Self {
        let n = z_errors.len();
        Self {
            x_errors: Gf2Vector::zeros(n),
            z_errors,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Syndrome {
    /// One bit per vertex operator.
    pub z_checks: Gf2Vector,
    /// One bit per face operator.
    pub x_checks: Gf2Vector,
}

pub fn syndrome(code: &CssCode, err: &ErrorPattern) -> Result<Syndrome, DecoderError> {
    Ok(Syndrome {
        z_checks: code.z_stabilizers.mul_vec(&err.x_errors)?,
        x_checks: code.x_stabilizers.mul_vec(&err.z_errors)?,
    })
}

/// Minimum-weight decoding of one side.
#[derive(Clone, Debug)]
struct SideDecoder {
    side: Side,
    checks: Gf2Matrix,
    columns: Echelon,
    table: Option<HashMap<Gf2Vector, Gf2Vector>>,
    budget: u64,
}

impl SideDecoder {
    fn new(side: Side, checks: &Gf2Matrix, budget: u64) -> Self {
        let n = checks.col_count();
        let columns = checks.transpose().echelon();
        let table = (n <= TABLE_MAX_QUBITS).then(|| {
            let wanted = 1usize << columns.rank();
            let mut table = HashMap::with_capacity(wanted);
            table.insert(Gf2Vector::zeros(checks.row_count()), Gf2Vector::zeros(n));
            for w in 1..=n {
                if table.len() == wanted {
                    break;
                }
                for_each_mask_of_weight(n, w, |m| {
                    let v = Gf2Vector::from_mask(n, m);
                    let s = checks.mul_vec(&v).expect("sizes match");
                    table.entry(s).or_insert(v);
                    table.len() < wanted
                });
            }
            table
        });
        Self {
            side,
            checks: checks.clone(),
            columns,
            table,
            budget,
        }
    }

    fn correct(&self, s: &Gf2Vector) -> Result<Gf2Vector, DecoderError> {
        if s.len() != self.checks.row_count() {
            return Err(Gf2Error::LengthMismatch {
                expected: self.checks.row_count(),
                found: s.len(),
            }
            .into());
        }
        if let Some(table) = &self.table {
            return table
                .get(s)
                .cloned()
                .ok_or(DecoderError::InconsistentSyndrome(self.side));
        }
        if !self.columns.contains(s) {
            return Err(DecoderError::InconsistentSyndrome(self.side));
        }
        let n = self.checks.col_count();
        let mut spent = 0u64;
        if s.is_zero() {
            return Ok(Gf2Vector::zeros(n));
        }
        for w in 1..=n {
            for idx in Combinations::new(n, w) {
                spent += 1;
                if spent > self.budget {
                    return Err(DecoderError::BudgetExceeded { budget: self.budget });
                }
                let v = Gf2Vector::from_indices(n, idx);
                if self.checks.mul_vec(&v)? == *s {
                    return Ok(v);
                }
            }
        }
        unreachable!("consistent syndromes have a solution")
    }
}

/// Minimum-weight decoder for both sides of a code, ties broken towards the
/// lexicographically least support.
#[derive(Clone, Debug)]
pub struct Decoder {
    x_side: SideDecoder,
    z_side: SideDecoder,
    x_boundaries: Echelon,
    z_boundaries: Echelon,
}

impl Decoder {
    pub fn new(code: &CssCode) -> Self {
        Self::with_budget(code, DEFAULT_SEARCH_BUDGET)
    }

    pub fn with_budget(code: &CssCode, budget: u64) -> Self {
        Self {
            x_side: SideDecoder::new(Side::X, &code.z_stabilizers, budget),
            z_side: SideDecoder::new(Side::Z, &code.x_stabilizers, budget),
            x_boundaries: code.x_stabilizers.echelon(),
            z_boundaries: code.z_stabilizers.echelon(),
        }
    }

    pub fn correct(&self, syn: &Syndrome) -> Result<ErrorPattern, DecoderError> {
        Ok(ErrorPattern {
            x_errors: self.x_side.correct(&syn.z_checks)?,
            z_errors: self.z_side.correct(&syn.x_checks)?,
        })
    }

    /// `(x_fail, z_fail)` for an error and a correction with the same
    /// syndrome.
    pub fn is_failure(&self, err: &ErrorPattern, corr: &ErrorPattern) -> Result<(bool, bool), DecoderError> {
        let rx = err.x_errors.try_xor(&corr.x_errors)?;
        let rz = err.z_errors.try_xor(&corr.z_errors)?;
        if !self.x_side.checks.mul_vec(&rx)?.is_zero() {
            return Err(DecoderError::SyndromeMismatch(Side::X));
        }
        if !self.z_side.checks.mul_vec(&rz)?.is_zero() {
            return Err(DecoderError::SyndromeMismatch(Side::Z));
        }
        Ok((!self.x_boundaries.contains(&rx), !self.z_boundaries.contains(&rz)))
    }

    /// Decodes `err` and reports the failure flags.
    pub fn run(&self, err: &ErrorPattern) -> Result<(bool, bool), DecoderError> {
        let syn = Syndrome {
            z_checks: self.x_side.checks.mul_vec(&err.x_errors)?,
            x_checks: self.z_side.checks.mul_vec(&err.z_errors)?,
        };
        let corr = self.correct(&syn)?;
        self.is_failure(err, &corr)
    }
}

pub fn correct(code: &CssCode, syn: &Syndrome) -> Result<ErrorPattern, DecoderError> {
    Decoder::new(code).correct(syn)
}

pub fn is_failure(code: &CssCode, err: &ErrorPattern, corr: &ErrorPattern) -> Result<(bool, bool), DecoderError> {
    Decoder::new(code).is_failure(err, corr)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloResult {
    pub p_x: f64,
    pub p_z: f64,
    pub trials: u64,
    pub x_failures: u64,
    pub z_failures: u64,
    pub seed: u64,
    pub rng: String,
}

impl MonteCarloResult {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.p_x, self.p_z, self.trials, self.x_failures, self.z_failures, self.seed
        )
    }
}

/// Header plus one row per result.
pub fn to_csv(results: &[MonteCarloResult]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in results {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

/// Uniform double in [0, 1) from the top 53 bits.
fn bernoulli(rng: &mut ChaCha8Rng, p: f64) -> bool {
    ((rng.next_u64() >> 11) as f64) * (1.0 / (1u64 << 53) as f64) < p
}

fn sample(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Gf2Vector {
    let mut v = Gf2Vector::zeros(n);
    for i in 0..n {
        if bernoulli(rng, p) {
            v.set(i, true);
        }
    }
    v
}

/// Independent X errors with probability `p_x` and Z errors with `p_z` on
/// every qubit. Trial `t` draws from stream `t` of a generator seeded with
/// `seed`, so results do not depend on how trials are split across threads.
pub fn monte_carlo(
    decoder: &Decoder,
    n: usize,
    p_x: f64,
    p_z: f64,
    trials: u64,
    seed: u64,
) -> Result<MonteCarloResult, DecoderError> {
    for p in [p_x, p_z] {
        if !(0.0..=1.0).contains(&p) {
            return Err(DecoderError::Probability(p));
        }
    }
    let (x_failures, z_failures) = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t);
            let err = ErrorPattern {
                x_errors: sample(&mut rng, n, p_x),
                z_errors: sample(&mut rng, n, p_z),
            };
            decoder.run(&err).map(|(x, z)| (x as u64, z as u64))
        })
        .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))?;
    Ok(MonteCarloResult {
        p_x,
        p_z,
        trials,
        x_failures,
        z_failures,
        seed,
        rng: RNG_ALGORITHM.to_string(),
    })
}

/// Failures over every error of one weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightSweep {
    pub weight: usize,
    /// Patterns per side, `C(n, weight)`.
    pub patterns: u64,
    pub x_failures: u64,
    pub z_failures: u64,
}

/// Decodes every weight-`weight` X error and every weight-`weight` Z error.
pub fn exhaustive(decoder: &Decoder, n: usize, weight: usize) -> Result<WeightSweep, DecoderError> {
    let supports: Vec<Vec<usize>> = Combinations::new(n, weight).collect();
    let (x_failures, z_failures) = supports
        .par_iter()
        .map(|s| {
            let v = Gf2Vector::from_indices(n, s.iter().copied());
            let (xf, _) = decoder.run(&ErrorPattern::x(v.clone()))?;
            let (_, zf) = decoder.run(&ErrorPattern::z(v))?;
            Ok((xf as u64, zf as u64))
        })
        .try_reduce(|| (0, 0), |a, b| Ok::<_, DecoderError>((a.0 + b.0, a.1 + b.1)))?;
    Ok(WeightSweep {
        weight,
        patterns: supports.len() as u64,
        x_failures,
        z_failures,
    })
}
