//! Randomized soundness sweep over the whole catalog.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::bounds::{evaluate_bound, Arity, BoundId};
use crate::error::{Error, Result};
use crate::linalg::{sum_of, ComplexMatrix, C64};
use crate::tolerance::ToleranceConfig;

/// Normalized slack below which a passing evaluation is logged as a near miss.
pub const NEAR_MISS_THRESHOLD: f64 = 1e-3;

/// Near misses kept per bound (lowest trial indices first).
pub const NEAR_MISS_LOG_PER_BOUND: usize = 16;

/// Largest dimension or tuple size accepted by the suite.
pub const MAX_RANGE: usize = 8;

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    pub trials: usize,
    /// Inclusive range of matrix dimensions.
    pub dim_range: (usize, usize),
    /// Inclusive range of tuple sizes `n`.
    pub tuple_range: (usize, usize),
    pub seed: u64,
    pub tolerances: ToleranceConfig,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            trials: 1000,
            dim_range: (2, 5),
            tuple_range: (1, 5),
            seed: DEFAULT_SEED,
            tolerances: ToleranceConfig::default(),
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        self.tolerances.validate()?;
        for (name, (lo, hi)) in [("dimension", self.dim_range), ("tuple", self.tuple_range)] {
            if lo < 1 || hi > MAX_RANGE || lo > hi {
                return Err(Error::InvalidArgument(format!(
                    "{name} range {lo}-{hi} must satisfy 1 <= lo <= hi <= {MAX_RANGE}"
                )));
            }
        }
        Ok(())
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `index` under master seed `master`.
pub fn trial_seed(master: u64, index: usize) -> u64 {
    splitmix64(master ^ splitmix64(index as u64))
}

/// Operands of one trial. `operands` always holds at least two matrices; the
/// tuple under test is the first `n`, pair bounds use the first two.
#[derive(Debug, Clone)]
pub struct Trial {
    pub index: usize,
    pub seed: u64,
    pub dim: usize,
    pub n: usize,
    pub operands: Vec<ComplexMatrix>,
}

impl Trial {
    pub fn tuple(&self) -> &[ComplexMatrix] {
        &self.operands[..self.n]
    }

    /// Operand list handed to `bound`.
    pub fn operands_for(&self, bound: BoundId) -> Vec<ComplexMatrix> {
        match bound.arity() {
            Arity::NTuple => self.tuple().to_vec(),
            Arity::Pair => self.operands[..2].to_vec(),
            Arity::Single => vec![sum_of(self.tuple())],
        }
    }
}

/// Standard complex Gaussian matrix (`E|z|^2 = 1`).
pub fn gaussian_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let data = (0..rows * cols)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            C64::new(re * scale, im * scale)
        })
        .collect();
    ComplexMatrix::new(rows, cols, data).expect("finite Gaussian entries")
}

/// Regenerates trial `index` of a suite; identical config gives identical operands.
pub fn draw_trial(cfg: &SuiteConfig, index: usize) -> Trial {
    let seed = trial_seed(cfg.seed, index);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = rng.random_range(cfg.dim_range.0..=cfg.dim_range.1);
    let n = rng.random_range(cfg.tuple_range.0..=cfg.tuple_range.1);
    let operands = (0..n.max(2)).map(|_| gaussian_matrix(&mut rng, dim, dim)).collect();
    Trial {
        index,
        seed,
        dim,
        n,
        operands,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundSummary {
    pub bound: BoundId,
    pub evaluations: usize,
    pub violations: usize,
    pub errors: usize,
    pub near_misses: usize,
    /// Smallest normalized slack seen, with its trial.
    pub worst_normalized_slack: f64,
    pub worst_trial: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NearMiss {
    pub bound: BoundId,
    pub trial: usize,
    pub seed: u64,
    pub dim: usize,
    pub n: usize,
    pub normalized_slack: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialError {
    pub bound: BoundId,
    pub trial: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    /// One entry per catalog bound, in catalog order.
    pub summaries: Vec<BoundSummary>,
    /// Violations and near misses, ordered by bound then trial.
    pub near_misses: Vec<NearMiss>,
    pub errors: Vec<TrialError>,
}

impl SuiteReport {
    pub fn violations(&self) -> usize {
        self.summaries.iter().map(|s| s.violations).sum()
    }

    pub fn error_count(&self) -> usize {
        self.summaries.iter().map(|s| s.errors).sum()
    }

    pub fn passed(&self) -> bool {
        self.violations() == 0 && self.error_count() == 0
    }

    pub fn summary(&self, bound: BoundId) -> Option<&BoundSummary> {
        self.summaries.iter().find(|s| s.bound == bound)
    }
}

enum Outcome {
    Evaluated { normalized_slack: f64, holds: bool },
    Failed(String),
}

fn run_trial(cfg: &SuiteConfig, index: usize) -> (Trial, Vec<Outcome>) {
    let trial = draw_trial(cfg, index);
    let outcomes = BoundId::ALL
        .iter()
        .map(|&b| match evaluate_bound(b, &trial.operands_for(b), &cfg.tolerances) {
            Ok(r) => Outcome::Evaluated {
                normalized_slack: r.normalized_slack,
                holds: r.holds,
            },
            Err(e) => Outcome::Failed(e.to_string()),
        })
        .collect();
    (trial, outcomes)
}

/// Runs every catalog bound on `cfg.trials` random tuples.
///
/// Trials run in parallel; aggregation happens in trial order, so the report
/// depends only on the configuration.
pub fn run_random_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let results: Vec<(Trial, Vec<Outcome>)> = (0..cfg.trials).into_par_iter().map(|i| run_trial(cfg, i)).collect();

    let mut summaries: Vec<BoundSummary> = BoundId::ALL
        .iter()
        .map(|&bound| BoundSummary {
            bound,
            evaluations: 0,
            violations: 0,
            errors: 0,
            near_misses: 0,
            worst_normalized_slack: f64::INFINITY,
            worst_trial: None,
        })
        .collect();
    let mut near_misses = Vec::new();
    let mut errors = Vec::new();
    for (trial, outcomes) in &results {
        for (summary, outcome) in summaries.iter_mut().zip(outcomes) {
            match outcome {
                Outcome::Evaluated {
                    normalized_slack,
                    holds,
                } => {
                    summary.evaluations += 1;
                    if !holds {
                        summary.violations += 1;
                    }
                    if *normalized_slack < summary.worst_normalized_slack {
                        summary.worst_normalized_slack = *normalized_slack;
                        summary.worst_trial = Some(trial.index);
                    }
                    if *normalized_slack < NEAR_MISS_THRESHOLD {
                        summary.near_misses += 1;
                        if !holds || summary.near_misses <= NEAR_MISS_LOG_PER_BOUND {
                            near_misses.push(NearMiss {
                                bound: summary.bound,
                                trial: trial.index,
                                seed: trial.seed,
                                dim: trial.dim,
                                n: trial.n,
                                normalized_slack: *normalized_slack,
                                holds: *holds,
                            });
                        }
                    }
                }
                Outcome::Failed(message) => {
                    summary.errors += 1;
                    errors.push(TrialError {
                        bound: summary.bound,
                        trial: trial.index,
                        message: message.clone(),
                    });
                }
            }
        }
    }
    near_misses.sort_by_key(|m| (m.bound, m.trial));
    errors.sort_by_key(|e| (e.bound, e.trial));
    Ok(SuiteReport {
        config: *cfg,
        summaries,
        near_misses,
        errors,
    })
}
