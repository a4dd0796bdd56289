//! Randomized check that traces below 1 usually descend below 0.5.
//!
//! Samples characters whose least trace `x` has `|x| < 1` with `x` not real,
//! runs the reduction descent with threshold 0.5, and reports how often it
//! gets there. The real-interval case is excluded from sampling since it
//! already violates the BQ-conditions.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::CharacterTriple;
use crate::reduction::{reduce_trace_with, ReductionParams, ReductionStatus};
use crate::sampling::{small_trace_triple, stream};

/// At most this many failures are listed in a report.
pub const MAX_LISTED_FAILURES: usize = 100;

/// Sampled characters have `|Im x|` above this.
pub const MIN_IMAG: f64 = 1e-6;

/// `y` is drawn uniformly from the disc of this radius.
pub const Y_RADIUS: f64 = 3.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentFailure {
    pub sample: u64,
    pub triple: CharacterTriple,
    pub status: ReductionStatus,
    pub steps: usize,
    /// Least trace modulus reached.
    pub min_modulus: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub samples: u64,
    pub seed: u64,
    /// Fraction of samples whose descent reached a trace of modulus below
    /// 0.5; `null` for an empty run.
    pub fraction_reduced: Option<f64>,
    /// Step count of each descent → number of samples.
    pub histogram: BTreeMap<usize, u64>,
    pub failure_count: u64,
    /// The first failures by sample index.
    pub failures: Vec<ExperimentFailure>,
}

struct SampleResult {
    steps: usize,
    reduced: bool,
    failure: Option<ExperimentFailure>,
}

fn run_sample(seed: u64, index: u64, params: ReductionParams) -> SampleResult {
    let mut rng = stream(seed, index);
    let t = small_trace_triple(&mut rng, 1.0, MIN_IMAG, Y_RADIUS);
    match reduce_trace_with(&t, params) {
        Ok(out) => {
            let min_modulus = out.min_modulus();
            let reduced = min_modulus < params.threshold;
            SampleResult {
                steps: out.steps.len(),
                reduced,
                failure: (!reduced).then(|| ExperimentFailure {
                    sample: index,
                    triple: t,
                    status: out.status,
                    steps: out.steps.len(),
                    min_modulus,
                }),
            }
        }
        // Sampled triples are on the variety and the threshold is fixed, so
        // only slope overflow can land here; count it as a failed descent.
        Err(_) => SampleResult {
            steps: 0,
            reduced: false,
            failure: Some(ExperimentFailure {
                sample: index,
                triple: t,
                status: ReductionStatus::StepLimit,
                steps: 0,
                min_modulus: t.x().norm(),
            }),
        },
    }
}

/// Runs `samples` independent descents; sample `i` uses stream `i` of the
/// generator seeded by `seed`, so the report does not depend on how rayon
/// schedules the work.
pub fn remark_b_experiment(samples: u64, seed: u64) -> ExperimentReport {
    let params = ReductionParams {
        max_steps: 1_000,
        ..ReductionParams::default()
    };
    let results: Vec<SampleResult> = (0..samples)
        .into_par_iter()
        .map(|i| run_sample(seed, i, params))
        .collect();

    let mut histogram = BTreeMap::new();
    let mut reduced = 0u64;
    let mut failure_count = 0u64;
    let mut failures = Vec::new();
    for r in results {
        *histogram.entry(r.steps).or_insert(0) += 1;
        if r.reduced {
            reduced += 1;
        }
        if let Some(f) = r.failure {
            failure_count += 1;
            if failures.len() < MAX_LISTED_FAILURES {
                failures.push(f);
            }
        }
    }
    ExperimentReport {
        samples,
        seed,
        fraction_reduced: (samples > 0).then(|| reduced as f64 / samples as f64),
        histogram,
        failure_count,
        failures,
    }
}
