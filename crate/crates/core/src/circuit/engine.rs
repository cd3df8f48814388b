// Copyright 2026 The nucirc Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::measure::Outcome;
use crate::qstate::StateVector;
use crate::scalar::Real;

use super::CircuitProgram;

#[derive(Clone, Debug, PartialEq)]
pub struct StepRecord<T> {
    pub label: String,
    /// Analytic protocol success probability of the step from the state it
    /// was applied to.
    pub p: T,
    /// Successful reversing measurements performed (always 0 on the
    /// analytic branch).
    pub reversals: usize,
}

#[derive(Clone, Debug)]
pub struct RunRecord<T: Real> {
    pub outcome: Outcome,
    pub failed_step: Option<usize>,
    pub final_state: Option<StateVector<T>>,
    pub per_step: Vec<StepRecord<T>>,
    /// Product of the per-step probabilities; 0 when the branch is annihilated.
    pub total_probability: T,
}

impl<T: Real> RunRecord<T> {
    pub fn reversals(&self) -> usize {
        self.per_step.iter().map(|s| s.reversals).sum()
    }

    fn finish(per_step: Vec<StepRecord<T>>, failed_step: Option<usize>, final_state: Option<StateVector<T>>) -> Self {
        let total_probability = per_step.iter().fold(T::one(), |acc, s| acc * s.p);
        RunRecord {
            outcome: if failed_step.is_none() { Outcome::Success } else { Outcome::Failure },
            failed_step,
            final_state,
            per_step,
            total_probability,
        }
    }
}

/// Follows the all-success branch without randomness.
pub fn run_branch<T: Real>(program: &CircuitProgram<T>) -> Result<RunRecord<T>> {
    let mut state = program.initial_state()?;
    let mut per_step = Vec::with_capacity(program.steps().len());
    for (i, step) in program.steps().iter().enumerate() {
        let p = step.pair.analytic_success(&state, &step.targets, step.policy.as_ref())?;
        per_step.push(StepRecord {
            label: step.gate.label().to_string(),
            p,
            reversals: 0,
        });
        match state.apply_embedded(&step.pair.m0, &step.targets)?.normalize() {
            Ok(next) => state = next,
            Err(Error::Annihilated(_)) => {
                let mut rec = RunRecord::finish(per_step, Some(i), None);
                rec.total_probability = T::zero();
                return Ok(rec);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(RunRecord::finish(per_step, None, Some(state)))
}

fn run_with_rng<T: Real, R: Rng + ?Sized>(program: &CircuitProgram<T>, rng: &mut R) -> Result<RunRecord<T>> {
    let mut state = program.initial_state()?;
    let mut per_step = Vec::with_capacity(program.steps().len());
    for (i, step) in program.steps().iter().enumerate() {
        let label = step.gate.label().to_string();
        if step.is_deterministic() {
            state = state.apply_embedded(&step.pair.m0, &step.targets)?.normalize()?;
            per_step.push(StepRecord {
                label,
                p: T::one(),
                reversals: 0,
            });
            continue;
        }
        let p = step.pair.analytic_success(&state, &step.targets, step.policy.as_ref())?;
        let run = step.pair.run_with_reversal(step.policy.as_ref(), &state, &step.targets, rng)?;
        per_step.push(StepRecord {
            label,
            p,
            reversals: run.reversals,
        });
        if !run.outcome.is_success() {
            return Ok(RunRecord::finish(per_step, Some(i), None));
        }
        state = run.state;
    }
    Ok(RunRecord::finish(per_step, None, Some(state)))
}

/// RNG for trial `index` of a run seeded with `seed`: one ChaCha8 key per
/// seed, one stream per trial.
pub fn rng_for_trial(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// One stochastic run; identical to trial 0 of [`run_ensemble`].
pub fn run_sampled<T: Real>(program: &CircuitProgram<T>, seed: u64) -> Result<RunRecord<T>> {
    run_with_rng(program, &mut rng_for_trial(seed, 0))
}

#[derive(Clone, Debug, PartialEq)]
pub struct EnsembleStats {
    pub trials: u64,
    pub successes: u64,
    pub total_reversals: u64,
    /// Failures per step index.
    pub failure_histogram: Vec<u64>,
}

impl EnsembleStats {
    pub fn success_rate(&self) -> f64 {
        self.successes as f64 / self.trials as f64
    }

    pub fn mean_reversals(&self) -> f64 {
        self.total_reversals as f64 / self.trials as f64
    }

    /// Binomial standard error of the success rate.
    pub fn std_error(&self) -> f64 {
        let r = self.success_rate();
        (r * (1.0 - r) / self.trials as f64).sqrt()
    }

    /// Wilson score interval at `z` standard deviations.
    pub fn wilson_interval(&self, z: f64) -> (f64, f64) {
        let n = self.trials as f64;
        let r = self.success_rate();
        let z2 = z * z;
        let denom = 1.0 + z2 / n;
        let centre = (r + z2 / (2.0 * n)) / denom;
        let half = z * (r * (1.0 - r) / n + z2 / (4.0 * n * n)).sqrt() / denom;
        ((centre - half).max(0.0), (centre + half).min(1.0))
    }

    fn empty(steps: usize) -> Self {
        EnsembleStats {
            trials: 0,
            successes: 0,
            total_reversals: 0,
            failure_histogram: vec![0; steps],
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.trials += other.trials;
        self.successes += other.successes;
        self.total_reversals += other.total_reversals;
        for (a, b) in self.failure_histogram.iter_mut().zip(other.failure_histogram) {
            *a += b;
        }
        self
    }
}

/// Runs `trials` independent stochastic runs, trial `i` on
/// [`rng_for_trial`]`(seed, i)`. `jobs` caps the worker threads; the result
/// does not depend on it.
pub fn run_ensemble<T: Real>(
    program: &CircuitProgram<T>,
    seed: u64,
    trials: u64,
    jobs: Option<usize>,
) -> Result<EnsembleStats> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let steps = program.steps().len();
    let work = || {
        (0..trials)
            .into_par_iter()
            .map(|i| {
                let rec = run_with_rng(program, &mut rng_for_trial(seed, i))?;
                let mut tally = EnsembleStats::empty(steps);
                tally.trials = 1;
                tally.total_reversals = rec.reversals() as u64;
                match rec.failed_step {
                    None => tally.successes = 1,
                    Some(s) => tally.failure_histogram[s] = 1,
                }
                Ok(tally)
            })
            .try_reduce(|| EnsembleStats::empty(steps), |a, b| Ok(a.merge(b)))
    };
    match jobs {
        None => work(),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?
            .install(work),
    }
}
