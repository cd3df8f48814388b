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

//! Nonunitary gates realized as two-outcome measurements.
//!
//! A gate `N` (largest singular value 1) is implemented by the measurement
//! `{M0, M1}` with `M0 = c N` and `M1 = sqrt(I - M0^dagger M0)`. Outcome 0 is
//! success and leaves `N|psi>` (renormalized); outcome 1 is failure. After a
//! failure, the reversing measurement `{R0, R1}` with `R0 M1 = q I` can undo
//! the damage with probability `|q|^2`, independent of the state, after which
//! the gate is attempted again.

use num_complex::Complex;
use rand::Rng;

use crate::error::{Error, Result};
use crate::gates::GateSpec;
use crate::linops::{inverse_psd, sqrtm_psd, ComplexMatrix};
use crate::qstate::StateVector;
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Failure,
}

impl Outcome {
    pub fn is_success(self) -> bool {
        self == Outcome::Success
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Success => "success",
            Outcome::Failure => "failure",
        }
    }
}

/// `{M0, M1}` implementing one nonunitary gate.
#[derive(Clone, Debug)]
pub struct MeasurementPair<T: Real> {
    pub m0: ComplexMatrix<T>,
    pub m1: ComplexMatrix<T>,
    pub c: Complex<T>,
    pub label: String,
}

/// Reversing measurement `{R0, R1}` plus the retry cap.
#[derive(Clone, Debug)]
pub struct ReversalPolicy<T: Real> {
    pub q: Complex<T>,
    pub max_reversals: usize,
    pub r0: ComplexMatrix<T>,
    pub r1: ComplexMatrix<T>,
}

impl<T: Real> ReversalPolicy<T> {
    pub fn with_max_reversals(mut self, k: usize) -> Self {
        self.max_reversals = k;
        self
    }
}

/// Result of running a measurement, with or without the reversal loop.
#[derive(Clone, Debug)]
pub struct ProtocolRun<T> {
    pub outcome: Outcome,
    /// Normalized post-measurement state.
    pub state: StateVector<T>,
    /// Number of `{M0, M1}` measurements performed.
    pub attempts: usize,
    /// Number of successful reversals.
    pub reversals: usize,
}

fn identity_minus_gram<T: Real>(m: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    let gram = m.adjoint().matmul(m)?;
    ComplexMatrix::identity(m.rows()).sub(&gram)
}

/// Builds `{M0 = cN, M1 = sqrt(I - M0^dagger M0)}`.
pub fn build_pair<T: Real>(gate: &GateSpec<T>, c: Complex<T>) -> Result<MeasurementPair<T>> {
    let c_abs = c.norm();
    if !(c_abs > T::zero()) || c_abs > T::one() + T::epsilon() * T::lit(4.0) {
        return Err(Error::InvalidC(c_abs.as_f64()));
    }
    let top = crate::linops::svd(gate.matrix())?.s[0];
    if top > T::one() + T::factor_tol() {
        return Err(Error::InvalidParameter(format!(
            "gate {} is not normalized (largest singular value {})",
            gate.label(),
            top
        )));
    }
    let m0 = gate.matrix().scale(c);
    let m1 = sqrtm_psd(&identity_minus_gram(&m0)?)?;
    Ok(MeasurementPair {
        m0,
        m1,
        c,
        label: gate.label().to_string(),
    })
}

/// Builds `{R0 = q M1^{-1}, R1 = sqrt(I - R0^dagger R0)}`. With `q = None`
/// the optimal `q = sqrt(1 - |c|^2)` is used. `max_reversals` starts at 0.
pub fn build_reversal<T: Real>(
    pair: &MeasurementPair<T>,
    q: Option<Complex<T>>,
) -> Result<ReversalPolicy<T>> {
    let c2 = pair.c.norm_sqr();
    if c2 >= T::one() - T::inverse_floor() {
        return Err(Error::IrreversibleFailure);
    }
    let bound = (T::one() - c2).sqrt();
    let q = q.unwrap_or_else(|| Complex::new(bound, T::zero()));
    let q_abs = q.norm();
    if !(q_abs > T::zero()) {
        return Err(Error::InvalidParameter("q must be nonzero".into()));
    }
    if q_abs > bound * (T::one() + T::exact_tol()) {
        return Err(Error::NotAMeasurement {
            q: q_abs.as_f64(),
            bound: bound.as_f64(),
        });
    }
    let m1_inv = match inverse_psd(&pair.m1) {
        Ok(inv) => inv,
        Err(Error::Singular(_)) => return Err(Error::IrreversibleFailure),
        Err(e) => return Err(e),
    };
    let r0 = m1_inv.scale(q);
    let r1 = match sqrtm_psd(&identity_minus_gram(&r0)?) {
        Ok(r1) => r1,
        Err(Error::NotPsd(_)) => {
            return Err(Error::NotAMeasurement {
                q: q_abs.as_f64(),
                bound: bound.as_f64(),
            })
        }
        Err(e) => return Err(e),
    };
    Ok(ReversalPolicy {
        q,
        max_reversals: 0,
        r0,
        r1,
    })
}

/// Chooses between two branches with one uniform draw.
fn measure<T: Real, R: Rng + ?Sized>(
    op0: &ComplexMatrix<T>,
    op1: &ComplexMatrix<T>,
    state: &StateVector<T>,
    targets: &[usize],
    rng: &mut R,
) -> Result<(Outcome, StateVector<T>)> {
    let branch0 = state.apply_embedded(op0, targets)?;
    let p0 = branch0.norm_sq();
    let u: f64 = rng.random();
    let (outcome, branch) = if u < p0.as_f64() {
        (Outcome::Success, branch0)
    } else {
        (Outcome::Failure, state.apply_embedded(op1, targets)?)
    };
    let mass = branch.norm_sq();
    if mass < T::degenerate_tol() {
        return Err(Error::Degenerate(mass.as_f64()));
    }
    Ok((outcome, branch.normalize()?))
}

impl<T: Real> MeasurementPair<T> {
    pub fn arity(&self) -> usize {
        self.m0.qubit_count().unwrap_or(0)
    }

    /// `p(psi; c) = <psi|M0^dagger M0|psi>`.
    pub fn success_prob(&self, state: &StateVector<T>, targets: &[usize]) -> Result<T> {
        Ok(state.apply_embedded(&self.m0, targets)?.norm_sq())
    }

    pub fn failure_prob(&self, state: &StateVector<T>, targets: &[usize]) -> Result<T> {
        Ok(state.apply_embedded(&self.m1, targets)?.norm_sq())
    }

    /// One measurement; consumes exactly one uniform draw.
    pub fn sample<R: Rng + ?Sized>(
        &self,
        state: &StateVector<T>,
        targets: &[usize],
        rng: &mut R,
    ) -> Result<(Outcome, StateVector<T>)> {
        measure(&self.m0, &self.m1, state, targets, rng)
    }

    /// Closed-form success probability of the whole protocol: a single
    /// attempt without a policy, otherwise
    /// `p (1 - |q|^{2k+2}) / (1 - |q|^2)`.
    pub fn analytic_success(
        &self,
        state: &StateVector<T>,
        targets: &[usize],
        policy: Option<&ReversalPolicy<T>>,
    ) -> Result<T> {
        let p = self.success_prob(state, targets)?;
        Ok(match policy {
            None => p,
            Some(pol) => protocol_success(p, pol.q.norm_sqr(), pol.max_reversals),
        })
    }

    /// `p(psi; 1)`, the `k -> infinity` limit of the optimal reversal scheme.
    pub fn limit_success(&self, state: &StateVector<T>, targets: &[usize]) -> Result<T> {
        Ok(self.success_prob(state, targets)? / self.c.norm_sqr())
    }

    /// Attempts the gate, reversing failures while the policy allows.
    pub fn run_with_reversal<R: Rng + ?Sized>(
        &self,
        policy: Option<&ReversalPolicy<T>>,
        state: &StateVector<T>,
        targets: &[usize],
        rng: &mut R,
    ) -> Result<ProtocolRun<T>> {
        let cap = policy.map_or(0, |p| p.max_reversals);
        let mut current = state.clone();
        let mut attempts = 0;
        let mut reversals = 0;
        loop {
            attempts += 1;
            let (outcome, post) = self.sample(&current, targets, rng)?;
            if outcome.is_success() || reversals >= cap {
                return Ok(ProtocolRun {
                    outcome,
                    state: post,
                    attempts,
                    reversals,
                });
            }
            let pol = policy.expect("cap > 0 implies a policy");
            let (rev, restored) = measure(&pol.r0, &pol.r1, &post, targets, rng)?;
            if !rev.is_success() {
                return Ok(ProtocolRun {
                    outcome: Outcome::Failure,
                    state: restored,
                    attempts,
                    reversals,
                });
            }
            reversals += 1;
            current = restored;
        }
    }
}

/// `p * (1 + |q|^2 + ... + |q|^{2k})`.
pub fn protocol_success<T: Real>(p: T, q_abs_sq: T, k: usize) -> T {
    let mut term = T::one();
    let mut sum = T::zero();
    for _ in 0..=k {
        sum += term;
        term *= q_abs_sq;
    }
    p * sum
}
