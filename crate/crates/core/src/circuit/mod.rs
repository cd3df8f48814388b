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

//! Circuit representation, the circuit text format and the execution
//! engines.

mod engine;
mod parse;

pub use engine::{rng_for_trial, run_branch, run_ensemble, run_sampled, EnsembleStats, RunRecord, StepRecord};
pub use parse::parse_circuit;

use std::path::Path;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::gates::GateSpec;
use crate::measure::{build_pair, build_reversal, MeasurementPair, ReversalPolicy};
use crate::qstate::{check_targets, StateVector};
use crate::scalar::Real;

#[derive(Clone, Debug)]
pub enum InitialState<T: Real> {
    Basis(usize),
    Uniform,
    Amplitudes(StateVector<T>),
}

/// Reversing-measurement strength.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum QChoice<T> {
    /// `q = sqrt(1 - |c|^2)`.
    Optimal,
    Value(T),
}

/// One gate application together with its measurement operators.
#[derive(Clone, Debug)]
pub struct Step<T: Real> {
    pub gate: GateSpec<T>,
    pub targets: Vec<usize>,
    pub pair: MeasurementPair<T>,
    pub policy: Option<ReversalPolicy<T>>,
}

impl<T: Real> Step<T> {
    /// Unitary gates at `|c| = 1` never fail and are applied directly.
    pub fn is_deterministic(&self) -> bool {
        self.gate.is_unitary() && (self.pair.c.norm() - T::one()).abs() <= T::epsilon() * T::lit(4.0)
    }
}

#[derive(Clone, Debug)]
pub struct CircuitProgram<T: Real> {
    n_qubits: usize,
    init: InitialState<T>,
    steps: Vec<Step<T>>,
}

impl<T: Real> CircuitProgram<T> {
    pub fn new(n_qubits: usize, init: InitialState<T>) -> Result<Self> {
        let program = CircuitProgram {
            n_qubits,
            init,
            steps: Vec::new(),
        };
        program.initial_state()?;
        Ok(program)
    }

    /// Reads a circuit file; relative `init file` and `matrixgate` paths are
    /// resolved against the file's directory.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = read_text(path)?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        parse_circuit(&text, |p| read_text(&base.join(p)))
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn init(&self) -> &InitialState<T> {
        &self.init
    }

    pub fn steps(&self) -> &[Step<T>] {
        &self.steps
    }

    /// Replaces the initial state, keeping the old one if the new one is invalid.
    pub fn set_init(&mut self, init: InitialState<T>) -> Result<()> {
        let old = std::mem::replace(&mut self.init, init);
        if let Err(e) = self.initial_state() {
            self.init = old;
            return Err(e);
        }
        Ok(())
    }

    pub fn initial_state(&self) -> Result<StateVector<T>> {
        match &self.init {
            InitialState::Basis(i) => StateVector::basis(self.n_qubits, *i),
            InitialState::Uniform => StateVector::uniform(self.n_qubits),
            InitialState::Amplitudes(s) => {
                if s.n_qubits() != self.n_qubits {
                    return Err(Error::Shape(format!(
                        "initial state has {} qubit(s), register has {}",
                        s.n_qubits(),
                        self.n_qubits
                    )));
                }
                s.normalize()
            }
        }
    }

    /// Appends a gate with measurement constant `c`. A policy is attached
    /// when `q` is given or `k > 0`; `k > 0` without `q` uses the optimum.
    pub fn push(
        &mut self,
        gate: GateSpec<T>,
        targets: Vec<usize>,
        c: Complex<T>,
        q: Option<QChoice<T>>,
        k: usize,
    ) -> Result<()> {
        if gate.arity() != targets.len() {
            return Err(Error::Shape(format!(
                "{} acts on {} qubit(s), got {} target(s)",
                gate.label(),
                gate.arity(),
                targets.len()
            )));
        }
        check_targets(self.n_qubits, &targets)?;
        let pair = build_pair(&gate, c)?;
        let policy = match (q, k) {
            (None, 0) => None,
            (q, k) => {
                let q = match q {
                    None | Some(QChoice::Optimal) => None,
                    Some(QChoice::Value(v)) => Some(Complex::new(v, T::zero())),
                };
                Some(build_reversal(&pair, q)?.with_max_reversals(k))
            }
        };
        self.steps.push(Step {
            gate,
            targets,
            pair,
            policy,
        });
        Ok(())
    }
}

pub(crate) fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}
