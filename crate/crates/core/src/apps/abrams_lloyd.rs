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

use num_complex::Complex;

use crate::circuit::{run_branch, run_sampled, CircuitProgram, InitialState};
use crate::error::{Error, Result};
use crate::gates;
use crate::linops::ComplexMatrix;
use crate::measure::Outcome;
use crate::qstate::{StateVector, MAX_QUBITS};
use crate::scalar::Real;

/// Boolean function on `n` bits given by its full truth table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruthTableOracle {
    n: usize,
    table: Vec<bool>,
}

impl TruthTableOracle {
    pub fn new(table: Vec<bool>) -> Result<Self> {
        if table.len() < 2 || !table.len().is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "truth table needs 2^n entries (n >= 1), got {}",
                table.len()
            )));
        }
        let n = table.len().trailing_zeros() as usize;
        if n + 1 > MAX_QUBITS {
            return Err(Error::InvalidParameter(format!("{n} input bits is too many")));
        }
        Ok(TruthTableOracle { n, table })
    }

    /// Parses a line of `2^n` characters `0`/`1`; character `x` is `F(x)`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line, bits) = rows.next().ok_or_else(|| Error::parse(1, "empty truth table"))?;
        if let Some((extra, _)) = rows.next() {
            return Err(Error::parse(extra, "truth table must be a single line"));
        }
        let table = bits
            .chars()
            .map(|ch| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::parse(line, format!("invalid truth-table character '{other}'"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(table).map_err(|e| Error::parse(line, e.to_string()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eval(&self, x: usize) -> bool {
        self.table[x]
    }

    /// Number of inputs with `F(x) = 1`.
    pub fn s(&self) -> usize {
        self.table.iter().filter(|&&b| b).count()
    }
}

/// `2^{-n/2} sum_x |x>|F(x)>` with the flag on qubit 0 and `x` on qubits
/// `1 ..= n`.
pub fn abrams_lloyd_initial_state<T: Real>(oracle: &TruthTableOracle) -> Result<StateVector<T>> {
    let n = oracle.n();
    let a = T::one() / T::lit((1u64 << n) as f64).sqrt();
    let mut amps = vec![Complex::new(T::zero(), T::zero()); 2 << n];
    for x in 0..1usize << n {
        amps[x << 1 | oracle.eval(x) as usize] = Complex::new(a, T::zero());
    }
    StateVector::from_amplitudes(n + 1, amps)
}

/// `N_AL` on `(qubit i, flag)` for `i = 1 ..= n`, at `c = 1`.
pub fn abrams_lloyd_program<T: Real>(oracle: &TruthTableOracle) -> Result<CircuitProgram<T>> {
    if oracle.s() >= 2 {
        return Err(Error::Unsupported(format!(
            "{} satisfying inputs; only s in {{0, 1}} is supported",
            oracle.s()
        )));
    }
    let n = oracle.n();
    let mut program = CircuitProgram::new(
        n + 1,
        InitialState::Amplitudes(abrams_lloyd_initial_state(oracle)?),
    )?;
    let one = Complex::new(T::one(), T::zero());
    for i in 1..=n {
        program.push(gates::abrams_lloyd(), vec![i, 0], one, None, 0)?;
    }
    Ok(program)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlMode {
    Branch,
    Sampled { seed: u64 },
}

#[derive(Clone, Debug)]
pub struct AlRun<T: Real> {
    pub outcome: Outcome,
    pub failed_step: Option<usize>,
    /// Probability of each `N_AL` step on the path taken.
    pub per_step: Vec<T>,
    pub total_probability: T,
    /// Probability of reading 1 on the flag; `None` after a failure.
    pub flag_one_probability: Option<T>,
    pub final_state: Option<StateVector<T>>,
}

impl<T: Real> AlRun<T> {
    /// Flag reading, when it is definite.
    pub fn s_found(&self) -> Option<bool> {
        let p = self.flag_one_probability?;
        let tol = T::factor_tol();
        if p > T::one() - tol {
            Some(true)
        } else if p < tol {
            Some(false)
        } else {
            None
        }
    }
}

pub fn abrams_lloyd_run<T: Real>(oracle: &TruthTableOracle, mode: AlMode) -> Result<AlRun<T>> {
    let program = abrams_lloyd_program(oracle)?;
    let rec = match mode {
        AlMode::Branch => run_branch(&program)?,
        AlMode::Sampled { seed } => run_sampled(&program, seed)?,
    };
    let flag_one_probability = rec.final_state.as_ref().map(|s| {
        s.amplitudes()
            .iter()
            .skip(1)
            .step_by(2)
            .map(|z| z.norm_sqr())
            .sum()
    });
    Ok(AlRun {
        outcome: rec.outcome,
        failed_step: rec.failed_step,
        per_step: rec.per_step.iter().map(|s| s.p).collect(),
        total_probability: rec.total_probability,
        flag_one_probability,
        final_state: rec.final_state,
    })
}

/// The explicit failure operator
/// `6^{-1/2} [[sqrt6,0,0,0],[0,0,0,0],[0,1,2,0],[0,-1,0,2]]`.
/// It is not Hermitian; it shares `M1^dagger M1 = I - N_AL^dagger N_AL`
/// with the principal square root.
pub fn abrams_lloyd_failure_op<T: Real>() -> ComplexMatrix<T> {
    let r6 = 6f64.sqrt();
    let k = 1.0 / r6;
    ComplexMatrix::from_real(
        4,
        4,
        &[
            1.0, 0.0, 0.0, 0.0, //
            0.0, 0.0, 0.0, 0.0, //
            0.0, k, 2.0 * k, 0.0, //
            0.0, -k, 0.0, 2.0 * k,
        ],
    )
    .expect("4x4")
}
