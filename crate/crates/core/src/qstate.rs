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

//! n-qubit state vectors.
//!
//! Qubit 0 is the least significant bit of a basis-state index. When a
//! k-qubit operator is applied to `targets`, `targets[0]` plays the role of
//! the operator's most significant local qubit, so a gate written in the
//! `|q_{k-1} ... q_0>` basis is applied with `targets = [q_{k-1}, ..., q_0]`.

use std::fmt::Write;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linops::ComplexMatrix;
use crate::scalar::Real;

pub const MAX_QUBITS: usize = 24;

/// Amplitudes below this modulus are omitted from state dumps.
pub const DUMP_CUTOFF: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T> {
    n_qubits: usize,
    amps: Vec<Complex<T>>,
}

fn check_width(n_qubits: usize) -> Result<()> {
    if n_qubits == 0 || n_qubits > MAX_QUBITS {
        return Err(Error::InvalidParameter(format!(
            "qubit count {n_qubits} outside 1..={MAX_QUBITS}"
        )));
    }
    Ok(())
}

impl<T: Real> StateVector<T> {
    /// Wraps raw amplitudes without normalizing them.
    pub fn from_amplitudes(n_qubits: usize, amps: Vec<Complex<T>>) -> Result<Self> {
        check_width(n_qubits)?;
        if amps.len() != 1 << n_qubits {
            return Err(Error::Shape(format!(
                "{} amplitudes for {n_qubits} qubit(s)",
                amps.len()
            )));
        }
        Ok(StateVector { n_qubits, amps })
    }

    /// Computational basis state `|index>`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        check_width(n_qubits)?;
        if index >= 1 << n_qubits {
            return Err(Error::IndexOutOfRange { index, n_qubits });
        }
        let mut amps = vec![Complex::zero(); 1 << n_qubits];
        amps[index] = Complex::new(T::one(), T::zero());
        Ok(StateVector { n_qubits, amps })
    }

    /// Equal-weight superposition of every basis state.
    pub fn uniform(n_qubits: usize) -> Result<Self> {
        check_width(n_qubits)?;
        let dim = 1usize << n_qubits;
        let a = T::one() / T::lit(dim as f64).sqrt();
        Ok(StateVector {
            n_qubits,
            amps: vec![Complex::new(a, T::zero()); dim],
        })
    }

    /// Normalized superposition with the given real weights.
    pub fn from_real(n_qubits: usize, weights: &[f64]) -> Result<Self> {
        let amps = weights
            .iter()
            .map(|&w| Complex::new(T::lit(w), T::zero()))
            .collect();
        Self::from_amplitudes(n_qubits, amps)?.normalize()
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex<T> {
        self.amps[index]
    }

    pub fn norm_sq(&self) -> T {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Returns the unit vector along `self`; fails when the state has been
    /// annihilated.
    pub fn normalize(&self) -> Result<Self> {
        let n2 = self.norm_sq();
        let norm = n2.sqrt();
        if !(norm > T::annihilation_tol()) {
            return Err(Error::Annihilated(n2.as_f64()));
        }
        let inv = T::one() / norm;
        Ok(StateVector {
            n_qubits: self.n_qubits,
            amps: self.amps.iter().map(|&z| z * inv).collect(),
        })
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.amps
            .iter()
            .zip(&other.amps)
            .fold(Complex::zero(), |acc, (&a, &b)| acc + a.conj() * b)
    }

    /// `|<a|b>|^2` for normalized inputs.
    pub fn fidelity(&self, other: &Self) -> T {
        self.inner(other).norm_sqr()
    }

    /// Validates a target list against this register.
    pub fn check_targets(&self, targets: &[usize]) -> Result<()> {
        check_targets(self.n_qubits, targets)
    }

    /// Applies a `2^k x 2^k` operator to `targets`, identity elsewhere.
    /// The result is not renormalized.
    pub fn apply_embedded(&self, op: &ComplexMatrix<T>, targets: &[usize]) -> Result<Self> {
        let mut out = self.clone();
        out.apply_embedded_mut(op, targets)?;
        Ok(out)
    }

    pub fn apply_embedded_mut(&mut self, op: &ComplexMatrix<T>, targets: &[usize]) -> Result<()> {
        let k = targets.len();
        if op.qubit_count() != Some(k) {
            return Err(Error::Shape(format!(
                "{}x{} operator on {k} target(s)",
                op.rows(),
                op.cols()
            )));
        }
        self.check_targets(targets)?;

        let offsets: Vec<usize> = (0..1usize << k)
            .map(|local| {
                targets
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| local >> (k - 1 - j) & 1 == 1)
                    .fold(0, |acc, (_, &t)| acc | 1 << t)
            })
            .collect();
        let mask = offsets[offsets.len() - 1];
        let mut gathered = vec![Complex::zero(); offsets.len()];
        for base in 0..self.amps.len() {
            if base & mask != 0 {
                continue;
            }
            for (g, &off) in gathered.iter_mut().zip(&offsets) {
                *g = self.amps[base | off];
            }
            for (row, &off) in offsets.iter().enumerate() {
                self.amps[base | off] = op
                    .row(row)
                    .iter()
                    .zip(&gathered)
                    .fold(Complex::zero(), |acc, (&m, &x)| acc + m * x);
            }
        }
        Ok(())
    }

    /// Dump of the nonzero amplitudes: `binary_index re im` per line.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, z) in self.amps.iter().enumerate() {
            if z.norm() > T::lit(DUMP_CUTOFF) {
                let _ = writeln!(
                    out,
                    "{:0width$b} {} {}",
                    i,
                    z.re.as_f64(),
                    z.im.as_f64(),
                    width = self.n_qubits
                );
            }
        }
        out
    }

    /// Reads a dump back; unlisted amplitudes are zero. The result is not
    /// normalized.
    pub fn parse_dump(n_qubits: usize, text: &str) -> Result<Self> {
        check_width(n_qubits)?;
        let mut amps = vec![Complex::zero(); 1 << n_qubits];
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = content.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(Error::parse(line, "expected 'index re im'"));
            }
            if parts[0].len() != n_qubits {
                return Err(Error::parse(
                    line,
                    format!("index '{}' must have {n_qubits} binary digits", parts[0]),
                ));
            }
            let index = usize::from_str_radix(parts[0], 2)
                .map_err(|_| Error::parse(line, format!("invalid binary index '{}'", parts[0])))?;
            let num = |s: &str| {
                s.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .map(T::lit)
                    .ok_or_else(|| Error::parse(line, format!("invalid number '{s}'")))
            };
            amps[index] = Complex::new(num(parts[1])?, num(parts[2])?);
        }
        Ok(StateVector { n_qubits, amps })
    }
}

pub(crate) fn check_targets(n_qubits: usize, targets: &[usize]) -> Result<()> {
    for (i, &t) in targets.iter().enumerate() {
        if t >= n_qubits {
            return Err(Error::IndexOutOfRange {
                index: t,
                n_qubits,
            });
        }
        if targets[..i].contains(&t) {
            return Err(Error::DuplicateTarget(t));
        }
    }
    Ok(())
}

/// Full-register matrix of `op` embedded on `targets`, built column by column.
pub fn embed_operator<T: Real>(
    op: &ComplexMatrix<T>,
    targets: &[usize],
    n_qubits: usize,
) -> Result<ComplexMatrix<T>> {
    let dim = 1usize << n_qubits;
    let mut full = ComplexMatrix::zeros(dim, dim);
    for col in 0..dim {
        let out = StateVector::basis(n_qubits, col)?.apply_embedded(op, targets)?;
        for (row, &z) in out.amplitudes().iter().enumerate() {
            full[(row, col)] = z;
        }
    }
    Ok(full)
}
