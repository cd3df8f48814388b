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

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::gates::{self, GateSpec};
use crate::linops::ComplexMatrix;
use crate::qstate::{check_targets, StateVector};
use crate::scalar::Real;

#[derive(Clone, Debug)]
pub struct NetlistGate<T: Real> {
    pub gate: GateSpec<T>,
    pub targets: Vec<usize>,
}

/// Ordered gate list (first entry applied first) on `n_data + n_ancillas`
/// qubits. Ancillas occupy the highest indices and start in `|0>`.
///
/// The operator product equals `target / accumulated_scale`; the scale
/// collects the factors dropped whenever an `N1(x)` with `x > 1` is replaced
/// by `X N1(1/x) X`.
#[derive(Clone, Debug)]
pub struct GateNetlist<T: Real> {
    pub n_data: usize,
    pub n_ancillas: usize,
    pub gates: Vec<NetlistGate<T>>,
    pub accumulated_scale: T,
}

impl<T: Real> GateNetlist<T> {
    pub fn new(n_data: usize, n_ancillas: usize) -> Self {
        GateNetlist {
            n_data,
            n_ancillas,
            gates: Vec::new(),
            accumulated_scale: T::one(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_data + self.n_ancillas
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: GateSpec<T>, targets: Vec<usize>) {
        debug_assert_eq!(gate.arity(), targets.len());
        self.gates.push(NetlistGate { gate, targets });
    }

    /// Appends another netlist on the same register.
    pub fn append(&mut self, other: GateNetlist<T>) {
        self.gates.extend(other.gates);
        self.accumulated_scale *= other.accumulated_scale;
    }

    /// Emits `N1(x)` for any `x > 0`: nothing when `x = 1`, `N1(x)` when
    /// `x < 1`, and `X N1(1/x) X` (recording the factor `x`) when `x > 1`.
    pub(crate) fn push_n1(&mut self, qubit: usize, x: T) -> Result<()> {
        if x == T::one() {
            return Ok(());
        }
        if x < T::one() {
            self.push(gates::n1(x)?, vec![qubit]);
        } else {
            self.push(gates::x(), vec![qubit]);
            self.push(gates::n1(T::one() / x)?, vec![qubit]);
            self.push(gates::x(), vec![qubit]);
            self.accumulated_scale *= x;
        }
        Ok(())
    }

    /// Counts of gates by label prefix, e.g. `N1`, `CNOT`, `X`.
    pub fn count(&self, name: &str) -> usize {
        self.gates
            .iter()
            .filter(|g| gates::split_label(g.gate.label()).is_ok_and(|(n, _)| n == name))
            .count()
    }

    /// Full-register operator `G_last ... G_first`.
    pub fn operator(&self) -> Result<ComplexMatrix<T>> {
        let n = self.n_qubits();
        let dim = 1usize << n;
        let mut out = ComplexMatrix::zeros(dim, dim);
        for col in 0..dim {
            let mut s = StateVector::basis(n, col)?;
            for g in &self.gates {
                s.apply_embedded_mut(g.gate.matrix(), &g.targets)?;
            }
            for (row, &z) in s.amplitudes().iter().enumerate() {
                out[(row, col)] = z;
            }
        }
        Ok(out)
    }

    /// Block of [`operator`](Self::operator) with every ancilla in `|0>` on
    /// input and output.
    pub fn data_operator(&self) -> Result<ComplexMatrix<T>> {
        let full = self.operator()?;
        let dim = 1usize << self.n_data;
        let mut out = ComplexMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                out[(i, j)] = full[(i, j)];
            }
        }
        Ok(out)
    }

    /// `max |scale * data_operator - target|`. Since the scale is at least
    /// one this also bounds `max |data_operator - target / scale|`.
    pub fn reconstruction_residual(&self, target: &ComplexMatrix<T>) -> Result<T> {
        let got = self.data_operator()?.scale_real(self.accumulated_scale);
        if got.rows() != target.rows() || got.cols() != target.cols() {
            return Err(Error::Shape(format!(
                "netlist acts on {} data qubit(s), target is {}x{}",
                self.n_data,
                target.rows(),
                target.cols()
            )));
        }
        Ok(got.max_abs_diff(target))
    }

    /// Text form: a `qubits N scale S [ancillas K]` header, then one
    /// `LABEL q...` line per gate.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "qubits {} scale {}",
            self.n_qubits(),
            self.accumulated_scale.as_f64()
        );
        if self.n_ancillas > 0 {
            let _ = write!(out, " ancillas {}", self.n_ancillas);
        }
        out.push('\n');
        for g in &self.gates {
            let qs: Vec<String> = g.targets.iter().map(|q| q.to_string()).collect();
            let _ = writeln!(out, "{} {}", g.gate.label(), qs.join(" "));
        }
        out
    }
}

/// Parses the text form. `MAT(path)` labels are handed to `load_matrix`.
pub fn parse_netlist<T: Real>(
    text: &str,
    mut load_matrix: impl FnMut(&str) -> Result<ComplexMatrix<T>>,
) -> Result<GateNetlist<T>> {
    let mut netlist: Option<GateNetlist<T>> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some(net) = netlist.as_mut() else {
            let bad = || Error::parse(line, "expected 'qubits N scale S [ancillas K]'");
            if !(tokens.len() == 4 || tokens.len() == 6) || tokens[0] != "qubits" || tokens[2] != "scale" {
                return Err(bad());
            }
            let n: usize = tokens[1].parse().map_err(|_| bad())?;
            let scale: f64 = tokens[3].parse().map_err(|_| bad())?;
            let anc: usize = if tokens.len() == 6 {
                if tokens[4] != "ancillas" {
                    return Err(bad());
                }
                tokens[5].parse().map_err(|_| bad())?
            } else {
                0
            };
            if n == 0 || anc >= n || !(scale > 0.0) {
                return Err(bad());
            }
            let mut net = GateNetlist::new(n - anc, anc);
            net.accumulated_scale = T::lit(scale);
            netlist = Some(net);
            continue;
        };
        let label = tokens[0];
        let gate = match gates::split_label(label).map_err(|e| Error::parse(line, e.to_string()))? {
            ("MAT", Some(path)) => {
                let m = load_matrix(path).map_err(|e| Error::parse(line, e.to_string()))?;
                GateSpec::unitary(label, m).map_err(|e| Error::parse(line, e.to_string()))?
            }
            _ => gates::standard(label).map_err(|e| Error::parse(line, e.to_string()))?,
        };
        let targets = tokens[1..]
            .iter()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::parse(line, "invalid qubit index"))?;
        if targets.len() != gate.arity() {
            return Err(Error::parse(
                line,
                format!("{label} acts on {} qubit(s), got {}", gate.arity(), targets.len()),
            ));
        }
        check_targets(net.n_qubits(), &targets).map_err(|e| Error::parse(line, e.to_string()))?;
        net.push(gate, targets);
    }
    netlist.ok_or_else(|| Error::parse(1, "empty netlist"))
}
