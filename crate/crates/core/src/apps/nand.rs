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

use std::collections::{HashMap, HashSet};

use num_complex::Complex;

use crate::circuit::{CircuitProgram, InitialState};
use crate::error::{Error, Result};
use crate::gates;
use crate::qstate::StateVector;
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NandNode {
    /// `out = NAND a b`; consumes `a` and `b`.
    Nand { out: String, a: String, b: String },
    /// `outs[0] outs[1] = COPY src`; consumes `src`.
    Copy { src: String, outs: [String; 2] },
}

/// Linear NAND netlist over inputs `x0 .. x{k-1}`: every wire is consumed at
/// most once, so fanout needs explicit `COPY` nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NandNetlist {
    n_inputs: usize,
    nodes: Vec<NandNode>,
    outputs: Vec<String>,
}

fn input_name(i: usize) -> String {
    format!("x{i}")
}

impl NandNetlist {
    /// Parses `inputs <k>`, `w = NAND a b`, `b c = COPY a` and `outputs w...`
    /// lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n_inputs = None;
        let mut nodes = Vec::new();
        let mut outputs: Option<(Vec<String>, usize)> = None;
        let mut defined: HashSet<String> = HashSet::new();
        let mut live: HashSet<String> = HashSet::new();

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |msg: String| Error::parse(line, msg);
            let tokens: Vec<&str> = content.split_whitespace().collect();
            if tokens[0] == "inputs" {
                if n_inputs.is_some() || !nodes.is_empty() {
                    return Err(err("'inputs' must come first and appear once".into()));
                }
                let k = match tokens.as_slice() {
                    [_, k] => k.parse::<usize>().map_err(|_| err(format!("invalid input count '{k}'")))?,
                    _ => return Err(err("expected 'inputs <k>'".into())),
                };
                if k == 0 {
                    return Err(err("need at least one input".into()));
                }
                for i in 0..k {
                    defined.insert(input_name(i));
                    live.insert(input_name(i));
                }
                n_inputs = Some(k);
                continue;
            }
            if n_inputs.is_none() {
                return Err(err("expected 'inputs <k>' first".into()));
            }
            if outputs.is_some() {
                return Err(err("'outputs' must be the last line".into()));
            }
            if tokens[0] == "outputs" {
                if tokens.len() < 2 {
                    return Err(err("'outputs' needs at least one wire".into()));
                }
                outputs = Some((tokens[1..].iter().map(|s| s.to_string()).collect(), line));
                continue;
            }
            let mut consume = |w: &str| -> Result<()> {
                if live.remove(w) {
                    Ok(())
                } else if defined.contains(w) {
                    Err(err(format!("wire '{w}' is already consumed")))
                } else {
                    Err(err(format!("undefined wire '{w}'")))
                }
            };
            let node = match tokens.as_slice() {
                [out, "=", "NAND", a, b] => {
                    if a == b {
                        return Err(err(format!("NAND reads '{a}' twice; COPY it first")));
                    }
                    consume(a)?;
                    consume(b)?;
                    NandNode::Nand {
                        out: out.to_string(),
                        a: a.to_string(),
                        b: b.to_string(),
                    }
                }
                [o1, o2, "=", "COPY", src] => {
                    if o1 == o2 {
                        return Err(err(format!("COPY outputs must differ, got '{o1}' twice")));
                    }
                    consume(src)?;
                    NandNode::Copy {
                        src: src.to_string(),
                        outs: [o1.to_string(), o2.to_string()],
                    }
                }
                _ => return Err(err(format!("unrecognized line '{content}'"))),
            };
            let produced: Vec<&String> = match &node {
                NandNode::Nand { out, .. } => vec![out],
                NandNode::Copy { outs, .. } => outs.iter().collect(),
            };
            for w in produced {
                if !defined.insert(w.clone()) {
                    return Err(err(format!("wire '{w}' defined twice")));
                }
                live.insert(w.clone());
            }
            nodes.push(node);
        }

        let n_inputs = n_inputs.ok_or_else(|| Error::parse(1, "missing 'inputs' line"))?;
        let (outputs, line) = outputs.ok_or_else(|| Error::parse(text.lines().count().max(1), "missing 'outputs' line"))?;
        let mut seen = HashSet::new();
        for w in &outputs {
            if !live.contains(w) || !seen.insert(w) {
                return Err(Error::parse(line, format!("output '{w}' is not a live wire")));
            }
        }
        Ok(NandNetlist {
            n_inputs,
            nodes,
            outputs,
        })
    }

    pub fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    pub fn nodes(&self) -> &[NandNode] {
        &self.nodes
    }

    pub fn outputs(&self) -> &[String] {
        &self.outputs
    }

    pub fn nand_count(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, NandNode::Nand { .. })).count()
    }

    pub fn copy_count(&self) -> usize {
        self.nodes.len() - self.nand_count()
    }

    /// Classical evaluation; input `xi` is bit `i` of `x`.
    pub fn evaluate(&self, x: usize) -> Vec<bool> {
        let mut values: HashMap<&str, bool> = HashMap::new();
        let names: Vec<String> = (0..self.n_inputs).map(input_name).collect();
        for (i, name) in names.iter().enumerate() {
            values.insert(name, x >> i & 1 == 1);
        }
        for node in &self.nodes {
            match node {
                NandNode::Nand { out, a, b } => {
                    let v = !(values[a.as_str()] && values[b.as_str()]);
                    values.insert(out, v);
                }
                NandNode::Copy { src, outs } => {
                    let v = values[src.as_str()];
                    values.insert(&outs[0], v);
                    values.insert(&outs[1], v);
                }
            }
        }
        self.outputs.iter().map(|w| values[w.as_str()]).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QubitSavings {
    pub quantum_route: usize,
    pub toffoli_route: usize,
    pub saved: usize,
}

/// Register widths with the first `m` NAND nodes quantum and with none.
pub fn qubit_savings(netlist: &NandNetlist, m: usize) -> Result<QubitSavings> {
    check_split(netlist, m)?;
    let base = netlist.n_inputs + netlist.copy_count();
    let toffoli_route = base + netlist.nand_count();
    let quantum_route = toffoli_route - m;
    Ok(QubitSavings {
        quantum_route,
        toffoli_route,
        saved: toffoli_route - quantum_route,
    })
}

fn check_split(netlist: &NandNetlist, m: usize) -> Result<()> {
    if m > netlist.nand_count() {
        return Err(Error::Split(format!(
            "{m} quantum NAND gates requested, netlist has {}",
            netlist.nand_count()
        )));
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct CompiledNand<T: Real> {
    pub program: CircuitProgram<T>,
    pub n_inputs: usize,
    pub output_qubits: Vec<usize>,
    pub quantum_nands: usize,
}

impl<T: Real> CompiledNand<T> {
    /// Input qubits `0 .. k` in basis state `x`, work qubits in `|0>`.
    pub fn basis_input(&self, x: usize) -> InitialState<T> {
        InitialState::Basis(x)
    }

    /// Equal superposition over the inputs, work qubits in `|0>`.
    pub fn uniform_input(&self) -> Result<InitialState<T>> {
        let n = self.program.n_qubits();
        let k = self.n_inputs;
        let a = T::one() / T::lit((1u64 << k) as f64).sqrt();
        let mut amps = vec![Complex::new(T::zero(), T::zero()); 1 << n];
        for z in amps.iter_mut().take(1 << k) {
            *z = Complex::new(a, T::zero());
        }
        Ok(InitialState::Amplitudes(StateVector::from_amplitudes(n, amps)?))
    }

    /// Output bits of a final state that is a single basis state.
    pub fn read_outputs(&self, state: &StateVector<T>) -> Option<Vec<bool>> {
        let (index, z) = state
            .amplitudes()
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm_sqr().partial_cmp(&b.1.norm_sqr()).expect("finite"))?;
        if z.norm_sqr() < T::one() - T::factor_tol() {
            return None;
        }
        Some(self.output_qubits.iter().map(|&q| index >> q & 1 == 1).collect())
    }
}

/// Compiles the netlist: the first `m` NAND nodes become two-qubit quantum
/// NAND gates with measurement constant `c` (output on the first input's
/// qubit), later NAND nodes become a Toffoli onto a fresh qubit followed by
/// `X`, and `COPY` becomes a CNOT onto a fresh qubit.
pub fn compile_nand<T: Real>(netlist: &NandNetlist, m: usize, c: T) -> Result<CompiledNand<T>> {
    let widths = qubit_savings(netlist, m)?;
    let mut program = CircuitProgram::new(widths.quantum_route, InitialState::Basis(0))?;
    let mut qubit: HashMap<&str, usize> = HashMap::new();
    let names: Vec<String> = (0..netlist.n_inputs).map(input_name).collect();
    for (i, name) in names.iter().enumerate() {
        qubit.insert(name, i);
    }
    let mut next = netlist.n_inputs;
    let mut fresh = || {
        next += 1;
        next - 1
    };
    let one = Complex::new(T::one(), T::zero());
    let mut quantum_left = m;
    for node in &netlist.nodes {
        match node {
            NandNode::Copy { src, outs } => {
                let q = qubit[src.as_str()];
                let f = fresh();
                program.push(gates::cnot(), vec![q, f], one, None, 0)?;
                qubit.insert(&outs[0], q);
                qubit.insert(&outs[1], f);
            }
            NandNode::Nand { out, a, b } => {
                let (qa, qb) = (qubit[a.as_str()], qubit[b.as_str()]);
                if quantum_left > 0 {
                    quantum_left -= 1;
                    program.push(gates::nand(), vec![qa, qb], Complex::new(c, T::zero()), None, 0)?;
                    qubit.insert(out, qa);
                } else {
                    let f = fresh();
                    program.push(gates::ckx(2)?, vec![qa, qb, f], one, None, 0)?;
                    program.push(gates::x(), vec![f], one, None, 0)?;
                    qubit.insert(out, f);
                }
            }
        }
    }
    debug_assert_eq!(next, widths.quantum_route);
    Ok(CompiledNand {
        output_qubits: netlist.outputs.iter().map(|w| qubit[w.as_str()]).collect(),
        program,
        n_inputs: netlist.n_inputs,
        quantum_nands: m,
    })
}
