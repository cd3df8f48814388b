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

use crate::error::{Error, Result};
use crate::gates::{self, GateSpec};
use crate::linops::parse_matrix;
use crate::qstate::StateVector;
use crate::scalar::Real;

use super::{CircuitProgram, InitialState, QChoice};

struct Options<T> {
    c: Complex<T>,
    q: Option<QChoice<T>>,
    k: usize,
}

fn parse_real<T: Real>(s: &str, what: &str) -> std::result::Result<T, String> {
    s.parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .map(T::lit)
        .ok_or_else(|| format!("invalid {what} '{s}'"))
}

fn parse_options<T: Real>(tokens: &[&str]) -> std::result::Result<(Vec<usize>, Options<T>), String> {
    let mut targets = Vec::new();
    let mut opts = Options {
        c: Complex::new(T::one(), T::zero()),
        q: None,
        k: 0,
    };
    for tok in tokens {
        match tok.split_once('=') {
            None => {
                targets.push(tok.parse::<usize>().map_err(|_| format!("invalid qubit index '{tok}'"))?);
            }
            Some(("c", v)) => {
                opts.c = match v.split_once(',') {
                    Some((re, im)) => Complex::new(parse_real(re, "c")?, parse_real(im, "c")?),
                    None => Complex::new(parse_real(v, "c")?, T::zero()),
                };
            }
            Some(("q", "opt")) => opts.q = Some(QChoice::Optimal),
            Some(("q", v)) => opts.q = Some(QChoice::Value(parse_real(v, "q")?)),
            Some(("k", v)) => opts.k = v.parse().map_err(|_| format!("invalid k '{v}'"))?,
            Some((key, _)) => return Err(format!("unknown option '{key}'")),
        }
    }
    if targets.is_empty() {
        return Err("missing target qubits".into());
    }
    Ok((targets, opts))
}

/// Parses the circuit text format. `read` loads files named by `init file`
/// and by `matrixgate` or `MAT(path)` gates.
pub fn parse_circuit<T: Real>(
    text: &str,
    mut read: impl FnMut(&str) -> Result<String>,
) -> Result<CircuitProgram<T>> {
    let mut n_qubits: Option<(usize, usize)> = None;
    let mut init: Option<(InitialState<T>, usize)> = None;
    let mut program: Option<CircuitProgram<T>> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |msg: String| Error::parse(line, msg);
        let wrap = |e: Error| Error::parse(line, e.to_string());
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens[0] {
            "qubits" => {
                if n_qubits.is_some() {
                    return Err(err("duplicate 'qubits' line".into()));
                }
                let n = match tokens.as_slice() {
                    [_, n] => n.parse::<usize>().map_err(|_| err(format!("invalid qubit count '{n}'")))?,
                    _ => return Err(err("expected 'qubits <n>'".into())),
                };
                n_qubits = Some((n, line));
            }
            "init" => {
                let Some((n, _)) = n_qubits else {
                    return Err(err("'init' before 'qubits'".into()));
                };
                if init.is_some() || program.is_some() {
                    return Err(err("'init' must appear once, before any gate".into()));
                }
                let spec = match tokens.as_slice() {
                    [_, "basis", i] => InitialState::Basis(
                        i.parse().map_err(|_| err(format!("invalid basis index '{i}'")))?,
                    ),
                    [_, "uniform"] => InitialState::Uniform,
                    [_, "file", path] => {
                        let text = read(path).map_err(wrap)?;
                        InitialState::Amplitudes(StateVector::parse_dump(n, &text).map_err(wrap)?)
                    }
                    _ => return Err(err("expected 'init basis <index>', 'init uniform' or 'init file <path>'".into())),
                };
                init = Some((spec, line));
            }
            kw @ ("gate" | "matrixgate") => {
                let Some((n, qline)) = n_qubits else {
                    return Err(err(format!("'{kw}' before 'qubits'")));
                };
                if program.is_none() {
                    let (spec, at) = init.take().unwrap_or((InitialState::Basis(0), qline));
                    program = Some(
                        CircuitProgram::new(n, spec).map_err(|e| Error::parse(at, e.to_string()))?,
                    );
                }
                let name = tokens.get(1).ok_or_else(|| err(format!("'{kw}' needs a gate")))?;
                let path = match (kw, gates::split_label(name).map_err(wrap)?) {
                    ("matrixgate", _) => Some(*name),
                    (_, ("MAT", Some(path))) => Some(path),
                    _ => None,
                };
                let gate: GateSpec<T> = match path {
                    None => gates::standard(name).map_err(wrap)?,
                    Some(path) => {
                        let m = parse_matrix(&read(path).map_err(wrap)?).map_err(wrap)?;
                        gates::normalize_gate(&m).map_err(wrap)?.with_label(format!("MAT({path})"))
                    }
                };
                let (targets, opts) = parse_options::<T>(&tokens[2..]).map_err(err)?;
                program
                    .as_mut()
                    .expect("created above")
                    .push(gate, targets, opts.c, opts.q, opts.k)
                    .map_err(wrap)?;
            }
            other => return Err(err(format!("unknown directive '{other}'"))),
        }
    }

    if let Some(p) = program {
        return Ok(p);
    }
    let Some((n, qline)) = n_qubits else {
        return Err(Error::parse(1, "missing 'qubits' line"));
    };
    let (spec, at) = init.unwrap_or((InitialState::Basis(0), qline));
    CircuitProgram::new(n, spec).map_err(|e| Error::parse(at, e.to_string()))
}
