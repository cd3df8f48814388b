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


//! JSON with 17 significant digits and plain aligned tables.

use std::fmt::Write as _;
use std::io;

use nucirc::{Complex, Matrix, State};
use serde::Serialize;
use serde_json::ser::{Formatter, Serializer};
use serde_json::{json, Value};

/// Compact JSON whose floats always carry 17 significant digits.
struct Digits17;

impl Formatter for Digits17 {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }
}

pub fn to_json(value: &Value) -> String {
    let mut buf = Vec::new();
    value
        .serialize(&mut Serializer::with_formatter(&mut buf, Digits17))
        .expect("serializing into memory");
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}

/// Nonzero amplitudes as `{index, re, im}` objects.
pub fn state_json(state: &State) -> Value {
    let amps: Vec<Value> = state
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(_, z)| z.norm_sqr() > 0.0)
        .map(|(i, z)| json!({ "index": i, "re": z.re, "im": z.im }))
        .collect();
    Value::Array(amps)
}

/// Rows of `[re, im]` pairs.
pub fn matrix_json(m: &Matrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array(m.row(i).iter().map(|z| json!([z.re, z.im])).collect()))
        .collect();
    Value::Array(rows)
}

pub fn ket(index: usize, n_qubits: usize) -> String {
    format!("|{index:0n_qubits$b}>")
}

pub fn complex(z: Complex<f64>) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).chain([header.len()]).max().unwrap_or(0);
    let mut widths = vec![0; cols];
    for row in rows.iter().map(|r| r.iter().map(String::as_str).collect::<Vec<_>>()).chain([header.to_vec()]) {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    if !header.is_empty() {
        line(header.to_vec());
    }
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

/// `key  value` lines.
pub fn fields(pairs: &[(&str, String)]) -> String {
    let rows: Vec<Vec<String>> = pairs.iter().map(|(k, v)| vec![k.to_string(), v.clone()]).collect();
    table(&[], &rows)
}

pub fn matrix_table(m: &Matrix) -> String {
    let rows: Vec<Vec<String>> = (0..m.rows())
        .map(|i| {
            let mut r = vec![String::new()];
            r.extend(m.row(i).iter().map(|z| complex(*z)));
            r
        })
        .collect();
    table(&[], &rows)
}
