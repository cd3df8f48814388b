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

//! Plain-text matrix files.
//!
//! ```text
//! # comment
//! 2 2
//! 0,0 1,0
//! 1,0 0,0
//! ```
//!
//! The first non-comment line holds `rows cols`; the remaining tokens are
//! `re,im` entries in row-major order (a bare `re` means zero imaginary part).

use std::fmt::Write;

use num_complex::Complex;

use super::ComplexMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

fn parse_real<T: Real>(tok: &str, line: usize) -> Result<T> {
    tok.parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .map(T::lit)
        .ok_or_else(|| Error::parse(line, format!("invalid number '{tok}'")))
}

fn parse_entry<T: Real>(tok: &str, line: usize) -> Result<Complex<T>> {
    match tok.split_once(',') {
        Some((re, im)) => Ok(Complex::new(parse_real(re, line)?, parse_real(im, line)?)),
        None => Ok(Complex::new(parse_real(tok, line)?, T::zero())),
    }
}

pub fn parse_matrix<T: Real>(text: &str) -> Result<ComplexMatrix<T>> {
    let mut shape: Option<(usize, usize)> = None;
    let mut entries = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let mut tokens = content.split_whitespace();
        if shape.is_none() {
            let mut dim = |what: &str| -> Result<usize> {
                tokens
                    .next()
                    .ok_or_else(|| Error::parse(line, format!("missing {what} count")))?
                    .parse::<usize>()
                    .map_err(|_| Error::parse(line, format!("invalid {what} count")))
            };
            let rows = dim("row")?;
            let cols = dim("column")?;
            if rows == 0 || cols == 0 {
                return Err(Error::parse(line, "matrix dimensions must be positive"));
            }
            if tokens.next().is_some() {
                return Err(Error::parse(line, "expected 'rows cols'"));
            }
            shape = Some((rows, cols));
            continue;
        }
        for tok in tokens {
            entries.push(parse_entry(tok, line)?);
        }
    }
    let (rows, cols) = shape.ok_or_else(|| Error::parse(last_line.max(1), "missing 'rows cols' header"))?;
    if entries.len() != rows * cols {
        return Err(Error::parse(
            last_line,
            format!("expected {} entries, found {}", rows * cols, entries.len()),
        ));
    }
    ComplexMatrix::new(rows, cols, entries)
}

pub fn format_matrix<T: Real>(m: &ComplexMatrix<T>) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m
            .row(i)
            .iter()
            .map(|z| format!("{},{}", z.re.as_f64(), z.im.as_f64()))
            .collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}
