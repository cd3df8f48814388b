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

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite (eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("matrix is singular (smallest eigenvalue {0:e})")]
    Singular(f64),

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("zero matrix cannot be normalized")]
    ZeroMatrix,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("index {index} out of range for {n_qubits} qubit(s)")]
    IndexOutOfRange { index: usize, n_qubits: usize },

    #[error("duplicate target qubit {0}")]
    DuplicateTarget(usize),

    #[error("state annihilated (norm^2 = {0:e})")]
    Annihilated(f64),

    #[error("|c| = {0} outside (0, 1]")]
    InvalidC(f64),

    #[error("failure operator is singular, the failed state cannot be reversed")]
    IrreversibleFailure,

    #[error("|q| = {q} exceeds the bound {bound} for a valid reversing measurement")]
    NotAMeasurement { q: f64, bound: f64 },

    #[error("numerical degeneracy (magnitude {0:e})")]
    Degenerate(f64),

    #[error("search budget exceeded (|m| > {0})")]
    Budget(u64),

    #[error("unsupported instance: {0}")]
    Unsupported(String),

    #[error("invalid split: {0}")]
    Split(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
