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

//! Compilation of nonunitary matrices into `{CNOT, one-qubit unitaries, N1(a)}`.
//!
//! The pipeline is: SVD `N = U D V`, factor `D` into multi-controlled
//! `N1(d_i)` gates conjugated by `X`, then expand each of those either with
//! ancilla qubits (exact) or without them (exact up to a positive scale that
//! is tracked in [`GateNetlist::accumulated_scale`]).

mod approx;
mod decompose;
mod netlist;

pub use approx::{approximate_n1, Approximation, SEARCH_BUDGET};
pub use decompose::{
    decompose_cn1, decompose_mcn1_ancilla, decompose_mcn1_bare, factor_diagonal,
    mcn1_gray_sequence, project_all, svd_split, synthesize, ControlledStep, DiagonalFactor,
    SynthMode, SvdSplit,
};
pub use netlist::{parse_netlist, GateNetlist, NetlistGate};
