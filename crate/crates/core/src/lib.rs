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

//! Simulation and synthesis of quantum circuits with nonunitary gates.
//!
//! A nonunitary gate `N` (normalized so its largest singular value is 1) is
//! realized as the two-outcome measurement `{M0 = cN, M1 = sqrt(I - M0^dagger M0)}`.
//! Success applies `N`; failure can be undone with a reversing measurement
//! and the gate retried. The [`synth`] module compiles any such `N` into
//! CNOT, one-qubit unitaries and `N1(a) = diag(1, a)`.
//!
//! Everything numeric is generic over [`Real`]; the aliases below fix the
//! scalar to `f64` (and `f32` with a `32` suffix).

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod apps;
pub mod circuit;
pub mod error;
pub mod gates;
pub mod linops;
pub mod measure;
pub mod qstate;
pub mod scalar;
pub mod synth;

pub use num_complex::Complex;

pub use error::{Error, Result};
pub use measure::Outcome;
pub use scalar::Real;

pub type Matrix = linops::ComplexMatrix<f64>;
pub type State = qstate::StateVector<f64>;
pub type Gate = gates::GateSpec<f64>;
pub type Pair = measure::MeasurementPair<f64>;
pub type Policy = measure::ReversalPolicy<f64>;
pub type Program = circuit::CircuitProgram<f64>;
pub type Record = circuit::RunRecord<f64>;
pub type Netlist = synth::GateNetlist<f64>;

pub type Matrix32 = linops::ComplexMatrix<f32>;
pub type State32 = qstate::StateVector<f32>;
pub type Gate32 = gates::GateSpec<f32>;
pub type Pair32 = measure::MeasurementPair<f32>;
pub type Program32 = circuit::CircuitProgram<f32>;
