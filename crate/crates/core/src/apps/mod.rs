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

//! The two worked applications: NAND netlists with part of the logic on
//! quantum NAND gates, and the Abrams-Lloyd flag-qubit search.

mod abrams_lloyd;
mod nand;

pub use abrams_lloyd::{
    abrams_lloyd_failure_op, abrams_lloyd_initial_state, abrams_lloyd_program, abrams_lloyd_run,
    AlMode, AlRun, TruthTableOracle,
};
pub use nand::{compile_nand, qubit_savings, CompiledNand, NandNetlist, NandNode, QubitSavings};
