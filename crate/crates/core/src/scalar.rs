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

//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real field the complex linear algebra is built over.
///
/// The tolerance hooks let one code path serve both `f32` and `f64`: the
/// `f64` values are the ones the test suites pin, the `f32` values are scaled
/// to single-precision round-off.
pub trait Real:
    'static
    + Float
    + FloatConst
    + NumAssign
    + FromPrimitive
    + ToPrimitive
    + Default
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + std::iter::Sum
{
    /// Max-norm tolerance for exactness checks (Hermiticity, identities).
    fn exact_tol() -> Self;

    /// Max-norm tolerance for factorization residuals.
    fn factor_tol() -> Self;

    /// Norm below which a state is considered annihilated.
    fn annihilation_tol() -> Self;

    /// Probability mass below which a sampled branch is treated as degenerate.
    fn degenerate_tol() -> Self;

    /// Eigenvalue floor used when inverting a positive semidefinite matrix.
    fn inverse_floor() -> Self;

    /// Largest accepted reconstruction residual of a synthesized netlist.
    fn synth_tol() -> Self;

    /// Converts an `f64` literal. Every value this crate feeds in is representable.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn exact_tol() -> Self {
        1e-10
    }
    fn factor_tol() -> Self {
        1e-9
    }
    fn annihilation_tol() -> Self {
        1e-14
    }
    fn degenerate_tol() -> Self {
        1e-12
    }
    fn inverse_floor() -> Self {
        1e-12
    }
    fn synth_tol() -> Self {
        1e-8
    }
}

impl Real for f32 {
    fn exact_tol() -> Self {
        1e-5
    }
    fn factor_tol() -> Self {
        1e-4
    }
    fn annihilation_tol() -> Self {
        1e-6
    }
    fn degenerate_tol() -> Self {
        1e-6
    }
    fn inverse_floor() -> Self {
        1e-6
    }
    fn synth_tol() -> Self {
        1e-3
    }
}
