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

use crate::error::{Error, Result};
use crate::gates;
use crate::scalar::Real;

use super::GateNetlist;

/// Largest `|m|` tried before giving up.
pub const SEARCH_BUDGET: u64 = 10_000_000;

/// `N1(a) ~ N1(alpha^gamma)^m N1(alpha)^l`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Approximation<T> {
    pub m: i64,
    pub l: i64,
    pub alpha: T,
    pub gamma: T,
    /// `|log_alpha(a) - (m gamma + l)|`.
    pub residual: T,
    /// `alpha^(m gamma + l)`.
    pub realized: T,
}

impl<T: Real> Approximation<T> {
    /// Gates in [`netlist`](Self::netlist), without building it.
    pub fn gate_count(&self) -> u64 {
        let block = |p: i64| p.unsigned_abs() + if p < 0 { 2 } else { 0 };
        block(self.m) + block(self.l)
    }

    /// One-qubit netlist: the `N1(alpha^gamma)` block, then the `N1(alpha)`
    /// block. A negative power `p` of `N1(b)` is emitted as
    /// `X N1(b)^|p| X` and multiplies the scale by `b^p`.
    pub fn netlist(&self) -> Result<GateNetlist<T>> {
        let mut net = GateNetlist::new(1, 0);
        for (base, power) in [(self.alpha.powf(self.gamma), self.m), (self.alpha, self.l)] {
            if power == 0 {
                continue;
            }
            let gate = gates::n1(base)?;
            let flip = power < 0;
            if flip {
                net.push(gates::x(), vec![0]);
            }
            for _ in 0..power.unsigned_abs() {
                net.push(gate.clone(), vec![0]);
            }
            if flip {
                net.push(gates::x(), vec![0]);
                net.accumulated_scale *= base.powf(T::lit(power as f64));
            }
        }
        Ok(net)
    }
}

/// Searches `m = 0, 1, -1, 2, -2, ...` with `l` the nearest integer to
/// `log_alpha(a) - m gamma` until the residual drops below `epsilon`.
///
/// A rational `gamma` leaves only finitely many residuals, so the search can
/// exhaust [`SEARCH_BUDGET`].
pub fn approximate_n1<T: Real>(a: T, alpha: T, gamma: T, epsilon: T) -> Result<Approximation<T>> {
    let open_unit = |name: &str, x: T| {
        if x > T::zero() && x < T::one() {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("{name} = {x} outside (0, 1)")))
        }
    };
    open_unit("a", a)?;
    open_unit("alpha", alpha)?;
    if !(gamma > T::zero() && gamma.is_finite()) {
        return Err(Error::InvalidParameter(format!("gamma = {gamma} must be positive")));
    }
    if !(epsilon > T::lit(1e-12) && epsilon.is_finite()) {
        return Err(Error::InvalidParameter(format!("epsilon = {epsilon} must exceed 1e-12")));
    }
    let t = a.ln() / alpha.ln();
    let found = |m: i64| -> Option<Approximation<T>> {
        let mg = T::lit(m as f64) * gamma;
        let l = (t - mg).round();
        let residual = (t - mg - l).abs();
        (residual < epsilon).then(|| Approximation {
            m,
            l: l.to_i64().unwrap_or(0),
            alpha,
            gamma,
            residual,
            realized: alpha.powf(mg + l),
        })
    };
    for k in 0..=SEARCH_BUDGET as i64 {
        if let Some(hit) = found(k) {
            return Ok(hit);
        }
        if k > 0 {
            if let Some(hit) = found(-k) {
                return Ok(hit);
            }
        }
    }
    Err(Error::Budget(SEARCH_BUDGET))
}
