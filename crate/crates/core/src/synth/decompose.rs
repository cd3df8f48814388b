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
use crate::gates::{self, GateSpec};
use crate::linops::{svd, ComplexMatrix};
use crate::scalar::Real;

use super::GateNetlist;

/// `N = U D(d) V` with `d` descending.
#[derive(Clone, Debug)]
pub struct SvdSplit<T: Real> {
    pub u: GateSpec<T>,
    pub d: Vec<T>,
    pub v: GateSpec<T>,
}

/// One factor of a diagonal gate: `X` on every qubit in `x_mask`, then
/// `C^{n-1}[N1(a)]` targeting qubit `n-1`, then the same `X` gates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiagonalFactor<T> {
    pub x_mask: usize,
    pub a: T,
}

/// Two-qubit steps of the control-parity construction. `param` may exceed
/// one; lowering turns those into legal gates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ControlledStep<T> {
    Cnot { control: usize, target: usize },
    ControlledN1 { control: usize, target: usize, param: T },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SynthMode {
    /// Exact, with ancilla qubits. `keep_n1` leaves `N1(a)` on the ancilla
    /// instead of expanding it through `CU1(a)` and `N1(0)`.
    Ancilla { keep_n1: bool },
    /// No ancilla; exact up to the recorded scale.
    Bare,
}

fn snap<T: Real>(x: T) -> T {
    let tol = T::degenerate_tol();
    if x < tol {
        T::zero()
    } else if x > T::one() - tol {
        T::one()
    } else {
        x
    }
}

pub fn svd_split<T: Real>(n: &GateSpec<T>) -> Result<SvdSplit<T>> {
    let dec = svd(n.matrix())?;
    let top = dec.s[0];
    if (top - T::one()).abs() > T::factor_tol() {
        return Err(Error::InvalidParameter(format!(
            "gate is not normalized: largest singular value {top}"
        )));
    }
    Ok(SvdSplit {
        u: GateSpec::unitary("MAT(U)", dec.u)?,
        d: dec.s.into_iter().map(snap).collect(),
        v: GateSpec::unitary("MAT(V)", dec.v)?,
    })
}

pub fn factor_diagonal<T: Real>(d: &[T]) -> Result<Vec<DiagonalFactor<T>>> {
    if d.len() < 2 || !d.len().is_power_of_two() {
        return Err(Error::InvalidParameter(format!(
            "diagonal needs 2^n entries (n >= 1), got {}",
            d.len()
        )));
    }
    if let Some(bad) = d.iter().find(|&&x| !(x >= T::zero() && x <= T::one())) {
        return Err(Error::InvalidParameter(format!("diagonal entry {bad} outside [0, 1]")));
    }
    let all = d.len() - 1;
    Ok(d.iter()
        .enumerate()
        .filter(|&(_, &a)| a < T::one())
        .map(|(i, &a)| DiagonalFactor { x_mask: !i & all, a })
        .collect())
}

fn canonical_controls(n_controls: usize) -> Vec<usize> {
    (0..n_controls).collect()
}

fn with_target(controls: &[usize], target: usize) -> Vec<usize> {
    let mut t = controls.to_vec();
    t.push(target);
    t
}

fn emit_mcn1_ancilla<T: Real>(
    net: &mut GateNetlist<T>,
    controls: &[usize],
    target: usize,
    ancillas: &[usize],
    a: T,
    keep_n1: bool,
) -> Result<()> {
    if controls.is_empty() && !keep_n1 {
        net.push(gates::cu1(a)?, vec![target, ancillas[0]]);
        net.push(gates::n1(T::zero())?, vec![ancillas[0]]);
        return Ok(());
    }
    if controls.is_empty() {
        net.push(gates::n1(a)?, vec![target]);
        return Ok(());
    }
    let flag = ancillas[0];
    let compute = gates::ckx::<T>(controls.len() + 1)?;
    let wires = with_target(&with_target(controls, target), flag);
    net.push(compute.clone(), wires.clone());
    if keep_n1 {
        net.push(gates::n1(a)?, vec![flag]);
    } else {
        net.push(gates::cu1(a)?, vec![flag, ancillas[1]]);
        net.push(gates::n1(T::zero())?, vec![ancillas[1]]);
    }
    net.push(compute, wires);
    Ok(())
}

fn ancillas_needed(n_controls: usize, keep_n1: bool) -> usize {
    match (n_controls, keep_n1) {
        (0, true) => 0,
        (0, false) | (_, true) => 1,
        _ => 2,
    }
}

/// `C^{n}[N1(a)]` with controls `0..n`, target `n`, ancillas above.
pub fn decompose_mcn1_ancilla<T: Real>(
    a: T,
    n_controls: usize,
    keep_n1: bool,
) -> Result<GateNetlist<T>> {
    let n_anc = ancillas_needed(n_controls, keep_n1);
    let mut net = GateNetlist::new(n_controls + 1, n_anc);
    let ancillas: Vec<usize> = (n_controls + 1..n_controls + 1 + n_anc).collect();
    emit_mcn1_ancilla(
        &mut net,
        &canonical_controls(n_controls),
        n_controls,
        &ancillas,
        a,
        keep_n1,
    )?;
    Ok(net)
}

/// Gray-code walk over the nonempty subsets of `controls`: the highest
/// control of each subset accumulates the subset parity through CNOTs and
/// drives `CN1(v^{+-1})` on `target`, with `v = a^{1/2^{m-1}}`. The
/// signed sum of subset parities equals `2^{m-1}` times the AND of the
/// controls, so the net effect is `C^m[N1(a)]` with controls restored.
pub fn mcn1_gray_sequence<T: Real>(
    a: T,
    controls: &[usize],
    target: usize,
) -> Result<Vec<ControlledStep<T>>> {
    let m = controls.len();
    if m == 0 || m >= usize::BITS as usize - 1 {
        return Err(Error::InvalidParameter(format!("unsupported control count {m}")));
    }
    if !(a > T::zero() && a < T::one()) {
        return Err(Error::InvalidParameter(format!("parameter {a} outside (0, 1)")));
    }
    let v = a.powf(T::one() / T::lit((1u64 << (m - 1)) as f64));
    let mut steps = Vec::new();
    let mut prev_g = 0usize;
    let mut prev_h: Option<u32> = None;
    for i in 1usize..(1 << m) {
        let g = i ^ (i >> 1);
        let h = usize::BITS - 1 - g.leading_zeros();
        match prev_h {
            Some(ph) if ph == h => {
                let flipped = (g ^ prev_g).trailing_zeros();
                steps.push(ControlledStep::Cnot {
                    control: controls[flipped as usize],
                    target: controls[h as usize],
                });
            }
            Some(ph) => steps.push(ControlledStep::Cnot {
                control: controls[ph as usize],
                target: controls[h as usize],
            }),
            None => {}
        }
        let param = if g.count_ones() % 2 == 1 { v } else { T::one() / v };
        steps.push(ControlledStep::ControlledN1 {
            control: controls[h as usize],
            target,
            param,
        });
        prev_g = g;
        prev_h = Some(h);
    }
    Ok(steps)
}

/// Controlled-`N1(b)` for any `b > 0` from one-qubit `N1` gates and two
/// CNOTs: `N1(r)` on target, CNOT, `N1(1/r)` on target, CNOT, `N1(r)` on
/// control, with `r = sqrt(b)`.
fn emit_cn1_lowered<T: Real>(net: &mut GateNetlist<T>, control: usize, target: usize, b: T) -> Result<()> {
    let r = b.sqrt();
    net.push_n1(target, r)?;
    net.push(gates::cnot(), vec![control, target]);
    net.push_n1(target, T::one() / r)?;
    net.push(gates::cnot(), vec![control, target]);
    net.push_n1(control, r)
}

fn emit_steps<T: Real>(net: &mut GateNetlist<T>, steps: &[ControlledStep<T>], lower_all: bool) -> Result<()> {
    for step in steps {
        match *step {
            ControlledStep::Cnot { control, target } => {
                net.push(gates::cnot(), vec![control, target]);
            }
            ControlledStep::ControlledN1 { control, target, param } => {
                if !lower_all && param < T::one() {
                    net.push(gates::cn1(param)?, vec![control, target]);
                } else {
                    emit_cn1_lowered(net, control, target, param)?;
                }
            }
        }
    }
    Ok(())
}

fn emit_mcn1_bare<T: Real>(
    net: &mut GateNetlist<T>,
    controls: &[usize],
    target: usize,
    a: T,
    lower_all: bool,
) -> Result<()> {
    if a == T::zero() {
        let mut d = vec![T::one(); 1 << (controls.len() + 1)];
        *d.last_mut().expect("nonempty") = T::zero();
        let gate = if controls.is_empty() { gates::n1(T::zero())? } else { gates::diagonal(&d)? };
        net.push(gate, with_target(controls, target));
        return Ok(());
    }
    match controls {
        [] => net.push_n1(target, a),
        [c] if lower_all => emit_cn1_lowered(net, *c, target, a),
        [c] => {
            net.push(gates::cn1(a)?, vec![*c, target]);
            Ok(())
        }
        _ => emit_steps(net, &mcn1_gray_sequence(a, controls, target)?, lower_all),
    }
}

/// `C^{n}[N1(a)]` without ancillas, controls `0..n`, target `n`.
///
/// With `lower_all` every controlled step is expanded into `N1`, `X` and
/// `CNOT`; otherwise steps with parameter below one stay as `CN1` gates.
pub fn decompose_mcn1_bare<T: Real>(a: T, n_controls: usize, lower_all: bool) -> Result<GateNetlist<T>> {
    if !(a > T::zero() && a < T::one()) {
        return Err(Error::InvalidParameter(format!("parameter {a} outside (0, 1)")));
    }
    let mut net = GateNetlist::new(n_controls + 1, 0);
    emit_mcn1_bare(&mut net, &canonical_controls(n_controls), n_controls, a, lower_all)?;
    Ok(net)
}

/// Controlled-`N1(a')` on two qubits (control 0, target 1) from one-qubit
/// gates and CNOTs. The product is `CN1(a') / scale` with `scale = 1/sqrt(a')`.
pub fn decompose_cn1<T: Real>(a_prime: T) -> Result<GateNetlist<T>> {
    if !(a_prime > T::zero() && a_prime < T::one()) {
        return Err(Error::InvalidParameter(format!("parameter {a_prime} outside (0, 1)")));
    }
    let mut net = GateNetlist::new(2, 0);
    emit_cn1_lowered(&mut net, 0, 1, a_prime)?;
    Ok(net)
}

/// `X N1(0) X` on each of `n` qubits; the all-success branch is `D(0,...,0,1)`.
pub fn project_all<T: Real>(n: usize) -> Result<GateNetlist<T>> {
    if n == 0 {
        return Err(Error::InvalidParameter("project_all needs at least one qubit".into()));
    }
    let mut net = GateNetlist::new(n, 0);
    for q in 0..n {
        net.push(gates::x(), vec![q]);
        net.push(gates::n1(T::zero())?, vec![q]);
        net.push(gates::x(), vec![q]);
    }
    Ok(net)
}

fn push_x_mask<T: Real>(net: &mut GateNetlist<T>, mask: usize, n: usize) {
    for q in (0..n).filter(|q| mask >> q & 1 == 1) {
        net.push(gates::x(), vec![q]);
    }
}

fn is_identity<T: Real>(m: &ComplexMatrix<T>) -> bool {
    m.approx_eq(&ComplexMatrix::identity(m.rows()), T::degenerate_tol())
}

/// Compiles a normalized gate. Data qubit `j` is bit `j` of the row and
/// column index of `n`. Opaque unitaries are labelled `MAT(U)`,
/// `MAT(V)` or `MAT(UV)` and skipped when they equal the identity.
///
/// In bare mode every nonunitary gate in the result is `N1(a)`, except that
/// a zero singular value becomes the two-outcome gate `D(1,...,1,0)` (or
/// `N1(0)` on one qubit). The result is checked against the input.
pub fn synthesize<T: Real>(n: &GateSpec<T>, mode: SynthMode) -> Result<GateNetlist<T>> {
    let width = n.arity();
    let split = svd_split(n)?;
    let factors = factor_diagonal(&split.d)?;
    let n_controls = width - 1;
    let controls = canonical_controls(n_controls);
    let target = n_controls;
    let n_anc = match mode {
        SynthMode::Ancilla { keep_n1 } if !factors.is_empty() => ancillas_needed(n_controls, keep_n1),
        _ => 0,
    };
    let mut net = GateNetlist::new(width, n_anc);
    let data: Vec<usize> = (0..width).rev().collect();

    if factors.is_empty() {
        let uv = split.u.matrix().matmul(split.v.matrix())?;
        if !is_identity(&uv) {
            net.push(GateSpec::unitary("MAT(UV)", uv)?, data.clone());
        }
    } else {
        if !is_identity(split.v.matrix()) {
            net.push(split.v.clone(), data.clone());
        }
        let ancillas: Vec<usize> = (width..width + n_anc).collect();
        for f in &factors {
            push_x_mask(&mut net, f.x_mask, width);
            match mode {
                SynthMode::Ancilla { keep_n1 } => {
                    emit_mcn1_ancilla(&mut net, &controls, target, &ancillas, f.a, keep_n1)?
                }
                SynthMode::Bare => emit_mcn1_bare(&mut net, &controls, target, f.a, true)?,
            }
            push_x_mask(&mut net, f.x_mask, width);
        }
        if !is_identity(split.u.matrix()) {
            net.push(split.u.clone(), data);
        }
    }

    let residual = net.reconstruction_residual(n.matrix())?;
    if !(residual < T::synth_tol()) {
        return Err(Error::Degenerate(residual.as_f64()));
    }
    Ok(net)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::embed_operator;

    type M = ComplexMatrix<f64>;

    fn labels(net: &GateNetlist<f64>) -> Vec<String> {
        net.gates
            .iter()
            .map(|g| format!("{} {:?}", g.gate.label(), g.targets))
            .collect()
    }

    #[test]
    fn svd_split_examples() {
        let s = svd_split(&gates::nand::<f64>()).unwrap();
        let want = [1.0f64, 1.0 / 3f64.sqrt(), 0.0, 0.0];
        for (x, y) in s.d.iter().zip(want) {
            assert!((x - y).abs() < 1e-12);
        }
        let g = gates::diagonal(&[0.9, 0.5, 1.0, 0.2]).unwrap();
        let s = svd_split(&g).unwrap();
        assert_eq!(s.d, vec![1.0, 0.9, 0.5, 0.2]);
        let back = s.u.matrix().matmul(&M::from_real_diag(&s.d)).unwrap().matmul(s.v.matrix()).unwrap();
        assert!(back.approx_eq(g.matrix(), 1e-12));
        assert!(svd_split(&gates::h::<f64>()).unwrap().d.iter().all(|&x| x == 1.0));
    }

    #[test]
    fn factor_diagonal_examples() {
        assert_eq!(
            factor_diagonal(&[1.0, 1.0, 1.0, 0.7]).unwrap(),
            vec![DiagonalFactor { x_mask: 0, a: 0.7 }]
        );
        assert_eq!(
            factor_diagonal(&[0.5, 1.0, 1.0, 1.0]).unwrap(),
            vec![DiagonalFactor { x_mask: 0b11, a: 0.5 }]
        );
        assert_eq!(factor_diagonal(&[0.1, 0.2, 0.3, 0.4]).unwrap().len(), 4);
        assert!(factor_diagonal(&[1.2, 1.0]).is_err());
    }

    #[test]
    fn gray_sequence_for_two_controls_matches_five_gate_pattern() {
        let steps = mcn1_gray_sequence(0.25, &[0, 1], 2).unwrap();
        use ControlledStep::*;
        assert_eq!(
            steps,
            vec![
                ControlledN1 { control: 0, target: 2, param: 0.5 },
                Cnot { control: 0, target: 1 },
                ControlledN1 { control: 1, target: 2, param: 2.0 },
                Cnot { control: 0, target: 1 },
                ControlledN1 { control: 1, target: 2, param: 0.5 },
            ]
        );
    }

    #[test]
    fn bare_two_controls_unlowered_has_one_expanded_step() {
        let net = decompose_mcn1_bare(0.25f64, 2, false).unwrap();
        assert_eq!(net.count("CN1"), 2);
        assert_eq!(net.count("CNOT"), 4);
        assert!((net.accumulated_scale - 2.0f64).abs() < 1e-15);
        let target = embed_operator(gates::mcn1(0.25, 2).unwrap().matrix(), &[0, 1, 2], 3).unwrap();
        assert!(net.reconstruction_residual(&target).unwrap() < 1e-12);
    }

    #[test]
    fn cn1_expansion_shape() {
        let net = decompose_cn1(0.25).unwrap();
        assert_eq!(
            labels(&net),
            vec!["N1(0.5) [1]", "CNOT [0, 1]", "X [1]", "N1(0.5) [1]", "X [1]", "CNOT [0, 1]", "N1(0.5) [0]"]
        );
        assert_eq!(net.accumulated_scale, 2.0);
    }

    #[test]
    fn synthesize_identity_is_empty() {
        let id = GateSpec::unitary("I", M::identity(8)).unwrap();
        for mode in [SynthMode::Bare, SynthMode::Ancilla { keep_n1: false }] {
            let net = synthesize(&id, mode).unwrap();
            assert!(net.is_empty());
            assert_eq!(net.n_ancillas, 0);
        }
    }

    #[test]
    fn synthesize_unitary_is_one_block() {
        let net = synthesize(&gates::h::<f64>(), SynthMode::Bare).unwrap();
        assert_eq!(net.len(), 1);
        assert_eq!(net.gates[0].gate.label(), "MAT(UV)");
    }

    #[test]
    fn synthesize_nand_in_every_mode() {
        let nand = gates::nand::<f64>();
        for mode in [
            SynthMode::Bare,
            SynthMode::Ancilla { keep_n1: false },
            SynthMode::Ancilla { keep_n1: true },
        ] {
            let net = synthesize(&nand, mode).unwrap();
            assert!(net.reconstruction_residual(nand.matrix()).unwrap() < 1e-8, "{mode:?}");
        }
    }

    #[test]
    fn bare_synthesis_uses_only_the_universal_set() {
        let g = gates::diagonal(&[0.3, 1.0, 0.6, 0.0, 1.0, 0.9, 0.2, 0.45]).unwrap();
        let net = synthesize(&g, SynthMode::Bare).unwrap();
        for ng in &net.gates {
            let (name, _) = gates::split_label(ng.gate.label()).unwrap();
            assert!(matches!(name, "X" | "CNOT" | "N1" | "D" | "MAT"), "{name}");
        }
        assert_eq!(net.count("D"), 1);
    }
}
