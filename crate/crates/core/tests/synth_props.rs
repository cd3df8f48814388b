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

mod common;

use common::*;
use nucirc::gates::{self, GateSpec};
use nucirc::synth::{
    approximate_n1, decompose_cn1, decompose_mcn1_ancilla, decompose_mcn1_bare, factor_diagonal, parse_netlist,
    project_all, svd_split, synthesize, SynthMode,
};
use nucirc::{Matrix, State};
use proptest::prelude::*;

const MODES: [SynthMode; 3] = [
    SynthMode::Bare,
    SynthMode::Ancilla { keep_n1: false },
    SynthMode::Ancilla { keep_n1: true },
];

fn normalized_gate(k: usize) -> impl Strategy<Value = GateSpec<f64>> {
    let dim = 1 << k;
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), dim * dim).prop_filter_map("zero matrix", move |v| {
        let m = Matrix::new(dim, dim, v.into_iter().map(|(r, i)| C::new(r, i)).collect()).ok()?;
        gates::normalize_gate(&m).ok()
    })
}

fn mcn1_target(a: f64, n_controls: usize) -> Matrix {
    let targets: Vec<usize> = (0..=n_controls).collect();
    embed(gates::mcn1(a, n_controls).unwrap().matrix(), &targets, n_controls + 1)
}

fn scaled_product(net: &nucirc::Netlist) -> Matrix {
    netlist_product(net).scale_real(net.accumulated_scale)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn synthesis_reconstructs(g in (1usize..=3).prop_flat_map(normalized_gate)) {
        for mode in MODES {
            let net = synthesize(&g, mode).unwrap();
            prop_assert!(net.accumulated_scale >= 1.0);
            prop_assert!(max_diff(&scaled_product(&net), g.matrix()) < 1e-8, "{:?}", mode);
        }
    }

    #[test]
    fn rank_deficient_synthesis_reconstructs(g in normalized_gate(2), drop in 1usize..4) {
        let split = svd_split(&g).unwrap();
        let mut d = split.d.clone();
        for x in d.iter_mut().skip(4 - drop) {
            *x = 0.0;
        }
        let m = naive_mul(&naive_mul(split.u.matrix(), &Matrix::from_real_diag(&d)), split.v.matrix());
        let g = GateSpec::normalized("R", &m).unwrap();
        for mode in MODES {
            let net = synthesize(&g, mode).unwrap();
            prop_assert!(max_diff(&scaled_product(&net), g.matrix()) < 1e-8, "{:?}", mode);
        }
    }

    #[test]
    fn diagonal_factors_reconstruct(d in prop::collection::vec(0.0..=1.0f64, 8)) {
        let factors = factor_diagonal(&d).unwrap();
        let mut acc = Matrix::identity(8);
        let x = gates::x::<f64>();
        for f in &factors {
            let mut step = Matrix::identity(8);
            for q in (0..3).filter(|q| f.x_mask >> q & 1 == 1) {
                step = naive_mul(&embed(x.matrix(), &[q], 3), &step);
            }
            step = naive_mul(&mcn1_target(f.a, 2), &step);
            for q in (0..3).filter(|q| f.x_mask >> q & 1 == 1) {
                step = naive_mul(&embed(x.matrix(), &[q], 3), &step);
            }
            acc = naive_mul(&step, &acc);
        }
        prop_assert!(max_diff(&acc, &Matrix::from_real_diag(&d)) < 1e-12);
        prop_assert_eq!(factors.len(), d.iter().filter(|&&v| v < 1.0).count());
    }

    #[test]
    fn control_parity_identity(a in 0.01..0.99f64, n_controls in 1usize..=3, lower in any::<bool>()) {
        let net = decompose_mcn1_bare(a, n_controls, lower).unwrap();
        prop_assert!(max_diff(&scaled_product(&net), &mcn1_target(a, n_controls)) < 1e-10);
        if lower {
            for g in &net.gates {
                let name = gates::split_label(g.gate.label()).unwrap().0;
                prop_assert!(matches!(name, "X" | "CNOT" | "N1"), "{}", name);
            }
        }
    }

    #[test]
    fn ancilla_identity(a in 0.0..0.99f64, n_controls in 0usize..=2, keep_n1 in any::<bool>()) {
        let net = decompose_mcn1_ancilla(a, n_controls, keep_n1).unwrap();
        prop_assert_eq!(net.accumulated_scale, 1.0);
        prop_assert!(max_diff(&netlist_product(&net), &mcn1_target(a, n_controls)) < 1e-10);
    }

    #[test]
    fn controlled_n1_identity(a in 0.001..0.999f64) {
        let net = decompose_cn1(a).unwrap();
        let want = mcn1_target(a, 1).scale_real(a.sqrt());
        prop_assert!(max_diff(&netlist_product(&net), &want) < 1e-12);
    }

    #[test]
    fn approximation_bound_holds(a in 0.01..0.99f64, alpha in 0.1..0.9f64, eps in 1e-4..0.1f64) {
        let r = approximate_n1(a, alpha, 2f64.sqrt(), eps).unwrap();
        let t = a.ln() / alpha.ln();
        prop_assert!(r.residual < eps);
        prop_assert!((r.realized.ln() / alpha.ln() - t).abs() < eps + 1e-12);
        let rel = (r.realized - a).abs() / a;
        prop_assert!(rel <= alpha.ln().abs() * eps * (1.0 + eps));
        if r.gate_count() < 2000 {
            let op = netlist_product(&r.netlist().unwrap());
            prop_assert!(((op[(1, 1)] / op[(0, 0)]).re - r.realized).abs() < 1e-9 * r.realized.max(1e-300) + 1e-12);
        }
    }

    #[test]
    fn netlist_text_round_trips(g in normalized_gate(2)) {
        for mode in MODES {
            let net = synthesize(&g, mode).unwrap();
            let text = net.to_text();
            let back = parse_netlist::<f64>(&text, |name| {
                net.gates
                    .iter()
                    .find(|ng| ng.gate.label() == format!("MAT({name})"))
                    .map(|ng| ng.gate.matrix().clone())
                    .ok_or_else(|| nucirc::Error::Unsupported(name.into()))
            })
            .unwrap();
            prop_assert_eq!(back.len(), net.len());
            prop_assert!(max_diff(&scaled_product(&back), g.matrix()) < 1e-8);
        }
    }
}

#[test]
fn two_control_pattern_for_paper_parameters() {
    for a in [0.04, 0.25, 0.81] {
        let net = decompose_mcn1_bare(a, 2, false).unwrap();
        assert!(max_diff(&scaled_product(&net), &mcn1_target(a, 2)) < 1e-10);
        // |101>: control 0 and the target set, control 1 clear. Amplitude factor 1.
        let s = State::basis(3, 0b101).unwrap();
        let out = netlist_product(&net).apply(s.amplitudes()).unwrap();
        assert!((out[0b101].re * net.accumulated_scale - 1.0).abs() < 1e-12);
    }
}

#[test]
fn projection_examples() {
    let net = project_all::<f64>(2).unwrap();
    assert!(max_diff(&netlist_product(&net), &Matrix::from_real_diag(&[0., 0., 0., 1.])) < 1e-15);
    let one = project_all::<f64>(1).unwrap();
    assert!(max_diff(&netlist_product(&one), &Matrix::from_real_diag(&[0., 1.])) < 1e-15);
    let psi = State::from_real(2, &[1., 1., 1., 0.]).unwrap();
    let out = netlist_product(&net).apply(psi.amplitudes()).unwrap();
    assert!(out.iter().all(|z| z.norm() < 1e-15));
}

#[test]
fn ancilla_zero_parameter_projects() {
    let net = decompose_mcn1_ancilla(0.0, 0, false).unwrap();
    assert!(max_diff(&netlist_product(&net), &Matrix::from_real_diag(&[1., 0.])) < 1e-15);
}

#[test]
fn nand_bare_synthesis() {
    let nand = gates::nand::<f64>();
    let net = synthesize(&nand, SynthMode::Bare).unwrap();
    assert!(net.accumulated_scale > 0.0);
    assert!(max_diff(&scaled_product(&net), &nand_matrix()) < 1e-8);
}
