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


use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use nucirc::linops::parse_matrix;
use nucirc::synth::parse_netlist;
use nucirc::{Complex, Matrix};
use serde_json::Value;

fn sample(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../samples").join(name)
}

fn nucirc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nucirc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = nucirc(&all);
    let text = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text:?}"));
    (v, out.status.code().unwrap())
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

#[test]
fn simulate_branch_gives_one_third_on_11() {
    let (v, code) = json(&["simulate", path_str(&sample("nand.qc")), "--mode", "branch"]);
    assert_eq!(code, 0);
    assert_eq!(v["outcome"], "success");
    assert!((f(&v["total_probability"]) - 1.0 / 3.0).abs() < 1e-12);
    let amps = v["final_state"].as_array().unwrap();
    assert_eq!(amps.len(), 1);
    assert_eq!(amps[0]["index"], 0);
}

#[test]
fn monte_carlo_rate_matches_reversal_protocol() {
    let (v, code) = json(&[
        "simulate",
        path_str(&sample("nand_reversal.qc")),
        "--mode",
        "mc",
        "--trials",
        "100000",
        "--seed",
        "7",
    ]);
    assert_eq!(code, 0);
    // p = 1/3 per attempt, one reversal at q^2 = 1 - c^2.
    let (p, q2): (f64, f64) = (0.36 / 3.0, 0.64);
    let expected = p * (1.0 + q2);
    let rate = f(&v["success_rate"]);
    let sigma = (expected * (1.0 - expected) / 100_000.0).sqrt();
    assert!((rate - expected).abs() < 4.0 * sigma, "{rate} vs {expected}");
    assert!((f(&v["branch_probability"]) - expected).abs() < 1e-12);
}

#[test]
fn ensemble_output_is_independent_of_jobs_and_alias() {
    let qc = sample("nand_reversal.qc");
    let run = |extra: &[&str]| {
        let mut args = vec!["simulate", path_str(&qc), "--trials", "2000", "--seed", "11", "--json"];
        args.extend_from_slice(extra);
        nucirc(&args).stdout
    };
    let one = run(&["--mode", "ensemble", "--jobs", "1"]);
    assert_eq!(one, run(&["--mode", "mc", "--jobs", "4"]));
    assert_eq!(one, run(&["--mode", "ensemble"]));
}

#[test]
fn same_seed_gives_identical_json() {
    let qc = sample("nand_reversal.qc");
    for mode in ["sampled", "ensemble"] {
        let args = ["simulate", path_str(&qc), "--mode", mode, "--seed", "42", "--trials", "500", "--json"];
        let a = nucirc(&args);
        let b = nucirc(&args);
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{mode}");
    }
}

#[test]
fn json_floats_carry_17_significant_digits() {
    let out = nucirc(&["simulate", path_str(&sample("nand.qc")), "--json"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"total_probability\":3.3333333333333343e-1"), "{text}");
}

#[test]
fn bad_circuit_reports_line_and_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.qc", "qubits 2\n# two\ngate NAND 0 0\n");
    let out = nucirc(&["simulate", path_str(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
    assert!(err.contains("bad.qc"), "{err}");

    let out = nucirc(&["simulate", path_str(&dir.path().join("missing.qc"))]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn failed_runs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let qc = write(dir.path(), "proj.qc", "qubits 1\ninit basis 1\ngate N1(0) 0\n");
    for mode in ["branch", "sampled"] {
        let (v, code) = json(&["simulate", path_str(&qc), "--mode", mode]);
        assert_eq!(code, 2, "{mode}");
        assert_eq!(v["outcome"], "failure");
        assert_eq!(v["failed_step"], 0);
    }
}

#[test]
fn usage_errors_exit_1_and_help_exits_0() {
    assert_eq!(nucirc(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(nucirc(&["simulate"]).status.code(), Some(1));
    assert_eq!(
        nucirc(&["simulate", path_str(&sample("nand.qc")), "--mode", "sideways"]).status.code(),
        Some(1)
    );
    assert_eq!(nucirc(&["simulate", path_str(&sample("nand.qc")), "--trials", "0"]).status.code(), Some(1));
    assert_eq!(nucirc(&["--help"]).status.code(), Some(0));
    assert_eq!(nucirc(&["--version"]).status.code(), Some(0));
}

fn nand_normalized() -> Matrix {
    let s = 1.0 / 3f64.sqrt();
    Matrix::from_real(4, 4, &[0., 0., 0., s, 0., 0., 0., 0., s, s, s, 0., 0., 0., 0., 0.]).unwrap()
}

fn read_back(net_path: &Path) -> nucirc::Netlist {
    let dir = net_path.parent().unwrap().to_path_buf();
    parse_netlist(&fs::read_to_string(net_path).unwrap(), |name| {
        parse_matrix(&fs::read_to_string(dir.join(name)).unwrap())
    })
    .unwrap()
}

#[test]
fn synth_nand_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    for mode in ["bare", "ancilla"] {
        let out = dir.path().join(format!("nand.{mode}.net"));
        let (v, code) = json(&["synth", path_str(&sample("nand.mat")), "--mode", mode, "--out", path_str(&out)]);
        assert_eq!(code, 0, "{mode}");
        assert!(f(&v["residual"]) < 1e-8);
        let net = read_back(&out);
        assert!((net.accumulated_scale - f(&v["accumulated_scale"])).abs() < 1e-12);
        assert!(net.reconstruction_residual(&nand_normalized()).unwrap() < 1e-8, "{mode}");
    }
}

#[test]
fn synth_identity_is_empty() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("id.net");
    let (v, code) = json(&["synth", path_str(&sample("identity.mat")), "--mode", "bare", "--out", path_str(&out)]);
    assert_eq!(code, 0);
    assert_eq!(v["gates"], 0);
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 1, "{text}");
    assert!(read_back(&out).is_empty());
}

#[test]
fn synth_rejects_non_square_and_bad_flags() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "rect.mat", "2 3\n1 0 0\n0 1 0\n");
    let out = dir.path().join("rect.net");
    let run = nucirc(&["synth", path_str(&m), "--mode", "bare", "--out", path_str(&out)]);
    assert_eq!(run.status.code(), Some(1));
    assert!(!out.exists());
    let run = nucirc(&["synth", path_str(&sample("nand.mat")), "--mode", "bare", "--keep-n1", "--out", path_str(&out)]);
    assert_eq!(run.status.code(), Some(1));
}

#[test]
fn synth_residual_above_tolerance_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("nand.net");
    let run = nucirc(&[
        "synth",
        path_str(&sample("nand.mat")),
        "--mode",
        "bare",
        "--tolerance",
        "0",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(run.status.code(), Some(3));
}

#[test]
fn approx_examples() {
    let (v, code) = json(&["approx", "--a", "0.5", "--alpha", "0.5"]);
    assert_eq!(code, 0);
    assert_eq!((v["m"].as_i64(), v["l"].as_i64()), (Some(0), Some(1)));
    assert_eq!(v["gates"], "N1(0.5)");

    let (v, code) = json(&["approx", "--a", "0.3", "--alpha", "0.5", "--gamma", "1.41421356237", "--eps", "0.01"]);
    assert_eq!(code, 0);
    assert_eq!((v["m"].as_i64(), v["l"].as_i64()), (Some(9), Some(-11)));
    // 9 sqrt2 - 11 against log2(1/0.3).
    let exponent = 9.0 * 2f64.sqrt() - 11.0;
    assert!((exponent - (1.0 / 0.3f64).log2()).abs() < 0.01);
    assert!((f(&v["realized"]) - 0.5f64.powf(exponent)).abs() < 1e-9);
    assert_eq!(v["gate_count"], 22);

    assert_eq!(nucirc(&["approx", "--a", "0.3", "--eps", "0"]).status.code(), Some(1));
    assert_eq!(nucirc(&["approx", "--a", "1.3"]).status.code(), Some(1));
}

#[test]
fn approx_with_rational_gamma_exhausts_the_budget() {
    let run = nucirc(&["approx", "--a", "0.3", "--alpha", "0.5", "--gamma", "1.5", "--eps", "1e-6"]);
    assert_eq!(run.status.code(), Some(3));
}

#[test]
fn demo_al_finds_the_flag() {
    let (v, code) = json(&["demo-al", "--table", "0100"]);
    assert_eq!(code, 0);
    assert_eq!(v["s"], 1);
    assert!((f(&v["total_probability"]) - 1.0 / 36.0).abs() < 1e-12);

    let (v, code) = json(&["demo-al", "--table", "0000", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["s"], 0);
    assert!((f(&v["total_probability"]) - 1.0 / 36.0).abs() < 1e-12);
    for p in v["per_step"].as_array().unwrap() {
        assert!((f(p) - 1.0 / 6.0).abs() < 1e-12);
    }

    assert_eq!(nucirc(&["demo-al", "--table", "0000", "--n", "3"]).status.code(), Some(1));
    assert_eq!(nucirc(&["demo-al", "--table", "012"]).status.code(), Some(1));
    assert_eq!(nucirc(&["demo-al", "--table", "0110"]).status.code(), Some(1));
}

#[test]
fn demo_nand_half_adder() {
    let nl = sample("half.nl");
    for x in 0..4usize {
        let (v, code) = json(&["demo-nand", "--netlist", path_str(&nl), "--m", "2", "--c", "0.9", "--input", &x.to_string()]);
        assert_eq!(code, 0);
        let want = (0.81f64 / 3.0).powi(2);
        assert!((f(&v["total_probability"]) - want).abs() < 1e-12, "x={x}");
        let (a, b) = (x & 1, x >> 1 & 1);
        let expect = format!("{}{}", a ^ b, a & b);
        assert_eq!(v["quantum_outputs"], expect.as_str(), "x={x}");
        assert_eq!(v["classical_outputs"], expect.as_str(), "x={x}");
        assert_eq!(v["netlist"]["qubits_saved"], 2);
    }
    let run = nucirc(&["demo-nand", "--netlist", path_str(&nl), "--m", "9"]);
    assert_eq!(run.status.code(), Some(1));
}

#[test]
fn probe_prints_a_valid_pair_and_reversal() {
    let (v, code) = json(&["probe", "NAND", "--c", "0.6", "--q", "opt"]);
    assert_eq!(code, 0);
    assert!(f(&v["completeness_residual"]) < 1e-12);
    assert!(f(&v["reversal_residual"]) < 1e-12);
    assert!((f(&v["q"][0]) - 0.8).abs() < 1e-15);
    // M1[3][3] = sqrt(1 - c^2 / 3).
    let m1 = &v["M1"][3][3];
    let z = Complex::new(f(&m1[0]), f(&m1[1]));
    assert!((z - Complex::new((1.0f64 - 0.12).sqrt(), 0.0)).norm() < 1e-12);

    assert_eq!(nucirc(&["probe", "N1(0.5)", "--c", "1", "--q", "opt"]).status.code(), Some(1));
    assert_eq!(nucirc(&["probe", "FOO"]).status.code(), Some(1));
}
