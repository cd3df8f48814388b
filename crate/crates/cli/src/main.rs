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


//! `nucirc`: simulate nonunitary circuits, synthesize gates and run the
//! NAND and Abrams-Lloyd demos.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 failed run (sampled
//! failure or a wrong state on the branch), 3 numerical degeneracy.

mod output;

use std::f64::consts::SQRT_2;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use nucirc::apps::{self, AlMode, NandNetlist, TruthTableOracle};
use nucirc::circuit::{self, EnsembleStats};
use nucirc::linops::{format_matrix, parse_matrix};
use nucirc::measure::{build_pair, build_reversal};
use nucirc::synth::{self, Approximation, SynthMode};
use nucirc::{gates, Complex, Error, Gate, Matrix, Program, Record};
use serde_json::{json, Value};

use output::{complex, fields, ket, matrix_json, matrix_table, state_json, table, to_json};

/// z for the reported Wilson interval.
const WILSON_Z: f64 = 1.96;

#[derive(Parser)]
#[command(name = "nucirc", version, about = "Nonunitary quantum circuit toolkit")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Seed for all random draws.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Trials for ensemble runs.
    #[arg(long, global = true, default_value_t = 10_000,
          value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    /// branch | sampled | ensemble (alias mc); for synth: ancilla | bare.
    #[arg(long, global = true)]
    mode: Option<String>,
    /// Print JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Largest accepted synthesis residual; also the margin for reading a
    /// definite flag in demo-al.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tolerance: f64,
    /// Worker threads for ensemble runs.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a circuit file.
    Simulate { circuit: PathBuf },
    /// Decompose a matrix file into X, CNOT, CKX, N1 and friends.
    Synth {
        matrix: PathBuf,
        /// Netlist to write; opaque unitaries go to `<out>.<name>.mat`.
        #[arg(long)]
        out: PathBuf,
        /// Ancilla mode: leave N1 gates in place of the CU1 + projection block.
        #[arg(long)]
        keep_n1: bool,
    },
    /// Approximate N1(a) by powers of N1(alpha^gamma) and N1(alpha).
    Approx {
        #[arg(long)]
        a: f64,
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        #[arg(long, default_value_t = SQRT_2)]
        gamma: f64,
        #[arg(long, default_value_t = 0.01)]
        eps: f64,
    },
    /// Compile a NAND netlist with the first `m` gates quantum and run it.
    DemoNand {
        #[arg(long)]
        netlist: PathBuf,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        /// Basis index of the inputs, or `uniform`.
        #[arg(long, default_value = "0")]
        input: String,
    },
    /// Abrams-Lloyd search over a truth table such as `0100`.
    DemoAl {
        #[arg(long)]
        table: String,
        /// Expected input width; checked against the table length.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Print a gate's matrix and measurement pair.
    Probe {
        /// Gate label, e.g. `NAND`, `N1(0.5)`, `MAT(file)`.
        gate: String,
        /// Measurement constant, `re` or `re,im`.
        #[arg(long, default_value = "1")]
        c: String,
        /// Reversal strength, a number or `opt`.
        #[arg(long)]
        q: Option<String>,
    },
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn at(path: &Path) -> impl FnOnce(Error) -> Failure + '_ {
        move |e| {
            let mut f = Failure::from(e);
            if !f.message.starts_with(&path.display().to_string()) {
                f.message = format!("{}: {}", path.display(), f.message);
            }
            f
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Degenerate(_)
        | Error::Budget(_)
        | Error::NotHermitian(_)
        | Error::NotPsd(_)
        | Error::Singular(_)
        | Error::Annihilated(_) => 3,
        _ => 1,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

struct Report {
    json: Value,
    table: String,
    code: u8,
}

impl Report {
    fn ok(json: Value, table: String) -> Self {
        Report { json, table, code: 0 }
    }
}

enum RunMode {
    Branch,
    Sampled,
    Ensemble,
}

impl Global {
    fn run_mode(&self) -> Result<RunMode, Failure> {
        match self.mode.as_deref() {
            None | Some("branch") => Ok(RunMode::Branch),
            Some("sampled") => Ok(RunMode::Sampled),
            Some("ensemble" | "mc") => Ok(RunMode::Ensemble),
            Some(m) => Err(Failure::usage(format!(
                "unknown mode '{m}' (expected branch, sampled or ensemble)"
            ))),
        }
    }

    fn synth_mode(&self, keep_n1: bool) -> Result<SynthMode, Failure> {
        match self.mode.as_deref() {
            None | Some("ancilla") => Ok(SynthMode::Ancilla { keep_n1 }),
            Some("bare") if !keep_n1 => Ok(SynthMode::Bare),
            Some("bare") => Err(Failure::usage("--keep-n1 only applies to ancilla mode")),
            Some(m) => Err(Failure::usage(format!("unknown synth mode '{m}' (expected ancilla or bare)"))),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn parse_complex(s: &str) -> Result<Complex<f64>, Failure> {
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| Failure::usage(format!("invalid number '{t}'")))
    };
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex::new(num(re)?, num(im)?)),
        None => Ok(Complex::new(num(s)?, 0.0)),
    }
}

fn record_report(mode: &str, rec: &Record, n_qubits: usize, seed: Option<u64>) -> Report {
    let steps: Vec<Value> = rec
        .per_step
        .iter()
        .map(|s| json!({ "label": s.label, "p": s.p, "reversals": s.reversals }))
        .collect();
    let mut json = json!({
        "mode": mode,
        "outcome": rec.outcome.as_str(),
        "failed_step": rec.failed_step,
        "total_probability": rec.total_probability,
        "reversals": rec.reversals(),
        "per_step": steps,
        "final_state": rec.final_state.as_ref().map(state_json),
    });
    if let Some(seed) = seed {
        json["seed"] = json!(seed);
    }

    let mut head = vec![
        ("mode", mode.to_string()),
        ("outcome", rec.outcome.as_str().to_string()),
    ];
    if let Some(s) = rec.failed_step {
        head.push(("failed_step", s.to_string()));
    }
    head.push(("total_probability", rec.total_probability.to_string()));
    head.push(("reversals", rec.reversals().to_string()));
    let rows: Vec<Vec<String>> = rec
        .per_step
        .iter()
        .enumerate()
        .map(|(i, s)| vec![i.to_string(), s.label.clone(), s.p.to_string(), s.reversals.to_string()])
        .collect();
    let mut text = fields(&head);
    text.push('\n');
    text += &table(&["step", "gate", "p", "reversals"], &rows);
    if let Some(state) = &rec.final_state {
        let amps: Vec<Vec<String>> = state
            .amplitudes()
            .iter()
            .enumerate()
            .filter(|(_, z)| z.norm_sqr() > 0.0)
            .map(|(i, z)| vec![ket(i, n_qubits), complex(*z)])
            .collect();
        text.push('\n');
        text += &table(&["state", "amplitude"], &amps);
    }
    Report {
        json,
        table: text,
        code: if rec.outcome.is_success() { 0 } else { 2 },
    }
}

fn ensemble_report(stats: &EnsembleStats, seed: u64, expected: f64) -> Report {
    let (lo, hi) = stats.wilson_interval(WILSON_Z);
    let json = json!({
        "mode": "ensemble",
        "seed": seed,
        "trials": stats.trials,
        "successes": stats.successes,
        "success_rate": stats.success_rate(),
        "std_error": stats.std_error(),
        "wilson_95": [lo, hi],
        "branch_probability": expected,
        "mean_reversals": stats.mean_reversals(),
        "failure_histogram": stats.failure_histogram,
    });
    let hist: Vec<String> = stats.failure_histogram.iter().map(u64::to_string).collect();
    let text = fields(&[
        ("mode", "ensemble".into()),
        ("seed", seed.to_string()),
        ("trials", stats.trials.to_string()),
        ("successes", stats.successes.to_string()),
        ("success_rate", stats.success_rate().to_string()),
        ("std_error", stats.std_error().to_string()),
        ("wilson_95", format!("[{lo}, {hi}]")),
        ("branch_probability", expected.to_string()),
        ("mean_reversals", stats.mean_reversals().to_string()),
        ("failures_by_step", hist.join(" ")),
    ]);
    Report::ok(json, text)
}

fn run_program(g: &Global, program: &Program) -> Result<Report, Failure> {
    let n = program.n_qubits();
    Ok(match g.run_mode()? {
        RunMode::Branch => record_report("branch", &circuit::run_branch(program)?, n, None),
        RunMode::Sampled => record_report("sampled", &circuit::run_sampled(program, g.seed)?, n, Some(g.seed)),
        RunMode::Ensemble => {
            let stats = circuit::run_ensemble(program, g.seed, g.trials, g.jobs)?;
            ensemble_report(&stats, g.seed, circuit::run_branch(program)?.total_probability)
        }
    })
}

fn simulate(g: &Global, path: &Path) -> Result<Report, Failure> {
    let program = Program::from_file(path).map_err(Failure::at(path))?;
    run_program(g, &program)
}

fn synth_cmd(g: &Global, path: &Path, out: &Path, keep_n1: bool) -> Result<Report, Failure> {
    let mode = g.synth_mode(keep_n1)?;
    let matrix: Matrix = parse_matrix(&read(path)?).map_err(Failure::at(path))?;
    if !matrix.is_square() {
        return Err(Failure::usage(format!(
            "{}: matrix is {}x{}, expected square",
            path.display(),
            matrix.rows(),
            matrix.cols()
        )));
    }
    let gate = gates::normalize_gate(&matrix).map_err(Failure::at(path))?;
    let net = synth::synthesize(&gate, mode)?;
    let residual = net.reconstruction_residual(gate.matrix())?;

    let stem = out
        .file_name()
        .ok_or_else(|| Failure::usage(format!("{}: not a file path", out.display())))?
        .to_string_lossy()
        .into_owned();
    let mut written = net.clone();
    let mut sidecars = Vec::new();
    for g in &mut written.gates {
        let name = match gates::split_label(g.gate.label())? {
            ("MAT", Some(name)) => name.to_string(),
            _ => continue,
        };
        let file = format!("{stem}.{name}.mat");
        let target = out.with_file_name(&file);
        fs::write(&target, format_matrix(g.gate.matrix()))
            .map_err(|e| Failure::usage(format!("{}: {e}", target.display())))?;
        g.gate = g.gate.clone().with_label(format!("MAT({file})"));
        sidecars.push(target.display().to_string());
    }
    fs::write(out, written.to_text()).map_err(|e| Failure::usage(format!("{}: {e}", out.display())))?;

    let mode_name = match mode {
        SynthMode::Bare => "bare",
        SynthMode::Ancilla { .. } => "ancilla",
    };
    let json = json!({
        "mode": mode_name,
        "out": out.display().to_string(),
        "data_qubits": net.n_data,
        "ancillas": net.n_ancillas,
        "gates": net.len(),
        "accumulated_scale": net.accumulated_scale,
        "normalization": gate.normalization_scale(),
        "residual": residual,
        "sidecars": sidecars,
    });
    let text = fields(&[
        ("mode", mode_name.into()),
        ("out", out.display().to_string()),
        ("data_qubits", net.n_data.to_string()),
        ("ancillas", net.n_ancillas.to_string()),
        ("gates", net.len().to_string()),
        ("accumulated_scale", net.accumulated_scale.to_string()),
        ("normalization", gate.normalization_scale().to_string()),
        ("residual", residual.to_string()),
    ]);
    Ok(Report {
        json,
        table: text,
        code: if residual < g.tolerance { 0 } else { 3 },
    })
}

/// Run-length form, e.g. `N1(0.37)^9 X N1(0.5)^11 X`.
fn gate_string(ap: &Approximation<f64>) -> Result<String, Failure> {
    let mut parts = Vec::new();
    for (base, power) in [(ap.alpha.powf(ap.gamma), ap.m), (ap.alpha, ap.l)] {
        if power == 0 {
            continue;
        }
        let label = gates::n1(base)?.label().to_string();
        let block = match power.unsigned_abs() {
            1 => label,
            k => format!("{label}^{k}"),
        };
        parts.push(if power < 0 { format!("X {block} X") } else { block });
    }
    Ok(parts.join(" "))
}

fn approx_cmd(a: f64, alpha: f64, gamma: f64, eps: f64) -> Result<Report, Failure> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(Failure::usage("--eps must be positive"));
    }
    let ap = synth::approximate_n1(a, alpha, gamma, eps)?;
    let gates = gate_string(&ap)?;
    let json = json!({
        "a": a,
        "alpha": alpha,
        "gamma": gamma,
        "eps": eps,
        "m": ap.m,
        "l": ap.l,
        "realized": ap.realized,
        "residual": ap.residual,
        "gate_count": ap.gate_count(),
        "gates": gates,
    });
    let text = fields(&[
        ("m", ap.m.to_string()),
        ("l", ap.l.to_string()),
        ("realized", ap.realized.to_string()),
        ("log_residual", ap.residual.to_string()),
        ("gate_count", ap.gate_count().to_string()),
        ("gates", gates),
    ]);
    Ok(Report::ok(json, text))
}

fn demo_nand(g: &Global, path: &Path, m: usize, c: f64, input: &str) -> Result<Report, Failure> {
    let net = NandNetlist::parse(&read(path)?).map_err(Failure::at(path))?;
    let mut compiled = apps::compile_nand::<f64>(&net, m, c)?;
    let savings = apps::qubit_savings(&net, m)?;
    let basis = match input {
        "uniform" => None,
        s => {
            let x: usize = s
                .parse()
                .map_err(|_| Failure::usage(format!("--input '{s}' is neither an index nor 'uniform'")))?;
            if x >> net.n_inputs() != 0 {
                return Err(Failure::usage(format!("--input {x} needs more than {} bits", net.n_inputs())));
            }
            Some(x)
        }
    };
    let init = match basis {
        Some(x) => compiled.basis_input(x),
        None => compiled.uniform_input()?,
    };
    compiled.program.set_init(init)?;
    let predicted = basis.map(|_| (c * c / 3.0).powi(m as i32));

    let mut report = run_program(g, &compiled.program)?;
    let classical = basis.map(|x| net.evaluate(x));
    let quantum = match g.run_mode()? {
        RunMode::Ensemble => None,
        _ => report.json["final_state"]
            .is_array()
            .then(|| circuit::run_branch(&compiled.program))
            .transpose()?
            .and_then(|r| r.final_state)
            .and_then(|s| compiled.read_outputs(&s)),
    };
    let bits = |v: &Option<Vec<bool>>| {
        v.as_ref()
            .map(|b| b.iter().map(|&x| if x { '1' } else { '0' }).collect::<String>())
    };
    report.json["netlist"] = json!({
        "inputs": net.n_inputs(),
        "nands": net.nand_count(),
        "copies": net.copy_count(),
        "quantum_nands": m,
        "qubits_quantum": savings.quantum_route,
        "qubits_toffoli": savings.toffoli_route,
        "qubits_saved": savings.saved,
    });
    report.json["predicted_probability"] = json!(predicted);
    report.json["classical_outputs"] = json!(bits(&classical));
    report.json["quantum_outputs"] = json!(bits(&quantum));
    let mut head = vec![
        ("nands", format!("{} ({m} quantum)", net.nand_count())),
        ("qubits", format!("{} (Toffoli route {}, saved {})", savings.quantum_route, savings.toffoli_route, savings.saved)),
    ];
    if let Some(p) = predicted {
        head.push(("predicted_probability", p.to_string()));
    }
    if let Some(b) = bits(&classical) {
        head.push(("classical_outputs", b));
    }
    if let Some(b) = bits(&quantum) {
        head.push(("quantum_outputs", b));
    }
    report.table = format!("{}\n{}", fields(&head), report.table);
    Ok(report)
}

fn demo_al(g: &Global, table_bits: &str, n: Option<usize>) -> Result<Report, Failure> {
    let oracle = TruthTableOracle::parse(table_bits)?;
    if let Some(n) = n.filter(|&n| n != oracle.n()) {
        return Err(Failure::usage(format!(
            "--n {n} does not match a table of {} entries",
            1usize << oracle.n()
        )));
    }
    let predicted = (1.0f64 / 6.0).powi(oracle.n() as i32);
    let mode = match g.run_mode()? {
        RunMode::Branch => AlMode::Branch,
        RunMode::Sampled => AlMode::Sampled { seed: g.seed },
        RunMode::Ensemble => {
            let program = apps::abrams_lloyd_program::<f64>(&oracle)?;
            let mut report = run_program(g, &program)?;
            report.json["n"] = json!(oracle.n());
            report.json["s_expected"] = json!(oracle.s());
            report.json["predicted_probability"] = json!(predicted);
            return Ok(report);
        }
    };
    let run = apps::abrams_lloyd_run::<f64>(&oracle, mode)?;
    let s_found = run.flag_one_probability.and_then(|p| {
        if p > 1.0 - g.tolerance {
            Some(1)
        } else if p < g.tolerance {
            Some(0)
        } else {
            None
        }
    });
    let json = json!({
        "mode": if matches!(mode, AlMode::Branch) { "branch" } else { "sampled" },
        "n": oracle.n(),
        "outcome": run.outcome.as_str(),
        "failed_step": run.failed_step,
        "s_expected": oracle.s(),
        "s": s_found,
        "flag_one_probability": run.flag_one_probability,
        "per_step": run.per_step,
        "total_probability": run.total_probability,
        "predicted_probability": predicted,
        "final_state": run.final_state.as_ref().map(state_json),
    });
    let show = |v: Option<String>| v.unwrap_or_else(|| "-".into());
    let per_step: Vec<String> = run.per_step.iter().map(f64::to_string).collect();
    let text = fields(&[
        ("n", oracle.n().to_string()),
        ("outcome", run.outcome.as_str().into()),
        ("s", show(s_found.map(|s: u8| s.to_string()))),
        ("s_expected", oracle.s().to_string()),
        ("flag_one_probability", show(run.flag_one_probability.map(|p| p.to_string()))),
        ("per_step", per_step.join(" ")),
        ("total_probability", run.total_probability.to_string()),
        ("predicted_probability", predicted.to_string()),
    ]);
    Ok(Report {
        json,
        table: text,
        code: if run.outcome.is_success() { 0 } else { 2 },
    })
}

fn probe(label: &str, c: &str, q: Option<&str>) -> Result<Report, Failure> {
    let gate: Gate = match gates::split_label(label)? {
        ("MAT", Some(path)) => {
            let p = Path::new(path);
            gates::normalize_gate(&parse_matrix(&read(p)?).map_err(Failure::at(p))?)?
                .with_label(label.to_string())
        }
        _ => gates::standard(label)?,
    };
    let c = parse_complex(c)?;
    let pair = build_pair(&gate, c)?;
    let identity = Matrix::identity(pair.m0.rows());
    let completeness = pair
        .m0
        .adjoint()
        .matmul(&pair.m0)?
        .add(&pair.m1.adjoint().matmul(&pair.m1)?)?
        .max_abs_diff(&identity);

    let mut json = json!({
        "label": gate.label(),
        "arity": gate.arity(),
        "unitary": gate.is_unitary(),
        "reversible": gate.is_reversible(),
        "normalization": gate.normalization_scale(),
        "c": [c.re, c.im],
        "N": matrix_json(gate.matrix()),
        "M0": matrix_json(&pair.m0),
        "M1": matrix_json(&pair.m1),
        "completeness_residual": completeness,
    });
    let mut text = fields(&[
        ("gate", gate.label().to_string()),
        ("unitary", gate.is_unitary().to_string()),
        ("reversible", gate.is_reversible().to_string()),
        ("normalization", gate.normalization_scale().to_string()),
        ("c", complex(c)),
        ("completeness_residual", completeness.to_string()),
    ]);
    for (name, m) in [("N", gate.matrix()), ("M0", &pair.m0), ("M1", &pair.m1)] {
        text += &format!("\n{name}\n{}", matrix_table(m));
    }
    if let Some(q) = q {
        let q = match q {
            "opt" => None,
            s => Some(parse_complex(s)?),
        };
        let policy = build_reversal(&pair, q)?;
        let undo = policy.r0.matmul(&pair.m1)?.max_abs_diff(&identity.scale(policy.q));
        json["q"] = json!([policy.q.re, policy.q.im]);
        json["R0"] = matrix_json(&policy.r0);
        json["R1"] = matrix_json(&policy.r1);
        json["reversal_residual"] = json!(undo);
        text += &format!(
            "\n{}",
            fields(&[("q", complex(policy.q)), ("reversal_residual", undo.to_string())])
        );
        for (name, m) in [("R0", &policy.r0), ("R1", &policy.r1)] {
            text += &format!("\n{name}\n{}", matrix_table(m));
        }
    }
    Ok(Report::ok(json, text))
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Simulate { circuit } => simulate(g, circuit),
        Command::Synth { matrix, out, keep_n1 } => synth_cmd(g, matrix, out, *keep_n1),
        Command::Approx { a, alpha, gamma, eps } => approx_cmd(*a, *alpha, *gamma, *eps),
        Command::DemoNand { netlist, m, c, input } => demo_nand(g, netlist, *m, *c, input),
        Command::DemoAl { table, n } => demo_al(g, table, *n),
        Command::Probe { gate, c, q } => probe(gate, c, q.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(&cli) {
        Ok(report) => {
            if cli.global.json {
                println!("{}", to_json(&report.json));
            } else {
                print!("{}", report.table);
            }
            ExitCode::from(report.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
