// Copyright 2026 The agtsim Developers
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

//! Command-line front end behind the `agtsim` binary.
//!
//! Every subcommand produces one or more named artifacts (CSV or JSON). With
//! `--out DIR` they are written there, otherwise they go to stdout. Failures
//! print a JSON error object on stderr; exit code 2 marks bad usage or
//! unreadable input, 3 marks a rejected parameter or unsupported request.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::compiler::{compile_3n, compile_chain, simulate_program, CircuitProgram, CompiledProgram};
use crate::dynamics::{default_steps, random_state, Method, PropagationConfig, RunReport, StateVector};
use crate::error::{Error, Result};
use crate::gadgets::{
    alpha_table, gadget_gap_bound_check, gadget_hamiltonians, gap_table, run_gadget, write_rows, CouplingConfig,
};
use crate::hamiltonian::{GateSpec, Schedule};
use crate::operator::C64;
use crate::protocols::{
    agp, agt_single, agt_two_qubit, isotropic_teleportation, logical_frame_check, no_go_diagonal,
    teleportation_protocol, NoGoConfig, ProtocolSpec,
};
use crate::spectral::{GapOptions, DEFAULT_DEGENERACY_TOL};

#[derive(Debug, Parser, Serialize)]
#[command(name = "agtsim", version, about = "Adiabatic gate teleportation simulator")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Serialize)]
pub struct Common {
    /// Coupling strength ω.
    #[arg(long, global = true, default_value_t = 1.0)]
    pub omega: f64,
    /// Seed for random input states.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Propagation steps (default max(1000, ceil(100 T ω))).
    #[arg(long, global = true)]
    pub steps: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = ScheduleArg::Linear)]
    pub schedule: ScheduleArg,
    #[arg(long, global = true, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
    /// Gap-profile grid points.
    #[arg(long, global = true, default_value_t = 101)]
    pub grid: usize,
    /// Directory for output files; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScheduleArg {
    Linear,
    Smoothstep,
}

impl From<ScheduleArg> for Schedule {
    fn from(s: ScheduleArg) -> Self {
        match s {
            ScheduleArg::Linear => Schedule::Linear,
            ScheduleArg::Smoothstep => Schedule::Smoothstep,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodArg {
    Auto,
    Spectral,
    Taylor,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => Method::Auto,
            MethodArg::Spectral => Method::Spectral,
            MethodArg::Taylor => Method::Taylor,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProtocolArg {
    Teleport,
    Agt,
    Agp,
    Agt2,
    Isotropic,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Analysis {
    Alpha,
    Gap,
    Bound,
    Structure,
    Run,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LayoutArg {
    Chain,
    #[value(name = "3n")]
    #[serde(rename = "3n")]
    ThreeN,
}

#[derive(Debug, Args, Serialize)]
pub struct RunArgs {
    /// Total run time in units of 1/ω.
    #[arg(long = "T", default_value_t = 50.0)]
    pub total_time: f64,
    /// Input state: basis/sign labels per qubit (`0`, `1`, `+`, `-`), an
    /// amplitude pair `α,β` (complex allowed, e.g. `0.6,0.8i`), or `random`.
    #[arg(long, default_value = "random")]
    pub input: String,
}

#[derive(Debug, Subcommand, Serialize)]
pub enum Command {
    /// Three-qubit adiabatic teleportation run.
    Teleport(RunArgs),
    /// Single-qubit gate teleportation run.
    Agt {
        #[arg(long, default_value = "H")]
        gate: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Gate preparation on a standing pair (A or B).
    Agp {
        #[arg(long, default_value = "A")]
        gate: String,
        #[arg(long = "T", default_value_t = 50.0)]
        total_time: f64,
    },
    /// Six-qubit controlled-phase teleportation run.
    Agt2(RunArgs),
    /// Teleportation with isotropic exchange couplings.
    Isotropic(RunArgs),
    /// Two-qubit diagonal interpolation and the logical-frame checks.
    Nogo {
        /// δ₁,δ₂,δ₃ of the first diagonal Hamiltonian.
        #[arg(long, value_delimiter = ',', default_values_t = [1.0, 2.0, 3.0])]
        delta: Vec<f64>,
        /// γ₁,γ₂,γ₃ of the second.
        #[arg(long, value_delimiter = ',', default_values_t = [1.0, 2.0, 3.0])]
        gamma: Vec<f64>,
    },
    /// Two-body gadget analyses.
    Gadget {
        /// Weak/strong ratio λ/ω; a comma list for `alpha`.
        #[arg(long, value_delimiter = ',', default_values_t = [0.1])]
        r: Vec<f64>,
        #[arg(long, value_enum, default_value_t = Analysis::Alpha)]
        analysis: Analysis,
        /// Run time for `run`; default 200/(ω r²).
        #[arg(long = "T")]
        total_time: Option<f64>,
        #[arg(long, default_value = "00")]
        input: String,
        /// s-grid points for `gap`.
        #[arg(long, default_value_t = 21)]
        points: usize,
    },
    /// Gap profile CSV of a protocol.
    Gap {
        #[arg(long, value_enum, default_value_t = ProtocolArg::Teleport)]
        protocol: ProtocolArg,
        #[arg(long)]
        gate: Option<String>,
    },
    /// Fidelity and leakage over a list of run times.
    Sweep {
        #[arg(long, value_enum, default_value_t = ProtocolArg::Teleport)]
        protocol: ProtocolArg,
        #[arg(long)]
        gate: Option<String>,
        #[arg(long = "T", value_delimiter = ',', default_values_t = [0.5, 5.0, 50.0])]
        times: Vec<f64>,
        #[arg(long, default_value = "random")]
        input: String,
    },
    /// Compile a circuit file into a JSON schedule.
    Compile {
        circuit: PathBuf,
        #[arg(long, value_enum, default_value_t = LayoutArg::Chain)]
        layout: LayoutArg,
        /// Realize controlled-phase steps with the two-body gadget.
        #[arg(long)]
        gadget: bool,
    },
    /// Compile (or load a compiled schedule) and simulate it.
    Simulate {
        /// Circuit text, or a compiled JSON schedule (`.json`), whose
        /// per-segment run times override `--T`.
        circuit: PathBuf,
        #[arg(long, value_enum, default_value_t = LayoutArg::Chain)]
        layout: LayoutArg,
        #[command(flatten)]
        run: RunArgs,
    },
}

/// A named output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Artifact {
    pub name: String,
    pub contents: String,
}

impl Artifact {
    fn json<T: Serialize>(name: &str, value: &T) -> Result<Self> {
        let mut contents = serde_json::to_string_pretty(value)?;
        contents.push('\n');
        Ok(Artifact { name: format!("{name}.json"), contents })
    }

    fn csv<T: Serialize>(name: &str, rows: &[T]) -> Result<Self> {
        let mut buf = Vec::new();
        write_rows(rows, &mut buf)?;
        Ok(Artifact { name: format!("{name}.csv"), contents: String::from_utf8(buf).expect("csv is utf-8") })
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

/// Exit code for a failed command.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Usage(_) | Error::Io(_) | Error::Json(_) | Error::Csv(_) | Error::Parse { .. } => 2,
        _ => 3,
    }
}

/// Machine-readable error object.
pub fn error_json(kind: &str, message: &str, code: i32) -> String {
    json!({ "error": { "kind": kind, "message": message, "exit_code": code } }).to_string()
}

/// Parses an input-state descriptor for `n_qubits` logical qubits.
pub fn parse_input(desc: &str, n_qubits: usize, seed: u64) -> Result<StateVector> {
    let desc = desc.trim();
    if desc == "random" {
        return Ok(random_state(n_qubits, &mut ChaCha8Rng::seed_from_u64(seed)));
    }
    if let Some((a, b)) = desc.split_once(',') {
        if n_qubits != 1 {
            return Err(usage(format!("an amplitude pair describes one qubit, this protocol takes {n_qubits}")));
        }
        let parse = |s: &str| {
            C64::from_str(s.trim()).map_err(|_| usage(format!("cannot read amplitude `{}`", s.trim())))
        };
        return StateVector::normalized(vec![parse(a)?, parse(b)?]);
    }
    if desc.chars().count() != n_qubits {
        return Err(usage(format!("input `{desc}` has {} labels, expected {n_qubits}", desc.chars().count())));
    }
    let h = std::f64::consts::FRAC_1_SQRT_2;
    desc.chars().try_fold(StateVector::basis(0, 0)?, |acc, c| {
        let q = match c {
            '0' => StateVector::basis(1, 0)?,
            '1' => StateVector::basis(1, 1)?,
            '+' => StateVector::plus(),
            '-' => StateVector::new(vec![C64::new(h, 0.0), C64::new(-h, 0.0)])?,
            other => return Err(usage(format!("unknown state label `{other}`"))),
        };
        Ok(acc.kron(&q))
    })
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v.is_finite()) {
        return Err(Error::Domain(format!("{name} must be positive, got {v}")));
    }
    Ok(())
}

impl Common {
    fn propagation(&self, total_time: f64) -> Result<PropagationConfig> {
        check_positive("T", total_time)?;
        let steps = self.steps.unwrap_or_else(|| default_steps(total_time, self.omega));
        let cfg = PropagationConfig::new(total_time).with_steps(steps).with_method(self.method.into());
        cfg.validate()?;
        Ok(cfg)
    }

    fn gap_options(&self) -> GapOptions {
        GapOptions { grid_points: self.grid, degeneracy_tol: DEFAULT_DEGENERACY_TOL * self.omega, ..GapOptions::default() }
    }
}

fn build_protocol(kind: ProtocolArg, gate: Option<&str>, omega: f64, schedule: Schedule) -> Result<ProtocolSpec> {
    let gate_spec = |default: &str| GateSpec::single_by_name(gate.unwrap_or(default), 1);
    let p = match kind {
        ProtocolArg::Teleport => teleportation_protocol(omega)?,
        ProtocolArg::Agt => agt_single(&gate_spec("H")?, omega)?,
        ProtocolArg::Agp => agp(&gate_spec("A")?, omega)?,
        ProtocolArg::Agt2 => agt_two_qubit(omega)?,
        ProtocolArg::Isotropic => isotropic_teleportation(omega)?,
    };
    schedule.validate()?;
    Ok(p.with_schedule(schedule))
}

#[derive(Serialize)]
struct ProtocolReport<'a> {
    config: &'a Cli,
    protocol: &'a ProtocolSpec,
    input: &'a StateVector,
    min_gap_s: f64,
    report: RunReport,
}

fn run_protocol(cli: &Cli, kind: ProtocolArg, gate: Option<&str>, total_time: f64, input: &str) -> Result<Vec<Artifact>> {
    let c = &cli.common;
    check_positive("omega", c.omega)?;
    let proto = build_protocol(kind, gate, c.omega, c.schedule.into())?;
    let psi = parse_input(input, proto.logical_qubits(), c.seed)?;
    let cfg = c.propagation(total_time)?;
    let profile = proto.gap_profile(c.gap_options())?;
    let mut report = proto.run(&psi, &cfg)?;
    report.min_gap = Some(profile.min_gap());
    let name = proto.name.clone();
    Ok(vec![Artifact::json(
        &name,
        &ProtocolReport { config: cli, protocol: &proto, input: &psi, min_gap_s: profile.min_s(), report },
    )?])
}

#[derive(Serialize)]
struct SweepRow {
    #[serde(rename = "T")]
    total_time: f64,
    fidelity: f64,
    leakage: f64,
    min_gap: f64,
}

fn load_circuit(path: &Path) -> Result<CircuitProgram> {
    fs::read_to_string(path)?.parse()
}

fn compile(circuit: &CircuitProgram, layout: LayoutArg, gadget: bool) -> Result<CompiledProgram> {
    match layout {
        LayoutArg::Chain if gadget => Err(Error::Compile("the gadget option applies to the 3n layout".into())),
        LayoutArg::Chain => compile_chain(circuit),
        LayoutArg::ThreeN => compile_3n(circuit, gadget),
    }
}

/// Runs one parsed command and returns its outputs.
pub fn execute(cli: &Cli) -> Result<Vec<Artifact>> {
    let c = &cli.common;
    check_positive("omega", c.omega)?;
    match &cli.command {
        Command::Teleport(r) => run_protocol(cli, ProtocolArg::Teleport, None, r.total_time, &r.input),
        Command::Agt { gate, run } => run_protocol(cli, ProtocolArg::Agt, Some(gate), run.total_time, &run.input),
        Command::Agp { gate, total_time } => run_protocol(cli, ProtocolArg::Agp, Some(gate), *total_time, "random"),
        Command::Agt2(r) => run_protocol(cli, ProtocolArg::Agt2, None, r.total_time, &r.input),
        Command::Isotropic(r) => run_protocol(cli, ProtocolArg::Isotropic, None, r.total_time, &r.input),
        Command::Nogo { delta, gamma } => {
            let pick = |v: &[f64], name: &str| -> Result<[f64; 3]> {
                v.try_into().map_err(|_| usage(format!("--{name} takes three comma-separated values")))
            };
            let cfg = NoGoConfig { delta: pick(delta, "delta")?, gamma: pick(gamma, "gamma")?, schedule: c.schedule.into() };
            let nogo = no_go_diagonal(&cfg)?;
            let frame = logical_frame_check()?;
            Ok(vec![Artifact::json("nogo", &json!({ "config": cli, "no_go": nogo, "logical_frame": frame }))?])
        }
        Command::Gadget { r, analysis, total_time, input, points } => {
            let first = *r.first().ok_or_else(|| usage("--r needs a value"))?;
            match analysis {
                Analysis::Alpha => Ok(vec![Artifact::csv("gadget_alpha", &alpha_table(r)?)?]),
                Analysis::Gap => Ok(vec![Artifact::csv(&format!("gadget_gap_r{first}"), &gap_table(first, *points)?)?]),
                Analysis::Bound => {
                    let reports = r.iter().map(|&x| gadget_gap_bound_check(x)).collect::<Result<Vec<_>>>()?;
                    Ok(vec![Artifact::json("gadget_bound", &json!({ "config": cli, "bounds": reports }))?])
                }
                Analysis::Structure => {
                    let sys = gadget_hamiltonians(CouplingConfig::new(c.omega, first * c.omega)?)?;
                    let (decoupled, split) = sys.decoupling_check()?;
                    Ok(vec![Artifact::json(
                        "gadget_structure",
                        &json!({
                            "config": cli,
                            "system": sys,
                            "target_hamiltonian": sys.target_hamiltonian()?,
                            "locality": sys.locality_check(),
                            "decoupled_initial": decoupled,
                            "sides_decouple": split,
                            "conserved": sys.conserved_check()?,
                        }),
                    )?])
                }
                Analysis::Run => {
                    let cfg = CouplingConfig::new(c.omega, first * c.omega)?;
                    let t = total_time.unwrap_or_else(|| cfg.reference_time());
                    check_positive("T", t)?;
                    let psi = parse_input(input, 2, c.seed)?;
                    let report = run_gadget(&psi, cfg, t, c.steps)?;
                    Ok(vec![Artifact::json("gadget_run", &json!({ "config": cli, "input": psi, "report": report }))?])
                }
            }
        }
        Command::Gap { protocol, gate } => {
            let proto = build_protocol(*protocol, gate.as_deref(), c.omega, c.schedule.into())?;
            let profile = proto.gap_profile(c.gap_options())?;
            let mut buf = Vec::new();
            profile.write_csv(&mut buf)?;
            Ok(vec![Artifact {
                name: format!("gap_{}.csv", proto.name),
                contents: String::from_utf8(buf).expect("csv is utf-8"),
            }])
        }
        Command::Sweep { protocol, gate, times, input } => {
            let proto = build_protocol(*protocol, gate.as_deref(), c.omega, c.schedule.into())?;
            let psi = parse_input(input, proto.logical_qubits(), c.seed)?;
            let min_gap = proto.gap_profile(c.gap_options())?.min_gap();
            let mut rows = times
                .par_iter()
                .map(|&t| {
                    let rep = proto.run(&psi, &c.propagation(t)?)?;
                    Ok(SweepRow { total_time: t, fidelity: rep.fidelity, leakage: rep.leakage, min_gap })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.sort_by(|a, b| a.total_time.total_cmp(&b.total_time));
            Ok(vec![Artifact::csv(&format!("sweep_{}", proto.name), &rows)?])
        }
        Command::Compile { circuit, layout, gadget } => {
            let program = compile(&load_circuit(circuit)?, *layout, *gadget)?;
            let checks = program.structural_check()?;
            Ok(vec![Artifact::json(
                "compiled",
                &json!({ "config": cli, "structure": checks, "program": program }),
            )?])
        }
        Command::Simulate { circuit, layout, run } => {
            check_positive("T", run.total_time)?;
            let program = if circuit.extension().is_some_and(|e| e == "json") {
                let text = fs::read_to_string(circuit)?;
                let value: serde_json::Value = serde_json::from_str(&text)?;
                // Accept either a bare schedule or the `compile` report.
                serde_json::from_value(value.get("program").cloned().unwrap_or(value))?
            } else {
                compile(&load_circuit(circuit)?, *layout, false)?
            };
            let psi = parse_input(&run.input, program.circuit.n_wires, c.seed)?;
            let report = simulate_program(&program, &psi, run.total_time)?;
            Ok(vec![Artifact::json("simulate", &json!({ "config": cli, "input": psi, "report": report }))?])
        }
    }
}

/// Writes artifacts to `dir`, or concatenated to `stdout`.
pub fn emit(artifacts: &[Artifact], dir: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    match dir {
        Some(d) => {
            fs::create_dir_all(d)?;
            for a in artifacts {
                fs::write(d.join(&a.name), &a.contents)?;
                writeln!(stdout, "{}", d.join(&a.name).display())?;
            }
        }
        None => {
            for a in artifacts {
                stdout.write_all(a.contents.as_bytes())?;
            }
        }
    }
    Ok(())
}

/// Full entry point: parse, execute, emit. Returns the process exit code.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let _ = writeln!(stderr, "{}", error_json("usage", e.to_string().trim(), 2));
            return 2;
        }
    };
    match execute(&cli).and_then(|a| emit(&a, cli.common.out.as_deref(), stdout)) {
        Ok(()) => 0,
        Err(e) => {
            let code = exit_code(&e);
            let _ = writeln!(stderr, "{}", error_json(e.kind(), &e.to_string(), code));
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = main_with_args(std::iter::once("agtsim").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn input_descriptors() {
        let s = parse_input("0.6,0.8i", 1, 0).unwrap();
        assert!((s.amplitudes()[1] - C64::new(0.0, 0.8)).norm() < 1e-12);
        let s = parse_input("+1", 2, 0).unwrap();
        assert!((s.amplitudes()[1].re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert_eq!(parse_input("random", 2, 4).unwrap(), parse_input("random", 2, 4).unwrap());
        assert!(parse_input("01", 1, 0).is_err());
        assert!(parse_input("x", 1, 0).is_err());
        assert!(parse_input("0,0", 1, 0).is_err());
        assert_eq!(parse_input("", 0, 0).unwrap().dim(), 1);
    }

    #[test]
    fn gap_csv() {
        let (code, out, _) = run(&["gap", "--protocol", "teleport"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("s,gap,ground_energy,ground_degeneracy\n"));
        assert_eq!(out.lines().count(), 102);
    }

    #[test]
    fn gadget_alpha_row() {
        let (code, out, _) = run(&["gadget", "--r", "0.1", "--analysis", "alpha"]);
        assert_eq!(code, 0);
        let mut lines = out.lines();
        assert_eq!(lines.next(), Some("r,alpha_closed,alpha_numeric"));
        let row: Vec<f64> = lines.next().unwrap().split(',').map(|x| x.parse().unwrap()).collect();
        assert_eq!(row[0], 0.1);
        assert!((row[1] - 0.995133).abs() < 1e-6 && (row[1] - row[2]).abs() < 1e-10);
    }

    #[test]
    fn exit_codes() {
        let (code, _, err) = run(&["teleport", "--bogus"]);
        assert_eq!(code, 2);
        let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(v["error"]["kind"], "usage");

        let (code, _, err) = run(&["gadget", "--r", "0.6"]);
        assert_eq!(code, 3);
        let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(v["error"]["kind"], "domain");

        assert_eq!(run(&["teleport", "--T=-1"]).0, 3);
        assert_eq!(run(&["--omega", "0", "gap"]).0, 3);
        assert_eq!(run(&["agp", "--gate", "H"]).0, 3);
        assert_eq!(run(&["teleport", "--input", "q"]).0, 2);
        assert_eq!(run(&["compile", "/nonexistent/circuit.txt"]).0, 2);
        assert_eq!(run(&["--help"]).0, 0);
    }

    #[test]
    fn teleport_report_is_reproducible() {
        let args = ["teleport", "--T", "5", "--seed", "9"];
        let (code, a, _) = run(&args);
        assert_eq!(code, 0);
        let (_, b, _) = run(&args);
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["config"]["common"]["seed"], 9);
        assert!(v["protocol"]["hamiltonian"]["h_initial"].as_array().unwrap().len() == 2);
        assert!(v["report"]["fidelity"].as_f64().unwrap() > 0.9);
    }

    #[test]
    fn out_dir() {
        let dir = tempfile::tempdir().unwrap();
        let d = dir.path().to_str().unwrap();
        let (code, out, _) = run(&["--out", d, "sweep", "--T", "5,0.5"]);
        assert_eq!(code, 0);
        assert!(out.trim().ends_with("sweep_teleport.csv"));
        let csv = fs::read_to_string(dir.path().join("sweep_teleport.csv")).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("T,fidelity,leakage,min_gap"));
        assert!(lines.next().unwrap().starts_with("0.5,"));
    }
}
