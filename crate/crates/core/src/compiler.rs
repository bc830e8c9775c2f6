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

//! Circuits over `{A, B}` (and `CZ` between wires) compiled into piecewise
//! adiabatic schedules.
//!
//! Two layouts are supported. The chain spends two fresh qubits per gate on
//! a single wire: gate `i` is imprinted on the coupling between qubits `2i`
//! and `2i+1`, and the data hops two sites per segment. The three-register
//! layout bounces every wire between its first and third qubit, with the next
//! gate imprinted on the receiving pair.
//!
//! Circuit text has one gate per line: `A`, `B` (optionally followed by a
//! 1-based wire), or `CZ i j`. Blank lines and `#` comments are ignored.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::dynamics::{fidelity, leakage, propagate, PropagationConfig, RunReport, StateVector};
use crate::error::{Error, Result};
use crate::gadgets::{gadget_hamiltonians, CouplingConfig, GADGET_QUBITS};
use crate::hamiltonian::{conjugate, standard_pair, GateName, GateSpec, Schedule, TimeDependentHamiltonian};
use crate::pauli::PauliSum;
use crate::protocols::{prepare_in_ground_space, CheckItem, CheckReport};
use crate::spectral::{ground_projector, DEFAULT_DEGENERACY_TOL};

/// Largest register `simulate_program` will propagate.
pub const SIMULATION_BUDGET: usize = 8;

/// One circuit step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "gate")]
pub enum CircuitGate {
    A { wire: usize },
    B { wire: usize },
    CZ { control: usize, target: usize },
}

impl CircuitGate {
    pub fn wires(&self) -> Vec<usize> {
        match *self {
            CircuitGate::A { wire } | CircuitGate::B { wire } => vec![wire],
            CircuitGate::CZ { control, target } => vec![control, target],
        }
    }

    /// The gate acting on the given physical qubits, one per wire.
    fn spec_on(&self, qubits: &[usize]) -> Result<GateSpec> {
        match self {
            CircuitGate::A { .. } => Ok(GateSpec::a(qubits[0])),
            CircuitGate::B { .. } => Ok(GateSpec::b(qubits[0])),
            CircuitGate::CZ { .. } => GateSpec::cz(qubits[0], qubits[1]),
        }
    }
}

impl fmt::Display for CircuitGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CircuitGate::A { wire } => write!(f, "A {wire}"),
            CircuitGate::B { wire } => write!(f, "B {wire}"),
            CircuitGate::CZ { control, target } => write!(f, "CZ {control} {target}"),
        }
    }
}

/// An ordered gate list on `n_wires` logical qubits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitProgram {
    pub n_wires: usize,
    pub gates: Vec<CircuitGate>,
}

impl CircuitProgram {
    pub fn new(n_wires: usize, gates: Vec<CircuitGate>) -> Result<Self> {
        if n_wires == 0 {
            return Err(Error::Compile("a circuit needs at least one wire".into()));
        }
        for g in &gates {
            let w = g.wires();
            if w.iter().any(|&q| q == 0 || q > n_wires) {
                return Err(Error::Compile(format!("gate `{g}` addresses a wire outside 1..={n_wires}")));
            }
            if w.len() == 2 && w[0] == w[1] {
                return Err(Error::Compile(format!("gate `{g}` needs two distinct wires")));
            }
        }
        Ok(CircuitProgram { n_wires, gates })
    }

    /// Single-wire circuit from gate names.
    pub fn single_wire(names: &[&str]) -> Result<Self> {
        let text = names.join("\n");
        let p: CircuitProgram = text.parse()?;
        CircuitProgram::new(1, p.gates)
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// `g_l ⋯ g_1` acting on `psi`.
    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        if psi.n_qubits() != self.n_wires {
            return Err(crate::error::structural("input does not match the number of wires"));
        }
        let mut out = psi.clone();
        for g in &self.gates {
            out = out.apply(&g.spec_on(&g.wires())?.embed(self.n_wires)?)?;
        }
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        self.gates.iter().map(|g| format!("{g}\n")).collect()
    }
}

impl FromStr for CircuitProgram {
    type Err = Error;

    /// Wire count is the largest wire mentioned (at least 1).
    fn from_str(text: &str) -> Result<Self> {
        let mut gates = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let wire = |f: &str| -> Result<usize> {
                f.parse::<usize>()
                    .ok()
                    .filter(|&w| w > 0)
                    .ok_or_else(|| Error::Compile(format!("line {}: bad wire index `{f}`", lineno + 1)))
            };
            let gate = match fields.as_slice() {
                ["A"] => CircuitGate::A { wire: 1 },
                ["B"] => CircuitGate::B { wire: 1 },
                ["A", w] => CircuitGate::A { wire: wire(w)? },
                ["B", w] => CircuitGate::B { wire: wire(w)? },
                ["CZ", a, b] => CircuitGate::CZ { control: wire(a)?, target: wire(b)? },
                [name, ..] => {
                    return Err(Error::Compile(format!(
                        "line {}: unsupported gate `{name}`; circuits use A, B and CZ i j",
                        lineno + 1
                    )))
                }
                [] => unreachable!("empty lines skipped"),
            };
            gates.push(gate);
        }
        let n = gates.iter().flat_map(|g| g.wires()).max().unwrap_or(1);
        CircuitProgram::new(n, gates)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Layout {
    Chain,
    ThreeRegister,
    /// The three-register layout with the controlled-phase step realized by
    /// the two-body gadget.
    Gadget,
}

/// One adiabatic drag.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Segment {
    /// 1-based position in the schedule.
    pub index: usize,
    /// Cyclic label `H1`, `H2` or `H3`.
    pub label: String,
    /// Gate annotation (`I` for a pure move).
    pub gate: String,
    pub hamiltonian: TimeDependentHamiltonian,
    /// Qubits whose couplings change during this segment.
    pub active: Vec<usize>,
    pub data_in: Vec<usize>,
    pub data_out: Vec<usize>,
    /// Overrides the uniform per-segment run time.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total_time: Option<f64>,
}

impl Segment {
    pub fn start(&self) -> PauliSum {
        self.hamiltonian.start()
    }

    pub fn end(&self) -> PauliSum {
        self.hamiltonian.end()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CompiledProgram {
    pub layout: Layout,
    pub circuit: CircuitProgram,
    pub n_physical: usize,
    pub input_qubits: Vec<usize>,
    pub output_qubits: Vec<usize>,
    pub segments: Vec<Segment>,
}

/// Cyclic label of the `i`-th segment (1-based).
pub fn cyclic_label(i: usize) -> String {
    format!("H{}", (i - 1) % 3 + 1)
}

fn sum_all(n: usize, parts: impl IntoIterator<Item = PauliSum>) -> Result<PauliSum> {
    parts.into_iter().try_fold(PauliSum::empty(n), |acc, p| acc.plus(&p))
}

fn gate_label(g: Option<&CircuitGate>) -> String {
    g.map(|g| g.to_string()).unwrap_or_else(|| "I".into())
}

/// Chain layout for a single wire: `2l + 1` qubits, one segment per gate.
/// Couplings outside the moving window stay on as static terms.
pub fn compile_chain(circuit: &CircuitProgram) -> Result<CompiledProgram> {
    if circuit.n_wires != 1 {
        return Err(Error::Compile(format!(
            "the chain layout takes a single wire, got {}; use the three-register layout",
            circuit.n_wires
        )));
    }
    if let Some(g) = circuit.gates.iter().find(|g| matches!(g, CircuitGate::CZ { .. })) {
        return Err(Error::Compile(format!("`{g}` needs two wires; the chain layout has one")));
    }
    let l = circuit.len();
    let n = 2 * l + 1;
    // Pair i before its segment (gate imprinted) and after (plain).
    let mut before = Vec::with_capacity(l);
    let mut after = Vec::with_capacity(l);
    for (k, g) in circuit.gates.iter().enumerate() {
        let i = k + 1;
        before.push(conjugate(&standard_pair(n, 2 * i, 2 * i + 1, 1.0)?, &g.spec_on(&[2 * i + 1])?)?);
        after.push(standard_pair(n, 2 * i - 1, 2 * i, 1.0)?);
    }
    let mut segments = Vec::with_capacity(l);
    for (k, g) in circuit.gates.iter().enumerate() {
        let i = k + 1;
        let idle = sum_all(n, after[..k].iter().cloned().chain(before[k + 1..].iter().cloned()))?;
        let h = TimeDependentHamiltonian::with_static(before[k].clone(), after[k].clone(), idle, Schedule::Linear)?;
        segments.push(Segment {
            index: i,
            label: cyclic_label(i),
            gate: gate_label(Some(g)),
            hamiltonian: h,
            active: vec![2 * i - 1, 2 * i, 2 * i + 1],
            data_in: vec![2 * i - 1],
            data_out: vec![2 * i + 1],
            total_time: None,
        });
    }
    Ok(CompiledProgram {
        layout: Layout::Chain,
        circuit: circuit.clone(),
        n_physical: n,
        input_qubits: vec![1],
        output_qubits: vec![n],
        segments,
    })
}

/// Physical qubit of `wire` in register `reg ∈ {1, 2, 3}`; wires occupy
/// consecutive triples.
pub fn register_qubit(wire: usize, reg: usize) -> usize {
    3 * (wire - 1) + reg
}

/// Three-register layout on `3n` qubits. Every gate is one segment; all
/// wires move together, alternating from the first register to the third
/// and back, so each segment ends exactly where the following one starts.
///
/// The rest Hamiltonian before segment `k` holds the receiving pairs rotated
/// by the suffix product `g_k g_{k+1} ⋯ g_l`. A segment conjugated on its
/// sending side by `V` enacts `V†` after its own imprint, so with suffix
/// imprints segment `k` enacts exactly `g_k`.
///
/// With `gadget = true` a single `CZ 1 2` on two wires is emitted through the
/// eight-qubit two-body gadget instead of three-body couplings.
pub fn compile_3n(circuit: &CircuitProgram, gadget: bool) -> Result<CompiledProgram> {
    if gadget {
        return compile_gadget_step(circuit);
    }
    let w = circuit.n_wires;
    let n = 3 * w;
    let l = circuit.len();
    let rest = |k: usize| -> Result<PauliSum> {
        let recv = if k.is_multiple_of(2) { 3 } else { 1 };
        let mut h = sum_all(
            n,
            (1..=w)
                .map(|q| standard_pair(n, register_qubit(q, 2), register_qubit(q, recv), 1.0))
                .collect::<Result<Vec<_>>>()?,
        )?;
        for g in circuit.gates[k.min(l)..].iter().rev() {
            let qubits: Vec<usize> = g.wires().iter().map(|&q| register_qubit(q, recv)).collect();
            h = conjugate(&h, &g.spec_on(&qubits)?)?;
        }
        Ok(h)
    };
    let data = |k: usize| -> Vec<usize> {
        let reg = if k.is_multiple_of(2) { 1 } else { 3 };
        (1..=w).map(|q| register_qubit(q, reg)).collect()
    };
    let mut segments = Vec::with_capacity(l);
    let mut current = rest(0)?;
    for k in 0..l {
        let next = rest(k + 1)?;
        let h = TimeDependentHamiltonian::linear(current.clone(), next.clone())?;
        segments.push(Segment {
            index: k + 1,
            label: cyclic_label(k + 1),
            gate: gate_label(circuit.gates.get(k)),
            hamiltonian: h,
            active: (1..=n).collect(),
            data_in: data(k),
            data_out: data(k + 1),
            total_time: None,
        });
        current = next;
    }
    Ok(CompiledProgram {
        layout: Layout::ThreeRegister,
        circuit: circuit.clone(),
        n_physical: n,
        input_qubits: data(0),
        output_qubits: data(l),
        segments,
    })
}

fn compile_gadget_step(circuit: &CircuitProgram) -> Result<CompiledProgram> {
    let ok = circuit.n_wires == 2
        && matches!(circuit.gates.as_slice(), [CircuitGate::CZ { .. }]);
    if !ok {
        return Err(Error::Compile(
            "gadget compilation covers a single `CZ 1 2` step on two wires".into(),
        ));
    }
    let sys = gadget_hamiltonians(CouplingConfig::from_ratio(0.1)?)?;
    Ok(CompiledProgram {
        layout: Layout::Gadget,
        circuit: circuit.clone(),
        n_physical: GADGET_QUBITS,
        input_qubits: vec![1, 5],
        output_qubits: vec![3, 4, 7, 8],
        segments: vec![Segment {
            index: 1,
            label: cyclic_label(1),
            gate: gate_label(circuit.gates.first()),
            hamiltonian: sys.hamiltonian()?,
            active: (1..=GADGET_QUBITS).collect(),
            data_in: vec![1, 5],
            data_out: vec![3, 4, 7, 8],
            total_time: None,
        }],
    })
}

impl CompiledProgram {
    /// Continuity, cyclic labels and, for the chain, the placement of each
    /// imprinted gate on qubits `2i, 2i+1`.
    pub fn structural_check(&self) -> Result<CheckReport> {
        let mut items = Vec::new();
        let mut worst = 0.0f64;
        for pair in self.segments.windows(2) {
            let gap = pair[0].end().plus(&pair[1].start().scaled(-1.0))?.simplified(1e-12);
            worst = worst.max(gap.terms().iter().map(|t| t.coefficient().abs()).fold(0.0, f64::max));
        }
        items.push(CheckItem { name: "segment ends match next starts".into(), passed: worst <= 1e-12, residual: worst });
        let bad_labels = self
            .segments
            .iter()
            .filter(|s| s.label != cyclic_label(s.index))
            .count();
        items.push(CheckItem {
            name: "cyclic labels H1, H2, H3".into(),
            passed: bad_labels == 0,
            residual: bad_labels as f64,
        });
        if self.layout == Layout::Chain {
            let misplaced = self
                .segments
                .iter()
                .filter(|s| {
                    let i = s.index;
                    let support: Vec<usize> =
                        s.hamiltonian.h_initial().terms().iter().flat_map(|t| t.support()).collect();
                    support.iter().any(|&q| q != 2 * i && q != 2 * i + 1)
                })
                .count();
            items.push(CheckItem {
                name: "gate i lives on qubits 2i, 2i+1".into(),
                passed: misplaced == 0,
                residual: misplaced as f64,
            });
        }
        Ok(CheckReport { items })
    }

    pub fn is_simulable(&self) -> bool {
        self.layout != Layout::Gadget && self.n_physical <= SIMULATION_BUDGET
    }

    /// Sets the same run time on every segment.
    pub fn with_uniform_time(mut self, total_time: f64) -> Self {
        for s in &mut self.segments {
            s.total_time = Some(total_time);
        }
        self
    }
}

/// Propagates every segment in order and scores the result against
/// `g_l ⋯ g_1 ψ` on the output qubits. Segments without their own run time
/// use `time_per_segment`.
pub fn simulate_program(program: &CompiledProgram, psi_in: &StateVector, time_per_segment: f64) -> Result<RunReport> {
    let started = Instant::now();
    if program.layout == Layout::Gadget {
        return Err(Error::Resource("gadget schedules are emitted only; run them with the gadget runner".into()));
    }
    if program.n_physical > SIMULATION_BUDGET {
        return Err(Error::Resource(format!(
            "{} physical qubits exceed the simulation budget of {SIMULATION_BUDGET}",
            program.n_physical
        )));
    }
    let n = program.n_physical;
    let expected = program.circuit.apply(psi_in)?;
    let default_cfg = PropagationConfig::new(time_per_segment);
    let Some(first) = program.segments.first() else {
        return Ok(RunReport {
            protocol: "circuit".into(),
            fidelity: fidelity(psi_in, &expected)?,
            leakage: 0.0,
            min_gap: None,
            final_norm: psi_in.norm(),
            config: default_cfg,
            final_state: psi_in.clone(),
            elapsed_s: started.elapsed().as_secs_f64(),
        });
    };
    let (p0, _) = ground_projector(&first.start().realize_or_zero(), DEFAULT_DEGENERACY_TOL)?;
    let mut psi = prepare_in_ground_space(&p0, &program.input_qubits, psi_in)?;
    let mut cfg = default_cfg;
    for seg in &program.segments {
        cfg = PropagationConfig::new(seg.total_time.unwrap_or(time_per_segment));
        psi = propagate(&seg.hamiltonian, &psi, &cfg)?;
    }
    let last = program.segments.last().expect("non-empty");
    let (pf, _) = ground_projector(&last.end().realize_or_zero(), DEFAULT_DEGENERACY_TOL)?;
    let target = prepare_in_ground_space(&pf, &program.output_qubits, &expected)?;
    debug_assert_eq!(psi.n_qubits(), n);
    Ok(RunReport {
        protocol: "circuit".into(),
        fidelity: fidelity(&psi, &target)?,
        leakage: leakage(&psi, &pf)?,
        min_gap: None,
        final_norm: psi.norm(),
        config: cfg,
        final_state: psi,
        elapsed_s: started.elapsed().as_secs_f64(),
    })
}

/// Logical gate of a circuit step as a [`GateSpec`] on wire-local targets.
pub fn logical_gate(g: &CircuitGate) -> Result<GateSpec> {
    let spec = g.spec_on(&g.wires())?;
    debug_assert!(matches!(spec.name(), GateName::A | GateName::B | GateName::CZ));
    Ok(spec)
}
