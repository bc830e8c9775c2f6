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

//! The named protocols: adiabatic teleportation, single-qubit gate
//! teleportation (AGT), gate preparation (AGP), the controlled-phase AGT, the
//! isotropic-exchange variant, and the two checks that need no propagation
//! (logical-frame algebra and the two-qubit no-go).

use std::time::Instant;

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::dynamics::{fidelity, leakage, propagate, PropagationConfig, RunReport, StateVector};
use crate::error::{domain, Error, Result};
use crate::hamiltonian::{
    conjugate, isotropic_pair, standard_pair, GateName, GateSpec, Schedule, TimeDependentHamiltonian,
};
use crate::operator::{Operator, C64};
use crate::pauli::{LogicalFrame, PauliSum, PauliTerm, PROJECTION_TOL};
use crate::spectral::{gap_profile_with, ground_projector, GapOptions, GapProfile, DEFAULT_DEGENERACY_TOL};

/// A named adiabatic protocol: the interpolation, which qubits carry the
/// logical input and output, and the gate the run should enact on the
/// logical register.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProtocolSpec {
    pub name: String,
    pub hamiltonian: TimeDependentHamiltonian,
    /// Physical qubits holding the logical input at `s = 0`.
    pub data_qubits: Vec<usize>,
    /// Physical qubits holding the logical output at `s = 1`, in the same
    /// logical order as `data_qubits`.
    pub output_qubits: Vec<usize>,
    /// Gate on the logical register, targets numbered `1..=data_qubits.len()`.
    /// `None` means identity.
    pub logical_gate: Option<GateSpec>,
    /// Basis-index convention, written into protocol files.
    #[serde(default = "bit_order_note")]
    pub bit_order: String,
}

fn bit_order_note() -> String {
    "qubit 1 is the leftmost Pauli letter and the most significant bit of a basis index".into()
}

impl ProtocolSpec {
    pub fn new(
        name: impl Into<String>,
        hamiltonian: TimeDependentHamiltonian,
        data_qubits: Vec<usize>,
        output_qubits: Vec<usize>,
        logical_gate: Option<GateSpec>,
    ) -> Result<Self> {
        let n = hamiltonian.n_qubits();
        if data_qubits.len() != output_qubits.len() {
            return Err(domain("data and output registers differ in size"));
        }
        if let Some(&q) = data_qubits.iter().chain(&output_qubits).find(|&&q| q == 0 || q > n) {
            return Err(Error::Index(format!("register qubit {q} outside 1..={n}")));
        }
        if let Some(g) = &logical_gate {
            if g.targets().iter().any(|&t| t > data_qubits.len()) {
                return Err(Error::Index(format!("logical gate {} targets beyond the register", g.name())));
            }
        }
        Ok(ProtocolSpec {
            name: name.into(),
            hamiltonian,
            data_qubits,
            output_qubits,
            logical_gate,
            bit_order: bit_order_note(),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.hamiltonian.n_qubits()
    }

    pub fn logical_qubits(&self) -> usize {
        self.data_qubits.len()
    }

    pub fn with_schedule(mut self, schedule: Schedule) -> Self {
        self.hamiltonian = self.hamiltonian.with_schedule(schedule);
        self
    }

    /// Ground-space projector of `H(0)` and its degeneracy.
    pub fn initial_projector(&self) -> Result<(Operator, usize)> {
        ground_projector(&self.hamiltonian.start().realize_or_zero(), DEFAULT_DEGENERACY_TOL)
    }

    /// Ground-space projector of `H(1)` and its degeneracy.
    pub fn final_projector(&self) -> Result<(Operator, usize)> {
        ground_projector(&self.hamiltonian.end().realize_or_zero(), DEFAULT_DEGENERACY_TOL)
    }

    /// `ψ_in` on the data qubits, completed to a ground state of `H(0)`.
    pub fn initial_state(&self, psi_in: &StateVector) -> Result<StateVector> {
        let (p, _) = self.initial_projector()?;
        prepare_in_ground_space(&p, &self.data_qubits, psi_in)
    }

    /// `U ψ_in` on the output qubits, completed to a ground state of `H(1)`.
    pub fn target_state(&self, psi_in: &StateVector) -> Result<StateVector> {
        let out = self.logical_output(psi_in)?;
        let (p, _) = self.final_projector()?;
        prepare_in_ground_space(&p, &self.output_qubits, &out)
    }

    /// Logical gate applied to the input register.
    pub fn logical_output(&self, psi_in: &StateVector) -> Result<StateVector> {
        self.check_input(psi_in)?;
        match &self.logical_gate {
            Some(g) if self.logical_qubits() > 0 => psi_in.apply(&g.embed(self.logical_qubits())?),
            _ => Ok(psi_in.clone()),
        }
    }

    fn check_input(&self, psi_in: &StateVector) -> Result<()> {
        if psi_in.n_qubits() != self.logical_qubits() {
            return Err(crate::error::structural(format!(
                "protocol {} takes a {}-qubit input, got {}",
                self.name,
                self.logical_qubits(),
                psi_in.n_qubits()
            )));
        }
        Ok(())
    }

    pub fn gap_profile(&self, opts: GapOptions) -> Result<GapProfile> {
        gap_profile_with(&self.hamiltonian, opts)
    }

    /// Prepares, propagates, and scores one run. `min_gap` is left empty.
    pub fn run(&self, psi_in: &StateVector, cfg: &PropagationConfig) -> Result<RunReport> {
        let started = Instant::now();
        let psi0 = self.initial_state(psi_in)?;
        let target = self.target_state(psi_in)?;
        let (pf, _) = self.final_projector()?;
        let out = propagate(&self.hamiltonian, &psi0, cfg)?;
        Ok(RunReport {
            protocol: self.name.clone(),
            fidelity: fidelity(&out, &target)?,
            leakage: leakage(&out, &pf)?,
            min_gap: None,
            final_norm: out.norm(),
            config: *cfg,
            final_state: out,
            elapsed_s: started.elapsed().as_secs_f64(),
        })
    }
}

/// Places `state` on `register` and projects onto the range of `projector`.
///
/// The remaining qubits start in the computational basis state with the
/// largest overlap with the projector (found with the register in `|0…0⟩`,
/// lowest index on ties). When the ground space factorizes as
/// `register ⊗ fixed ancilla state`, the result is exactly `state ⊗ ancilla`.
pub fn prepare_in_ground_space(projector: &Operator, register: &[usize], state: &StateVector) -> Result<StateVector> {
    let n = projector.n_qubits();
    if state.n_qubits() != register.len() {
        return Err(crate::error::structural("state does not match register size"));
    }
    let bit = |q: usize| n - q;
    let reg_mask: usize = register.iter().map(|&q| 1usize << bit(q)).sum();
    let dim = projector.dim();
    let mut best = (0usize, -1.0f64);
    for idx in (0..dim).filter(|i| i & reg_mask == 0) {
        let w = projector.get(idx, idx).re;
        if w > best.1 + 1e-12 {
            best = (idx, w);
        }
    }
    if best.1 < 1e-8 {
        return Err(Error::Consistency("ground space has no overlap with any reference state".into()));
    }
    let k = register.len();
    let mut v = DVector::<C64>::zeros(dim);
    for local in 0..(1usize << k) {
        let idx = register.iter().enumerate().fold(best.0, |acc, (i, &q)| {
            acc | (((local >> (k - 1 - i)) & 1) << bit(q))
        });
        v[idx] = state.amplitudes()[local];
    }
    let projected = projector.apply(&v)?;
    if projected.norm() < 1e-6 {
        return Err(Error::Consistency("input state is orthogonal to the ground space".into()));
    }
    StateVector::normalize_vector(projected)
}

fn check_omega(omega: f64) -> Result<()> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(domain(format!("coupling ω must be positive, got {omega}")));
    }
    Ok(())
}

/// Three-qubit adiabatic teleportation: `H_i = -ω(X₂X₃ + Z₂Z₃)` to
/// `H_f = -ω(X₁X₂ + Z₁Z₂)`, moving qubit 1 onto qubit 3.
pub fn teleportation_protocol(omega: f64) -> Result<ProtocolSpec> {
    check_omega(omega)?;
    let h = TimeDependentHamiltonian::linear(standard_pair(3, 2, 3, omega)?, standard_pair(3, 1, 2, omega)?)?;
    ProtocolSpec::new("teleport", h, vec![1], vec![3], None)
}

/// Gate teleportation: the initial coupling is rotated by `gate` on qubit 3,
/// so the data arrives on qubit 3 with the gate applied.
pub fn agt_single(gate: &GateSpec, omega: f64) -> Result<ProtocolSpec> {
    check_omega(omega)?;
    if gate.arity() != 1 {
        return Err(Error::UnsupportedGate {
            gate: gate.name().to_string(),
            reason: "single-qubit gate teleportation needs a one-qubit unitary".into(),
        });
    }
    let base = teleportation_protocol(omega)?;
    if gate.is_identity() {
        return Ok(base);
    }
    let hi = conjugate(base.hamiltonian.h_initial(), &gate.on(vec![3])?)?;
    let h = TimeDependentHamiltonian::linear(hi, base.hamiltonian.h_final().clone())?;
    ProtocolSpec::new(format!("agt-{}", gate.name()), h, vec![1], vec![3], Some(gate.on(vec![1])?))
}

/// Gate preparation on a standing pair: drag `-ω(X₁X₂ + Z₁Z₂)` into its
/// conjugate by `gate` on qubit 2. Only `A` and `B` keep a gap open.
pub fn agp(gate: &GateSpec, omega: f64) -> Result<ProtocolSpec> {
    check_omega(omega)?;
    if !matches!(gate.name(), GateName::A | GateName::B) || gate.arity() != 1 {
        return Err(Error::UnsupportedGate {
            gate: gate.name().to_string(),
            reason: "gate preparation is only supported for A and B; a general U can close the gap \
                     (e.g. U = X on the second qubit)"
                .into(),
        });
    }
    let h0 = standard_pair(2, 1, 2, omega)?;
    let h1 = conjugate(&h0, &gate.on(vec![2])?)?;
    let h = TimeDependentHamiltonian::linear(h0, h1)?;
    ProtocolSpec::new(format!("agp-{}", gate.name()), h, vec![], vec![], None)
}

/// Six-qubit controlled-phase teleportation. Logical inputs on qubits 1 and
/// 4 arrive on 3 and 6 with `CZ` applied; the initial Hamiltonian carries the
/// three-body terms `X₂X₃Z₆` and `Z₃X₅X₆`.
pub fn agt_two_qubit(omega: f64) -> Result<ProtocolSpec> {
    check_omega(omega)?;
    let pre = standard_pair(6, 2, 3, omega)?.plus(&standard_pair(6, 5, 6, omega)?)?;
    let hi = conjugate(&pre, &GateSpec::cz(3, 6)?)?;
    let hf = standard_pair(6, 1, 2, omega)?.plus(&standard_pair(6, 4, 5, omega)?)?;
    let h = TimeDependentHamiltonian::linear(hi, hf)?;
    ProtocolSpec::new("agt2", h, vec![1, 4], vec![3, 6], Some(GateSpec::cz(1, 2)?))
}

/// Teleportation with antiferromagnetic Heisenberg couplings
/// `+ω(XX + YY + ZZ)`. The ground pairs are singlets rather than `|Φ⟩`.
pub fn isotropic_teleportation(omega: f64) -> Result<ProtocolSpec> {
    if omega <= 0.0 {
        return Err(domain(format!(
            "isotropic teleportation needs an antiferromagnetic coupling ω > 0, got {omega}"
        )));
    }
    check_omega(omega)?;
    let h = TimeDependentHamiltonian::linear(isotropic_pair(3, 2, 3, omega)?, isotropic_pair(3, 1, 2, omega)?)?;
    ProtocolSpec::new("isotropic", h, vec![1], vec![3], None)
}

/// One named pass/fail item of a check report.
#[derive(Clone, Debug, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    /// Worst residual observed for this item.
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.items.iter().filter(|i| !i.passed).map(|i| i.name.as_str()).collect()
    }

    fn push(&mut self, name: impl Into<String>, residual: f64, tol: f64) {
        self.items.push(CheckItem { name: name.into(), passed: residual <= tol, residual });
    }
}

/// Matrix-level checks of the encoded frame on the teleportation protocol.
pub fn logical_frame_check() -> Result<CheckReport> {
    logical_frame_check_with(&LogicalFrame::standard(), 1.0, 101)
}

/// As [`logical_frame_check`], for an arbitrary frame, coupling and grid.
pub fn logical_frame_check_with(frame: &LogicalFrame, omega: f64, grid_points: usize) -> Result<CheckReport> {
    const TOL: f64 = 1e-12;
    let mut report = CheckReport { items: Vec::new() };

    let violations = frame.anticommutation_violations();
    report.push(
        format!("frame anticommutation pattern (violations: {violations:?})"),
        violations.len() as f64,
        0.0,
    );

    let m = |t: &PauliTerm| t.realize();
    let phys = |label: &str| PauliTerm::parse(label, 1.0).map(|t| t.realize());
    let identities = [
        ("ZII = Z̄1·Z̄3", phys("ZII")?, &m(&frame.z[0]) * &m(&frame.z[2])),
        ("XII = X̄1·X̄2", phys("XII")?, &m(&frame.x[0]) * &m(&frame.x[1])),
        ("IIZ = Z̄1·Z̄2", phys("IIZ")?, &m(&frame.z[0]) * &m(&frame.z[1])),
        ("IIX = X̄1·X̄3", phys("IIX")?, &m(&frame.x[0]) * &m(&frame.x[2])),
    ];
    for (name, lhs, rhs) in identities {
        report.push(name, lhs.max_abs_diff(&rhs)?, TOL);
    }

    let proto = teleportation_protocol(omega)?;
    let x1 = m(&frame.x[0]);
    let z1 = m(&frame.z[0]);
    let mut worst_x = 0.0f64;
    let mut worst_z = 0.0f64;
    let mut worst_frame = 0.0f64;
    let last = (grid_points.max(2) - 1) as f64;
    for k in 0..grid_points.max(2) {
        let s = k as f64 / last;
        let h = proto.hamiltonian.evaluate(s)?;
        worst_x = worst_x.max(h.commutator(&x1)?.max_abs());
        worst_z = worst_z.max(h.commutator(&z1)?.max_abs());
        // H(s) = -ω(1-s)(X̄2 + Z̄3) - ωs(X̄3 + Z̄2)
        let logical = PauliSum::new(
            3,
            vec![
                frame.x[1].with_coefficient(-omega * (1.0 - s)),
                frame.z[2].with_coefficient(-omega * (1.0 - s)),
                frame.x[2].with_coefficient(-omega * s),
                frame.z[1].with_coefficient(-omega * s),
            ],
        )?;
        worst_frame = worst_frame.max(h.max_abs_diff(&logical.realize()?)?);
    }
    report.push("[H(s), X̄1] = 0 on grid", worst_x, TOL);
    report.push("[H(s), Z̄1] = 0 on grid", worst_z, TOL);
    report.push("H(s) = -ω(1-s)(X̄2+Z̄3) - ωs(X̄3+Z̄2)", worst_frame, TOL);
    Ok(report)
}

/// Level energies of the two-qubit no-go construction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoGoConfig {
    /// `δ₁` on `|01⟩, |11⟩`; `δ₂` on `|00⟩`; `δ₃` on `|10⟩`.
    pub delta: [f64; 3],
    /// `γ₁` on `|10⟩, |11⟩`; `γ₂` on `|00⟩`; `γ₃` on `|01⟩`.
    pub gamma: [f64; 3],
    pub schedule: Schedule,
}

impl Default for NoGoConfig {
    fn default() -> Self {
        NoGoConfig { delta: [1.0, 2.0, 3.0], gamma: [1.0, 2.0, 3.0], schedule: Schedule::Linear }
    }
}

impl NoGoConfig {
    pub fn validate(&self) -> Result<()> {
        for &v in self.delta.iter().chain(&self.gamma) {
            if !(v > 0.0 && v.is_finite()) {
                return Err(domain(format!("no-go energies must be positive and finite, got {v}")));
            }
        }
        let [d1, d2, d3] = self.delta;
        let [g1, g2, g3] = self.gamma;
        if !(d1 < d2 && d1 < d3 && g1 < g2 && g1 < g3) {
            return Err(domain("need δ₁ < δ₂, δ₃ and γ₁ < γ₂, γ₃ so the doublets are ground spaces"));
        }
        Ok(())
    }

    /// `(H_a, H_b)` as Pauli sums.
    pub fn endpoints(&self) -> Result<(PauliSum, PauliSum)> {
        let [d1, d2, d3] = self.delta;
        let [g1, g2, g3] = self.gamma;
        // Basis order |00>, |01>, |10>, |11>.
        let ha = Operator::diagonal(&[d2, d1, d3, d1])?;
        let hb = Operator::diagonal(&[g2, g3, g1, g1])?;
        Ok((PauliSum::from_operator(&ha, PROJECTION_TOL)?, PauliSum::from_operator(&hb, PROJECTION_TOL)?))
    }

    pub fn hamiltonian(&self) -> Result<TimeDependentHamiltonian> {
        let (ha, hb) = self.endpoints()?;
        TimeDependentHamiltonian::with_static(ha, hb, PauliSum::empty(2), self.schedule)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NoGoReport {
    pub config: NoGoConfig,
    /// Largest off-diagonal modulus of `H(s)` over the grid.
    pub max_off_diagonal: f64,
    /// Largest `|⟨01|ψ(T)⟩|²` starting from `|10⟩`, over the run times tried.
    pub swap_fidelity: f64,
    pub run_times: Vec<f64>,
}

/// Shows that interpolating between the two diagonal Hamiltonians never
/// moves amplitude between `|10⟩` and `|01⟩`.
pub fn no_go_diagonal(cfg: &NoGoConfig) -> Result<NoGoReport> {
    cfg.validate()?;
    let h = cfg.hamiltonian()?;
    let max_off_diagonal = (0..=100)
        .map(|k| h.evaluate(k as f64 / 100.0).map(|m| m.max_off_diagonal()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let start = StateVector::basis(2, 0b10)?;
    let swapped = StateVector::basis(2, 0b01)?;
    let run_times = vec![0.5, 5.0, 50.0];
    let mut swap_fidelity = 0.0f64;
    for &t in &run_times {
        let out = propagate(&h, &start, &PropagationConfig::new(t))?;
        swap_fidelity = swap_fidelity.max(fidelity(&out, &swapped)?);
    }
    Ok(NoGoReport { config: *cfg, max_off_diagonal, swap_fidelity, run_times })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::random_state;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn projector_residual(p: &Operator, v: &StateVector) -> f64 {
        let pv = p.apply(v.amplitudes()).unwrap();
        (pv - v.amplitudes()).norm()
    }

    fn all_protocols() -> Vec<ProtocolSpec> {
        vec![
            teleportation_protocol(1.0).unwrap(),
            agt_single(&GateSpec::hadamard(1), 1.0).unwrap(),
            agt_single(&GateSpec::a(1), 1.0).unwrap(),
            agt_single(&GateSpec::b(1), 1.0).unwrap(),
            agp(&GateSpec::a(1), 1.0).unwrap(),
            agp(&GateSpec::b(1), 1.0).unwrap(),
            agt_two_qubit(1.0).unwrap(),
            isotropic_teleportation(1.0).unwrap(),
        ]
    }

    #[test]
    fn teleport_terms() {
        let p = teleportation_protocol(2.0).unwrap();
        assert_eq!(p.hamiltonian.h_initial(), &PauliSum::from_labels(3, &[("IXX", -2.0), ("IZZ", -2.0)]).unwrap());
        assert_eq!(p.hamiltonian.h_final(), &PauliSum::from_labels(3, &[("XXI", -2.0), ("ZZI", -2.0)]).unwrap());
        assert!(teleportation_protocol(0.0).is_err());
        assert!(teleportation_protocol(-1.0).is_err());
    }

    #[test]
    fn teleport_initial_state_is_input_times_bell() {
        let p = teleportation_protocol(1.0).unwrap();
        let psi = StateVector::qubit(c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        let got = p.initial_state(&psi).unwrap();
        assert!((got.amplitudes() - psi.kron(&StateVector::bell()).amplitudes()).norm() < 1e-12);
        let target = p.target_state(&psi).unwrap();
        assert!((target.amplitudes() - StateVector::bell().kron(&psi).amplitudes()).norm() < 1e-12);
    }

    #[test]
    fn input_data_qubit_untouched_by_initial_terms() {
        for p in [teleportation_protocol(1.0).unwrap(), isotropic_teleportation(1.0).unwrap()] {
            for t in p.hamiltonian.h_initial().terms() {
                assert!(!t.support().contains(&1));
            }
        }
    }

    #[test]
    fn templates_lie_in_final_ground_space() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in all_protocols() {
            let (pf, _) = p.final_projector().unwrap();
            let (pi, _) = p.initial_projector().unwrap();
            let psi = random_state(p.logical_qubits(), &mut rng);
            assert!(projector_residual(&pf, &p.target_state(&psi).unwrap()) < 1e-10, "{}", p.name);
            assert!(projector_residual(&pi, &p.initial_state(&psi).unwrap()) < 1e-10, "{}", p.name);
        }
    }

    #[test]
    fn hadamard_agt_initial_terms() {
        let p = agt_single(&GateSpec::hadamard(1), 1.0).unwrap();
        let want = PauliSum::from_labels(3, &[("IXZ", -1.0), ("IZX", -1.0)]).unwrap();
        assert!(p.hamiltonian.h_initial().approx_eq(&want, 1e-12));
    }

    #[test]
    fn identity_agt_is_teleportation() {
        let p = agt_single(&GateSpec::identity(1), 1.0).unwrap();
        let t = teleportation_protocol(1.0).unwrap();
        assert_eq!(p.hamiltonian, t.hamiltonian);
        assert_eq!(p.name, "teleport");
    }

    #[test]
    fn agt_rejects_two_qubit_gate() {
        assert!(matches!(agt_single(&GateSpec::cz(1, 2).unwrap(), 1.0), Err(Error::UnsupportedGate { .. })));
    }

    #[test]
    fn agt_gap_profiles_match_teleportation() {
        let opts = GapOptions { grid_points: 101, ..GapOptions::default() };
        let base = teleportation_protocol(1.0).unwrap().gap_profile(opts).unwrap();
        for g in [GateSpec::hadamard(1), GateSpec::a(1), GateSpec::b(1)] {
            let p = agt_single(&g, 1.0).unwrap().gap_profile(opts).unwrap();
            for (a, b) in base.samples.iter().zip(&p.samples) {
                assert!((a.gap - b.gap).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn conjugated_family_is_isospectral_pointwise() {
        // Conjugating the whole interpolation (both endpoints) by a gate on
        // qubit 2 leaves every sample of the gap unchanged.
        let opts = GapOptions::default();
        let t = teleportation_protocol(1.0).unwrap();
        let base = t.gap_profile(opts).unwrap();
        for g in [GateSpec::hadamard(2), GateSpec::a(2), GateSpec::b(2)] {
            let h = t.hamiltonian.conjugated(&g).unwrap();
            let p = crate::spectral::gap_profile_with(&h, opts).unwrap();
            for (a, b) in base.samples.iter().zip(&p.samples) {
                assert!((a.gap - b.gap).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn agp_rejects_other_gates() {
        let err = agp(&GateSpec::pauli_x(1), 1.0).unwrap_err();
        match err {
            Error::UnsupportedGate { gate, reason } => {
                assert_eq!(gate, "X");
                assert!(reason.contains("X"));
            }
            other => panic!("{other:?}"),
        }
        assert!(agp(&GateSpec::hadamard(1), 1.0).is_err());
    }

    #[test]
    fn agp_gaps() {
        let a = agp(&GateSpec::a(1), 1.0).unwrap().gap_profile(GapOptions::default()).unwrap();
        let b = agp(&GateSpec::b(1), 1.0).unwrap().gap_profile(GapOptions::default()).unwrap();
        assert!((a.min_gap() - 2f64.sqrt()).abs() < 1e-6);
        assert!((b.min_gap() - (2.0 + 2f64.sqrt()).sqrt()).abs() < 1e-6);
        assert!((a.min_s() - 0.5).abs() < 1e-3 && (b.min_s() - 0.5).abs() < 1e-3);
    }

    #[test]
    fn two_qubit_initial_degeneracy() {
        let p = agt_two_qubit(1.0).unwrap();
        assert_eq!(p.initial_projector().unwrap().1, 4);
        assert_eq!(p.final_projector().unwrap().1, 4);
        assert_eq!(p.hamiltonian.h_initial().max_weight(), 3);
    }

    #[test]
    fn two_qubit_zero_input_reduces_to_two_teleports() {
        let p = agt_two_qubit(1.0).unwrap();
        let zz = StateVector::basis(2, 0).unwrap();
        let target = p.target_state(&zz).unwrap();
        let bell = StateVector::bell();
        let zero = StateVector::basis(1, 0).unwrap();
        let want = StateVector::place(6, &[(&[1, 2], &bell), (&[3], &zero), (&[4, 5], &bell), (&[6], &zero)]).unwrap();
        assert!(fidelity(&target, &want).unwrap() > 1.0 - 1e-12);
    }

    #[test]
    fn isotropic_gap_and_degeneracy() {
        let prof = isotropic_teleportation(1.0).unwrap().gap_profile(GapOptions::default()).unwrap();
        assert!((prof.min_gap() - 2.0).abs() < 1e-6);
        assert!((prof.min_s() - 0.5).abs() < 1e-3);
        assert!(prof.constant_degeneracy(2));
        assert!(isotropic_teleportation(-1.0).is_err());
    }

    #[test]
    fn isotropic_template_is_singlet_times_input() {
        // The final ground doublet is the -1 eigenspace of Z̄2 = ZZI and X̄3 = XXI.
        let p = isotropic_teleportation(1.0).unwrap();
        let psi = StateVector::qubit(c(0.3, 0.4), c(0.5, -0.2)).unwrap();
        let t = p.target_state(&psi).unwrap();
        for label in ["ZZI", "XXI"] {
            let op = PauliTerm::parse(label, 1.0).unwrap().realize();
            let ev = t.inner(&t.apply(&op).unwrap()).unwrap().re;
            assert!((ev + 1.0).abs() < 1e-12, "{label} {ev}");
        }
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let singlet = StateVector::new(vec![c(0., 0.), c(h, 0.), c(-h, 0.), c(0., 0.)]).unwrap();
        assert!(fidelity(&t, &singlet.kron(&psi)).unwrap() > 1.0 - 1e-12);
    }

    #[test]
    fn frame_checks_pass() {
        let r = logical_frame_check().unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        assert_eq!(r.items.len(), 8);
    }

    #[test]
    fn corrupted_frame_fails() {
        let mut f = LogicalFrame::standard();
        f.x[1] = PauliTerm::parse("IXZ", 1.0).unwrap();
        let r = logical_frame_check_with(&f, 1.0, 11).unwrap();
        assert!(!r.passed());
        assert!(r.failures().iter().any(|n| n.contains("XII")));
    }

    #[test]
    fn no_go_is_diagonal() {
        let r = no_go_diagonal(&NoGoConfig::default()).unwrap();
        assert!(r.max_off_diagonal <= 1e-14);
        assert!(r.swap_fidelity <= 1e-14);
        let cfg = NoGoConfig { delta: [0.3, 1.7, 0.9], gamma: [0.2, 5.0, 0.4], schedule: Schedule::Smoothstep };
        let r = no_go_diagonal(&cfg).unwrap();
        assert!(r.max_off_diagonal <= 1e-14 && r.swap_fidelity <= 1e-14);
    }

    #[test]
    fn no_go_rejects_bad_config() {
        let bad = NoGoConfig { delta: [2.0, 1.0, 3.0], ..NoGoConfig::default() };
        assert!(no_go_diagonal(&bad).is_err());
        let neg = NoGoConfig { gamma: [-1.0, 2.0, 3.0], ..NoGoConfig::default() };
        assert!(no_go_diagonal(&neg).is_err());
    }

    #[test]
    fn teleport_midpoint_is_not_diagonal() {
        let h = teleportation_protocol(1.0).unwrap().hamiltonian.evaluate(0.5).unwrap();
        assert!(h.max_off_diagonal() >= 0.5 - 1e-12);
    }

    #[test]
    fn protocol_json_has_terms() {
        let j = serde_json::to_string(&agt_two_qubit(1.0).unwrap()).unwrap();
        assert!(j.contains("IXXIIZ"));
        assert!(j.contains("most significant bit"));
        let back: ProtocolSpec = serde_json::from_str(&j).unwrap();
        assert_eq!(back.output_qubits, vec![3, 6]);
    }
}
