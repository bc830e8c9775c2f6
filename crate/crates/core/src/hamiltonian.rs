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

//! Interpolated Hamiltonians `H(s) = f(s) H_i + g(s) H_f + H_static`, the
//! gate set used to rotate them, and the two-qubit coupling constructors.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, SQRT_2};
use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{domain, structural, Error, Result};
use crate::operator::{embed_gate, Operator, C64};
use crate::pauli::{Pauli, PauliSum, PauliTerm, PROJECTION_TOL};

/// Envelope pair `(f, g)` on `s ∈ [0, 1]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Schedule {
    /// `f = 1 - s`, `g = s`.
    #[default]
    Linear,
    /// `g = s²(3 - 2s)`, `f = 1 - g`; continuously differentiable with zero
    /// slope at both ends.
    Smoothstep,
}

impl Schedule {
    pub fn f(self, s: f64) -> f64 {
        1.0 - self.g(s)
    }

    pub fn g(self, s: f64) -> f64 {
        match self {
            Schedule::Linear => s,
            Schedule::Smoothstep => s * s * (3.0 - 2.0 * s),
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Schedule::Linear => "linear",
            Schedule::Smoothstep => "smoothstep",
        }
    }

    pub fn from_tag(tag: &str) -> Result<Self> {
        match tag {
            "linear" => Ok(Schedule::Linear),
            "smoothstep" => Ok(Schedule::Smoothstep),
            other => Err(domain(format!("unknown schedule {other:?}"))),
        }
    }

    /// Endpoints to `1e-12` and monotonicity on a `1e-3` grid.
    pub fn validate(self) -> Result<()> {
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-12;
        if !(close(self.f(0.0), 1.0) && close(self.f(1.0), 0.0)) {
            return Err(domain(format!("{} schedule: f endpoints wrong", self.tag())));
        }
        if !(close(self.g(0.0), 0.0) && close(self.g(1.0), 1.0)) {
            return Err(domain(format!("{} schedule: g endpoints wrong", self.tag())));
        }
        let mut prev = (self.f(0.0), self.g(0.0));
        for k in 1..=1000 {
            let s = k as f64 * 1e-3;
            let cur = (self.f(s), self.g(s));
            if cur.0 > prev.0 + 1e-15 || cur.1 < prev.1 - 1e-15 {
                return Err(domain(format!("{} schedule not monotone near s={s}", self.tag())));
            }
            prev = cur;
        }
        Ok(())
    }
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Pair of endpoint Hamiltonians, a schedule, and terms that stay on for the
/// whole sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "HamiltonianFile", into = "HamiltonianFile")]
pub struct TimeDependentHamiltonian {
    h_initial: PauliSum,
    h_final: PauliSum,
    static_terms: PauliSum,
    schedule: Schedule,
}

/// On-disk form: qubit count, schedule tag and `(label, coefficient)` term
/// lists.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HamiltonianFile {
    pub n_qubits: usize,
    #[serde(default)]
    pub schedule: Schedule,
    pub h_initial: Vec<PauliTerm>,
    pub h_final: Vec<PauliTerm>,
    #[serde(default)]
    pub static_terms: Vec<PauliTerm>,
}

impl TryFrom<HamiltonianFile> for TimeDependentHamiltonian {
    type Error = Error;

    fn try_from(f: HamiltonianFile) -> Result<Self> {
        TimeDependentHamiltonian::with_static(
            PauliSum::new(f.n_qubits, f.h_initial)?,
            PauliSum::new(f.n_qubits, f.h_final)?,
            PauliSum::new(f.n_qubits, f.static_terms)?,
            f.schedule,
        )
    }
}

impl From<TimeDependentHamiltonian> for HamiltonianFile {
    fn from(h: TimeDependentHamiltonian) -> Self {
        HamiltonianFile {
            n_qubits: h.n_qubits(),
            schedule: h.schedule,
            h_initial: h.h_initial.terms().to_vec(),
            h_final: h.h_final.terms().to_vec(),
            static_terms: h.static_terms.terms().to_vec(),
        }
    }
}

impl TimeDependentHamiltonian {
    /// Linear interpolation with no static terms.
    pub fn linear(h_initial: PauliSum, h_final: PauliSum) -> Result<Self> {
        let n = h_initial.n_qubits();
        Self::with_static(h_initial, h_final, PauliSum::empty(n), Schedule::Linear)
    }

    pub fn with_static(
        h_initial: PauliSum,
        h_final: PauliSum,
        static_terms: PauliSum,
        schedule: Schedule,
    ) -> Result<Self> {
        let n = h_initial.n_qubits();
        if h_final.n_qubits() != n || static_terms.n_qubits() != n {
            return Err(structural(format!(
                "endpoint qubit counts differ: initial {n}, final {}, static {}",
                h_final.n_qubits(),
                static_terms.n_qubits()
            )));
        }
        if h_initial.is_empty() && h_final.is_empty() && static_terms.is_empty() {
            return Err(structural("time-dependent Hamiltonian has no terms"));
        }
        Ok(TimeDependentHamiltonian { h_initial, h_final, static_terms, schedule })
    }

    pub fn with_schedule(mut self, schedule: Schedule) -> Self {
        self.schedule = schedule;
        self
    }

    pub fn n_qubits(&self) -> usize {
        self.h_initial.n_qubits()
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits()
    }

    pub fn h_initial(&self) -> &PauliSum {
        &self.h_initial
    }

    pub fn h_final(&self) -> &PauliSum {
        &self.h_final
    }

    pub fn static_terms(&self) -> &PauliSum {
        &self.static_terms
    }

    pub fn schedule(&self) -> Schedule {
        self.schedule
    }

    /// `fv · H_i + gv · H_f + H_static` as a Pauli sum.
    pub fn combine(&self, fv: f64, gv: f64) -> PauliSum {
        self.h_initial
            .scaled(fv)
            .plus(&self.h_final.scaled(gv))
            .and_then(|p| p.plus(&self.static_terms))
            .expect("qubit counts checked at construction")
    }

    /// `H(s)` as a Pauli sum.
    pub fn sum_at(&self, s: f64) -> Result<PauliSum> {
        check_s(s)?;
        Ok(self.combine(self.schedule.f(s), self.schedule.g(s)))
    }

    /// Dense `H(s)`.
    pub fn evaluate(&self, s: f64) -> Result<Operator> {
        Ok(self.sum_at(s)?.realize_or_zero())
    }

    /// Full Hamiltonian at `s = 0`.
    pub fn start(&self) -> PauliSum {
        self.combine(1.0, 0.0)
    }

    /// Full Hamiltonian at `s = 1`.
    pub fn end(&self) -> PauliSum {
        self.combine(0.0, 1.0)
    }

    /// Conjugates both endpoints and the static part by `gate`.
    pub fn conjugated(&self, gate: &GateSpec) -> Result<Self> {
        Ok(TimeDependentHamiltonian {
            h_initial: conjugate_or_empty(&self.h_initial, gate)?,
            h_final: conjugate_or_empty(&self.h_final, gate)?,
            static_terms: conjugate_or_empty(&self.static_terms, gate)?,
            schedule: self.schedule,
        })
    }
}

fn conjugate_or_empty(h: &PauliSum, gate: &GateSpec) -> Result<PauliSum> {
    if h.is_empty() {
        Ok(h.clone())
    } else {
        conjugate(h, gate)
    }
}

pub(crate) fn check_s(s: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&s) {
        return Err(domain(format!("s = {s} outside [0, 1]")));
    }
    Ok(())
}

/// Names of the gates the crate knows about.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateName {
    I,
    H,
    A,
    B,
    #[serde(rename = "B†")]
    BDagger,
    #[serde(rename = "A†")]
    ADagger,
    CZ,
    Custom(String),
}

impl fmt::Display for GateName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateName::I => f.write_str("I"),
            GateName::H => f.write_str("H"),
            GateName::A => f.write_str("A"),
            GateName::B => f.write_str("B"),
            GateName::BDagger => f.write_str("B†"),
            GateName::ADagger => f.write_str("A†"),
            GateName::CZ => f.write_str("CZ"),
            GateName::Custom(s) => f.write_str(s),
        }
    }
}

/// A named one- or two-qubit unitary placed on specific (1-based) qubits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GateRepr", into = "GateRepr")]
pub struct GateSpec {
    name: GateName,
    matrix: DMatrix<C64>,
    targets: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct GateRepr {
    name: GateName,
    targets: Vec<usize>,
    /// Row-major `[re, im]` pairs.
    matrix: Vec<Vec<[f64; 2]>>,
}

impl TryFrom<GateRepr> for GateSpec {
    type Error = Error;

    fn try_from(r: GateRepr) -> Result<Self> {
        let d = r.matrix.len();
        if r.matrix.iter().any(|row| row.len() != d) {
            return Err(structural("gate matrix must be square"));
        }
        let m = DMatrix::from_fn(d, d, |i, j| C64::new(r.matrix[i][j][0], r.matrix[i][j][1]));
        GateSpec::new(r.name, m, r.targets)
    }
}

impl From<GateSpec> for GateRepr {
    fn from(g: GateSpec) -> Self {
        let d = g.matrix.nrows();
        let matrix = (0..d)
            .map(|i| (0..d).map(|j| [g.matrix[(i, j)].re, g.matrix[(i, j)].im]).collect())
            .collect();
        GateRepr { name: g.name, targets: g.targets, matrix }
    }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

impl GateSpec {
    /// Checks shape against `targets` and unitarity to `1e-12`.
    pub fn new(name: GateName, matrix: DMatrix<C64>, targets: Vec<usize>) -> Result<Self> {
        let k = targets.len();
        if !(1..=2).contains(&k) {
            return Err(structural(format!("gate {name} must act on 1 or 2 qubits")));
        }
        if matrix.nrows() != 1 << k || matrix.ncols() != 1 << k {
            return Err(structural(format!(
                "gate {name} has a {}x{} matrix but {k} target(s)",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if targets.contains(&0) || (k == 2 && targets[0] == targets[1]) {
            return Err(Error::Index(format!("gate {name} has invalid targets {targets:?}")));
        }
        let defect = Operator::new(matrix.clone())?.unitarity_defect();
        if defect > 1e-12 {
            return Err(domain(format!("gate {name} is not unitary (defect {defect:.3e})")));
        }
        Ok(GateSpec { name, matrix, targets })
    }

    pub fn identity(q: usize) -> Self {
        Self::known(GateName::I, DMatrix::identity(2, 2), vec![q])
    }

    pub fn hadamard(q: usize) -> Self {
        let h = FRAC_1_SQRT_2;
        Self::known(GateName::H, DMatrix::from_row_slice(2, 2, &[c(h, 0.), c(h, 0.), c(h, 0.), c(-h, 0.)]), vec![q])
    }

    /// `A = ½ [[1 + i√2, 1], [1, -1 + i√2]]`, a square root of Hadamard up
    /// to phase.
    pub fn a(q: usize) -> Self {
        Self::known(GateName::A, a_matrix(), vec![q])
    }

    pub fn a_dagger(q: usize) -> Self {
        Self::known(GateName::ADagger, a_matrix().adjoint(), vec![q])
    }

    /// `B = diag(1, e^{iπ/4})`.
    pub fn b(q: usize) -> Self {
        Self::known(GateName::B, b_matrix(), vec![q])
    }

    pub fn b_dagger(q: usize) -> Self {
        Self::known(GateName::BDagger, b_matrix().adjoint(), vec![q])
    }

    /// Controlled phase `diag(1, 1, 1, -1)` on two qubits.
    pub fn cz(q1: usize, q2: usize) -> Result<Self> {
        let mut m = DMatrix::identity(4, 4);
        m[(3, 3)] = c(-1.0, 0.0);
        GateSpec::new(GateName::CZ, m, vec![q1, q2])
    }

    /// Unnamed single-qubit unitary.
    pub fn custom(name: &str, matrix: DMatrix<C64>, targets: Vec<usize>) -> Result<Self> {
        GateSpec::new(GateName::Custom(name.to_string()), matrix, targets)
    }

    /// Pauli X as a custom gate (not in the AGP gate set).
    pub fn pauli_x(q: usize) -> Self {
        Self::known(GateName::Custom("X".into()), Pauli::X.matrix(), vec![q])
    }

    /// Single-qubit gate by name: `I`, `H`, `A`, `B`, `A†`/`Ad`, `B†`/`Bd`, `X`.
    pub fn single_by_name(name: &str, q: usize) -> Result<Self> {
        match name {
            "I" => Ok(Self::identity(q)),
            "H" => Ok(Self::hadamard(q)),
            "A" => Ok(Self::a(q)),
            "B" => Ok(Self::b(q)),
            "A†" | "Ad" | "Adg" => Ok(Self::a_dagger(q)),
            "B†" | "Bd" | "Bdg" => Ok(Self::b_dagger(q)),
            "X" => Ok(Self::pauli_x(q)),
            other => Err(Error::UnsupportedGate {
                gate: other.to_string(),
                reason: "unknown single-qubit gate name".into(),
            }),
        }
    }

    fn known(name: GateName, matrix: DMatrix<C64>, targets: Vec<usize>) -> Self {
        GateSpec { name, matrix, targets }
    }

    pub fn name(&self) -> &GateName {
        &self.name
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn arity(&self) -> usize {
        self.targets.len()
    }

    /// Same gate on different qubits.
    pub fn on(&self, targets: Vec<usize>) -> Result<Self> {
        GateSpec::new(self.name.clone(), self.matrix.clone(), targets)
    }

    pub fn is_identity(&self) -> bool {
        let d = self.matrix.nrows();
        (0..d).all(|i| {
            (0..d).all(|j| {
                let want = if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
                (self.matrix[(i, j)] - want).norm() < 1e-15
            })
        })
    }

    /// Full-register unitary.
    pub fn embed(&self, n_qubits: usize) -> Result<Operator> {
        embed_gate(&self.matrix, &self.targets, n_qubits)
    }
}

fn a_matrix() -> DMatrix<C64> {
    DMatrix::from_row_slice(
        2,
        2,
        &[c(0.5, SQRT_2 / 2.0), c(0.5, 0.0), c(0.5, 0.0), c(-0.5, SQRT_2 / 2.0)],
    )
}

fn b_matrix() -> DMatrix<C64> {
    DMatrix::from_row_slice(
        2,
        2,
        &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), C64::from_polar(1.0, FRAC_PI_4)],
    )
}

fn check_pair(n_qubits: usize, a: usize, b: usize) -> Result<()> {
    if a == b {
        return Err(Error::Index(format!("pair coupling needs two distinct qubits, got {a} twice")));
    }
    for q in [a, b] {
        if q == 0 || q > n_qubits {
            return Err(Error::Index(format!("qubit {q} outside 1..={n_qubits}")));
        }
    }
    Ok(())
}

/// Sum of `coefficient · P_a P_b` over the given letters.
pub fn pair_coupling(
    n_qubits: usize,
    a: usize,
    b: usize,
    coefficient: f64,
    letters: &[Pauli],
) -> Result<PauliSum> {
    check_pair(n_qubits, a, b)?;
    let terms = letters
        .iter()
        .map(|&p| PauliTerm::on_sites(n_qubits, &[(a, p), (b, p)], coefficient))
        .collect::<Result<Vec<_>>>()?;
    PauliSum::new(n_qubits, terms)
}

/// `-ω (X_a X_b + Z_a Z_b)`.
pub fn standard_pair(n_qubits: usize, a: usize, b: usize, omega: f64) -> Result<PauliSum> {
    pair_coupling(n_qubits, a, b, -omega, &[Pauli::X, Pauli::Z])
}

/// `+ω (X_a X_b + Y_a Y_b + Z_a Z_b)`; antiferromagnetic for `ω > 0`.
pub fn isotropic_pair(n_qubits: usize, a: usize, b: usize, omega: f64) -> Result<PauliSum> {
    pair_coupling(n_qubits, a, b, omega, &[Pauli::X, Pauli::Y, Pauli::Z])
}

/// `U H U^†` re-expanded in the Pauli basis. Coefficients below
/// [`PROJECTION_TOL`] are dropped; terms come out sorted by label.
pub fn conjugate(h: &PauliSum, gate: &GateSpec) -> Result<PauliSum> {
    let n = h.n_qubits();
    if let Some(&t) = gate.targets().iter().find(|&&t| t > n) {
        return Err(Error::Index(format!("gate target {t} outside the {n}-qubit register")));
    }
    // Each term splits into a factor on the targets, which is rotated and
    // re-expanded on k qubits, times an untouched remainder.
    let targets = gate.targets();
    let k = targets.len();
    let local_gate = gate.on((1..=k).collect())?.embed(k)?;
    let mut out: Vec<PauliTerm> = Vec::with_capacity(h.len());
    for term in h.terms() {
        let letters = term.letters();
        let local: Vec<Pauli> = targets.iter().map(|&t| letters[t - 1]).collect();
        if local.iter().all(|&p| p == Pauli::I) {
            out.push(term.clone());
            continue;
        }
        let m = PauliTerm::new(local, 1.0)?.realize().conjugated_by(&local_gate)?;
        for rotated in PauliSum::from_operator(&m, PROJECTION_TOL)?.terms() {
            let mut full = letters.to_vec();
            for (j, &t) in targets.iter().enumerate() {
                full[t - 1] = rotated.letters()[j];
            }
            out.push(PauliTerm::new(full, term.coefficient() * rotated.coefficient())?);
        }
    }
    Ok(PauliSum::new(n, out)?.simplified(PROJECTION_TOL))
}
