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

//! Two-body gadget for the controlled-phase step.
//!
//! Each logical qubit of the six-qubit controlled-phase protocol gets an
//! ancilla, so a side has qubits 1–4 and the three-body cross terms become a
//! single `X₄ᴸZ₄ᴿ` coupling. Qubits 3 and 4 stay bound into the `{|00⟩, |11⟩}`
//! code space by an always-on `-ω Z₃Z₄`. Physical numbering puts the left
//! side on qubits 1–4 and the right side on 5–8.

use std::io::Write;
use std::time::Instant;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::dynamics::{fidelity, leakage, propagate, Method, PropagationConfig, RunReport, StateVector, default_steps};
use crate::error::{domain, Error, Result};
use crate::hamiltonian::{conjugate, GateName, GateSpec, Schedule, TimeDependentHamiltonian};
use crate::operator::{Operator, C64};
use crate::pauli::{Pauli, PauliSum, PauliTerm};
use crate::protocols::{prepare_in_ground_space, CheckReport, CheckItem};
use crate::spectral::{eigenvalues, gap_profile_with, ground_projector, spectrum, GapOptions, DEFAULT_DEGENERACY_TOL};

/// Number of physical qubits in the two-sided gadget.
pub const GADGET_QUBITS: usize = 8;

/// Largest weak/strong coupling ratio the gap bound covers.
pub const MAX_RATIO: f64 = 0.5;

/// Strong (`ω`) and weak (`λ`) coupling energies.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CouplingConfig {
    pub omega: f64,
    pub lambda: f64,
}

impl CouplingConfig {
    pub fn new(omega: f64, lambda: f64) -> Result<Self> {
        let cfg = CouplingConfig { omega, lambda };
        cfg.validate()?;
        Ok(cfg)
    }

    /// `ω = 1`, `λ = r`.
    pub fn from_ratio(r: f64) -> Result<Self> {
        Self::new(1.0, r)
    }

    pub fn ratio(&self) -> f64 {
        self.lambda / self.omega
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega > 0.0 && self.omega.is_finite()) {
            return Err(domain(format!("strong coupling ω must be positive, got {}", self.omega)));
        }
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return Err(domain(format!("weak coupling λ must be positive, got {}", self.lambda)));
        }
        check_ratio(self.ratio())
    }

    /// `T = 200 / (ω r²)`, the run time used for end-to-end checks.
    pub fn reference_time(&self) -> f64 {
        200.0 / (self.omega * self.ratio().powi(2))
    }
}

fn check_ratio(r: f64) -> Result<()> {
    if !(r > 0.0 && r < MAX_RATIO) {
        return Err(domain(format!(
            "coupling ratio λ/ω = {r} outside (0, {MAX_RATIO}); the gap bound only holds there"
        )));
    }
    Ok(())
}

/// Which physical ancilla stands for the encoded `Z` of qubit 3.
/// Both act identically on the code space.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EncodedZ {
    #[default]
    Fourth,
    Third,
}

/// Side of the gadget.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    L,
    R,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::L => Side::R,
            Side::R => Side::L,
        }
    }

    /// Physical index of `site ∈ 1..=4` on this side.
    pub fn qubit(self, site: usize) -> usize {
        match self {
            Side::L => site,
            Side::R => site + 4,
        }
    }
}

/// Physical Hamiltonians and encoded operators of the gadget.
#[derive(Clone, Debug, Serialize)]
pub struct GadgetSystem {
    pub coupling: CouplingConfig,
    pub encoded_z: EncodedZ,
    /// `-λ(X₂X₃ + X₄ᴸZ₄ᴿ + Z₂Z₃)` per side.
    pub h_initial: PauliSum,
    /// `-λ(X₁X₂ + Z₁Z₂)` per side.
    pub h_final: PauliSum,
    /// `-ω Z₃Z₄` per side, on for the whole run.
    pub static_terms: PauliSum,
    /// Encoded `X̄₃` per side, `[L, R]`.
    pub encoded_x: [PauliTerm; 2],
    /// Encoded `Z̄₃` per side, `[L, R]`.
    pub encoded_z_ops: [PauliTerm; 2],
}

fn term(sites: &[(Side, usize, Pauli)], c: f64) -> Result<PauliTerm> {
    let placed: Vec<(usize, Pauli)> = sites.iter().map(|&(side, q, p)| (side.qubit(q), p)).collect();
    PauliTerm::on_sites(GADGET_QUBITS, &placed, c)
}

/// Builds the eight-qubit gadget with `Z̄₃ = Z₄`.
pub fn gadget_hamiltonians(cfg: CouplingConfig) -> Result<GadgetSystem> {
    gadget_hamiltonians_with(cfg, EncodedZ::Fourth)
}

pub fn gadget_hamiltonians_with(cfg: CouplingConfig, encoded_z: EncodedZ) -> Result<GadgetSystem> {
    use Pauli::{X, Z};
    cfg.validate()?;
    let (lam, om) = (cfg.lambda, cfg.omega);
    let mut hi = Vec::new();
    let mut hf = Vec::new();
    let mut st = Vec::new();
    for side in [Side::L, Side::R] {
        let o = side.other();
        hi.push(term(&[(side, 2, X), (side, 3, X)], -lam)?);
        hi.push(term(&[(side, 4, X), (o, 4, Z)], -lam)?);
        hi.push(term(&[(side, 2, Z), (side, 3, Z)], -lam)?);
        hf.push(term(&[(side, 1, X), (side, 2, X)], -lam)?);
        hf.push(term(&[(side, 1, Z), (side, 2, Z)], -lam)?);
        st.push(term(&[(side, 3, Z), (side, 4, Z)], -om)?);
    }
    let zsite = match encoded_z {
        EncodedZ::Fourth => 4,
        EncodedZ::Third => 3,
    };
    Ok(GadgetSystem {
        coupling: cfg,
        encoded_z,
        h_initial: PauliSum::new(GADGET_QUBITS, hi)?,
        h_final: PauliSum::new(GADGET_QUBITS, hf)?,
        static_terms: PauliSum::new(GADGET_QUBITS, st)?,
        encoded_x: [
            term(&[(Side::L, 3, X), (Side::L, 4, X)], 1.0)?,
            term(&[(Side::R, 3, X), (Side::R, 4, X)], 1.0)?,
        ],
        encoded_z_ops: [term(&[(Side::L, zsite, Z)], 1.0)?, term(&[(Side::R, zsite, Z)], 1.0)?],
    })
}

impl GadgetSystem {
    /// Initial Hamiltonian with the strong couplings included, as displayed:
    /// six weak terms and two strong ones.
    pub fn full_initial(&self) -> PauliSum {
        self.h_initial.plus(&self.static_terms).expect("same register")
    }

    pub fn full_final(&self) -> PauliSum {
        self.h_final.plus(&self.static_terms).expect("same register")
    }

    pub fn hamiltonian(&self) -> Result<TimeDependentHamiltonian> {
        TimeDependentHamiltonian::with_static(
            self.h_initial.clone(),
            self.h_final.clone(),
            self.static_terms.clone(),
            Schedule::Linear,
        )
    }

    /// The four-body encoded Hamiltonian the gadget approximates:
    /// `-λ(X₂ X̄₃ᴸ Z̄₃ᴿ + Z₂Z₃) - ω Z₃Z₄` per side. Only the cross term
    /// depends on the choice of encoded `Z`.
    pub fn target_hamiltonian(&self) -> Result<PauliSum> {
        let mut terms = Vec::new();
        for (i, side) in [Side::L, Side::R].into_iter().enumerate() {
            let j = 1 - i;
            let x2 = PauliTerm::on_sites(GADGET_QUBITS, &[(side.qubit(2), Pauli::X)], 1.0)?;
            let z2 = PauliTerm::on_sites(GADGET_QUBITS, &[(side.qubit(2), Pauli::Z)], 1.0)?;
            let (_, a) = x2.multiply(&self.encoded_x[i])?;
            let (_, a) = a.multiply(&self.encoded_z_ops[j])?;
            let z3 = PauliTerm::on_sites(GADGET_QUBITS, &[(side.qubit(3), Pauli::Z)], 1.0)?;
            let (_, b) = z2.multiply(&z3)?;
            terms.push(a.with_coefficient(-self.coupling.lambda));
            terms.push(b.with_coefficient(-self.coupling.lambda));
        }
        PauliSum::new(GADGET_QUBITS, terms)?.plus(&self.static_terms)
    }

    /// Every term of both endpoints and the static part, checked for
    /// two-body locality and the static terms for placement on (3,4).
    pub fn locality_check(&self) -> CheckReport {
        let worst = self.full_initial().plus(&self.h_final).map(|p| p.max_weight()).unwrap_or(usize::MAX);
        let static_ok = self.static_terms.terms().iter().all(|t| {
            let s = t.support();
            s == vec![3, 4] || s == vec![7, 8]
        });
        CheckReport {
            items: vec![
                CheckItem { name: "every term acts on at most two qubits".into(), passed: worst <= 2, residual: worst as f64 },
                CheckItem {
                    name: "strong terms act on (3,4) of each side".into(),
                    passed: static_ok,
                    residual: if static_ok { 0.0 } else { 1.0 },
                },
            ],
        }
    }

    /// Undoing the controlled-phase between the two ancillas leaves no term
    /// touching both sides.
    pub fn decoupling_check(&self) -> Result<(PauliSum, bool)> {
        let cz = GateSpec::cz(Side::L.qubit(4), Side::R.qubit(4))?;
        let h = conjugate(&self.full_initial(), &cz)?;
        let split = h.terms().iter().all(|t| {
            let s = t.support();
            s.iter().all(|&q| q <= 4) || s.iter().all(|&q| q > 4)
        });
        Ok((h, split))
    }

    /// `U = CNOT(3→2)ᴸ · CNOT(3→2)ᴿ · CZ(4ᴸ,4ᴿ)`, the basis change in which
    /// each side decouples and qubit 2 separates from the ancilla pair.
    pub fn analysis_basis(&self) -> Result<Operator> {
        let cz = GateSpec::cz(Side::L.qubit(4), Side::R.qubit(4))?.embed(GADGET_QUBITS)?;
        let mut u = cz;
        for side in [Side::L, Side::R] {
            let cnot = cnot(side.qubit(3), side.qubit(2))?.embed(GADGET_QUBITS)?;
            u = &cnot * &u;
        }
        Ok(u)
    }

    /// In the analysis basis `Z₁Z₂` and `X₁X₃X₄` of each side commute with
    /// both endpoints. Residuals are the largest commutator entries.
    pub fn conserved_check(&self) -> Result<CheckReport> {
        const TOL: f64 = 1e-12;
        let u = self.analysis_basis()?;
        let hi = self.full_initial().realize()?.conjugated_by(&u)?;
        let hf = self.full_final().realize()?.conjugated_by(&u)?;
        let mut items = Vec::new();
        for side in [Side::L, Side::R] {
            let ops = [
                ("Z1Z2", term(&[(side, 1, Pauli::Z), (side, 2, Pauli::Z)], 1.0)?),
                ("X1X3X4", term(&[(side, 1, Pauli::X), (side, 3, Pauli::X), (side, 4, Pauli::X)], 1.0)?),
            ];
            for (label, op) in ops {
                let m = op.realize();
                let r = hi.commutator(&m)?.max_abs().max(hf.commutator(&m)?.max_abs());
                items.push(CheckItem { name: format!("{label} ({side:?}) conserved"), passed: r <= TOL, residual: r });
            }
        }
        Ok(CheckReport { items })
    }
}

fn cnot(control: usize, target: usize) -> Result<GateSpec> {
    let one = C64::new(1.0, 0.0);
    let mut m = DMatrix::<C64>::zeros(4, 4);
    m[(0, 0)] = one;
    m[(1, 1)] = one;
    m[(2, 3)] = one;
    m[(3, 2)] = one;
    GateSpec::new(GateName::Custom("CNOT".into()), m, vec![control, target])
}

/// Overlap of the dressed ancilla ground state with `|Φ⟩`:
/// `α(r) = (1/2 + 1/(2√(4r²+1)))^{1/2}`.
pub fn gadget_alpha(r: f64) -> Result<f64> {
    if !(0.0..MAX_RATIO).contains(&r) {
        return Err(domain(format!("ratio {r} outside [0, {MAX_RATIO})")));
    }
    Ok((0.5 + 0.5 / (4.0 * r * r + 1.0).sqrt()).sqrt())
}

/// `|⟨Φ|g⟩|` with `g` the ground state of `-r(X₃+X₄) - Z₃Z₄`, by
/// diagonalization. The Hamiltonian commutes with `X₃X₄` and `g` lies in its
/// `+1` sector; the sector is imposed explicitly so that the degenerate
/// `r → 0` limit (evaluated at `r = 1e-8`) picks the branch through `|Φ⟩`.
pub fn gadget_overlap_numeric(r: f64) -> Result<f64> {
    gadget_alpha(r)?;
    let r = r.max(1e-8);
    let h = PauliSum::from_labels(2, &[("XI", -r), ("IX", -r), ("ZZ", -1.0)])?.realize()?;
    let spec = spectrum(&h)?;
    let sector = PauliSum::from_labels(2, &[("II", 0.5), ("XX", 0.5)])?.realize()?;
    let g = spec
        .ground_vectors(1e-8)
        .into_iter()
        .map(|v| sector.apply(&v))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .expect("at least one ground vector");
    let g = StateVector::normalized(g.iter().copied().collect())?;
    Ok(StateVector::bell().inner(&g)?.norm())
}

/// `s(r) = 3s² − 4s + 2` weighting and `χ` of the closed-form gap.
fn gap_parts(s: f64, r: f64) -> (f64, f64) {
    let r2 = r * r;
    let base = 1.0 + r2 * (3.0 * s * s - 4.0 * s + 2.0);
    let chi = 2.0 * (r2 * s * s + r2 * r2 * (1.0 - s).powi(2) * (2.0 * s * s - 2.0 * s + 1.0)).sqrt();
    (base, chi)
}

fn check_s_r(s: f64, r: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::Domain(format!("s = {s} outside [0, 1]")));
    }
    check_ratio(r)
}

/// Closed-form gap (units of ω) of the ancilla-pair sweep
/// `-(1-s)[r(X₃+X₄) + Z₃Z₄] - s[rZ₃ + Z₃Z₄]`.
pub fn gadget_gap_closed(s: f64, r: f64) -> Result<f64> {
    check_s_r(s, r)?;
    let (base, chi) = gap_parts(s, r);
    Ok((base + chi).sqrt() - (base - chi).sqrt())
}

/// The same sweep as a two-qubit interpolation (ω = 1).
pub fn reduced_sweep(r: f64) -> Result<TimeDependentHamiltonian> {
    check_ratio(r)?;
    let start = PauliSum::from_labels(2, &[("XI", -r), ("IX", -r)])?;
    let end = PauliSum::from_labels(2, &[("ZI", -r)])?;
    let strong = PauliSum::from_labels(2, &[("ZZ", -1.0)])?;
    TimeDependentHamiltonian::with_static(start, end, strong, Schedule::Linear)
}

/// Difference of the two lowest eigenvalues of the reduced sweep.
pub fn gadget_gap_numeric(s: f64, r: f64) -> Result<f64> {
    check_s_r(s, r)?;
    let e = eigenvalues(&reduced_sweep(r)?.evaluate(s)?)?;
    Ok(e[1] - e[0])
}

/// `2/√(1+2r²) · √(r²s² + r⁴(1-s)³/3)`, the weakest link of the bound chain.
pub fn gadget_gap_lower_bound(s: f64, r: f64) -> Result<f64> {
    check_s_r(s, r)?;
    let r2 = r * r;
    Ok(2.0 / (1.0 + 2.0 * r2).sqrt() * (r2 * s * s + r2 * r2 * (1.0 - s).powi(3) / 3.0).sqrt())
}

/// Stationary point `(1 + r² - √(1+2r²)) / r²` of the lower bound.
pub fn gadget_critical_s(r: f64) -> Result<f64> {
    check_ratio(r)?;
    let r2 = r * r;
    Ok((1.0 + r2 - (1.0 + 2.0 * r2).sqrt()) / r2)
}

#[derive(Clone, Debug, Serialize)]
pub struct GapBoundReport {
    pub r: f64,
    pub grid_points: usize,
    /// Smallest closed-form gap on the grid and where it occurs.
    pub min_gap: f64,
    pub min_s: f64,
    /// `r²`.
    pub bound: f64,
    pub slack: f64,
    pub critical_s: f64,
    /// Lower bound evaluated at `critical_s`.
    pub bound_at_critical: f64,
    /// Smallest value of `χ / √(1 + r²(3s²-4s+2))` on the grid.
    pub min_first_bound: f64,
    /// Smallest value of the final lower bound on the grid.
    pub min_final_bound: f64,
    /// Whether `gap ≥ first ≥ final` held at every grid point.
    pub chain_ordered: bool,
    pub passed: bool,
}

/// Checks `min_s ΔE(s) ≥ r²` on a 1001-point grid and records the chain of
/// intermediate bounds.
pub fn gadget_gap_bound_check(r: f64) -> Result<GapBoundReport> {
    check_ratio(r)?;
    const POINTS: usize = 1001;
    const SLOP: f64 = 1e-12;
    let mut min_gap = (f64::INFINITY, 0.0);
    let mut min_first = f64::INFINITY;
    let mut min_final = f64::INFINITY;
    let mut ordered = true;
    for k in 0..POINTS {
        let s = k as f64 / (POINTS - 1) as f64;
        let gap = gadget_gap_closed(s, r)?;
        let (base, chi) = gap_parts(s, r);
        let first = chi / base.sqrt();
        let last = gadget_gap_lower_bound(s, r)?;
        ordered &= gap + SLOP >= first && first + SLOP >= last;
        if gap < min_gap.0 {
            min_gap = (gap, s);
        }
        min_first = min_first.min(first);
        min_final = min_final.min(last);
    }
    let crit = gadget_critical_s(r)?;
    let bound = r * r;
    Ok(GapBoundReport {
        r,
        grid_points: POINTS,
        min_gap: min_gap.0,
        min_s: min_gap.1,
        bound,
        slack: min_gap.0 - bound,
        critical_s: crit,
        bound_at_critical: gadget_gap_lower_bound(crit.clamp(0.0, 1.0), r)?,
        min_first_bound: min_first,
        min_final_bound: min_final,
        chain_ordered: ordered,
        passed: min_gap.0 >= bound,
    })
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct AlphaRow {
    pub r: f64,
    pub alpha_closed: f64,
    pub alpha_numeric: f64,
}

pub fn alpha_table(ratios: &[f64]) -> Result<Vec<AlphaRow>> {
    ratios
        .iter()
        .map(|&r| Ok(AlphaRow { r, alpha_closed: gadget_alpha(r)?, alpha_numeric: gadget_overlap_numeric(r)? }))
        .collect()
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct GapRow {
    pub s: f64,
    pub gap_closed: f64,
    pub gap_numeric: f64,
    pub bound: f64,
}

/// Closed-form and numeric gap with the final lower bound on a uniform grid.
pub fn gap_table(r: f64, grid_points: usize) -> Result<Vec<GapRow>> {
    if grid_points < 2 {
        return Err(domain("a gap table needs at least two grid points"));
    }
    (0..grid_points)
        .map(|k| {
            let s = k as f64 / (grid_points - 1) as f64;
            Ok(GapRow {
                s,
                gap_closed: gadget_gap_closed(s, r)?,
                gap_numeric: gadget_gap_numeric(s, r)?,
                bound: gadget_gap_lower_bound(s, r)?,
            })
        })
        .collect()
}

/// Writes rows with a header derived from the row type.
pub fn write_rows<W: Write, T: Serialize>(rows: &[T], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for row in rows {
        out.serialize(row)?;
    }
    out.flush()?;
    Ok(())
}

/// Repetition encoding of a two-qubit logical state onto `(3,4)` of each
/// side: `|ab⟩ ↦ |aa⟩ᴸ|bb⟩ᴿ`, returned on qubits `(3ᴸ,4ᴸ,3ᴿ,4ᴿ)`.
pub fn encode_pairs(logical: &StateVector) -> Result<StateVector> {
    if logical.n_qubits() != 2 {
        return Err(crate::error::structural("the gadget carries two logical qubits"));
    }
    let mut v = vec![C64::new(0.0, 0.0); 16];
    for (ab, amp) in logical.amplitudes().iter().enumerate() {
        let (a, b) = (ab >> 1, ab & 1);
        v[(a << 3) | (a << 2) | (b << 1) | b] = *amp;
    }
    StateVector::new(v)
}

/// Ideal end state: `|Φ⟩` on (1,2) of each side and `CZ ψ` encoded on the
/// ancilla pairs.
pub fn gadget_target(psi_in: &StateVector) -> Result<StateVector> {
    let out = psi_in.apply(&GateSpec::cz(1, 2)?.embed(2)?)?;
    let enc = encode_pairs(&out)?;
    let bell = StateVector::bell();
    StateVector::place(GADGET_QUBITS, &[(&[1, 2], &bell), (&[5, 6], &bell), (&[3, 4, 7, 8], &enc)])
}

/// Full eight-qubit run carrying `psi_in` from `(1ᴸ,1ᴿ)` to the encoded
/// ancilla pairs. `steps = None` uses the default resolution.
pub fn run_gadget(
    psi_in: &StateVector,
    cfg: CouplingConfig,
    total_time: f64,
    steps: Option<usize>,
) -> Result<RunReport> {
    let started = Instant::now();
    let sys = gadget_hamiltonians(cfg)?;
    if psi_in.n_qubits() != 2 {
        return Err(crate::error::structural("the gadget takes a two-qubit input"));
    }
    let h = sys.hamiltonian()?;
    let (pi, deg_i) = ground_projector(&h.start().realize()?, DEFAULT_DEGENERACY_TOL * cfg.omega)?;
    let (pf, deg_f) = ground_projector(&h.end().realize()?, DEFAULT_DEGENERACY_TOL * cfg.omega)?;
    if deg_i != 4 || deg_f != 4 {
        return Err(Error::Consistency(format!(
            "expected four-fold endpoint ground spaces, found {deg_i} and {deg_f}"
        )));
    }
    let psi0 = prepare_in_ground_space(&pi, &[Side::L.qubit(1), Side::R.qubit(1)], psi_in)?;
    let target = gadget_target(psi_in)?;
    let steps = steps.unwrap_or_else(|| default_steps(total_time, cfg.omega));
    let pcfg = PropagationConfig::new(total_time).with_steps(steps).with_method(Method::Taylor);
    let out = propagate(&h, &psi0, &pcfg)?;
    let profile = gap_profile_with(&h, GapOptions { degeneracy_tol: DEFAULT_DEGENERACY_TOL * cfg.omega, ..GapOptions::default() })?;
    Ok(RunReport {
        protocol: "gadget".into(),
        fidelity: fidelity(&out, &target)?,
        leakage: leakage(&out, &pf)?,
        min_gap: Some(profile.min_gap()),
        final_norm: out.norm(),
        config: pcfg,
        final_state: out,
        elapsed_s: started.elapsed().as_secs_f64(),
    })
}
