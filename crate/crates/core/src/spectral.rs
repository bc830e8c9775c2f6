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

//! Dense Hermitian eigendecomposition, ground-space projectors and gap
//! profiles along an interpolation.

use std::io::Write;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::hamiltonian::TimeDependentHamiltonian;
use crate::operator::{Operator, C64};

/// Inputs whose Hermiticity defect exceeds this are rejected.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Default tolerance for deciding that two levels are degenerate.
pub const DEFAULT_DEGENERACY_TOL: f64 = 1e-9;

/// Ascending eigenvalues with the matching orthonormal eigenvectors as
/// columns.
#[derive(Clone, Debug)]
pub struct SpectrumResult {
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<C64>,
}

impl SpectrumResult {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &DMatrix<C64> {
        &self.eigenvectors
    }

    pub fn eigenvector(&self, k: usize) -> DVector<C64> {
        self.eigenvectors.column(k).into_owned()
    }

    pub fn ground_energy(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// Number of levels within `tol` of the ground energy.
    pub fn degeneracy(&self, tol: f64) -> usize {
        ground_degeneracy(&self.eigenvalues, tol)
    }

    /// Distance from the ground set to the next level, or infinity if the
    /// whole spectrum is degenerate.
    pub fn gap(&self, tol: f64) -> f64 {
        gap_above_ground(&self.eigenvalues, tol)
    }

    /// Columns spanning the ground space.
    pub fn ground_vectors(&self, tol: f64) -> Vec<DVector<C64>> {
        (0..self.degeneracy(tol)).map(|k| self.eigenvector(k)).collect()
    }

    /// `max |H - V Λ V^†|`.
    pub fn reconstruction_error(&self, op: &Operator) -> f64 {
        let lambda = DMatrix::from_diagonal(&DVector::from_iterator(
            self.eigenvalues.len(),
            self.eigenvalues.iter().map(|&e| C64::new(e, 0.0)),
        ));
        let back = &self.eigenvectors * lambda * self.eigenvectors.adjoint();
        back.iter()
            .zip(op.matrix().iter())
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }

    /// `max |V^† V - 1|`.
    pub fn orthonormality_defect(&self) -> f64 {
        Operator::new(self.eigenvectors.clone())
            .map(|v| v.unitarity_defect())
            .unwrap_or(f64::INFINITY)
    }
}

fn ground_degeneracy(eigenvalues: &[f64], tol: f64) -> usize {
    let e0 = eigenvalues[0];
    eigenvalues.iter().take_while(|&&e| e - e0 <= tol).count()
}

fn gap_above_ground(eigenvalues: &[f64], tol: f64) -> f64 {
    let d = ground_degeneracy(eigenvalues, tol);
    eigenvalues.get(d).map_or(f64::INFINITY, |e| e - eigenvalues[0])
}

fn check_hermitian(op: &Operator) -> Result<()> {
    let defect = op.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        return Err(domain(format!("operator is not Hermitian (defect {defect:.3e})")));
    }
    Ok(())
}

/// Full eigendecomposition of a Hermitian operator.
pub fn spectrum(op: &Operator) -> Result<SpectrumResult> {
    check_hermitian(op)?;
    let eig = op.matrix().clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let d = op.dim();
    let eigenvectors = DMatrix::from_fn(d, d, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(SpectrumResult { eigenvalues, eigenvectors })
}

/// Ascending eigenvalues only.
pub fn eigenvalues(op: &Operator) -> Result<Vec<f64>> {
    check_hermitian(op)?;
    let mut e: Vec<f64> = op.matrix().clone().symmetric_eigenvalues().iter().copied().collect();
    e.sort_by(f64::total_cmp);
    Ok(e)
}

/// Projector onto the eigenvectors within `tol` of the lowest eigenvalue,
/// together with the degeneracy.
pub fn ground_projector(op: &Operator, tol: f64) -> Result<(Operator, usize)> {
    if tol <= 0.0 || !tol.is_finite() {
        return Err(domain(format!("degeneracy tolerance must be positive, got {tol}")));
    }
    let spec = spectrum(op)?;
    let deg = spec.degeneracy(tol);
    let v = spec.eigenvectors.columns(0, deg);
    let p = v * v.adjoint();
    Ok((Operator::from_matrix_unchecked(p), deg))
}

/// One sampled point of a gap profile.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GapSample {
    pub s: f64,
    pub gap: f64,
    pub ground_energy: f64,
    pub ground_degeneracy: usize,
}

/// Adjacent samples whose ground degeneracy differs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LevelCrossing {
    pub s_before: f64,
    pub s_after: f64,
    pub degeneracy_before: usize,
    pub degeneracy_after: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct GapProfile {
    pub samples: Vec<GapSample>,
    /// `(s*, Δ*)` after golden-section refinement.
    pub minimum: (f64, f64),
    pub level_crossings: Vec<LevelCrossing>,
}

impl GapProfile {
    pub fn min_s(&self) -> f64 {
        self.minimum.0
    }

    pub fn min_gap(&self) -> f64 {
        self.minimum.1
    }

    /// True when every sample has the given ground degeneracy.
    pub fn constant_degeneracy(&self, d: usize) -> bool {
        self.samples.iter().all(|p| p.ground_degeneracy == d)
    }

    /// CSV with header `s,gap,ground_energy,ground_degeneracy`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        for p in &self.samples {
            out.serialize(p)?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Tuning for [`gap_profile_with`].
#[derive(Clone, Copy, Debug)]
pub struct GapOptions {
    pub grid_points: usize,
    pub refine_tol: f64,
    pub degeneracy_tol: f64,
}

impl Default for GapOptions {
    fn default() -> Self {
        GapOptions { grid_points: 101, refine_tol: 1e-6, degeneracy_tol: DEFAULT_DEGENERACY_TOL }
    }
}

/// `(gap, ground energy, degeneracy)` of `H(s)`.
pub fn gap_at(h: &TimeDependentHamiltonian, s: f64, degeneracy_tol: f64) -> Result<(f64, f64, usize)> {
    let e = eigenvalues(&h.evaluate(s)?)?;
    Ok((gap_above_ground(&e, degeneracy_tol), e[0], ground_degeneracy(&e, degeneracy_tol)))
}

/// Gap profile on a uniform grid with the default degeneracy tolerance.
pub fn gap_profile(h: &TimeDependentHamiltonian, grid_points: usize, refine_tol: f64) -> Result<GapProfile> {
    gap_profile_with(h, GapOptions { grid_points, refine_tol, ..GapOptions::default() })
}

pub fn gap_profile_with(h: &TimeDependentHamiltonian, opts: GapOptions) -> Result<GapProfile> {
    if opts.grid_points < 11 {
        return Err(domain(format!("gap profile needs at least 11 grid points, got {}", opts.grid_points)));
    }
    if opts.refine_tol <= 0.0 || opts.degeneracy_tol <= 0.0 {
        return Err(domain("gap tolerances must be positive"));
    }
    let last = (opts.grid_points - 1) as f64;
    let samples = (0..opts.grid_points)
        .into_par_iter()
        .map(|k| {
            let s = k as f64 / last;
            let (gap, ground_energy, ground_degeneracy) = gap_at(h, s, opts.degeneracy_tol)?;
            Ok(GapSample { s, gap, ground_energy, ground_degeneracy })
        })
        .collect::<Result<Vec<_>>>()?;

    let level_crossings = samples
        .windows(2)
        .filter(|w| w[0].ground_degeneracy != w[1].ground_degeneracy)
        .map(|w| LevelCrossing {
            s_before: w[0].s,
            s_after: w[1].s,
            degeneracy_before: w[0].ground_degeneracy,
            degeneracy_after: w[1].ground_degeneracy,
        })
        .collect();

    let (imin, best) = samples
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.gap.total_cmp(&b.1.gap))
        .map(|(i, p)| (i, (p.s, p.gap)))
        .expect("at least 11 samples");
    let lo = samples[imin.saturating_sub(1)].s;
    let hi = samples[(imin + 1).min(samples.len() - 1)].s;
    let refined = golden_section_min(
        |s| gap_at(h, s, opts.degeneracy_tol).map(|g| g.0).unwrap_or(f64::INFINITY),
        lo,
        hi,
        opts.refine_tol,
    );
    let minimum = if refined.1 < best.1 { refined } else { best };
    Ok(GapProfile { samples, minimum, level_crossings })
}

/// Golden-section search for a minimum of `f` on `[lo, hi]`, stopping once
/// the bracket is narrower than `tol`. Returns the best point evaluated.
pub fn golden_section_min<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut best = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
            if f1 < best.1 {
                best = (x1, f1);
            }
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
            if f2 < best.1 {
                best = (x2, f2);
            }
        }
    }
    best
}
