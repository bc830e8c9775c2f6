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

//! Three-qubit adiabatic teleportation: gap profile and one run.
//!
//! cargo run --release --example teleport

use agtsim::protocols::teleportation_protocol;
use agtsim::spectral::GapOptions;
use agtsim::{PropagationConfig, StateVector, C64};

fn main() -> agtsim::Result<()> {
    let proto = teleportation_protocol(1.0)?;
    println!("H_i = {}", proto.hamiltonian.h_initial());
    println!("H_f = {}", proto.hamiltonian.h_final());

    let profile = proto.gap_profile(GapOptions::default())?;
    println!(
        "min gap {:.9} at s = {:.6} (sqrt 2 = {:.9}), ground degeneracy constant: {}",
        profile.min_gap(),
        profile.min_s(),
        2f64.sqrt(),
        profile.constant_degeneracy(2)
    );

    let psi = StateVector::qubit(C64::new(0.6, 0.0), C64::new(0.0, 0.8))?;
    let report = proto.run(&psi, &PropagationConfig::new(50.0))?;
    println!(
        "T = 50: fidelity {:.8}, leakage {:.2e}, {} steps",
        report.fidelity, report.leakage, report.config.steps
    );
    Ok(())
}
