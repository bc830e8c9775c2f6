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

//! Teleportation with Heisenberg couplings. The gap doubles and the
//! standing pairs are singlets.
//!
//! cargo run --release --example isotropic

use agtsim::protocols::isotropic_teleportation;
use agtsim::spectral::GapOptions;
use agtsim::{PropagationConfig, StateVector};

fn main() -> agtsim::Result<()> {
    let proto = isotropic_teleportation(1.0)?;
    let p = proto.gap_profile(GapOptions::default())?;
    println!("min gap {:.9} at s = {:.4}; degeneracy 2 on the grid: {}", p.min_gap(), p.min_s(), p.constant_degeneracy(2));

    let psi = StateVector::plus();
    let r = proto.run(&psi, &PropagationConfig::new(50.0))?;
    println!("T = 50 fidelity {:.8}", r.fidelity);

    if let Err(e) = isotropic_teleportation(-1.0) {
        println!("ferromagnetic sign: {e}");
    }
    Ok(())
}
