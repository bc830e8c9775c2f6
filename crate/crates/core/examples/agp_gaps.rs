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

//! Gate preparation on a standing pair. A and B keep a gap open; other
//! gates are refused.
//!
//! cargo run --release --example agp_gaps

use agtsim::protocols::agp;
use agtsim::spectral::{gap_profile_with, GapOptions};
use agtsim::{GateSpec, TimeDependentHamiltonian};

fn main() -> agtsim::Result<()> {
    for (gate, expected) in [(GateSpec::a(1), 2f64.sqrt()), (GateSpec::b(1), (2.0 + 2f64.sqrt()).sqrt())] {
        let proto = agp(&gate, 1.0)?;
        let p = proto.gap_profile(GapOptions::default())?;
        println!(
            "{}: {} -> {}\n   min gap {:.9} (expected {expected:.9}) at s = {:.4}",
            gate.name(),
            proto.hamiltonian.h_initial(),
            proto.hamiltonian.h_final(),
            p.min_gap(),
            p.min_s()
        );
    }

    match agp(&GateSpec::pauli_x(1), 1.0) {
        Err(e) => println!("X: {e}"),
        Ok(_) => unreachable!(),
    }

    // Why X is refused: the straight-line drag to the X-rotated pair closes the gap.
    let start = agtsim::standard_pair(2, 1, 2, 1.0)?;
    let end = agtsim::conjugate(&start, &GateSpec::pauli_x(2))?;
    let h = TimeDependentHamiltonian::linear(start, end)?;
    let p = gap_profile_with(&h, GapOptions::default())?;
    println!("forced X drag: min gap {:.2e} at s = {:.4}", p.min_gap(), p.min_s());
    Ok(())
}
