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

//! Teleportation error against run time for both schedules. The linear
//! schedule switches on abruptly, so its error oscillates with T; the
//! smoothstep schedule decays steadily.
//!
//! cargo run --release --example adiabatic_sweep

use agtsim::protocols::teleportation_protocol;
use agtsim::{PropagationConfig, Schedule, StateVector};

fn main() -> agtsim::Result<()> {
    let psi = StateVector::plus();
    println!("{:>6} {:>12} {:>12}", "T", "linear", "smoothstep");
    for t in [0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0] {
        let mut row = Vec::new();
        for schedule in [Schedule::Linear, Schedule::Smoothstep] {
            let proto = teleportation_protocol(1.0)?.with_schedule(schedule);
            row.push(proto.run(&psi, &PropagationConfig::new(t))?.infidelity());
        }
        println!("{t:>6} {:>12.3e} {:>12.3e}", row[0], row[1]);
    }
    Ok(())
}
