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

//! Gate teleportation for I, H, A and B on random inputs, with a 10x-step
//! rerun as a convergence check.
//!
//! cargo run --release --example agt_gates

use agtsim::dynamics::random_state;
use agtsim::protocols::agt_single;
use agtsim::{GateSpec, PropagationConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> agtsim::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let gates = [GateSpec::identity(1), GateSpec::hadamard(1), GateSpec::a(1), GateSpec::b(1)];
    for gate in &gates {
        let proto = agt_single(gate, 1.0)?;
        println!("{:>2}: H_i = {}", gate.name().to_string(), proto.hamiltonian.h_initial());
        let mut worst = 1.0f64;
        let mut drift = 0.0f64;
        for _ in 0..5 {
            let psi = random_state(1, &mut rng);
            let cfg = PropagationConfig::new(50.0);
            let coarse = proto.run(&psi, &cfg)?;
            let fine = proto.run(&psi, &cfg.with_steps(cfg.steps * 10))?;
            worst = worst.min(coarse.fidelity);
            drift = drift.max((coarse.fidelity - fine.fidelity).abs());
        }
        println!("    worst fidelity {worst:.8}, |coarse - fine| <= {drift:.1e}");
    }
    Ok(())
}
