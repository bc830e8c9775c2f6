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

//! Compile `A B A` onto a seven-qubit chain and run it.
//!
//! cargo run --release --example compile_chain

use agtsim::compiler::{compile_chain, simulate_program, CircuitProgram};
use agtsim::dynamics::random_state;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> agtsim::Result<()> {
    let circuit: CircuitProgram = "A\nB\nA\n".parse()?;
    let program = compile_chain(&circuit)?;
    println!("{} physical qubits", program.n_physical);
    for seg in &program.segments {
        println!(
            "  {} [{}] {} -> {}  idle: {}",
            seg.label,
            seg.gate,
            seg.hamiltonian.h_initial(),
            seg.hamiltonian.h_final(),
            seg.hamiltonian.static_terms().len()
        );
    }
    for item in program.structural_check()?.items {
        println!("  check {}: {}", item.name, item.passed);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..3 {
        let psi = random_state(1, &mut rng);
        let r = simulate_program(&program, &psi, 50.0)?;
        println!("fidelity to ABA|psi>: {:.6} ({:.1}s)", r.fidelity, r.elapsed_s);
    }
    Ok(())
}
