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

//! Controlled-phase teleportation on six qubits.
//!
//! cargo run --release --example two_qubit_cz

use agtsim::protocols::agt_two_qubit;
use agtsim::spectral::GapOptions;
use agtsim::{PropagationConfig, StateVector};

fn main() -> agtsim::Result<()> {
    let proto = agt_two_qubit(1.0)?;
    println!("H_i = {}", proto.hamiltonian.h_initial());
    let p = proto.gap_profile(GapOptions::default())?;
    println!("min gap {:.9}, ground degeneracy 4 throughout: {}", p.min_gap(), p.constant_degeneracy(4));

    let plus = StateVector::plus();
    let inputs = [
        ("|++>", plus.kron(&plus)),
        ("|+1>", plus.kron(&StateVector::basis(1, 1)?)),
        ("|00>", StateVector::basis(2, 0)?),
    ];
    for (label, psi) in inputs {
        let r = proto.run(&psi, &PropagationConfig::new(50.0))?;
        println!("{label}: fidelity to CZ|psi> {:.8}", r.fidelity);
    }
    Ok(())
}
