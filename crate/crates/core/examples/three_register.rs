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

//! Two wires bounced between the first and third register, with a
//! controlled-phase in the middle.
//!
//! cargo run --release --example three_register

use agtsim::compiler::{compile_3n, simulate_program, CircuitProgram};
use agtsim::StateVector;

fn main() -> agtsim::Result<()> {
    let circuit: CircuitProgram = "A 1\nCZ 1 2\nB 2\n".parse()?;
    let program = compile_3n(&circuit, false)?;
    for seg in &program.segments {
        println!("{} {:>8}  data {:?} -> {:?}", seg.label, seg.gate, seg.data_in, seg.data_out);
    }

    let psi = StateVector::plus().kron(&StateVector::plus());
    let r = simulate_program(&program, &psi, 30.0)?;
    println!("fidelity {:.6}", r.fidelity);

    let gadget = compile_3n(&"CZ 1 2".parse()?, true)?;
    println!("gadget form: {} qubits, simulable here: {}", gadget.n_physical, gadget.is_simulable());
    Ok(())
}
