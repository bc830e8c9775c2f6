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

//! End-to-end gadget run: eight qubits, controlled-phase on two logical
//! inputs through two-body couplings only.
//!
//! cargo run --release --example gadget_run -- [r] [T]

use agtsim::gadgets::{run_gadget, CouplingConfig};
use agtsim::StateVector;

fn main() -> agtsim::Result<()> {
    let mut args = std::env::args().skip(1);
    let r: f64 = args.next().map(|a| a.parse().expect("r")).unwrap_or(0.1);
    let cfg = CouplingConfig::from_ratio(r)?;
    let t: f64 = args.next().map(|a| a.parse().expect("T")).unwrap_or_else(|| cfg.reference_time());

    let zero = StateVector::basis(1, 0)?;
    let one = StateVector::basis(1, 1)?;
    let inputs = [("|00>", zero.kron(&zero)), ("|+>|1>", StateVector::plus().kron(&one))];
    println!("r = {r}, T = {t}, allowed infidelity {:.4}", 2.0 * r * r + 1e-3);
    for (label, psi) in inputs {
        let rep = run_gadget(&psi, cfg, t, None)?;
        println!(
            "{label:8} infidelity {:.3e}  leakage {:.3e}  min gap {:.5}  ({:.1}s)",
            rep.infidelity(),
            rep.leakage,
            rep.min_gap.unwrap_or(f64::NAN),
            rep.elapsed_s
        );
    }
    Ok(())
}
