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

//! Closed forms of the two-body gadget checked against diagonalization,
//! and the structural checks on the eight-qubit system.
//!
//! cargo run --release --example gadget_analysis

use agtsim::gadgets::{
    alpha_table, gadget_gap_bound_check, gadget_hamiltonians, gap_table, write_rows, CouplingConfig,
};

fn main() -> agtsim::Result<()> {
    write_rows(&alpha_table(&[0.05, 0.1, 0.2, 0.3, 0.4])?, std::io::stdout())?;
    println!();
    write_rows(&gap_table(0.2, 11)?, std::io::stdout())?;
    println!();

    for r in [0.1, 0.25, 0.49] {
        let b = gadget_gap_bound_check(r)?;
        println!(
            "r = {r}: min gap {:.6} at s = {:.3} >= r^2 = {:.6} ({}), critical s {:.4}",
            b.min_gap,
            b.min_s,
            b.bound,
            if b.passed { "holds" } else { "violated" },
            b.critical_s
        );
    }

    let sys = gadget_hamiltonians(CouplingConfig::from_ratio(0.1)?)?;
    println!("\nH_i = {}", sys.full_initial());
    let (decoupled, split) = sys.decoupling_check()?;
    println!("after CZ(4L,4R): {decoupled}\nsides decouple: {split}");
    println!("conserved operators: {}", sys.conserved_check()?.passed());
    Ok(())
}
