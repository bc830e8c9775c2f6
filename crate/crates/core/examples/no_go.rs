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

//! Two diagonal two-qubit Hamiltonians cannot swap |10> and |01>, while
//! the three-qubit construction keeps its logical frame intact.
//!
//! cargo run --release --example no_go

use agtsim::protocols::{logical_frame_check, no_go_diagonal, NoGoConfig};

fn main() -> agtsim::Result<()> {
    let r = no_go_diagonal(&NoGoConfig::default())?;
    println!(
        "max off-diagonal {:.1e}, swap fidelity {:.1e} over T = {:?}",
        r.max_off_diagonal, r.swap_fidelity, r.run_times
    );

    for item in logical_frame_check()?.items {
        println!("[{}] {} (residual {:.1e})", if item.passed { "ok" } else { "FAIL" }, item.name, item.residual);
    }
    Ok(())
}
