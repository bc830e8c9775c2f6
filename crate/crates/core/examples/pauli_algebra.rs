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

//! Pauli-sum basics: parsing, products, conjugation by a gate and
//! projection of a dense operator back onto Pauli strings.
//!
//! cargo run --example pauli_algebra

use agtsim::pauli::LogicalFrame;
use agtsim::{conjugate, GateSpec, PauliSum, PauliTerm};

fn main() -> agtsim::Result<()> {
    let xz = PauliTerm::parse("XZ", 1.0)?;
    let zx = PauliTerm::parse("ZX", 1.0)?;
    let (phase, product) = xz.multiply(&zx)?;
    println!("XZ * ZX = {phase} {}", product.label());
    println!("XZ and ZX commute: {}", xz.commutes_with(&zx)?);

    let pair = PauliSum::from_labels(3, &[("IXX", -1.0), ("IZZ", -1.0)])?;
    println!("H on qubit 3 turns {pair} into {}", conjugate(&pair, &GateSpec::hadamard(3))?);

    let cz = conjugate(&pair, &GateSpec::cz(2, 1)?)?;
    println!("CZ(2,1) gives {cz}");
    let back = PauliSum::from_operator(&cz.realize()?, 1e-12)?;
    println!("projection round trip equal: {}", back.approx_eq(&cz, 1e-12));

    let frame = LogicalFrame::standard();
    println!("logical frame violations: {:?}", frame.anticommutation_violations());
    Ok(())
}
