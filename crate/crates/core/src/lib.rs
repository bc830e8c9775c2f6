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

//! Simulation of adiabatic gate teleportation.
//!
//! Hamiltonians are real-weighted Pauli sums ([`pauli`]), interpolated by
//! a schedule ([`hamiltonian`]), analysed by exact diagonalization
//! ([`spectral`]) and integrated with a midpoint exponential propagator
//! ([`dynamics`]). The named protocols live in [`protocols`], the two-body
//! perturbative gadget for the controlled-phase step in [`gadgets`], and the
//! circuit-to-schedule compiler in [`compiler`]. [`cli`] backs the `agtsim`
//! binary.
//!
//! Conventions: qubits are 1-based, qubit 1 is the leftmost Pauli letter and
//! the most significant bit of a basis index, energies are in units of the
//! coupling ω and times in units of 1/ω.

pub mod cli;
pub mod compiler;
pub mod dynamics;
pub mod error;
pub mod gadgets;
pub mod hamiltonian;
pub mod operator;
pub mod pauli;
pub mod protocols;
pub mod spectral;

pub use dynamics::{fidelity, leakage, propagate, Method, PropagationConfig, RunReport, StateVector};
pub use error::{Error, Result};
pub use hamiltonian::{conjugate, isotropic_pair, standard_pair, GateName, GateSpec, Schedule, TimeDependentHamiltonian};
pub use operator::{Operator, C64};
pub use pauli::{LogicalFrame, Pauli, PauliSum, PauliTerm};
pub use spectral::{gap_profile, ground_projector, spectrum, GapProfile, SpectrumResult};
