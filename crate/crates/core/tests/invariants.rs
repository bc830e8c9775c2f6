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

//! Property and exhaustive checks of the algebraic and spectral invariants.

use agtsim::compiler::{compile_3n, compile_chain, CircuitGate, CircuitProgram};
use agtsim::gadgets::{gadget_alpha, gadget_gap_closed, gadget_gap_numeric, gadget_overlap_numeric};
use agtsim::hamiltonian::GateSpec;
use agtsim::protocols::{agt_single, agt_two_qubit, isotropic_teleportation, teleportation_protocol, ProtocolSpec};
use agtsim::spectral::eigenvalues;
use agtsim::{conjugate, Operator, PauliSum, PauliTerm, Schedule, C64};
use nalgebra::DMatrix;
use proptest::prelude::*;

fn pauli_sum(n: usize) -> impl Strategy<Value = PauliSum> {
    let term = (prop::collection::vec(prop::sample::select(vec!['I', 'X', 'Y', 'Z']), n), -2.0f64..2.0)
        .prop_map(|(letters, c)| PauliTerm::parse(&letters.into_iter().collect::<String>(), c).unwrap());
    prop::collection::vec(term, 1..8).prop_map(move |terms| PauliSum::new(n, terms).unwrap())
}

/// Random single-qubit unitary from Euler angles.
fn unitary(a: f64, b: f64, c: f64) -> DMatrix<C64> {
    let (ca, sa) = ((a / 2.0).cos(), (a / 2.0).sin());
    DMatrix::from_row_slice(
        2,
        2,
        &[
            C64::from_polar(ca, -(b + c) / 2.0),
            -C64::from_polar(sa, (c - b) / 2.0),
            C64::from_polar(sa, (b - c) / 2.0),
            C64::from_polar(ca, (b + c) / 2.0),
        ],
    )
}

fn sorted_spectrum(h: &PauliSum) -> Vec<f64> {
    eigenvalues(&h.realize().unwrap()).unwrap()
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn real_sums_realize_hermitian(h in (1usize..=4).prop_flat_map(pauli_sum)) {
        prop_assert!(h.realize().unwrap().hermiticity_defect() < 1e-12);
    }

    #[test]
    fn projection_inverts_realize(h in (1usize..=3).prop_flat_map(pauli_sum)) {
        let back = PauliSum::from_operator(&h.realize().unwrap(), 1e-12).unwrap();
        prop_assert!(back.approx_eq(&h.simplified(1e-12), 1e-10));
    }

    #[test]
    fn conjugation_is_isospectral(
        h in pauli_sum(3),
        q in 1usize..=3,
        (a, b, c) in (0.0f64..6.3, 0.0f64..6.3, 0.0f64..6.3),
    ) {
        let g = GateSpec::custom("U", unitary(a, b, c), vec![q]).unwrap();
        let hc = conjugate(&h, &g).unwrap();
        prop_assert!(max_diff(&sorted_spectrum(&h), &sorted_spectrum(&hc)) < 1e-10);
    }

    #[test]
    fn schedules_hit_endpoints_and_stay_affine(s in 0.0f64..=1.0, c in 0.1f64..3.0) {
        for sched in [Schedule::Linear, Schedule::Smoothstep] {
            prop_assert!((sched.f(s) + sched.g(s) - 1.0).abs() < 1e-15);
            let h = teleportation_protocol(1.0).unwrap().hamiltonian.with_schedule(sched);
            let scaled = h.combine(c * sched.f(s), c * sched.g(s)).realize().unwrap();
            let want = h.evaluate(s).unwrap().scale(c);
            prop_assert!(scaled.max_abs_diff(&want).unwrap() < 1e-12);
        }
    }

    #[test]
    fn gadget_closed_forms_match_diagonalization(r in 0.01f64..0.49, s in 0.0f64..=1.0) {
        prop_assert!((gadget_alpha(r).unwrap() - gadget_overlap_numeric(r).unwrap()).abs() < 1e-10);
        prop_assert!((gadget_gap_closed(s, r).unwrap() - gadget_gap_numeric(s, r).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn compiled_chains_are_continuous(gates in prop::collection::vec(prop::bool::ANY, 0..6)) {
        let gates: Vec<CircuitGate> = gates
            .into_iter()
            .map(|a| if a { CircuitGate::A { wire: 1 } } else { CircuitGate::B { wire: 1 } })
            .collect();
        let circuit = CircuitProgram::new(1, gates).unwrap();
        let parsed: CircuitProgram = circuit.to_text().parse().unwrap();
        prop_assert_eq!(&parsed, &circuit);
        for program in [compile_chain(&circuit).unwrap(), compile_3n(&circuit, false).unwrap()] {
            let r = program.structural_check().unwrap();
            prop_assert!(r.passed(), "{:?}", r.failures());
            prop_assert_eq!(program.segments.len(), circuit.len());
        }
    }
}

#[test]
fn commutation_rule_matches_matrices_exhaustively() {
    let letters = ['I', 'X', 'Y', 'Z'];
    let labels: Vec<String> = (0..64)
        .map(|k| (0..3).map(|i| letters[(k >> (2 * (2 - i))) & 3]).collect())
        .collect();
    let ops: Vec<(PauliTerm, Operator)> = labels
        .iter()
        .map(|l| {
            let t = PauliTerm::parse(l, 1.0).unwrap();
            let m = t.realize();
            (t, m)
        })
        .collect();
    for (a, ma) in &ops {
        for (b, mb) in &ops {
            let matrix_commutes = ma.commutator(mb).unwrap().max_abs() < 1e-12;
            assert_eq!(a.commutes_with(b).unwrap(), matrix_commutes, "{} {}", a.label(), b.label());
        }
    }
}

fn named_protocols() -> Vec<ProtocolSpec> {
    vec![
        teleportation_protocol(1.0).unwrap(),
        agt_single(&GateSpec::hadamard(1), 1.0).unwrap(),
        agt_single(&GateSpec::a(1), 1.0).unwrap(),
        agt_single(&GateSpec::b(1), 1.0).unwrap(),
        isotropic_teleportation(1.0).unwrap(),
        agt_two_qubit(1.0).unwrap(),
    ]
}

#[test]
fn protocol_hamiltonians_are_isospectral_under_gate_set() {
    for p in named_protocols() {
        let n = p.n_qubits();
        let gates = [GateSpec::hadamard(2), GateSpec::a(n), GateSpec::b(1), GateSpec::cz(2, 3).unwrap()];
        for h in [p.hamiltonian.h_initial(), p.hamiltonian.h_final()] {
            let base = sorted_spectrum(h);
            for g in &gates {
                let e = sorted_spectrum(&conjugate(h, g).unwrap());
                assert!(max_diff(&base, &e) < 1e-10, "{} {}", p.name, g.name());
            }
        }
    }
}

#[test]
fn gate_algebra_is_exact() {
    let a = GateSpec::a(1).embed(1).unwrap();
    let b = GateSpec::b(1).embed(1).unwrap();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let want_a2 = PauliSum::from_labels(1, &[("X", h), ("Z", h)]).unwrap().realize().unwrap();
    let want_a2 = Operator::new(want_a2.matrix() * C64::new(0.0, 1.0)).unwrap();
    assert!((&a * &a).max_abs_diff(&want_a2).unwrap() < 1e-15);
    let b2 = &b * &b;
    let z = PauliTerm::parse("Z", 1.0).unwrap().realize();
    assert!((&b2 * &b2).max_abs_diff(&z).unwrap() < 1e-15);
}
