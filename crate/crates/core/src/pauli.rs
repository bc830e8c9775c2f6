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

//! Pauli strings, real-weighted Pauli sums and their dense realizations.
//!
//! Labels are read left to right: the first character acts on qubit 1, which
//! is also the most significant bit of the computational basis index. So
//! `"XXI"` is `X ⊗ X ⊗ I` and `|q1 q2 q3⟩` has index `4 q1 + 2 q2 + q3`.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{domain, structural, Error, Result};
use crate::operator::{Operator, C64};

/// Coefficients whose magnitude falls below this are dropped when an
/// operator is projected back onto the Pauli basis.
pub const PROJECTION_TOL: f64 = 1e-12;

/// Single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_char(c: char) -> Option<Pauli> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    /// `(x, z)` bits in the `i^{y} X^x Z^z` decomposition.
    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn matrix(self) -> DMatrix<C64> {
        let o = C64::new(0.0, 0.0);
        let l = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        match self {
            Pauli::I => DMatrix::from_row_slice(2, 2, &[l, o, o, l]),
            Pauli::X => DMatrix::from_row_slice(2, 2, &[o, l, l, o]),
            Pauli::Y => DMatrix::from_row_slice(2, 2, &[o, -i, i, o]),
            Pauli::Z => DMatrix::from_row_slice(2, 2, &[l, o, o, -l]),
        }
    }
}

/// A real coefficient times a tensor product of Pauli letters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "(String, f64)", into = "(String, f64)")]
pub struct PauliTerm {
    letters: Vec<Pauli>,
    coefficient: f64,
}

impl PauliTerm {
    pub fn new(letters: Vec<Pauli>, coefficient: f64) -> Result<Self> {
        if letters.is_empty() {
            return Err(structural("a Pauli term needs at least one qubit"));
        }
        if !coefficient.is_finite() {
            return Err(domain(format!("coefficient {coefficient} is not finite")));
        }
        Ok(PauliTerm { letters, coefficient })
    }

    /// Parses a label such as `"XXI"`.
    pub fn parse(label: &str, coefficient: f64) -> Result<Self> {
        let letters = label
            .chars()
            .enumerate()
            .map(|(i, c)| Pauli::from_char(c).ok_or(Error::Parse { position: i + 1, found: c }))
            .collect::<Result<Vec<_>>>()?;
        PauliTerm::new(letters, coefficient)
    }

    pub fn identity(n_qubits: usize, coefficient: f64) -> Result<Self> {
        PauliTerm::new(vec![Pauli::I; n_qubits], coefficient)
    }

    /// Term with the given letters on 1-based qubit sites and identity
    /// elsewhere.
    pub fn on_sites(n_qubits: usize, sites: &[(usize, Pauli)], coefficient: f64) -> Result<Self> {
        let mut letters = vec![Pauli::I; n_qubits];
        for &(q, p) in sites {
            if q == 0 || q > n_qubits {
                return Err(Error::Index(format!("qubit {q} outside 1..={n_qubits}")));
            }
            if letters[q - 1] != Pauli::I {
                return Err(Error::Index(format!("qubit {q} given twice")));
            }
            letters[q - 1] = p;
        }
        PauliTerm::new(letters, coefficient)
    }

    pub fn n_qubits(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.letters
    }

    pub fn coefficient(&self) -> f64 {
        self.coefficient
    }

    pub fn with_coefficient(&self, coefficient: f64) -> PauliTerm {
        PauliTerm { letters: self.letters.clone(), coefficient }
    }

    pub fn label(&self) -> String {
        self.letters.iter().map(|p| p.as_char()).collect()
    }

    /// Number of non-identity letters.
    pub fn weight(&self) -> usize {
        self.letters.iter().filter(|&&p| p != Pauli::I).count()
    }

    /// 1-based qubits carrying a non-identity letter.
    pub fn support(&self) -> Vec<usize> {
        self.letters
            .iter()
            .enumerate()
            .filter(|(_, &p)| p != Pauli::I)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// `(x_mask, z_mask, y_count)` with qubit 1 on the most significant bit.
    pub(crate) fn masks(&self) -> (usize, usize, u32) {
        let n = self.letters.len();
        let mut x = 0usize;
        let mut z = 0usize;
        let mut y = 0u32;
        for (i, p) in self.letters.iter().enumerate() {
            let (bx, bz) = p.bits();
            let bit = 1usize << (n - 1 - i);
            if bx {
                x |= bit;
            }
            if bz {
                z |= bit;
            }
            if bx && bz {
                y += 1;
            }
        }
        (x, z, y)
    }

    /// Two Pauli strings commute iff they anticommute on an even number of
    /// sites (sites where both letters are non-identity and differ).
    pub fn commutes_with(&self, other: &PauliTerm) -> Result<bool> {
        if self.n_qubits() != other.n_qubits() {
            return Err(structural(format!(
                "cannot compare terms on {} and {} qubits",
                self.n_qubits(),
                other.n_qubits()
            )));
        }
        let clashes = self
            .letters
            .iter()
            .zip(&other.letters)
            .filter(|(&a, &b)| a != Pauli::I && b != Pauli::I && a != b)
            .count();
        Ok(clashes % 2 == 0)
    }

    /// Operator product `self · other` as `(phase, term)` where the returned
    /// term carries the product of the two coefficients and `phase` is one of
    /// `±1, ±i`.
    pub fn multiply(&self, other: &PauliTerm) -> Result<(C64, PauliTerm)> {
        if self.n_qubits() != other.n_qubits() {
            return Err(structural("cannot multiply terms of different length"));
        }
        let mut phase = C64::new(1.0, 0.0);
        let letters = self
            .letters
            .iter()
            .zip(&other.letters)
            .map(|(&a, &b)| {
                let (p, c) = single_product(a, b);
                phase *= p;
                c
            })
            .collect();
        Ok((phase, PauliTerm { letters, coefficient: self.coefficient * other.coefficient }))
    }

    /// Dense matrix of the term, coefficient included.
    pub fn realize(&self) -> Operator {
        let n = self.n_qubits();
        let dim = 1usize << n;
        let (x, z, y) = self.masks();
        let phase = i_pow(y) * self.coefficient;
        let mut m = DMatrix::<C64>::zeros(dim, dim);
        for col in 0..dim {
            let sign = if (col & z).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            m[(col ^ x, col)] = phase * sign;
        }
        Operator::from_matrix_unchecked(m)
    }
}

impl TryFrom<(String, f64)> for PauliTerm {
    type Error = Error;

    fn try_from((label, c): (String, f64)) -> Result<Self> {
        PauliTerm::parse(&label, c)
    }
}

impl From<PauliTerm> for (String, f64) {
    fn from(t: PauliTerm) -> Self {
        (t.label(), t.coefficient)
    }
}

impl fmt::Display for PauliTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}·{}", self.coefficient, self.label())
    }
}

fn i_pow(k: u32) -> C64 {
    match k % 4 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, 1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, -1.0),
    }
}

fn single_product(a: Pauli, b: Pauli) -> (C64, Pauli) {
    use Pauli::*;
    let i = C64::new(0.0, 1.0);
    let one = C64::new(1.0, 0.0);
    match (a, b) {
        (I, p) | (p, I) => (one, p),
        (X, X) | (Y, Y) | (Z, Z) => (one, I),
        (X, Y) => (i, Z),
        (Y, X) => (-i, Z),
        (Y, Z) => (i, X),
        (Z, Y) => (-i, X),
        (Z, X) => (i, Y),
        (X, Z) => (-i, Y),
    }
}

/// Sum of Pauli terms on a common register.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PauliSumRepr", into = "PauliSumRepr")]
pub struct PauliSum {
    n_qubits: usize,
    terms: Vec<PauliTerm>,
}

#[derive(Serialize, Deserialize)]
struct PauliSumRepr {
    n_qubits: usize,
    terms: Vec<PauliTerm>,
}

impl TryFrom<PauliSumRepr> for PauliSum {
    type Error = Error;

    fn try_from(r: PauliSumRepr) -> Result<Self> {
        PauliSum::new(r.n_qubits, r.terms)
    }
}

impl From<PauliSum> for PauliSumRepr {
    fn from(s: PauliSum) -> Self {
        PauliSumRepr { n_qubits: s.n_qubits, terms: s.terms }
    }
}

impl PauliSum {
    pub fn new(n_qubits: usize, terms: Vec<PauliTerm>) -> Result<Self> {
        if n_qubits == 0 {
            return Err(structural("a Pauli sum needs at least one qubit"));
        }
        if let Some(t) = terms.iter().find(|t| t.n_qubits() != n_qubits) {
            return Err(structural(format!(
                "term {} has {} letters, expected {n_qubits}",
                t.label(),
                t.n_qubits()
            )));
        }
        Ok(PauliSum { n_qubits, terms })
    }

    pub fn empty(n_qubits: usize) -> Self {
        PauliSum { n_qubits: n_qubits.max(1), terms: Vec::new() }
    }

    /// Builds a sum from `(label, coefficient)` pairs.
    pub fn from_labels(n_qubits: usize, labels: &[(&str, f64)]) -> Result<Self> {
        let terms = labels
            .iter()
            .map(|&(l, c)| PauliTerm::parse(l, c))
            .collect::<Result<Vec<_>>>()?;
        PauliSum::new(n_qubits, terms)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn push(&mut self, term: PauliTerm) -> Result<()> {
        if term.n_qubits() != self.n_qubits {
            return Err(structural(format!(
                "term {} does not fit a {}-qubit sum",
                term.label(),
                self.n_qubits
            )));
        }
        self.terms.push(term);
        Ok(())
    }

    pub fn scaled(&self, c: f64) -> PauliSum {
        PauliSum {
            n_qubits: self.n_qubits,
            terms: self.terms.iter().map(|t| t.with_coefficient(t.coefficient * c)).collect(),
        }
    }

    /// Concatenation of the two term lists.
    pub fn plus(&self, other: &PauliSum) -> Result<PauliSum> {
        if self.n_qubits != other.n_qubits {
            return Err(structural(format!(
                "cannot add sums on {} and {} qubits",
                self.n_qubits, other.n_qubits
            )));
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(PauliSum { n_qubits: self.n_qubits, terms })
    }

    /// Merges repeated labels and drops terms with `|c| <= tol`. Terms come
    /// out sorted by label.
    pub fn simplified(&self, tol: f64) -> PauliSum {
        let mut acc: BTreeMap<Vec<Pauli>, f64> = BTreeMap::new();
        for t in &self.terms {
            *acc.entry(t.letters.clone()).or_insert(0.0) += t.coefficient;
        }
        let terms = acc
            .into_iter()
            .filter(|(_, c)| c.abs() > tol)
            .map(|(letters, coefficient)| PauliTerm { letters, coefficient })
            .collect();
        PauliSum { n_qubits: self.n_qubits, terms }
    }

    /// Same operator up to `tol` per coefficient, after merging like terms.
    pub fn approx_eq(&self, other: &PauliSum, tol: f64) -> bool {
        if self.n_qubits != other.n_qubits {
            return false;
        }
        let a = self.simplified(tol);
        let b = other.simplified(tol);
        a.terms.len() == b.terms.len()
            && a.terms.iter().zip(&b.terms).all(|(x, y)| {
                x.letters == y.letters && (x.coefficient - y.coefficient).abs() <= tol
            })
    }

    /// Largest number of qubits touched by a single term.
    pub fn max_weight(&self) -> usize {
        self.terms.iter().map(|t| t.weight()).max().unwrap_or(0)
    }

    /// Dense matrix `Σ c_k P_k`.
    pub fn realize(&self) -> Result<Operator> {
        if self.terms.is_empty() {
            return Err(structural("cannot realize an empty Pauli sum"));
        }
        Ok(self.realize_or_zero())
    }

    /// Like [`realize`](Self::realize) but an empty sum gives the zero
    /// operator.
    pub fn realize_or_zero(&self) -> Operator {
        let dim = 1usize << self.n_qubits;
        let mut m = DMatrix::<C64>::zeros(dim, dim);
        for t in &self.terms {
            let (x, z, y) = t.masks();
            let phase = i_pow(y) * t.coefficient;
            for col in 0..dim {
                let sign = if (col & z).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                m[(col ^ x, col)] += phase * sign;
            }
        }
        Operator::from_matrix_unchecked(m)
    }

    /// Expands a Hermitian operator in the Pauli basis,
    /// `c_P = Tr(P A) / 2^n`, keeping coefficients above `tol`.
    ///
    /// Fails with a consistency error if any coefficient has an imaginary
    /// part above `tol`, which cannot happen for Hermitian input.
    pub fn from_operator(op: &Operator, tol: f64) -> Result<PauliSum> {
        let n = op.n_qubits();
        let dim = op.dim();
        let m = op.matrix();
        let mut terms = Vec::new();
        // Enumerate (x, z) masks; the letter of qubit j comes from bit n-j.
        for x in 0..dim {
            for z in 0..dim {
                let y = (x & z).count_ones();
                let phase = i_pow(y);
                // P[k^x, k] = phase·sign(k), so Tr(P A) = Σ_k P[k^x, k] A[k, k^x].
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..dim {
                    let sign = if (k & z).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                    acc += phase * sign * m[(k, k ^ x)];
                }
                let c = acc / dim as f64;
                if c.norm() <= tol {
                    continue;
                }
                if c.im.abs() > tol {
                    return Err(Error::Consistency(format!(
                        "Pauli coefficient {c} is not real; operator is not Hermitian"
                    )));
                }
                let letters = (0..n)
                    .map(|i| {
                        let bit = 1usize << (n - 1 - i);
                        Pauli::from_bits(x & bit != 0, z & bit != 0)
                    })
                    .collect();
                terms.push(PauliTerm { letters, coefficient: c.re });
            }
        }
        Ok(PauliSum { n_qubits: n, terms }.simplified(tol))
    }

    /// Sparse action grouped by X-mask, for cheap matrix-vector products.
    pub fn action(&self) -> PauliAction {
        PauliAction::new(self)
    }
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// `H = Σ_x X^x D_x`: each distinct X-mask `x` carries a diagonal `D_x`.
/// Applying `H` costs `(#masks) · 2^n` operations.
#[derive(Clone, Debug)]
pub struct PauliAction {
    dim: usize,
    blocks: Vec<(usize, Vec<C64>)>,
}

impl PauliAction {
    fn new(sum: &PauliSum) -> Self {
        let dim = 1usize << sum.n_qubits;
        let mut blocks: BTreeMap<usize, Vec<C64>> = BTreeMap::new();
        for t in &sum.terms {
            let (x, z, y) = t.masks();
            let phase = i_pow(y) * t.coefficient;
            let d = blocks.entry(x).or_insert_with(|| vec![C64::new(0.0, 0.0); dim]);
            for (k, dk) in d.iter_mut().enumerate() {
                if (k & z).count_ones() % 2 == 0 {
                    *dk += phase;
                } else {
                    *dk -= phase;
                }
            }
        }
        PauliAction { dim, blocks: blocks.into_iter().collect() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `out = H v`.
    pub fn apply_into(&self, v: &[C64], out: &mut [C64]) {
        assert_eq!(v.len(), self.dim);
        assert_eq!(out.len(), self.dim);
        out.iter_mut().for_each(|o| *o = C64::new(0.0, 0.0));
        for (x, d) in &self.blocks {
            let x = *x;
            for k in 0..self.dim {
                out[k ^ x] += d[k] * v[k];
            }
        }
    }

    /// Sum of the largest diagonal moduli of each block; bounds `‖H‖₂`.
    pub fn norm_bound(&self) -> f64 {
        self.blocks
            .iter()
            .map(|(_, d)| d.iter().fold(0.0f64, |m, z| m.max(z.norm())))
            .sum()
    }
}

/// The six encoded operators of the three-qubit teleportation frame.
#[derive(Clone, Debug)]
pub struct LogicalFrame {
    /// `X̄₁, X̄₂, X̄₃`.
    pub x: [PauliTerm; 3],
    /// `Z̄₁, Z̄₂, Z̄₃`.
    pub z: [PauliTerm; 3],
}

impl LogicalFrame {
    /// `X̄₁=XXX, X̄₂=IXX, X̄₃=XXI, Z̄₁=ZZZ, Z̄₂=ZZI, Z̄₃=IZZ`.
    pub fn standard() -> Self {
        let p = |s: &str| PauliTerm::parse(s, 1.0).expect("static label");
        LogicalFrame {
            x: [p("XXX"), p("IXX"), p("XXI")],
            z: [p("ZZZ"), p("ZZI"), p("IZZ")],
        }
    }

    /// Pairs `(i, j)` (1-based) where `X̄_i, Z̄_j` violate "anticommute iff
    /// i = j", checked at matrix level.
    pub fn anticommutation_violations(&self) -> Vec<(usize, usize)> {
        let mut bad = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                let a = self.x[i].realize();
                let b = self.z[j].realize();
                let anti = a.anticommutator(&b).expect("same size").max_abs() < 1e-12;
                let comm = a.commutator(&b).expect("same size").max_abs() < 1e-12;
                let ok = if i == j { anti && !comm } else { comm && !anti };
                if !ok {
                    bad.push((i + 1, j + 1));
                }
            }
        }
        // Same-type operators must all commute.
        for i in 0..3 {
            for j in (i + 1)..3 {
                for ops in [&self.x, &self.z] {
                    let c = ops[i].realize().commutator(&ops[j].realize()).expect("same size");
                    if c.max_abs() >= 1e-12 {
                        bad.push((i + 1, j + 1));
                    }
                }
            }
        }
        bad
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::spectrum;
    use proptest::prelude::*;

    /// Kronecker-product realization, independent of the mask arithmetic.
    fn kron_realize(term: &PauliTerm) -> Operator {
        let mut m = DMatrix::<C64>::identity(1, 1);
        for p in term.letters() {
            m = m.kronecker(&p.matrix());
        }
        Operator::new(m * C64::new(term.coefficient(), 0.0)).unwrap()
    }

    fn all_terms(n: usize) -> Vec<PauliTerm> {
        let letters = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
        (0..4usize.pow(n as u32))
            .map(|mut k| {
                let mut v = vec![Pauli::I; n];
                for slot in v.iter_mut().rev() {
                    *slot = letters[k % 4];
                    k /= 4;
                }
                PauliTerm::new(v, 1.0).unwrap()
            })
            .collect()
    }

    #[test]
    fn parse_logical_x3() {
        let t = PauliTerm::parse("XXI", 1.0).unwrap();
        assert_eq!(t.letters(), &[Pauli::X, Pauli::X, Pauli::I]);
        assert_eq!(t, LogicalFrame::standard().x[2]);
    }

    #[test]
    fn parse_identity() {
        let t = PauliTerm::parse("III", 1.0).unwrap();
        assert_eq!(t.weight(), 0);
        assert_eq!(t.realize().max_abs_diff(&Operator::identity(3)).unwrap(), 0.0);
    }

    #[test]
    fn parse_error_names_position() {
        match PauliTerm::parse("XQZ", 1.0) {
            Err(Error::Parse { position, found }) => {
                assert_eq!(position, 2);
                assert_eq!(found, 'Q');
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn non_finite_coefficient_rejected() {
        assert!(PauliTerm::parse("X", f64::NAN).is_err());
        assert!(PauliTerm::parse("X", f64::INFINITY).is_err());
        assert!(PauliTerm::parse("", 1.0).is_err());
    }

    #[test]
    fn realize_single_z() {
        let s = PauliSum::from_labels(1, &[("Z", 1.0)]).unwrap();
        let m = s.realize().unwrap();
        let expect = Operator::diagonal(&[1.0, -1.0]).unwrap();
        assert_eq!(m.max_abs_diff(&expect).unwrap(), 0.0);
    }

    #[test]
    fn realize_teleport_initial_spectrum() {
        let s = PauliSum::from_labels(3, &[("IXX", -1.0), ("IZZ", -1.0)]).unwrap();
        let spec = spectrum(&s.realize().unwrap()).unwrap();
        let expect = [-2.0, -2.0, 0.0, 0.0, 0.0, 0.0, 2.0, 2.0];
        for (e, x) in spec.eigenvalues().iter().zip(expect) {
            assert!((e - x).abs() < 1e-12, "{e} vs {x}");
        }
    }

    #[test]
    fn realize_empty_is_structural_error() {
        assert!(matches!(PauliSum::empty(2).realize(), Err(Error::Structural(_))));
    }

    #[test]
    fn mismatched_lengths_rejected() {
        let err = PauliSum::from_labels(3, &[("XX", 1.0), ("ZZZ", 1.0)]);
        assert!(matches!(err, Err(Error::Structural(_))));
    }

    #[test]
    fn masks_agree_with_kronecker() {
        for t in all_terms(3) {
            let d = t.realize().max_abs_diff(&kron_realize(&t)).unwrap();
            assert_eq!(d, 0.0, "{}", t.label());
        }
    }

    #[test]
    fn commutes_examples() {
        let p = |s| PauliTerm::parse(s, 1.0).unwrap();
        assert!(p("IXX").commutes_with(&p("IZZ")).unwrap());
        assert!(!p("XXX").commutes_with(&p("ZZZ")).unwrap());
        assert!(!p("XXI").commutes_with(&p("IZZ")).unwrap());
        assert!(p("XX").commutes_with(&p("XXX")).is_err());
    }

    #[test]
    fn commutes_matches_matrix_commutator_exhaustively() {
        let terms = all_terms(3);
        let mats: Vec<Operator> = terms.iter().map(|t| t.realize()).collect();
        for (a, ma) in terms.iter().zip(&mats) {
            for (b, mb) in terms.iter().zip(&mats) {
                let zero = ma.commutator(mb).unwrap().max_abs() < 1e-12;
                assert_eq!(a.commutes_with(b).unwrap(), zero, "{} {}", a.label(), b.label());
            }
        }
    }

    #[test]
    fn multiply_matches_matrix_product() {
        let terms = all_terms(2);
        for a in &terms {
            for b in &terms {
                let (phase, c) = a.multiply(b).unwrap();
                let lhs = &a.realize() * &b.realize();
                let rhs = Operator::new(c.realize().into_matrix() * phase).unwrap();
                assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-15);
            }
        }
    }

    #[test]
    fn logical_frame_pattern() {
        assert!(LogicalFrame::standard().anticommutation_violations().is_empty());
    }

    #[test]
    fn corrupted_frame_detected() {
        let mut f = LogicalFrame::standard();
        f.x[1] = PauliTerm::parse("IXZ", 1.0).unwrap();
        assert!(!f.anticommutation_violations().is_empty());
    }

    #[test]
    fn projection_recovers_sum() {
        let s = PauliSum::from_labels(3, &[("XZI", 0.5), ("IYY", -1.25), ("ZZZ", 2.0)]).unwrap();
        let back = PauliSum::from_operator(&s.realize().unwrap(), PROJECTION_TOL).unwrap();
        assert_eq!(back, s.simplified(PROJECTION_TOL));
    }

    #[test]
    fn projection_rejects_non_hermitian() {
        let mut m = DMatrix::<C64>::zeros(2, 2);
        m[(0, 1)] = C64::new(1.0, 0.0);
        let op = Operator::new(m).unwrap();
        assert!(matches!(PauliSum::from_operator(&op, 1e-12), Err(Error::Consistency(_))));
    }

    #[test]
    fn serde_as_label_pairs() {
        let s = PauliSum::from_labels(2, &[("XZ", -1.0)]).unwrap();
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"n_qubits":2,"terms":[["XZ",-1.0]]}"#);
        let bad = r#"{"n_qubits":2,"terms":[["XA",1.0]]}"#;
        assert!(serde_json::from_str::<PauliSum>(bad).is_err());
    }

    fn arb_sum(n: usize) -> impl Strategy<Value = PauliSum> {
        let letter = prop_oneof![Just(Pauli::I), Just(Pauli::X), Just(Pauli::Y), Just(Pauli::Z)];
        let term = (prop::collection::vec(letter, n), -3.0f64..3.0)
            .prop_map(|(l, c)| PauliTerm::new(l, c).unwrap());
        prop::collection::vec(term, 1..8).prop_map(move |t| PauliSum::new(n, t).unwrap())
    }

    proptest! {
        #[test]
        fn realized_sums_are_hermitian(s in (1usize..5).prop_flat_map(arb_sum)) {
            prop_assert!(s.realize().unwrap().hermiticity_defect() < 1e-12);
        }

        #[test]
        fn sparse_action_matches_dense(s in (1usize..5).prop_flat_map(arb_sum), seed in 0u64..1000) {
            let dim = 1usize << s.n_qubits();
            let v: Vec<C64> = (0..dim)
                .map(|k| C64::new(((k as u64 * 7 + seed) % 11) as f64 - 5.0, ((k as u64 * 3 + seed) % 5) as f64))
                .collect();
            let mut out = vec![C64::new(0.0, 0.0); dim];
            s.action().apply_into(&v, &mut out);
            let dense = s.realize().unwrap().apply(&nalgebra::DVector::from_vec(v)).unwrap();
            for (a, b) in out.iter().zip(dense.iter()) {
                prop_assert!((a - b).norm() < 1e-12);
            }
        }
    }
}
