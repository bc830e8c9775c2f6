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

//! Dense complex operators on `2^n`-dimensional qubit registers.

use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{structural, Result};

pub type C64 = Complex64;

/// Dense square complex matrix whose dimension is a power of two.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    matrix: DMatrix<C64>,
}

impl Operator {
    /// Wraps a square matrix; fails if it is not square with power-of-two
    /// dimension.
    pub fn new(matrix: DMatrix<C64>) -> Result<Self> {
        let (r, c) = matrix.shape();
        if r != c {
            return Err(structural(format!("operator must be square, got {r}x{c}")));
        }
        if r == 0 || !r.is_power_of_two() {
            return Err(structural(format!("operator dimension {r} is not a power of two")));
        }
        Ok(Operator { matrix })
    }

    pub(crate) fn from_matrix_unchecked(matrix: DMatrix<C64>) -> Self {
        debug_assert!(matrix.is_square() && matrix.nrows().is_power_of_two());
        Operator { matrix }
    }

    pub fn zeros(n_qubits: usize) -> Self {
        let d = 1usize << n_qubits;
        Operator { matrix: DMatrix::zeros(d, d) }
    }

    pub fn identity(n_qubits: usize) -> Self {
        let d = 1usize << n_qubits;
        Operator { matrix: DMatrix::identity(d, d) }
    }

    /// Real diagonal operator.
    pub fn diagonal(entries: &[f64]) -> Result<Self> {
        let v = DVector::from_iterator(entries.len(), entries.iter().map(|&e| C64::new(e, 0.0)));
        Operator::new(DMatrix::from_diagonal(&v))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn n_qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.matrix
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.matrix[(row, col)]
    }

    pub fn adjoint(&self) -> Operator {
        Operator { matrix: self.matrix.adjoint() }
    }

    pub fn scale(&self, c: f64) -> Operator {
        Operator { matrix: &self.matrix * C64::new(c, 0.0) }
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.matrix.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// Largest modulus among the off-diagonal entries.
    pub fn max_off_diagonal(&self) -> f64 {
        let d = self.dim();
        let mut m = 0.0f64;
        for c in 0..d {
            for r in 0..d {
                if r != c {
                    m = m.max(self.matrix[(r, c)].norm());
                }
            }
        }
        m
    }

    /// `max |A - A^†|` over all entries.
    pub fn hermiticity_defect(&self) -> f64 {
        let d = self.dim();
        let mut m = 0.0f64;
        for c in 0..d {
            for r in 0..=c {
                m = m.max((self.matrix[(r, c)] - self.matrix[(c, r)].conj()).norm());
            }
        }
        m
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// `max |U^† U - 1|`.
    pub fn unitarity_defect(&self) -> f64 {
        let p = self.matrix.adjoint() * &self.matrix;
        let d = self.dim();
        let mut m = 0.0f64;
        for c in 0..d {
            for r in 0..d {
                let target = if r == c { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
                m = m.max((p[(r, c)] - target).norm());
            }
        }
        m
    }

    pub fn commutator(&self, other: &Operator) -> Result<Operator> {
        self.check_same_dim(other)?;
        Ok(Operator { matrix: &self.matrix * &other.matrix - &other.matrix * &self.matrix })
    }

    pub fn anticommutator(&self, other: &Operator) -> Result<Operator> {
        self.check_same_dim(other)?;
        Ok(Operator { matrix: &self.matrix * &other.matrix + &other.matrix * &self.matrix })
    }

    /// `max |A - B|` over all entries.
    pub fn max_abs_diff(&self, other: &Operator) -> Result<f64> {
        self.check_same_dim(other)?;
        Ok(self
            .matrix
            .iter()
            .zip(other.matrix.iter())
            .fold(0.0, |m, (a, b)| m.max((a - b).norm())))
    }

    /// Unitary similarity `U A U^†`.
    pub fn conjugated_by(&self, unitary: &Operator) -> Result<Operator> {
        self.check_same_dim(unitary)?;
        Ok(Operator { matrix: &unitary.matrix * &self.matrix * unitary.matrix.adjoint() })
    }

    pub fn apply(&self, v: &DVector<C64>) -> Result<DVector<C64>> {
        if v.len() != self.dim() {
            return Err(structural(format!(
                "vector of length {} does not match operator dimension {}",
                v.len(),
                self.dim()
            )));
        }
        Ok(&self.matrix * v)
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    /// Tensor product `self ⊗ other` (self on the more significant qubits).
    pub fn kron(&self, other: &Operator) -> Operator {
        Operator { matrix: self.matrix.kronecker(&other.matrix) }
    }

    fn check_same_dim(&self, other: &Operator) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(structural(format!(
                "operator dimensions differ: {} vs {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(())
    }
}

impl Mul for &Operator {
    type Output = Operator;

    /// Panics on a dimension mismatch, like matrix multiplication in nalgebra.
    fn mul(self, rhs: &Operator) -> Operator {
        Operator { matrix: &self.matrix * &rhs.matrix }
    }
}

impl Add for &Operator {
    type Output = Operator;

    fn add(self, rhs: &Operator) -> Operator {
        Operator { matrix: &self.matrix + &rhs.matrix }
    }
}

impl Sub for &Operator {
    type Output = Operator;

    fn sub(self, rhs: &Operator) -> Operator {
        Operator { matrix: &self.matrix - &rhs.matrix }
    }
}

/// Dense representation of a small gate (`2^k x 2^k`) acting on `targets`
/// of an `n_qubits` register. Qubits are 1-based; `targets[0]` is the most
/// significant index of the gate matrix.
pub fn embed_gate(gate: &DMatrix<C64>, targets: &[usize], n_qubits: usize) -> Result<Operator> {
    let k = targets.len();
    if gate.nrows() != 1 << k || gate.ncols() != 1 << k {
        return Err(structural(format!(
            "gate of size {}x{} does not act on {k} qubit(s)",
            gate.nrows(),
            gate.ncols()
        )));
    }
    for (i, &t) in targets.iter().enumerate() {
        if t == 0 || t > n_qubits {
            return Err(crate::Error::Index(format!(
                "gate target {t} outside 1..={n_qubits}"
            )));
        }
        if targets[..i].contains(&t) {
            return Err(crate::Error::Index(format!("gate target {t} repeated")));
        }
    }
    let bit = |q: usize| n_qubits - q;
    let dim = 1usize << n_qubits;
    let target_mask: usize = targets.iter().map(|&q| 1usize << bit(q)).sum();
    let local_index = |basis: usize| {
        targets
            .iter()
            .fold(0usize, |acc, &q| (acc << 1) | ((basis >> bit(q)) & 1))
    };
    let scatter = |rest: usize, local: usize| {
        targets.iter().enumerate().fold(rest, |acc, (i, &q)| {
            acc | (((local >> (k - 1 - i)) & 1) << bit(q))
        })
    };
    let mut m = DMatrix::<C64>::zeros(dim, dim);
    for col in 0..dim {
        let rest = col & !target_mask;
        let lc = local_index(col);
        for lr in 0..(1 << k) {
            let amp = gate[(lr, lc)];
            if amp != C64::new(0.0, 0.0) {
                m[(scatter(rest, lr), col)] += amp;
            }
        }
    }
    Ok(Operator { matrix: m })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn rejects_non_power_of_two() {
        assert!(Operator::new(DMatrix::zeros(3, 3)).is_err());
        assert!(Operator::new(DMatrix::zeros(2, 4)).is_err());
        assert!(Operator::new(DMatrix::zeros(4, 4)).is_ok());
    }

    #[test]
    fn embed_single_qubit_matches_kron() {
        let x = DMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]);
        let id = Operator::identity(1);
        let xo = Operator::new(x.clone()).unwrap();
        // X on qubit 2 of 3 = I ⊗ X ⊗ I
        let expect = id.kron(&xo).kron(&id);
        let got = embed_gate(&x, &[2], 3).unwrap();
        assert_eq!(got.max_abs_diff(&expect).unwrap(), 0.0);
    }

    #[test]
    fn embed_respects_target_order() {
        // CNOT with control first
        let mut cnot = DMatrix::<C64>::zeros(4, 4);
        cnot[(0, 0)] = c(1., 0.);
        cnot[(1, 1)] = c(1., 0.);
        cnot[(3, 2)] = c(1., 0.);
        cnot[(2, 3)] = c(1., 0.);
        let forward = embed_gate(&cnot, &[1, 2], 2).unwrap();
        let reversed = embed_gate(&cnot, &[2, 1], 2).unwrap();
        // |10> -> |11> when control is qubit 1
        assert_eq!(forward.get(3, 2), c(1., 0.));
        // |01> -> |11> when control is qubit 2
        assert_eq!(reversed.get(3, 1), c(1., 0.));
    }

    #[test]
    fn embed_rejects_bad_targets() {
        let x = DMatrix::<C64>::identity(2, 2);
        assert!(embed_gate(&x, &[0], 2).is_err());
        assert!(embed_gate(&x, &[3], 2).is_err());
        let cz = DMatrix::<C64>::identity(4, 4);
        assert!(embed_gate(&cz, &[1, 1], 2).is_err());
    }
}
