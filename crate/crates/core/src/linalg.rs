// Copyright 2026 The braidq Authors
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

//! Small dense complex linear algebra.
//!
//! Matrices are row-major. State vectors follow the big-endian qubit
//! convention: qubit 1 is the most significant bit of the basis index, so
//! `|0…0⟩` sits at index 0 and `|1…1⟩` at index `2ⁿ − 1`.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Largest qubit count any dimension may reach.
pub const MAX_QUBITS: usize = 24;
/// Equality tolerance for exact constructions (gates, Bell amplitudes).
pub const CONSTRUCTION_TOL: f64 = 1e-12;
/// Equality tolerance for quantities that pass through an eigensolver.
pub const EIGEN_TOL: f64 = 1e-9;
/// Maximum |m − m†| accepted as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Eigenvalues closer than this to zero are replaced by exactly zero.
pub const ZERO_CLAMP: f64 = 1e-10;
/// Eigenvalues below this make a PSD square root undefined.
pub const NEGATIVE_EIGEN_LIMIT: f64 = -1e-8;
/// Sweep cap of the Jacobi eigensolver.
pub const JACOBI_MAX_SWEEPS: usize = 100;

const PAR_MATMUL_WORK: usize = 1 << 18;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!("empty {rows}x{cols} matrix")));
        }
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(DenseMatrix { rows, cols, data })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::from_vec(rows, cols, entries.iter().map(|&x| c(x, 0.0)).collect())
    }

    pub fn from_diagonal(diag: &[C64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn scale(&self, factor: C64) -> Self {
        self.map(|z| z * factor)
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn add(&self, other: &DenseMatrix) -> Result<Self> {
        same_shape(self, other)?;
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &DenseMatrix) -> Result<Self> {
        same_shape(self, other)?;
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Matrix-vector product on a state of matching dimension.
    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        if self.cols != psi.len() || self.rows != psi.len() {
            return Err(Error::Dimension(format!(
                "{}x{} matrix applied to a state of length {}",
                self.rows,
                self.cols,
                psi.len()
            )));
        }
        let amps = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(psi.amplitudes())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect();
        StateVector::from_amplitudes(amps)
    }

    /// Maximum entrywise deviation of `self.dagger() * self` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let prod = matmul(&dagger(self), self).expect("square shapes agree");
        max_abs_diff(&prod, &DenseMatrix::identity(self.rows)).expect("same shape")
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }

    /// Maximum entrywise |m − m†|.
    pub fn hermiticity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = C64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

fn same_shape(a: &DenseMatrix, b: &DenseMatrix) -> Result<()> {
    if a.rows != b.rows || a.cols != b.cols {
        return Err(Error::Dimension(format!(
            "{}x{} vs {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    Ok(())
}

/// Pure n-qubit state: `2ⁿ` amplitudes, qubit 1 most significant.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<C64>,
}

impl StateVector {
    /// Computational basis state with a 1 at zero-based `index`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        check_qubits(n_qubits)?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::OutOfRange {
                what: "basis index",
                value: index,
                min: 0,
                max: dim - 1,
            });
        }
        let mut amps = vec![ZERO; dim];
        amps[index] = ONE;
        Ok(StateVector { n_qubits, amps })
    }

    pub fn from_amplitudes(amps: Vec<C64>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::Dimension(format!(
                "state length {len} is not 2^n with n >= 1"
            )));
        }
        let n_qubits = len.trailing_zeros() as usize;
        check_qubits(n_qubits)?;
        Ok(StateVector { n_qubits, amps })
    }

    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::from_amplitudes(amps.iter().map(|&x| c(x, 0.0)).collect())
    }

    /// Haar-distributed random normalized state.
    pub fn random<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> Result<Self> {
        check_qubits(n_qubits)?;
        let amps = (0..1usize << n_qubits)
            .map(|_| {
                c(
                    rng.sample::<f64, _>(StandardNormal),
                    rng.sample::<f64, _>(StandardNormal),
                )
            })
            .collect();
        let mut psi = StateVector { n_qubits, amps };
        psi.normalize();
        Ok(psi)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [C64] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    pub fn normalize(&mut self) {
        let norm = self.norm();
        if norm > 0.0 {
            self.amps.iter_mut().for_each(|z| *z /= norm);
        }
    }

    pub fn conj(&self) -> Self {
        StateVector {
            n_qubits: self.n_qubits,
            amps: self.amps.iter().map(|z| z.conj()).collect(),
        }
    }

    /// `⟨self|other⟩`, conjugating `self`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        if self.len() != other.len() {
            return Err(Error::Dimension(format!(
                "inner product of states with {} and {} amplitudes",
                self.len(),
                other.len()
            )));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Euclidean distance to `other`.
    pub fn distance(&self, other: &StateVector) -> Result<f64> {
        if self.len() != other.len() {
            return Err(Error::Dimension(format!(
                "distance between states with {} and {} amplitudes",
                self.len(),
                other.len()
            )));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }
}

fn check_qubits(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Argument("a state needs at least one qubit".into()));
    }
    if n > MAX_QUBITS {
        return Err(Error::Size {
            what: "state vector",
            requested: n,
            cap: MAX_QUBITS,
        });
    }
    Ok(())
}

/// Kronecker product; entry `[(i·b.rows + k), (j·b.cols + l)] = a[i,j]·b[k,l]`.
pub fn kron(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    let limit = 1usize << MAX_QUBITS;
    let rows = a.rows.checked_mul(b.rows).filter(|&r| r <= limit);
    let cols = a.cols.checked_mul(b.cols).filter(|&c| c <= limit);
    let (rows, cols) = match (rows, cols) {
        (Some(r), Some(c)) => (r, c),
        _ => {
            return Err(Error::Size {
                what: "kronecker product",
                requested: (a.rows.max(a.cols) as f64 * b.rows.max(b.cols) as f64)
                    .log2()
                    .ceil() as usize,
                cap: MAX_QUBITS,
            })
        }
    };
    let mut out = DenseMatrix::zeros(rows, cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let aij = a[(i, j)];
            if aij == ZERO {
                continue;
            }
            for k in 0..b.rows {
                let dst = (i * b.rows + k) * cols + j * b.cols;
                let src = b.row(k);
                for (o, &bkl) in out.data[dst..dst + b.cols].iter_mut().zip(src) {
                    *o = aij * bkl;
                }
            }
        }
    }
    Ok(out)
}

/// Standard matrix product. Zero entries of `a` are skipped, so products
/// with a sparse left factor cost proportionally less.
pub fn matmul(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    if a.cols != b.rows {
        return Err(Error::Dimension(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = DenseMatrix::zeros(a.rows, b.cols);
    let fill_row = |i: usize, out_row: &mut [C64]| {
        for (k, &aik) in a.row(i).iter().enumerate() {
            if aik == ZERO {
                continue;
            }
            for (o, &bkj) in out_row.iter_mut().zip(b.row(k)) {
                *o += aik * bkj;
            }
        }
    };
    if a.rows * a.cols * b.cols >= PAR_MATMUL_WORK {
        out.data
            .par_chunks_mut(b.cols)
            .enumerate()
            .for_each(|(i, row)| fill_row(i, row));
    } else {
        out.data
            .chunks_mut(b.cols)
            .enumerate()
            .for_each(|(i, row)| fill_row(i, row));
    }
    Ok(out)
}

/// Conjugate transpose.
pub fn dagger(m: &DenseMatrix) -> DenseMatrix {
    let mut t = DenseMatrix::zeros(m.cols, m.rows);
    for i in 0..m.rows {
        for j in 0..m.cols {
            t[(j, i)] = m[(i, j)].conj();
        }
    }
    t
}

/// Anything with a shape and a flat list of complex entries.
pub trait Entries {
    fn shape(&self) -> (usize, usize);
    fn entries(&self) -> &[C64];
}

impl Entries for DenseMatrix {
    fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    fn entries(&self) -> &[C64] {
        &self.data
    }
}

impl Entries for StateVector {
    fn shape(&self) -> (usize, usize) {
        (self.amps.len(), 1)
    }

    fn entries(&self) -> &[C64] {
        &self.amps
    }
}

/// Largest entrywise modulus of `a − b`.
pub fn max_abs_diff<T: Entries + ?Sized>(a: &T, b: &T) -> Result<f64> {
    if a.shape() != b.shape() {
        return Err(Error::Dimension(format!(
            "comparing shapes {:?} and {:?}",
            a.shape(),
            b.shape()
        )));
    }
    Ok(a.entries()
        .iter()
        .zip(b.entries())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max))
}

/// Eigen-decomposition of a Hermitian matrix: `m·V = V·diag(values)`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Real eigenvalues, descending.
    pub values: Vec<f64>,
    /// Unitary matrix whose columns are the matching eigenvectors.
    pub vectors: DenseMatrix,
}

/// Cyclic complex Jacobi eigensolver for Hermitian input.
///
/// Each rotation first removes the phase of the pivot `a[p][q]` and then
/// applies the real symmetric Jacobi rotation that annihilates it, so the
/// combined transform is `J = diag(1, e^{-iφ})·[[c, s], [-s, c]]` in the
/// `(p, q)` plane.
pub fn hermitian_eigen(m: &DenseMatrix) -> Result<HermitianEigen> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "eigen-decomposition of a non-square {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let defect = m.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::Contract(format!(
            "matrix is not Hermitian (max |m - m†| = {defect:e})"
        )));
    }
    let n = m.rows;
    // Start from the exactly Hermitian part.
    let mut a = DenseMatrix::zeros(n, n);
    for i in 0..n {
        a[(i, i)] = c(m[(i, i)].re, 0.0);
        for j in i + 1..n {
            let avg = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let mut v = DenseMatrix::identity(n);

    let frob = a.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let target = f64::EPSILON * frob;
    let off_norm = |a: &DenseMatrix| -> f64 {
        let mut s = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                s += 2.0 * a[(p, q)].norm_sqr();
            }
        }
        s.sqrt()
    };

    let mut converged = frob == 0.0;
    let mut sweeps = 0;
    while !converged {
        if off_norm(&a) <= target {
            converged = true;
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            break;
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                // Pivot negligible against both diagonal entries: drop it.
                if sweeps > 4 && mag * 1e18 < app.abs().min(aqq.abs()) {
                    a[(p, q)] = ZERO;
                    a[(q, p)] = ZERO;
                    continue;
                }
                let theta = (aqq - app) / (2.0 * mag);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sign / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let cs = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * cs;
                let phase = apq / mag;
                let j_pp = c(cs, 0.0);
                let j_pq = c(sn, 0.0);
                let j_qp = phase.conj() * (-sn);
                let j_qq = phase.conj() * cs;

                // A <- A·J (columns p, q), V <- V·J
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * j_pp + akq * j_qp;
                    a[(k, q)] = akp * j_pq + akq * j_qq;
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * j_pp + vkq * j_qp;
                    v[(k, q)] = vkp * j_pq + vkq * j_qq;
                }
                // A <- J†·A (rows p, q)
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = j_pp.conj() * apk + j_qp.conj() * aqk;
                    a[(q, k)] = j_pq.conj() * apk + j_qq.conj() * aqk;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = c(a[(p, p)].re, 0.0);
                a[(q, q)] = c(a[(q, q)].re, 0.0);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            sweeps,
            off_norm: off_norm(&a),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = DenseMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for k in 0..n {
            vectors[(k, dst)] = v[(k, src)];
        }
    }
    Ok(HermitianEigen { values, vectors })
}

/// Replaces values within [`ZERO_CLAMP`] of zero by exactly zero.
pub fn clamp_near_zero(x: f64) -> f64 {
    if x.abs() <= ZERO_CLAMP {
        0.0
    } else {
        x
    }
}

/// Reassembles `V·diag(f(λ))·V†` from an eigen-decomposition.
pub fn spectral_map(eig: &HermitianEigen, f: impl Fn(f64) -> f64) -> DenseMatrix {
    let n = eig.values.len();
    let weights: Vec<f64> = eig.values.iter().map(|&x| f(x)).collect();
    let v = &eig.vectors;
    let mut out = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let mut acc = ZERO;
            for (k, &w) in weights.iter().enumerate() {
                if w != 0.0 {
                    acc += v[(i, k)] * v[(j, k)].conj() * w;
                }
            }
            out[(i, j)] = acc;
            out[(j, i)] = acc.conj();
        }
        out[(i, i)] = c(out[(i, i)].re, 0.0);
    }
    out
}

/// Hermitian positive semidefinite square root.
///
/// Slightly negative eigenvalues down to [`NEGATIVE_EIGEN_LIMIT`] are treated
/// as round-off and clamped to zero.
pub fn psd_sqrt(m: &DenseMatrix) -> Result<DenseMatrix> {
    let eig = hermitian_eigen(m)?;
    if let Some(&min) = eig.values.last() {
        if min < NEGATIVE_EIGEN_LIMIT {
            return Err(Error::Contract(format!(
                "matrix is not positive semidefinite (eigenvalue {min:e})"
            )));
        }
    }
    Ok(spectral_map(&eig, |x| clamp_near_zero(x).max(0.0).sqrt()))
}
