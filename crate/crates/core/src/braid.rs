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

//! The braiding gate `R`, the generators `σᵢ = I^{⊗(i−1)} ⊗ R ⊗ I^{⊗(n−i−1)}`
//! and numerical checks of the Yang–Baxter and braid-group relations.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{kron, matmul, max_abs_diff, DenseMatrix, StateVector, C64, MAX_QUBITS};

/// Largest qubit count for which `2ⁿ × 2ⁿ` operators are materialized.
pub const DENSE_QUBIT_CAP: usize = 12;
/// Largest qubit count accepted by the matrix-free paths.
pub const MATRIX_FREE_QUBIT_CAP: usize = 20;

const PAR_KERNEL_LEN: usize = 1 << 14;

/// The fixed real orthogonal braiding gate
///
/// ```text
///        1  [ 1  0  0  1 ]
/// R =   --- [ 0  1 -1  0 ]
///       √2  [ 0  1  1  0 ]
///           [-1  0  0  1 ]
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct RGate {
    matrix: DenseMatrix,
}

impl Default for RGate {
    fn default() -> Self {
        Self::new()
    }
}

impl RGate {
    pub fn new() -> Self {
        let matrix = DenseMatrix::from_real(
            4,
            4,
            &[
                1.0, 0.0, 0.0, 1.0, //
                0.0, 1.0, -1.0, 0.0, //
                0.0, 1.0, 1.0, 0.0, //
                -1.0, 0.0, 0.0, 1.0,
            ],
        )
        .expect("4x4 literal")
        .scale(C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
        RGate { matrix }
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    /// `R⁻¹`, which equals `Rᵀ` because `R` is real orthogonal.
    pub fn inverse(&self) -> DenseMatrix {
        self.matrix.transpose()
    }

    pub fn power(&self, sign: Sign) -> DenseMatrix {
        match sign {
            Sign::Positive => self.matrix.clone(),
            Sign::Negative => self.inverse(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

/// One Artin generator `σᵢ` (positive) or `σᵢ⁻¹` (negative) acting on
/// strands `i` and `i + 1`, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Generator {
    pub index: usize,
    pub sign: Sign,
}

impl Generator {
    pub fn new(index: usize, sign: Sign) -> Self {
        Generator { index, sign }
    }

    pub fn positive(index: usize) -> Self {
        Generator::new(index, Sign::Positive)
    }

    pub fn negative(index: usize) -> Self {
        Generator::new(index, Sign::Negative)
    }

    pub fn inverse(self) -> Self {
        Generator::new(self.index, self.sign.flip())
    }

    pub fn is_inverse_of(self, other: Generator) -> bool {
        self.index == other.index && self.sign != other.sign
    }

    /// Checks `1 ≤ index ≤ strands − 1`.
    pub fn check(self, strands: usize) -> Result<()> {
        if strands < 2 || self.index == 0 || self.index >= strands {
            return Err(Error::OutOfRange {
                what: "generator index",
                value: self.index,
                min: 1,
                max: strands.saturating_sub(1),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Positive => write!(f, "s{}", self.index),
            Sign::Negative => write!(f, "s{}'", self.index),
        }
    }
}

/// Dense `2ⁿ × 2ⁿ` matrix of a generator on `n` qubits.
pub fn sigma_dense(gen: Generator, n: usize) -> Result<DenseMatrix> {
    sigma_dense_from(&RGate::new().power(gen.sign), gen.index, n)
}

/// `I^{⊗(i−1)} ⊗ gate ⊗ I^{⊗(n−i−1)}` for an arbitrary 4×4 two-qubit gate.
pub fn sigma_dense_from(gate: &DenseMatrix, index: usize, n: usize) -> Result<DenseMatrix> {
    if gate.rows() != 4 || gate.cols() != 4 {
        return Err(Error::Dimension(format!(
            "two-qubit gate must be 4x4, got {}x{}",
            gate.rows(),
            gate.cols()
        )));
    }
    if n > DENSE_QUBIT_CAP {
        return Err(Error::Size {
            what: "dense generator (use the matrix-free path)",
            requested: n,
            cap: DENSE_QUBIT_CAP,
        });
    }
    Generator::positive(index).check(n)?;
    let left = DenseMatrix::identity(1 << (index - 1));
    let right = DenseMatrix::identity(1 << (n - index - 1));
    kron(&kron(&left, gate)?, &right)
}

/// Work done by one matrix-free generator application.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct KernelStats {
    /// Number of 4-amplitude groups transformed.
    pub groups: usize,
    /// Complex-by-real scalar multiplications performed.
    pub scalar_multiplies: usize,
}

/// Applies a generator to `psi` without materializing its matrix.
pub fn apply_generator(psi: &StateVector, gen: Generator) -> Result<StateVector> {
    let mut out = psi.clone();
    apply_generator_in_place(&mut out, gen)?;
    Ok(out)
}

/// In-place matrix-free generator application.
///
/// For pair `(i, i+1)` the four amplitudes whose indices differ only in
/// those two bits form the local vector `(x₀₀, x₀₁, x₁₀, x₁₁)`, bit `i`
/// being the more significant one, and are replaced by `R·x` (or `Rᵀ·x`).
/// Each amplitude is read and written once.
pub fn apply_generator_in_place(psi: &mut StateVector, gen: Generator) -> Result<KernelStats> {
    let n = psi.n_qubits();
    gen.check(n)?;
    let stride = 1usize << (n - gen.index - 1);
    let groups = pair_kernel(psi.amplitudes_mut(), stride, gen.sign);
    Ok(KernelStats {
        groups,
        scalar_multiplies: 4 * groups,
    })
}

#[inline(always)]
fn transform(x0: &mut C64, x1: &mut C64, x2: &mut C64, x3: &mut C64, sign: Sign) {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let (a, b, cc, d) = (*x0, *x1, *x2, *x3);
    match sign {
        // rows of R
        Sign::Positive => {
            *x0 = (a + d) * h;
            *x1 = (b - cc) * h;
            *x2 = (b + cc) * h;
            *x3 = (d - a) * h;
        }
        // rows of Rᵀ
        Sign::Negative => {
            *x0 = (a - d) * h;
            *x1 = (b + cc) * h;
            *x2 = (cc - b) * h;
            *x3 = (a + d) * h;
        }
    }
}

fn transform_block(block: &mut [C64], stride: usize, sign: Sign, parallel: bool) -> usize {
    let (q0, rest) = block.split_at_mut(stride);
    let (q1, rest) = rest.split_at_mut(stride);
    let (q2, q3) = rest.split_at_mut(stride);
    if parallel {
        q0.par_iter_mut()
            .zip(q1.par_iter_mut())
            .zip(q2.par_iter_mut())
            .zip(q3.par_iter_mut())
            .for_each(|(((a, b), cc), d)| transform(a, b, cc, d, sign));
    } else {
        for (((a, b), cc), d) in q0
            .iter_mut()
            .zip(q1.iter_mut())
            .zip(q2.iter_mut())
            .zip(q3.iter_mut())
        {
            transform(a, b, cc, d, sign);
        }
    }
    stride
}

fn pair_kernel(amps: &mut [C64], stride: usize, sign: Sign) -> usize {
    let block = 4 * stride;
    if amps.len() < PAR_KERNEL_LEN {
        return amps
            .chunks_mut(block)
            .map(|b| transform_block(b, stride, sign, false))
            .sum();
    }
    // Groups are disjoint; split over blocks when there are enough of them,
    // otherwise inside each block.
    if amps.len() / block >= rayon::current_num_threads() {
        amps.par_chunks_mut(block)
            .map(|b| transform_block(b, stride, sign, false))
            .sum()
    } else {
        amps.chunks_mut(block)
            .map(|b| transform_block(b, stride, sign, true))
            .sum()
    }
}

/// Residual of `(R⊗I)(I⊗R)(R⊗I) = (I⊗R)(R⊗I)(I⊗R)` for the default gate.
pub fn verify_yang_baxter() -> f64 {
    verify_yang_baxter_with(RGate::new().matrix()).expect("R is 4x4")
}

/// Yang–Baxter residual for an arbitrary 4×4 gate.
pub fn verify_yang_baxter_with(gate: &DenseMatrix) -> Result<f64> {
    let s1 = sigma_dense_from(gate, 1, 3)?;
    let s2 = sigma_dense_from(gate, 2, 3)?;
    let lhs = matmul(&matmul(&s1, &s2)?, &s1)?;
    let rhs = matmul(&matmul(&s2, &s1)?, &s2)?;
    max_abs_diff(&lhs, &rhs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `σᵢσⱼ = σⱼσᵢ` for `|i − j| > 1`.
    FarCommutation,
    /// `σᵢσⱼσᵢ = σⱼσᵢσⱼ` for `|i − j| = 1`.
    Braid,
    /// `σᵢσᵢ⁻¹ = σᵢ⁻¹σᵢ = I`; `j` repeats `i`.
    Inverse,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::FarCommutation => "commutation",
            Relation::Braid => "braid",
            Relation::Inverse => "inverse",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RelationResidual {
    pub relation: Relation,
    pub i: usize,
    pub j: usize,
    /// Largest Euclidean distance between both sides over all trial states.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArtinReport {
    pub n_qubits: usize,
    pub trials: usize,
    pub seed: u64,
    pub residuals: Vec<RelationResidual>,
}

impl ArtinReport {
    pub fn max_residual(&self, relation: Relation) -> f64 {
        self.residuals
            .iter()
            .filter(|r| r.relation == relation)
            .map(|r| r.residual)
            .fold(0.0, f64::max)
    }

    pub fn worst(&self) -> f64 {
        self.residuals
            .iter()
            .map(|r| r.residual)
            .fold(0.0, f64::max)
    }

    pub fn residual(&self, relation: Relation, i: usize, j: usize) -> Option<f64> {
        self.residuals
            .iter()
            .find(|r| r.relation == relation && r.i == i && r.j == j)
            .map(|r| r.residual)
    }
}

fn apply_word(psi: &StateVector, gens: &[Generator]) -> StateVector {
    // rightmost factor acts first
    let mut out = psi.clone();
    for &g in gens.iter().rev() {
        apply_generator_in_place(&mut out, g).expect("generator checked by caller");
    }
    out
}

/// Checks every braid-group relation on `n` qubits over `trials` random
/// normalized states drawn from `seed`, entirely matrix-free.
pub fn verify_artin_relations(n: usize, trials: usize, seed: u64) -> Result<ArtinReport> {
    if n < 3 {
        return Err(Error::Argument(format!(
            "braid relations need at least 3 qubits, got {n}"
        )));
    }
    if n > MATRIX_FREE_QUBIT_CAP.min(MAX_QUBITS) {
        return Err(Error::Size {
            what: "relation check",
            requested: n,
            cap: MATRIX_FREE_QUBIT_CAP,
        });
    }
    if trials == 0 {
        return Err(Error::Argument("at least one trial is required".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let states = (0..trials)
        .map(|_| StateVector::random(n, &mut rng))
        .collect::<Result<Vec<_>>>()?;

    let mut checks: Vec<(Relation, usize, usize)> = Vec::new();
    for i in 1..n {
        checks.push((Relation::Inverse, i, i));
    }
    for i in 1..n {
        for j in i + 1..n {
            let rel = if j - i == 1 {
                Relation::Braid
            } else {
                Relation::FarCommutation
            };
            checks.push((rel, i, j));
        }
    }

    let residuals = checks
        .into_iter()
        .map(|(relation, i, j)| {
            let (si, sj) = (Generator::positive(i), Generator::positive(j));
            let residual = states
                .par_iter()
                .map(|psi| match relation {
                    Relation::FarCommutation => apply_word(psi, &[si, sj])
                        .distance(&apply_word(psi, &[sj, si]))
                        .expect("same length"),
                    Relation::Braid => apply_word(psi, &[si, sj, si])
                        .distance(&apply_word(psi, &[sj, si, sj]))
                        .expect("same length"),
                    Relation::Inverse => {
                        let a = apply_word(psi, &[si, si.inverse()]).distance(psi);
                        let b = apply_word(psi, &[si.inverse(), si]).distance(psi);
                        a.expect("same length").max(b.expect("same length"))
                    }
                })
                .reduce(|| 0.0, f64::max);
            RelationResidual {
                relation,
                i,
                j,
                residual,
            }
        })
        .collect();

    Ok(ArtinReport {
        n_qubits: n,
        trials,
        seed,
        residuals,
    })
}
