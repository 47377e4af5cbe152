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

//! Density matrices, partial traces, concurrence and the partial-transpose
//! separability test.
//!
//! Qubits carry letter labels `A, B, C, …` in register order. Reduced
//! density matrices keep the labels of the retained qubits, so tracing `C`
//! out of an `ABC` state yields a matrix over `AB`.

use std::fmt;

use serde::Serialize;

use crate::braid::DENSE_QUBIT_CAP;
use crate::error::{Error, Result};
use crate::linalg::{
    c, clamp_near_zero, hermitian_eigen, kron, matmul, psd_sqrt, DenseMatrix, StateVector, C64,
    CONSTRUCTION_TOL, EIGEN_TOL, HERMITIAN_TOL, NEGATIVE_EIGEN_LIMIT,
};

/// Partial-transpose eigenvalues below this certify entanglement.
pub const PPT_THRESHOLD: f64 = -1e-10;
/// Tolerance on unit trace and unit norm.
pub const TRACE_TOL: f64 = 1e-10;
/// Most negative eigenvalue a density matrix may have.
pub const DENSITY_EIGEN_FLOOR: f64 = -1e-9;
/// Size up to which [`DensityMatrix::new`] also checks positivity.
const PSD_CHECK_DIM: usize = 64;

pub fn default_label(position: usize) -> char {
    (b'A' + position as u8) as char
}

pub fn default_labels(n: usize) -> Vec<char> {
    (0..n).map(default_label).collect()
}

/// Hermitian unit-trace operator over a labeled set of qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    labels: Vec<char>,
    matrix: DenseMatrix,
}

impl DensityMatrix {
    /// Validates shape, hermiticity, trace and (for small matrices) positivity.
    pub fn new(matrix: DenseMatrix, labels: Vec<char>) -> Result<Self> {
        let n = labels.len();
        if n == 0 || n > DENSE_QUBIT_CAP {
            return Err(Error::Size {
                what: "density matrix",
                requested: n,
                cap: DENSE_QUBIT_CAP,
            });
        }
        let dim = 1usize << n;
        if matrix.rows() != dim || matrix.cols() != dim {
            return Err(Error::Dimension(format!(
                "{} labels need a {dim}x{dim} matrix, got {}x{}",
                n,
                matrix.rows(),
                matrix.cols()
            )));
        }
        for (k, l) in labels.iter().enumerate() {
            if labels[..k].contains(l) {
                return Err(Error::Argument(format!("duplicate qubit label {l}")));
            }
        }
        let defect = matrix.hermiticity_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::Contract(format!(
                "density matrix not Hermitian (defect {defect:e})"
            )));
        }
        let tr = matrix.trace();
        if (tr - c(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(Error::Contract(format!("density matrix trace {tr} != 1")));
        }
        if dim <= PSD_CHECK_DIM {
            let eig = hermitian_eigen(&matrix)?;
            let min = eig.values.last().copied().unwrap_or(0.0);
            if min < DENSITY_EIGEN_FLOOR {
                return Err(Error::Contract(format!(
                    "density matrix has negative eigenvalue {min:e}"
                )));
            }
        }
        Ok(DensityMatrix { labels, matrix })
    }

    /// Labels `A, B, …` in order.
    pub fn with_default_labels(matrix: DenseMatrix) -> Result<Self> {
        let n = matrix.rows().trailing_zeros() as usize;
        Self::new(matrix, default_labels(n))
    }

    pub fn n_qubits(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[char] {
        &self.labels
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> DenseMatrix {
        self.matrix
    }

    fn position(&self, label: char) -> Result<usize> {
        self.labels.iter().position(|&l| l == label).ok_or_else(|| {
            Error::Argument(format!(
                "unknown qubit label {label} (have {})",
                self.labels.iter().collect::<String>()
            ))
        })
    }

    fn label_string(&self) -> String {
        self.labels.iter().collect()
    }
}

/// `|ψ⟩⟨ψ|` over labels `A, B, …`.
pub fn density_from_pure(psi: &StateVector) -> Result<DensityMatrix> {
    if !psi.is_normalized(TRACE_TOL) {
        return Err(Error::Contract(format!(
            "state norm {} is not 1",
            psi.norm()
        )));
    }
    let n = psi.n_qubits();
    if n > DENSE_QUBIT_CAP {
        return Err(Error::Size {
            what: "density matrix",
            requested: n,
            cap: DENSE_QUBIT_CAP,
        });
    }
    let a = psi.amplitudes();
    let dim = a.len();
    let mut m = DenseMatrix::zeros(dim, dim);
    for i in 0..dim {
        if a[i] == C64::new(0.0, 0.0) {
            continue;
        }
        for j in 0..dim {
            m[(i, j)] = a[i] * a[j].conj();
        }
    }
    Ok(DensityMatrix {
        labels: default_labels(n),
        matrix: m,
    })
}

/// Places the bits of `value` (MSB first) at the given register positions.
fn scatter(value: usize, positions: &[usize], n: usize) -> usize {
    let k = positions.len();
    positions
        .iter()
        .enumerate()
        .filter(|&(t, _)| value >> (k - 1 - t) & 1 == 1)
        .fold(0, |acc, (_, &p)| acc | 1 << (n - 1 - p))
}

/// Traces out the qubits named in `discard`; the retained qubits keep
/// their labels and relative order.
pub fn partial_trace(rho: &DensityMatrix, discard: &[char]) -> Result<DensityMatrix> {
    if discard.is_empty() {
        return Err(Error::Argument("nothing to trace out".into()));
    }
    let n = rho.n_qubits();
    let mut gone = vec![false; n];
    for &l in discard {
        let p = rho.position(l)?;
        if gone[p] {
            return Err(Error::Argument(format!("qubit {l} listed twice")));
        }
        gone[p] = true;
    }
    let keep: Vec<usize> = (0..n).filter(|&p| !gone[p]).collect();
    let drop: Vec<usize> = (0..n).filter(|&p| gone[p]).collect();
    if keep.is_empty() {
        return Err(Error::Argument("cannot trace out every qubit".into()));
    }

    let kept_dim = 1usize << keep.len();
    let env: Vec<usize> = (0..1usize << drop.len())
        .map(|e| scatter(e, &drop, n))
        .collect();
    let rows: Vec<usize> = (0..kept_dim).map(|r| scatter(r, &keep, n)).collect();
    let m = rho.matrix();
    let mut out = DenseMatrix::zeros(kept_dim, kept_dim);
    for (r, &ri) in rows.iter().enumerate() {
        for (col, &ci) in rows.iter().enumerate() {
            out[(r, col)] = env.iter().map(|&e| m[(ri | e, ci | e)]).sum();
        }
    }
    Ok(DensityMatrix {
        labels: keep.iter().map(|&p| rho.labels[p]).collect(),
        matrix: out,
    })
}

/// Transposes the indices of one qubit. The result is Hermitian with unit
/// trace but need not be positive.
pub fn partial_transpose(rho: &DensityMatrix, subsystem: char) -> Result<DenseMatrix> {
    let n = rho.n_qubits();
    let bit = 1usize << (n - 1 - rho.position(subsystem)?);
    let m = rho.matrix();
    let dim = m.rows();
    let mut out = DenseMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            let si = (i & !bit) | (j & bit);
            let sj = (j & !bit) | (i & bit);
            out[(i, j)] = m[(si, sj)];
        }
    }
    Ok(out)
}

pub fn sigma_y() -> DenseMatrix {
    DenseMatrix::from_vec(
        2,
        2,
        vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)],
    )
    .expect("2x2 literal")
}

fn sigma_y_pair() -> DenseMatrix {
    kron(&sigma_y(), &sigma_y()).expect("4x4")
}

fn require_two_qubits(n: usize) -> Result<()> {
    if n != 2 {
        return Err(Error::Argument(format!(
            "operation is defined for 2 qubits, got {n}"
        )));
    }
    Ok(())
}

/// `(σ_y ⊗ σ_y)|ψ*⟩`.
pub fn spin_flip_pure_2q(psi: &StateVector) -> Result<StateVector> {
    require_two_qubits(psi.n_qubits())?;
    sigma_y_pair().apply(&psi.conj())
}

/// `|⟨ψ|ψ̃⟩|` for a normalized two-qubit state.
pub fn concurrence_pure_2q(psi: &StateVector) -> Result<f64> {
    require_two_qubits(psi.n_qubits())?;
    if !psi.is_normalized(TRACE_TOL) {
        return Err(Error::Contract(format!(
            "state norm {} is not 1",
            psi.norm()
        )));
    }
    Ok(psi.inner(&spin_flip_pure_2q(psi)?)?.norm())
}

/// `ρ̃ = (σ_y⊗σ_y) ρ* (σ_y⊗σ_y)`.
pub fn spin_flip_density_2q(rho: &DensityMatrix) -> Result<DensityMatrix> {
    require_two_qubits(rho.n_qubits())?;
    let yy = sigma_y_pair();
    Ok(DensityMatrix {
        labels: rho.labels.clone(),
        matrix: matmul(&matmul(&yy, &rho.matrix.conj())?, &yy)?,
    })
}

/// Descending square roots of the eigenvalues of `ρρ̃`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LambdaSpectrum {
    pub values: Vec<f64>,
}

impl LambdaSpectrum {
    /// `max(λ₁ − Σ_{i>1} λᵢ, 0)`.
    pub fn concurrence(&self) -> f64 {
        match self.values.split_first() {
            Some((first, rest)) => (first - rest.iter().sum::<f64>()).max(0.0),
            None => 0.0,
        }
    }
}

/// Spectrum of `ρ·F ρ* F` through the Hermitian PSD matrix `√ρ·ρ̃·√ρ`,
/// which has the same eigenvalues.
fn lambdas_with_flip(rho: &DenseMatrix, flip: &DenseMatrix) -> Result<LambdaSpectrum> {
    let flipped = matmul(&matmul(flip, &rho.conj())?, flip)?;
    let root = psd_sqrt(rho)?;
    let m = matmul(&matmul(&root, &flipped)?, &root)?;
    // Remove round-off asymmetry before the Hermitian solver sees it.
    let m = m.add(&crate::linalg::dagger(&m))?.scale(c(0.5, 0.0));
    let eig = hermitian_eigen(&m)?;
    let mut values = Vec::with_capacity(eig.values.len());
    for x in eig.values {
        if x < NEGATIVE_EIGEN_LIMIT {
            return Err(Error::Contract(format!(
                "flip product has negative eigenvalue {x:e}"
            )));
        }
        values.push(clamp_near_zero(x).max(0.0).sqrt());
    }
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(LambdaSpectrum { values })
}

/// Wootters λ's of a two-qubit density matrix.
pub fn wootters_lambdas(rho: &DensityMatrix) -> Result<LambdaSpectrum> {
    require_two_qubits(rho.n_qubits())?;
    lambdas_with_flip(&rho.matrix, &sigma_y_pair())
}

/// `max(λ₁ − λ₂ − λ₃ − λ₄, 0)`.
pub fn concurrence_mixed_2q(rho: &DensityMatrix) -> Result<f64> {
    Ok(wootters_lambdas(rho)?.concurrence())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PptVerdict {
    /// 2⊗2 with positive partial transpose.
    Separable,
    /// 2⊗2 with a negative partial-transpose eigenvalue.
    Entangled,
    /// Larger system, PPT holds; only a necessary condition for separability.
    PptHolds,
    /// Larger system, PPT fails; entangled across the chosen cut.
    PptViolated,
}

impl PptVerdict {
    pub fn note(self) -> &'static str {
        match self {
            PptVerdict::Separable => "PPT holds; necessary and sufficient for two qubits",
            PptVerdict::Entangled => "negative partial transpose; entangled",
            PptVerdict::PptHolds => "PPT holds; necessary condition only for this size",
            PptVerdict::PptViolated => "negative partial transpose; entangled across this cut",
        }
    }

    pub fn is_separable(self) -> bool {
        self == PptVerdict::Separable
    }
}

impl fmt::Display for PptVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PptVerdict::Separable => "separable",
            PptVerdict::Entangled => "entangled",
            PptVerdict::PptHolds => "ppt-holds",
            PptVerdict::PptViolated => "ppt-violated",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PptResult {
    /// Partial-transpose eigenvalues, descending, near-zero values clamped.
    pub eigenvalues: Vec<f64>,
    pub verdict: PptVerdict,
}

impl PptResult {
    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }
}

/// Peres–Horodecki test across the cut `subsystem | rest`.
pub fn ppt_check(rho: &DensityMatrix, subsystem: char) -> Result<PptResult> {
    ppt_check_with_threshold(rho, subsystem, PPT_THRESHOLD)
}

pub fn ppt_check_with_threshold(
    rho: &DensityMatrix,
    subsystem: char,
    threshold: f64,
) -> Result<PptResult> {
    let pt = partial_transpose(rho, subsystem)?;
    let eigenvalues: Vec<f64> = hermitian_eigen(&pt)?
        .values
        .into_iter()
        .map(clamp_near_zero)
        .collect();
    let positive = eigenvalues.iter().all(|&x| x >= threshold);
    let verdict = match (rho.n_qubits() == 2, positive) {
        (true, true) => PptVerdict::Separable,
        (true, false) => PptVerdict::Entangled,
        (false, true) => PptVerdict::PptHolds,
        (false, false) => PptVerdict::PptViolated,
    };
    Ok(PptResult {
        eigenvalues,
        verdict,
    })
}

/// Ordered product of the adjacent-pair flips
/// `I^{⊗(i−1)} ⊗ (σ_y⊗σ_y) ⊗ I^{⊗(n−i−1)}` for `i = 1 … n−1`, left to
/// right. Adjacent factors share one `σ_y` that squares to the identity,
/// so the product collapses to `σ_y ⊗ I ⊗ … ⊗ I ⊗ σ_y` for `n ≥ 3`.
pub fn generalized_flip_operator(n: usize) -> Result<DenseMatrix> {
    if n < 2 {
        return Err(Error::Argument(format!(
            "the flip operator needs at least 2 qubits, got {n}"
        )));
    }
    if n > DENSE_QUBIT_CAP {
        return Err(Error::Size {
            what: "generalized flip operator",
            requested: n,
            cap: DENSE_QUBIT_CAP,
        });
    }
    let yy = sigma_y_pair();
    let mut acc = DenseMatrix::identity(1 << n);
    for i in 1..n {
        let left = DenseMatrix::identity(1 << (i - 1));
        let right = DenseMatrix::identity(1 << (n - i - 1));
        let factor = kron(&kron(&left, &yy)?, &right)?;
        acc = matmul(&acc, &factor)?;
    }
    Ok(acc)
}

/// `|⟨ψ| F |ψ*⟩|` with `F` the generalized flip.
pub fn generalized_concurrence_pure(psi: &StateVector) -> Result<f64> {
    if !psi.is_normalized(TRACE_TOL) {
        return Err(Error::Contract(format!(
            "state norm {} is not 1",
            psi.norm()
        )));
    }
    let flip = generalized_flip_operator(psi.n_qubits())?;
    Ok(psi.inner(&flip.apply(&psi.conj())?)?.norm())
}

/// λ-spectrum of `ρ·F ρ* F` for any number of qubits ≥ 2.
pub fn generalized_lambdas_mixed(rho: &DensityMatrix) -> Result<LambdaSpectrum> {
    let flip = generalized_flip_operator(rho.n_qubits())?;
    lambdas_with_flip(&rho.matrix, &flip)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Thresholds {
    pub construction: f64,
    pub eigen: f64,
    pub ppt: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            construction: CONSTRUCTION_TOL,
            eigen: EIGEN_TOL,
            ppt: PPT_THRESHOLD,
        }
    }
}

/// Result of analyzing one (possibly reduced) state. Field order is the
/// serialization order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntanglementReport {
    pub input_label: String,
    /// Labels of the qubits left after the partial trace.
    pub retained: String,
    pub lambdas: Vec<f64>,
    pub concurrence: f64,
    /// Eigenvalues of the partial transpose on the last retained qubit.
    pub pt_eigenvalues: Vec<f64>,
    pub verdict: PptVerdict,
    pub verdict_note: String,
    pub thresholds: Thresholds,
}

/// Traces `discard` out of `|ψ⟩⟨ψ|` and reports its λ-spectrum, concurrence
/// (Wootters for two qubits, generalized flip otherwise) and PPT test.
pub fn analyze_pure(
    input_label: &str,
    psi: &StateVector,
    discard: &[char],
    thresholds: &Thresholds,
) -> Result<EntanglementReport> {
    let full = density_from_pure(psi)?;
    let reduced = if discard.is_empty() {
        full
    } else {
        partial_trace(&full, discard)?
    };
    if reduced.n_qubits() < 2 {
        return Err(Error::Argument(
            "analysis needs at least two retained qubits".into(),
        ));
    }
    let spectrum = if reduced.n_qubits() == 2 {
        wootters_lambdas(&reduced)?
    } else {
        generalized_lambdas_mixed(&reduced)?
    };
    let last = *reduced.labels.last().expect("two or more labels");
    let ppt = ppt_check_with_threshold(&reduced, last, thresholds.ppt)?;
    Ok(EntanglementReport {
        input_label: input_label.to_string(),
        retained: reduced.label_string(),
        concurrence: spectrum.concurrence(),
        lambdas: spectrum.values,
        pt_eigenvalues: ppt.eigenvalues,
        verdict: ppt.verdict,
        verdict_note: ppt.verdict.note().to_string(),
        thresholds: thresholds.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bell::bell_state;
    use crate::linalg::max_abs_diff;

    fn rho_ab() -> DenseMatrix {
        DenseMatrix::from_real(
            4,
            4,
            &[
                1.0, 0.0, 0.0, -1.0, 0.0, 1.0, 1.0, 0.0, 0.0, 1.0, 1.0, 0.0, -1.0, 0.0, 0.0, 1.0,
            ],
        )
        .unwrap()
        .scale(c(0.25, 0.0))
    }

    fn bell_pair(sign: f64) -> StateVector {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        StateVector::from_real(&[h, 0.0, 0.0, sign * h]).unwrap()
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn pure_density_matrices() {
        let rho = density_from_pure(&StateVector::basis(1, 0).unwrap()).unwrap();
        assert_eq!(rho.matrix()[(0, 0)], c(1.0, 0.0));
        assert_eq!(rho.matrix()[(1, 1)], c(0.0, 0.0));

        let rho = density_from_pure(&bell_state(3, 1).unwrap()).unwrap();
        assert!((rho.matrix().trace() - c(1.0, 0.0)).norm() < 1e-12);
        let eig = hermitian_eigen(rho.matrix()).unwrap();
        assert!((eig.values[0] - 1.0).abs() < 1e-12);
        assert!(eig.values[1..].iter().all(|x| x.abs() < 1e-12));

        let rho = density_from_pure(&bell_pair(1.0)).unwrap();
        for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            assert!((rho.matrix()[(i, j)] - c(0.5, 0.0)).norm() < 1e-15);
        }
        let unnormalized = StateVector::from_real(&[1.0, 1.0]).unwrap();
        assert!(matches!(
            density_from_pure(&unnormalized),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn density_matrix_validation() {
        assert!(DensityMatrix::with_default_labels(rho_ab()).is_ok());
        let twice = rho_ab().scale(c(2.0, 0.0));
        assert!(matches!(
            DensityMatrix::with_default_labels(twice),
            Err(Error::Contract(_))
        ));
        let neg = DenseMatrix::from_real(2, 2, &[1.5, 0.0, 0.0, -0.5]).unwrap();
        assert!(matches!(
            DensityMatrix::with_default_labels(neg),
            Err(Error::Contract(_))
        ));
        assert!(DensityMatrix::new(rho_ab(), vec!['A', 'A']).is_err());
    }

    #[test]
    fn trace_out_third_qubit_of_first_bell_state() {
        let rho = density_from_pure(&bell_state(3, 1).unwrap()).unwrap();
        let red = partial_trace(&rho, &['C']).unwrap();
        assert_eq!(red.labels(), &['A', 'B']);
        assert!(max_abs_diff(red.matrix(), &rho_ab()).unwrap() <= 1e-12);
    }

    #[test]
    fn trace_product_state() {
        let rho = density_from_pure(&StateVector::basis(2, 0).unwrap()).unwrap();
        let red = partial_trace(&rho, &['B']).unwrap();
        assert_eq!(red.labels(), &['A']);
        assert!(
            max_abs_diff(
                red.matrix(),
                &DenseMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]).unwrap()
            )
            .unwrap()
                == 0.0
        );
    }

    #[test]
    fn partial_trace_errors() {
        let rho = density_from_pure(&bell_state(3, 1).unwrap()).unwrap();
        assert!(partial_trace(&rho, &['A', 'B', 'C']).is_err());
        assert!(partial_trace(&rho, &[]).is_err());
        assert!(partial_trace(&rho, &['D']).is_err());
        assert!(partial_trace(&rho, &['A', 'A']).is_err());
    }

    #[test]
    fn partial_trace_keeps_order_of_non_adjacent_qubits() {
        // |0⟩_A |1⟩_B |1⟩_C |0⟩_D → keep A, C → |0⟩|1⟩
        let psi = StateVector::basis(4, 0b0110).unwrap();
        let rho = density_from_pure(&psi).unwrap();
        let red = partial_trace(&rho, &['D', 'B']).unwrap();
        assert_eq!(red.labels(), &['A', 'C']);
        assert_eq!(red.matrix()[(1, 1)], c(1.0, 0.0));
    }

    #[test]
    fn two_qubit_reduction_of_four_qubit_state() {
        let rho = density_from_pure(&bell_state(4, 1).unwrap()).unwrap();
        let red = partial_trace(&rho, &['C', 'D']).unwrap();
        assert!(red.matrix().is_hermitian(1e-15));
        assert!((red.matrix().trace() - c(1.0, 0.0)).norm() < 1e-12);
        assert!(concurrence_mixed_2q(&red).unwrap() <= 1e-9);
        assert!(ppt_check(&red, 'B').unwrap().verdict.is_separable());
    }

    #[test]
    fn pure_spin_flip() {
        let out = spin_flip_pure_2q(&StateVector::basis(2, 0).unwrap()).unwrap();
        let want = StateVector::from_real(&[0.0, 0.0, 0.0, -1.0]).unwrap();
        assert!(max_abs_diff(&out, &want).unwrap() < 1e-15);

        for sign in [1.0, -1.0] {
            let psi = bell_pair(sign);
            let flipped = spin_flip_pure_2q(&psi).unwrap();
            assert!((psi.inner(&flipped).unwrap().norm() - 1.0).abs() < 1e-12);
        }
        assert!(spin_flip_pure_2q(&StateVector::basis(3, 0).unwrap()).is_err());
    }

    #[test]
    fn pure_concurrence() {
        assert!(concurrence_pure_2q(&StateVector::basis(2, 1).unwrap()).unwrap() < 1e-15);
        assert!((concurrence_pure_2q(&bell_pair(-1.0)).unwrap() - 1.0).abs() < 1e-12);
        let psi = StateVector::from_real(&[0.8f64.sqrt(), 0.0, 0.0, 0.2f64.sqrt()]).unwrap();
        assert!((concurrence_pure_2q(&psi).unwrap() - 0.8).abs() < 1e-12);
    }

    #[test]
    fn mixed_spin_flip() {
        let rho = DensityMatrix::with_default_labels(rho_ab()).unwrap();
        let tilde = spin_flip_density_2q(&rho).unwrap();
        let prod = matmul(rho.matrix(), tilde.matrix()).unwrap();
        assert!(max_abs_diff(&prod, &rho_ab().scale(c(0.5, 0.0))).unwrap() < 1e-15);

        let mixed =
            DensityMatrix::with_default_labels(DenseMatrix::identity(4).scale(c(0.25, 0.0)))
                .unwrap();
        let t = spin_flip_density_2q(&mixed).unwrap();
        assert!(max_abs_diff(t.matrix(), mixed.matrix()).unwrap() < 1e-15);

        let ground = density_from_pure(&StateVector::basis(2, 0).unwrap()).unwrap();
        let t = spin_flip_density_2q(&ground).unwrap();
        assert!((t.matrix()[(3, 3)] - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn wootters_spectra() {
        let rho = DensityMatrix::with_default_labels(rho_ab()).unwrap();
        let l = wootters_lambdas(&rho).unwrap();
        assert!(
            close(&l.values, &[0.5, 0.5, 0.0, 0.0], 1e-9),
            "{:?}",
            l.values
        );
        assert!(l.concurrence() <= 1e-9);

        let bell = density_from_pure(&bell_pair(1.0)).unwrap();
        let l = wootters_lambdas(&bell).unwrap();
        assert!(
            close(&l.values, &[1.0, 0.0, 0.0, 0.0], 1e-9),
            "{:?}",
            l.values
        );
        assert!((concurrence_mixed_2q(&bell).unwrap() - 1.0).abs() < 1e-9);

        let mixed =
            DensityMatrix::with_default_labels(DenseMatrix::identity(4).scale(c(0.25, 0.0)))
                .unwrap();
        let l = wootters_lambdas(&mixed).unwrap();
        assert!(close(&l.values, &[0.25; 4], 1e-9));
        assert_eq!(concurrence_mixed_2q(&mixed).unwrap(), 0.0);
    }

    #[test]
    fn partial_transpose_cases() {
        let rho = DensityMatrix::with_default_labels(rho_ab()).unwrap();
        let pt = partial_transpose(&rho, 'B').unwrap();
        let want = DenseMatrix::from_real(
            4,
            4,
            &[
                1.0, 0.0, 0.0, 1.0, 0.0, 1.0, -1.0, 0.0, 0.0, -1.0, 1.0, 0.0, 1.0, 0.0, 0.0, 1.0,
            ],
        )
        .unwrap()
        .scale(c(0.25, 0.0));
        assert!(max_abs_diff(&pt, &want).unwrap() <= 1e-12);

        // product state: ρ_A ⊗ ρ_B → ρ_A ⊗ ρ_Bᵀ
        let ra = DenseMatrix::from_vec(
            2,
            2,
            vec![c(0.7, 0.0), c(0.1, 0.2), c(0.1, -0.2), c(0.3, 0.0)],
        )
        .unwrap();
        let rb = DenseMatrix::from_vec(
            2,
            2,
            vec![c(0.4, 0.0), c(0.0, -0.3), c(0.0, 0.3), c(0.6, 0.0)],
        )
        .unwrap();
        let prod = DensityMatrix::with_default_labels(kron(&ra, &rb).unwrap()).unwrap();
        let pt = partial_transpose(&prod, 'B').unwrap();
        assert!(max_abs_diff(&pt, &kron(&ra, &rb.transpose()).unwrap()).unwrap() < 1e-15);
        let ppt = ppt_check(&prod, 'B').unwrap();
        assert!(ppt.verdict.is_separable());

        let bell = density_from_pure(&bell_pair(1.0)).unwrap();
        let pt = partial_transpose(&bell, 'B').unwrap();
        let min = hermitian_eigen(&pt).unwrap().values[3];
        assert!((min + 0.5).abs() < 1e-9);
        assert!(partial_transpose(&bell, 'Q').is_err());
    }

    #[test]
    fn ppt_verdicts() {
        let rho = DensityMatrix::with_default_labels(rho_ab()).unwrap();
        let r = ppt_check(&rho, 'B').unwrap();
        assert!(close(&r.eigenvalues, &[0.5, 0.5, 0.0, 0.0], 1e-9));
        assert_eq!(r.verdict, PptVerdict::Separable);

        let bell = density_from_pure(&bell_pair(-1.0)).unwrap();
        let r = ppt_check(&bell, 'B').unwrap();
        assert!((r.min_eigenvalue() + 0.5).abs() < 1e-9);
        assert_eq!(r.verdict, PptVerdict::Entangled);

        let ground = density_from_pure(&StateVector::basis(2, 0).unwrap()).unwrap();
        let r = ppt_check(&ground, 'A').unwrap();
        assert_eq!(r.eigenvalues, vec![1.0, 0.0, 0.0, 0.0]);
        assert!(r.verdict.is_separable());

        let ghz_like = density_from_pure(&bell_state(3, 1).unwrap()).unwrap();
        let r = ppt_check(&ghz_like, 'C').unwrap();
        assert_eq!(r.verdict, PptVerdict::PptViolated);
    }

    #[test]
    fn flip_operators() {
        let y = sigma_y();
        let i2 = DenseMatrix::identity(2);
        assert_eq!(generalized_flip_operator(2).unwrap(), kron(&y, &y).unwrap());
        let want3 = kron(&kron(&y, &i2).unwrap(), &y).unwrap();
        assert!(max_abs_diff(&generalized_flip_operator(3).unwrap(), &want3).unwrap() < 1e-15);
        let want4 = kron(&kron(&kron(&y, &i2).unwrap(), &i2).unwrap(), &y).unwrap();
        assert!(max_abs_diff(&generalized_flip_operator(4).unwrap(), &want4).unwrap() < 1e-15);
        for n in 2..=8 {
            let f = generalized_flip_operator(n).unwrap();
            let sq = matmul(&f, &f).unwrap();
            assert!(max_abs_diff(&sq, &DenseMatrix::identity(1 << n)).unwrap() <= 1e-12);
            assert!(f.is_unitary(1e-12));
        }
        assert!(generalized_flip_operator(1).is_err());
    }

    #[test]
    fn generalized_pure_concurrence() {
        for i in 1..=8 {
            let v = generalized_concurrence_pure(&bell_state(3, i).unwrap()).unwrap();
            assert!((v - 1.0).abs() < 1e-12, "B{i}: {v}");
        }
        assert!(generalized_concurrence_pure(&StateVector::basis(3, 0).unwrap()).unwrap() < 1e-15);
    }

    #[test]
    fn generalized_mixed_spectra() {
        let rho = density_from_pure(&bell_state(4, 1).unwrap()).unwrap();
        let red = partial_trace(&rho, &['D']).unwrap();
        let l = generalized_lambdas_mixed(&red).unwrap();
        let mut want = vec![0.0; 8];
        want[0] = 0.5;
        want[1] = 0.5;
        assert!(close(&l.values, &want, 1e-9), "{:?}", l.values);
        assert!(l.concurrence() <= 1e-9);

        let pure = density_from_pure(&bell_state(3, 1).unwrap()).unwrap();
        let l = generalized_lambdas_mixed(&pure).unwrap();
        want = vec![0.0; 8];
        want[0] = 1.0;
        assert!(close(&l.values, &want, 1e-9), "{:?}", l.values);

        let mixed =
            DensityMatrix::with_default_labels(DenseMatrix::identity(8).scale(c(0.125, 0.0)))
                .unwrap();
        let l = generalized_lambdas_mixed(&mixed).unwrap();
        assert!(close(&l.values, &[0.125; 8], 1e-9));
    }

    #[test]
    fn analyze_reports() {
        let th = Thresholds::default();
        let psi = bell_state(3, 1).unwrap();
        let r = analyze_pure("B1", &psi, &['C'], &th).unwrap();
        assert_eq!(r.retained, "AB");
        assert!(close(&r.lambdas, &[0.5, 0.5, 0.0, 0.0], 1e-9));
        assert!(r.concurrence <= 1e-9);
        assert!(close(&r.pt_eigenvalues, &[0.5, 0.5, 0.0, 0.0], 1e-9));
        assert_eq!(r.verdict, PptVerdict::Separable);

        let r = analyze_pure("B1", &psi, &[], &th).unwrap();
        assert!((r.concurrence - 1.0).abs() < 1e-9);

        assert!(analyze_pure("B1", &psi, &['A', 'B'], &th).is_err());
    }
}
