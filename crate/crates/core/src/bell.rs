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

//! Computational and generalized Bell bases.
//!
//! The Bell basis on `n` qubits is the image of the computational basis
//! under the cascade `σ₁·σ₂·…·σₙ₋₁`. Each Bell state is an equal-weight
//! superposition of `2ⁿ⁻¹` computational states with real amplitudes
//! `±2^{−(n−1)/2}`. States are indexed from 1, `|C1⟩ = |0…0⟩`.

use rayon::prelude::*;
use serde::Serialize;

use crate::braid::{Generator, DENSE_QUBIT_CAP, MATRIX_FREE_QUBIT_CAP};
use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, StateVector, CONSTRUCTION_TOL};
use crate::word::{apply, BraidWord};

/// `|C index⟩` on `n` qubits; `index` is 1-based.
pub fn computational_state(n: usize, index: usize) -> Result<StateVector> {
    check_index(n, index)?;
    StateVector::basis(n, index - 1)
}

fn check_index(n: usize, index: usize) -> Result<()> {
    if n == 0 || n > MATRIX_FREE_QUBIT_CAP {
        return Err(Error::Size {
            what: "basis state",
            requested: n,
            cap: MATRIX_FREE_QUBIT_CAP,
        });
    }
    let dim = 1usize << n;
    if index == 0 || index > dim {
        return Err(Error::OutOfRange {
            what: "basis index",
            value: index,
            min: 1,
            max: dim,
        });
    }
    Ok(())
}

/// The word `s1 s2 … s(n−1)` on `n` strands.
pub fn cascade_word(n: usize) -> Result<BraidWord> {
    if n < 2 {
        return Err(Error::Argument(format!(
            "the cascade needs at least 2 qubits, got {n}"
        )));
    }
    BraidWord::new(n, (1..n).map(Generator::positive).collect())
}

/// `|B index⟩ = σ₁·…·σₙ₋₁ |C index⟩`, computed matrix-free.
pub fn bell_state(n: usize, index: usize) -> Result<StateVector> {
    let word = cascade_word(n)?;
    apply(&word, &computational_state(n, index)?)
}

/// All `2ⁿ` Bell states of an `n`-qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct BellBasis {
    n_qubits: usize,
    states: Vec<StateVector>,
}

impl BellBasis {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// `states()[k]` is `|B(k+1)⟩`.
    pub fn states(&self) -> &[StateVector] {
        &self.states
    }

    /// 1-based access.
    pub fn state(&self, index: usize) -> Option<&StateVector> {
        index.checked_sub(1).and_then(|k| self.states.get(k))
    }

    /// `G[i][j] = ⟨Bᵢ|Bⱼ⟩`.
    pub fn gram(&self) -> DenseMatrix {
        let dim = self.states.len();
        let mut g = DenseMatrix::zeros(dim, dim);
        let rows: Vec<Vec<_>> = self
            .states
            .par_iter()
            .map(|a| {
                self.states
                    .iter()
                    .map(|b| a.inner(b).expect("same length"))
                    .collect()
            })
            .collect();
        for (i, row) in rows.into_iter().enumerate() {
            for (j, z) in row.into_iter().enumerate() {
                g[(i, j)] = z;
            }
        }
        g
    }

    pub fn term_structure(&self) -> TermStructureReport {
        term_structure_report(self)
    }
}

/// Materializes the whole basis; limited to the dense cap for memory.
pub fn bell_basis(n: usize) -> Result<BellBasis> {
    if n > DENSE_QUBIT_CAP {
        return Err(Error::Size {
            what: "full Bell basis",
            requested: n,
            cap: DENSE_QUBIT_CAP,
        });
    }
    let word = cascade_word(n)?;
    let states = (1..=1usize << n)
        .into_par_iter()
        .map(|k| apply(&word, &computational_state(n, k)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(BellBasis {
        n_qubits: n,
        states,
    })
}

/// `n`-character bitstring of a zero-based basis index, qubit 1 first.
pub fn bitstring(index: usize, n: usize) -> String {
    (0..n)
        .map(|q| {
            if index >> (n - 1 - q) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Term {
    pub bits: String,
    pub sign: i8,
    pub amplitude: f64,
}

/// Nonzero expansion of one state and how it compares to the expected
/// equal-weight structure.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateTerms {
    pub index: usize,
    pub terms: Vec<Term>,
    /// Distinct |amplitude| values (merged within the construction tolerance).
    pub magnitudes: Vec<f64>,
    pub violation: Option<String>,
}

impl StateTerms {
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TermStructureReport {
    pub n_qubits: usize,
    pub expected_terms: usize,
    pub expected_magnitude: f64,
    pub states: Vec<StateTerms>,
}

impl TermStructureReport {
    pub fn violations(&self) -> impl Iterator<Item = &StateTerms> {
        self.states.iter().filter(|s| s.violation.is_some())
    }

    pub fn is_clean(&self) -> bool {
        self.violations().next().is_none()
    }
}

/// Expansion of a single state, checked against `2ⁿ⁻¹` real terms of
/// magnitude `2^{−(n−1)/2}`.
pub fn state_terms(psi: &StateVector, index: usize) -> StateTerms {
    let n = psi.n_qubits();
    let expected_terms = 1usize << (n - 1);
    let expected_magnitude = (expected_terms as f64).sqrt().recip();

    let mut terms = Vec::new();
    let mut magnitudes: Vec<f64> = Vec::new();
    let mut complex_amp = false;
    for (k, z) in psi.amplitudes().iter().enumerate() {
        let mag = z.norm();
        if mag <= CONSTRUCTION_TOL {
            continue;
        }
        if z.im.abs() > CONSTRUCTION_TOL {
            complex_amp = true;
        }
        if !magnitudes
            .iter()
            .any(|&m| (m - mag).abs() <= CONSTRUCTION_TOL)
        {
            magnitudes.push(mag);
        }
        terms.push(Term {
            bits: bitstring(k, n),
            sign: if z.re < 0.0 { -1 } else { 1 },
            amplitude: z.re,
        });
    }
    magnitudes.sort_by(f64::total_cmp);

    let violation = if terms.len() != expected_terms {
        Some(format!(
            "{} nonzero terms, expected {expected_terms}",
            terms.len()
        ))
    } else if complex_amp {
        Some("amplitude with nonzero imaginary part".to_string())
    } else {
        magnitudes
            .iter()
            .find(|&&m| (m - expected_magnitude).abs() > CONSTRUCTION_TOL)
            .map(|bad| format!("magnitude {bad} differs from {expected_magnitude}"))
    };

    StateTerms {
        index,
        terms,
        magnitudes,
        violation,
    }
}

pub fn term_structure_report(basis: &BellBasis) -> TermStructureReport {
    let n = basis.n_qubits;
    let expected_terms = 1usize << (n - 1);
    TermStructureReport {
        n_qubits: n,
        expected_terms,
        expected_magnitude: (expected_terms as f64).sqrt().recip(),
        states: basis
            .states
            .iter()
            .enumerate()
            .map(|(k, psi)| state_terms(psi, k + 1))
            .collect(),
    }
}
