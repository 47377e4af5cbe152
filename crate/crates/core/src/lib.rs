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

//! Unitary braid-group representations on n-qubit registers.
//!
//! Each crossing of a braid is the real orthogonal two-qubit gate `R`
//! (a solution of the Yang–Baxter equation) acting on neighbouring qubits.
//! Applying the cascade `σ₁·σ₂·…·σₙ₋₁` to the computational basis yields an
//! orthonormal basis of entangled "generalized Bell" states, whose
//! entanglement is probed with concurrence and the partial-transpose test.
//!
//! * [`linalg`]: dense complex matrices, state vectors, Jacobi eigensolver.
//! * [`braid`]: the `R` gate, generators, matrix-free kernel, relation checks.
//! * [`word`]: braid-word parsing, rewriting, compiling and diagrams.
//! * [`bell`]: computational and generalized Bell bases.
//! * [`entanglement`]: density matrices, concurrence, PPT.
//! * [`fixture`]: text format for matrices and states.

pub mod bell;
pub mod braid;
pub mod entanglement;
pub mod error;
pub mod fixture;
pub mod linalg;
pub mod word;

pub use braid::{Generator, RGate, Sign};
pub use error::{Error, ParseError, Result};
pub use linalg::{DenseMatrix, StateVector, C64};
pub use word::BraidWord;
