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

//! Plain-text matrix and state fixtures.
//!
//! ```text
//! matrix 2 2
//! 0+0j 0-1j
//! 0+1j 0+0j
//! ```
//!
//! A state is written as `state <n_qubits>` followed by one amplitude per
//! line. Entries are `re[+-]imj`; the real and imaginary parts use Rust's
//! shortest round-trip float formatting, so write/read is lossless.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::linalg::{c, DenseMatrix, StateVector, C64};

#[derive(Debug, Clone, PartialEq)]
pub enum Fixture {
    Matrix(DenseMatrix),
    State(StateVector),
}

pub fn format_complex(z: C64) -> String {
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    let re = if z.re == 0.0 { 0.0 } else { z.re };
    if im.is_sign_negative() {
        format!("{re}{im}j")
    } else {
        format!("{re}+{im}j")
    }
}

pub fn parse_complex(token: &str) -> Result<C64> {
    let bad = || Error::Argument(format!("malformed complex entry {token:?}"));
    let body = token.strip_suffix('j').ok_or_else(bad)?;
    let bytes = body.as_bytes();
    // The imaginary part starts at the last sign that is neither leading nor
    // part of an exponent.
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'))
        .ok_or_else(bad)?;
    let re: f64 = body[..split].parse().map_err(|_| bad())?;
    let im: f64 = body[split..]
        .trim_start_matches('+')
        .parse()
        .map_err(|_| bad())?;
    if !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(c(re, im))
}

pub fn format_matrix(m: &DenseMatrix) -> String {
    let mut out = format!("matrix {} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let line: Vec<String> = m.row(i).iter().map(|&z| format_complex(z)).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

pub fn format_state(psi: &StateVector) -> String {
    let mut out = format!("state {}\n", psi.n_qubits());
    for &z in psi.amplitudes() {
        let _ = writeln!(out, "{}", format_complex(z));
    }
    out
}

pub fn parse_fixture(text: &str) -> Result<Fixture> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::Argument("empty fixture".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let num = |s: &str| -> Result<usize> {
        s.parse()
            .map_err(|_| Error::Argument(format!("bad fixture header {header:?}")))
    };
    match fields.as_slice() {
        ["matrix", r, cl] => {
            let (rows, cols) = (num(r)?, num(cl)?);
            let mut data = Vec::with_capacity(rows * cols);
            let mut seen = 0;
            for line in lines {
                seen += 1;
                let row: Vec<C64> = line
                    .split_whitespace()
                    .map(parse_complex)
                    .collect::<Result<_>>()?;
                if row.len() != cols {
                    return Err(Error::Dimension(format!(
                        "fixture row {seen} has {} entries, expected {cols}",
                        row.len()
                    )));
                }
                data.extend(row);
            }
            if seen != rows {
                return Err(Error::Dimension(format!(
                    "fixture has {seen} rows, header says {rows}"
                )));
            }
            DenseMatrix::from_vec(rows, cols, data).map(Fixture::Matrix)
        }
        ["state", n] => {
            let n = num(n)?;
            let amps: Vec<C64> = lines
                .flat_map(str::split_whitespace)
                .map(parse_complex)
                .collect::<Result<_>>()?;
            let psi = StateVector::from_amplitudes(amps)?;
            if psi.n_qubits() != n {
                return Err(Error::Dimension(format!(
                    "fixture declares {n} qubits but holds {} amplitudes",
                    psi.len()
                )));
            }
            Ok(Fixture::State(psi))
        }
        _ => Err(Error::Argument(format!("bad fixture header {header:?}"))),
    }
}
