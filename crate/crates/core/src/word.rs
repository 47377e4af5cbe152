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

//! Braid words: parsing, canonicalization, compilation and diagrams.
//!
//! Grammar (whitespace between letters is optional):
//!
//! ```text
//! word    := letter*
//! letter  := "s" INT inverse?
//! inverse := "'" | "^-1"
//! ```
//!
//! A word `w₁ w₂ … wₖ` denotes the operator product `w₁·w₂·…·wₖ`: the
//! leftmost letter is the leftmost matrix factor, so on a ket the rightmost
//! letter acts first. With this reading `s1 s2` on three strands is exactly
//! the product `σ₁·σ₂` used to generate the three-qubit Bell basis.

use std::fmt;

use crate::braid::{apply_generator_in_place, sigma_dense, Generator, Sign, DENSE_QUBIT_CAP};
use crate::error::{Error, ParseError, Result};
use crate::linalg::{matmul, DenseMatrix, StateVector};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Generator>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Generator>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::Argument(format!(
                "a braid needs at least 2 strands, got {strands}"
            )));
        }
        for g in &letters {
            g.check(strands)?;
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Result<Self> {
        Self::new(strands, Vec::new())
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Generator] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The inverse braid: letters reversed, each inverted.
    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|g| g.inverse()).collect(),
        }
    }

    /// Product `self · other` on the larger strand count.
    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord {
            strands: self.strands.max(other.strands),
            letters,
        }
    }
}

/// Canonical text form, e.g. `s1 s2 s1'`; the identity renders as "".
impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, g) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Parses a braid word. With `strands` omitted the strand count is
/// `max index + 1` (2 for the empty word).
pub fn parse(text: &str, strands: Option<usize>) -> Result<BraidWord> {
    let letters = parse_letters(text)?;
    let needed = letters.iter().map(|(_, g)| g.index + 1).max().unwrap_or(2);
    let strands = match strands {
        Some(s) => {
            if s < 2 {
                return Err(Error::Argument(format!(
                    "a braid needs at least 2 strands, got {s}"
                )));
            }
            if let Some((pos, g)) = letters.iter().find(|(_, g)| g.index >= s) {
                return Err(Error::Parse(ParseError {
                    position: *pos,
                    message: format!(
                        "generator s{} out of range for {s} strands (max s{})",
                        g.index,
                        s - 1
                    ),
                }));
            }
            s
        }
        None => needed,
    };
    BraidWord::new(strands, letters.into_iter().map(|(_, g)| g).collect())
}

fn parse_letters(text: &str) -> Result<Vec<(usize, Generator)>> {
    let bytes = text.as_bytes();
    let err = |position: usize, message: &str| {
        Error::Parse(ParseError {
            position,
            message: message.to_string(),
        })
    };
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let b = bytes[pos];
        if b.is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        if b != b's' {
            return Err(err(pos, "expected 's'"));
        }
        let start = pos;
        pos += 1;
        let digits = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        if pos == digits {
            return Err(err(pos, "expected generator index"));
        }
        let index: usize = text[digits..pos]
            .parse()
            .map_err(|_| err(digits, "generator index too large"))?;
        if index == 0 {
            return Err(err(digits, "generator index must be at least 1"));
        }
        let sign = if bytes.get(pos) == Some(&b'\'') {
            pos += 1;
            Sign::Negative
        } else if text[pos..].starts_with("^-1") {
            pos += 3;
            Sign::Negative
        } else if bytes.get(pos) == Some(&b'^') {
            return Err(err(pos, "expected \"^-1\""));
        } else {
            Sign::Positive
        };
        out.push((start, Generator::new(index, sign)));
    }
    Ok(out)
}

/// Cancels adjacent `σᵢσᵢ⁻¹` / `σᵢ⁻¹σᵢ` pairs until none remain.
pub fn free_reduce(w: &BraidWord) -> BraidWord {
    let mut stack: Vec<Generator> = Vec::with_capacity(w.letters.len());
    for &g in &w.letters {
        match stack.last() {
            Some(&top) if top.is_inverse_of(g) => {
                stack.pop();
            }
            _ => stack.push(g),
        }
    }
    BraidWord {
        strands: w.strands,
        letters: stack,
    }
}

/// Deterministic normal form under far commutation and free reduction.
///
/// Adjacent letters `a b` with `|a − b| > 1` and `a > b` are swapped until
/// no such pair remains, then the word is freely reduced; both steps repeat
/// until neither changes the word. Every swap removes one out-of-order far
/// pair and every reduction shortens the word, so the loop terminates.
pub fn commute_normalize(w: &BraidWord) -> BraidWord {
    let mut letters = w.letters.clone();
    loop {
        let mut swapped = true;
        while swapped {
            swapped = false;
            for k in 1..letters.len() {
                if letters[k - 1].index > letters[k].index + 1 {
                    letters.swap(k - 1, k);
                    swapped = true;
                }
            }
        }
        let before = letters.len();
        letters = free_reduce(&BraidWord {
            strands: w.strands,
            letters,
        })
        .letters;
        if letters.len() == before {
            break;
        }
    }
    BraidWord {
        strands: w.strands,
        letters,
    }
}

/// Dense operator `letter₁ · letter₂ · … · letterₖ` on `n` qubits.
pub fn compile(w: &BraidWord, n: usize) -> Result<DenseMatrix> {
    if n < w.strands {
        return Err(Error::Argument(format!(
            "word on {} strands cannot act on {n} qubits",
            w.strands
        )));
    }
    if n > DENSE_QUBIT_CAP {
        return Err(Error::Size {
            what: "dense compile (use apply for matrix-free evaluation)",
            requested: n,
            cap: DENSE_QUBIT_CAP,
        });
    }
    // Fold from the right so each step multiplies by a sparse left factor.
    let mut acc = DenseMatrix::identity(1 << n);
    for &g in w.letters.iter().rev() {
        acc = matmul(&sigma_dense(g, n)?, &acc)?;
    }
    Ok(acc)
}

/// Matrix-free `compile(w, n)·ψ`: letters applied right to left.
pub fn apply(w: &BraidWord, psi: &StateVector) -> Result<StateVector> {
    if psi.n_qubits() < w.strands {
        return Err(Error::Argument(format!(
            "word on {} strands cannot act on {} qubits",
            w.strands,
            psi.n_qubits()
        )));
    }
    let mut out = psi.clone();
    for &g in w.letters.iter().rev() {
        apply_generator_in_place(&mut out, g)?;
    }
    Ok(out)
}

const COLUMN_WIDTH: usize = 4;

/// ASCII braid diagram, top to bottom in textual letter order.
///
/// Strand `k` occupies column `4(k−1)`. Each letter is a three-row block in
/// which strands `i` and `i+1` cross; the middle row shows the over-strand,
/// `\` for `σᵢ` and `/` for `σᵢ⁻¹`, and is annotated with the letter.
///
/// ```text
/// 1   2   3
/// |   |   |
///  \ /    |
///   \     |   s1
///  / \    |
/// |   |   |
/// ```
pub fn render_ascii(w: &BraidWord) -> String {
    let n = w.strands;
    let width = COLUMN_WIDTH * (n - 1) + 1;
    let mut lines: Vec<String> = Vec::new();

    let mut header = String::new();
    for k in 1..=n {
        let label = k.to_string();
        let col = COLUMN_WIDTH * (k - 1);
        while header.len() < col {
            header.push(' ');
        }
        header.push_str(&label);
    }
    lines.push(header);

    let straight = |row: &mut Vec<u8>, skip: Option<usize>| {
        for k in 1..=n {
            if Some(k) == skip || Some(k) == skip.map(|i| i + 1) {
                continue;
            }
            row[COLUMN_WIDTH * (k - 1)] = b'|';
        }
    };
    let finish = |row: Vec<u8>| {
        String::from_utf8(row)
            .expect("ascii")
            .trim_end()
            .to_string()
    };

    let mut bar = vec![b' '; width];
    straight(&mut bar, None);
    let bar = finish(bar);
    lines.push(bar.clone());

    for g in &w.letters {
        let x = COLUMN_WIDTH * (g.index - 1);
        let mut top = vec![b' '; width];
        let mut mid = vec![b' '; width];
        let mut bottom = vec![b' '; width];
        for row in [&mut top, &mut mid, &mut bottom] {
            straight(row, Some(g.index));
        }
        top[x + 1] = b'\\';
        top[x + 3] = b'/';
        mid[x + 2] = match g.sign {
            Sign::Positive => b'\\',
            Sign::Negative => b'/',
        };
        bottom[x + 1] = b'/';
        bottom[x + 3] = b'\\';
        lines.push(finish(top));
        lines.push(format!("{:<w$}   {g}", finish(mid), w = width));
        lines.push(finish(bottom));
        lines.push(bar.clone());
    }

    let mut out = lines.join("\n");
    out.push('\n');
    out
}
