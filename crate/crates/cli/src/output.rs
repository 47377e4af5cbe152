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

//! Shared formatting for table, JSON-lines and CSV output.

use serde::Serialize;

/// Rounds to 12 significant digits and folds `-0.0` into `0.0`, so machine
/// output is stable across platforms and diff-able.
pub fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { 0.0 } else { x };
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

pub fn sig12_all(xs: &[f64]) -> Vec<f64> {
    xs.iter().copied().map(sig12).collect()
}

/// Human-readable number: 12 significant digits, scientific below 1e-4.
pub fn num(x: f64) -> String {
    let r = sig12(x);
    if r != 0.0 && r.abs() < 1e-4 {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

pub fn signed(x: f64) -> String {
    let s = num(x);
    if s.starts_with('-') {
        s
    } else {
        format!("+{s}")
    }
}

pub fn json_line<T: Serialize>(record: &T) -> String {
    serde_json::to_string(record).expect("records serialize")
}

pub fn list(xs: &[f64]) -> String {
    xs.iter().map(|&x| num(x)).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(sig12(0.1 + 0.2), 0.3);
        assert_eq!(sig12(-0.0), 0.0);
        assert_eq!(sig12(2.0 / 3.0), 0.666666666667);
        assert_eq!(num(1.23e-17), "1.23e-17");
        assert_eq!(signed(0.5), "+0.5");
        assert_eq!(signed(-0.5), "-0.5");
    }
}
