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

//! Run configuration: defaults, optional TOML file, then command-line flags.

use std::path::Path;

use braidq::braid::{DENSE_QUBIT_CAP, MATRIX_FREE_QUBIT_CAP};
use braidq::entanglement::PPT_THRESHOLD;
use braidq::linalg::{CONSTRUCTION_TOL, EIGEN_TOL, MAX_QUBITS};
use clap::ValueEnum;
use serde::Deserialize;

/// Environment variable naming a config file.
pub const CONFIG_ENV: &str = "BRAIDQ_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Table,
    JsonLines,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub construction_tol: f64,
    pub eigen_tol: f64,
    pub ppt_threshold: f64,
    pub dense_cap: usize,
    pub matrix_free_cap: usize,
    pub seed: u64,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            construction_tol: CONSTRUCTION_TOL,
            eigen_tol: EIGEN_TOL,
            ppt_threshold: PPT_THRESHOLD,
            dense_cap: DENSE_QUBIT_CAP,
            matrix_free_cap: MATRIX_FREE_QUBIT_CAP,
            seed: 0,
            format: Format::Table,
        }
    }
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        let cfg: RunConfig =
            toml::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), String> {
        if !(self.construction_tol > 0.0 && self.eigen_tol > 0.0) {
            return Err("tolerances must be positive".into());
        }
        if self.ppt_threshold.is_nan() || self.ppt_threshold >= 0.0 {
            return Err("ppt_threshold must be negative".into());
        }
        if self.dense_cap == 0 || self.dense_cap > DENSE_QUBIT_CAP {
            return Err(format!("dense_cap must be in 1..={DENSE_QUBIT_CAP}"));
        }
        if self.matrix_free_cap == 0 || self.matrix_free_cap > MAX_QUBITS {
            return Err(format!("matrix_free_cap must be in 1..={MAX_QUBITS}"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_partial_file() {
        let cfg: RunConfig = toml::from_str("seed = 7\nformat = \"json-lines\"\n").unwrap();
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.format, Format::JsonLines);
        assert_eq!(cfg.dense_cap, DENSE_QUBIT_CAP);
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn rejects_bad_values() {
        assert!(toml::from_str::<RunConfig>("colour = 1\n").is_err());
        let cfg = RunConfig {
            ppt_threshold: 1e-10,
            ..RunConfig::default()
        };
        assert!(cfg.validate().is_err());
        let cfg = RunConfig {
            dense_cap: 13,
            ..RunConfig::default()
        };
        assert!(cfg.validate().is_err());
        let cfg = RunConfig {
            matrix_free_cap: 0,
            ..RunConfig::default()
        };
        assert!(cfg.validate().is_err());
    }
}
