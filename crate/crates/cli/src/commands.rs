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

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use braidq::bell::{bell_basis, bell_state, bitstring, state_terms, StateTerms};
use braidq::braid::{verify_artin_relations, verify_yang_baxter, Generator, Sign};
use braidq::entanglement::{analyze_pure, default_label, Thresholds};
use braidq::fixture::{format_matrix, parse_fixture, Fixture};
use braidq::linalg::{StateVector, C64};
use braidq::word::{self, BraidWord};
use braidq::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::output::{json_line, list, num, sig12, sig12_all, signed};
use crate::{Failure, WordAction};

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn check_cap(n: usize, cap: usize, what: &str) -> Result<(), Failure> {
    if n > cap {
        return Err(usage(format!("{what}: n = {n} exceeds the cap of {cap}")));
    }
    Ok(())
}

#[derive(Serialize)]
struct VerifyRecord {
    relation: String,
    i: usize,
    j: usize,
    residual: f64,
    tolerance: f64,
    pass: bool,
}

pub fn verify(cfg: &RunConfig, n: usize, trials: usize, seed: u64) -> Result<String, Failure> {
    if n < 3 {
        return Err(usage(format!(
            "verify needs n >= 3 (no braid relation exists for n = {n})"
        )));
    }
    check_cap(n, cfg.matrix_free_cap, "matrix-free cap")?;
    let tol = cfg.construction_tol;
    let mut records = vec![VerifyRecord {
        relation: "yang_baxter".into(),
        i: 1,
        j: 2,
        residual: verify_yang_baxter(),
        tolerance: tol,
        pass: false,
    }];
    let report = verify_artin_relations(n, trials, seed)?;
    records.extend(report.residuals.iter().map(|r| VerifyRecord {
        relation: r.relation.to_string(),
        i: r.i,
        j: r.j,
        residual: r.residual,
        tolerance: tol,
        pass: false,
    }));
    for r in &mut records {
        r.pass = r.residual <= tol;
        r.residual = sig12(r.residual);
    }
    let failures = records.iter().filter(|r| !r.pass).count();

    let mut out = String::new();
    match cfg.format {
        Format::Table => {
            let _ = writeln!(
                out,
                "# n={n} trials={trials} seed={seed} tolerance={}",
                num(tol)
            );
            let _ = writeln!(
                out,
                "{:<12} {:>3} {:>3}  {:<22} status",
                "relation", "i", "j", "residual"
            );
            for r in &records {
                let _ = writeln!(
                    out,
                    "{:<12} {:>3} {:>3}  {:<22} {}",
                    r.relation,
                    r.i,
                    r.j,
                    num(r.residual),
                    if r.pass { "ok" } else { "FAIL" }
                );
            }
            if failures == 0 {
                let _ = writeln!(out, "all {} checks within tolerance", records.len());
            } else {
                let _ = writeln!(
                    out,
                    "{failures} of {} checks exceed tolerance",
                    records.len()
                );
            }
        }
        Format::JsonLines => {
            for r in &records {
                let _ = writeln!(out, "{}", json_line(r));
            }
        }
        Format::Csv => {
            let _ = writeln!(out, "relation,i,j,residual,tolerance,pass");
            for r in &records {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.relation, r.i, r.j, r.residual, r.tolerance, r.pass
                );
            }
        }
    }
    if failures > 0 {
        Err(Failure::Verification(out))
    } else {
        Ok(out)
    }
}

#[derive(Serialize)]
struct TermRecord<'a> {
    bits: &'a str,
    sign: i8,
}

#[derive(Serialize)]
struct BellRecord<'a> {
    index: usize,
    terms: Vec<TermRecord<'a>>,
    magnitude: f64,
    structure_ok: bool,
}

pub fn bell(cfg: &RunConfig, n: usize, index: Option<usize>) -> Result<String, Failure> {
    if n < 2 {
        return Err(usage(format!("bell needs n >= 2, got {n}")));
    }
    let states: Vec<StateTerms> = match index {
        Some(i) => {
            check_cap(n, cfg.matrix_free_cap, "matrix-free cap")?;
            vec![state_terms(&bell_state(n, i)?, i)]
        }
        None => {
            check_cap(n, cfg.dense_cap, "full basis (dense cap)")?;
            bell_basis(n)?.term_structure().states
        }
    };
    let expected = ((1usize << (n - 1)) as f64).sqrt().recip();

    let mut out = String::new();
    match cfg.format {
        Format::Table => {
            let _ = writeln!(
                out,
                "{:<6} {:<w$}  amplitude",
                "state",
                "bits",
                w = n.max(4)
            );
            for s in &states {
                for t in &s.terms {
                    let _ = writeln!(
                        out,
                        "{:<6} {:<w$}  {}",
                        s.index,
                        t.bits,
                        signed(t.amplitude),
                        w = n.max(4)
                    );
                }
            }
            let bad = states.iter().filter(|s| s.violation.is_some()).count();
            let _ = writeln!(
                out,
                "# {} state(s), expected {} terms each of magnitude {}: {}",
                states.len(),
                1usize << (n - 1),
                num(expected),
                if bad == 0 {
                    "structure ok".to_string()
                } else {
                    format!("{bad} violation(s)")
                }
            );
            for s in states.iter().filter(|s| s.violation.is_some()) {
                let _ = writeln!(
                    out,
                    "# state {}: {}",
                    s.index,
                    s.violation.as_deref().unwrap_or("")
                );
            }
        }
        Format::JsonLines => {
            for s in &states {
                let magnitude = s.magnitudes.last().copied().unwrap_or(0.0);
                let rec = BellRecord {
                    index: s.index,
                    terms: s
                        .terms
                        .iter()
                        .map(|t| TermRecord {
                            bits: &t.bits,
                            sign: t.sign,
                        })
                        .collect(),
                    magnitude: sig12(magnitude),
                    structure_ok: s.violation.is_none(),
                };
                let _ = writeln!(out, "{}", json_line(&rec));
            }
        }
        Format::Csv => {
            let _ = writeln!(out, "index,bits,amplitude");
            for s in &states {
                for t in &s.terms {
                    let _ = writeln!(out, "{},{},{}", s.index, t.bits, sig12(t.amplitude));
                }
            }
        }
    }
    if states.iter().any(|s| s.violation.is_some()) {
        Err(Failure::Verification(out))
    } else {
        Ok(out)
    }
}

fn parse_trace(spec: &str, n: usize) -> Result<Vec<char>, Failure> {
    let mut labels = Vec::new();
    for ch in spec.chars() {
        if ch == ',' || ch.is_whitespace() {
            continue;
        }
        let up = ch.to_ascii_uppercase();
        let valid = (0..n).map(default_label).any(|l| l == up);
        if !valid {
            return Err(usage(format!(
                "unknown qubit label {ch:?}; valid labels are {}",
                (0..n).map(default_label).collect::<String>()
            )));
        }
        if labels.contains(&up) {
            return Err(usage(format!("qubit {up} listed twice")));
        }
        labels.push(up);
    }
    if labels.len() >= n {
        return Err(usage("cannot trace out every qubit"));
    }
    Ok(labels)
}

#[derive(Serialize)]
struct AnalyzeRecord {
    input_label: String,
    retained: String,
    lambdas: Vec<f64>,
    concurrence: f64,
    pt_eigenvalues: Vec<f64>,
    verdict: String,
    verdict_note: String,
    thresholds: Thresholds,
}

pub fn analyze(cfg: &RunConfig, n: usize, index: usize, trace: &str) -> Result<String, Failure> {
    if n < 2 {
        return Err(usage(format!("analyze needs n >= 2, got {n}")));
    }
    check_cap(n, cfg.dense_cap, "density matrix (dense cap)")?;
    let discard = parse_trace(trace, n)?;
    let psi = bell_state(n, index)?;
    let thresholds = Thresholds {
        construction: cfg.construction_tol,
        eigen: cfg.eigen_tol,
        ppt: cfg.ppt_threshold,
    };
    let label = format!("bell n={n} index={index}");
    let report = analyze_pure(&label, &psi, &discard, &thresholds)?;
    let rec = AnalyzeRecord {
        input_label: report.input_label,
        retained: report.retained,
        lambdas: sig12_all(&report.lambdas),
        concurrence: sig12(report.concurrence),
        pt_eigenvalues: sig12_all(&report.pt_eigenvalues),
        verdict: report.verdict.to_string(),
        verdict_note: report.verdict_note,
        thresholds: report.thresholds,
    };
    let traced: String = discard.iter().collect();
    let mut out = String::new();
    match cfg.format {
        Format::Table => {
            let _ = writeln!(out, "input        {}", rec.input_label);
            let _ = writeln!(
                out,
                "traced out   {}",
                if traced.is_empty() { "(none)" } else { &traced }
            );
            let _ = writeln!(out, "retained     {}", rec.retained);
            let _ = writeln!(out, "lambdas      {}", list(&rec.lambdas));
            let _ = writeln!(out, "concurrence  {}", num(rec.concurrence));
            let _ = writeln!(out, "pt eigen     {}", list(&rec.pt_eigenvalues));
            let _ = writeln!(out, "verdict      {} ({})", rec.verdict, rec.verdict_note);
        }
        Format::JsonLines => {
            let _ = writeln!(out, "{}", json_line(&rec));
        }
        Format::Csv => {
            let join = |xs: &[f64]| {
                xs.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(";")
            };
            let _ = writeln!(
                out,
                "input_label,retained,lambdas,concurrence,pt_eigenvalues,verdict"
            );
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                rec.input_label,
                rec.retained,
                join(&rec.lambdas),
                rec.concurrence,
                join(&rec.pt_eigenvalues),
                rec.verdict
            );
        }
    }
    Ok(out)
}

fn parse_word(text: &str, strands: Option<usize>) -> Result<BraidWord, Failure> {
    word::parse(text, strands).map_err(|e| match e {
        Error::Parse(p) => {
            let caret = " ".repeat(p.position);
            usage(format!("{p}\n  {text}\n  {caret}^"))
        }
        other => other.into(),
    })
}

#[derive(Serialize)]
struct LetterRecord {
    index: usize,
    sign: i8,
}

#[derive(Serialize)]
struct WordRecord {
    word: String,
    strands: usize,
    letters: Vec<LetterRecord>,
}

fn word_text(w: &BraidWord) -> String {
    if w.is_empty() {
        "(empty)".to_string()
    } else {
        w.to_string()
    }
}

fn emit_word(cfg: &RunConfig, w: &BraidWord) -> String {
    match cfg.format {
        Format::Table => format!("{}\n", word_text(w)),
        Format::JsonLines => {
            let rec = WordRecord {
                word: w.to_string(),
                strands: w.strands(),
                letters: w
                    .letters()
                    .iter()
                    .map(|g| LetterRecord {
                        index: g.index,
                        sign: g.sign.as_i8(),
                    })
                    .collect(),
            };
            format!("{}\n", json_line(&rec))
        }
        Format::Csv => {
            let mut out = String::from("position,index,sign\n");
            for (k, g) in w.letters().iter().enumerate() {
                let _ = writeln!(out, "{},{},{}", k + 1, g.index, g.sign.as_i8());
            }
            out
        }
    }
}

#[derive(Serialize)]
struct AmplitudeRecord {
    index: usize,
    bits: String,
    re: f64,
    im: f64,
}

fn emit_state(cfg: &RunConfig, psi: &StateVector) -> String {
    let n = psi.n_qubits();
    let rows: Vec<AmplitudeRecord> = psi
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(_, z)| z.norm() > cfg.construction_tol)
        .map(|(k, z)| AmplitudeRecord {
            index: k + 1,
            bits: bitstring(k, n),
            re: sig12(z.re),
            im: sig12(z.im),
        })
        .collect();
    let mut out = String::new();
    match cfg.format {
        Format::Table => {
            let _ = writeln!(out, "{:<w$}  amplitude", "bits", w = n.max(4));
            for r in &rows {
                let amp = if r.im == 0.0 {
                    signed(r.re)
                } else {
                    format!("{}{}i", signed(r.re), signed(r.im))
                };
                let _ = writeln!(out, "{:<w$}  {amp}", r.bits, w = n.max(4));
            }
        }
        Format::JsonLines => {
            for r in &rows {
                let _ = writeln!(out, "{}", json_line(r));
            }
        }
        Format::Csv => {
            let _ = writeln!(out, "index,bits,re,im");
            for r in &rows {
                let _ = writeln!(out, "{},{},{},{}", r.index, r.bits, r.re, r.im);
            }
        }
    }
    out
}

pub fn word(
    cfg: &RunConfig,
    action: WordAction,
    text: &str,
    n: Option<usize>,
    basis_index: Option<usize>,
    state_file: Option<&Path>,
    out_path: Option<&Path>,
) -> Result<String, Failure> {
    let w = parse_word(text, n)?;
    let qubits = n.unwrap_or(w.strands());
    let rendered: Result<String, Failure> = match action {
        WordAction::Parse => Ok(emit_word(cfg, &w)),
        WordAction::Reduce => Ok(emit_word(cfg, &word::free_reduce(&w))),
        WordAction::Normalize => Ok(emit_word(cfg, &word::commute_normalize(&w))),
        WordAction::Compile => {
            check_cap(qubits, cfg.dense_cap, "dense cap (use `word apply`)")?;
            let m = word::compile(&w, qubits)?;
            Ok(match cfg.format {
                Format::Table => format_matrix(&m.map(|z| C64::new(sig12(z.re), sig12(z.im)))),
                Format::JsonLines => {
                    #[derive(Serialize)]
                    struct Row {
                        row: usize,
                        re: Vec<f64>,
                        im: Vec<f64>,
                    }
                    let mut out = String::new();
                    for i in 0..m.rows() {
                        let row = m.row(i);
                        let rec = Row {
                            row: i + 1,
                            re: row.iter().map(|z| sig12(z.re)).collect(),
                            im: row.iter().map(|z| sig12(z.im)).collect(),
                        };
                        let _ = writeln!(out, "{}", json_line(&rec));
                    }
                    out
                }
                Format::Csv => {
                    let mut out = String::from("row,col,re,im\n");
                    for i in 0..m.rows() {
                        for (j, z) in m.row(i).iter().enumerate() {
                            let _ = writeln!(
                                out,
                                "{},{},{},{}",
                                i + 1,
                                j + 1,
                                sig12(z.re),
                                sig12(z.im)
                            );
                        }
                    }
                    out
                }
            })
        }
        WordAction::Apply => {
            check_cap(qubits, cfg.matrix_free_cap, "matrix-free cap")?;
            let psi = match (basis_index, state_file) {
                (Some(i), None) => {
                    let dim = 1usize << qubits;
                    if i == 0 || i > dim {
                        return Err(usage(format!("--basis-index must be in 1..={dim}")));
                    }
                    StateVector::basis(qubits, i - 1)?
                }
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
                    match parse_fixture(&text)? {
                        Fixture::State(psi) => psi,
                        Fixture::Matrix(_) => {
                            return Err(usage("state file holds a matrix, expected a state"))
                        }
                    }
                }
                _ => return Err(usage("apply needs --basis-index or --state-file")),
            };
            let out = word::apply(&w, &psi)?;
            Ok(emit_state(cfg, &out))
        }
        WordAction::Diagram => Ok(word::render_ascii(&w)),
    };
    let rendered = rendered?;
    match out_path {
        Some(path) => {
            std::fs::write(path, &rendered)
                .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(rendered),
    }
}

#[derive(Serialize)]
struct BenchRecord {
    n: usize,
    len: usize,
    seed: u64,
    word: String,
    reps: usize,
    seconds_per_generator: f64,
    seconds_per_word: f64,
    amplitudes_per_second: f64,
    norm_drift: f64,
}

pub fn bench(cfg: &RunConfig, n: usize, len: usize, seed: u64) -> Result<String, Failure> {
    if n < 2 {
        return Err(usage(format!("bench needs n >= 2, got {n}")));
    }
    check_cap(n, cfg.matrix_free_cap, "matrix-free cap")?;
    if len == 0 {
        return Err(usage("bench needs --len >= 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let letters: Vec<Generator> = (0..len)
        .map(|_| {
            let index = rng.random_range(1..n);
            let sign = if rng.random_bool(0.5) {
                Sign::Positive
            } else {
                Sign::Negative
            };
            Generator::new(index, sign)
        })
        .collect();
    let w = BraidWord::new(n, letters)?;
    let psi = StateVector::random(n, &mut rng)?;

    // warm-up pass also fixes the repetition count
    let start = Instant::now();
    let mut out = word::apply(&w, &psi)?;
    let first = start.elapsed().as_secs_f64();
    let reps = ((0.2 / first.max(1e-9)) as usize).clamp(1, 1000);
    let start = Instant::now();
    for _ in 0..reps {
        out = word::apply(&w, &out)?;
    }
    let per_word = start.elapsed().as_secs_f64() / reps as f64;
    let rec = BenchRecord {
        n,
        len,
        seed,
        word: w.to_string(),
        reps,
        seconds_per_generator: per_word / len as f64,
        seconds_per_word: per_word,
        amplitudes_per_second: (psi.len() * len) as f64 / per_word.max(f64::MIN_POSITIVE),
        norm_drift: (out.norm() - 1.0).abs(),
    };
    let mut text = String::new();
    match cfg.format {
        Format::Table => {
            let _ = writeln!(text, "n                      {}", rec.n);
            let _ = writeln!(text, "word length            {}", rec.len);
            let _ = writeln!(text, "seed                   {}", rec.seed);
            let _ = writeln!(text, "repetitions            {}", rec.reps);
            let _ = writeln!(
                text,
                "seconds per generator  {:.3e}",
                rec.seconds_per_generator
            );
            let _ = writeln!(text, "seconds per word       {:.3e}", rec.seconds_per_word);
            let _ = writeln!(
                text,
                "amplitudes per second  {:.3e}",
                rec.amplitudes_per_second
            );
            let _ = writeln!(text, "norm drift             {:.3e}", rec.norm_drift);
        }
        Format::JsonLines => {
            let _ = writeln!(text, "{}", json_line(&rec));
        }
        Format::Csv => {
            let _ = writeln!(text, "n,len,seed,reps,seconds_per_generator,seconds_per_word,amplitudes_per_second,norm_drift");
            let _ = writeln!(
                text,
                "{},{},{},{},{:e},{:e},{:e},{:e}",
                rec.n,
                rec.len,
                rec.seed,
                rec.reps,
                rec.seconds_per_generator,
                rec.seconds_per_word,
                rec.amplitudes_per_second,
                rec.norm_drift
            );
        }
    }
    Ok(text)
}
