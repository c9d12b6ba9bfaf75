//! Batch checking of problem files and report rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::homalg::HomalgError;
use crate::problem::{simplex_names, Problem, ProblemFile, Record};
use crate::ruth::RuthReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    pub format: ReportFormat,
    /// Stop after the first failing problem. Problems then run sequentially.
    pub fail_fast: bool,
}

/// Location and size of the largest coherence residual.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidualReport {
    pub k: usize,
    pub tuple: Vec<String>,
    pub degree: i32,
    pub value: String,
}

/// Result of one problem.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub label: String,
    pub kind: &'static str,
    pub passes: bool,
    pub cohomology: Option<BTreeMap<i32, usize>>,
    pub parity: Option<bool>,
    pub residual: Option<ResidualReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Outcome {
    fn new(label: String, kind: &'static str) -> Self {
        Self { label, kind, passes: false, cohomology: None, parity: None, residual: None, error: None }
    }

    fn failed(mut self, error: impl ToString) -> Self {
        self.passes = false;
        self.error = Some(error.to_string());
        self
    }

    fn with_ruth_report(mut self, r: &crate::ruth::RuthData, report: RuthReport) -> Self {
        self.passes = report.passes;
        self.residual = report.worst.map(|w| ResidualReport {
            k: w.k,
            tuple: simplex_names(r.groupoid(), &w.simplex),
            degree: w.degree,
            value: w.value.to_string(),
        });
        self
    }
}

fn cone_cohomology(map: &crate::homalg::CochainMap) -> Result<(bool, BTreeMap<i32, usize>), HomalgError> {
    let cohomology = map.mapping_cone()?.cohomology_dims()?;
    let passes = cohomology.values().all(|&h| h == 0);
    if passes != map.is_quasi_iso_by_induced_maps()? {
        panic!("cone and induced-map quasi-isomorphism tests disagree");
    }
    Ok((passes, cohomology))
}

/// Runs the checker that matches the problem's kind.
pub fn check_problem(problem: &Problem, label: String) -> Outcome {
    let out = Outcome::new(label, problem.kind());
    match problem {
        Problem::ZeroShifted(p) => match p.check() {
            Ok(v) => Outcome {
                passes: v.passes,
                cohomology: Some(v.cone_cohomology),
                parity: Some(v.dimension_parity_ok),
                ..out
            },
            Err(e) => out.failed(e),
        },
        Problem::OneShifted(p) => match p.check() {
            Ok(v) => Outcome {
                passes: v.passes,
                cohomology: Some(v.cone_cohomology),
                parity: Some(v.dimension_parity_ok),
                ..out
            },
            Err(e) => out.failed(e),
        },
        Problem::Ruth(r) => out.with_ruth_report(r, r.verify()),
        Problem::RuthMorphism(m) => out.with_ruth_report(m.source(), m.verify()),
        Problem::Complex(c) => match c.validate().and_then(|_| c.cohomology_dims()) {
            Ok(h) => Outcome { passes: true, cohomology: Some(h), ..out },
            Err(e) => out.failed(e),
        },
        Problem::CochainMap(f) => match f.validate().and_then(|_| cone_cohomology(f)) {
            Ok((passes, h)) => Outcome { passes, cohomology: Some(h), ..out },
            Err(e) => out.failed(e),
        },
    }
}

fn check_record(index: usize, record: &Record) -> Outcome {
    let label = record.label().map_or_else(|| format!("#{index}"), str::to_string);
    match record.to_problem() {
        Ok(p) => check_problem(&p, label),
        Err(e) => Outcome::new(label, record.kind()).failed(e),
    }
}

/// Checks every problem, keeping input order.
pub fn run_problems(file: &ProblemFile, fail_fast: bool) -> Vec<Outcome> {
    if fail_fast {
        let mut out = Vec::new();
        for (i, r) in file.problems.iter().enumerate() {
            let o = check_record(i, r);
            let stop = !o.passes;
            out.push(o);
            if stop {
                break;
            }
        }
        out
    } else {
        file.problems.par_iter().enumerate().map(|(i, r)| check_record(i, r)).collect()
    }
}

fn fmt_cohomology(h: &BTreeMap<i32, usize>) -> String {
    let parts: Vec<String> = h.iter().map(|(n, d)| format!("{n}:{d}")).collect();
    format!("{{{}}}", parts.join(","))
}

pub fn emit_report(results: &[Outcome], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(results).expect("outcomes always serialize");
            s.push('\n');
            s
        }
        ReportFormat::Text => {
            let mut s = String::new();
            for o in results {
                let _ = write!(s, "{} {} {}", if o.passes { "PASS" } else { "FAIL" }, o.kind, o.label);
                if let Some(h) = &o.cohomology {
                    let _ = write!(s, " cohomology={}", fmt_cohomology(h));
                }
                if let Some(p) = o.parity {
                    let _ = write!(s, " parity={p}");
                }
                if let Some(r) = &o.residual {
                    let _ = write!(s, " residual={} at k={} ({}) degree {}", r.value, r.k, r.tuple.join(", "), r.degree);
                }
                if let Some(e) = &o.error {
                    let _ = write!(s, " error: {e}");
                }
                s.push('\n');
            }
            s
        }
    }
}

/// Exit status for a finished batch: 0 if everything passed, 1 otherwise.
pub fn exit_code(results: &[Outcome]) -> i32 {
    if results.iter().all(|o| o.passes) {
        0
    } else {
        1
    }
}

/// Parses, checks and renders a problem file. Malformed input yields exit 2
/// and the parse error as output.
pub fn run_text(input: &str, opts: RunOptions) -> (i32, String) {
    match ProblemFile::parse(input) {
        Ok(file) => {
            let results = run_problems(&file, opts.fail_fast);
            (exit_code(&results), emit_report(&results, opts.format))
        }
        Err(e) => (2, format!("error: {e}\n")),
    }
}

/// Reads a problem file from `path` (or standard input for `-`) and runs it.
pub fn run_path(path: &Path, opts: RunOptions) -> (i32, String) {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map(|_| s)
    } else {
        std::fs::read_to_string(path)
    };
    match text {
        Ok(t) => run_text(&t, opts),
        Err(e) => (2, format!("error: cannot read {}: {e}\n", path.display())),
    }
}
