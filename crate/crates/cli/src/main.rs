use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::exit;

use clap::{Parser, Subcommand, ValueEnum};

use fiberq::batch::{self, ReportFormat, RunOptions};
use fiberq::catalog;
use fiberq::exactq::RationalMatrix;
use fiberq::problem::{Problem, ProblemFile, Record};
use fiberq::ruth::{
    cone_ruth, dual_ruth, semidirect_roundtrip, tensor_ruth, twisted_dual_ruth, RuthData,
    RuthMorphismData,
};

#[derive(Parser)]
#[command(name = "fiberq", version, about = "Exact checks for representations up to homotopy and shifted contact fibers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check every problem in a file (`-` reads standard input).
    Check {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        report: Format,
        #[arg(long)]
        fail_fast: bool,
    },
    /// Built-in examples.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Constructions on a single representation up to homotopy.
    Ruth {
        #[command(subcommand)]
        action: RuthAction,
    },
    /// Print cohomology of every complex and mapping cone in a file.
    Cohomology { path: PathBuf },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Export {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum RuthAction {
    /// Verify the first `ruth` or `ruth_morphism` record.
    Verify { input: PathBuf },
    Dual {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tensor with the strict representation in `--with`.
    Tensor {
        input: PathBuf,
        #[arg(long)]
        with: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Twisted dual by the line representation in `--with`.
    Tdual {
        input: PathBuf,
        #[arg(long)]
        with: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cone of the first `ruth_morphism` record.
    Cone {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rebuild the representation from its semidirect product through a lift.
    /// `--lift` is a JSON object from arrow id to matrix.
    Roundtrip {
        input: PathBuf,
        #[arg(long)]
        lift: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// An error and the exit code it maps to.
struct Failure(i32, String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(2, e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure(2, format!("cannot read {}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Vec<(String, Problem)>, Failure> {
    let file = ProblemFile::parse(&read(path)?)?;
    file.problems
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let label = r.label().map_or_else(|| format!("#{i}"), str::to_string);
            Ok((label, r.to_problem()?))
        })
        .collect()
}

fn load_ruth(path: &Path) -> Result<RuthData, Failure> {
    load(path)?
        .into_iter()
        .find_map(|(_, p)| match p {
            Problem::Ruth(r) => Some(r),
            _ => None,
        })
        .ok_or_else(|| Failure(2, format!("{} has no ruth record", path.display())))
}

fn load_morphism(path: &Path) -> Result<RuthMorphismData, Failure> {
    load(path)?
        .into_iter()
        .find_map(|(_, p)| match p {
            Problem::RuthMorphism(m) => Some(m),
            _ => None,
        })
        .ok_or_else(|| Failure(2, format!("{} has no ruth_morphism record", path.display())))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure(2, format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_ruth(r: RuthData, out: Option<&Path>) -> Result<i32, Failure> {
    let code = if r.verify().passes { 0 } else { 1 };
    let file = ProblemFile::new(vec![Problem::Ruth(r).to_record(None)]);
    emit(&file.to_json(), out)?;
    Ok(code)
}

fn ruth(action: RuthAction) -> Result<i32, Failure> {
    match action {
        RuthAction::Verify { input } => {
            let file = ProblemFile::parse(&read(&input)?)?;
            let first = file
                .problems
                .into_iter()
                .find(|r| matches!(r, Record::Ruth(_) | Record::RuthMorphism(_)))
                .ok_or_else(|| Failure(2, "no ruth or ruth_morphism record".into()))?;
            let (code, text) = batch::run_text(
                &ProblemFile::new(vec![first]).to_json(),
                RunOptions { format: ReportFormat::Text, fail_fast: false },
            );
            print!("{text}");
            Ok(code)
        }
        RuthAction::Dual { input, out } => emit_ruth(dual_ruth(&load_ruth(&input)?), out.as_deref()),
        RuthAction::Tensor { input, with, out } => {
            emit_ruth(tensor_ruth(&load_ruth(&input)?, &load_ruth(&with)?)?, out.as_deref())
        }
        RuthAction::Tdual { input, with, out } => {
            emit_ruth(twisted_dual_ruth(&load_ruth(&input)?, &load_ruth(&with)?)?, out.as_deref())
        }
        RuthAction::Cone { input, out } => emit_ruth(cone_ruth(&load_morphism(&input)?), out.as_deref()),
        RuthAction::Roundtrip { input, lift, out } => {
            let r = load_ruth(&input)?;
            let mut table = BTreeMap::new();
            if let Some(path) = lift {
                let named: BTreeMap<String, RationalMatrix> = serde_json::from_str(&read(&path)?)?;
                for (name, m) in named {
                    let a = r
                        .groupoid()
                        .arrow_by_name(&name)
                        .ok_or_else(|| Failure(2, format!("unknown arrow {name:?} in lift")))?;
                    table.insert(a, m);
                }
            }
            emit_ruth(semidirect_roundtrip(&r, &table)?, out.as_deref())
        }
    }
}

fn cohomology(path: &Path) -> Result<i32, Failure> {
    let mut code = 0;
    for (label, p) in load(path)? {
        let result = match &p {
            Problem::Complex(c) => c.validate().and_then(|_| c.cohomology_dims()).map_err(|e| e.to_string()),
            Problem::CochainMap(f) => f
                .validate()
                .and_then(|_| f.mapping_cone()?.cohomology_dims())
                .map_err(|e| e.to_string()),
            Problem::ZeroShifted(z) => z.check().map(|v| v.cone_cohomology).map_err(|e| e.to_string()),
            Problem::OneShifted(o) => o.check().map(|v| v.cone_cohomology).map_err(|e| e.to_string()),
            Problem::Ruth(_) | Problem::RuthMorphism(_) => {
                println!("{label}: {} has no single complex", p.kind());
                continue;
            }
        };
        match result {
            Ok(h) => {
                let parts: Vec<String> = h.iter().map(|(n, d)| format!("{n}:{d}")).collect();
                println!("{label}: {{{}}}", parts.join(","));
            }
            Err(e) => {
                code = 1;
                println!("{label}: {e}");
            }
        }
    }
    Ok(code)
}

fn run(cli: Cli) -> Result<i32, Failure> {
    match cli.command {
        Command::Check { path, report, fail_fast } => {
            let format = match report {
                Format::Json => ReportFormat::Json,
                Format::Text => ReportFormat::Text,
            };
            let (code, text) = batch::run_path(&path, RunOptions { format, fail_fast });
            if code == 2 {
                eprint!("{text}");
            } else {
                print!("{text}");
            }
            Ok(code)
        }
        Command::Catalog { action: CatalogAction::List } => {
            for e in catalog::entries() {
                let verdict = if e.expected.passes { "pass" } else { "fail" };
                println!("{:<28} {:<13} {verdict}  {}", e.name, e.problem.kind(), e.provenance);
            }
            Ok(0)
        }
        Command::Catalog { action: CatalogAction::Export { out } } => {
            emit(&catalog::export().to_json(), out.as_deref())?;
            Ok(0)
        }
        Command::Ruth { action } => ruth(action),
        Command::Cohomology { path } => cohomology(&path),
    }
}

fn main() {
    let code = match run(Cli::parse()) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            code
        }
    };
    exit(code);
}
