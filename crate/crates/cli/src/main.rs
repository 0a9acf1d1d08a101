//! Command-line front end. Exit codes: 0 when every requested check passes,
//! 1 when a verification fails, 2 for bad input or I/O errors.

mod checks;
mod report;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use fqg_core::classdims::{enumerate_multisets, proof_walk};
use fqg_core::descriptor;
use fqg_core::models::{function_algebra, group_algebra, kac_paljutkin, sekine, FiniteGroupTable};
use fqg_core::reproduce::{run_all, ReproduceOptions};
use fqg_core::rmatrix::{
    kp_coefficients, kp_case, kp_closed_form_rmatrices, solve_kp_rmatrices, verify_rmatrix, FamilyReading,
    DEFAULT_CANDIDATE_BOUND,
};
use fqg_core::{AxiomReport, HopfData};
use serde_json::{json, Value};

use crate::checks::{Check, Model};
use crate::report::{CheckResult, RunReport};

/// Exact construction and verification of finite quantum groups.
#[derive(Parser, Debug)]
#[command(name = "fqg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the structure tables of a model as a JSON descriptor.
    Build {
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run selected verifications on a model.
    Verify {
        #[command(flatten)]
        target: TargetArgs,
        /// Comma-separated subset of hopf, haar, coideals, series-solvable,
        /// series-nilpotent, rmatrix, or `all`.
        #[arg(long, default_value = "all")]
        checks: String,
        /// Candidate R-matrix to verify instead of solving (`{"terms": ...}`).
        #[arg(long)]
        rmatrix: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CANDIDATE_BOUND)]
        candidate_bound: usize,
        #[arg(long, default_value_t = 40)]
        tolerance_bits: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Idempotent states, their coideals and integrals.
    Coideals {
        #[command(flatten)]
        target: TargetArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Solvable and nilpotent series checks.
    Series {
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long, value_enum, alias = "mode")]
        kind: Option<SeriesArg>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Universal R-matrices of the Kac-Paljutkin algebra.
    Rmatrix {
        #[command(subcommand)]
        action: RmatrixAction,
    },
    /// Class-dimension multisets for dimension 2pq.
    Classdims {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        /// Comma-separated dimensions barred from non-unit classes; `p` and
        /// `q` are accepted as symbols.
        #[arg(long, default_value = "")]
        forbidden: String,
        /// Also replay the case analysis.
        #[arg(long)]
        walk: bool,
        /// Include every multiset in the output.
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run every reproduction criterion and print a table.
    ReproducePaper {
        #[arg(long, default_value_t = 7)]
        sekine_max_k: usize,
        /// Include the k = 15 nilpotency run.
        #[arg(long)]
        slow: bool,
        #[arg(long, default_value_t = DEFAULT_CANDIDATE_BOUND)]
        candidate_bound: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Subcommand, Debug)]
enum RmatrixAction {
    /// Solve for all R-matrices from scratch.
    Solve {
        #[arg(long, default_value_t = DEFAULT_CANDIDATE_BOUND)]
        candidate_bound: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Verify the closed-form families, or a tensor from a file.
    Verify {
        #[arg(long, value_enum, default_value_t = ReadingArg::Corrected)]
        reading: ReadingArg,
        #[arg(long)]
        file: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReadingArg {
    Literal,
    Corrected,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SeriesArg {
    Solvable,
    Nilpotent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TargetKind {
    Kp,
    Sekine,
    GroupAlgebra,
    FunctionAlgebra,
    Descriptor,
}

#[derive(Args, Debug)]
struct TargetArgs {
    #[arg(value_enum)]
    target: TargetKind,
    /// Descriptor file, for `descriptor`.
    path: Option<PathBuf>,
    #[arg(long)]
    k: Option<usize>,
    /// Group name such as z4 or z2xz4.
    #[arg(long)]
    group: Option<String>,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Print the JSON report instead of a table.
    #[arg(long)]
    json: bool,
    /// Also write the JSON report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn load_model(t: &TargetArgs) -> Result<Model> {
    let group = || -> Result<FiniteGroupTable> {
        let name = t.group.as_deref().ok_or_else(|| anyhow!("--group is required for this target"))?;
        Ok(FiniteGroupTable::from_name(name)?)
    };
    let (h, axioms, k): (HopfData, Option<AxiomReport>, Option<usize>) = match t.target {
        TargetKind::Kp => (kac_paljutkin(), None, None),
        TargetKind::Sekine => {
            let k = t.k.ok_or_else(|| anyhow!("--k is required for sekine"))?;
            (sekine(k)?, None, Some(k))
        }
        TargetKind::GroupAlgebra => (group_algebra(&group()?)?, None, None),
        TargetKind::FunctionAlgebra => (function_algebra(&group()?)?, None, None),
        TargetKind::Descriptor => {
            let path = t.path.as_ref().ok_or_else(|| anyhow!("descriptor path required"))?;
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let (h, report) = descriptor::import(&text)?;
            (h, Some(report), None)
        }
    };
    let kind = match t.target {
        TargetKind::Kp => checks::ModelKind::Kp,
        TargetKind::Sekine => checks::ModelKind::Sekine(k.expect("set above")),
        _ => checks::ModelKind::Generic,
    };
    Ok(Model { h, kind, axioms })
}

fn parse_checks(s: &str, model: &Model) -> Result<Vec<Check>> {
    if s == "all" {
        return Ok(Check::ALL.iter().copied().filter(|c| model.supports(*c)).collect());
    }
    s.split(',')
        .map(|c| Check::from_name(c.trim()).ok_or_else(|| anyhow!("unknown check `{c}`")))
        .collect()
}

fn emit(report: &RunReport, output: &OutputArgs) -> Result<()> {
    let text = serde_json::to_string_pretty(report).expect("serializable");
    if let Some(path) = &output.out {
        std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
    }
    if output.json {
        println!("{text}");
    } else {
        print!("{}", report.render_table());
    }
    Ok(())
}

fn emit_value(v: &Value, out: &Option<PathBuf>) -> Result<()> {
    let text = serde_json::to_string_pretty(v).expect("serializable");
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn run_checks(model: &Model, list: &[Check], opts: &checks::Options, report: &mut RunReport) -> Result<()> {
    for &c in list {
        let start = Instant::now();
        let results = checks::run(model, c, opts)?;
        report.timing(c.name(), start.elapsed());
        report.checks.extend(results);
        if c == Check::Hopf && !report.checks.iter().all(|r| r.passed) {
            report.note("structure is not a Hopf algebra; remaining checks skipped");
            break;
        }
    }
    Ok(())
}

fn command(cli: Cli, argv: Vec<String>) -> Result<bool> {
    match cli.command {
        Command::Build { target, out } => {
            let model = load_model(&target)?;
            emit_value(&descriptor::to_json(&model.h), &out)?;
            Ok(true)
        }
        Command::Verify { target, checks, rmatrix, candidate_bound, tolerance_bits, output } => {
            let model = load_model(&target)?;
            let mut list = parse_checks(&checks, &model)?;
            if model.axioms.is_some() && list.first() != Some(&Check::Hopf) {
                list.retain(|c| *c != Check::Hopf);
                list.insert(0, Check::Hopf);
            }
            let candidate = match &rmatrix {
                Some(path) => {
                    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                    let v: Value = serde_json::from_str(&text)?;
                    Some(descriptor::tensor_from_json(&model.h, &v)?)
                }
                None => None,
            };
            let opts = checks::Options { candidate_bound, tolerance_bits, candidate };
            let mut report = RunReport::new(argv, Some(&model.h));
            run_checks(&model, &list, &opts, &mut report)?;
            emit(&report, &output)?;
            Ok(report.passed())
        }
        Command::Coideals { target, output } => {
            let model = load_model(&target)?;
            let mut report = RunReport::new(argv, Some(&model.h));
            run_checks(&model, &[Check::Coideals], &checks::Options::default(), &mut report)?;
            emit(&report, &output)?;
            Ok(report.passed())
        }
        Command::Series { target, kind, output } => {
            let model = load_model(&target)?;
            let list = match kind {
                Some(SeriesArg::Solvable) => vec![Check::SeriesSolvable],
                Some(SeriesArg::Nilpotent) => vec![Check::SeriesNilpotent],
                None => vec![Check::SeriesSolvable, Check::SeriesNilpotent],
            };
            let mut report = RunReport::new(argv, Some(&model.h));
            run_checks(&model, &list, &checks::Options::default(), &mut report)?;
            emit(&report, &output)?;
            Ok(report.passed())
        }
        Command::Rmatrix { action } => rmatrix_command(action, argv),
        Command::Classdims { p, q, forbidden, walk, list, output } => {
            let forbidden = parse_forbidden(&forbidden, p, q)?;
            let ms = enumerate_multisets(p, q, &forbidden)?;
            let mut data = json!({
                "p": p,
                "q": q,
                "dimension": 2 * p * q,
                "forbidden": forbidden,
                "count": ms.len(),
            });
            if list {
                data["multisets"] = json!(ms.iter().map(|m| &m.dims).collect::<Vec<_>>());
            }
            if walk {
                data["walk"] = serde_json::to_value(proof_walk(p, q)?).expect("serializable");
            }
            let mut report = RunReport::new(argv, None);
            report.checks.push(CheckResult::new("classdims", None, true, format!("{} multisets", ms.len())).with_data(data));
            emit(&report, &output)?;
            Ok(true)
        }
        Command::ReproducePaper { sekine_max_k, slow, candidate_bound, output } => {
            if sekine_max_k < 3 {
                return Err(anyhow!("--sekine-max-k must be at least 3"));
            }
            let opts = ReproduceOptions { sekine_max_k, slow, candidate_bound };
            let mut report = RunReport::new(argv, None);
            for (r, elapsed) in run_all(&opts) {
                let key = format!("criterion {}", r.id);
                report.timing(&key, elapsed);
                let summary = if r.failures.is_empty() { r.details.join("; ") } else { r.failures.join("; ") };
                let mut c = CheckResult::new(&key, Some(r.claim), r.passed, format!("{}: {summary}", r.title));
                c.witnesses = r.failures.clone();
                report.checks.push(c);
            }
            emit(&report, &output)?;
            Ok(report.passed())
        }
    }
}

fn rmatrix_command(action: RmatrixAction, argv: Vec<String>) -> Result<bool> {
    let h = kac_paljutkin();
    match action {
        RmatrixAction::Solve { candidate_bound, output } => {
            let mut report = RunReport::new(argv, Some(&h));
            let start = Instant::now();
            let solved = solve_kp_rmatrices(&h, candidate_bound)?;
            report.timing("solve", start.elapsed());
            let candidates: Vec<Value> = solved
                .candidates
                .iter()
                .zip(&solved.reports)
                .map(|(c, r)| {
                    let (b, cc, d) = kp_coefficients(&h, &c.tensor);
                    let lit = |v: &[fqg_core::CycNum; 4]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
                    json!({
                        "case": kp_case(&h, &c.tensor),
                        "B": lit(&b),
                        "C": lit(&cc),
                        "D": lit(&d),
                        "report": r,
                    })
                })
                .collect();
            let a_matrix = solved.a_matrix.as_ref().map(|m| m.iter().map(|row| row.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>());
            let all = solved.candidates.len() == 8 && solved.reports.iter().all(|r| r.all_pass());
            let data = json!({
                "intertwiner_nullity": solved.intertwiner_nullity,
                "affine_parameters": solved.affine_parameters,
                "quadratic_equations": solved.quadratic_equations,
                "branches": solved.stats.branches,
                "rejected": solved.rejected,
                "a_matrix": a_matrix,
                "candidates": candidates,
            });
            let summary = format!("{} R-matrices found", solved.candidates.len());
            report.checks.push(CheckResult::new("rmatrix-solve", Some("eight R-matrices"), all, summary).with_data(data));
            emit(&report, &output)?;
            Ok(report.passed())
        }
        RmatrixAction::Verify { reading, file, output } => {
            let mut report = RunReport::new(argv, Some(&h));
            let tensors = match &file {
                Some(path) => {
                    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                    let v: Value = serde_json::from_str(&text)?;
                    vec![("file".to_string(), descriptor::tensor_from_json(&h, &v)?)]
                }
                None => {
                    let reading = match reading {
                        ReadingArg::Literal => FamilyReading::Literal,
                        ReadingArg::Corrected => FamilyReading::Corrected,
                    };
                    kp_closed_form_rmatrices(&h, reading)
                        ?
                        .into_iter()
                        .enumerate()
                        .map(|(i, c)| (format!("family {}", i + 1), c.tensor))
                        .collect()
                }
            };
            for (name, t) in tensors {
                let r = verify_rmatrix(&h, &t)?;
                let mut c = CheckResult::new(&name, None, r.all_pass(), format!("case {:?}, A_R dim {}", kp_case(&h, &t), r.minimal.dim));
                c.witnesses = checks::rreport_witnesses(&r);
                report.checks.push(c.with_data(serde_json::to_value(&r).expect("serializable")));
            }
            emit(&report, &output)?;
            Ok(report.passed())
        }
    }
}

fn parse_forbidden(s: &str, p: u64, q: u64) -> Result<BTreeSet<u64>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| match t {
            "p" => Ok(p),
            "q" => Ok(q),
            "pq" => Ok(p * q),
            "2p" => Ok(2 * p),
            "2q" => Ok(2 * q),
            _ => t.parse().map_err(|_| anyhow!("bad forbidden entry `{t}`")),
        })
        .collect()
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("FQG_THREADS") {
        let n: usize = v.parse().map_err(|_| anyhow!("FQG_THREADS must be a positive integer"))?;
        if n == 0 {
            bail!("FQG_THREADS must be a positive integer");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let outcome = configure_threads().and_then(|_| command(cli, argv));
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
