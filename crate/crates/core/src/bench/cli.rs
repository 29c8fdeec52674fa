//! Command line front end. `run` takes the argument vector and output
//! streams and returns the exit status, so it can be tested in-process.
//!
//! Exit status: 0 success or `true`, 1 `false`, 2 inconsistent domain,
//! 3 errors (usage, files, parsing, grounding), 4 budget exhausted.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use super::{run_experiment, ExperimentSpec};
use crate::corpus::{generate_spec, ground_default, run_golden, ZooSpec, ZooVariant};
use crate::ground::{dump, GroundTheory};
use crate::parser::{parse_domain_sources, parse_goals, parse_query, ParseError};
use crate::query::{answer_with, check_consistency_with, Answer, Mode, Query, QueryError, QueryOptions};
use crate::sat::{answer_sat, compile, to_dimacs, SatError};
use crate::syntax::DomainDescription;

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INCONSISTENT: i32 = 2;
pub const EXIT_ERROR: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "lang-e", version, about = "Query action domains: consistency, entailment, grounding, benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Credulous,
    Skeptical,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BackendArg {
    Engine,
    Sat,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse, validate, ground, and check that the domain has a model.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Answer a query. Domain files are read in order as one description.
    Query {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Query file (`credulous { ... } horizon N.`).
        #[arg(long, conflicts_with = "goal", required_unless_present = "goal")]
        query: Option<PathBuf>,
        /// Comma-separated goals, e.g. "Light holds-at 4, Normal holds-at 2".
        #[arg(long)]
        goal: Option<String>,
        /// Defaults to the query file's mode, or skeptical with --goal.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long)]
        horizon: Option<u32>,
        #[arg(long, value_enum, default_value = "engine")]
        backend: BackendArg,
        #[arg(long, value_enum, default_value = "on")]
        slice: Switch,
        #[arg(long)]
        budget: Option<u64>,
        /// Print the JSON result record instead of the bare answer.
        #[arg(long)]
        json: bool,
        /// Print the witness trajectory, if any.
        #[arg(long)]
        witness: bool,
    },
    /// Ground a domain and print it, its size statistics, or its CNF.
    Ground {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        stats: bool,
        #[arg(long)]
        horizon: Option<u32>,
        /// Write the CNF here and the clause provenance to `PATH.map`.
        #[arg(long)]
        dimacs: Option<PathBuf>,
    },
    /// Run an experiment spec; writes TSV to --out and JSON lines next to it.
    Bench {
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Shipped corpus.
    Corpus {
        #[command(subcommand)]
        command: CorpusCommand,
    },
}

#[derive(Debug, Subcommand)]
enum CorpusCommand {
    /// Run every golden case.
    Verify,
    /// Print a generated Zoo domain.
    Generate {
        #[arg(long, default_value = "dual")]
        variant: String,
        #[arg(long, default_value_t = crate::corpus::ZOO_POSITIONS)]
        positions: usize,
    },
}

struct Failure(i32, String);

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure(EXIT_ERROR, e.to_string())
    }
}

fn fail(msg: impl ToString) -> Failure {
    Failure(EXIT_ERROR, msg.to_string())
}

fn located(files: &[PathBuf], e: &ParseError) -> String {
    let name = files.get(e.span.file as usize).map(|p| p.display().to_string()).unwrap_or_default();
    format!("{name}:{e}")
}

fn load(files: &[PathBuf], err: &mut dyn Write) -> Result<DomainDescription, Failure> {
    let texts = files
        .iter()
        .map(|p| std::fs::read_to_string(p).map_err(|e| fail(format!("{}: {e}", p.display()))))
        .collect::<Result<Vec<_>, _>>()?;
    let refs: Vec<&str> = texts.iter().map(String::as_str).collect();
    let unit = parse_domain_sources(&refs).map_err(|e| fail(located(files, &e)))?;
    for w in &unit.warnings {
        let name = files.get(w.span.file as usize).map(|p| p.display().to_string()).unwrap_or_default();
        writeln!(err, "{name}:{}: warning: {}", w.span, w.diagnostic.message)?;
    }
    Ok(unit.domain)
}

fn ground_at(d: &DomainDescription, horizon: Option<u32>) -> Result<GroundTheory, Failure> {
    let t = ground_default(d).map_err(fail)?;
    Ok(match horizon {
        Some(h) if h > t.horizon => t.with_horizon(h),
        _ => t,
    })
}

fn answer_code(a: Answer) -> i32 {
    match a {
        Answer::True => EXIT_TRUE,
        Answer::False => EXIT_FALSE,
        Answer::DomainInconsistent => EXIT_INCONSISTENT,
    }
}

fn query_error(e: QueryError) -> Failure {
    match e {
        QueryError::BudgetExceeded { .. } => Failure(EXIT_BUDGET, e.to_string()),
        _ => fail(e),
    }
}

fn sat_error(e: SatError) -> Failure {
    match e {
        SatError::BudgetExceeded { .. } => Failure(EXIT_BUDGET, e.to_string()),
        _ => fail(e),
    }
}

fn print_witness(out: &mut dyn Write, rows: &[Vec<String>]) -> std::io::Result<()> {
    for (t, s) in rows.iter().enumerate() {
        writeln!(out, "{t}: {}", s.join(", "))?;
    }
    Ok(())
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match cli.command {
        Command::Check { files, budget } => {
            let d = load(&files, err)?;
            let t = ground_at(&d, None)?;
            let r = check_consistency_with(&t, &QueryOptions { budget, slice: true }).map_err(query_error)?;
            let s = t.stats();
            writeln!(out, "{} fluents, {} ground laws per time point, horizon {}", s.fluents, s.per_time_point, t.horizon)?;
            if r.answer == Answer::True {
                writeln!(out, "consistent")?;
                Ok(EXIT_TRUE)
            } else {
                writeln!(out, "inconsistent")?;
                Ok(EXIT_INCONSISTENT)
            }
        }
        Command::Query { files, query, goal, mode, horizon, backend, slice, budget, json, witness } => {
            let d = load(&files, err)?;
            let mut q = match (&query, &goal) {
                (Some(p), _) => {
                    let text = std::fs::read_to_string(p).map_err(|e| fail(format!("{}: {e}", p.display())))?;
                    parse_query(&text, &d.signature).map_err(|e| fail(format!("{}:{e}", p.display())))?
                }
                (None, Some(g)) => {
                    Query::skeptical(parse_goals(g, &d.signature).map_err(|e| fail(format!("--goal:{e}")))?)
                }
                (None, None) => return Err(fail("one of --query or --goal is required")),
            };
            if let Some(m) = mode {
                q.mode = match m {
                    ModeArg::Credulous => Mode::Credulous,
                    ModeArg::Skeptical => Mode::Skeptical,
                };
            }
            if let Some(h) = horizon {
                q = q.with_horizon(h);
            }
            let t = ground_at(&d, None)?;
            match backend {
                BackendArg::Engine => {
                    let opts = QueryOptions { budget, slice: matches!(slice, Switch::On) };
                    let r = answer_with(&t, &q, &opts).map_err(query_error)?;
                    if json {
                        writeln!(out, "{}", r.to_record(&t))?;
                    } else {
                        writeln!(out, "{}", r.answer)?;
                    }
                    if witness {
                        if let Some(w) = &r.witness {
                            print_witness(out, &w.describe(&t))?;
                        }
                    }
                    Ok(answer_code(r.answer))
                }
                BackendArg::Sat => {
                    let r = answer_sat(&t, &q, budget).map_err(sat_error)?;
                    if json {
                        writeln!(out, "{}", serde_json::to_string(&r).expect("serializes"))?;
                    } else {
                        writeln!(out, "{}", r.answer)?;
                    }
                    if witness {
                        if let Some(w) = &r.witness {
                            let rows: Vec<Vec<String>> = w
                                .iter()
                                .map(|s| (0..s.len()).filter(|f| s.get(*f)).map(|f| t.fluents[f].to_string()).collect())
                                .collect();
                            print_witness(out, &rows)?;
                        }
                    }
                    Ok(answer_code(r.answer))
                }
            }
        }
        Command::Ground { files, stats, horizon, dimacs } => {
            let d = load(&files, err)?;
            let t = ground_at(&d, horizon)?;
            if let Some(path) = dimacs {
                let cnf = compile(&t).map_err(sat_error)?;
                std::fs::write(&path, to_dimacs(&cnf))?;
                let mut map = path.clone().into_os_string();
                map.push(".map");
                std::fs::write(&map, cnf.provenance_map())?;
                writeln!(out, "{} variables, {} clauses", cnf.num_vars, cnf.clauses.len())?;
            } else if stats {
                write!(out, "{}", t.stats())?;
            } else {
                write!(out, "{}", dump(&t))?;
            }
            Ok(EXIT_TRUE)
        }
        Command::Bench { spec, out: path } => {
            let spec = ExperimentSpec::from_file(&spec).map_err(fail)?;
            let table = run_experiment(&spec).map_err(fail)?;
            std::fs::write(&path, table.to_tsv())?;
            std::fs::write(path.with_extension("jsonl"), table.to_json_lines())?;
            for r in &table.rows {
                writeln!(out, "{}\t{}\t{}\t{:.3} ms\t{}", r.knobs, r.query, r.answer, r.median_ms, r.flag)?;
            }
            let broken: Vec<_> = table.flagged().filter(|r| r.flag != "budget-exceeded").collect();
            if broken.is_empty() {
                Ok(EXIT_TRUE)
            } else {
                writeln!(err, "{} flagged rows", broken.len())?;
                Ok(EXIT_ERROR)
            }
        }
        Command::Corpus { command: CorpusCommand::Verify } => {
            let report = run_golden(&QueryOptions { budget: None, slice: true });
            write!(out, "{report}")?;
            writeln!(out, "{} cases, {:.1} ms", report.outcomes.len(), report.total_time().as_secs_f64() * 1e3)?;
            Ok(if report.all_passed() { EXIT_TRUE } else { EXIT_FALSE })
        }
        Command::Corpus { command: CorpusCommand::Generate { variant, positions } } => {
            let v = ZooVariant::parse(&variant).ok_or_else(|| fail(format!("unknown variant `{variant}`")))?;
            if !(3..=15).contains(&positions) {
                return Err(fail("positions must lie in 3..=15"));
            }
            write!(out, "{}", generate_spec(&ZooSpec::new(v, positions)))?;
            Ok(EXIT_TRUE)
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_TRUE };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    run(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
