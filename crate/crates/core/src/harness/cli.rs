//! Command-line front end. Exit codes: 0 success, 1 a bound or expectation
//! failed, 2 usage, input or numerical error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::bounds::{compare_all, evaluate_bound, singular_value_bounds, BoundId, BoundReport};
use crate::error::{Error, Result};
use crate::harness::io::{load_matrices, select, write_text};
use crate::harness::registry::run_paper_checks;
use crate::harness::report::{
    bound_table, components_table, paper_check_tables, radius_table, render, suite_headline, suite_tables,
    ReportFormat, Table,
};
use crate::harness::suite::{run_random_suite, SuiteConfig, DEFAULT_SEED};
use crate::numradius::numerical_radius;
use crate::tolerance::ToleranceConfig;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable overriding the default suite seed.
pub const SEED_ENV: &str = "OPINEQ_SEED";

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Md,
}

#[derive(Debug, Parser)]
#[command(
    name = "opineq",
    version,
    about = "Certified numerical radii and operator inequality checks"
)]
struct Cli {
    /// Requested radius certificate width (relative to 1 + lower).
    #[arg(long, global = true, value_name = "TOL")]
    tol_radius: Option<f64>,
    /// Violation threshold on normalized slacks.
    #[arg(long, global = true, value_name = "TOL")]
    tol_slack: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Certified numerical radius of one matrix.
    Radius { file: PathBuf, name: String },
    /// Evaluate one bound on the named matrices.
    Eval {
        bound: String,
        file: PathBuf,
        #[arg(required = true)]
        names: Vec<String>,
    },
    /// Evaluate every applicable bound, tightest first.
    Compare {
        file: PathBuf,
        #[arg(required = true)]
        names: Vec<String>,
    },
    /// Recompute the bundled worked examples.
    PaperCheck,
    /// Randomized soundness sweep.
    RandomSuite {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Master seed; defaults to $OPINEQ_SEED, then 42.
        #[arg(long)]
        seed: Option<u64>,
        /// Dimension range, `lo-hi` or a single value.
        #[arg(long, default_value = "2-5")]
        dims: String,
        /// Tuple size range, `lo-hi` or a single value.
        #[arg(long, default_value = "1-5")]
        tuple: String,
    },
}

/// Parses `"2-5"` or `"3"`.
pub fn parse_range(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::InvalidArgument(format!("malformed range `{s}`, expected `lo-hi`"));
    let num = |x: &str| x.trim().parse::<usize>().map_err(|_| bad());
    match s.split_once('-') {
        Some((lo, hi)) => Ok((num(lo)?, num(hi)?)),
        None => {
            let v = num(s)?;
            Ok((v, v))
        }
    }
}

fn tolerances(cli: &Cli) -> Result<ToleranceConfig> {
    let mut cfg = ToleranceConfig::default();
    if let Some(t) = cli.tol_radius {
        cfg = cfg.with_radius_tol(t)?;
    }
    if let Some(t) = cli.tol_slack {
        cfg = cfg.with_slack_tol(t)?;
    }
    Ok(cfg)
}

fn resolve_seed(flag: Option<u64>, env: Option<&str>) -> Result<u64> {
    match (flag, env) {
        (Some(s), _) => Ok(s),
        (None, Some(v)) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("{SEED_ENV}=`{v}` is not an unsigned integer"))),
        (None, None) => Ok(DEFAULT_SEED),
    }
}

struct Outcome {
    tables: Vec<Table>,
    ok: bool,
    note: Option<String>,
}

fn all_hold(reports: &[BoundReport]) -> bool {
    reports.iter().all(|r| r.holds)
}

fn execute(cli: &Cli, env_seed: Option<&str>) -> Result<Outcome> {
    let cfg = tolerances(cli)?;
    let out = match &cli.command {
        Command::Radius { file, name } => {
            let ms = load_matrices(file)?;
            let t = select(&ms, std::slice::from_ref(name))?.remove(0);
            let est = numerical_radius(&t, &cfg)?;
            Outcome {
                tables: vec![radius_table(name, &est)],
                ok: true,
                note: (!est.converged).then(|| "evaluation budget exhausted; enclosure is wider than requested".into()),
            }
        }
        Command::Eval { bound, file, names } => {
            let bound: BoundId = bound.parse()?;
            let ops = select(&load_matrices(file)?, names)?;
            let reports = if bound == BoundId::B12 {
                singular_value_bounds(&ops, &cfg)?
            } else {
                vec![evaluate_bound(bound, &ops, &cfg)?]
            };
            Outcome {
                ok: all_hold(&reports),
                tables: vec![bound_table(&reports), components_table(&reports)],
                note: None,
            }
        }
        Command::Compare { file, names } => {
            let ops = select(&load_matrices(file)?, names)?;
            let reports = compare_all(&ops, &cfg)?;
            Outcome {
                ok: all_hold(&reports),
                tables: vec![bound_table(&reports)],
                note: None,
            }
        }
        Command::PaperCheck => {
            let report = run_paper_checks(&cfg)?;
            let flagged = report.discrepancies().count();
            Outcome {
                ok: report.passed(),
                tables: paper_check_tables(&report),
                note: (flagged > 0)
                    .then(|| format!("{flagged} printed value(s) flagged as inconsistent with recomputation")),
            }
        }
        Command::RandomSuite {
            trials,
            seed,
            dims,
            tuple,
        } => {
            let suite = SuiteConfig {
                trials: *trials,
                dim_range: parse_range(dims)?,
                tuple_range: parse_range(tuple)?,
                seed: resolve_seed(*seed, env_seed)?,
                tolerances: cfg,
            };
            let report = run_random_suite(&suite)?;
            Outcome {
                ok: report.passed(),
                tables: suite_tables(&report),
                note: Some(suite_headline(&report)),
            }
        }
    };
    Ok(out)
}

/// Runs the CLI on `args` (including the program name). `env_seed` is the
/// value of `OPINEQ_SEED`, if set.
pub fn run<I, S>(args: I, env_seed: Option<&str>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let outcome = match execute(&cli, env_seed) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let format = match cli.format {
        FormatArg::Csv => ReportFormat::Csv,
        FormatArg::Md => ReportFormat::Markdown,
    };
    let text = render(&outcome.tables, format);
    match &cli.out {
        Some(path) => {
            if let Err(e) = write_text(path, &text) {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_USAGE;
            }
        }
        None => {
            let _ = stdout.write_all(text.as_bytes());
        }
    }
    if let Some(note) = outcome.note {
        let _ = writeln!(stderr, "{note}");
    }
    if outcome.ok {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}
