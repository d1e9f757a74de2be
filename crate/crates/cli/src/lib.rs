//! Command-line front end for the contact curve counter.

pub mod format;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};
use legendrian::bott::DEFAULT_SEED;
use legendrian::cache::{cache_dir_from_env, load_or_enumerate};
use legendrian::verify::{self, Scope};
use legendrian::{
    count, draw_weights, full_table, graph_contribution, Census, CountConfig, Error,
    IncidenceSpec,
};
use serde::Serialize;

use crate::format::{Format, Row};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DIMENSION: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "legendrian", version, about = "Count rational contact curves in P^{2n+1}")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of contact curves through one set of general subspaces.
    Count(CountArgs),
    /// Every admissible condition vector for one (n, d).
    Table(TableArgs),
    /// Fixed-locus graph census in cache format.
    Graphs(GraphsArgs),
    /// Run the self-check suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct EngineArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Independent weight draws that must agree (at least 2).
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(2..))]
    pub passes: u64,
    /// Worker threads for the graph sum (default: all cores).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,
    /// Recompute every incidence class through the Chern character route.
    #[arg(long)]
    pub oracle_check: bool,
}

impl EngineArgs {
    fn config(&self) -> CountConfig {
        CountConfig {
            seed: self.seed,
            passes: self.passes as usize,
            threads: self.threads.map(|t| t as usize),
            oracle_check: self.oracle_check,
            cache_dir: cache_dir_from_env(),
            ..CountConfig::default()
        }
    }
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, short)]
    pub degree: u32,
    /// Multiplicities a_2,...,a_{2n+1}.
    #[arg(long, value_delimiter = ',', required = true)]
    pub conditions: Vec<u32>,
    /// Degree of the subvarieties in each codimension slot (default all 1).
    #[arg(long, value_delimiter = ',')]
    pub multipliers: Option<Vec<u64>>,
    /// Print each graph's contribution at the first weight draw.
    #[arg(long)]
    pub show_contributions: bool,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, short)]
    pub degree: u32,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("space").required(true).args(["n", "big_n"])))]
pub struct GraphsArgs {
    /// Contact space P^{2n+1}.
    #[arg(long)]
    pub n: Option<u32>,
    /// Ambient P^N directly.
    #[arg(long = "N", id = "big_n", value_name = "N")]
    pub big_n: Option<u32>,
    #[arg(long, short)]
    pub degree: u32,
    /// Write the census here instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "p3", value_parser = parse_scope)]
    pub scope: Scope,
    #[command(flatten)]
    pub engine: EngineArgs,
}

fn parse_scope(s: &str) -> Result<Scope, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Error with the exit status it maps to.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ConditionArity { .. } | Error::CodimensionRange { .. } | Error::Domain(_) => EXIT_USAGE,
            Error::DimensionMismatch { .. } => EXIT_DIMENSION,
            Error::Verification(_) => EXIT_VERIFICATION,
            _ => EXIT_FAILURE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Failure { code: EXIT_OK, message: String::new() };
        }
        Failure { code: EXIT_FAILURE, message: e.to_string() }
    }
}

type Outcome = Result<i32, Failure>;

/// Parse `args` (including the program name) and run the command, writing
/// to `out` and `err`. Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let result = match cli.command {
        Command::Count(a) => cmd_count(&a, out),
        Command::Table(a) => cmd_table(&a, out),
        Command::Graphs(a) => cmd_graphs(&a, out, err),
        Command::Verify(a) => cmd_verify(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            if !f.message.is_empty() {
                let _ = writeln!(err, "error: {}", f.message);
            }
            f.code
        }
    }
}

#[derive(Serialize)]
struct CountReport<'a> {
    n: u32,
    degree: u32,
    conditions: &'a [u32],
    multipliers: &'a [u64],
    count: String,
    census_size: usize,
    draws: Vec<DrawReport>,
}

#[derive(Serialize)]
struct DrawReport {
    seed: u64,
    attempt: u64,
}

fn cmd_count(a: &CountArgs, out: &mut dyn Write) -> Outcome {
    let mut spec = IncidenceSpec::new(a.n, a.conditions.clone())?;
    if let Some(m) = &a.multipliers {
        spec = spec.with_multipliers(m.clone())?;
    }
    let config = a.engine.config();
    let result = count(a.n, a.degree, &spec, &config)?;
    let value = result.count.to_string();

    let row = [Row { conditions: a.conditions.clone(), count: value.clone() }];
    match a.format {
        Format::Plain => {
            writeln!(out, "{value}")?;
            writeln!(out, "space: P^{}, degree {}", 2 * a.n + 1, a.degree)?;
            writeln!(out, "conditions: {spec}")?;
            if spec.multipliers().iter().any(|&m| m != 1) {
                let m: Vec<String> = spec.multipliers().iter().map(u64::to_string).collect();
                writeln!(out, "multipliers: {}", m.join(","))?;
            }
            writeln!(out, "graphs: {}", result.census_size)?;
            for d in &result.draws {
                writeln!(out, "draw: seed {} attempt {}", d.seed, d.attempt)?;
            }
            writeln!(out, "elapsed: {:.3}s", result.elapsed.as_secs_f64())?;
        }
        Format::Csv => out.write_all(format::render_csv(&row).as_bytes())?,
        Format::Markdown => out.write_all(format::render_markdown(a.degree, &row).as_bytes())?,
        Format::Json => {
            let report = CountReport {
                n: a.n,
                degree: a.degree,
                conditions: &a.conditions,
                multipliers: spec.multipliers(),
                count: value,
                census_size: result.census_size,
                draws: result
                    .draws
                    .iter()
                    .map(|d| DrawReport { seed: d.seed, attempt: d.attempt })
                    .collect(),
            };
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            writeln!(out, "{text}")?;
        }
    }

    if a.show_contributions {
        let draw = &result.draws[0];
        let w = draw_weights(spec.max_label(), draw.seed, draw.attempt);
        let census = legendrian::bott::census_for(a.n, a.degree, &config)?;
        let mut text = format!("contributions at seed {} attempt {}:\n", draw.seed, draw.attempt);
        for g in &census {
            let c = graph_contribution(g, a.n, a.degree, &spec, &w)?;
            writeln!(text, "{}\t{c}", g.code).unwrap();
        }
        out.write_all(text.as_bytes())?;
    }
    Ok(EXIT_OK)
}

fn cmd_table(a: &TableArgs, out: &mut dyn Write) -> Outcome {
    let config = a.engine.config();
    let start = std::time::Instant::now();
    let rows: Vec<Row> = full_table(a.n, a.degree, &config)?
        .into_iter()
        .map(|(spec, value)| Row { conditions: spec.counts().to_vec(), count: value.to_string() })
        .collect();
    out.write_all(format::render(a.format, a.degree, &rows).as_bytes())?;
    if a.format == Format::Plain {
        writeln!(out, "{} rows in {:.3}s", rows.len(), start.elapsed().as_secs_f64())?;
    }
    Ok(EXIT_OK)
}

fn cmd_graphs(a: &GraphsArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let max_label = match (a.n, a.big_n) {
        (Some(n), _) => 2 * n + 1,
        (None, Some(big)) => big,
        (None, None) => unreachable!("clap enforces the group"),
    };
    let census = match cache_dir_from_env() {
        Some(dir) => load_or_enumerate(&dir, max_label, a.degree)?,
        None => Census::enumerate(max_label, a.degree)?,
    };
    let text = census.render();

    let mut histogram = std::collections::BTreeMap::<u64, usize>::new();
    for g in &census.classes {
        *histogram.entry(g.a_gamma).or_default() += 1;
    }
    let mut summary = format!("classes: {}\n", census.classes.len());
    for (a_gamma, k) in histogram {
        writeln!(summary, "a_G = {a_gamma}: {k}").unwrap();
    }

    match &a.output {
        Some(path) => {
            fs::write(path, text)?;
            out.write_all(summary.as_bytes())?;
        }
        None => {
            out.write_all(text.as_bytes())?;
            err.write_all(summary.as_bytes())?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Outcome {
    let config = a.engine.config();
    let mut failed = 0;
    let mut report = |name: &str, passed: bool, detail: &str, out: &mut dyn Write| -> std::io::Result<()> {
        if !passed {
            failed += 1;
        }
        writeln!(out, "{}  {name}: {detail}", if passed { "PASS" } else { "FAIL" })
    };
    match verify::census_sizes() {
        Ok(detail) => report("census P^3", true, &detail, out)?,
        Err(e) => report("census P^3", false, &e.to_string(), out)?,
    }
    for c in verify::run(a.scope, &config) {
        report(&c.name, c.passed, &c.detail, out)?;
    }
    writeln!(out, "scope {}: {} passes per count, {failed} failed", a.scope, config.passes)?;
    Ok(if failed == 0 { EXIT_OK } else { EXIT_VERIFICATION })
}
