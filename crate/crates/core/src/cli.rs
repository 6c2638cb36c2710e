//! Command-line frontend. The `perron` binary only parses arguments and calls [`run`].
//!
//! Exit codes: 0 success, 1 a theorem/oracle disagreement in `crosscheck` or
//! `sweep`, 2 usage or input error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::classify::{cross_check, search_counterexamples_with, sweep, CrossCheckReport, DEFAULT_K_MAX};
use crate::digraph::digraph_of;
use crate::error::Error;
use crate::matrix::{companion, DenseMatrix};
use crate::poly::{parse_polynomial, Polynomial};
use crate::round_sig;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISAGREE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Classify,
    Crosscheck,
    Sweep,
    Search,
    Dump,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    /// Polynomials as expressions or coefficient lists.
    pub polys: Vec<String>,
    pub degree: usize,
    pub grid: Vec<f64>,
    pub budget: usize,
    pub seed: u64,
    pub k_max: u32,
    pub zero_eps: f64,
    pub dump_matrix: bool,
    pub dump_digraph: bool,
    pub output: OutputFormat,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        let (degree, grid) = match command {
            Command::Search => (3, vec![-2.0, -1.0, 0.0, 1.0, 2.0]),
            _ => (4, vec![0.0, 0.5, 1.0, 2.0]),
        };
        Self {
            command,
            polys: Vec::new(),
            degree,
            grid,
            budget: 100_000,
            seed: 0,
            k_max: DEFAULT_K_MAX,
            zero_eps: 0.0,
            dump_matrix: false,
            dump_digraph: false,
            output: OutputFormat::Text,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "perron", about = "Classify monic polynomials as (weakly) spectrally Perron")]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Debug, Subcommand)]
enum CliCommand {
    /// Classify one polynomial
    Classify(PolyArgs),
    /// Compare the gcd criterion with the numerical spectrum
    Crosscheck(PolyArgs),
    /// Cross-check every nonnegative-form polynomial with c_k from a grid
    Sweep(GridArgs),
    /// Look for spectrally Perron polynomials whose companion has no nonnegative power
    Search(GridArgs),
    /// Print the companion matrix and its digraph
    Dump(PolyArgs),
}

#[derive(Debug, Args)]
struct PolyArgs {
    /// Polynomial expression such as "t^3 - 2t^2 - t + 2" (use `--` before one starting with `-`)
    poly: Vec<String>,
    /// Coefficients, highest degree first, comma separated
    #[arg(long, allow_hyphen_values = true)]
    coeffs: Option<String>,
    /// Snap coefficients smaller than this in magnitude to zero
    #[arg(long, default_value_t = 0.0)]
    zero_eps: f64,
    #[arg(long)]
    dump_matrix: bool,
    #[arg(long)]
    dump_digraph: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct GridArgs {
    #[arg(long)]
    degree: Option<usize>,
    /// Comma-separated grid values
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    #[arg(long, default_value_t = 100_000)]
    budget: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_K_MAX)]
    k_max: u32,
    #[arg(long)]
    json: bool,
}

fn parse_grid(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| format!("bad grid value {s:?}")))
        .collect()
}

/// Parses command-line arguments (including the program name) into a [`RunConfig`].
pub fn parse_args<I, T>(args: I) -> Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    let usage = |msg: String| clap::Error::raw(clap::error::ErrorKind::ValueValidation, msg + "\n");
    let config = match cli.command {
        CliCommand::Classify(a) => poly_config(Command::Classify, a),
        CliCommand::Crosscheck(a) => poly_config(Command::Crosscheck, a),
        CliCommand::Dump(a) => poly_config(Command::Dump, a),
        CliCommand::Sweep(a) => grid_config(Command::Sweep, a).map_err(usage)?,
        CliCommand::Search(a) => grid_config(Command::Search, a).map_err(usage)?,
    };
    if matches!(config.command, Command::Classify | Command::Crosscheck | Command::Dump)
        && config.polys.is_empty()
    {
        return Err(usage("a polynomial or --coeffs is required".into()));
    }
    Ok(config)
}

fn poly_config(command: Command, a: PolyArgs) -> RunConfig {
    let mut config = RunConfig::new(command);
    config.polys = a.poly;
    config.polys.extend(a.coeffs);
    config.zero_eps = a.zero_eps;
    config.dump_matrix = a.dump_matrix;
    config.dump_digraph = a.dump_digraph;
    if command == Command::Dump && !a.dump_matrix && !a.dump_digraph {
        config.dump_matrix = true;
        config.dump_digraph = true;
    }
    config.output = if a.json { OutputFormat::Json } else { OutputFormat::Text };
    config
}

fn grid_config(command: Command, a: GridArgs) -> Result<RunConfig, String> {
    let mut config = RunConfig::new(command);
    if let Some(d) = a.degree {
        config.degree = d;
    }
    if let Some(g) = a.grid {
        config.grid = parse_grid(&g)?;
    }
    config.budget = a.budget;
    config.seed = a.seed;
    config.k_max = a.k_max;
    config.output = if a.json { OutputFormat::Json } else { OutputFormat::Text };
    Ok(config)
}

/// Formats a float with [`crate::REPORT_DIGITS`] significant digits.
pub fn fmt_float(x: f64) -> String {
    format!("{}", round_sig(x))
}

/// Runs a command; normal output goes to `out`, diagnostics to `diag`.
pub fn run(config: &RunConfig, out: &mut dyn Write, diag: &mut dyn Write) -> i32 {
    match dispatch(config, out, diag) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(diag, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum RunError {
    #[error(transparent)]
    Domain(#[from] Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn dispatch(config: &RunConfig, out: &mut dyn Write, diag: &mut dyn Write) -> Result<i32, RunError> {
    match config.command {
        Command::Classify | Command::Crosscheck | Command::Dump => {
            let polys = config
                .polys
                .iter()
                .map(|text| {
                    let p = parse_polynomial(text)?;
                    if let Some(lead) = p.normalized_from() {
                        writeln!(diag, "note: {text:?} divided through by leading coefficient {lead}")?;
                    }
                    Ok(p.snap_zeros(config.zero_eps))
                })
                .collect::<Result<Vec<_>, RunError>>()?;
            match config.command {
                Command::Classify => classify_cmd(config, &polys, out),
                Command::Crosscheck => crosscheck_cmd(config, &polys, out),
                _ => dump_cmd(config, &polys, out),
            }
        }
        Command::Sweep => sweep_cmd(config, out),
        Command::Search => search_cmd(config, out),
    }
}

fn matrix_rows(m: &DenseMatrix) -> Value {
    Value::Array((0..m.dim()).map(|i| json!(m.row(i).iter().map(|x| x + 0.0).collect::<Vec<_>>())).collect())
}

fn dumps_json(config: &RunConfig, p: &Polynomial, obj: &mut serde_json::Map<String, Value>) {
    let c = companion(p);
    if config.dump_matrix {
        obj.insert("matrix".into(), matrix_rows(&c));
    }
    if config.dump_digraph {
        obj.insert("arcs".into(), json!(digraph_of(&c).arcs()));
    }
}

fn dumps_text(config: &RunConfig, p: &Polynomial, out: &mut dyn Write) -> std::io::Result<()> {
    let c = companion(p);
    if config.dump_matrix {
        write!(out, "{c}")?;
    }
    if config.dump_digraph {
        for (i, j) in digraph_of(&c).arcs() {
            writeln!(out, "{i} -> {j}")?;
        }
    }
    Ok(())
}

fn emit_json(out: &mut dyn Write, values: Vec<Value>) -> Result<(), RunError> {
    let doc = if values.len() == 1 { values.into_iter().next().unwrap() } else { Value::Array(values) };
    serde_json::to_writer_pretty(&mut *out, &doc)?;
    writeln!(out)?;
    Ok(())
}

fn record_value(report: &CrossCheckReport) -> Result<serde_json::Map<String, Value>, RunError> {
    match serde_json::to_value(report.record())? {
        Value::Object(map) => Ok(map),
        _ => unreachable!("records serialize as objects"),
    }
}

fn classify_line(r: &CrossCheckReport) -> String {
    if r.d == 0 {
        return format!("{} (d = 0, nilpotent companion)", r.numerical_verdict.verdict);
    }
    let theorem = r
        .theorem_verdict
        .as_ref()
        .map_or("inapplicable".to_string(), |t| t.verdict.to_string());
    format!(
        "{} (d = {}, rho = {}, peripheral = {}, theorem = {})",
        r.numerical_verdict.verdict,
        r.d,
        fmt_float(r.spectrum.rho),
        r.peripheral_count,
        theorem
    )
}

fn classify_cmd(config: &RunConfig, polys: &[Polynomial], out: &mut dyn Write) -> Result<i32, RunError> {
    let mut values = Vec::new();
    for p in polys {
        let report = cross_check(p)?;
        match config.output {
            OutputFormat::Json => {
                let mut obj = record_value(&report)?;
                obj.insert("spectrum".into(), serde_json::to_value(&report.spectrum)?);
                dumps_json(config, p, &mut obj);
                values.push(Value::Object(obj));
            }
            OutputFormat::Text => {
                writeln!(out, "{}", classify_line(&report))?;
                dumps_text(config, p, out)?;
            }
        }
    }
    if config.output == OutputFormat::Json {
        emit_json(out, values)?;
    }
    Ok(EXIT_OK)
}

fn crosscheck_cmd(config: &RunConfig, polys: &[Polynomial], out: &mut dyn Write) -> Result<i32, RunError> {
    let mut values = Vec::new();
    let mut all_agree = true;
    for p in polys {
        let report = cross_check(p)?;
        all_agree &= report.agree;
        match config.output {
            OutputFormat::Json => {
                let mut obj = record_value(&report)?;
                dumps_json(config, p, &mut obj);
                values.push(Value::Object(obj));
            }
            OutputFormat::Text => {
                writeln!(out, "{}", text_record(&report))?;
                dumps_text(config, p, out)?;
            }
        }
    }
    if config.output == OutputFormat::Json {
        emit_json(out, values)?;
    }
    Ok(if all_agree { EXIT_OK } else { EXIT_DISAGREE })
}

fn text_record(r: &CrossCheckReport) -> String {
    let theorem = r
        .theorem_verdict
        .as_ref()
        .map_or("inapplicable".to_string(), |t| t.verdict.to_string());
    format!(
        "{}: theorem = {}, numerical = {}, d = {}, rho = {}, peripheral = {}, agree = {}",
        r.polynomial,
        theorem,
        r.numerical_verdict.verdict,
        r.d,
        fmt_float(r.spectrum.rho),
        r.peripheral_count,
        r.agree
    )
}

fn dump_cmd(config: &RunConfig, polys: &[Polynomial], out: &mut dyn Write) -> Result<i32, RunError> {
    let mut values = Vec::new();
    for p in polys {
        match config.output {
            OutputFormat::Json => {
                let mut obj = serde_json::Map::new();
                obj.insert("poly".into(), json!(p.to_string()));
                dumps_json(config, p, &mut obj);
                values.push(Value::Object(obj));
            }
            OutputFormat::Text => dumps_text(config, p, out)?,
        }
    }
    if config.output == OutputFormat::Json {
        emit_json(out, values)?;
    }
    Ok(EXIT_OK)
}

fn sweep_cmd(config: &RunConfig, out: &mut dyn Write) -> Result<i32, RunError> {
    let reports = sweep(config.degree, &config.grid, config.budget, config.seed)?;
    let disagreements = reports.iter().filter(|r| !r.agree).count();
    match config.output {
        OutputFormat::Json => {
            let records: Vec<_> = reports.iter().map(CrossCheckReport::record).collect();
            let doc = json!({
                "command": "sweep",
                "degree": config.degree,
                "grid": config.grid,
                "budget": config.budget,
                "seed": config.seed,
                "instances": reports.len(),
                "disagreements": disagreements,
                "reports": records,
            });
            serde_json::to_writer_pretty(&mut *out, &doc)?;
            writeln!(out)?;
        }
        OutputFormat::Text => {
            writeln!(
                out,
                "sweep degree {} over grid {:?}: {} instances, {} disagreements",
                config.degree,
                config.grid,
                reports.len(),
                disagreements
            )?;
            for r in reports.iter().filter(|r| !r.agree) {
                writeln!(out, "DISAGREE {}", text_record(r))?;
            }
        }
    }
    Ok(if disagreements == 0 { EXIT_OK } else { EXIT_DISAGREE })
}

fn search_cmd(config: &RunConfig, out: &mut dyn Write) -> Result<i32, RunError> {
    let found =
        search_counterexamples_with(config.degree, &config.grid, config.budget, config.seed, config.k_max)?;
    match config.output {
        OutputFormat::Json => {
            let records: Vec<_> = found.iter().map(CrossCheckReport::record).collect();
            let doc = json!({
                "command": "search",
                "degree": config.degree,
                "grid": config.grid,
                "budget": config.budget,
                "seed": config.seed,
                "k_max": config.k_max,
                "found": records,
            });
            serde_json::to_writer_pretty(&mut *out, &doc)?;
            writeln!(out)?;
        }
        OutputFormat::Text => {
            writeln!(
                out,
                "{} spectrally Perron polynomials with no nonnegative companion power up to k = {} \
                 (bounded evidence, not a proof)",
                found.len(),
                config.k_max
            )?;
            for r in &found {
                writeln!(out, "{}  rho = {}", r.polynomial, fmt_float(r.spectrum.rho))?;
            }
        }
    }
    Ok(EXIT_OK)
}
