//! Command implementations behind the `ember` binary.
//!
//! Exit codes: 0 success, 1 registry validation failure, 2 configuration
//! error (bad flag, key, name or dimension), 3 evaluation error.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use ember_core::baselines::{OptimizerRegistry, OptimizerSpec, ParamValue};
use ember_core::functions::{Attribute, DimClass, Registry};
use ember_core::harness::{
    self, export_history, rank_top3, read_results, run_grid, summarize, summary::SummaryTable,
    GridOptions, RunRecord, SettingGrouping, Status,
};
use ember_core::Error;

pub mod config;

pub use config::RunConfigFile;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_EVALUATION: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        Self { code: EXIT_CONFIG, message: message.into() }
    }

    /// Attach the flag or key that produced `err`.
    pub fn from_core(context: &str, err: Error) -> Self {
        let code = if err.is_evaluation() { EXIT_EVALUATION } else { EXIT_CONFIG };
        Self { code, message: format!("{context}: {err}") }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

pub type CliResult<T = ()> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "ember", version, about = "Firefighter optimization and baseline benchmark runner")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one optimizer on one function.
    Run(RunArgs),
    /// Run an experiment grid from a JSON config or preset.
    Grid(GridArgs),
    /// Check every function against its published minimum.
    Validate(ValidateArgs),
    /// Aggregate a results CSV per algorithm.
    Summarize(SummarizeArgs),
    /// Top-3 rankings from a results CSV.
    Rank(RankArgs),
    /// List registered functions.
    List(ListArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Toggle {
    On,
    Off,
}

impl Toggle {
    fn enabled(self) -> bool {
        self == Toggle::On
    }
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Benchmark function name.
    #[arg(long = "fn", value_name = "NAME")]
    pub function: String,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long, default_value = "ffo")]
    pub algo: String,
    #[arg(long, default_value_t = 100)]
    pub agents: usize,
    #[arg(long, default_value_t = 500)]
    pub iters: usize,
    #[arg(long, env = "EMBER_SEED", default_value_t = 0)]
    pub seed: u64,
    /// FFO stagnation and target-fitness stopping rules.
    #[arg(long, value_enum)]
    pub conditions: Option<Toggle>,
    /// Optimizer parameter override, repeatable.
    #[arg(long = "param", value_name = "KEY=VALUE", value_parser = parse_param)]
    pub params: Vec<(String, ParamValue)>,
    /// Keep only the streaming distance, not the visited positions.
    #[arg(long)]
    pub no_trajectory: bool,
    /// Directory for the best-so-far history CSV.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// JSON grid configuration.
    #[arg(value_name = "CONFIG", required_unless_present = "preset")]
    pub config: Option<PathBuf>,
    #[arg(long, conflicts_with = "config")]
    pub preset: Option<String>,
    /// Comma-separated algorithm list replacing the configured one.
    #[arg(long, value_delimiter = ',')]
    pub algo: Option<Vec<String>>,
    /// Master seed; takes precedence over the config file.
    #[arg(long, env = "EMBER_SEED")]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub conditions: Option<Toggle>,
    #[arg(long)]
    pub no_trajectory: bool,
    /// Worker threads for the harness.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Output directory for results, summary, ranking and histories.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Largest accepted absolute residual.
    #[arg(long, default_value_t = 1e-3, allow_negative_numbers = true)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct SummarizeArgs {
    #[arg(value_name = "RESULTS")]
    pub results: PathBuf,
    /// Restrict to these dimensions.
    #[arg(long, value_delimiter = ',')]
    pub dim: Vec<usize>,
}

#[derive(Debug, Args)]
pub struct RankArgs {
    #[arg(value_name = "RESULTS")]
    pub results: PathBuf,
    /// Rank per function instead of pooling functions within a regime.
    #[arg(long)]
    pub per_function: bool,
}

#[derive(Debug, Args)]
pub struct ListArgs {
    /// Attribute filter, repeatable.
    #[arg(long)]
    pub tag: Vec<String>,
}

fn parse_param(raw: &str) -> Result<(String, ParamValue), String> {
    let (key, value) = raw
        .split_once('=')
        .ok_or_else(|| format!("expected KEY=VALUE, got `{raw}`"))?;
    let value = match value {
        "true" => ParamValue::Bool(true),
        "false" => ParamValue::Bool(false),
        v => ParamValue::Number(v.parse().map_err(|_| format!("`{v}` is not a number or boolean"))?),
    };
    Ok((key.to_string(), value))
}

/// Parse `args` (including the program name) and execute. Returns the exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code
        }
    }
}

pub fn dispatch(command: Command, out: &mut dyn Write) -> CliResult {
    match command {
        Command::Run(a) => cmd_run(&a, out),
        Command::Grid(a) => cmd_grid(&a, out),
        Command::Validate(a) => cmd_validate(Registry::standard(), a.tol, out),
        Command::Summarize(a) => cmd_summarize(&a.results, &a.dim, out),
        Command::Rank(a) => cmd_rank(&a.results, a.per_function, out),
        Command::List(a) => cmd_list(&a.tag, out),
    }
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::config(format!("output: {e}"))
}

pub fn cmd_run(args: &RunArgs, out: &mut dyn Write) -> CliResult {
    let registry = Registry::standard();
    let function = registry.get(&args.function).map_err(|e| CliError::from_core("--fn", e))?;
    let domain = function.domain_box(args.dim).map_err(|e| CliError::from_core("--dim", e))?;
    if args.agents == 0 {
        return Err(CliError::config("--agents: must be positive"));
    }
    if args.iters == 0 {
        return Err(CliError::config("--iters: must be positive"));
    }
    let optimizers = OptimizerRegistry::default();
    optimizers.get(&args.algo).map_err(|e| CliError::from_core("--algo", e))?;

    let mut spec = OptimizerSpec::new(args.algo.as_str(), args.iters, args.agents, args.seed);
    spec.record_trajectory = !args.no_trajectory;
    for (k, v) in &args.params {
        spec.params.insert(k.clone(), *v);
    }
    if let Some(t) = args.conditions {
        if args.algo != "ffo" {
            return Err(CliError::config("--conditions: only applies to --algo ffo"));
        }
        spec.params.insert("use_additional_conditions".into(), t.enabled().into());
    }
    optimizers.check(&spec).map_err(|e| CliError::from_core("--param", e))?;

    let objective = function.objective();
    let outcome = optimizers
        .run(&spec, &objective, &domain)
        .map_err(|e| CliError::from_core("--fn", e))?;
    let time = outcome.execution_secs();
    let dput = harness::distance_per_unit_time(outcome.total_distance, time).unwrap_or(f64::NAN);

    let w = |out: &mut dyn Write, k: &str, v: &dyn fmt::Display| writeln!(out, "{k}: {v}").map_err(io_err);
    w(out, "function", &function.name())?;
    w(out, "dimension", &args.dim)?;
    w(out, "algorithm", &args.algo)?;
    w(out, "seed", &args.seed)?;
    w(out, "best_fitness", &outcome.best_fitness)?;
    w(out, "execution_time_s", &time)?;
    w(out, "total_distance", &outcome.total_distance)?;
    w(out, "distance_per_unit_time", &dput)?;
    w(out, "iterations_run", &outcome.iterations_run)?;

    if let Some(dir) = &args.out {
        let record = RunRecord {
            algorithm: args.algo.clone(),
            function: function.name().to_string(),
            dimension: args.dim,
            agents: args.agents,
            max_iter: args.iters,
            seed: args.seed,
            best_fitness: outcome.best_fitness,
            execution_time_s: time,
            total_distance: outcome.total_distance,
            distance_per_unit_time: dput,
            iterations_run: outcome.iterations_run,
            status: Status::Ok,
            history: outcome.fitness_history,
            history_file: None,
        };
        let path = export_history(&record, dir).map_err(|e| CliError::from_core("--out", e))?;
        w(out, "history", &path.display())?;
    }
    Ok(())
}

/// Build the grid from the config file or preset plus flag overrides.
pub fn load_grid(args: &GridArgs) -> CliResult<(harness::ExperimentGrid, Option<PathBuf>, Option<usize>)> {
    let file = match (&args.config, &args.preset) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::config(format!("CONFIG `{}`: {e}", path.display())))?;
            RunConfigFile::from_json(&text).map_err(CliError::config)?
        }
        (None, Some(p)) => RunConfigFile { preset: Some(p.clone()), ..Default::default() },
        (None, None) => return Err(CliError::config("CONFIG: pass a config file or --preset")),
    };
    let (output, jobs) = (file.output.clone(), file.jobs);
    let mut grid = file.into_grid().map_err(|e| {
        if args.preset.is_some() { CliError::config(e.replace("config key `preset`", "--preset")) } else { CliError::config(e) }
    })?;
    if let Some(algos) = &args.algo {
        grid.algorithms = algos.clone();
    }
    if let Some(seed) = args.seed {
        grid.master_seed = seed;
    }
    if let Some(t) = args.conditions {
        grid.params
            .entry("ffo".to_string())
            .or_default()
            .insert("use_additional_conditions".to_string(), t.enabled().into());
    }
    if args.no_trajectory {
        grid.record_trajectory = false;
    }
    Ok((grid, args.out.clone().or(output), args.jobs.or(jobs)))
}

fn grid_error(e: Error) -> CliError {
    match e {
        Error::UnknownParameter { optimizer, param } => {
            CliError::config(format!("config key `params.{optimizer}.{param}`: unknown parameter"))
        }
        Error::UnknownOptimizer(name) => {
            CliError::config(format!("config key `algorithms`: unknown optimizer `{name}`"))
        }
        Error::UnknownFunction(name) => {
            CliError::config(format!("config key `functions`: unknown function `{name}`"))
        }
        other => CliError::from_core("config", other),
    }
}

pub fn cmd_grid(args: &GridArgs, out: &mut dyn Write) -> CliResult {
    let (grid, dir, jobs) = load_grid(args)?;
    let registry = Registry::standard();
    let optimizers = OptimizerRegistry::default();
    grid.validate(registry, &optimizers).map_err(grid_error)?;
    let dir = dir.unwrap_or_else(|| PathBuf::from("results"));
    let jobs = jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let progress = |r: &RunRecord| log::info!("done {} best={}", r.key(), r.best_fitness);
    let options = GridOptions { jobs, output_dir: Some(dir.clone()), on_record: Some(&progress) };
    let report = run_grid(&grid, registry, &optimizers, &options).map_err(grid_error)?;
    if report.records.is_empty() {
        return Err(CliError::config("config: every cell was skipped (no scalable function for the chosen dimensions)"));
    }
    let ranking = harness::write_artifacts(&report, registry, &dir).map_err(|e| CliError::from_core("--out", e))?;

    writeln!(
        out,
        "cells: {} ok, {} failed, {} skipped",
        report.succeeded(),
        report.failed(),
        report.skipped.len()
    )
    .map_err(io_err)?;
    for cat in harness::Category::ALL {
        let top: Vec<String> = ranking.leaders(cat).into_iter().take(3).map(|(a, c)| format!("{a} ({c})")).collect();
        writeln!(out, "{:<15} {}", cat.as_str(), top.join(", ")).map_err(io_err)?;
    }
    writeln!(out, "results: {}", dir.join("results.csv").display()).map_err(io_err)?;
    if report.succeeded() == 0 {
        return Err(CliError { code: EXIT_EVALUATION, message: "grid: every cell failed".into() });
    }
    Ok(())
}

/// Print the residual table; exit code 1 names the failing functions.
pub fn cmd_validate(registry: &Registry, tol: f64, out: &mut dyn Write) -> CliResult {
    if tol.is_nan() || tol < 0.0 {
        return Err(CliError::config(format!("--tol: must be non-negative, got {tol}")));
    }
    let report = registry.validate(tol);
    writeln!(out, "{report}").map_err(io_err)?;
    let failed: Vec<String> = report
        .failures()
        .map(|e| format!("{} (residual {:e})", e.name, e.residual().unwrap_or(f64::NAN)))
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError {
            code: EXIT_VALIDATION,
            message: format!("validation failed at --tol {tol:e}: {}", failed.join(", ")),
        })
    }
}

fn load_results(path: &Path) -> CliResult<Vec<RunRecord>> {
    read_results(path).map_err(|e| CliError::config(format!("RESULTS `{}`: {e}", path.display())))
}

pub fn cmd_summarize(path: &Path, dims: &[usize], out: &mut dyn Write) -> CliResult {
    let records = load_results(path)?;
    let rows = summarize(&records, (!dims.is_empty()).then_some(dims));
    write!(out, "{}", SummaryTable(&rows)).map_err(io_err)
}

pub fn cmd_rank(path: &Path, per_function: bool, out: &mut dyn Write) -> CliResult {
    let records = load_results(path)?;
    let registry = Registry::standard();
    let grouping = if per_function { SettingGrouping::PerFunction } else { SettingGrouping::PerRegime };
    let report = rank_top3(&records, grouping, |f, d| {
        registry.known_minimum(f, d).ok().and_then(|k| k.value)
    });
    write!(out, "{report}").map_err(io_err)
}

pub fn cmd_list(tags: &[String], out: &mut dyn Write) -> CliResult {
    for t in tags {
        t.parse::<Attribute>().map_err(|e| CliError::from_core("--tag", e))?;
    }
    for f in Registry::standard().list_functions(tags) {
        let (lo, hi) = f.domain();
        let class = match f.dim_class() {
            DimClass::Fixed2D => "2d",
            DimClass::NDimensional => "nd",
        };
        let attrs: Vec<&str> = f.attributes().iter().map(|a| a.as_str()).collect();
        writeln!(out, "{:<22} {class} [{lo}, {hi}] {}", f.name(), attrs.join(",")).map_err(io_err)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exec(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_cli(std::iter::once("ember").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn param_parsing() {
        assert_eq!(parse_param("a=1.5").unwrap(), ("a".into(), ParamValue::Number(1.5)));
        assert_eq!(parse_param("b=true").unwrap(), ("b".into(), ParamValue::Bool(true)));
        assert!(parse_param("c").is_err());
        assert!(parse_param("c=x").is_err());
    }

    #[test]
    fn errors_name_the_flag() {
        let (code, _, err) = exec(&["run", "--fn", "nope"]);
        assert_eq!(code, EXIT_CONFIG);
        assert!(err.contains("--fn"), "{err}");
        let (code, _, err) = exec(&["run", "--fn", "sphere", "--algo", "tabu"]);
        assert_eq!(code, EXIT_CONFIG);
        assert!(err.contains("--algo"), "{err}");
        let (code, _, err) = exec(&["run", "--fn", "sphere", "--algo", "pso", "--conditions", "on"]);
        assert_eq!(code, EXIT_CONFIG);
        assert!(err.contains("--conditions"), "{err}");
        let (code, _, err) = exec(&["run", "--fn", "sphere", "--param", "wobble=1"]);
        assert_eq!(code, EXIT_CONFIG);
        assert!(err.contains("wobble"), "{err}");
        let (code, _, err) = exec(&["validate", "--tol", "-1"]);
        assert_eq!(code, EXIT_CONFIG);
        assert!(err.contains("--tol"), "{err}");
    }

    #[test]
    fn usage_error_is_config_error() {
        assert_eq!(exec(&["run"]).0, EXIT_CONFIG);
        assert_eq!(exec(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn list_scalable() {
        let (code, out, _) = exec(&["list", "--tag", "scalable"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 12);
        assert_eq!(exec(&["list", "--tag", "bogus"]).0, EXIT_CONFIG);
    }
}
