//! Experiment grids over algorithm x function x dimension x agents x
//! iterations x seed, with per-run metrics, summaries and rankings.
//!
//! Every cell gets its own RNG seed derived from the grid's master seed and
//! the cell key (see [`derive_seed`]), so results do not depend on execution
//! order or on the number of worker threads.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baselines::{OptimizerRegistry, OptimizerSpec, ParamValue};
use crate::error::{Error, Result};
use crate::functions::{Attribute, Registry};

pub mod io;
pub mod ranking;
pub mod summary;

pub use io::{export_history, read_results, write_results, RESULTS_HEADER};
pub use ranking::{rank_top3, Category, RankingReport, SettingGrouping, SettingKey};
pub use summary::{summarize, Stats, SummaryRow};

/// Grid definition. `functions` entries are function names, `all`, or
/// `tag:<attribute>` selectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentGrid {
    pub algorithms: Vec<String>,
    pub functions: Vec<String>,
    pub dimensions: Vec<usize>,
    pub agent_counts: Vec<usize>,
    pub iteration_counts: Vec<usize>,
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub master_seed: u64,
    /// Per-algorithm parameter overrides.
    #[serde(default)]
    pub params: BTreeMap<String, BTreeMap<String, ParamValue>>,
    #[serde(default)]
    pub record_trajectory: bool,
}

pub const PAPER_AGENTS: [usize; 3] = [10, 50, 100];
pub const PAPER_ITERATIONS: [usize; 3] = [100, 1000, 3000];

impl ExperimentGrid {
    /// `paper-2d`: every function in 2D. `paper-hd`: the scalable set at 20D
    /// and 50D. Both use all registered algorithms, the 3x3 agent/iteration
    /// grid and a single seed.
    pub fn preset(name: &str) -> Option<Self> {
        let (functions, dimensions) = match name {
            "paper-2d" => (vec!["all".to_string()], vec![2]),
            "paper-hd" => (vec!["tag:scalable".to_string()], vec![20, 50]),
            _ => return None,
        };
        Some(Self {
            algorithms: OptimizerRegistry::default().names().map(String::from).collect(),
            functions,
            dimensions,
            agent_counts: PAPER_AGENTS.to_vec(),
            iteration_counts: PAPER_ITERATIONS.to_vec(),
            seeds: vec![0],
            master_seed: 0,
            params: BTreeMap::new(),
            record_trajectory: false,
        })
    }

    /// Expand selectors into a sorted, de-duplicated list of names.
    pub fn resolve_functions(&self, registry: &Registry) -> Result<Vec<&'static str>> {
        let mut names = Vec::new();
        for sel in &self.functions {
            if sel == "all" {
                names.extend(registry.iter().map(|f| f.name()));
            } else if let Some(tag) = sel.strip_prefix("tag:") {
                let attr: Attribute = tag.parse()?;
                names.extend(registry.list_functions(&[attr.as_str()]).iter().map(|f| f.name()));
            } else {
                names.push(registry.get(sel)?.name());
            }
        }
        names.sort_unstable();
        names.dedup();
        Ok(names)
    }

    pub fn validate(&self, registry: &Registry, optimizers: &OptimizerRegistry) -> Result<()> {
        for (field, empty) in [
            ("algorithms", self.algorithms.is_empty()),
            ("functions", self.functions.is_empty()),
            ("dimensions", self.dimensions.is_empty()),
            ("agent_counts", self.agent_counts.is_empty()),
            ("iteration_counts", self.iteration_counts.is_empty()),
            ("seeds", self.seeds.is_empty()),
        ] {
            if empty {
                return Err(Error::config(format!("grid.{field} must not be empty")));
            }
        }
        if let Some(d) = self.dimensions.iter().find(|&&d| d == 0) {
            return Err(Error::config(format!("grid.dimensions contains {d}")));
        }
        if self.agent_counts.contains(&0) {
            return Err(Error::config("grid.agent_counts must be positive"));
        }
        if self.iteration_counts.contains(&0) {
            return Err(Error::config("grid.iteration_counts must be positive"));
        }
        self.resolve_functions(registry)?;
        for algo in &self.algorithms {
            optimizers.check(&self.spec_for(algo, 1, 1, 0))?;
        }
        if let Some(extra) = self.params.keys().find(|k| !self.algorithms.contains(k)) {
            return Err(Error::config(format!(
                "grid.params.{extra} does not name a selected algorithm"
            )));
        }
        Ok(())
    }

    fn spec_for(&self, algorithm: &str, max_iter: usize, num_agents: usize, seed: u64) -> OptimizerSpec {
        OptimizerSpec {
            name: algorithm.to_string(),
            params: self.params.get(algorithm).cloned().unwrap_or_default(),
            max_iter,
            num_agents,
            seed,
            record_trajectory: self.record_trajectory,
        }
    }

    /// Total number of cells before the scalability filter.
    pub fn size(&self, registry: &Registry) -> Result<usize> {
        Ok(self.algorithms.len()
            * self.resolve_functions(registry)?.len()
            * self.dimensions.len()
            * self.agent_counts.len()
            * self.iteration_counts.len()
            * self.seeds.len())
    }

    /// All cells in canonical order, tagged runnable or skipped.
    pub fn cells(&self, registry: &Registry) -> Result<Vec<Cell>> {
        let functions = self.resolve_functions(registry)?;
        let mut cells = Vec::with_capacity(self.size(registry)?);
        for algorithm in &self.algorithms {
            for &function in &functions {
                let scalable = registry.get(function)?.is_scalable();
                for &dimension in &self.dimensions {
                    for &agents in &self.agent_counts {
                        for &max_iter in &self.iteration_counts {
                            for &seed in &self.seeds {
                                cells.push(Cell {
                                    algorithm: algorithm.clone(),
                                    function,
                                    dimension,
                                    agents,
                                    max_iter,
                                    seed,
                                    skipped: dimension > 2 && !scalable,
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(cells)
    }
}

/// One grid point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub algorithm: String,
    pub function: &'static str,
    pub dimension: usize,
    pub agents: usize,
    pub max_iter: usize,
    pub seed: u64,
    /// Non-scalable function paired with a dimension above 2.
    pub skipped: bool,
}

impl Cell {
    /// Stable identifier, also used as the history file stem.
    pub fn key(&self) -> String {
        format!(
            "{}__{}__d{}__a{}__i{}__s{}",
            self.algorithm, self.function, self.dimension, self.agents, self.max_iter, self.seed
        )
    }
}

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes
        .iter()
        .fold(FNV_OFFSET, |h, b| (h ^ u64::from(*b)).wrapping_mul(FNV_PRIME))
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Per-cell RNG seed: `splitmix64(master ^ fnv1a_64(cell_key))`. Fixed
/// algorithms, so seeds stay stable across toolchains and releases.
pub fn derive_seed(master: u64, cell_key: &str) -> u64 {
    splitmix64(master ^ fnv1a(cell_key.as_bytes()))
}

/// Search distance covered per second of wall-clock time.
pub fn distance_per_unit_time(total_distance: f64, execution_time: f64) -> Result<f64> {
    if execution_time > 0.0 {
        Ok(total_distance / execution_time)
    } else {
        Err(Error::UndefinedMetric(format!(
            "distance per unit time needs a positive execution time, got {execution_time}"
        )))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Status {
    Ok,
    Error(String),
}

impl Status {
    pub fn is_ok(&self) -> bool {
        matches!(self, Status::Ok)
    }
}

/// Outcome of one grid cell.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub algorithm: String,
    pub function: String,
    pub dimension: usize,
    pub agents: usize,
    pub max_iter: usize,
    pub seed: u64,
    pub best_fitness: f64,
    pub execution_time_s: f64,
    pub total_distance: f64,
    pub distance_per_unit_time: f64,
    pub iterations_run: usize,
    pub status: Status,
    /// Best-so-far per iteration; not part of the results CSV.
    pub history: Vec<f64>,
    pub history_file: Option<PathBuf>,
}

impl RunRecord {
    pub fn key(&self) -> String {
        format!(
            "{}__{}__d{}__a{}__i{}__s{}",
            self.algorithm, self.function, self.dimension, self.agents, self.max_iter, self.seed
        )
    }

    fn failed(cell: &Cell, err: &Error) -> Self {
        Self {
            algorithm: cell.algorithm.clone(),
            function: cell.function.to_string(),
            dimension: cell.dimension,
            agents: cell.agents,
            max_iter: cell.max_iter,
            seed: cell.seed,
            best_fitness: f64::NAN,
            execution_time_s: f64::NAN,
            total_distance: f64::NAN,
            distance_per_unit_time: f64::NAN,
            iterations_run: 0,
            status: Status::Error(err.to_string()),
            history: Vec::new(),
            history_file: None,
        }
    }
}

/// Records plus the cells that were skipped by the scalability filter.
#[derive(Debug, Clone, Default)]
pub struct GridReport {
    pub records: Vec<RunRecord>,
    pub skipped: Vec<Cell>,
}

impl GridReport {
    pub fn succeeded(&self) -> usize {
        self.records.iter().filter(|r| r.status.is_ok()).count()
    }

    pub fn failed(&self) -> usize {
        self.records.len() - self.succeeded()
    }
}

/// Execution knobs that do not affect results.
#[derive(Default)]
pub struct GridOptions<'a> {
    /// Worker threads; 0 or 1 runs sequentially.
    pub jobs: usize,
    /// Directory receiving `histories/<cell-key>.csv` per successful run.
    pub output_dir: Option<PathBuf>,
    /// Called as each record completes, in completion order.
    pub on_record: Option<&'a (dyn Fn(&RunRecord) + Sync)>,
}

fn run_cell(
    grid: &ExperimentGrid,
    cell: &Cell,
    registry: &Registry,
    optimizers: &OptimizerRegistry,
) -> Result<RunRecord> {
    let function = registry.get(cell.function)?;
    let domain = function.domain_box(cell.dimension)?;
    let seed = derive_seed(grid.master_seed, &cell.key());
    let spec = grid.spec_for(&cell.algorithm, cell.max_iter, cell.agents, seed);
    let objective = function.objective();
    let out = optimizers.run(&spec, &objective, &domain)?;
    let time = out.execution_secs();
    Ok(RunRecord {
        algorithm: cell.algorithm.clone(),
        function: cell.function.to_string(),
        dimension: cell.dimension,
        agents: cell.agents,
        max_iter: cell.max_iter,
        seed: cell.seed,
        best_fitness: out.best_fitness,
        execution_time_s: time,
        total_distance: out.total_distance,
        distance_per_unit_time: distance_per_unit_time(out.total_distance, time).unwrap_or(f64::NAN),
        iterations_run: out.iterations_run,
        status: Status::Ok,
        history: out.fitness_history,
        history_file: None,
    })
}

/// Run every non-skipped cell. Failing cells become error records; only
/// configuration problems with the grid itself abort the run.
pub fn run_grid(
    grid: &ExperimentGrid,
    registry: &Registry,
    optimizers: &OptimizerRegistry,
    options: &GridOptions<'_>,
) -> Result<GridReport> {
    grid.validate(registry, optimizers)?;
    let (skipped, runnable): (Vec<Cell>, Vec<Cell>) =
        grid.cells(registry)?.into_iter().partition(|c| c.skipped);
    for cell in &skipped {
        log::info!(
            "skip {}: `{}` is not scalable beyond 2D",
            cell.key(),
            cell.function
        );
    }
    let execute = |cell: &Cell| -> RunRecord {
        let mut record = run_cell(grid, cell, registry, optimizers)
            .unwrap_or_else(|e| {
                log::warn!("cell {} failed: {e}", cell.key());
                RunRecord::failed(cell, &e)
            });
        if let (Some(dir), true) = (&options.output_dir, record.status.is_ok()) {
            match export_history(&record, dir) {
                Ok(path) => record.history_file = Some(path),
                Err(e) => record.status = Status::Error(format!("history export: {e}")),
            }
        }
        if let Some(cb) = options.on_record {
            cb(&record);
        }
        record
    };
    let records = if options.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.jobs)
            .build()
            .map_err(|e| Error::config(format!("thread pool: {e}")))?;
        pool.install(|| runnable.par_iter().map(execute).collect())
    } else {
        runnable.iter().map(execute).collect()
    };
    Ok(GridReport { records, skipped })
}

/// Convenience wrapper with the shipped registries, writing results,
/// summary and ranking CSVs under `dir`.
pub fn write_artifacts(report: &GridReport, registry: &Registry, dir: &Path) -> Result<RankingReport> {
    std::fs::create_dir_all(dir)?;
    write_results(&report.records, &dir.join("results.csv"))?;
    let rows = summarize(&report.records, None);
    summary::write_summary(&rows, &dir.join("summary.csv"))?;
    let ranking = rank_top3(&report.records, SettingGrouping::PerRegime, |f, d| {
        registry.known_minimum(f, d).ok().and_then(|k| k.value)
    });
    ranking.write_csv(&dir.join("ranking.csv"))?;
    Ok(ranking)
}
