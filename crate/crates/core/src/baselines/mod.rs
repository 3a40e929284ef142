//! Reference optimizers behind a uniform dispatch interface.
//!
//! Each optimizer publishes its parameter keys with defaults; an
//! [`OptimizerSpec`] may override any of them, and unknown keys are rejected.
//! Every run returns the same [`CommonOutcome`] shape as FFO, with the
//! trajectory holding one entry per candidate per iteration so that total
//! distance is comparable across algorithms.
//!
//! | optimizer | key | default |
//! |-----------|-----|---------|
//! | `pso` | `inertia`, `cognitive`, `social` | 0.7, 1.0, 1.0 |
//! | `sa`  | `initial_temp`, `cooling_rate`, `step_scale` | 100, 0.95, 0.1 |
//! | `ga`  | `crossover_rate`, `mutation_rate`, `mutation_scale`, `tournament_size`, `elitism` | 0.1, 0.1, 0.1, 2, 1 |
//! | `hs`  | `hmcr`, `par`, `bandwidth` | 0.9, 0.3, 0.01 |
//!
//! Scales (`step_scale`, `mutation_scale`, `bandwidth`) are fractions of the
//! domain width `upper - lower`.
//!
//! Initial populations are the first draws of a [`Rng`] seeded with
//! `spec.seed`: uniform in the box, point-major. SA starts from one point.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::distr::{Distribution, Uniform};
use serde::{Deserialize, Serialize};

use crate::error::{checked_eval, Error, Result};
use crate::ffo::{self, FfoConfig};
use crate::functions::DomainBox;
use crate::trajectory::Trajectory;
use crate::Rng;

pub mod ga;
pub mod hs;
pub mod pso;
pub mod sa;

pub use crate::ffo::RunOutcome as CommonOutcome;

/// Scalar parameter value as it appears in configs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Bool(bool),
    Number(f64),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Bool(b) => write!(f, "{b}"),
            ParamValue::Number(x) => write!(f, "{x}"),
        }
    }
}

impl From<f64> for ParamValue {
    fn from(x: f64) -> Self {
        ParamValue::Number(x)
    }
}

impl From<bool> for ParamValue {
    fn from(b: bool) -> Self {
        ParamValue::Bool(b)
    }
}

/// Resolved parameter table for one optimizer.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    optimizer: String,
    values: BTreeMap<String, ParamValue>,
}

impl Params {
    pub fn iter(&self) -> impl Iterator<Item = (&str, &ParamValue)> {
        self.values.iter().map(|(k, v)| (k.as_str(), v))
    }

    fn raw(&self, key: &str) -> &ParamValue {
        // keys are fixed by the optimizer's default table
        self.values
            .get(key)
            .unwrap_or_else(|| panic!("optimizer `{}` has no parameter `{key}`", self.optimizer))
    }

    pub fn f64(&self, key: &str) -> Result<f64> {
        match self.raw(key) {
            ParamValue::Number(x) if x.is_finite() => Ok(*x),
            other => Err(Error::config(format!(
                "{}.{key} must be a finite number, got {other}",
                self.optimizer
            ))),
        }
    }

    pub fn bool(&self, key: &str) -> Result<bool> {
        match self.raw(key) {
            ParamValue::Bool(b) => Ok(*b),
            other => Err(Error::config(format!(
                "{}.{key} must be a boolean, got {other}",
                self.optimizer
            ))),
        }
    }

    pub fn usize(&self, key: &str) -> Result<usize> {
        let x = self.f64(key)?;
        if x >= 0.0 && x.fract() == 0.0 {
            Ok(x as usize)
        } else {
            Err(Error::config(format!(
                "{}.{key} must be a non-negative integer, got {x}",
                self.optimizer
            )))
        }
    }

    /// Probability-valued parameter.
    pub fn probability(&self, key: &str) -> Result<f64> {
        let p = self.f64(key)?;
        if (0.0..=1.0).contains(&p) {
            Ok(p)
        } else {
            Err(Error::config(format!(
                "{}.{key} must lie in [0, 1], got {p}",
                self.optimizer
            )))
        }
    }
}

/// Which optimizer to run, with what budget and overrides.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptimizerSpec {
    pub name: String,
    #[serde(default)]
    pub params: BTreeMap<String, ParamValue>,
    pub max_iter: usize,
    pub num_agents: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "yes")]
    pub record_trajectory: bool,
}

fn yes() -> bool {
    true
}

impl OptimizerSpec {
    pub fn new(name: impl Into<String>, max_iter: usize, num_agents: usize, seed: u64) -> Self {
        Self {
            name: name.into(),
            params: BTreeMap::new(),
            max_iter,
            num_agents,
            seed,
            record_trajectory: true,
        }
    }

    pub fn with_param(mut self, key: impl Into<String>, value: impl Into<ParamValue>) -> Self {
        self.params.insert(key.into(), value.into());
        self
    }
}

/// Objective as seen by optimizers.
pub type Objective<'a> = &'a (dyn Fn(&[f64]) -> f64 + Sync);

pub trait Optimizer: Send + Sync {
    fn name(&self) -> &'static str;

    /// Parameter keys with their defaults.
    fn defaults(&self) -> Vec<(&'static str, ParamValue)>;

    fn run(
        &self,
        spec: &OptimizerSpec,
        params: &Params,
        objective: Objective<'_>,
        domain: &DomainBox,
    ) -> Result<CommonOutcome>;

    /// Defaults overlaid with `spec.params`.
    fn resolve(&self, spec: &OptimizerSpec) -> Result<Params> {
        let mut values: BTreeMap<String, ParamValue> = self
            .defaults()
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        for (key, value) in &spec.params {
            match values.get_mut(key) {
                Some(slot) => *slot = *value,
                None => {
                    return Err(Error::UnknownParameter {
                        optimizer: self.name().to_string(),
                        param: key.clone(),
                    })
                }
            }
        }
        Ok(Params {
            optimizer: self.name().to_string(),
            values,
        })
    }
}

/// Name-keyed set of optimizers. New algorithms can be registered without
/// touching the harness.
#[derive(Clone)]
pub struct OptimizerRegistry {
    entries: BTreeMap<&'static str, Arc<dyn Optimizer>>,
}

impl fmt::Debug for OptimizerRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.keys()).finish()
    }
}

impl Default for OptimizerRegistry {
    fn default() -> Self {
        let mut reg = Self {
            entries: BTreeMap::new(),
        };
        reg.register(Arc::new(Ffo));
        reg.register(Arc::new(pso::Pso));
        reg.register(Arc::new(sa::SimulatedAnnealing));
        reg.register(Arc::new(ga::Genetic));
        reg.register(Arc::new(hs::HarmonySearch));
        reg
    }
}

impl OptimizerRegistry {
    pub fn register(&mut self, optimizer: Arc<dyn Optimizer>) {
        self.entries.insert(optimizer.name(), optimizer);
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }

    pub fn get(&self, name: &str) -> Result<&dyn Optimizer> {
        self.entries
            .get(name)
            .map(|o| o.as_ref())
            .ok_or_else(|| Error::UnknownOptimizer(name.to_string()))
    }

    /// Validate a spec without running it.
    pub fn check(&self, spec: &OptimizerSpec) -> Result<Params> {
        self.get(&spec.name)?.resolve(spec)
    }

    pub fn run(
        &self,
        spec: &OptimizerSpec,
        objective: Objective<'_>,
        domain: &DomainBox,
    ) -> Result<CommonOutcome> {
        let optimizer = self.get(&spec.name)?;
        let params = optimizer.resolve(spec)?;
        optimizer.run(spec, &params, objective, domain)
    }
}

/// Run `spec` through the standard optimizer set.
pub fn run(spec: &OptimizerSpec, objective: Objective<'_>, domain: &DomainBox) -> Result<CommonOutcome> {
    OptimizerRegistry::default().run(spec, objective, domain)
}

/// FFO adapter for the dispatch table.
pub struct Ffo;

impl Ffo {
    pub fn config(spec: &OptimizerSpec, params: &Params, domain: &DomainBox) -> Result<FfoConfig> {
        Ok(FfoConfig {
            dimension: domain.dimension,
            num_agents: spec.num_agents,
            max_iter: spec.max_iter,
            no_improve_limit: params.usize("no_improve_limit")?,
            bounds: (domain.lower, domain.upper),
            step_size: params.f64("step_size")?,
            crossover_probability: params.f64("crossover_probability")?,
            mutation_probability: params.f64("mutation_probability")?,
            initial_temp: params.f64("initial_temp")?,
            cooling_rate: params.f64("cooling_rate")?,
            use_additional_conditions: params.bool("use_additional_conditions")?,
            target_fitness: params.f64("target_fitness")?,
            perturbation_threshold: params.usize("perturbation_threshold")?,
            record_trajectory: spec.record_trajectory,
            seed: spec.seed,
        })
    }
}

impl Optimizer for Ffo {
    fn name(&self) -> &'static str {
        "ffo"
    }

    fn defaults(&self) -> Vec<(&'static str, ParamValue)> {
        let d = FfoConfig::default();
        vec![
            ("step_size", d.step_size.into()),
            ("crossover_probability", d.crossover_probability.into()),
            ("mutation_probability", d.mutation_probability.into()),
            ("initial_temp", d.initial_temp.into()),
            ("cooling_rate", d.cooling_rate.into()),
            ("use_additional_conditions", d.use_additional_conditions.into()),
            ("no_improve_limit", (d.no_improve_limit as f64).into()),
            ("target_fitness", d.target_fitness.into()),
            ("perturbation_threshold", (d.perturbation_threshold as f64).into()),
        ]
    }

    fn run(
        &self,
        spec: &OptimizerSpec,
        params: &Params,
        objective: Objective<'_>,
        domain: &DomainBox,
    ) -> Result<CommonOutcome> {
        ffo::run(&Self::config(spec, params, domain)?, objective)
    }
}

/// `n` uniform points in the box, point-major.
pub(crate) fn init_population(rng: &mut Rng, n: usize, domain: &DomainBox) -> Result<Vec<Vec<f64>>> {
    let uniform =
        Uniform::new(domain.lower, domain.upper).map_err(|e| Error::config(e.to_string()))?;
    Ok((0..n)
        .map(|_| (0..domain.dimension).map(|_| uniform.sample(rng)).collect())
        .collect())
}

pub(crate) fn require_agents(spec: &OptimizerSpec) -> Result<()> {
    if spec.num_agents == 0 {
        Err(Error::config(format!("{}: num_agents must be positive", spec.name)))
    } else {
        Ok(())
    }
}

/// Best-so-far bookkeeping shared by the baselines.
#[derive(Debug)]
pub(crate) struct Tracker {
    best: Vec<f64>,
    best_fitness: f64,
    improved: bool,
    stagnation: usize,
    history: Vec<f64>,
    trajectory: Trajectory,
}

impl Tracker {
    pub fn new(record: bool) -> Self {
        Self {
            best: Vec::new(),
            best_fitness: f64::INFINITY,
            improved: false,
            stagnation: 0,
            history: Vec::new(),
            trajectory: Trajectory::new(record),
        }
    }

    pub fn evaluate(&mut self, objective: Objective<'_>, x: &[f64]) -> Result<f64> {
        let f = checked_eval(objective, x)?;
        self.offer(x, f);
        Ok(f)
    }

    /// Consider an already evaluated point for the best-so-far.
    pub fn offer(&mut self, x: &[f64], f: f64) {
        if f < self.best_fitness {
            self.best_fitness = f;
            self.best.clear();
            self.best.extend_from_slice(x);
            self.improved = true;
        }
    }

    pub fn visit(&mut self, x: &[f64]) {
        self.trajectory.push(x);
    }

    pub fn best_fitness(&self) -> f64 {
        self.best_fitness
    }

    pub fn best(&self) -> &[f64] {
        &self.best
    }

    /// Close an iteration: log the best-so-far and update the stagnation count.
    pub fn end_iteration(&mut self) {
        if self.improved {
            self.stagnation = 0;
        } else {
            self.stagnation += 1;
        }
        self.improved = false;
        self.history.push(self.best_fitness);
    }

    /// Forget improvements made during initialization.
    pub fn start(&mut self) {
        self.improved = false;
    }

    pub fn finish(self, elapsed: std::time::Duration) -> CommonOutcome {
        let iterations_run = self.history.len();
        CommonOutcome {
            best_agent: self.best,
            best_fitness: self.best_fitness,
            fitness_history: self.history,
            execution_time: elapsed,
            total_distance: self.trajectory.distance(),
            iterations_run,
            no_improve_counter: self.stagnation,
            trajectory: self.trajectory.into_points(),
        }
    }
}
