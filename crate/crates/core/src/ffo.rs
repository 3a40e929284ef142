//! Firefighter Optimization (FFO).
//!
//! A population of agents is evolved by one-point crossover, an annealed
//! Gaussian local search ("mutation"), and, once the search stagnates, a
//! noisy pull towards the global best. Agents are clipped to the box after
//! every update and each post-update position is appended to a trajectory
//! whose consecutive Euclidean distances give the exploration metric.
//!
//! Random draws come from one ChaCha stream per run, consumed in this order:
//!
//! 1. initialization: `N * d` uniforms, agent-major;
//! 2. per iteration, per agent `i` in index order:
//!    * one uniform for the crossover test; on success the partner index, then
//!      (when `d >= 2`) the cut point;
//!    * one uniform for the mutation test; on success the local search draws
//!      (`d` standard normals per candidate, plus one uniform when the
//!      candidate is not strictly better);
//!    * when stagnating, `d` standard normals for the perturbation.

use std::time::{Duration, Instant};

use rand::distr::{Distribution, Uniform};
use rand::{Rng as _, SeedableRng};
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{checked_eval, Error, Result};
use crate::functions::DomainBox;
use crate::trajectory::Trajectory;
use crate::Rng;

/// Initial per-agent mutation rate; never adapted.
pub const INITIAL_MUTATION_RATE: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FfoConfig {
    pub dimension: usize,
    pub num_agents: usize,
    pub max_iter: usize,
    pub no_improve_limit: usize,
    pub bounds: (f64, f64),
    pub step_size: f64,
    pub crossover_probability: f64,
    pub mutation_probability: f64,
    pub initial_temp: f64,
    pub cooling_rate: f64,
    /// Enables the stagnation and target-fitness stopping rules.
    pub use_additional_conditions: bool,
    pub target_fitness: f64,
    /// Counter value above which perturbation and the faster cooling kick in.
    pub perturbation_threshold: usize,
    pub record_trajectory: bool,
    pub seed: u64,
}

impl Default for FfoConfig {
    fn default() -> Self {
        Self {
            dimension: 2,
            num_agents: 100,
            max_iter: 500,
            no_improve_limit: 30,
            bounds: (-5.12, 5.12),
            step_size: 1.0,
            crossover_probability: 0.5,
            mutation_probability: 0.1,
            initial_temp: 100.0,
            cooling_rate: 0.95,
            use_additional_conditions: false,
            target_fitness: 1e-5,
            perturbation_threshold: 50,
            record_trajectory: true,
            seed: 0,
        }
    }
}

impl FfoConfig {
    pub fn new(dimension: usize) -> Self {
        Self {
            dimension,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<DomainBox> {
        let domain = DomainBox::new(self.bounds.0, self.bounds.1, self.dimension)?;
        if self.num_agents == 0 {
            return Err(Error::config("num_agents must be positive"));
        }
        if self.max_iter == 0 {
            return Err(Error::config("max_iter must be positive"));
        }
        if self.no_improve_limit == 0 {
            return Err(Error::config("no_improve_limit must be positive"));
        }
        if self.perturbation_threshold == 0 {
            return Err(Error::config("perturbation_threshold must be positive"));
        }
        if !(self.step_size > 0.0 && self.step_size.is_finite()) {
            return Err(Error::config("step_size must be positive"));
        }
        for (name, p) in [
            ("crossover_probability", self.crossover_probability),
            ("mutation_probability", self.mutation_probability),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::config(format!("{name} must lie in [0, 1], got {p}")));
            }
        }
        if !(self.initial_temp > 0.0 && self.initial_temp.is_finite()) {
            return Err(Error::config("initial_temp must be positive"));
        }
        if !(self.cooling_rate > 0.0 && self.cooling_rate < 1.0) {
            return Err(Error::config(format!(
                "cooling_rate must lie in (0, 1), got {}",
                self.cooling_rate
            )));
        }
        if self.target_fitness.is_nan() {
            return Err(Error::config("target_fitness must be a number"));
        }
        Ok(domain)
    }
}

/// Result of a finished run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub best_agent: Vec<f64>,
    pub best_fitness: f64,
    /// Best-so-far fitness after each completed iteration.
    pub fitness_history: Vec<f64>,
    pub execution_time: Duration,
    pub total_distance: f64,
    /// Iteration counter at termination. For FFO this is the 1-based loop
    /// counter `k`, so `fitness_history.len() == iterations_run - 1`; the
    /// baselines report the number of completed iterations.
    pub iterations_run: usize,
    /// Consecutive iterations without strict improvement at termination.
    pub no_improve_counter: usize,
    /// Visited positions in append order, when recording was enabled.
    pub trajectory: Option<Vec<Vec<f64>>>,
}

impl RunOutcome {
    pub fn execution_secs(&self) -> f64 {
        self.execution_time.as_secs_f64()
    }
}

/// Tally of local-search candidate outcomes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LocalSearchStats {
    pub candidates: u64,
    pub improving: u64,
    pub accepted_worse: u64,
    pub rejected: u64,
}

/// Metropolis acceptance probability for moving from `incumbent` to
/// `candidate` at temperature `temp`. Non-worsening moves get 1; a worse move
/// at zero temperature gets 0.
pub fn acceptance_probability(incumbent: f64, candidate: f64, temp: f64) -> f64 {
    let delta = candidate - incumbent;
    if delta <= 0.0 {
        return 1.0;
    }
    if !(temp > 0.0) {
        return 0.0;
    }
    // exp of a hugely negative exponent underflows to 0, which is the intended limit
    (-delta / temp).exp()
}

/// Annealing temperature `t0 * rate^k`.
pub fn temperature(initial_temp: f64, cooling_rate: f64, iteration: usize) -> f64 {
    initial_temp * cooling_rate.powf(iteration as f64)
}

/// Number of local-search candidates for a given stagnation counter.
pub fn local_search_steps(no_improve_counter: usize) -> usize {
    10 + 5 * (no_improve_counter / 100)
}

/// Perturbation intensity once the counter exceeds `threshold`.
pub fn perturbation_intensity(no_improve_counter: usize, threshold: usize) -> f64 {
    0.1 + 0.02 * (no_improve_counter as f64 - threshold as f64)
}

/// One-point crossover at cut `point`:
/// `child1 = p1[..point] ++ p2[point..]`, `child2 = p2[..point] ++ p1[point..]`.
pub fn one_point_crossover(
    parent1: &[f64],
    parent2: &[f64],
    point: usize,
) -> Result<(Vec<f64>, Vec<f64>)> {
    if parent1.len() != parent2.len() {
        return Err(Error::config(format!(
            "crossover parents differ in length: {} vs {}",
            parent1.len(),
            parent2.len()
        )));
    }
    let d = parent1.len();
    if d < 2 || point == 0 || point >= d {
        return Err(Error::config(format!(
            "crossover point {point} outside 1..{d}"
        )));
    }
    let mut c1 = parent1[..point].to_vec();
    c1.extend_from_slice(&parent2[point..]);
    let mut c2 = parent2[..point].to_vec();
    c2.extend_from_slice(&parent1[point..]);
    Ok((c1, c2))
}

/// Mutable state of one FFO run.
#[derive(Debug, Clone)]
pub struct FfoState {
    config: FfoConfig,
    domain: DomainBox,
    agents: Vec<Vec<f64>>,
    best_agent: Vec<f64>,
    best_fitness: f64,
    step_size: f64,
    mutation_rates: Vec<f64>,
    no_improve_counter: usize,
    iteration: usize,
    fitness_history: Vec<f64>,
    trajectory: Trajectory,
    ls_stats: LocalSearchStats,
    rng: Rng,
}

impl FfoState {
    /// Scatter `num_agents` agents uniformly in the box and locate the best.
    pub fn initialize<F>(config: &FfoConfig, objective: &F) -> Result<Self>
    where
        F: Fn(&[f64]) -> f64 + ?Sized,
    {
        let domain = config.validate()?;
        let mut rng = Rng::seed_from_u64(config.seed);
        let uniform = Uniform::new(domain.lower, domain.upper)
            .map_err(|e| Error::config(e.to_string()))?;
        let agents = (0..config.num_agents)
            .map(|_| (0..config.dimension).map(|_| uniform.sample(&mut rng)).collect())
            .collect();
        Self::assemble(config.clone(), domain, agents, rng, objective)
    }

    /// Start from explicit agent positions instead of random ones.
    pub fn from_agents<F>(config: &FfoConfig, agents: Vec<Vec<f64>>, objective: &F) -> Result<Self>
    where
        F: Fn(&[f64]) -> f64 + ?Sized,
    {
        let mut config = config.clone();
        config.num_agents = agents.len();
        let domain = config.validate()?;
        if let Some(bad) = agents.iter().find(|a| a.len() != config.dimension) {
            return Err(Error::config(format!(
                "agent of length {} in a {}-dimensional problem",
                bad.len(),
                config.dimension
            )));
        }
        let rng = Rng::seed_from_u64(config.seed);
        Self::assemble(config, domain, agents, rng, objective)
    }

    fn assemble<F>(
        config: FfoConfig,
        domain: DomainBox,
        agents: Vec<Vec<f64>>,
        rng: Rng,
        objective: &F,
    ) -> Result<Self>
    where
        F: Fn(&[f64]) -> f64 + ?Sized,
    {
        let fitness = agents
            .iter()
            .map(|a| checked_eval(objective, a))
            .collect::<Result<Vec<_>>>()?;
        let best = argmin(&fitness);
        Ok(Self {
            best_agent: agents[best].clone(),
            best_fitness: fitness[best],
            step_size: config.step_size,
            mutation_rates: vec![INITIAL_MUTATION_RATE; agents.len()],
            no_improve_counter: 0,
            iteration: 1,
            fitness_history: Vec::new(),
            trajectory: Trajectory::new(config.record_trajectory),
            ls_stats: LocalSearchStats::default(),
            agents,
            domain,
            config,
            rng,
        })
    }

    pub fn config(&self) -> &FfoConfig {
        &self.config
    }

    pub fn domain(&self) -> &DomainBox {
        &self.domain
    }

    pub fn agents(&self) -> &[Vec<f64>] {
        &self.agents
    }

    pub fn best_agent(&self) -> &[f64] {
        &self.best_agent
    }

    pub fn best_fitness(&self) -> f64 {
        self.best_fitness
    }

    pub fn step_size(&self) -> f64 {
        self.step_size
    }

    pub fn mutation_rates(&self) -> &[f64] {
        &self.mutation_rates
    }

    pub fn no_improve_counter(&self) -> usize {
        self.no_improve_counter
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    pub fn fitness_history(&self) -> &[f64] {
        &self.fitness_history
    }

    pub fn trajectory(&self) -> &Trajectory {
        &self.trajectory
    }

    pub fn local_search_stats(&self) -> LocalSearchStats {
        self.ls_stats
    }

    /// Current local-search temperature.
    pub fn temperature(&self) -> f64 {
        temperature(self.config.initial_temp, self.config.cooling_rate, self.iteration)
    }

    /// Streaming total distance over the trajectory.
    pub fn total_distance(&self) -> f64 {
        self.trajectory.distance()
    }

    /// Evaluate all agents; on strict improvement of the global best reset
    /// the stagnation counter, otherwise increment it once.
    pub fn evaluate_agents<F>(&mut self, objective: &F) -> Result<Vec<f64>>
    where
        F: Fn(&[f64]) -> f64 + ?Sized,
    {
        let fitness = self
            .agents
            .iter()
            .map(|a| checked_eval(objective, a))
            .collect::<Result<Vec<_>>>()?;
        let best = argmin(&fitness);
        if fitness[best] < self.best_fitness {
            self.best_fitness = fitness[best];
            self.best_agent.clone_from(&self.agents[best]);
            self.no_improve_counter = 0;
        } else {
            self.no_improve_counter += 1;
        }
        Ok(fitness)
    }

    /// One pass of crossover, local search, perturbation and clipping over
    /// every agent.
    pub fn update_agents<F>(&mut self, objective: &F) -> Result<()>
    where
        F: Fn(&[f64]) -> f64 + ?Sized,
    {
        self.evaluate_agents(objective)?;
        let n = self.agents.len();
        let d = self.config.dimension;
        for i in 0..n {
            if self.rng.random::<f64>() < self.config.crossover_probability {
                let partner = self.rng.random_range(0..n);
                if d >= 2 {
                    let point = self.rng.random_range(1..d);
                    let (c1, c2) = one_point_crossover(&self.agents[i], &self.agents[partner], point)?;
                    self.agents[i] = c1;
                    self.agents[partner] = c2;
                }
            }
            if self.rng.random::<f64>() < self.config.mutation_probability {
                let agent = std::mem::take(&mut self.agents[i]);
                self.agents[i] = self.local_search(agent, i, objective)?;
            }
            if self.no_improve_counter > self.config.perturbation_threshold {
                let intensity =
                    perturbation_intensity(self.no_improve_counter, self.config.perturbation_threshold);
                let agent = std::mem::take(&mut self.agents[i]);
                self.agents[i] = self.apply_perturbation(agent, intensity);
            }
            self.domain.clip(&mut self.agents[i]);
            self.trajectory.push(&self.agents[i]);
        }
        Ok(())
    }

    /// Annealed Gaussian random walk from `agent`. Candidates are evaluated
    /// without clipping.
    pub fn local_search<F>(&mut self, agent: Vec<f64>, index: usize, objective: &F) -> Result<Vec<f64>>
    where
        F: Fn(&[f64]) -> f64 + ?Sized,
    {
        let temp = self.temperature();
        let sigma = self.step_size * self.mutation_rates[index];
        let mut incumbent_fitness = checked_eval(objective, &agent)?;
        let mut incumbent = agent;
        let mut candidate = vec![0.0; incumbent.len()];
        for _ in 0..local_search_steps(self.no_improve_counter) {
            for (c, x) in candidate.iter_mut().zip(&incumbent) {
                let z: f64 = self.rng.sample(StandardNormal);
                *c = x + sigma * z;
            }
            let candidate_fitness = checked_eval(objective, &candidate)?;
            self.ls_stats.candidates += 1;
            let accept = if candidate_fitness < incumbent_fitness {
                self.ls_stats.improving += 1;
                true
            } else {
                let p = acceptance_probability(incumbent_fitness, candidate_fitness, temp);
                let taken = self.rng.random::<f64>() < p;
                if taken {
                    self.ls_stats.accepted_worse += 1;
                } else {
                    self.ls_stats.rejected += 1;
                }
                taken
            };
            if accept {
                std::mem::swap(&mut incumbent, &mut candidate);
                incumbent_fitness = candidate_fitness;
            }
        }
        Ok(incumbent)
    }

    /// Move `agent` by `eta * (best - agent)` with `eta ~ N(0, intensity)` drawn
    /// per coordinate.
    pub fn apply_perturbation(&mut self, mut agent: Vec<f64>, intensity: f64) -> Vec<f64> {
        for (x, b) in agent.iter_mut().zip(&self.best_agent) {
            let z: f64 = self.rng.sample(StandardNormal);
            *x += intensity * z * (b - *x);
        }
        agent
    }

    /// Shrink the step size: by 2% while stagnating, else by 1%.
    pub fn cooling_schedule(&mut self) {
        if self.no_improve_counter > self.config.perturbation_threshold {
            self.step_size *= 0.98;
        } else {
            self.step_size *= 0.99;
        }
    }

    pub fn should_terminate(&self) -> bool {
        let c = &self.config;
        let exhausted = self.iteration >= c.max_iter;
        if c.use_additional_conditions {
            exhausted
                || self.no_improve_counter > c.no_improve_limit
                || self.best_fitness < c.target_fitness
        } else {
            exhausted
        }
    }

    /// Run the main loop to termination.
    pub fn execute<F>(&mut self, objective: &F) -> Result<RunOutcome>
    where
        F: Fn(&[f64]) -> f64 + ?Sized,
    {
        self.execute_observed(objective, |_| {})
    }

    /// Like [`execute`](Self::execute), calling `observer` after every
    /// completed iteration.
    pub fn execute_observed<F, O>(&mut self, objective: &F, mut observer: O) -> Result<RunOutcome>
    where
        F: Fn(&[f64]) -> f64 + ?Sized,
        O: FnMut(&FfoState),
    {
        self.fitness_history.clear();
        self.trajectory = Trajectory::new(self.config.record_trajectory);
        self.iteration = 1;
        let start = Instant::now();
        while !self.should_terminate() {
            self.update_agents(objective)?;
            self.cooling_schedule();
            self.fitness_history.push(self.best_fitness);
            observer(self);
            self.iteration += 1;
        }
        let execution_time = start.elapsed();
        Ok(RunOutcome {
            best_agent: self.best_agent.clone(),
            best_fitness: self.best_fitness,
            fitness_history: self.fitness_history.clone(),
            execution_time,
            total_distance: self.trajectory.distance(),
            iterations_run: self.iteration,
            no_improve_counter: self.no_improve_counter,
            trajectory: self.trajectory.points().map(<[_]>::to_vec),
        })
    }
}

/// Initialize and run FFO.
pub fn run<F>(config: &FfoConfig, objective: &F) -> Result<RunOutcome>
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    FfoState::initialize(config, objective)?.execute(objective)
}

/// Index of the smallest value, first on ties.
pub(crate) fn argmin(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate().skip(1) {
        if *v < values[best] {
            best = i;
        }
    }
    best
}
