//! Single-solution simulated annealing.

use std::time::Instant;

use rand::{Rng as _, SeedableRng};
use rand_distr::StandardNormal;

use super::{init_population, require_agents, CommonOutcome, Objective, Optimizer, OptimizerSpec, ParamValue, Params, Tracker};
use crate::error::{checked_eval, Error, Result};
use crate::ffo::acceptance_probability;
use crate::functions::DomainBox;
use crate::Rng;

pub use crate::ffo::temperature;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaParams {
    pub initial_temp: f64,
    pub cooling_rate: f64,
    /// Proposal standard deviation as a fraction of the domain width.
    pub step_scale: f64,
}

impl Default for SaParams {
    fn default() -> Self {
        Self {
            initial_temp: 100.0,
            cooling_rate: 0.95,
            step_scale: 0.1,
        }
    }
}

pub struct SimulatedAnnealing;

impl Optimizer for SimulatedAnnealing {
    fn name(&self) -> &'static str {
        "sa"
    }

    fn defaults(&self) -> Vec<(&'static str, ParamValue)> {
        let d = SaParams::default();
        vec![
            ("initial_temp", d.initial_temp.into()),
            ("cooling_rate", d.cooling_rate.into()),
            ("step_scale", d.step_scale.into()),
        ]
    }

    fn run(
        &self,
        spec: &OptimizerSpec,
        params: &Params,
        objective: Objective<'_>,
        domain: &DomainBox,
    ) -> Result<CommonOutcome> {
        let p = SaParams {
            initial_temp: params.f64("initial_temp")?,
            cooling_rate: params.f64("cooling_rate")?,
            step_scale: params.f64("step_scale")?,
        };
        run_sa(spec, p, objective, domain)
    }
}

/// Metropolis annealing with Gaussian proposals. Each iteration makes
/// `num_agents` proposals at the current temperature, then cools
/// geometrically. The trajectory logs the current state after every proposal.
pub fn run_sa(
    spec: &OptimizerSpec,
    params: SaParams,
    objective: Objective<'_>,
    domain: &DomainBox,
) -> Result<CommonOutcome> {
    require_agents(spec)?;
    if !(params.initial_temp > 0.0) || !(params.cooling_rate > 0.0 && params.cooling_rate < 1.0) {
        return Err(Error::config(format!(
            "sa: need initial_temp > 0 and cooling_rate in (0, 1), got {} and {}",
            params.initial_temp, params.cooling_rate
        )));
    }
    if !(params.step_scale > 0.0) {
        return Err(Error::config("sa: step_scale must be positive"));
    }
    let start = Instant::now();
    let mut rng = Rng::seed_from_u64(spec.seed);
    let mut tracker = Tracker::new(spec.record_trajectory);
    let sigma = params.step_scale * domain.width();

    let mut current = init_population(&mut rng, 1, domain)?.remove(0);
    let mut current_fitness = tracker.evaluate(objective, &current)?;
    tracker.start();
    let mut candidate = current.clone();
    let mut temp = params.initial_temp;

    for _ in 0..spec.max_iter {
        for _ in 0..spec.num_agents {
            for (c, x) in candidate.iter_mut().zip(&current) {
                let z: f64 = rng.sample(StandardNormal);
                *c = x + sigma * z;
            }
            domain.clip(&mut candidate);
            let f = checked_eval(objective, &candidate)?;
            tracker.offer(&candidate, f);
            if metropolis(&mut rng, current_fitness, f, temp) {
                std::mem::swap(&mut current, &mut candidate);
                current_fitness = f;
            }
            tracker.visit(&current);
        }
        temp *= params.cooling_rate;
        tracker.end_iteration();
    }
    Ok(tracker.finish(start.elapsed()))
}

/// Accept non-worsening moves outright; otherwise draw once against
/// `exp(-delta / temp)`.
pub fn metropolis(rng: &mut Rng, current: f64, candidate: f64, temp: f64) -> bool {
    candidate <= current || rng.random::<f64>() < acceptance_probability(current, candidate, temp)
}
