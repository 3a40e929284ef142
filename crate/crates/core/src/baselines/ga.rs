//! Generational real-coded genetic algorithm.

use std::time::Instant;

use rand::{Rng as _, SeedableRng};
use rand_distr::StandardNormal;

use super::{init_population, require_agents, CommonOutcome, Objective, Optimizer, OptimizerSpec, ParamValue, Params, Tracker};
use crate::error::{checked_eval, Error, Result};
use crate::ffo::{argmin, one_point_crossover};
use crate::functions::DomainBox;
use crate::Rng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaParams {
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    /// Mutation standard deviation as a fraction of the domain width.
    pub mutation_scale: f64,
    pub tournament_size: usize,
    pub elitism: usize,
}

impl Default for GaParams {
    fn default() -> Self {
        Self {
            crossover_rate: 0.1,
            mutation_rate: 0.1,
            mutation_scale: 0.1,
            tournament_size: 2,
            elitism: 1,
        }
    }
}

pub struct Genetic;

impl Optimizer for Genetic {
    fn name(&self) -> &'static str {
        "ga"
    }

    fn defaults(&self) -> Vec<(&'static str, ParamValue)> {
        let d = GaParams::default();
        vec![
            ("crossover_rate", d.crossover_rate.into()),
            ("mutation_rate", d.mutation_rate.into()),
            ("mutation_scale", d.mutation_scale.into()),
            ("tournament_size", (d.tournament_size as f64).into()),
            ("elitism", (d.elitism as f64).into()),
        ]
    }

    fn run(
        &self,
        spec: &OptimizerSpec,
        params: &Params,
        objective: Objective<'_>,
        domain: &DomainBox,
    ) -> Result<CommonOutcome> {
        let p = GaParams {
            crossover_rate: params.probability("crossover_rate")?,
            mutation_rate: params.probability("mutation_rate")?,
            mutation_scale: params.f64("mutation_scale")?,
            tournament_size: params.usize("tournament_size")?,
            elitism: params.usize("elitism")?,
        };
        run_ga(spec, p, objective, domain)
    }
}

fn tournament(rng: &mut Rng, fitness: &[f64], size: usize) -> usize {
    let mut winner = rng.random_range(0..fitness.len());
    for _ in 1..size {
        let rival = rng.random_range(0..fitness.len());
        if fitness[rival] < fitness[winner] {
            winner = rival;
        }
    }
    winner
}

/// Elitist generational GA: tournament selection, one-point crossover,
/// per-gene Gaussian mutation, clipping. Offspring are logged to the
/// trajectory in creation order.
pub fn run_ga(
    spec: &OptimizerSpec,
    params: GaParams,
    objective: Objective<'_>,
    domain: &DomainBox,
) -> Result<CommonOutcome> {
    require_agents(spec)?;
    if params.tournament_size == 0 {
        return Err(Error::config("ga: tournament_size must be positive"));
    }
    if params.elitism > spec.num_agents {
        return Err(Error::config(format!(
            "ga: elitism {} exceeds population {}",
            params.elitism, spec.num_agents
        )));
    }
    let start = Instant::now();
    let mut rng = Rng::seed_from_u64(spec.seed);
    let mut tracker = Tracker::new(spec.record_trajectory);
    let n = spec.num_agents;
    let d = domain.dimension;
    let sigma = params.mutation_scale * domain.width();

    let mut population = init_population(&mut rng, n, domain)?;
    let mut fitness = population
        .iter()
        .map(|x| tracker.evaluate(objective, x))
        .collect::<Result<Vec<_>>>()?;
    tracker.start();

    for _ in 0..spec.max_iter {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| fitness[a].total_cmp(&fitness[b]).then(a.cmp(&b)));
        let mut next: Vec<Vec<f64>> = Vec::with_capacity(n);
        let mut next_fitness = Vec::with_capacity(n);
        for &e in order.iter().take(params.elitism) {
            next.push(population[e].clone());
            next_fitness.push(fitness[e]);
        }
        while next.len() < n {
            let a = &population[tournament(&mut rng, &fitness, params.tournament_size)];
            let b = &population[tournament(&mut rng, &fitness, params.tournament_size)];
            let (mut c1, mut c2) = if d >= 2 && rng.random::<f64>() < params.crossover_rate {
                let point = rng.random_range(1..d);
                one_point_crossover(a, b, point)?
            } else {
                (a.clone(), b.clone())
            };
            for child in [&mut c1, &mut c2] {
                for gene in child.iter_mut() {
                    if rng.random::<f64>() < params.mutation_rate {
                        let z: f64 = rng.sample(StandardNormal);
                        *gene += sigma * z;
                    }
                }
                domain.clip(child);
            }
            for child in [c1, c2] {
                if next.len() == n {
                    break;
                }
                let f = checked_eval(objective, &child)?;
                tracker.offer(&child, f);
                next.push(child);
                next_fitness.push(f);
            }
        }
        population = next;
        fitness = next_fitness;
        for x in &population {
            tracker.visit(x);
        }
        tracker.end_iteration();
    }
    debug_assert!(fitness[argmin(&fitness)] >= tracker.best_fitness());
    Ok(tracker.finish(start.elapsed()))
}
