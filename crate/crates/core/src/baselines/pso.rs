//! Global-best particle swarm.

use std::time::Instant;

use rand::{Rng as _, SeedableRng};

use super::{init_population, require_agents, CommonOutcome, Objective, Optimizer, OptimizerSpec, ParamValue, Params, Tracker};
use crate::error::Result;
use crate::functions::DomainBox;
use crate::Rng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsoParams {
    pub inertia: f64,
    pub cognitive: f64,
    pub social: f64,
}

impl Default for PsoParams {
    fn default() -> Self {
        Self {
            inertia: 0.7,
            cognitive: 1.0,
            social: 1.0,
        }
    }
}

pub struct Pso;

impl Optimizer for Pso {
    fn name(&self) -> &'static str {
        "pso"
    }

    fn defaults(&self) -> Vec<(&'static str, ParamValue)> {
        let d = PsoParams::default();
        vec![
            ("inertia", d.inertia.into()),
            ("cognitive", d.cognitive.into()),
            ("social", d.social.into()),
        ]
    }

    fn run(
        &self,
        spec: &OptimizerSpec,
        params: &Params,
        objective: Objective<'_>,
        domain: &DomainBox,
    ) -> Result<CommonOutcome> {
        let p = PsoParams {
            inertia: params.f64("inertia")?,
            cognitive: params.f64("cognitive")?,
            social: params.f64("social")?,
        };
        run_pso(spec, p, objective, domain)
    }
}

/// Synchronous global-best PSO. Velocities start at zero and are clamped to
/// the domain width; positions are clipped to the box after every move.
pub fn run_pso(
    spec: &OptimizerSpec,
    params: PsoParams,
    objective: Objective<'_>,
    domain: &DomainBox,
) -> Result<CommonOutcome> {
    require_agents(spec)?;
    let start = Instant::now();
    let mut rng = Rng::seed_from_u64(spec.seed);
    let mut tracker = Tracker::new(spec.record_trajectory);
    let vmax = domain.width();

    let mut positions = init_population(&mut rng, spec.num_agents, domain)?;
    let mut velocities = vec![vec![0.0; domain.dimension]; spec.num_agents];
    let mut personal = positions.clone();
    let mut personal_fitness = positions
        .iter()
        .map(|x| tracker.evaluate(objective, x))
        .collect::<Result<Vec<_>>>()?;
    tracker.start();

    for _ in 0..spec.max_iter {
        let global = tracker.best().to_vec();
        for ((x, v), (pb, pf)) in positions
            .iter_mut()
            .zip(&mut velocities)
            .zip(personal.iter_mut().zip(&mut personal_fitness))
        {
            for j in 0..x.len() {
                let r1: f64 = rng.random();
                let r2: f64 = rng.random();
                let vel = params.inertia * v[j]
                    + params.cognitive * r1 * (pb[j] - x[j])
                    + params.social * r2 * (global[j] - x[j]);
                v[j] = vel.clamp(-vmax, vmax);
                x[j] += v[j];
            }
            domain.clip(x);
            let f = tracker.evaluate(objective, x)?;
            tracker.visit(x);
            if f < *pf {
                *pf = f;
                pb.clone_from(x);
            }
        }
        tracker.end_iteration();
    }
    Ok(tracker.finish(start.elapsed()))
}
