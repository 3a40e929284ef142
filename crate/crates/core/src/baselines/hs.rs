//! Harmony search.

use std::time::Instant;

use rand::{Rng as _, SeedableRng};

use super::{init_population, require_agents, CommonOutcome, Objective, Optimizer, OptimizerSpec, ParamValue, Params, Tracker};
use crate::error::{checked_eval, Result};
use crate::functions::DomainBox;
use crate::Rng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HsParams {
    /// Harmony memory consideration rate.
    pub hmcr: f64,
    /// Pitch adjustment rate.
    pub par: f64,
    /// Pitch bandwidth as a fraction of the domain width.
    pub bandwidth: f64,
}

impl Default for HsParams {
    fn default() -> Self {
        Self {
            hmcr: 0.9,
            par: 0.3,
            bandwidth: 0.01,
        }
    }
}

pub struct HarmonySearch;

impl Optimizer for HarmonySearch {
    fn name(&self) -> &'static str {
        "hs"
    }

    fn defaults(&self) -> Vec<(&'static str, ParamValue)> {
        let d = HsParams::default();
        vec![
            ("hmcr", d.hmcr.into()),
            ("par", d.par.into()),
            ("bandwidth", d.bandwidth.into()),
        ]
    }

    fn run(
        &self,
        spec: &OptimizerSpec,
        params: &Params,
        objective: Objective<'_>,
        domain: &DomainBox,
    ) -> Result<CommonOutcome> {
        let p = HsParams {
            hmcr: params.probability("hmcr")?,
            par: params.probability("par")?,
            bandwidth: params.f64("bandwidth")?,
        };
        run_hs(spec, p, objective, domain)
    }
}

/// Compose one new harmony, coordinate by coordinate.
pub fn improvise(memory: &[Vec<f64>], params: HsParams, domain: &DomainBox, rng: &mut Rng) -> Vec<f64> {
    let bw = params.bandwidth * domain.width();
    let mut harmony: Vec<f64> = (0..domain.dimension)
        .map(|j| {
            if rng.random::<f64>() < params.hmcr {
                let row = rng.random_range(0..memory.len());
                let mut v = memory[row][j];
                if rng.random::<f64>() < params.par {
                    v += bw * rng.random_range(-1.0..=1.0);
                }
                v
            } else {
                rng.random_range(domain.lower..=domain.upper)
            }
        })
        .collect();
    domain.clip(&mut harmony);
    harmony
}

/// Harmony memory of `num_agents` entries; each iteration improvises
/// `num_agents` harmonies, each replacing the current worst entry when better.
pub fn run_hs(
    spec: &OptimizerSpec,
    params: HsParams,
    objective: Objective<'_>,
    domain: &DomainBox,
) -> Result<CommonOutcome> {
    require_agents(spec)?;
    let start = Instant::now();
    let mut rng = Rng::seed_from_u64(spec.seed);
    let mut tracker = Tracker::new(spec.record_trajectory);

    let mut memory = init_population(&mut rng, spec.num_agents, domain)?;
    let mut fitness = memory
        .iter()
        .map(|x| tracker.evaluate(objective, x))
        .collect::<Result<Vec<_>>>()?;
    tracker.start();

    for _ in 0..spec.max_iter {
        for _ in 0..spec.num_agents {
            let harmony = improvise(&memory, params, domain, &mut rng);
            let f = checked_eval(objective, &harmony)?;
            tracker.offer(&harmony, f);
            tracker.visit(&harmony);
            let worst = worst_index(&fitness);
            if f < fitness[worst] {
                memory[worst] = harmony;
                fitness[worst] = f;
            }
        }
        tracker.end_iteration();
    }
    debug_assert_eq!(memory.len(), spec.num_agents);
    Ok(tracker.finish(start.elapsed()))
}

/// Largest fitness, first index on ties.
fn worst_index(fitness: &[f64]) -> usize {
    let mut worst = 0;
    for (i, f) in fitness.iter().enumerate().skip(1) {
        if *f > fitness[worst] {
            worst = i;
        }
    }
    worst
}
