//! Continuous black-box optimization toolkit.
//!
//! The crate bundles four pieces that are meant to be used together:
//!
//! * [`functions`]: a registry of 24 classical benchmark objectives with their
//!   domains, attribute tags and published minima.
//! * [`ffo`]: the Firefighter Optimization metaheuristic, a population method
//!   that mixes one-point crossover, annealed local search and a
//!   stagnation-triggered pull towards the global best.
//! * [`baselines`]: parameter-pinned PSO, SA, GA and HS reference optimizers
//!   behind one dispatch interface.
//! * [`harness`]: experiment grids, per-run metrics (best fitness, wall-clock
//!   time, trajectory distance, distance per unit time), summaries and top-3
//!   rankings.
//!
//! All minimization. Every stochastic component draws from a single seeded
//! ChaCha stream per run, so a `(configuration, seed)` pair reproduces a run
//! bit for bit.

// negated float comparisons reject NaN along with out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod baselines;
pub mod error;
pub mod ffo;
pub mod functions;
pub mod harness;
pub mod trajectory;

pub use error::{Error, Result};

/// Random stream used by every optimizer.
pub type Rng = rand_chacha::ChaCha8Rng;
