//! Per-algorithm aggregates over successful runs.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use super::RunRecord;
use crate::error::Result;

/// Mean, sample standard deviation (n - 1), min and max.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stats {
    pub mean: f64,
    pub std: f64,
    pub min: f64,
    pub max: f64,
}

impl Stats {
    /// Values are sorted before summation so the result does not depend on
    /// input order. A single value has `std == 0`. Panics on empty input.
    pub fn of(values: &[f64]) -> Self {
        assert!(!values.is_empty(), "Stats::of needs at least one value");
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        let n = v.len() as f64;
        let mean = v.iter().sum::<f64>() / n;
        let std = if v.len() > 1 {
            let mut sq: Vec<f64> = v.iter().map(|x| (x - mean).powi(2)).collect();
            sq.sort_by(f64::total_cmp);
            (sq.iter().sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        Self { mean, std, min: v[0], max: v[v.len() - 1] }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub algorithm: String,
    pub runs: usize,
    pub best_fitness: Stats,
    pub execution_time_s: Stats,
    pub total_distance: Stats,
    /// Mean distance over mean time, not the mean of per-run ratios.
    pub distance_per_unit_time: f64,
}

/// Group successful records by algorithm, optionally restricted to some
/// dimensions. Rows are sorted by algorithm name.
pub fn summarize(records: &[RunRecord], dimensions: Option<&[usize]>) -> Vec<SummaryRow> {
    let mut groups: BTreeMap<&str, Vec<&RunRecord>> = BTreeMap::new();
    for r in records {
        if !r.status.is_ok() || dimensions.is_some_and(|d| !d.contains(&r.dimension)) {
            continue;
        }
        groups.entry(&r.algorithm).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|(algorithm, rs)| {
            let col = |f: fn(&RunRecord) -> f64| Stats::of(&rs.iter().map(|r| f(r)).collect::<Vec<_>>());
            let time = col(|r| r.execution_time_s);
            let distance = col(|r| r.total_distance);
            SummaryRow {
                algorithm: algorithm.to_string(),
                runs: rs.len(),
                best_fitness: col(|r| r.best_fitness),
                execution_time_s: time,
                total_distance: distance,
                distance_per_unit_time: if time.mean > 0.0 {
                    distance.mean / time.mean
                } else {
                    f64::NAN
                },
            }
        })
        .collect()
}

pub const SUMMARY_HEADER: [&str; 15] = [
    "algorithm",
    "runs",
    "best_fitness_mean",
    "best_fitness_std",
    "best_fitness_min",
    "best_fitness_max",
    "execution_time_s_mean",
    "execution_time_s_std",
    "execution_time_s_min",
    "execution_time_s_max",
    "total_distance_mean",
    "total_distance_std",
    "total_distance_min",
    "total_distance_max",
    "distance_per_unit_time",
];

pub fn write_summary(rows: &[SummaryRow], path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(SUMMARY_HEADER)?;
    for r in rows {
        let mut fields = vec![r.algorithm.clone(), r.runs.to_string()];
        for s in [r.best_fitness, r.execution_time_s, r.total_distance] {
            fields.extend([s.mean, s.std, s.min, s.max].map(|x| x.to_string()));
        }
        fields.push(r.distance_per_unit_time.to_string());
        w.write_record(&fields)?;
    }
    w.flush()?;
    Ok(())
}

/// Fixed-width table for terminal output.
pub struct SummaryTable<'a>(pub &'a [SummaryRow]);

impl fmt::Display for SummaryTable<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<6} {:>5} {:>12} {:>12} {:>12} {:>12} {:>12}",
            "algo", "runs", "fit mean", "fit std", "time mean", "dist mean", "dist/time"
        )?;
        for r in self.0 {
            writeln!(
                f,
                "{:<6} {:>5} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e}",
                r.algorithm,
                r.runs,
                r.best_fitness.mean,
                r.best_fitness.std,
                r.execution_time_s.mean,
                r.total_distance.mean,
                r.distance_per_unit_time
            )?;
        }
        Ok(())
    }
}
