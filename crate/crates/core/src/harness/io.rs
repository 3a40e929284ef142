//! CSV persistence for run records and per-run histories.

use std::fs;
use std::path::{Path, PathBuf};

use super::{RunRecord, Status};
use crate::error::{Error, Result};

/// Column order of `results.csv`.
pub const RESULTS_HEADER: [&str; 12] = [
    "algorithm",
    "function",
    "dimension",
    "agents",
    "max_iter",
    "seed",
    "best_fitness",
    "execution_time_s",
    "total_distance",
    "distance_per_unit_time",
    "iterations_run",
    "status",
];

fn status_field(status: &Status) -> String {
    match status {
        Status::Ok => "ok".to_string(),
        Status::Error(msg) => format!("error: {msg}"),
    }
}

pub fn write_results_to<W: std::io::Write>(records: &[RunRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RESULTS_HEADER)?;
    for r in records {
        w.write_record([
            r.algorithm.clone(),
            r.function.clone(),
            r.dimension.to_string(),
            r.agents.to_string(),
            r.max_iter.to_string(),
            r.seed.to_string(),
            r.best_fitness.to_string(),
            r.execution_time_s.to_string(),
            r.total_distance.to_string(),
            r.distance_per_unit_time.to_string(),
            r.iterations_run.to_string(),
            status_field(&r.status),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_results(records: &[RunRecord], path: &Path) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    write_results_to(records, fs::File::create(path)?)
}

fn field<T: std::str::FromStr>(row: &csv::StringRecord, idx: usize, line: usize) -> Result<T> {
    let raw = row.get(idx).unwrap_or("");
    raw.parse().map_err(|_| {
        Error::config(format!(
            "results line {line}: column `{}` has invalid value `{raw}`",
            RESULTS_HEADER[idx]
        ))
    })
}

/// Parse a results CSV. Histories are not restored.
pub fn read_results_from<R: std::io::Read>(input: R) -> Result<Vec<RunRecord>> {
    let mut rdr = csv::Reader::from_reader(input);
    let header = rdr.headers()?.clone();
    if header.iter().ne(RESULTS_HEADER.iter().copied()) {
        return Err(Error::config(format!(
            "results header mismatch: expected `{}`",
            RESULTS_HEADER.join(",")
        )));
    }
    let mut out = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let row = row?;
        let line = i + 2;
        let status = match row.get(11).unwrap_or("") {
            "ok" => Status::Ok,
            s => Status::Error(s.strip_prefix("error: ").unwrap_or(s).to_string()),
        };
        out.push(RunRecord {
            algorithm: row[0].to_string(),
            function: row[1].to_string(),
            dimension: field(&row, 2, line)?,
            agents: field(&row, 3, line)?,
            max_iter: field(&row, 4, line)?,
            seed: field(&row, 5, line)?,
            best_fitness: field(&row, 6, line)?,
            execution_time_s: field(&row, 7, line)?,
            total_distance: field(&row, 8, line)?,
            distance_per_unit_time: field(&row, 9, line)?,
            iterations_run: field(&row, 10, line)?,
            status,
            history: Vec::new(),
            history_file: None,
        });
    }
    Ok(out)
}

pub fn read_results(path: &Path) -> Result<Vec<RunRecord>> {
    read_results_from(fs::File::open(path)?)
}

/// Write `<dir>/histories/<cell-key>.csv` with columns `iteration,best_fitness`
/// (1-based iteration).
pub fn export_history(record: &RunRecord, dir: &Path) -> Result<PathBuf> {
    let hist_dir = dir.join("histories");
    fs::create_dir_all(&hist_dir)?;
    let path = hist_dir.join(format!("{}.csv", record.key()));
    let mut w = csv::Writer::from_path(&path)?;
    w.write_record(["iteration", "best_fitness"])?;
    for (i, f) in record.history.iter().enumerate() {
        w.write_record([(i + 1).to_string(), f.to_string()])?;
    }
    w.flush()?;
    Ok(path)
}

pub fn read_history(path: &Path) -> Result<Vec<f64>> {
    let mut rdr = csv::Reader::from_path(path)?;
    let mut out = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let row = row?;
        let it: usize = row[0]
            .parse()
            .map_err(|_| Error::config(format!("history row {}: bad iteration", i + 1)))?;
        if it != i + 1 {
            return Err(Error::config(format!("history row {}: iteration {it} out of order", i + 1)));
        }
        out.push(
            row[1]
                .parse()
                .map_err(|_| Error::config(format!("history row {}: bad fitness", i + 1)))?,
        );
    }
    Ok(out)
}
