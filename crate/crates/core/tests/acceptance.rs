//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use ember_core::baselines::{Ffo, OptimizerRegistry, OptimizerSpec};
use ember_core::ffo::{one_point_crossover, run as run_ffo, FfoConfig, FfoState};
use ember_core::functions::{DimClass, Registry};
use ember_core::harness::{
    derive_seed, io::write_results_to, rank_top3, run_grid, summarize, Category, ExperimentGrid,
    GridOptions, GridReport, RunRecord, SettingGrouping, Status,
};
use ember_core::Rng;
use rand::{Rng as _, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

fn within_budget(elapsed: Duration, limit: Duration) -> Result<(), String> {
    check(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn registry_fidelity() -> Outcome {
    let start = Instant::now();
    let reg = Registry::standard();
    let ev = |name: &str, x: &[f64]| reg.evaluate(name, x).map_err(|e| e.to_string());
    let mut worst = 0.0f64;
    let mut expect = |name: &str, x: &[f64], value: f64, tol: f64| -> Result<(), String> {
        let got = ev(name, x)?;
        let r = (got - value).abs();
        worst = worst.max(r / tol);
        check(r <= tol, || format!("{name} at {x:?}: {got} vs {value} (tol {tol:e})"))
    };
    expect("booth", &[1.0, 3.0], 0.0, 1e-4)?;
    expect("goldstein_price", &[0.0, -1.0], 3.0, 1e-4)?;
    for sx in [1.0, -1.0] {
        for sy in [1.0, -1.0] {
            expect("cross_in_tray", &[sx * 1.34941, sy * 1.34941], -2.06261, 1e-4)?;
            expect("holder_table", &[sx * 8.05502, sy * 9.66459], -19.2085, 1e-3)?;
        }
    }
    expect("eggholder", &[512.0, 404.2319], -959.6407, 1e-3)?;
    for n in [2usize, 20, 50] {
        // tolerance 1e-3 per dimension
        expect("styblinski_tang", &vec![-2.903534; n], -39.16599 * n as f64, 1e-3 * n as f64)?;
    }
    expect("styblinski_tang", &[-2.903534; 2], -39.16599 * 2.0, 1e-3)?;
    for m in [[3.0, 2.0], [-2.805118, 3.131312], [-3.779310, -3.283186], [3.584428, -1.848126]] {
        expect("himmelblau", &m, 0.0, 1e-6)?;
    }
    for n in [2usize, 20, 50] {
        for name in ["ackley", "rastrigin", "griewank", "sphere"] {
            expect(name, &vec![0.0; n], 0.0, 1e-4)?;
        }
    }
    expect("schwefel", &[420.9687; 2], 0.0, 1e-4)?;
    let report = reg.validate(1e-3);
    check(report.passed(), || format!("registry validation failed:\n{report}"))?;
    within_budget(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("worst residual/tolerance {worst:.3}, {:?}", start.elapsed()))
}

fn ffo_smoke() -> Outcome {
    let start = Instant::now();
    let reg = Registry::standard();
    let mut medians = Vec::new();
    for (name, bound) in [("sphere", 1e-3), ("rastrigin", 1.0)] {
        let f = reg.get(name).unwrap();
        let objective = f.objective();
        let best: Vec<f64> = (0..10)
            .map(|seed| {
                let cfg = FfoConfig { dimension: 2, bounds: f.domain(), seed, ..FfoConfig::default() };
                run_ffo(&cfg, &objective).map(|o| o.best_fitness)
            })
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        let m = median(best);
        check(m <= bound, || format!("{name}: median {m:e} > {bound:e}"))?;
        medians.push(format!("{name} median {m:.3e}"));
    }
    within_budget(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("{}, {:?}", medians.join(", "), start.elapsed()))
}

fn property_grid() -> ExperimentGrid {
    ExperimentGrid {
        algorithms: ["ffo", "pso", "sa", "ga", "hs"].map(String::from).to_vec(),
        functions: ["sphere", "rastrigin", "ackley", "easom", "booth", "eggholder", "schwefel"]
            .map(String::from)
            .to_vec(),
        dimensions: vec![2, 5],
        agent_counts: vec![10, 30],
        iteration_counts: vec![60],
        seeds: vec![0, 1],
        master_seed: 2024,
        params: BTreeMap::new(),
        record_trajectory: false,
    }
}

fn grid_properties() -> Outcome {
    let reg = Registry::standard();
    let opt = OptimizerRegistry::default();
    let grid = property_grid();
    let report = run_grid(&grid, reg, &opt, &GridOptions { jobs: 4, ..Default::default() })
        .map_err(|e| e.to_string())?;
    check(report.failed() == 0, || format!("{} failed cells", report.failed()))?;

    // (a) monotone histories
    let bad = report
        .records
        .iter()
        .filter(|r| r.history.windows(2).any(|w| w[1] > w[0]))
        .count();
    check(bad == 0, || format!("{bad} records with increasing history"))?;

    // (b) bounds, replaying each cell with instrumentation
    let mut violations = 0usize;
    for r in &report.records {
        let f = reg.get(&r.function).unwrap();
        let domain = f.domain_box(r.dimension).unwrap();
        let objective = f.objective();
        let mut spec = OptimizerSpec::new(r.algorithm.as_str(), r.max_iter, r.agents, derive_seed(grid.master_seed, &r.key()));
        if r.algorithm == "ffo" {
            let params = opt.check(&spec).map_err(|e| e.to_string())?;
            let cfg = Ffo::config(&spec, &params, &domain).map_err(|e| e.to_string())?;
            let mut state = FfoState::initialize(&cfg, &objective).map_err(|e| e.to_string())?;
            let out = state
                .execute_observed(&objective, |s| {
                    violations += s.agents().iter().filter(|a| !domain.contains(a)).count();
                })
                .map_err(|e| e.to_string())?;
            check(out.best_fitness.to_bits() == r.best_fitness.to_bits(), || format!("{}: replay diverged", r.key()))?;
        } else {
            spec.record_trajectory = true;
            let out = opt.run(&spec, &objective, &domain).map_err(|e| e.to_string())?;
            violations += out.trajectory.unwrap().iter().filter(|p| !domain.contains(p)).count();
            check(out.best_fitness.to_bits() == r.best_fitness.to_bits(), || format!("{}: replay diverged", r.key()))?;
        }
    }
    check(violations == 0, || format!("{violations} out-of-bounds positions"))?;

    // (c) distance per unit time
    let mut worst = 0.0f64;
    for r in &report.records {
        let rel = (r.distance_per_unit_time * r.execution_time_s - r.total_distance).abs() / r.total_distance.abs().max(f64::MIN_POSITIVE);
        worst = worst.max(rel);
    }
    check(worst <= 1e-9, || format!("dput x time relative error {worst:e}"))?;
    Ok(format!(
        "{} records ({} skipped), 0 bound violations, worst dput relation {worst:.1e}",
        report.records.len(),
        report.skipped.len()
    ))
}

fn distance_oracle() -> Outcome {
    let start = Instant::now();
    let objective = |x: &[f64]| x.iter().map(|a| a * a).sum::<f64>();
    let cfg = FfoConfig { dimension: 2, num_agents: 3, max_iter: 5, mutation_probability: 0.5, seed: 7, ..FfoConfig::default() };
    let out = run_ffo(&cfg, &objective).map_err(|e| e.to_string())?;
    let pts = out.trajectory.ok_or("trajectory not stored")?;
    check(pts.len() == 3 * out.fitness_history.len(), || format!("{} trajectory points", pts.len()))?;
    let mut brute = 0.0;
    for i in 1..pts.len() {
        let (dx, dy) = (pts[i][0] - pts[i - 1][0], pts[i][1] - pts[i - 1][1]);
        brute += (dx * dx + dy * dy).sqrt();
    }
    let rel = (brute - out.total_distance).abs() / brute;
    check(rel <= 1e-12, || format!("streaming {} vs brute {brute}", out.total_distance))?;
    within_budget(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("{} points, relative error {rel:.1e}", pts.len()))
}

fn termination() -> Outcome {
    let reg = Registry::standard();
    let names: Vec<&str> = reg.iter().map(|f| f.name()).collect();
    let mut rng = Rng::seed_from_u64(0x7E57);
    let mut early = 0;
    for i in 0..50 {
        let f = reg.get(names[rng.random_range(0..names.len())]).unwrap();
        let dim = if f.dim_class() == DimClass::Fixed2D { 2 } else { rng.random_range(2..=6) };
        let objective = f.objective();
        let target = if rng.random_bool(0.5) { 1e-5 } else { rng.random_range(-1e3..1e3) };
        let on = FfoConfig {
            dimension: dim,
            bounds: f.domain(),
            num_agents: rng.random_range(2..=30),
            max_iter: rng.random_range(2..=300),
            no_improve_limit: 30,
            use_additional_conditions: true,
            target_fitness: target,
            seed: rng.random(),
            ..FfoConfig::default()
        };
        let o = run_ffo(&on, &objective).map_err(|e| e.to_string())?;
        check(
            o.no_improve_counter <= 31 || o.best_fitness < target || o.iterations_run == on.max_iter,
            || format!("config {i} ({}): counter {} best {} iters {}", f.name(), o.no_improve_counter, o.best_fitness, o.iterations_run),
        )?;
        early += usize::from(o.iterations_run < on.max_iter);
        let off = FfoConfig { use_additional_conditions: false, ..on };
        let o = run_ffo(&off, &objective).map_err(|e| e.to_string())?;
        check(o.iterations_run == off.max_iter, || format!("config {i} off: {} != {}", o.iterations_run, off.max_iter))?;
    }
    Ok(format!("50 configs, {early} stopped early with conditions on"))
}

fn crossover_suite() -> Outcome {
    let mut rng = Rng::seed_from_u64(6);
    let mut checked = 0;
    check(one_point_crossover(&[1.0], &[2.0], 1).is_err(), || "d = 1 accepted".into())?;
    for d in 2..=6usize {
        for p in 1..d {
            for trial in 0..25 {
                let p1: Vec<f64> = (0..d).map(|j| if trial == 0 { j as f64 + 1.0 } else { rng.random_range(-1e3..1e3) }).collect();
                let p2: Vec<f64> = (0..d).map(|j| if trial == 0 { -(j as f64) - 1.0 } else { rng.random_range(-1e3..1e3) }).collect();
                let (c1, c2) = one_point_crossover(&p1, &p2, p).map_err(|e| e.to_string())?;
                for j in 0..d {
                    let mut got = [c1[j], c2[j]];
                    let mut want = [p1[j], p2[j]];
                    got.sort_by(f64::total_cmp);
                    want.sort_by(f64::total_cmp);
                    check(got == want, || format!("d={d} p={p} j={j}: not conserved"))?;
                }
                check(c1[..p] == p1[..p] && c1[p..] == p2[p..], || format!("d={d} p={p}: child1 structure"))?;
                check(c2[..p] == p2[..p] && c2[p..] == p1[p..], || format!("d={d} p={p}: child2 structure"))?;
                let (e1, e2) = one_point_crossover(&p1, &p1, p).map_err(|e| e.to_string())?;
                check(e1 == p1 && e2 == p1, || format!("d={d} p={p}: equal parents changed"))?;
                checked += 1;
            }
            check(one_point_crossover(&vec![0.0; d], &vec![1.0; d], d).is_err(), || format!("cut {d} accepted for d={d}"))?;
        }
    }
    Ok(format!("{checked} parent pairs over every cut for d <= 6"))
}

fn columns(report: &GridReport) -> Result<Vec<String>, String> {
    let mut buf = Vec::new();
    write_results_to(&report.records, &mut buf).map_err(|e| e.to_string())?;
    let text = String::from_utf8(buf).map_err(|e| e.to_string())?;
    Ok(text
        .lines()
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            format!("{},{},{}", f[6], f[8], f[10])
        })
        .collect())
}

fn determinism() -> Outcome {
    let reg = Registry::standard();
    let opt = OptimizerRegistry::default();
    let grid = property_grid();
    let a = run_grid(&grid, reg, &opt, &GridOptions { jobs: 1, ..Default::default() }).map_err(|e| e.to_string())?;
    let b = run_grid(&grid, reg, &opt, &GridOptions { jobs: 6, ..Default::default() }).map_err(|e| e.to_string())?;
    let (ca, cb) = (columns(&a)?, columns(&b)?);
    check(ca == cb, || "best_fitness/total_distance/iterations_run columns differ".into())?;
    let other = run_grid(&ExperimentGrid { master_seed: 2025, ..grid }, reg, &opt, &GridOptions { jobs: 6, ..Default::default() })
        .map_err(|e| e.to_string())?;
    check(columns(&other)? != ca, || "master seed has no effect".into())?;
    Ok(format!("{} rows identical across 1 and 6 workers", ca.len() - 1))
}

#[allow(clippy::too_many_arguments)]
fn synthetic(algo: &str, function: &str, dim: usize, agents: usize, iters: usize, fit: f64, time: f64, dist: f64) -> RunRecord {
    RunRecord {
        algorithm: algo.into(),
        function: function.into(),
        dimension: dim,
        agents,
        max_iter: iters,
        seed: 0,
        best_fitness: fit,
        execution_time_s: time,
        total_distance: dist,
        distance_per_unit_time: dist / time,
        iterations_run: iters,
        status: Status::Ok,
        history: vec![],
        history_file: None,
    }
}

fn ranking_fidelity() -> Outcome {
    let reg = Registry::standard();
    let mut records = Vec::new();
    let mut rng = Rng::seed_from_u64(27);
    for dim in [2usize, 20, 50] {
        for agents in [10usize, 50, 100] {
            for iters in [100usize, 1000, 3000] {
                for function in ["sphere", "ackley", "easom"] {
                    let km = reg.known_minimum(function, dim).unwrap().value.unwrap();
                    for algo in ["ffo", "ga", "hs", "pso", "sa"] {
                        let err = if algo == "ffo" { rng.random_range(0.0..0.5) } else { rng.random_range(1.0..10.0) };
                        let time = rng.random_range(0.1..5.0);
                        records.push(synthetic(algo, function, dim, agents, iters, km + err, time, 1.0));
                    }
                }
            }
        }
    }
    let rep = rank_top3(&records, SettingGrouping::PerRegime, |f, d| reg.known_minimum(f, d).ok().and_then(|k| k.value));
    check(rep.settings.len() == 27, || format!("{} settings", rep.settings.len()))?;
    let count = rep.count(Category::MostAccurate, "ffo");
    check(count == 27, || format!("ffo most-accurate count {count}"))?;
    check(rep.settings.iter().all(|s| s.top[&Category::MostAccurate][0] == "ffo"), || "ffo not first".into())?;
    check(rep.count(Category::LeastAccurate, "ffo") == 0, || "ffo among least accurate".into())?;
    Ok(format!("most accurate: ffo {count} of 27"))
}

fn summary_oracle() -> Outcome {
    let distances = [3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0, 5.0, 3.0];
    let order = [7usize, 2, 9, 0, 4, 1, 8, 3, 6, 5];
    let records: Vec<RunRecord> = order
        .iter()
        .map(|&k| {
            let i = k as f64 + 1.0;
            synthetic("ffo", "sphere", 2, 10, 100, i, 2.0 * i, distances[k])
        })
        .collect();
    let rows = summarize(&records, None);
    check(rows.len() == 1 && rows[0].runs == 10, || format!("{rows:?}"))?;
    let r = &rows[0];
    let expect = [
        ("fitness mean", r.best_fitness.mean, 5.5),
        ("fitness std", r.best_fitness.std, 3.0276503540974917),
        ("fitness min", r.best_fitness.min, 1.0),
        ("fitness max", r.best_fitness.max, 10.0),
        ("time mean", r.execution_time_s.mean, 11.0),
        ("time std", r.execution_time_s.std, 6.0553007081949835),
        ("time min", r.execution_time_s.min, 2.0),
        ("time max", r.execution_time_s.max, 20.0),
        ("distance mean", r.total_distance.mean, 3.9),
        ("distance std", r.total_distance.std, 2.4698178070456938),
        ("distance min", r.total_distance.min, 1.0),
        ("distance max", r.total_distance.max, 9.0),
        ("distance per time", r.distance_per_unit_time, 0.35454545454545455),
    ];
    let mut worst = 0.0f64;
    for (what, got, want) in expect {
        let err = (got - want).abs();
        worst = worst.max(err);
        check(err <= 1e-12, || format!("{what}: {got} vs {want}"))?;
    }
    Ok(format!("13 statistics, worst error {worst:.1e}"))
}

fn baseline_sanity() -> Outcome {
    let start = Instant::now();
    let f = Registry::standard().get("sphere").unwrap();
    let domain = f.domain_box(2).unwrap();
    let objective = f.objective();
    let opt = OptimizerRegistry::default();
    let mut parts = Vec::new();
    for algo in ["pso", "sa", "ga", "hs"] {
        let mut best = Vec::new();
        for seed in 0..10 {
            let mut spec = OptimizerSpec::new(algo, 500, 50, seed);
            spec.record_trajectory = true;
            let out = opt.run(&spec, &objective, &domain).map_err(|e| e.to_string())?;
            check(out.fitness_history.windows(2).all(|w| w[1] <= w[0]), || format!("{algo} seed {seed}: history increased"))?;
            let traj = out.trajectory.unwrap();
            check(traj.iter().all(|p| domain.contains(p)), || format!("{algo} seed {seed}: left the domain"))?;
            best.push(out.best_fitness);
        }
        let m = median(best);
        check(m <= 1e-1, || format!("{algo}: median {m:e}"))?;
        parts.push(format!("{algo} {m:.1e}"));
    }
    within_budget(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("medians {}, {:?}", parts.join(", "), start.elapsed()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("registry fidelity", registry_fidelity),
        ("ffo smoke convergence", ffo_smoke),
        ("grid properties", grid_properties),
        ("distance oracle", distance_oracle),
        ("termination semantics", termination),
        ("crossover suite", crossover_suite),
        ("grid determinism", determinism),
        ("ranking fidelity", ranking_fidelity),
        ("summary oracle", summary_oracle),
        ("baseline sanity", baseline_sanity),
    ];
    let mut failed = 0;
    for (i, (name, criterion)) in criteria.iter().enumerate() {
        match criterion() {
            Ok(detail) => println!("acceptance {:>2} PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("acceptance {:>2} FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
