//! Top-3 rankings per setting and their global tallies.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use super::RunRecord;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Category {
    LongestTime,
    ShortestTime,
    MostAccurate,
    LeastAccurate,
}

impl Category {
    pub const ALL: [Category; 4] = [
        Category::LongestTime,
        Category::ShortestTime,
        Category::MostAccurate,
        Category::LeastAccurate,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Category::LongestTime => "longest_time",
            Category::ShortestTime => "shortest_time",
            Category::MostAccurate => "most_accurate",
            Category::LeastAccurate => "least_accurate",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How records are grouped into settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SettingGrouping {
    /// (function, dimension, agents, iterations).
    PerFunction,
    /// (dimension, agents, iterations), pooling functions.
    #[default]
    PerRegime,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SettingKey {
    pub function: Option<String>,
    pub dimension: usize,
    pub agents: usize,
    pub max_iter: usize,
}

impl fmt::Display for SettingKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(func) = &self.function {
            write!(f, "{func} ")?;
        }
        write!(f, "d{} a{} i{}", self.dimension, self.agents, self.max_iter)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SettingRanking {
    pub setting: SettingKey,
    /// Up to three algorithms per category, best placed first.
    pub top: BTreeMap<Category, Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RankingReport {
    pub settings: Vec<SettingRanking>,
    /// Top-3 appearances summed over settings.
    pub counts: BTreeMap<Category, BTreeMap<String, usize>>,
}

impl RankingReport {
    pub fn count(&self, category: Category, algorithm: &str) -> usize {
        self.counts
            .get(&category)
            .and_then(|m| m.get(algorithm))
            .copied()
            .unwrap_or(0)
    }

    /// Algorithms by descending count, ties by name.
    pub fn leaders(&self, category: Category) -> Vec<(&str, usize)> {
        let mut v: Vec<(&str, usize)> = self
            .counts
            .get(&category)
            .map(|m| m.iter().map(|(k, &c)| (k.as_str(), c)).collect())
            .unwrap_or_default();
        v.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(b.0)));
        v
    }

    /// Long format: `scope,setting,category,position,algorithm,count`.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["scope", "setting", "category", "position", "algorithm", "count"])?;
        for cat in Category::ALL {
            for (algo, c) in self.leaders(cat) {
                w.write_record(["global", "", cat.as_str(), "", algo, &c.to_string()])?;
            }
        }
        for s in &self.settings {
            for (cat, algos) in &s.top {
                for (i, a) in algos.iter().enumerate() {
                    w.write_record(["setting", &s.setting.to_string(), cat.as_str(), &(i + 1).to_string(), a, ""])?;
                }
            }
        }
        w.flush()?;
        Ok(())
    }
}

impl fmt::Display for RankingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "top-3 appearances over {} settings", self.settings.len())?;
        for cat in Category::ALL {
            let line: Vec<String> = self.leaders(cat).iter().map(|(a, c)| format!("{a}={c}")).collect();
            writeln!(f, "{:<15} {}", cat.as_str(), line.join(" "))?;
        }
        Ok(())
    }
}

fn mean(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    values.iter().sum::<f64>() / values.len() as f64
}

/// Rank algorithms within each setting by mean execution time and by mean
/// error, where error is `|best - known_min|` when `known_min(function,
/// dimension)` is available and the raw best fitness otherwise. Ties go to
/// the alphabetically first algorithm. Error records are ignored.
pub fn rank_top3<K>(records: &[RunRecord], grouping: SettingGrouping, known_min: K) -> RankingReport
where
    K: Fn(&str, usize) -> Option<f64>,
{
    type Samples = (Vec<f64>, Vec<f64>);
    let mut groups: BTreeMap<SettingKey, BTreeMap<&str, Samples>> = BTreeMap::new();
    for r in records.iter().filter(|r| r.status.is_ok()) {
        let key = SettingKey {
            function: match grouping {
                SettingGrouping::PerFunction => Some(r.function.clone()),
                SettingGrouping::PerRegime => None,
            },
            dimension: r.dimension,
            agents: r.agents,
            max_iter: r.max_iter,
        };
        let err = match known_min(&r.function, r.dimension) {
            Some(m) => (r.best_fitness - m).abs(),
            None => r.best_fitness,
        };
        let entry = groups.entry(key).or_default().entry(&r.algorithm).or_default();
        entry.0.push(r.execution_time_s);
        entry.1.push(err);
    }

    let mut report = RankingReport::default();
    for (setting, algos) in groups {
        // BTreeMap iteration gives name order, so stable sorts break ties by name
        let scored: Vec<(&str, f64, f64)> = algos
            .into_iter()
            .map(|(a, (mut t, mut e))| (a, mean(&mut t), mean(&mut e)))
            .collect();
        let mut top = BTreeMap::new();
        for cat in Category::ALL {
            let mut order = scored.clone();
            order.sort_by(|x, y| match cat {
                Category::LongestTime => y.1.total_cmp(&x.1),
                Category::ShortestTime => x.1.total_cmp(&y.1),
                Category::MostAccurate => x.2.total_cmp(&y.2),
                Category::LeastAccurate => y.2.total_cmp(&x.2),
            });
            let names: Vec<String> = order.iter().take(3).map(|s| s.0.to_string()).collect();
            let tally = report.counts.entry(cat).or_default();
            for n in &names {
                *tally.entry(n.clone()).or_default() += 1;
            }
            top.insert(cat, names);
        }
        report.settings.push(SettingRanking { setting, top });
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::Status;

    fn rec(algo: &str, function: &str, time: f64, fit: f64) -> RunRecord {
        RunRecord {
            algorithm: algo.into(),
            function: function.into(),
            dimension: 2,
            agents: 10,
            max_iter: 100,
            seed: 0,
            best_fitness: fit,
            execution_time_s: time,
            total_distance: 1.0,
            distance_per_unit_time: 1.0 / time,
            iterations_run: 100,
            status: Status::Ok,
            history: vec![],
            history_file: None,
        }
    }

    #[test]
    fn single_setting_order() {
        let recs = vec![
            rec("a", "f", 1.0, 5.0),
            rec("b", "f", 2.0, 4.0),
            rec("c", "f", 3.0, 3.0),
            rec("d", "f", 4.0, 2.0),
        ];
        let r = rank_top3(&recs, SettingGrouping::PerRegime, |_, _| None);
        let top = &r.settings[0].top;
        assert_eq!(top[&Category::LongestTime], ["d", "c", "b"]);
        assert_eq!(top[&Category::ShortestTime], ["a", "b", "c"]);
        assert_eq!(top[&Category::MostAccurate], ["d", "c", "b"]);
        assert_eq!(top[&Category::LeastAccurate], ["a", "b", "c"]);
    }

    #[test]
    fn known_minimum_shifts_error() {
        // fitness -1 is exact when the minimum is -1, and 1.5 is 2.5 away
        let recs = vec![rec("a", "f", 1.0, -1.0), rec("b", "f", 1.0, 1.5)];
        let r = rank_top3(&recs, SettingGrouping::PerRegime, |_, _| Some(-1.0));
        assert_eq!(r.settings[0].top[&Category::MostAccurate], ["a", "b"]);
    }

    #[test]
    fn ties_by_name() {
        let recs = vec![rec("z", "f", 1.0, 1.0), rec("m", "f", 1.0, 1.0), rec("a", "f", 1.0, 1.0), rec("q", "f", 1.0, 1.0)];
        let r = rank_top3(&recs, SettingGrouping::PerRegime, |_, _| None);
        for cat in Category::ALL {
            assert_eq!(r.settings[0].top[&cat], ["a", "m", "q"]);
        }
    }

    #[test]
    fn grouping_modes() {
        let recs = vec![rec("a", "f", 1.0, 1.0), rec("a", "g", 2.0, 1.0)];
        assert_eq!(rank_top3(&recs, SettingGrouping::PerRegime, |_, _| None).settings.len(), 1);
        assert_eq!(rank_top3(&recs, SettingGrouping::PerFunction, |_, _| None).settings.len(), 2);
    }
}
