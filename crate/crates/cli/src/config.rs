//! JSON grid configuration.

use std::collections::BTreeMap;
use std::path::PathBuf;

use ember_core::baselines::ParamValue;
use ember_core::ffo::FfoConfig;
use ember_core::harness::ExperimentGrid;
use serde::Deserialize;

/// Grid file. Either names a `preset` whose fields the remaining keys
/// override, or lists at least `functions`; other keys default to a single
/// FFO run per function at the standard agent count, iteration budget and
/// seed 0.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfigFile {
    pub preset: Option<String>,
    pub algorithms: Option<Vec<String>>,
    pub functions: Option<Vec<String>>,
    pub dimensions: Option<Vec<usize>>,
    pub agent_counts: Option<Vec<usize>>,
    pub iteration_counts: Option<Vec<usize>>,
    pub seeds: Option<Vec<u64>>,
    pub master_seed: Option<u64>,
    pub params: Option<BTreeMap<String, BTreeMap<String, ParamValue>>>,
    pub record_trajectory: Option<bool>,
    pub output: Option<PathBuf>,
    pub jobs: Option<usize>,
}

impl RunConfigFile {
    /// Parse JSON; errors carry the dotted key path of the offending value.
    pub fn from_json(text: &str) -> Result<Self, String> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            if path == "." {
                format!("config: {inner}")
            } else {
                format!("config key `{path}`: {inner}")
            }
        })
    }

    pub fn into_grid(self) -> Result<ExperimentGrid, String> {
        let base = match &self.preset {
            Some(name) => ExperimentGrid::preset(name).ok_or_else(|| {
                format!("config key `preset`: unknown preset `{name}` (expected paper-2d or paper-hd)")
            })?,
            None => {
                let d = FfoConfig::default();
                ExperimentGrid {
                    algorithms: vec!["ffo".to_string()],
                    functions: Vec::new(),
                    dimensions: vec![d.dimension],
                    agent_counts: vec![d.num_agents],
                    iteration_counts: vec![d.max_iter],
                    seeds: vec![0],
                    master_seed: 0,
                    params: BTreeMap::new(),
                    record_trajectory: false,
                }
            }
        };
        if self.preset.is_none() && self.functions.is_none() {
            return Err("config key `functions`: required when no preset is given".to_string());
        }
        Ok(ExperimentGrid {
            algorithms: self.algorithms.unwrap_or(base.algorithms),
            functions: self.functions.unwrap_or(base.functions),
            dimensions: self.dimensions.unwrap_or(base.dimensions),
            agent_counts: self.agent_counts.unwrap_or(base.agent_counts),
            iteration_counts: self.iteration_counts.unwrap_or(base.iteration_counts),
            seeds: self.seeds.unwrap_or(base.seeds),
            master_seed: self.master_seed.unwrap_or(base.master_seed),
            params: self.params.unwrap_or(base.params),
            record_trajectory: self.record_trajectory.unwrap_or(base.record_trajectory),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_top_level_key() {
        let err = RunConfigFile::from_json(r#"{"functions": ["sphere"], "seedz": [1]}"#).unwrap_err();
        assert!(err.contains("seedz"), "{err}");
    }

    #[test]
    fn nested_type_error_has_path() {
        let err = RunConfigFile::from_json(r#"{"functions": ["sphere"], "dimensions": [2, "x"]}"#).unwrap_err();
        assert!(err.contains("dimensions[1]"), "{err}");
        let err = RunConfigFile::from_json(r#"{"params": {"ffo": {"step_size": "big"}}}"#).unwrap_err();
        assert!(err.contains("params.ffo.step_size"), "{err}");
    }

    #[test]
    fn defaults_without_preset() {
        let g = RunConfigFile::from_json(r#"{"functions": ["sphere"]}"#).unwrap().into_grid().unwrap();
        assert_eq!(g.algorithms, ["ffo"]);
        assert_eq!((g.agent_counts[0], g.iteration_counts[0]), (100, 500));
        assert!(RunConfigFile::default().into_grid().is_err());
    }

    #[test]
    fn preset_with_override() {
        let g = RunConfigFile::from_json(r#"{"preset": "paper-2d", "algorithms": ["ffo", "pso"]}"#)
            .unwrap()
            .into_grid()
            .unwrap();
        assert_eq!(g.algorithms, ["ffo", "pso"]);
        assert_eq!(g.functions, ["all"]);
        let err = RunConfigFile::from_json(r#"{"preset": "paper-9d"}"#).unwrap().into_grid().unwrap_err();
        assert!(err.contains("preset"));
    }
}
