//! Run configuration: a JSON file merged with command-line overrides.

use std::fs;
use std::path::Path;

use hybridwc_core::{Epsilon, ModelParams};
use serde::Deserialize;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub weights: Option<Vec<u32>>,
    pub d: Option<u32>,
    pub num_polys: Option<usize>,
    pub epsilon: Option<String>,
    pub max_q_degree: Option<i64>,
    pub n: Option<usize>,
    pub beta: Option<u32>,
    pub max_vertices: Option<usize>,
}

/// Flags that override file fields.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub model: Option<String>,
    pub epsilon: Option<String>,
    pub max_degree: Option<i64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphBounds {
    pub n: usize,
    pub beta: u32,
    pub max_vertices: usize,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub model: ModelParams,
    pub graphs: GraphBounds,
}

pub fn preset(name: &str) -> Option<ModelParams> {
    Some(match name {
        "quintic" => ModelParams::quintic(),
        "cubic-pair" | "cc33" => ModelParams::cubic_pair(),
        "quadric-quadruple" | "c2222" => ModelParams::quadric_quadruple(),
        "weighted-quartic-pair" => ModelParams::weighted_quartic_pair(),
        _ => return None,
    })
}

pub fn read_config_file(path: &Path) -> Result<ConfigFile, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_config_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn parse_config_str(text: &str) -> Result<ConfigFile, String> {
    serde_json::from_str(text).map_err(|e| format!("malformed config: {e}"))
}

/// Merge file and flags into a validated configuration.
pub fn resolve(file: Option<ConfigFile>, ov: &Overrides) -> Result<RunConfig, String> {
    let file = file.unwrap_or_default();
    let base = match &ov.model {
        Some(name) => Some(preset(name).ok_or_else(|| format!("unknown model preset {name:?}"))?),
        None => None,
    };
    let weights = file.weights.or_else(|| base.as_ref().map(|b| b.weights.clone()));
    let d = file.d.or_else(|| base.as_ref().map(|b| b.d));
    let num_polys = file.num_polys.or_else(|| base.as_ref().map(|b| b.num_polys));
    let (Some(weights), Some(d), Some(num_polys)) = (weights, d, num_polys) else {
        return Err("no model given: pass -c/--config or --model".into());
    };
    let eps_text = ov.epsilon.clone().or(file.epsilon).unwrap_or_else(|| "0+".into());
    let epsilon: Epsilon = eps_text.parse().map_err(|e| format!("{e}"))?;
    let max_degree = ov.max_degree.or(file.max_q_degree).unwrap_or(10);
    if max_degree < 0 {
        return Err(format!("max degree must be non-negative, got {max_degree}"));
    }
    let max_degree = u32::try_from(max_degree).map_err(|_| "max degree too large".to_string())?;
    let model = ModelParams::new(weights, d, num_polys, epsilon, max_degree).map_err(|e| e.to_string())?;
    let graphs = GraphBounds { n: file.n.unwrap_or(1), beta: file.beta.unwrap_or(1), max_vertices: file.max_vertices.unwrap_or(4) };
    Ok(RunConfig { model, graphs })
}
