use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use vertexlie::lie_core::LieConfig;
use vertexlie::poisson::VPConfig;
use vertexlie::vertex_lie::VLConfig;
use vertexlie::Rational;

use crate::error::CliError;

/// Run configuration file, JSON or TOML by extension. Every field is
/// optional and command-line flags take precedence.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Named builder, e.g. `virasoro`.
    pub builder: Option<String>,
    /// Inline vertex Lie table.
    pub structure: Option<VLConfig>,
    /// Central character, keyed by central generator name.
    pub lambda: Option<BTreeMap<String, Rational>>,
    pub window: Option<u32>,
    pub depth: Option<u32>,
    pub seed: Option<u64>,
    pub gram: Option<Vec<Vec<i64>>>,
    /// Inline vertex Poisson table.
    pub vertex_poisson: Option<VPConfig>,
    /// Finite Lie algebra for the ultra-Poisson preset.
    pub lie: Option<LieConfig>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        let is_toml = path.extension().is_some_and(|e| e == "toml");
        let parsed = if is_toml {
            toml::from_str(&text).map_err(|e| e.to_string())
        } else {
            serde_json::from_str(&text).map_err(|e| e.to_string())
        };
        parsed.map_err(|e| CliError::Usage(format!("config error in {}: {e}", path.display())))
    }
}

/// `key=value` pairs with exact rational values.
pub fn parse_lambda(pairs: &[String]) -> Result<Option<BTreeMap<String, Rational>>, CliError> {
    if pairs.is_empty() {
        return Ok(None);
    }
    let mut out = BTreeMap::new();
    for p in pairs {
        let (k, v) =
            p.split_once('=').ok_or_else(|| CliError::Usage(format!("--lambda expects key=value, got {p:?}")))?;
        let v: Rational =
            v.trim().parse().map_err(|_| CliError::Usage(format!("--lambda value {v:?} is not an exact rational")))?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(Some(out))
}

pub fn parse_gram(text: &str) -> Result<Vec<Vec<i64>>, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Usage(format!("--gram expects a JSON integer matrix: {e}")))
}
