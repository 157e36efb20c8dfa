//! Run configuration: JSON file plus command-line overrides.

use std::path::{Path, PathBuf};

use dbar_core::weights::{Weight, WeightSpec};
use dbar_core::{Grid, Scheme};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridConfig {
    pub radius: f64,
    pub n: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        // n = 1024 is the smallest power of two at which the moments of the
        // bump suite resolve to the 1e-8 moment tolerance.
        Self {
            radius: 6.0,
            n: 1024,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub identity_rel: f64,
    pub moment_abs: f64,
    pub bound_slack: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            identity_rel: 1e-6,
            moment_abs: 1e-8,
            bound_slack: 0.01,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    pub dir: PathBuf,
    /// `json` or `csv`; checked when reports are written.
    pub format: String,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            dir: PathBuf::from("reports"),
            format: "json".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub grid: GridConfig,
    pub weight: Weight,
    pub scheme: Scheme,
    pub tolerances: Tolerances,
    pub seed: u64,
    pub output: OutputConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            grid: GridConfig::default(),
            weight: Weight::Fock { t: 1.0 },
            scheme: Scheme::Spectral,
            tolerances: Tolerances::default(),
            seed: 42,
            output: OutputConfig::default(),
        }
    }
}

impl RunConfig {
    /// Parses a JSON config. Errors name the offending key path.
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let cfg: RunConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let key = if path == "." {
                "<root>".to_string()
            } else {
                path
            };
            CliError::Config {
                key,
                message: e.into_inner().to_string(),
            }
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |key: &str, message: String| {
            Err(CliError::Config {
                key: key.into(),
                message,
            })
        };
        if let Err(e) = Grid::new(self.grid.radius, self.grid.n) {
            return bad("grid", e.to_string());
        }
        if let Err(e) = self.weight.check_params() {
            return bad("weight", e.to_string());
        }
        let t = &self.tolerances;
        for (key, v) in [
            ("tolerances.identity_rel", t.identity_rel),
            ("tolerances.moment_abs", t.moment_abs),
            ("tolerances.bound_slack", t.bound_slack),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return bad(key, format!("must be positive, got {v}"));
            }
        }
        Ok(())
    }

    pub fn grid(&self) -> Grid {
        Grid::new(self.grid.radius, self.grid.n).expect("validated grid")
    }
}

/// Parses `--weight`: either a JSON object or `name[:key=value,...]`,
/// e.g. `fock:t=2` or `fock-plus-harmonic:b=0.125`.
pub fn parse_weight(text: &str) -> Result<Weight, CliError> {
    let text = text.trim();
    if text.starts_with('{') {
        let de = &mut serde_json::Deserializer::from_str(text);
        return serde_path_to_error::deserialize(de).map_err(|e| CliError::Config {
            key: format!("weight{}", e.path().to_string().trim_start_matches('.')),
            message: e.into_inner().to_string(),
        });
    }
    let (name, params) = text.split_once(':').unwrap_or((text, ""));
    let mut spec = WeightSpec {
        name: name.to_string(),
        ..WeightSpec::default()
    };
    for part in params.split(',').filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| CliError::Config {
            key: "weight".into(),
            message: format!("expected key=value, got `{part}`"),
        })?;
        let value: f64 = v.trim().parse().map_err(|_| CliError::Config {
            key: format!("weight.{}", k.trim()),
            message: format!("not a number: `{v}`"),
        })?;
        match k.trim() {
            "t" => spec.t = Some(value),
            "b" => spec.b = Some(value),
            other => {
                return Err(CliError::Config {
                    key: format!("weight.{other}"),
                    message: "unknown weight parameter".into(),
                })
            }
        }
    }
    Weight::from_spec(&spec).map_err(|e| CliError::Config {
        key: "weight".into(),
        message: e.to_string(),
    })
}
