//! Experiment configuration files.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};
use vilenkin::VilenkinStructure;

use crate::LabError;

/// Default limit on `M_N`, the number of cells a run may allocate.
pub const DEFAULT_CELL_CAP: usize = 1 << 22;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StructureSpec {
    Explicit {
        m: Vec<usize>,
    },
    Pattern {
        pattern: Vec<usize>,
        repeat_to: usize,
    },
}

impl StructureSpec {
    /// Digit bases `m_0, .., m_{N-1}`.
    pub fn bases(&self, resolution: usize) -> Result<Vec<usize>, LabError> {
        match self {
            StructureSpec::Explicit { m } => {
                if m.len() < resolution {
                    return Err(LabError::Config(format!(
                        "structure lists {} bases but resolution is {resolution}",
                        m.len()
                    )));
                }
                Ok(m[..resolution].to_vec())
            }
            StructureSpec::Pattern { pattern, repeat_to } => {
                if pattern.is_empty() {
                    return Err(LabError::Config("empty structure pattern".into()));
                }
                if *repeat_to < resolution {
                    return Err(LabError::Config(format!(
                        "pattern repeats to {repeat_to} but resolution is {resolution}"
                    )));
                }
                Ok(pattern.iter().copied().cycle().take(resolution).collect())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    Gram,
    Kernels,
    Convergence,
    #[serde(rename = "counterexample-2a")]
    Counterexample2a,
    #[serde(rename = "counterexample-2b")]
    Counterexample2b,
    KernelScan,
    MaximalBound,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::Gram => "gram",
            Experiment::Kernels => "kernels",
            Experiment::Convergence => "convergence",
            Experiment::Counterexample2a => "counterexample-2a",
            Experiment::Counterexample2b => "counterexample-2b",
            Experiment::KernelScan => "kernel-scan",
            Experiment::MaximalBound => "maximal-bound",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub structure: StructureSpec,
    pub resolution: usize,
    #[serde(default)]
    pub p_values: Vec<f64>,
    pub experiment: Experiment,
    #[serde(default)]
    pub parameters: Map<String, Value>,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(default)]
    pub seed: u64,
}

/// The fields that determine the numbers; the output location does not.
#[derive(Serialize)]
struct HashedFields<'a> {
    structure: &'a StructureSpec,
    resolution: usize,
    p_values: &'a [f64],
    experiment: Experiment,
    parameters: &'a Map<String, Value>,
    seed: u64,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, LabError> {
        serde_json::from_str(text).map_err(|e| LabError::Config(e.to_string()))
    }

    pub fn load(path: &std::path::Path) -> Result<Self, LabError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| LabError::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Checks the exponents and the cell budget, then builds the structure.
    pub fn build_structure(&self, cell_cap: usize) -> Result<Arc<VilenkinStructure>, LabError> {
        for &p in &self.p_values {
            if !(p > 0.0 && p <= 1.0) {
                return Err(LabError::Config(format!("p = {p} is outside (0, 1]")));
            }
        }
        let bases = self.structure.bases(self.resolution)?;
        let cells = bases
            .iter()
            .try_fold(1usize, |acc, &m| acc.checked_mul(m))
            .filter(|&c| c <= cell_cap);
        if cells.is_none() {
            return Err(LabError::Capacity(format!(
                "resolution N = {} needs more than the cell cap of {cell_cap} cells",
                self.resolution
            )));
        }
        let vs = VilenkinStructure::new(bases, self.resolution)
            .map_err(|e| LabError::Config(e.to_string()))?;
        Ok(Arc::new(vs))
    }

    /// First 16 hex digits of the SHA-256 of the canonical JSON of the
    /// number-determining fields.
    pub fn hash(&self) -> String {
        let canonical = serde_json::to_string(&HashedFields {
            structure: &self.structure,
            resolution: self.resolution,
            p_values: &self.p_values,
            experiment: self.experiment,
            parameters: &self.parameters,
            seed: self.seed,
        })
        .expect("config fields serialize");
        let digest = Sha256::digest(canonical.as_bytes());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn params(&self) -> Params<'_> {
        Params {
            map: &self.parameters,
            used: BTreeSet::new(),
        }
    }
}

/// Typed access to the `parameters` map; [`Params::finish`] rejects keys no
/// experiment asked for.
pub struct Params<'a> {
    map: &'a Map<String, Value>,
    used: BTreeSet<&'static str>,
}

impl Params<'_> {
    fn raw(&mut self, key: &'static str) -> Option<&Value> {
        self.used.insert(key);
        self.map.get(key)
    }

    pub fn usize_or(&mut self, key: &'static str, default: usize) -> Result<usize, LabError> {
        Ok(self.opt_usize(key)?.unwrap_or(default))
    }

    pub fn opt_usize(&mut self, key: &'static str) -> Result<Option<usize>, LabError> {
        match self.raw(key) {
            None => Ok(None),
            Some(v) => v.as_u64().map(|x| Some(x as usize)).ok_or_else(|| {
                LabError::Config(format!("parameter {key} must be a non-negative integer"))
            }),
        }
    }

    pub fn f64_or(&mut self, key: &'static str, default: f64) -> Result<f64, LabError> {
        match self.raw(key) {
            None => Ok(default),
            Some(v) => v
                .as_f64()
                .ok_or_else(|| LabError::Config(format!("parameter {key} must be a number"))),
        }
    }

    pub fn str_or(&mut self, key: &'static str, default: &'static str) -> Result<String, LabError> {
        match self.raw(key) {
            None => Ok(default.to_string()),
            Some(v) => v
                .as_str()
                .map(str::to_string)
                .ok_or_else(|| LabError::Config(format!("parameter {key} must be a string"))),
        }
    }

    /// Accepts a single integer or a list of integers.
    pub fn usize_list(&mut self, key: &'static str) -> Result<Option<Vec<usize>>, LabError> {
        let bad = || {
            LabError::Config(format!(
                "parameter {key} must be an integer or a list of integers"
            ))
        };
        match self.raw(key) {
            None => Ok(None),
            Some(Value::Array(items)) => items
                .iter()
                .map(|v| v.as_u64().map(|x| x as usize).ok_or_else(bad))
                .collect::<Result<Vec<_>, _>>()
                .map(Some),
            Some(v) => v.as_u64().map(|x| Some(vec![x as usize])).ok_or_else(bad),
        }
    }

    pub fn finish(self) -> Result<(), LabError> {
        let unknown: Vec<&str> = self
            .map
            .keys()
            .map(String::as_str)
            .filter(|k| !self.used.contains(k))
            .collect();
        if unknown.is_empty() {
            Ok(())
        } else {
            Err(LabError::Config(format!(
                "unknown parameters: {}",
                unknown.join(", ")
            )))
        }
    }
}
