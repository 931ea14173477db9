//! JSON configuration file. Every field is optional and mirrors a flag;
//! flags given on the command line take precedence.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::args::{EngineChoice, Format};
use crate::error::CliError;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub x0: Option<f64>,
    pub y0: Option<f64>,
    pub dx: Option<f64>,
    pub fee: Option<String>,
    pub engine: Option<EngineChoice>,
    pub split: Option<String>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub splits: Option<usize>,
    pub n: Option<Vec<usize>>,
    pub alphas: Option<Vec<f64>>,
    pub alpha_max: Option<f64>,
    pub points: Option<usize>,
    pub x_range: Option<String>,
    pub y_range: Option<String>,
    pub resolution: Option<usize>,
    /// A single reference for `zeroil-curve` or a list for `no-universal`.
    pub k0: Option<OneOrMany>,
    pub t: Option<Vec<f64>>,
    pub t_max: Option<f64>,
    pub kstar: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany {
    One(f64),
    Many(Vec<f64>),
}

impl OneOrMany {
    pub fn into_vec(self) -> Vec<f64> {
        match self {
            OneOrMany::One(v) => vec![v],
            OneOrMany::Many(v) => v,
        }
    }
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|e| CliError::Config {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    }
}
