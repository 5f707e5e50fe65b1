//! Run configuration assembled from defaults, an optional `key = value` file,
//! and command-line flags, later layers winning.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evaluate::Method;
use crate::io::synth::SyntheticKind;
use crate::metrics::EntropyParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Emit {
    pub csv: bool,
    pub json: bool,
    pub svg: bool,
}

impl Default for Emit {
    fn default() -> Self {
        Self {
            csv: true,
            json: true,
            svg: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub inputs: Vec<PathBuf>,
    pub synthetic: Vec<SyntheticKind>,
    pub n: usize,
    pub seed: u64,
    pub method: Option<Method>,
    pub parameter: Option<f64>,
    pub evaluate: bool,
    pub apen_m: usize,
    pub apen_r_factor: f64,
    pub out_dir: PathBuf,
    pub emit: Emit,
}

impl Default for RunConfig {
    fn default() -> Self {
        let entropy = EntropyParams::default();
        Self {
            inputs: Vec::new(),
            synthetic: Vec::new(),
            n: 1024,
            seed: 7,
            method: None,
            parameter: None,
            evaluate: false,
            apen_m: entropy.m,
            apen_r_factor: entropy.r_factor,
            out_dir: PathBuf::from("out"),
            emit: Emit::default(),
        }
    }
}

fn bad(key: &str, value: &str) -> Error {
    Error::InvalidParameter {
        name: "config",
        reason: format!("cannot use {value:?} for `{key}`"),
    }
}

fn list(value: &str) -> impl Iterator<Item = &str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty())
}

impl RunConfig {
    pub fn entropy(&self) -> EntropyParams {
        EntropyParams {
            m: self.apen_m,
            r_factor: self.apen_r_factor,
        }
    }

    /// Applies one setting. Keys match the long flag names with `_` for `-`.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        let num = |v: &str| v.parse::<f64>().map_err(|_| bad(key, v));
        match key {
            "input" => self.inputs = list(value).map(PathBuf::from).collect(),
            "synthetic" => self.synthetic = list(value).map(str::parse).collect::<Result<_>>()?,
            "n" => self.n = value.parse().map_err(|_| bad(key, value))?,
            "seed" => self.seed = value.parse().map_err(|_| bad(key, value))?,
            "method" => {
                self.method = Some(Method::from_name(value).ok_or_else(|| bad(key, value))?)
            }
            "parameter" => self.parameter = Some(num(value)?),
            "evaluate" => self.evaluate = value.parse().map_err(|_| bad(key, value))?,
            "apen_m" => self.apen_m = value.parse().map_err(|_| bad(key, value))?,
            "apen_r_factor" => self.apen_r_factor = num(value)?,
            "out_dir" => self.out_dir = PathBuf::from(value),
            "emit" => {
                let mut emit = Emit {
                    csv: false,
                    json: false,
                    svg: false,
                };
                for item in list(value) {
                    match item {
                        "csv" => emit.csv = true,
                        "json" => emit.json = true,
                        "svg" => emit.svg = true,
                        _ => return Err(bad(key, item)),
                    }
                }
                self.emit = emit;
            }
            _ => {
                return Err(Error::InvalidParameter {
                    name: "config",
                    reason: format!("unknown key `{key}`"),
                })
            }
        }
        Ok(())
    }

    pub fn apply(&mut self, settings: &BTreeMap<String, String>) -> Result<()> {
        for (k, v) in settings {
            self.set(k, v)?;
        }
        Ok(())
    }
}

/// Parses `key = value` lines; blank lines and `#` comments are ignored.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
            line: i + 1,
            reason: format!("expected key = value, found {line:?}"),
        })?;
        out.insert(k.trim().replace('-', "_"), v.trim().to_string());
    }
    Ok(out)
}

pub fn load_config(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn later_layers_win() {
        let file = parse_config("# comment\nseed = 11\nmethod = median\nemit = json\n").unwrap();
        let mut flags = BTreeMap::new();
        flags.insert("seed".to_string(), "3".to_string());
        let mut cfg = RunConfig::default();
        cfg.apply(&file).unwrap();
        cfg.apply(&flags).unwrap();
        assert_eq!(cfg.seed, 3);
        assert_eq!(cfg.method, Some(Method::Median));
        assert_eq!(
            cfg.emit,
            Emit {
                csv: false,
                json: true,
                svg: false
            }
        );
    }

    #[test]
    fn rejects_unknown_and_malformed() {
        assert!(parse_config("seed 4").is_err());
        assert!(RunConfig::default().set("colour", "red").is_err());
        assert!(RunConfig::default().set("n", "many").is_err());
        assert!(RunConfig::default()
            .set("synthetic", "spike-train,bogus")
            .is_err());
    }
}
