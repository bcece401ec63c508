//! Serialisable description of a `sample` or `validate` run.

use std::collections::BTreeMap;
use std::path::PathBuf;

use beta_ensembles::ensembles::EnsembleKind;
use beta_ensembles::io::OutputFormat;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandName {
    Sample,
    Validate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: CommandName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<EnsembleKind>,
    #[serde(default = "default_n")]
    pub n: usize,
    #[serde(default = "default_beta")]
    pub beta: f64,
    #[serde(default)]
    pub a: f64,
    #[serde(default)]
    pub b: f64,
    #[serde(default, with = "seed_repr")]
    pub seed: u64,
    #[serde(default)]
    pub stream_id: u64,
    #[serde(default = "default_count")]
    pub count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default = "default_format")]
    pub format: OutputFormat,
    #[serde(default)]
    pub emit_alphas: bool,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tolerances: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
    #[serde(default)]
    pub fast: bool,
}

fn default_n() -> usize {
    2
}
fn default_beta() -> f64 {
    2.0
}
fn default_count() -> usize {
    1000
}
fn default_format() -> OutputFormat {
    OutputFormat::Csv
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config is always representable")
    }
}

/// TOML integers are signed, so seeds above `i64::MAX` are written as
/// strings; either form is accepted on input.
mod seed_repr {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(seed: &u64, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(*seed) {
            Ok(v) => s.serialize_i64(v),
            Err(_) => s.serialize_str(&seed.to_string()),
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Int(u64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Int(v) => Ok(v),
            Repr::Text(t) => t.trim().parse().map_err(|_| de::Error::custom(format!("seed `{t}` is not a 64-bit unsigned integer"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut tol = BTreeMap::new();
        tol.insert("toeplitz".to_string(), 1e-7);
        let c = RunConfig {
            command: CommandName::Sample,
            kind: Some(EnsembleKind::Jacobi),
            n: 5,
            beta: 0.5,
            a: -0.25,
            b: 1.5,
            seed: u64::MAX,
            stream_id: 3,
            count: 17,
            out: Some("x.jsonl".into()),
            format: OutputFormat::Jsonl,
            emit_alphas: true,
            tolerances: tol,
            suite: Some("all".into()),
            fast: true,
        };
        assert_eq!(RunConfig::from_toml(&c.to_toml()).unwrap(), c);
    }

    #[test]
    fn unknown_keys_rejected() {
        let e = RunConfig::from_toml("command = \"sample\"\nbogus = 1\n").unwrap_err();
        assert!(e.contains("bogus"), "{e}");
    }

    #[test]
    fn defaults_fill_in() {
        let c = RunConfig::from_toml("command = \"validate\"\nsuite = \"integrals\"\n").unwrap();
        assert_eq!(c.count, 1000);
        assert_eq!(c.format, OutputFormat::Csv);
    }
}
