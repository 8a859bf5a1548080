//! Molecule parameter files.
//!
//! A flat JSON object with cyclic frequencies in Hz:
//!
//! ```json
//! { "label": "L-alanine", "j12_hz": 34.8, "j23_hz": 53.8,
//!   "delta12_hz": -4320.0, "delta13_hz": -20100.0 }
//! ```
//!
//! Unknown keys are rejected. Values are converted to rad/s by
//! [`MoleculeConfig::to_params`].

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::spin::SpinChainParams;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid field '{field}': {message}")]
    Validation { field: &'static str, message: String },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MoleculeConfig {
    pub label: String,
    pub j12_hz: f64,
    pub j23_hz: f64,
    pub delta12_hz: f64,
    pub delta13_hz: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    label: Option<String>,
    j12_hz: Option<f64>,
    j23_hz: Option<f64>,
    delta12_hz: Option<f64>,
    delta13_hz: Option<f64>,
}

fn required(value: Option<f64>, field: &'static str) -> Result<f64, ConfigError> {
    let v = value.ok_or(ConfigError::Validation {
        field,
        message: "missing".into(),
    })?;
    if !v.is_finite() {
        return Err(ConfigError::Validation {
            field,
            message: "must be finite".into(),
        });
    }
    Ok(v)
}

impl MoleculeConfig {
    pub fn alanine() -> Self {
        Self {
            label: "L-alanine".into(),
            j12_hz: 34.8,
            j23_hz: 53.8,
            delta12_hz: -4320.0,
            delta13_hz: -20100.0,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        for (field, v) in [("j12_hz", self.j12_hz), ("j23_hz", self.j23_hz)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(ConfigError::Validation {
                    field,
                    message: format!("coupling must be positive, got {v}"),
                });
            }
        }
        for (field, v) in [("delta12_hz", self.delta12_hz), ("delta13_hz", self.delta13_hz)] {
            if v == 0.0 || !v.is_finite() {
                return Err(ConfigError::Validation {
                    field,
                    message: format!("detuning must be finite and nonzero, got {v}"),
                });
            }
        }
        Ok(())
    }

    pub fn to_params(&self) -> SpinChainParams {
        SpinChainParams::from_hz(self.j12_hz, self.j23_hz, self.delta12_hz, self.delta13_hz, self.label.clone())
            .expect("validated config")
    }
}

pub fn parse_config_str(text: &str) -> Result<MoleculeConfig, ConfigError> {
    let raw: RawConfig = serde_json::from_str(text).map_err(|e| ConfigError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let cfg = MoleculeConfig {
        label: raw.label.unwrap_or_default(),
        j12_hz: required(raw.j12_hz, "j12_hz")?,
        j23_hz: required(raw.j23_hz, "j23_hz")?,
        delta12_hz: required(raw.delta12_hz, "delta12_hz")?,
        delta13_hz: required(raw.delta13_hz, "delta13_hz")?,
    };
    cfg.validate()?;
    Ok(cfg)
}

pub fn parse_config(path: impl AsRef<Path>) -> Result<MoleculeConfig, ConfigError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_config_str(&text)
}

pub fn write_config(cfg: &MoleculeConfig) -> String {
    let mut s = serde_json::to_string_pretty(cfg).expect("plain struct serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_alanine() {
        let text = r#"{"label": "L-alanine", "j12_hz": 34.8, "j23_hz": 53.8,
                       "delta12_hz": -4320, "delta13_hz": -20100}"#;
        assert_eq!(parse_config_str(text).unwrap(), MoleculeConfig::alanine());
    }

    #[test]
    fn missing_field_is_validation_error() {
        let text = r#"{"j12_hz": 34.8, "delta12_hz": -4320, "delta13_hz": -20100}"#;
        assert!(matches!(
            parse_config_str(text),
            Err(ConfigError::Validation { field: "j23_hz", .. })
        ));
    }

    #[test]
    fn negative_coupling_is_validation_error() {
        let text = r#"{"j12_hz": -1, "j23_hz": 53.8, "delta12_hz": -4320, "delta13_hz": -20100}"#;
        assert!(matches!(
            parse_config_str(text),
            Err(ConfigError::Validation { field: "j12_hz", .. })
        ));
    }

    #[test]
    fn unknown_key_and_syntax_errors_report_position() {
        let text = "{\n  \"j12_hz\": 1,\n  \"j13_hz\": 2\n}";
        match parse_config_str(text) {
            Err(ConfigError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_config_str("{ j12 "), Err(ConfigError::Parse { .. })));
    }

    #[test]
    fn round_trip() {
        let c = MoleculeConfig::alanine();
        assert_eq!(parse_config_str(&write_config(&c)).unwrap(), c);
    }

    #[test]
    fn converts_to_angular_units() {
        let p = MoleculeConfig::alanine().to_params();
        assert_eq!(p, SpinChainParams::alanine());
    }
}
