//! Config schema: one entry per space, exact scalars as strings.

use std::collections::BTreeMap;
use std::str::FromStr;

use lieherm::coordgeo::Profile;
use lieherm::rootsys::CartanType;
use lieherm::scalar::{parse_q, Q, Qi};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

/// Flag metric: `"killing"`, `"grading"` (Kähler for the standard structure)
/// or one value per isotropy orbit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FlagMetricSpec {
    Named(String),
    Values(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum SpaceSpec {
    Canonical {
        cartan: String,
    },
    Samelson {
        cartan: Vec<String>,
        /// `g_α` per positive root; all `"1"` if absent.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        roots: Option<Vec<String>>,
        /// `g_o` on the Cartan basis; the companion of the default `J_𝔱` if absent.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        torus: Option<Vec<Vec<String>>>,
    },
    Nilpotent {
        n: usize,
        r: usize,
        /// `(n − r) × r`, entries `"a+bi"`.
        y: Vec<Vec<String>>,
    },
    M4 {
        a1: i64,
        a2: i64,
    },
    CalabiEckmann {
        m1: usize,
        m2: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        alpha: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        beta: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        c: Option<[String; 2]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        q_scale: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_denominator: Option<i128>,
    },
    Hopf {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        samples: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        step: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        profile: Option<Profile>,
    },
    Flag {
        cartan: String,
        /// Simple roots (0-based) spanning the isotropy.
        #[serde(default)]
        isotropy: Vec<usize>,
        /// Sign per isotropy orbit; standard if absent.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        complex_structure: Option<Vec<bool>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        metric: Option<FlagMetricSpec>,
    },
}

impl SpaceSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            SpaceSpec::Canonical { .. } => "canonical",
            SpaceSpec::Samelson { .. } => "samelson",
            SpaceSpec::Nilpotent { .. } => "nilpotent",
            SpaceSpec::M4 { .. } => "m4",
            SpaceSpec::CalabiEckmann { .. } => "calabi-eckmann",
            SpaceSpec::Hopf { .. } => "hopf",
            SpaceSpec::Flag { .. } => "flag",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpaceEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(flatten)]
    pub space: SpaceSpec,
    /// Required flag values; the type's default expectation if absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<BTreeMap<String, bool>>,
}

impl SpaceEntry {
    pub fn new(name: &str, space: SpaceSpec) -> Self {
        SpaceEntry { name: Some(name.to_string()), space, expect: None }
    }

    pub fn expecting(mut self, flags: &[(&str, bool)]) -> Self {
        self.expect = Some(flags.iter().map(|(k, v)| (k.to_string(), *v)).collect());
        self
    }

    pub fn display_name(&self, index: usize) -> String {
        self.name.clone().unwrap_or_else(|| format!("#{index} {}", self.space.kind()))
    }
}

/// Accepts a single entry, an array of entries or `{"spaces": [...]}`.
pub fn parse_config(text: &str) -> Result<Vec<SpaceEntry>, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::Config(format!("invalid JSON: {e}")))?;
    let items = match value {
        Value::Array(items) => items,
        Value::Object(mut map) if map.contains_key("spaces") => match map.remove("spaces") {
            Some(Value::Array(items)) => items,
            _ => return Err(CliError::Config("\"spaces\" must be an array".into())),
        },
        v @ Value::Object(_) => vec![v],
        _ => return Err(CliError::Config("config must be an object or an array".into())),
    };
    if items.is_empty() {
        return Err(CliError::Config("config lists no spaces".into()));
    }
    items
        .into_iter()
        .enumerate()
        .map(|(i, v)| serde_json::from_value(v).map_err(|e| CliError::Config(format!("entry {i}: {e}"))))
        .collect()
}

pub fn rational(field: &str, text: &str) -> Result<Q, CliError> {
    parse_q(text).map_err(|e| CliError::Config(format!("{field}: {e}")))
}

pub fn gaussian(field: &str, text: &str) -> Result<Qi, CliError> {
    Qi::from_str(text).map_err(|e| CliError::Config(format!("{field}: {e}")))
}

pub fn cartan(text: &str) -> Result<CartanType, CliError> {
    text.parse().map_err(|e| CliError::Config(format!("cartan {text:?}: {e}")))
}

pub fn rational_matrix(field: &str, rows: &[Vec<String>]) -> Result<Vec<Vec<Q>>, CliError> {
    rows.iter().map(|row| row.iter().map(|x| rational(field, x)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_three_layouts() {
        let one = r#"{"type":"m4","a1":-3,"a2":1}"#;
        assert_eq!(parse_config(one).unwrap().len(), 1);
        assert_eq!(parse_config(&format!("[{one},{one}]")).unwrap().len(), 2);
        assert_eq!(parse_config(&format!(r#"{{"spaces":[{one}]}}"#)).unwrap().len(), 1);
    }

    #[test]
    fn rejects_unknown_type_and_bad_json() {
        assert!(matches!(parse_config(r#"{"type":"torus"}"#), Err(CliError::Config(_))));
        assert!(matches!(parse_config("{"), Err(CliError::Config(_))));
        assert!(matches!(parse_config("[]"), Err(CliError::Config(_))));
    }

    #[test]
    fn malformed_rational_is_config_error() {
        assert!(matches!(rational("x", "1/0"), Err(CliError::Config(_))));
        assert!(matches!(gaussian("y", "1+"), Err(CliError::Config(_))));
        assert_eq!(gaussian("y", "1/2-3i").unwrap().to_string(), Qi::from_str("1/2-3i").unwrap().to_string());
    }
}
