//! Plain-text `key = value` configuration files.
//!
//! Blank lines and lines starting with `#` are ignored; a `#` after a value
//! starts a trailing comment. Keys are case-sensitive and may not repeat.

use std::collections::BTreeMap;
use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("line {line}: duplicate key `{key}`")]
    Duplicate { line: usize, key: String },
    #[error("missing key `{0}`")]
    Missing(String),
    #[error("key `{key}`: {message}")]
    Value { key: String, message: String },
    #[error("unknown key `{0}`")]
    Unknown(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Default)]
pub struct KeyValues {
    entries: BTreeMap<String, String>,
}

impl KeyValues {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut entries = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or(ConfigError::Syntax { line: idx + 1 })?;
            let key = key.trim();
            if key.is_empty() {
                return Err(ConfigError::Syntax { line: idx + 1 });
            }
            if entries.insert(key.to_string(), value.trim().to_string()).is_some() {
                return Err(ConfigError::Duplicate {
                    line: idx + 1,
                    key: key.to_string(),
                });
            }
        }
        Ok(Self { entries })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    /// Fails on any key outside `allowed`.
    pub fn reject_unknown(&self, allowed: &[&str]) -> Result<(), ConfigError> {
        match self.keys().find(|k| !allowed.contains(k)) {
            Some(k) => Err(ConfigError::Unknown(k.to_string())),
            None => Ok(()),
        }
    }

    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64, ConfigError> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => parse_f64(key, v),
        }
    }

    pub fn f64(&self, key: &str) -> Result<f64, ConfigError> {
        let v = self.get(key).ok_or_else(|| ConfigError::Missing(key.to_string()))?;
        parse_f64(key, v)
    }

    /// Comma-separated list of numbers.
    pub fn f64_list(&self, key: &str) -> Result<Option<Vec<f64>>, ConfigError> {
        self.get(key)
            .map(|v| v.split(',').map(|part| parse_f64(key, part.trim())).collect())
            .transpose()
    }

    pub fn f64_array<const N: usize>(&self, key: &str) -> Result<Option<[f64; N]>, ConfigError> {
        match self.f64_list(key)? {
            None => Ok(None),
            Some(list) => list.try_into().map(Some).map_err(|l: Vec<f64>| ConfigError::Value {
                key: key.to_string(),
                message: format!("expected {N} comma-separated numbers, found {}", l.len()),
            }),
        }
    }
}

fn parse_f64(key: &str, value: &str) -> Result<f64, ConfigError> {
    let v = value.parse::<f64>().map_err(|_| ConfigError::Value {
        key: key.to_string(),
        message: format!("`{value}` is not a number"),
    })?;
    if !v.is_finite() {
        return Err(ConfigError::Value {
            key: key.to_string(),
            message: "must be finite".to_string(),
        });
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_lists() {
        let kv = KeyValues::parse("# header\nl1 = 36 # mm\n\nj1 = 0, 0, 36\n").unwrap();
        assert_eq!(kv.f64("l1").unwrap(), 36.0);
        assert_eq!(kv.f64_array::<3>("j1").unwrap(), Some([0.0, 0.0, 36.0]));
        assert_eq!(kv.f64_or("l2", 5.0).unwrap(), 5.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(KeyValues::parse("novalue\n"), Err(ConfigError::Syntax { line: 1 })));
        assert!(matches!(KeyValues::parse("a=1\na=2"), Err(ConfigError::Duplicate { line: 2, .. })));
        let kv = KeyValues::parse("a = x\nb = 1,2").unwrap();
        assert!(kv.f64("a").is_err());
        assert!(kv.f64_array::<3>("b").is_err());
        assert!(matches!(kv.reject_unknown(&["a"]), Err(ConfigError::Unknown(k)) if k == "b"));
        assert!(KeyValues::parse("a = inf").unwrap().f64("a").is_err());
    }
}
