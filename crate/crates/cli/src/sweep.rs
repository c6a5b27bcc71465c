//! Parameter sweeps: one config, one dotted key, several values.

use std::path::{Path, PathBuf};

use crate::config::{parse_config, ConfigError, RunConfig};

/// Parses `KEY=v1,v2,...`.
pub fn parse_vary(spec: &str) -> Result<(String, Vec<String>), ConfigError> {
    let (key, values) = spec
        .split_once('=')
        .ok_or_else(|| ConfigError::Invalid(format!("--vary expects KEY=v1,v2,..., got {spec:?}")))?;
    let values: Vec<String> = values.split(',').map(|v| v.trim().to_string()).filter(|v| !v.is_empty()).collect();
    if key.trim().is_empty() || values.is_empty() {
        return Err(ConfigError::Invalid(format!("--vary expects KEY=v1,v2,..., got {spec:?}")));
    }
    Ok((key.trim().to_string(), values))
}

fn literal(raw: &str) -> toml::Value {
    // Bare words that are not TOML literals are taken as strings.
    format!("x = {raw}")
        .parse::<toml::Table>()
        .ok()
        .and_then(|mut t| t.remove("x"))
        .unwrap_or_else(|| toml::Value::String(raw.to_string()))
}

/// The config text with `key` (dotted, e.g. `perturbation.phi`) set to `raw`.
pub fn with_override(text: &str, key: &str, raw: &str) -> Result<RunConfig, ConfigError> {
    let mut table: toml::Table = text.parse().map_err(|e: toml::de::Error| ConfigError::Parse {
        line: e.span().map_or(1, |s| text[..s.start.min(text.len())].matches('\n').count() + 1),
        message: e.message().to_string(),
    })?;
    let parts: Vec<&str> = key.split('.').collect();
    let (last, path) = parts.split_last().expect("split yields at least one part");
    let mut node = &mut table;
    for p in path {
        node = node
            .entry(p.to_string())
            .or_insert_with(|| toml::Value::Table(toml::Table::new()))
            .as_table_mut()
            .ok_or_else(|| ConfigError::Invalid(format!("{key}: {p} is not a section")))?;
    }
    node.insert(last.to_string(), literal(raw));
    let rendered = toml::to_string(&table).map_err(|e| ConfigError::Invalid(e.to_string()))?;
    parse_config(&rendered)
}

/// Output directory of one sweep member.
pub fn member_dir(base: &Path, key: &str, raw: &str) -> PathBuf {
    let clean: String = raw
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || ".-_+".contains(c) { c } else { '_' })
        .collect();
    base.join(format!("{key}={clean}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vary_spec() {
        let (k, v) = parse_vary("perturbation.phi=0.1, 0.2,0.3").unwrap();
        assert_eq!(k, "perturbation.phi");
        assert_eq!(v, ["0.1", "0.2", "0.3"]);
        assert!(parse_vary("phi").is_err());
        assert!(parse_vary("phi=").is_err());
    }

    #[test]
    fn override_numbers_and_words() {
        let cfg = with_override("[grid]\nn_points = 101\n", "grid.n_points", "201").unwrap();
        assert_eq!(cfg.grid.n_points, 201);
        let cfg = with_override("", "perturbation.phi", "0.25").unwrap();
        assert_eq!(cfg.perturbation.phi, 0.25);
        let cfg = with_override("", "perturbation.shape", "sine-packet").unwrap();
        assert_eq!(cfg.perturbation.shape, crate::config::Shape::SinePacket);
    }

    #[test]
    fn override_is_validated() {
        assert!(with_override("", "end_states.v_minus", "-1").is_err());
    }
}
