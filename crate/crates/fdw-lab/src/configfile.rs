//! Sectioned key-value config files.
//!
//! Format: `[section]` headers, `key = value` lines, `#` comments, blank
//! lines ignored. Keys must belong to the documented schema of their
//! section; anything else is rejected with the offending line number.
//! The `[meta]` section is written into run manifests and accepted (and
//! ignored) on input so a manifest is itself a valid config.

use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug)]
pub struct ConfigError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ConfigError {}

/// Parsed file: section -> key -> (value, line number).
#[derive(Debug, Default, Clone)]
pub struct ConfigFile {
    pub sections: BTreeMap<String, BTreeMap<String, (String, usize)>>,
}

const SCHEMA: &[(&str, &[&str])] = &[
    (
        "experiment",
        &[
            "kind",
            "p",
            "window",
            "times",
            "rho",
            "amplitude",
            "s1",
            "s2",
            "gamma",
            "branch",
            "weight_exponent",
            "norm",
            "s",
            "q",
            "alpha",
            "m",
            "input",
            "spread_bound",
            "stability_bound",
            "r",
        ],
    ),
    ("grid", &["dim", "points_per_axis", "half_width"]),
    (
        "solver",
        &[
            "sigma",
            "dt",
            "t_end",
            "nonlinearity",
            "rho",
            "sign",
            "blowup_threshold",
            "dealias",
            "snapshot_stride",
            "norm_s",
            "norm_alpha",
        ],
    ),
    (
        "data",
        &["profile", "amplitude", "width", "center", "k", "u1_amplitude", "seed"],
    ),
    ("output", &["dir", "emit_gnuplot", "jobs"]),
    ("meta", &[]),
];

fn known_key(section: &str, key: &str) -> bool {
    match SCHEMA.iter().find(|(s, _)| *s == section) {
        Some(("meta", _)) => true,
        Some((_, keys)) => keys.contains(&key),
        None => false,
    }
}

pub fn parse(text: &str) -> Result<ConfigFile, ConfigError> {
    let mut out = ConfigFile::default();
    let mut current: Option<String> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let Some(name) = name.strip_suffix(']') else {
                return Err(ConfigError {
                    line: line_no,
                    message: format!("unterminated section header `{raw}`"),
                });
            };
            let name = name.trim().to_ascii_lowercase();
            if !SCHEMA.iter().any(|(s, _)| *s == name) {
                return Err(ConfigError {
                    line: line_no,
                    message: format!(
                        "unknown section `[{name}]` (expected one of experiment, grid, solver, data, output, meta)"
                    ),
                });
            }
            out.sections.entry(name.clone()).or_default();
            current = Some(name);
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(ConfigError {
                line: line_no,
                message: format!("expected `key = value`, got `{raw}`"),
            });
        };
        let Some(section) = current.clone() else {
            return Err(ConfigError {
                line: line_no,
                message: "key outside any [section]".into(),
            });
        };
        let key = key.trim().to_ascii_lowercase();
        if !known_key(&section, &key) {
            return Err(ConfigError {
                line: line_no,
                message: format!("unknown key `{key}` in section `[{section}]`"),
            });
        }
        let value = value.trim().to_string();
        if section != "meta" {
            if let Some((_, prev_line)) =
                out.sections.get(&section).and_then(|m| m.get(&key))
            {
                return Err(ConfigError {
                    line: line_no,
                    message: format!("duplicate key `{key}` (first set on line {prev_line})"),
                });
            }
            out.sections
                .get_mut(&section)
                .expect("section created on header")
                .insert(key, (value, line_no));
        }
    }
    Ok(out)
}

impl ConfigFile {
    pub fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.sections
            .get(section)
            .and_then(|m| m.get(key))
            .map(|(v, _)| v.as_str())
    }

    pub fn line_of(&self, section: &str, key: &str) -> usize {
        self.sections
            .get(section)
            .and_then(|m| m.get(key))
            .map(|(_, l)| *l)
            .unwrap_or(0)
    }
}
