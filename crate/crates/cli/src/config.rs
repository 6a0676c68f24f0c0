//! Suite configuration: defaults, flat key-value config files with one
//! section per suite, and the two environment overrides (output path and
//! parallelism degree).

use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{bail, Context};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for OutputFormat {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        match s {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            "text" => Ok(Self::Text),
            other => bail!("unknown output format `{other}` (expected json|csv|text)"),
        }
    }
}

/// Knobs shared by every suite. A fixed seed makes a run fully
/// deterministic, including report bytes.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteConfig {
    pub d_list: Vec<usize>,
    pub n_max: usize,
    pub t_grid: Vec<f64>,
    /// Strictly positive, descending toward 0.
    pub lambda_grid: Vec<f64>,
    pub cutoffs: Vec<usize>,
    pub seed: u64,
    /// Per-check bound overrides, keyed by record id.
    pub tolerances: BTreeMap<String, f64>,
    /// Output sink parameters; not part of the semantic config echoed in
    /// reports, so two runs differing only in destination stay
    /// byte-identical.
    #[serde(skip)]
    pub format: OutputFormat,
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            d_list: vec![1, 2, 3],
            n_max: 10,
            t_grid: vec![-3.0, 0.5, 7.0],
            lambda_grid: vec![3.0, 1.0, 0.5, 0.01],
            cutoffs: vec![10, 100, 1000, 10_000],
            seed: 7,
            tolerances: BTreeMap::new(),
            format: OutputFormat::Json,
            out: None,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> anyhow::Result<()> {
        if self.d_list.is_empty() || self.t_grid.is_empty() || self.lambda_grid.is_empty() {
            bail!("grids must be nonempty");
        }
        if self.cutoffs.is_empty() {
            bail!("cutoff list must be nonempty");
        }
        if self.n_max < 4 {
            bail!("n_max must be at least 4");
        }
        if self.d_list.contains(&0) {
            bail!("dimensions must be positive");
        }
        if self.lambda_grid.iter().any(|&l| l <= 0.0)
            || self.lambda_grid.windows(2).any(|w| w[1] >= w[0])
        {
            bail!("lambda grid must be strictly positive and strictly decreasing");
        }
        Ok(())
    }

    /// Bound for a check, with config overrides taking precedence.
    pub fn bound(&self, id: &str, default: f64) -> f64 {
        self.tolerances.get(id).copied().unwrap_or(default)
    }

    /// Applies the `[all]` section and then the suite's own section of a
    /// config file.
    pub fn apply_file(&mut self, text: &str, suite: &str) -> anyhow::Result<()> {
        let mut section = String::from("all");
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[') {
                let name = name
                    .strip_suffix(']')
                    .with_context(|| format!("line {}: malformed section header", lineno + 1))?;
                section = name.trim().to_string();
                continue;
            }
            if section != "all" && section != suite {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .with_context(|| format!("line {}: expected key = value", lineno + 1))?;
            self.apply_key(key.trim(), value.trim())
                .with_context(|| format!("line {}", lineno + 1))?;
        }
        Ok(())
    }

    pub fn apply_key(&mut self, key: &str, value: &str) -> anyhow::Result<()> {
        match key {
            "d" => self.d_list = parse_list(value)?,
            "n_max" | "nmax" => self.n_max = value.parse()?,
            "t_grid" | "t" => self.t_grid = parse_list(value)?,
            "lambda_grid" => self.lambda_grid = parse_list(value)?,
            "cutoffs" => self.cutoffs = parse_list(value)?,
            "seed" => self.seed = value.parse()?,
            "format" => self.format = value.parse()?,
            "out" => self.out = Some(PathBuf::from(value)),
            other => {
                if let Some(id) = other.strip_prefix("tol.") {
                    self.tolerances.insert(id.to_string(), value.parse()?);
                } else {
                    bail!("unknown key `{other}`");
                }
            }
        }
        Ok(())
    }

    /// Environment overrides are limited to the output path and the
    /// parallelism degree (handled by the binary).
    pub fn apply_env(&mut self) {
        if let Ok(path) = std::env::var("FOCKALG_OUT") {
            if !path.is_empty() {
                self.out = Some(PathBuf::from(path));
            }
        }
    }
}

fn parse_list<T: std::str::FromStr>(value: &str) -> anyhow::Result<Vec<T>>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    value
        .split(',')
        .map(|part| part.trim().parse::<T>().map_err(Into::into))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_sections_override_in_order() {
        let mut cfg = SuiteConfig::default();
        let text = "\
# comment
[all]
d = 1,2
seed = 11

[flow]
cutoffs = 5, 10, 20
";
        cfg.apply_file(text, "flow").unwrap();
        assert_eq!(cfg.d_list, vec![1, 2]);
        assert_eq!(cfg.seed, 11);
        assert_eq!(cfg.cutoffs, vec![5, 10, 20]);

        let mut other = SuiteConfig::default();
        other.apply_file(text, "ualg").unwrap();
        assert_eq!(other.cutoffs, vec![10, 100, 1000, 10_000]);
    }

    #[test]
    fn tolerance_overrides() {
        let mut cfg = SuiteConfig::default();
        cfg.apply_key("tol.toeplitz.coburn", "1e-9").unwrap();
        assert_eq!(cfg.bound("toeplitz.coburn", 1e-12), 1e-9);
        assert_eq!(cfg.bound("toeplitz.ccr", 1e-12), 1e-12);
    }

    #[test]
    fn validation() {
        let shallow = SuiteConfig {
            n_max: 3,
            ..SuiteConfig::default()
        };
        assert!(shallow.validate().is_err());

        let increasing = SuiteConfig {
            lambda_grid: vec![0.5, 1.0],
            ..SuiteConfig::default()
        };
        assert!(increasing.validate().is_err());

        assert!(SuiteConfig::default().validate().is_ok());
    }
}
