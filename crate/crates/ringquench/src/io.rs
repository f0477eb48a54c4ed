//! CSV emission/ingestion and the JSON run-configuration schema.
//!
//! Output files are UTF-8 CSV with `#`-prefixed metadata lines (the full
//! resolved configuration is echoed there), a header row, and full-precision
//! floats (17 significant digits, exact round trip). Complex columns are
//! split into `re_`/`im_` pairs by the writers.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::lattice::LatticeConfig;

/// A column-oriented table with `#` metadata, as written to and read from CSV.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CsvTable {
    /// `key = value` metadata echoed as `# key = value` lines.
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<(String, Vec<f64>)>,
}

impl CsvTable {
    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.columns.iter().find(|(n, _)| n == name).map(|(_, v)| v.as_slice())
    }

    pub fn metadata_value(&self, key: &str) -> Option<&str> {
        self.metadata.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn push_meta(&mut self, key: impl Into<String>, value: impl ToString) {
        self.metadata.push((key.into(), value.to_string()));
    }

    pub fn n_rows(&self) -> usize {
        self.columns.first().map_or(0, |(_, v)| v.len())
    }
}

/// Write a table atomically (temp file + rename) with full-precision floats.
pub fn write_csv(path: &Path, table: &CsvTable) -> Result<()> {
    for (_, v) in &table.columns {
        if v.len() != table.n_rows() {
            return Err(Error::Parse("ragged columns".into()));
        }
    }
    let mut out = String::new();
    for (k, v) in &table.metadata {
        out.push_str(&format!("# {k} = {v}\n"));
    }
    let names: Vec<&str> = table.columns.iter().map(|(n, _)| n.as_str()).collect();
    out.push_str(&names.join(","));
    out.push('\n');
    for row in 0..table.n_rows() {
        let mut first = true;
        for (_, v) in &table.columns {
            if !first {
                out.push(',');
            }
            out.push_str(&format!("{:.16e}", v[row]));
            first = false;
        }
        out.push('\n');
    }

    let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(out.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Read a table written by [`write_csv`] (or any CSV with `#` comments).
pub fn read_csv(path: &Path) -> Result<CsvTable> {
    let text = fs::read_to_string(path)?;
    let mut metadata = Vec::new();
    let mut names: Option<Vec<String>> = None;
    let mut data: Vec<Vec<f64>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some((k, v)) = rest.split_once('=') {
                metadata.push((k.trim().to_string(), v.trim().to_string()));
            }
            continue;
        }
        match &names {
            None => {
                names = Some(line.split(',').map(|s| s.trim().to_string()).collect());
                data = vec![Vec::new(); names.as_ref().unwrap().len()];
            }
            Some(n) => {
                let fields: Vec<&str> = line.split(',').collect();
                if fields.len() != n.len() {
                    return Err(Error::Parse(format!(
                        "line {}: {} fields, expected {}",
                        lineno + 1,
                        fields.len(),
                        n.len()
                    )));
                }
                for (col, f) in fields.iter().enumerate() {
                    let x: f64 = f.trim().parse().map_err(|e| {
                        Error::Parse(format!("line {}: bad float {f:?}: {e}", lineno + 1))
                    })?;
                    data[col].push(x);
                }
            }
        }
    }
    let names = names.ok_or_else(|| Error::Parse("no header row found".into()))?;
    Ok(CsvTable { metadata, columns: names.into_iter().zip(data).collect() })
}

/// Which evolvers a run should execute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Truncated,
    Ideal,
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "exact" => Ok(Method::Exact),
            "truncated" => Ok(Method::Truncated),
            "ideal" => Ok(Method::Ideal),
            other => Err(Error::InvalidConfig(format!("unknown method {other:?}"))),
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Exact => "exact",
            Method::Truncated => "truncated",
            Method::Ideal => "ideal",
        })
    }
}

/// How `t_max` is interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TimeUnit {
    /// Multiples of the revival period `T`.
    Periods,
    /// Absolute model time (hopping = 1).
    Absolute,
}

/// Resolved configuration of one run; serializable as the JSON alternative to
/// command-line flags (unknown keys are rejected).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub scenario: LatticeConfig,
    pub t_max: f64,
    #[serde(default = "default_unit")]
    pub t_max_unit: TimeUnit,
    #[serde(default = "default_spp")]
    pub samples_per_period: usize,
    pub methods: Vec<Method>,
    #[serde(default)]
    pub truncation_m: Option<usize>,
    pub output: String,
}

fn default_unit() -> TimeUnit {
    TimeUnit::Periods
}

fn default_spp() -> usize {
    100
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        self.scenario.validate()?;
        if self.methods.is_empty() {
            return Err(Error::InvalidConfig("at least one method must be selected".into()));
        }
        if !(self.t_max > 0.0) {
            return Err(Error::InvalidConfig(format!("t_max must be positive, got {}", self.t_max)));
        }
        if self.samples_per_period < 2 {
            return Err(Error::InvalidConfig("samples_per_period must be at least 2".into()));
        }
        Ok(())
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        let cfg: RunConfig =
            serde_json::from_str(&text).map_err(|e| Error::InvalidConfig(format!("{path:?}: {e}")))?;
        Ok(cfg)
    }

    /// Metadata echo written into every output file.
    pub fn metadata(&self) -> Vec<(String, String)> {
        let mut m: BTreeMap<&str, String> = BTreeMap::new();
        m.insert("n_sites", self.scenario.n_sites.to_string());
        m.insert("k_init", self.scenario.k_init.to_string());
        m.insert("defect_strength", format!("{:.16e}", self.scenario.defect_strength));
        m.insert("defect_site", self.scenario.defect_site.to_string());
        m.insert("t_max", format!("{:.16e}", self.t_max));
        m.insert(
            "t_max_unit",
            match self.t_max_unit {
                TimeUnit::Periods => "periods".into(),
                TimeUnit::Absolute => "absolute".into(),
            },
        );
        m.insert("samples_per_period", self.samples_per_period.to_string());
        m.insert(
            "methods",
            self.methods.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
        );
        if let Some(mm) = self.truncation_m {
            m.insert("truncation_m", mm.to_string());
        }
        m.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
    }
}
