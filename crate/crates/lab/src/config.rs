//! Experiment configuration: a single JSON document, optionally overridden
//! field by field from the command line.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use locc_core::{StrongRule, DEFAULT_MAX_TENSOR_LEN};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    EntanglementDist,
    Comparability,
    Catalysts,
    Hierarchy,
    CostEfficient,
    Theorem1Check,
}

impl Experiment {
    pub const ALL: [Experiment; 6] = [
        Experiment::EntanglementDist,
        Experiment::Comparability,
        Experiment::Catalysts,
        Experiment::Hierarchy,
        Experiment::CostEfficient,
        Experiment::Theorem1Check,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::EntanglementDist => "entanglement-dist",
            Experiment::Comparability => "comparability",
            Experiment::Catalysts => "catalysts",
            Experiment::Hierarchy => "hierarchy",
            Experiment::CostEfficient => "cost-efficient",
            Experiment::Theorem1Check => "theorem1-check",
        }
    }

    fn default_dims(self) -> Vec<usize> {
        match self {
            Experiment::EntanglementDist => (3..=8).collect(),
            Experiment::Comparability => vec![3, 4, 5, 6, 7, 8],
            Experiment::Catalysts | Experiment::Hierarchy | Experiment::CostEfficient => {
                vec![4, 5]
            }
            Experiment::Theorem1Check => vec![3],
        }
    }

    /// Smallest local dimension the experiment accepts.
    fn min_dim(self) -> usize {
        match self {
            Experiment::EntanglementDist => 2,
            _ => 3,
        }
    }

    /// Largest copy count any check of this experiment materializes.
    pub fn max_copies(self, k_max: u32) -> u32 {
        match self {
            // strong catalysts need one more copy than the catalyzed level
            Experiment::Hierarchy => k_max + 1,
            Experiment::CostEfficient => 2,
            Experiment::Theorem1Check => 1,
            _ => k_max,
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| format!("unknown experiment `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(format!("unknown format `{s}` (expected csv or json)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StrongRuleConfig {
    #[default]
    AllCopies,
    EndpointsOnly,
}

impl From<StrongRuleConfig> for StrongRule {
    fn from(r: StrongRuleConfig) -> Self {
        match r {
            StrongRuleConfig::AllCopies => StrongRule::AllCopies,
            StrongRuleConfig::EndpointsOnly => StrongRule::EndpointsOnly,
        }
    }
}

impl FromStr for StrongRuleConfig {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "all-copies" => Ok(StrongRuleConfig::AllCopies),
            "endpoints-only" => Ok(StrongRuleConfig::EndpointsOnly),
            _ => Err(format!("unknown strong rule `{s}`")),
        }
    }
}

/// One dimension or a list of them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DimSpec {
    One(usize),
    Many(Vec<usize>),
}

impl DimSpec {
    pub fn to_vec(&self) -> Vec<usize> {
        match self {
            DimSpec::One(d) => vec![*d],
            DimSpec::Many(v) => v.clone(),
        }
    }
}

impl FromStr for DimSpec {
    type Err = String;

    /// `4` or `3,4,5`.
    fn from_str(s: &str) -> Result<Self, String> {
        let dims = s
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|e| format!("bad dimension `{p}`: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(match dims.as_slice() {
            [d] => DimSpec::One(*d),
            _ => DimSpec::Many(dims),
        })
    }
}

fn default_k_max() -> u32 {
    3
}
fn default_n_states() -> u64 {
    100_000
}
fn default_n_pairs() -> u64 {
    5_000
}
fn default_n_candidates() -> u64 {
    10_000
}
fn default_delta_bin_width() -> f64 {
    0.05
}
fn default_entropy_bin_width() -> f64 {
    0.02
}
fn default_seed() -> u64 {
    2022
}
fn default_workers() -> usize {
    1
}
fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}
fn default_max_tensor_len() -> usize {
    DEFAULT_MAX_TENSOR_LEN
}

/// Run parameters as written in a config file. Missing fields take their
/// desk-scale defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Option<Experiment>,
    #[serde(default)]
    pub d: Option<DimSpec>,
    #[serde(default = "default_k_max")]
    pub k_max: u32,
    #[serde(default = "default_n_states")]
    pub n_states: u64,
    #[serde(default = "default_n_pairs")]
    pub n_pairs: u64,
    #[serde(default = "default_n_candidates")]
    pub n_candidates: u64,
    /// Catalyst dimension; defaults to the pair dimension.
    #[serde(default)]
    pub d_chi: Option<usize>,
    #[serde(default = "default_delta_bin_width")]
    pub delta_bin_width: f64,
    #[serde(default = "default_entropy_bin_width")]
    pub entropy_bin_width: f64,
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// Worker threads; 0 uses every available core.
    #[serde(default = "default_workers")]
    pub workers: usize,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default)]
    pub output_format: OutputFormat,
    #[serde(default)]
    pub strong_rule: StrongRuleConfig,
    #[serde(default = "default_max_tensor_len")]
    pub max_tensor_len: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            experiment: None,
            d: None,
            k_max: default_k_max(),
            n_states: default_n_states(),
            n_pairs: default_n_pairs(),
            n_candidates: default_n_candidates(),
            d_chi: None,
            delta_bin_width: default_delta_bin_width(),
            entropy_bin_width: default_entropy_bin_width(),
            seed: default_seed(),
            workers: default_workers(),
            output_dir: default_output_dir(),
            output_format: OutputFormat::default(),
            strong_rule: StrongRuleConfig::default(),
            max_tensor_len: default_max_tensor_len(),
        }
    }
}

/// A validated configuration with every optional field filled in.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResolvedConfig {
    pub experiment: Experiment,
    pub d: Vec<usize>,
    pub k_max: u32,
    pub n_states: u64,
    pub n_pairs: u64,
    pub n_candidates: u64,
    /// `None` means "same as the pair dimension".
    pub d_chi: Option<usize>,
    pub delta_bin_width: f64,
    pub entropy_bin_width: f64,
    pub seed: u64,
    pub workers: usize,
    pub output_dir: PathBuf,
    pub output_format: OutputFormat,
    pub strong_rule: StrongRuleConfig,
    pub max_tensor_len: usize,
}

impl ResolvedConfig {
    pub fn d_chi_for(&self, d: usize) -> usize {
        self.d_chi.unwrap_or(d)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error("{origin}:{line}:{column}: {message}")]
    Parse {
        origin: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{}{field}: {message}", location(.origin, .line))]
    Invalid {
        origin: String,
        line: Option<usize>,
        field: &'static str,
        message: String,
    },
}

fn location(origin: &str, line: &Option<usize>) -> String {
    match line {
        Some(l) => format!("{origin}:{l}: "),
        None if origin.is_empty() => String::new(),
        None => format!("{origin}: "),
    }
}

/// Where a config came from, for error messages.
#[derive(Debug, Clone, Default)]
pub struct ConfigSource {
    pub origin: String,
    pub text: String,
}

impl ConfigSource {
    /// 1-based line of the first occurrence of `"field"` in the source text.
    fn line_of(&self, field: &str) -> Option<usize> {
        let key = format!("\"{field}\"");
        self.text
            .lines()
            .position(|l| l.contains(&key))
            .map(|i| i + 1)
    }
}

impl ExperimentConfig {
    pub fn from_json_str(text: &str, origin: &str) -> Result<(Self, ConfigSource), ConfigError> {
        let cfg: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| ConfigError::Parse {
                origin: origin.to_string(),
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            })?;
        Ok((
            cfg,
            ConfigSource {
                origin: origin.to_string(),
                text: text.to_string(),
            },
        ))
    }

    pub fn from_file(path: &Path) -> Result<(Self, ConfigSource), ConfigError> {
        let origin = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
            path: origin.clone(),
            message: e.to_string(),
        })?;
        Self::from_json_str(&text, &origin)
    }

    /// Fills defaults and checks every constraint. Errors point at the
    /// offending line of `source` when the field appears there.
    pub fn resolve(&self, source: &ConfigSource) -> Result<ResolvedConfig, ConfigError> {
        let invalid = |field: &'static str, message: String| ConfigError::Invalid {
            origin: source.origin.clone(),
            line: source.line_of(field),
            field,
            message,
        };

        let experiment = self
            .experiment
            .ok_or_else(|| invalid("experiment", "no experiment given".into()))?;
        let d = self
            .d
            .as_ref()
            .map(DimSpec::to_vec)
            .unwrap_or_else(|| experiment.default_dims());
        if d.is_empty() {
            return Err(invalid("d", "at least one dimension is required".into()));
        }
        let min_dim = experiment.min_dim();
        if let Some(&bad) = d.iter().find(|&&x| x < min_dim) {
            return Err(invalid(
                "d",
                format!("{experiment} needs d >= {min_dim}, got {bad}"),
            ));
        }
        if experiment == Experiment::Theorem1Check && d.iter().any(|&x| x != 3) {
            return Err(invalid("d", "theorem1-check is defined for d = 3 only".into()));
        }
        if self.k_max == 0 {
            return Err(invalid("k_max", "must be positive".into()));
        }
        for (field, value) in [
            ("n_states", self.n_states),
            ("n_pairs", self.n_pairs),
            ("n_candidates", self.n_candidates),
        ] {
            if value == 0 {
                return Err(invalid(field, "must be positive".into()));
            }
        }
        if let Some(dc) = self.d_chi {
            if dc < 2 {
                return Err(invalid("d_chi", format!("must be at least 2, got {dc}")));
            }
        }
        for (field, w) in [
            ("delta_bin_width", self.delta_bin_width),
            ("entropy_bin_width", self.entropy_bin_width),
        ] {
            if !(w.is_finite() && w > 0.0) {
                return Err(invalid(field, format!("must be a positive number, got {w}")));
            }
        }
        if self.max_tensor_len == 0 {
            return Err(invalid("max_tensor_len", "must be positive".into()));
        }

        let resolved = ResolvedConfig {
            experiment,
            d,
            k_max: self.k_max,
            n_states: self.n_states,
            n_pairs: self.n_pairs,
            n_candidates: self.n_candidates,
            d_chi: self.d_chi,
            delta_bin_width: self.delta_bin_width,
            entropy_bin_width: self.entropy_bin_width,
            seed: self.seed,
            workers: self.workers,
            output_dir: self.output_dir.clone(),
            output_format: self.output_format,
            strong_rule: self.strong_rule,
            max_tensor_len: self.max_tensor_len,
        };

        // worst check: (d^copies · d) entries for the pair side, d_chi^2 for the catalyst
        let copies = experiment.max_copies(self.k_max);
        for &dim in &resolved.d {
            let d_chi = resolved.d_chi_for(dim) as u128;
            let work = (dim as u128)
                .checked_pow(copies + 1)
                .and_then(|p| p.checked_mul(d_chi * d_chi));
            match work {
                Some(w) if w <= self.max_tensor_len as u128 => {}
                _ => {
                    return Err(invalid(
                        "k_max",
                        format!(
                            "d={dim} with {copies} copies and d_chi={d_chi} needs \
                             {dim}^{} * {d_chi}^2 products per check, above the limit of {}",
                            copies + 1,
                            self.max_tensor_len
                        ),
                    ))
                }
            }
        }
        Ok(resolved)
    }
}
