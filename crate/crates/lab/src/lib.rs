//! Experiment driver on top of `locc-core`: JSON configuration, deterministic
//! parallel runs and CSV/JSON result tables.
//!
//! Every experiment maps pair (or state) indices to results on a rayon pool,
//! collects them in index order and reduces sequentially, so the output bytes
//! depend on the configuration and seed only.

pub mod config;
pub mod experiments;
pub mod table;

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub use config::{ConfigError, ConfigSource, Experiment, ExperimentConfig, OutputFormat, ResolvedConfig};
pub use experiments::OutputTable;
pub use table::{Cell, ResultTable};

/// Overrides the configured worker count.
pub const THREADS_ENV: &str = "LOCC_LAB_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("numeric failure: {0}")]
    Numeric(#[from] locc_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("thread pool: {0}")]
    Pool(String),
}

impl LabError {
    /// 2 for configuration errors, 3 for numeric failures, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Config(_) => 2,
            LabError::Numeric(_) => 3,
            LabError::Io { .. } | LabError::Pool(_) => 1,
        }
    }
}

/// Applies `LOCC_LAB_THREADS` when it holds a valid count.
pub fn workers_from_env(configured: usize) -> Result<usize, ConfigError> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| ConfigError::Invalid {
            origin: THREADS_ENV.to_string(),
            line: None,
            field: "workers",
            message: format!("expected a thread count, got `{v}`"),
        }),
        Err(_) => Ok(configured),
    }
}

/// Short content hash of everything that determines the results. Worker count
/// and output location are excluded.
pub fn run_id(cfg: &ResolvedConfig) -> String {
    let mut v = serde_json::to_value(cfg).expect("config serializes");
    if let Some(obj) = v.as_object_mut() {
        obj.remove("workers");
        obj.remove("output_dir");
        obj.remove("output_format");
    }
    let digest = Sha256::digest(v.to_string().as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// Runs the experiment on a dedicated pool of `cfg.workers` threads
/// (0 means one per core).
pub fn run(cfg: &ResolvedConfig) -> Result<Vec<OutputTable>, LabError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| LabError::Pool(e.to_string()))?;
    pool.install(|| experiments::run(cfg))
}

pub struct RunReport {
    pub run_id: String,
    pub files: Vec<PathBuf>,
    pub wall_time_s: f64,
}

fn write_file(path: &Path, contents: &str) -> Result<(), LabError> {
    std::fs::write(path, contents).map_err(|source| LabError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes every table plus `run_meta.json` into `cfg.output_dir`.
pub fn write_outputs(
    cfg: &ResolvedConfig,
    tables: &[OutputTable],
    wall_time_s: f64,
) -> Result<Vec<PathBuf>, LabError> {
    let dir = &cfg.output_dir;
    std::fs::create_dir_all(dir).map_err(|source| LabError::Io {
        path: dir.clone(),
        source,
    })?;
    let id = run_id(cfg);
    let mut files = Vec::new();
    let mut listing = Vec::new();
    for t in tables {
        let (name, body) = match cfg.output_format {
            OutputFormat::Csv => (format!("{}.csv", t.stem), t.table.to_csv()),
            OutputFormat::Json => {
                let meta = json!({"schema": t.schema, "run_id": id, "config": cfg});
                (format!("{}.json", t.stem), t.table.to_json(&meta))
            }
        };
        let path = dir.join(&name);
        write_file(&path, &body)?;
        listing.push(json!({
            "file": name,
            "schema": t.schema,
            "columns": t.table.columns(),
            "rows": t.table.len(),
        }));
        files.push(path);
    }
    let meta: Value = json!({
        "tool": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "run_id": id,
        "config": cfg,
        "wall_time_s": wall_time_s,
        "files": listing,
    });
    let path = dir.join("run_meta.json");
    let mut body = serde_json::to_string_pretty(&meta).expect("meta serializes");
    body.push('\n');
    write_file(&path, &body)?;
    files.push(path);
    Ok(files)
}

/// Runs and writes; the wall time covers the computation only.
pub fn execute(cfg: &ResolvedConfig) -> Result<RunReport, LabError> {
    let start = Instant::now();
    let tables = run(cfg)?;
    let wall_time_s = start.elapsed().as_secs_f64();
    let files = write_outputs(cfg, &tables, wall_time_s)?;
    Ok(RunReport {
        run_id: run_id(cfg),
        files,
        wall_time_s,
    })
}
