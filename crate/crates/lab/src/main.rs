use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use locc_lab::config::{ConfigSource, DimSpec, StrongRuleConfig};
use locc_lab::{execute, workers_from_env, ConfigError, Experiment, ExperimentConfig, LabError, OutputFormat};

/// Monte Carlo statistics of LOCC convertibility and catalysis for random
/// bipartite pure states.
#[derive(Debug, Parser)]
#[command(name = "locc-lab", version)]
struct Cli {
    /// entanglement-dist, comparability, catalysts, hierarchy, cost-efficient
    /// or theorem1-check
    experiment: Experiment,
    /// JSON config; flags below override its fields
    #[arg(long)]
    config: Option<PathBuf>,
    /// One dimension or a comma-separated list
    #[arg(long)]
    d: Option<DimSpec>,
    #[arg(long)]
    k_max: Option<u32>,
    #[arg(long)]
    n_states: Option<u64>,
    #[arg(long)]
    n_pairs: Option<u64>,
    #[arg(long)]
    n_candidates: Option<u64>,
    #[arg(long)]
    d_chi: Option<usize>,
    #[arg(long)]
    delta_bin_width: Option<f64>,
    #[arg(long)]
    entropy_bin_width: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    output_dir: Option<PathBuf>,
    #[arg(long)]
    format: Option<OutputFormat>,
    /// all-copies or endpoints-only
    #[arg(long)]
    strong_rule: Option<StrongRuleConfig>,
    #[arg(long)]
    max_tensor_len: Option<usize>,
}

impl Cli {
    fn apply(self, cfg: &mut ExperimentConfig) {
        cfg.experiment = Some(self.experiment);
        macro_rules! set {
            ($($flag:ident => $field:ident),* $(,)?) => {
                $(if let Some(v) = self.$flag { cfg.$field = v; })*
            };
        }
        set!(
            k_max => k_max,
            n_states => n_states,
            n_pairs => n_pairs,
            n_candidates => n_candidates,
            delta_bin_width => delta_bin_width,
            entropy_bin_width => entropy_bin_width,
            seed => seed,
            workers => workers,
            output_dir => output_dir,
            format => output_format,
            strong_rule => strong_rule,
            max_tensor_len => max_tensor_len,
        );
        if self.d.is_some() {
            cfg.d = self.d;
        }
        if self.d_chi.is_some() {
            cfg.d_chi = self.d_chi;
        }
    }
}

fn load(cli: Cli) -> Result<locc_lab::ResolvedConfig, ConfigError> {
    let (mut cfg, source) = match &cli.config {
        Some(path) => ExperimentConfig::from_file(path)?,
        None => (ExperimentConfig::default(), ConfigSource::default()),
    };
    if let (Some(file_exp), exp) = (cfg.experiment, cli.experiment) {
        if file_exp != exp {
            eprintln!("warning: config names {file_exp}, running {exp}");
        }
    }
    cli.apply(&mut cfg);
    let mut resolved = cfg.resolve(&source)?;
    resolved.workers = workers_from_env(resolved.workers)?;
    Ok(resolved)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = load(cli).map_err(LabError::from).and_then(|cfg| {
        let report = execute(&cfg)?;
        Ok((cfg, report))
    });
    match result {
        Ok((cfg, report)) => {
            eprintln!(
                "{} run {} finished in {:.1}s, {} files in {}",
                cfg.experiment,
                report.run_id,
                report.wall_time_s,
                report.files.len(),
                cfg.output_dir.display()
            );
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
