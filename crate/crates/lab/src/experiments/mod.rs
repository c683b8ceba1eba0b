//! One runner per experiment. Each returns its tables in a fixed order; the
//! caller decides how and where to write them.

mod catalysts;
mod comparability;
mod cost;
mod dist;
mod hierarchy;
mod sweep;
mod theorem1;

pub use catalysts::run_catalysts;
pub use comparability::run_comparability;
pub use cost::run_cost_efficient;
pub use dist::run_entanglement_dist;
pub use hierarchy::run_hierarchy;
pub use sweep::{sweep, PairScan, ScanResult};
pub use theorem1::run_theorem1_check;

use locc_core::stats::uniform_edges;
use locc_core::RngStream;

use crate::config::{Experiment, ResolvedConfig};
use crate::table::ResultTable;
use crate::LabError;

/// A table together with its file stem (`<experiment>_<d>d_k<k>` or
/// `<experiment>_summary`) and schema id.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputTable {
    pub stem: String,
    pub schema: &'static str,
    pub table: ResultTable,
}

impl OutputTable {
    fn per_dim(experiment: Experiment, d: usize, k: u32, schema: &'static str, table: ResultTable) -> Self {
        OutputTable {
            stem: format!("{}_{d}d_k{k}", experiment.name()),
            schema,
            table,
        }
    }

    fn summary(experiment: Experiment, schema: &'static str, table: ResultTable) -> Self {
        OutputTable {
            stem: format!("{}_summary", experiment.name()),
            schema,
            table,
        }
    }
}

/// Runs the configured experiment on the current rayon pool.
pub fn run(cfg: &ResolvedConfig) -> Result<Vec<OutputTable>, LabError> {
    match cfg.experiment {
        Experiment::EntanglementDist => run_entanglement_dist(cfg),
        Experiment::Comparability => run_comparability(cfg),
        Experiment::Catalysts => run_catalysts(cfg),
        Experiment::Hierarchy => run_hierarchy(cfg),
        Experiment::CostEfficient => run_cost_efficient(cfg),
        Experiment::Theorem1Check => run_theorem1_check(cfg),
    }
}

fn base_stream(cfg: &ResolvedConfig) -> RngStream {
    RngStream::new(cfg.seed, 0)
}

/// Bins of `width` over the attainable k-copy range `[0, k log2 d]`.
fn range_edges(d: usize, k: u32, width: f64) -> Result<Vec<f64>, LabError> {
    let hi = k as f64 * (d as f64).log2();
    // the top value is attained by (uniform, product) pairs and uniform states
    Ok(uniform_edges(0.0, hi + width * 1e-6, width)?)
}

fn mean(sum: f64, n: u64) -> Option<f64> {
    (n > 0).then(|| sum / n as f64)
}
