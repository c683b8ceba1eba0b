//! Monte Carlo kernel for LOCC convertibility of random bipartite pure states.
//!
//! States are represented by their ordered Schmidt spectra
//! ([`SchmidtVector`]). Deterministic conversion is decided by majorization,
//! multi-copy conversion by majorization of tensor powers, and catalysis by
//! majorization after tensoring both sides with the same auxiliary spectrum.

pub mod catalysis;
pub mod error;
pub mod majorization;
pub mod rng;
pub mod sampling;
pub mod schmidt;
pub mod stats;
pub mod transform;

pub use catalysis::{
    avg_catalyst_count, catalyst_feasible, classify_assisted, classify_cost_efficient,
    ensemble_moments, hierarchy_moments, is_catalyst, search_catalysts, BandEntry,
    CandidatePool, CatalystEnsemble, CatalystRecord, CatalystSearch, CatalystSummary,
    CatalystTester, EnsembleMoments, HierarchyRow, HierarchyTag, StrongRule,
};
pub use error::{Error, Result};
pub use majorization::{
    majorized_by, tensor_power, tensor_product, DEFAULT_MAX_TENSOR_LEN, EPS_MAJOR,
};
pub use rng::{RngStream, StreamDomain};
pub use sampling::{sample_haar_schmidt, GaussianSeedMatrix};
pub use schmidt::{entropy, predicted_mean_entropy, qutrit_gconcurrence_sq, SchmidtVector};
pub use stats::{Histogram, RunningMoments};
pub use transform::theorem1::{theorem1_max_construct, theorem1_min_construct};
pub use transform::{
    classify, delta_e, incomp_frequency_profile, incomparable_fraction, orient_pair,
    ComparabilityRecord, StatePair, Verdict,
};
