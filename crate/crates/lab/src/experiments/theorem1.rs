use rayon::prelude::*;

use locc_core::transform::theorem1::{gap_with_source, gap_with_target, hessian_central, Construction};
use locc_core::{
    majorized_by, sample_haar_schmidt, theorem1_max_construct, theorem1_min_construct, Error,
    RngStream, SchmidtVector, StreamDomain, EPS_MAJOR,
};

use super::OutputTable;
use crate::config::{Experiment, ResolvedConfig};
use crate::table::ResultTable;
use crate::LabError;

pub const SCHEMA: &str = "theorem1-check.v1";

/// Step for the central-difference Hessian. The gap is cubic in `(α1, α2)`,
/// so the stencil is exact up to rounding of order `eps |f| / h^2`.
const HESSIAN_STEP: f64 = 1e-3;

#[derive(Debug, Clone, Copy, Default)]
struct Tally {
    n: u64,
    feasible: u64,
    agree: u64,
    sign_ok: u64,
    det_err: f64,
    diag_err: f64,
}

/// Outcome for one input vector; `None` when the construction is infeasible.
type Outcome = Option<(bool, bool, [[f64; 2]; 2])>;

fn check(
    n: u64,
    domain: StreamDomain,
    cfg: &ResolvedConfig,
    f: impl Fn(&SchmidtVector) -> Result<Outcome, LabError> + Sync,
) -> Result<Vec<Outcome>, LabError> {
    (0..n)
        .into_par_iter()
        .map(|i| {
            let v = sample_haar_schmidt(3, RngStream::for_task(cfg.seed, domain, 3, i))?;
            f(&v)
        })
        .collect()
}

fn infeasible_or(r: locc_core::Result<Construction>) -> Result<Option<Construction>, LabError> {
    match r {
        Ok(c) => Ok(Some(c)),
        Err(Error::InfeasibleConstruction(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn tally(outcomes: &[Outcome], det: f64, diag: f64) -> Tally {
    let mut t = Tally::default();
    for o in outcomes {
        t.n += 1;
        let Some((agree, sign_ok, h)) = o else { continue };
        t.feasible += 1;
        t.agree += *agree as u64;
        t.sign_ok += *sign_ok as u64;
        let d = h[0][0] * h[1][1] - h[0][1] * h[1][0];
        t.det_err = t.det_err.max((d - det).abs());
        t.diag_err = t.diag_err.max((h[0][0] - diag).abs()).max((h[1][1] - diag).abs());
    }
    t
}

/// Extremal qutrit constructions on `n_states` random vectors each.
///
/// `max`: random targets `b`, the maximizing source must give `α1, α2 <= 0`
/// and a comparable pair. `min`: random sources `a`, the minimizing target
/// must give `α1, α2 >= 0` and a pair that is incomparable or sits on the
/// boundary `α1 = α2 = 0`. Both stationary points have Hessian determinant
/// `1/3`, with diagonal `-2/3` at the maximum and `+2/3` at the minimum.
pub fn run_theorem1_check(cfg: &ResolvedConfig) -> Result<Vec<OutputTable>, LabError> {
    let exp = Experiment::Theorem1Check;
    let max = check(cfg.n_states, StreamDomain::States, cfg, |b| {
        let Some(c) = infeasible_or(theorem1_max_construct(b))? else {
            return Ok(None);
        };
        let sign_ok = c.alpha1 <= EPS_MAJOR && c.alpha2 <= EPS_MAJOR;
        let agree = majorized_by(&c.vector, b);
        let h = hessian_central(|x, y| gap_with_target(b, x, y), c.alpha1, c.alpha2, HESSIAN_STEP);
        Ok(Some((agree, sign_ok, h)))
    })?;
    let min = check(cfg.n_states, StreamDomain::Aux, cfg, |a| {
        let Some(c) = infeasible_or(theorem1_min_construct(a))? else {
            return Ok(None);
        };
        let sign_ok = c.alpha1 >= -EPS_MAJOR && c.alpha2 >= -EPS_MAJOR;
        let boundary = c.alpha1.abs() <= EPS_MAJOR && c.alpha2.abs() <= EPS_MAJOR;
        let agree = !majorized_by(a, &c.vector) || boundary;
        let h = hessian_central(|x, y| gap_with_source(a, x, y), c.alpha1, c.alpha2, HESSIAN_STEP);
        Ok(Some((agree, sign_ok, h)))
    })?;

    let mut table = ResultTable::new(&[
        "construction",
        "n",
        "n_feasible",
        "n_agree",
        "n_sign_ok",
        "feasible_rate",
        "agree_rate",
        "expected_det",
        "expected_diag",
        "max_det_err",
        "max_diag_err",
    ]);
    for (name, outcomes, diag) in [("max", &max, -2.0 / 3.0), ("min", &min, 2.0 / 3.0)] {
        let det = 1.0 / 3.0;
        let t = tally(outcomes, det, diag);
        table.push(vec![
            name.into(),
            t.n.into(),
            t.feasible.into(),
            t.agree.into(),
            t.sign_ok.into(),
            (t.feasible as f64 / t.n as f64).into(),
            super::mean(t.agree as f64, t.feasible).into(),
            det.into(),
            diag.into(),
            (t.feasible > 0).then_some(t.det_err).into(),
            (t.feasible > 0).then_some(t.diag_err).into(),
        ]);
    }
    Ok(vec![OutputTable::per_dim(exp, 3, 1, SCHEMA, table)])
}
