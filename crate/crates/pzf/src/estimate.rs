//! Seeded, parallel Monte Carlo estimation of expected propagation time and
//! tail probabilities.
//!
//! Every trial draws its own seed as a pure function of (master seed, trial
//! index), and results are aggregated in trial-index order, so an estimate is
//! bit-identical no matter how many workers ran it.

use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::engine::{default_max_steps, propagation_time};
use crate::graph::{center_vertex, is_connected, Graph};
use crate::rng::{derive_seed, DOMAIN_CANDIDATE, DOMAIN_TRIAL, DOMAIN_VERTEX};
use crate::state::ColorState;
use crate::{Error, Result};

/// Confidence level used when none is specified.
pub const DEFAULT_CONFIDENCE: f64 = 0.95;

/// Above this order, [`estimate_ept_graph`] samples candidate start vertices
/// instead of trying every vertex.
pub const CANDIDATE_THRESHOLD: usize = 64;

/// A Monte Carlo estimate of expected propagation time.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EstimateResult {
    pub mean: f64,
    pub std_dev: f64,
    pub trials: u64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub confidence: f64,
    pub seed: u64,
    /// Trials that hit the step cap before finishing. Their (censored) times
    /// still enter the mean, so any nonzero count invalidates the estimate.
    pub truncated: u64,
}

impl EstimateResult {
    /// False when any trial was cut off by the step cap.
    pub fn is_valid(&self) -> bool {
        self.truncated == 0
    }

    /// Standard error of the mean.
    pub fn std_err(&self) -> f64 {
        self.std_dev / (self.trials as f64).sqrt()
    }
}

/// An empirical tail probability `P(propagation time > t)` with a Wilson
/// score interval.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TailEstimate {
    pub t: u64,
    pub probability: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub trials: u64,
    pub confidence: f64,
    pub seed: u64,
}

/// Best singleton start found by Monte Carlo search over candidate vertices.
#[derive(Debug, Clone, Serialize)]
pub struct GraphEstimate {
    pub best: EstimateResult,
    pub vertex: usize,
    /// True when the candidate set was a sample rather than every vertex.
    pub restricted: bool,
}

fn z_value(confidence: f64) -> f64 {
    let normal = Normal::new(0.0, 1.0).expect("standard normal");
    normal.inverse_cdf(0.5 + confidence / 2.0)
}

fn check_pre(g: &Graph, s: &ColorState, trials: u64) -> Result<()> {
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    if s.n() != g.n() {
        return Err(Error::Precondition(format!(
            "state width {} does not match graph order {}",
            s.n(),
            g.n()
        )));
    }
    if s.is_empty() {
        return Err(Error::Precondition("start set is empty".into()));
    }
    if trials == 0 {
        return Err(Error::Precondition("trials must be at least 1".into()));
    }
    Ok(())
}

fn run_trials(g: &Graph, s: &ColorState, trials: u64, seed: u64, max_steps: usize) -> Vec<(u64, bool)> {
    (0..trials)
        .into_par_iter()
        .map(|i| propagation_time(g, s, derive_seed(seed, DOMAIN_TRIAL, i), max_steps))
        .collect()
}

/// Estimate `ept(g, s)` from `trials` independent runs (default step cap).
pub fn estimate_ept(g: &Graph, s: &ColorState, trials: u64, seed: u64) -> Result<EstimateResult> {
    estimate_ept_with(g, s, trials, seed, default_max_steps(g.n()))
}

/// [`estimate_ept`] with an explicit per-trial step cap.
pub fn estimate_ept_with(
    g: &Graph,
    s: &ColorState,
    trials: u64,
    seed: u64,
    max_steps: usize,
) -> Result<EstimateResult> {
    check_pre(g, s, trials)?;
    let outcomes = run_trials(g, s, trials, seed, max_steps);
    let truncated = outcomes.iter().filter(|(_, done)| !done).count() as u64;
    let sum: u64 = outcomes.iter().map(|(t, _)| t).sum();
    let mean = sum as f64 / trials as f64;
    let var = if trials < 2 {
        0.0
    } else {
        let ss: f64 = outcomes
            .iter()
            .map(|(t, _)| {
                let d = *t as f64 - mean;
                d * d
            })
            .sum();
        ss / (trials - 1) as f64
    };
    let std_dev = var.sqrt();
    let half = z_value(DEFAULT_CONFIDENCE) * std_dev / (trials as f64).sqrt();
    Ok(EstimateResult {
        mean,
        std_dev,
        trials,
        ci_low: mean - half,
        ci_high: mean + half,
        confidence: DEFAULT_CONFIDENCE,
        seed,
        truncated,
    })
}

/// Estimate the tail `P(propagation time > t)` as the fraction of trials not
/// finished within `t` steps, with a Wilson score interval.
pub fn estimate_tail(
    g: &Graph,
    s: &ColorState,
    t: u64,
    trials: u64,
    seed: u64,
) -> Result<TailEstimate> {
    check_pre(g, s, trials)?;
    let outcomes = run_trials(g, s, trials, seed, t as usize);
    let still_running = outcomes.iter().filter(|(_, done)| !done).count() as u64;
    let p_hat = still_running as f64 / trials as f64;
    let (ci_low, ci_high) = wilson_interval(p_hat, trials, DEFAULT_CONFIDENCE);
    Ok(TailEstimate {
        t,
        probability: p_hat,
        ci_low,
        ci_high,
        trials,
        confidence: DEFAULT_CONFIDENCE,
        seed,
    })
}

/// Wilson score interval for a binomial proportion.
pub fn wilson_interval(p_hat: f64, trials: u64, confidence: f64) -> (f64, f64) {
    let z = z_value(confidence);
    let n = trials as f64;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p_hat + z2 / (2.0 * n)) / denom;
    let half = z * (p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Estimate `ept(g) = min_v ept(g, {v})` by running `trials_per_vertex`
/// trials from each candidate start; ties go to the lowest vertex index.
///
/// For `n >` [`CANDIDATE_THRESHOLD`], candidates are a center vertex plus a
/// deterministic sample, and the result is flagged `restricted`.
pub fn estimate_ept_graph(
    g: &Graph,
    trials_per_vertex: u64,
    seed: u64,
) -> Result<GraphEstimate> {
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    let restricted = n > CANDIDATE_THRESHOLD;
    let candidates: Vec<usize> = if restricted {
        let mut picked = vec![false; n];
        picked[center_vertex(g)?] = true;
        let mut count = 1;
        let mut i = 0u64;
        while count < CANDIDATE_THRESHOLD {
            let v = (derive_seed(seed, DOMAIN_CANDIDATE, i) % n as u64) as usize;
            i += 1;
            if !picked[v] {
                picked[v] = true;
                count += 1;
            }
        }
        (0..n).filter(|&v| picked[v]).collect()
    } else {
        (0..n).collect()
    };
    let mut best: Option<(usize, EstimateResult)> = None;
    for &v in &candidates {
        let s = ColorState::singleton(n, v)?;
        let r = estimate_ept(g, &s, trials_per_vertex, derive_seed(seed, DOMAIN_VERTEX, v as u64))?;
        if best.as_ref().is_none_or(|(_, b)| r.mean < b.mean) {
            best = Some((v, r));
        }
    }
    let (vertex, best) = best.expect("candidate set is nonempty");
    Ok(GraphEstimate {
        best,
        vertex,
        restricted,
    })
}
