//! One step and full trajectories of the probabilistic color change rule.
//!
//! Randomness is realized exactly as in the coupling construction: one
//! uniform draw per directed blue→white edge per step, compared against the
//! rule probability `(1 + b(u)) / deg(u)`. The draw for a given (seed, edge,
//! time) is pure (see [`crate::rng`]), so trajectories replay bit-for-bit
//! and two processes sharing a seed consume identical randomness.

use serde::Serialize;

use crate::graph::{is_connected, Graph};
use crate::rng;
use crate::state::ColorState;
use crate::{Error, Result};

/// A recorded run: `states[t]` is the blue set after `t` steps.
#[derive(Debug, Clone, Serialize)]
pub struct Trajectory {
    pub seed: u64,
    #[serde(rename = "steps")]
    pub states: Vec<ColorState>,
    pub terminated: bool,
}

impl Trajectory {
    /// JSON export: `{"seed":..., "steps":["0x..",...], "terminated":...}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("trajectory serialization cannot fail")
    }

    /// Number of steps taken (states after the initial one).
    pub fn steps(&self) -> usize {
        self.states.len() - 1
    }
}

/// Default step cap: far above the expected propagation time of any start.
pub fn default_max_steps(n: usize) -> usize {
    64 * n.max(1)
}

/// Probability that blue `u` forces its white neighbor `v` in one step.
pub fn force_probability(g: &Graph, b: &ColorState, u: usize, v: usize) -> Result<f64> {
    if !g.has_edge(u, v) {
        return Err(Error::Precondition(format!("{u}-{v} is not an edge")));
    }
    if !b.contains(u) {
        return Err(Error::Precondition(format!("vertex {u} is not blue")));
    }
    if b.contains(v) {
        return Err(Error::Precondition(format!("vertex {v} is not white")));
    }
    let blue_nbrs = g.neighbors(u).iter().filter(|&&w| b.contains(w)).count();
    Ok((1 + blue_nbrs) as f64 / g.degree(u) as f64)
}

/// Probability that white `v` is blue after one step: one independent
/// attempt per blue neighbor.
pub fn blue_probability(g: &Graph, b: &ColorState, v: usize) -> Result<f64> {
    if b.contains(v) {
        return Err(Error::Precondition(format!("vertex {v} is already blue")));
    }
    let mut stay_white = 1.0;
    for &u in g.neighbors(v) {
        if b.contains(u) {
            stay_white *= 1.0 - force_probability(g, b, u, v)?;
        }
    }
    Ok((1.0 - stay_white).clamp(0.0, 1.0))
}

/// Sum of one-step blue probabilities over all white vertices.
pub fn expected_increase(g: &Graph, b: &ColorState) -> f64 {
    (0..g.n())
        .filter(|&v| !b.contains(v))
        .map(|v| blue_probability(g, b, v).expect("v is white"))
        .sum()
}

/// One synchronous step: every white vertex with a blue neighbor joins
/// independently per the rule. Draws are indexed by (seed, directed edge, t).
pub fn step(g: &Graph, b: &ColorState, seed: u64, t: u64) -> ColorState {
    step_impl(g, None, b, seed, t)
}

/// One synchronous step of the process restricted to the induced subgraph on
/// the blue vertices of `within`: adjacency and degrees are both taken inside
/// `within`, and vertices outside it are untouched.
pub fn step_induced(
    g: &Graph,
    within: &ColorState,
    b: &ColorState,
    seed: u64,
    t: u64,
) -> ColorState {
    step_impl(g, Some(within), b, seed, t)
}

fn step_impl(
    g: &Graph,
    within: Option<&ColorState>,
    b: &ColorState,
    seed: u64,
    t: u64,
) -> ColorState {
    let n = g.n();
    let inside = |v: usize| within.is_none_or(|m| m.contains(v));
    // Per blue vertex: blue-neighbor count and degree, both inside the mask.
    let mut blue_nbrs = vec![0u32; n];
    let mut deg = vec![0u32; n];
    for u in b.iter_ones() {
        if !inside(u) {
            continue;
        }
        for &w in g.neighbors(u) {
            if inside(w) {
                deg[u] += 1;
                if b.contains(w) {
                    blue_nbrs[u] += 1;
                }
            }
        }
    }
    let mut next = b.clone();
    for v in 0..n {
        if b.contains(v) || !inside(v) {
            continue;
        }
        for &u in g.neighbors(v) {
            if inside(u) && b.contains(u) {
                let p = (1 + blue_nbrs[u]) as f64 / deg[u] as f64;
                if rng::edge_draw(seed, u, v, t) <= p {
                    next.set(v);
                    break;
                }
            }
        }
    }
    next
}

/// Run from `start` until all-blue or `max_steps`, recording every state.
pub fn run(g: &Graph, start: &ColorState, seed: u64, max_steps: usize) -> Result<Trajectory> {
    check_run_pre(g, start)?;
    let mut states = vec![start.clone()];
    let mut cur = start.clone();
    let mut terminated = cur.is_full();
    for t in 1..=max_steps as u64 {
        if terminated {
            break;
        }
        cur = step(g, &cur, seed, t);
        states.push(cur.clone());
        terminated = cur.is_full();
    }
    Ok(Trajectory {
        seed,
        states,
        terminated,
    })
}

/// Steps until all-blue, without recording states. Returns the step count
/// and whether the run terminated within `max_steps`.
pub fn propagation_time(g: &Graph, start: &ColorState, seed: u64, max_steps: usize) -> (u64, bool) {
    let mut cur = start.clone();
    if cur.is_full() {
        return (0, true);
    }
    for t in 1..=max_steps as u64 {
        cur = step(g, &cur, seed, t);
        if cur.is_full() {
            return (t, true);
        }
    }
    (max_steps as u64, false)
}

fn check_run_pre(g: &Graph, start: &ColorState) -> Result<()> {
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    if start.is_empty() {
        return Err(Error::Precondition("start set is empty".into()));
    }
    if start.n() != g.n() {
        return Err(Error::Precondition(format!(
            "state width {} does not match graph order {}",
            start.n(),
            g.n()
        )));
    }
    Ok(())
}

/// Run two processes from nested starts `s ⊆ t` on shared randomness: both
/// read the identical draw for every (directed edge, time). Returns both
/// trajectories and whether containment held at every step up to `steps`.
pub fn coupled_run(
    g: &Graph,
    s: &ColorState,
    t: &ColorState,
    seed: u64,
    steps: usize,
) -> Result<(Trajectory, Trajectory, bool)> {
    check_run_pre(g, s)?;
    check_run_pre(g, t)?;
    if !s.is_subset(t) {
        return Err(Error::Precondition("start sets are not nested".into()));
    }
    let mut cur_s = s.clone();
    let mut cur_t = t.clone();
    let mut states_s = vec![cur_s.clone()];
    let mut states_t = vec![cur_t.clone()];
    let mut subset_ok = true;
    for tau in 1..=steps as u64 {
        if cur_s.is_full() && cur_t.is_full() {
            break;
        }
        if !cur_s.is_full() {
            cur_s = step(g, &cur_s, seed, tau);
            states_s.push(cur_s.clone());
        }
        if !cur_t.is_full() {
            cur_t = step(g, &cur_t, seed, tau);
            states_t.push(cur_t.clone());
        }
        subset_ok &= cur_s.is_subset(&cur_t);
    }
    let traj = |states: Vec<ColorState>, full: bool| Trajectory {
        seed,
        states,
        terminated: full,
    };
    let done_s = cur_s.is_full();
    let done_t = cur_t.is_full();
    Ok((traj(states_s, done_s), traj(states_t, done_t), subset_ok))
}
