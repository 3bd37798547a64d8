//! Exact expected propagation times, reach probabilities, and throttling via
//! dynamic programming over the monotone blue-set state space.
//!
//! Blue sets only grow, so processing bitmasks in decreasing population count
//! solves every strict superset before it is needed:
//!
//! `E[B] = (1 + Σ_{B' ⊋ B} P(B→B') · E[B']) / (1 − P(B→B))`.
//!
//! The self-loop probability `P(B→B)` is strictly below 1 for every non-full
//! state on a connected graph (the frontier is nonempty and every frontier
//! probability is positive), so the division is always defined.

use std::collections::HashMap;

use serde::Serialize;

use crate::graph::{is_connected, Graph};
use crate::state::ColorState;
use crate::{Error, Result};

/// Default graph-order cap for exact solving.
pub const DEFAULT_CAP: usize = 16;
/// Absolute cap; requests above this are rejected even with an override.
pub const HARD_CAP: usize = 22;

/// Expected remaining steps to all-blue, indexed by blue-set bitmask.
/// Entries never computed (outside a restricted solve) are `NaN`.
#[derive(Debug, Clone)]
pub struct ExactTable {
    n: usize,
    values: Vec<f64>,
    complete: bool,
    graph_hash: u64,
}

impl ExactTable {
    /// Graph order.
    pub fn n(&self) -> usize {
        self.n
    }

    /// True when every nonempty blue set has a computed entry.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Fingerprint of the graph this table was solved for.
    pub fn graph_hash(&self) -> u64 {
        self.graph_hash
    }

    /// Expected steps from blue set `b`, if computed.
    pub fn ept_of(&self, b: &ColorState) -> Option<f64> {
        self.ept_mask(b.low_mask())
    }

    /// Expected steps from a bitmask state, if computed.
    pub fn ept_mask(&self, mask: u64) -> Option<f64> {
        let v = *self.values.get(mask as usize)?;
        if v.is_nan() {
            None
        } else {
            Some(v)
        }
    }

    /// Minimum of `|B| + E[B]` over all computed nonempty `B`, with the
    /// numerically smallest bitmask among minimizers.
    pub fn throttling(&self) -> Option<(f64, ColorState)> {
        let mut best: Option<(f64, u64)> = None;
        for mask in 1..self.values.len() as u64 {
            let e = self.values[mask as usize];
            if e.is_nan() {
                continue;
            }
            let score = mask.count_ones() as f64 + e;
            if best.is_none_or(|(b, _)| score < b) {
                best = Some((score, mask));
            }
        }
        best.map(|(v, m)| (v, ColorState::from_mask(self.n, m)))
    }

    /// JSON export `{"n":..., "entries":[{"blue":"0x..","ept":...}]}`,
    /// truncated to `sets` when given, else every computed entry.
    pub fn to_json(&self, sets: Option<&[ColorState]>) -> String {
        #[derive(Serialize)]
        struct Entry {
            blue: String,
            ept: f64,
        }
        #[derive(Serialize)]
        struct Export {
            n: usize,
            entries: Vec<Entry>,
        }
        let entries = match sets {
            Some(list) => list
                .iter()
                .filter_map(|s| {
                    self.ept_of(s).map(|e| Entry {
                        blue: s.to_hex(),
                        ept: e,
                    })
                })
                .collect(),
            None => (1..self.values.len() as u64)
                .filter_map(|m| {
                    self.ept_mask(m).map(|e| Entry {
                        blue: ColorState::from_mask(self.n, m).to_hex(),
                        ept: e,
                    })
                })
                .collect(),
        };
        serde_json::to_string(&Export {
            n: self.n,
            entries,
        })
        .expect("table export cannot fail")
    }
}

/// Probability that a target set is entirely blue after `t` steps.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ReachProbability {
    pub t: usize,
    pub value: f64,
}

fn check_cap(n: usize, cap_override: Option<usize>) -> Result<()> {
    let cap = cap_override.unwrap_or(DEFAULT_CAP).min(HARD_CAP);
    if n > cap {
        Err(Error::CapExceeded { n, cap })
    } else {
        Ok(())
    }
}

fn check_state(g: &Graph, s: &ColorState, name: &str) -> Result<()> {
    if s.n() != g.n() {
        return Err(Error::Precondition(format!(
            "{name} width {} does not match graph order {}",
            s.n(),
            g.n()
        )));
    }
    Ok(())
}

/// Per-graph context for mask arithmetic.
struct MaskCtx {
    n: usize,
    full: u64,
    nbr: Vec<u64>,
    deg: Vec<f64>,
}

impl MaskCtx {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let nbr: Vec<u64> = (0..n)
            .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
            .collect();
        MaskCtx {
            n,
            full: if n == 64 { u64::MAX } else { (1 << n) - 1 },
            nbr,
            deg: (0..n).map(|v| g.degree(v) as f64).collect(),
        }
    }

    /// Frontier of `mask`: each white vertex with a blue neighbor, paired
    /// with its one-step blue probability.
    fn frontier(&self, mask: u64) -> Vec<(usize, f64)> {
        let mut out = Vec::new();
        let mut whites = self.full & !mask;
        while whites != 0 {
            let v = whites.trailing_zeros() as usize;
            whites &= whites - 1;
            let mut blues = self.nbr[v] & mask;
            if blues == 0 {
                continue;
            }
            let mut stay = 1.0;
            while blues != 0 {
                let u = blues.trailing_zeros() as usize;
                blues &= blues - 1;
                let p_uv = (1 + (self.nbr[u] & mask).count_ones()) as f64 / self.deg[u];
                stay *= 1.0 - p_uv;
            }
            out.push((v, (1.0 - stay).clamp(0.0, 1.0)));
        }
        out
    }

    /// Invoke `f(next_mask, probability)` for every outcome of one step from
    /// `mask`, including the self-loop. Probabilities sum to 1.
    fn for_each_transition(&self, mask: u64, f: &mut impl FnMut(u64, f64)) {
        let frontier = self.frontier(mask);
        enumerate_outcomes(&frontier, 0, mask, 1.0, f);
    }
}

fn enumerate_outcomes(
    frontier: &[(usize, f64)],
    i: usize,
    mask: u64,
    prob: f64,
    f: &mut impl FnMut(u64, f64),
) {
    if prob == 0.0 {
        return;
    }
    if i == frontier.len() {
        f(mask, prob);
        return;
    }
    let (v, p) = frontier[i];
    enumerate_outcomes(frontier, i + 1, mask | 1 << v, prob * p, f);
    enumerate_outcomes(frontier, i + 1, mask, prob * (1.0 - p), f);
}

/// Visit every `k`-subset bitmask of `n` bits (Gosper's hack).
fn for_each_k_subset(n: usize, k: usize, mut f: impl FnMut(u64)) {
    if k == 0 {
        f(0);
        return;
    }
    if k > n {
        return;
    }
    let limit = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut m = (1u64 << k) - 1;
    loop {
        f(m);
        let c = m & m.wrapping_neg();
        let r = m.wrapping_add(c);
        if r > limit || r == 0 {
            break;
        }
        m = r | (((m ^ r) >> 2) / c);
        if m > limit {
            break;
        }
    }
}

/// Solve `E[B]` for a state given solved strict supersets.
fn solve_state(ctx: &MaskCtx, values: &[f64], mask: u64) -> f64 {
    let frontier = ctx.frontier(mask);
    debug_assert!(!frontier.is_empty(), "non-full state on a connected graph");
    let mut weighted = 0.0;
    let mut self_loop = 0.0;
    enumerate_outcomes(&frontier, 0, mask, 1.0, &mut |m2, pr| {
        if m2 == mask {
            self_loop += pr;
        } else {
            debug_assert!(!values[m2 as usize].is_nan());
            weighted += pr * values[m2 as usize];
        }
    });
    (1.0 + weighted) / (1.0 - self_loop)
}

fn solve_full_table(g: &Graph) -> Result<ExactTable> {
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let ctx = MaskCtx::new(g);
    let n = ctx.n;
    let mut values = vec![f64::NAN; 1 << n];
    values[ctx.full as usize] = 0.0;
    for k in (1..n).rev() {
        for_each_k_subset(n, k, |mask| {
            values[mask as usize] = solve_state(&ctx, &values, mask);
        });
    }
    Ok(ExactTable {
        n,
        values,
        complete: true,
        graph_hash: g.fingerprint(),
    })
}

fn solve_restricted_table(g: &Graph, start: &ColorState) -> Result<ExactTable> {
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    if start.is_empty() {
        return Err(Error::Precondition("start set is empty".into()));
    }
    let ctx = MaskCtx::new(g);
    let n = ctx.n;
    let start_mask = start.low_mask();
    let comp_bits: Vec<usize> = (0..n)
        .filter(|&v| ctx.full & !start_mask & (1 << v) != 0)
        .collect();
    let mut values = vec![f64::NAN; 1 << n];
    values[ctx.full as usize] = 0.0;
    for k in (0..comp_bits.len()).rev() {
        for_each_k_subset(comp_bits.len(), k, |compact| {
            let mut mask = start_mask;
            let mut rest = compact;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                mask |= 1 << comp_bits[i];
            }
            if mask != ctx.full {
                values[mask as usize] = solve_state(&ctx, &values, mask);
            }
        });
    }
    Ok(ExactTable {
        n,
        values,
        complete: false,
        graph_hash: g.fingerprint(),
    })
}

/// Exact `E[B]` for every nonempty blue set (default cap).
pub fn exact_ept_table(g: &Graph) -> Result<ExactTable> {
    exact_ept_table_capped(g, None)
}

/// Exact table with an explicit cap override (clamped to [`HARD_CAP`]).
pub fn exact_ept_table_capped(g: &Graph, cap_override: Option<usize>) -> Result<ExactTable> {
    check_cap(g.n(), cap_override)?;
    solve_full_table(g)
}

/// Exact table restricted to the upward closure of `start` (saves memory and
/// work when only one start matters).
pub fn exact_ept_restricted(g: &Graph, start: &ColorState) -> Result<ExactTable> {
    check_cap(g.n(), None)?;
    check_state(g, start, "start")?;
    solve_restricted_table(g, start)
}

/// Exact expected propagation time from blue set `s`.
pub fn exact_ept(g: &Graph, s: &ColorState) -> Result<f64> {
    exact_ept_capped(g, s, None)
}

/// [`exact_ept`] with a cap override.
pub fn exact_ept_capped(g: &Graph, s: &ColorState, cap_override: Option<usize>) -> Result<f64> {
    check_cap(g.n(), cap_override)?;
    check_state(g, s, "start")?;
    let table = solve_restricted_table(g, s)?;
    Ok(table.ept_of(s).expect("restricted solve covers its start"))
}

/// Minimum expected propagation time over single-vertex starts, with the
/// lowest-index argmin vertex.
pub fn exact_ept_graph(g: &Graph) -> Result<(f64, usize)> {
    exact_ept_graph_capped(g, None)
}

/// [`exact_ept_graph`] with a cap override.
pub fn exact_ept_graph_capped(g: &Graph, cap_override: Option<usize>) -> Result<(f64, usize)> {
    check_cap(g.n(), cap_override)?;
    let table = solve_full_table(g)?;
    let mut best = (f64::INFINITY, 0);
    for v in 0..g.n() {
        let e = table.ept_mask(1 << v).expect("full table");
        if e < best.0 {
            best = (e, v);
        }
    }
    Ok(best)
}

/// One-step transition distribution from `b`: support is `b ∪ A` over all
/// frontier subsets `A`, including the self-loop `A = ∅`.
pub fn transition_distribution(g: &Graph, b: &ColorState) -> Result<Vec<(ColorState, f64)>> {
    check_cap(g.n(), None)?;
    check_state(g, b, "state")?;
    if b.is_empty() {
        return Err(Error::Precondition("state has no blue vertices".into()));
    }
    if b.is_full() {
        return Err(Error::Precondition("state is already all blue".into()));
    }
    let ctx = MaskCtx::new(g);
    let mut out = Vec::new();
    ctx.for_each_transition(b.low_mask(), &mut |mask, pr| {
        out.push((ColorState::from_mask(g.n(), mask), pr));
    });
    Ok(out)
}

/// Probability that `target ⊆ blue set` after `t` steps from `s`, computed by
/// propagating a sparse distribution over blue sets (absorbing once reached).
pub fn exact_reach_probability(
    g: &Graph,
    s: &ColorState,
    target: &ColorState,
    t: usize,
) -> Result<ReachProbability> {
    check_cap(g.n(), None)?;
    check_state(g, s, "start")?;
    check_state(g, target, "target")?;
    if s.is_empty() {
        return Err(Error::Precondition("start set is empty".into()));
    }
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let ctx = MaskCtx::new(g);
    let target_mask = target.low_mask();
    let mut dist: HashMap<u64, f64> = HashMap::from([(s.low_mask(), 1.0)]);
    for _ in 0..t {
        let mut next: HashMap<u64, f64> = HashMap::new();
        for (&mask, &pr) in &dist {
            if target_mask & !mask == 0 || mask == ctx.full {
                *next.entry(mask).or_insert(0.0) += pr;
            } else {
                ctx.for_each_transition(mask, &mut |m2, p2| {
                    *next.entry(m2).or_insert(0.0) += pr * p2;
                });
            }
        }
        dist = next;
    }
    let value: f64 = dist
        .iter()
        .filter(|(&mask, _)| target_mask & !mask == 0)
        .map(|(_, &pr)| pr)
        .sum();
    Ok(ReachProbability {
        t,
        value: value.clamp(0.0, 1.0),
    })
}

/// Expected number of steps until every vertex of `target` is blue, starting
/// from `s` (the same DP, absorbing at states containing `target`).
pub fn exact_ept_target(g: &Graph, s: &ColorState, target: &ColorState) -> Result<f64> {
    check_cap(g.n(), None)?;
    check_state(g, s, "start")?;
    check_state(g, target, "target")?;
    if s.is_empty() {
        return Err(Error::Precondition("start set is empty".into()));
    }
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let ctx = MaskCtx::new(g);
    let n = ctx.n;
    let start_mask = s.low_mask();
    let target_mask = target.low_mask();
    let comp_bits: Vec<usize> = (0..n)
        .filter(|&v| ctx.full & !start_mask & (1 << v) != 0)
        .collect();
    let mut values = vec![f64::NAN; 1 << n];
    for k in (0..=comp_bits.len()).rev() {
        for_each_k_subset(comp_bits.len(), k, |compact| {
            let mut mask = start_mask;
            let mut rest = compact;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                mask |= 1 << comp_bits[i];
            }
            values[mask as usize] = if target_mask & !mask == 0 {
                0.0
            } else {
                solve_state(&ctx, &values, mask)
            };
        });
    }
    Ok(values[start_mask as usize])
}

/// Exact throttling: minimum of `|B| + E[B]` over all nonempty blue sets,
/// with the numerically smallest minimizer.
pub fn exact_throttling(g: &Graph) -> Result<(f64, ColorState)> {
    exact_throttling_capped(g, None)
}

/// [`exact_throttling`] with a cap override.
pub fn exact_throttling_capped(
    g: &Graph,
    cap_override: Option<usize>,
) -> Result<(f64, ColorState)> {
    check_cap(g.n(), cap_override)?;
    let table = solve_full_table(g)?;
    Ok(table.throttling().expect("full table is nonempty"))
}
