//! Cornerstone detection and the balanced-partition function g(·).
//!
//! A 1-cornerstone is a cut vertex; a 2-cornerstone is a pair of vertices,
//! adjacent or sharing a common neighbor, whose removal disconnects the
//! graph. `g` measures how evenly the remaining components can be split into
//! two sides (S, T) with no edges between them: it is the minimum over such
//! splits of `max(|S|, |T|)`, and defaults to `n−1` (singles) or `n−2`
//! (pairs) when the removal does not disconnect.

use serde::Serialize;

use crate::graph::{is_connected, Graph};
use crate::state::ColorState;
use crate::{Error, Result};

/// The vertex or pair selected by [`best_cornerstone`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Chosen {
    Single(usize),
    Pair(usize, usize),
}

impl Chosen {
    /// The removed vertices, as a list.
    pub fn vertices(&self) -> Vec<usize> {
        match *self {
            Chosen::Single(v) => vec![v],
            Chosen::Pair(v, w) => vec![v, w],
        }
    }
}

impl std::fmt::Display for Chosen {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Chosen::Single(v) => write!(f, "{v}"),
            Chosen::Pair(v, w) => write!(f, "({v},{w})"),
        }
    }
}

/// Every cornerstone with its g-value, plus the global minimizer and its
/// witnessing split.
#[derive(Debug, Clone, Serialize)]
pub struct CornerstoneReport {
    /// Cut vertices with their g-values.
    pub one_cornerstones: Vec<(usize, usize)>,
    /// Disconnecting eligible pairs with their g-values.
    pub two_cornerstones: Vec<((usize, usize), usize)>,
    pub best: Chosen,
    pub best_g: usize,
    /// Smaller side of the witnessing split (empty when `best` is not a
    /// cornerstone).
    pub s_set: ColorState,
    /// Larger side; `|t_set| = best_g` always.
    pub t_set: ColorState,
}

fn check_connected(g: &Graph) -> Result<()> {
    if is_connected(g) {
        Ok(())
    } else {
        Err(Error::Disconnected)
    }
}

/// All cut vertices (1-cornerstones), ascending.
pub fn one_cornerstones(g: &Graph) -> Vec<usize> {
    let n = g.n();
    const UNSEEN: usize = usize::MAX;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut parent = vec![UNSEEN; n];
    let mut next_idx = vec![0usize; n];
    let mut is_cut = vec![false; n];
    let mut timer = 0usize;
    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        let mut root_children = 0usize;
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut stack = vec![root];
        while let Some(&v) = stack.last() {
            if next_idx[v] < g.neighbors(v).len() {
                let w = g.neighbors(v)[next_idx[v]];
                next_idx[v] += 1;
                if disc[w] == UNSEEN {
                    if v == root {
                        root_children += 1;
                    }
                    parent[w] = v;
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push(w);
                } else if w != parent[v] {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                let p = parent[v];
                if p != UNSEEN {
                    low[p] = low[p].min(low[v]);
                    if p != root && low[v] >= disc[p] {
                        is_cut[p] = true;
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    (0..n).filter(|&v| is_cut[v]).collect()
}

/// Connected components of `g` with `removed` deleted, as sorted vertex lists.
fn components_without(g: &Graph, removed: &[usize]) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut gone = vec![false; n];
    for &v in removed {
        gone[v] = true;
    }
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for start in 0..n {
        if gone[start] || seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut head = 0;
        while head < comp.len() {
            let v = comp[head];
            head += 1;
            for &w in g.neighbors(v) {
                if !gone[w] && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// Balanced two-sided split of whole components: minimize `max(|S|, |T|)`.
/// Returns the minimum and the component indices assigned to the smaller
/// side, preferring earlier components.
fn balanced_split(sizes: &[usize]) -> (usize, Vec<usize>) {
    let total: usize = sizes.iter().sum();
    let m = sizes.len();
    // suffix[i][j] = some subset of sizes[i..] sums to j
    let mut suffix = vec![vec![false; total + 1]; m + 1];
    suffix[m][0] = true;
    for i in (0..m).rev() {
        for j in 0..=total {
            suffix[i][j] = suffix[i + 1][j] || (j >= sizes[i] && suffix[i + 1][j - sizes[i]]);
        }
    }
    let mut target = (0..=total / 2).rev().find(|&j| suffix[0][j]).unwrap_or(0);
    let g_value = total - target;
    let mut side = Vec::new();
    for i in 0..m {
        if target >= sizes[i] && suffix[i + 1][target - sizes[i]] {
            side.push(i);
            target -= sizes[i];
        }
    }
    (g_value, side)
}

/// g-value of a single vertex: balanced split of the components of `g − v`,
/// or `n−1` when `v` is not a cut vertex.
pub fn g_one(g: &Graph, v: usize) -> usize {
    let comps = components_without(g, &[v]);
    if comps.len() >= 2 {
        let sizes: Vec<usize> = comps.iter().map(Vec::len).collect();
        balanced_split(&sizes).0
    } else {
        g.n() - 1
    }
}

/// g-value of a pair, or `None` when the pair is ineligible (neither
/// adjacent nor sharing a common neighbor). Non-disconnecting eligible pairs
/// get the default `n−2`.
pub fn g_two(g: &Graph, v: usize, w: usize) -> Option<usize> {
    if v == w || !pair_eligible(g, v, w) {
        return None;
    }
    let comps = components_without(g, &[v, w]);
    if comps.len() >= 2 {
        let sizes: Vec<usize> = comps.iter().map(Vec::len).collect();
        Some(balanced_split(&sizes).0)
    } else {
        Some(g.n() - 2)
    }
}

fn pair_eligible(g: &Graph, v: usize, w: usize) -> bool {
    if g.has_edge(v, w) {
        return true;
    }
    // sorted neighbor lists: common-neighbor check by merge
    let (mut a, mut b) = (g.neighbors(v).iter(), g.neighbors(w).iter());
    let (mut x, mut y) = (a.next(), b.next());
    while let (Some(&u1), Some(&u2)) = (x, y) {
        match u1.cmp(&u2) {
            std::cmp::Ordering::Less => x = a.next(),
            std::cmp::Ordering::Greater => y = b.next(),
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

type Rank = (usize, usize, usize, usize);

/// Rank candidates: by g-value, then singles before adjacent pairs before
/// distance-2 pairs, then by index order.
fn rank(g: &Graph, c: Chosen, value: usize) -> Rank {
    match c {
        Chosen::Single(v) => (value, 0, v, 0),
        Chosen::Pair(v, w) => {
            let class = if g.has_edge(v, w) { 1 } else { 2 };
            (value, class, v, w)
        }
    }
}

/// Evaluate g over every vertex and eligible pair; return the cornerstone
/// lists, the global minimizer, and its witnessing split.
pub fn best_cornerstone(g: &Graph) -> Result<CornerstoneReport> {
    check_connected(g)?;
    let n = g.n();
    let mut ones = Vec::new();
    let mut twos = Vec::new();
    let mut best: Option<(Rank, Chosen, usize)> = None;
    let mut consider = |g: &Graph, c: Chosen, value: usize| {
        let r = rank(g, c, value);
        if best.as_ref().is_none_or(|(b, _, _)| r < *b) {
            best = Some((r, c, value));
        }
    };
    let cut: Vec<usize> = one_cornerstones(g);
    for v in 0..n {
        let value = g_one(g, v);
        if cut.binary_search(&v).is_ok() {
            ones.push((v, value));
        }
        consider(g, Chosen::Single(v), value);
    }
    for v in 0..n {
        for w in v + 1..n {
            let Some(value) = g_two(g, v, w) else { continue };
            if components_without(g, &[v, w]).len() >= 2 {
                twos.push(((v, w), value));
            }
            consider(g, Chosen::Pair(v, w), value);
        }
    }
    let (_, best, best_g) = best.expect("n >= 1 always yields a candidate");
    let removed = best.vertices();
    let comps = components_without(g, &removed);
    let mut s_set = ColorState::new(n);
    let mut t_set = ColorState::new(n);
    if comps.len() >= 2 {
        let sizes: Vec<usize> = comps.iter().map(Vec::len).collect();
        let (_, s_comps) = balanced_split(&sizes);
        for (i, comp) in comps.iter().enumerate() {
            let side = if s_comps.contains(&i) { &mut s_set } else { &mut t_set };
            for &v in comp {
                side.set(v);
            }
        }
    } else {
        // not a cornerstone: S empty, T everything else
        for comp in &comps {
            for &v in comp {
                t_set.set(v);
            }
        }
    }
    Ok(CornerstoneReport {
        one_cornerstones: ones,
        two_cornerstones: twos,
        best,
        best_g,
        s_set,
        t_set,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gen(text: &str) -> Graph {
        text.parse::<crate::FamilySpec>().unwrap().generate().unwrap()
    }

    #[test]
    fn cut_vertices_on_fixtures() {
        assert_eq!(one_cornerstones(&gen("path:3")), vec![1]);
        assert_eq!(one_cornerstones(&gen("complete:4")), Vec::<usize>::new());
        assert_eq!(one_cornerstones(&gen("star:4")), vec![0]);
        assert_eq!(one_cornerstones(&gen("path:5")), vec![1, 2, 3]);
        assert_eq!(one_cornerstones(&gen("cycle:6")), Vec::<usize>::new());
        // star_chain r=1,s=3: centers 0,3,6, chain 0-3-6
        assert_eq!(one_cornerstones(&gen("star_chain:r=1,s=3")), vec![0, 3, 6]);
    }

    #[test]
    fn g_one_on_fixtures() {
        assert_eq!(g_one(&gen("path:3"), 1), 1);
        assert_eq!(g_one(&gen("star:4"), 0), 2);
        for v in 0..4 {
            assert_eq!(g_one(&gen("complete:4"), v), 3, "not a cut vertex");
        }
        // path:6 at vertex 2: components {0,1} and {3,4,5}
        assert_eq!(g_one(&gen("path:6"), 2), 3);
    }

    #[test]
    fn g_two_on_fixtures() {
        let p4 = gen("path:4");
        assert_eq!(g_two(&p4, 1, 2), Some(1));
        assert_eq!(g_two(&p4, 0, 1), Some(2), "non-disconnecting default");
        assert_eq!(g_two(&p4, 0, 3), None, "ineligible: distance 3");
        let c4 = gen("cycle:4");
        assert_eq!(g_two(&c4, 0, 2), Some(1), "opposite vertices, two common neighbors");
        assert_eq!(g_two(&gen("complete:2"), 0, 1), Some(0), "empty remainder");
    }

    #[test]
    fn best_on_path4_is_the_middle_pair() {
        let r = best_cornerstone(&gen("path:4")).unwrap();
        assert_eq!(r.best, Chosen::Pair(1, 2));
        assert_eq!(r.best_g, 1);
        assert_eq!(r.s_set.to_string(), "{0}");
        assert_eq!(r.t_set.to_string(), "{3}");
    }

    #[test]
    fn best_on_complete5_falls_back_to_pair_default() {
        let r = best_cornerstone(&gen("complete:5")).unwrap();
        assert_eq!(r.best, Chosen::Pair(0, 1));
        assert_eq!(r.best_g, 3);
        assert!(r.s_set.is_empty());
        assert_eq!(r.t_set.count_ones(), 3);
        assert!(r.one_cornerstones.is_empty());
        assert!(r.two_cornerstones.is_empty());
    }

    #[test]
    fn best_on_star6_is_the_center() {
        let r = best_cornerstone(&gen("star:6")).unwrap();
        assert_eq!(r.best, Chosen::Single(0));
        assert_eq!(r.best_g, 3);
        assert_eq!(r.s_set.count_ones(), 3);
        assert_eq!(r.t_set.count_ones(), 3);
    }

    #[test]
    fn best_on_k2_is_the_empty_split() {
        let r = best_cornerstone(&gen("complete:2")).unwrap();
        assert_eq!(r.best, Chosen::Pair(0, 1));
        assert_eq!(r.best_g, 0);
        assert!(r.s_set.is_empty());
        assert!(r.t_set.is_empty());
    }

    #[test]
    fn tie_break_prefers_singles() {
        // star:6 again: center (g=3) ties with center+leaf pairs (g=3);
        // the single must win.
        let r = best_cornerstone(&gen("star:6")).unwrap();
        assert!(matches!(r.best, Chosen::Single(0)));
    }

    #[test]
    fn report_split_invariants_hold() {
        for spec in ["path:4", "path:7", "star:5", "cycle:6", "complete:4",
                     "star_chain:r=1,s=3", "spider:l=3,m=2"] {
            let g = gen(spec);
            let r = best_cornerstone(&g).unwrap();
            check_report(&g, &r, spec);
        }
    }

    fn check_report(g: &Graph, r: &CornerstoneReport, ctx: &str) {
        let n = g.n();
        assert!(r.s_set.count_ones() <= r.t_set.count_ones(), "{ctx}");
        assert_eq!(
            r.s_set.count_ones().max(r.t_set.count_ones()),
            r.best_g,
            "{ctx}: max side = g"
        );
        let removed = r.best.vertices();
        let mut covered = 0;
        for v in 0..n {
            let in_s = r.s_set.contains(v);
            let in_t = r.t_set.contains(v);
            let is_removed = removed.contains(&v);
            assert_eq!(in_s as usize + in_t as usize + is_removed as usize, 1, "{ctx}: partition");
            covered += 1;
        }
        assert_eq!(covered, n);
        for (u, v) in g.edges() {
            let cross = (r.s_set.contains(u) && r.t_set.contains(v))
                || (r.t_set.contains(u) && r.s_set.contains(v));
            assert!(!cross, "{ctx}: edge {u}-{v} crosses the split");
        }
        for &(v, _) in &r.one_cornerstones {
            assert!(components_without(g, &[v]).len() >= 2, "{ctx}: listed cut vertex");
        }
        for &((v, w), _) in &r.two_cornerstones {
            assert!(pair_eligible(g, v, w), "{ctx}");
            assert!(components_without(g, &[v, w]).len() >= 2, "{ctx}");
        }
    }

    /// Oracle: minimum over all 2-colorings of the remaining vertices with no
    /// cross edge of max(side sizes).
    fn brute_g(g: &Graph, removed: &[usize]) -> usize {
        let n = g.n();
        let rest: Vec<usize> = (0..n).filter(|v| !removed.contains(v)).collect();
        let mut best = usize::MAX;
        for mask in 0..(1u64 << rest.len()) {
            let side = |v: usize| mask >> rest.iter().position(|&x| x == v).unwrap() & 1;
            let valid = g.edges().iter().all(|&(u, v)| {
                removed.contains(&u) || removed.contains(&v) || side(u) == side(v)
            });
            if valid {
                let s = mask.count_ones() as usize;
                best = best.min(s.max(rest.len() - s));
            }
        }
        best
    }

    #[test]
    fn subset_sum_matches_brute_force_on_fixtures() {
        for spec in ["path:6", "star:5", "cycle:5", "spider:l=3,m=2"] {
            let g = gen(spec);
            for v in 0..g.n() {
                assert_eq!(g_one(&g, v), brute_g(&g, &[v]), "{spec} v={v}");
            }
            for v in 0..g.n() {
                for w in v + 1..g.n() {
                    if let Some(val) = g_two(&g, v, w) {
                        assert_eq!(val, brute_g(&g, &[v, w]), "{spec} ({v},{w})");
                    }
                }
            }
        }
    }

    #[test]
    fn disconnected_input_is_rejected() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert!(best_cornerstone(&g).is_err());
    }

    proptest! {
        #[test]
        fn g_matches_brute_force(n in 2usize..8, extra in 0.0f64..0.7, seed in 0u64..2000) {
            let g = Graph::random_connected(n, extra, seed);
            for v in 0..n {
                prop_assert_eq!(g_one(&g, v), brute_g(&g, &[v]));
            }
            for v in 0..n {
                for w in v + 1..n {
                    if let Some(val) = g_two(&g, v, w) {
                        prop_assert_eq!(val, brute_g(&g, &[v, w]));
                    }
                }
            }
        }

        #[test]
        fn cut_vertices_match_component_counting(n in 2usize..9, extra in 0.0f64..0.7, seed in 0u64..2000) {
            let g = Graph::random_connected(n, extra, seed);
            let fast = one_cornerstones(&g);
            let slow: Vec<usize> =
                (0..n).filter(|&v| components_without(&g, &[v]).len() >= 2).collect();
            prop_assert_eq!(fast, slow);
        }

        #[test]
        fn report_invariants_on_random_graphs(n in 2usize..9, extra in 0.0f64..0.7, seed in 0u64..2000) {
            let g = Graph::random_connected(n, extra, seed);
            let r = best_cornerstone(&g).unwrap();
            check_report(&g, &r, "random");
        }
    }
}
