//! Graph representation, family generators, radius, and edge-list IO.
//!
//! Vertices are dense integers `0..n`; graphs are simple and undirected.
//! The edge-list text format is a header line `n m` followed by `m` lines
//! `u v`. Serialization is canonical: each edge as `u v` with `u < v`,
//! edges sorted lexicographically.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::rng;
use crate::state::ColorState;
use crate::{Error, Result};

/// Simple undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Build from an explicit edge list. Rejects self-loops, duplicate edges
    /// (in either orientation), out-of-range endpoints, and `n = 0`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadGraph("graph must have at least one vertex".into()));
        }
        let mut adj = vec![Vec::new(); n];
        let mut seen = HashSet::new();
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::BadGraph(format!(
                    "edge {u}-{v} out of range for n={n}"
                )));
            }
            if u == v {
                return Err(Error::BadGraph(format!("self-loop at vertex {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::BadGraph(format!("duplicate edge {u}-{v}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, adj })
    }

    /// Vertex count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Edge count.
    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Degree of `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Is `u v` an edge?
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Induced subgraph on the blue vertices of `keep`, plus the map from new
    /// indices back to original vertex ids.
    pub fn induced(&self, keep: &ColorState) -> (Graph, Vec<usize>) {
        let verts: Vec<usize> = keep.iter_ones().collect();
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in verts.iter().enumerate() {
            local[v] = i;
        }
        let mut adj = vec![Vec::new(); verts.len()];
        for (i, &v) in verts.iter().enumerate() {
            for &w in &self.adj[v] {
                if local[w] != usize::MAX {
                    adj[i].push(local[w]);
                }
            }
        }
        (
            Graph {
                n: verts.len(),
                adj,
            },
            verts,
        )
    }

    /// Structural fingerprint (order- and label-sensitive hash).
    pub fn fingerprint(&self) -> u64 {
        let mut h = rng::mix64(self.n as u64);
        for (u, v) in self.edges() {
            h = rng::mix64(h ^ rng::mix64(((u as u64) << 32) | v as u64));
        }
        h
    }

    /// Random connected graph: a uniform attachment tree plus independent
    /// extra edges with probability `extra_p`. Deterministic in `seed` and
    /// connected by construction.
    pub fn random_connected(n: usize, extra_p: f64, seed: u64) -> Graph {
        assert!(n >= 1);
        let tree_seed = rng::derive_seed(seed, rng::DOMAIN_TREE, 0);
        let extra_seed = rng::derive_seed(seed, rng::DOMAIN_TREE, 1);
        let mut edges = Vec::new();
        let mut tree = HashSet::new();
        for v in 1..n {
            let parent = ((rng::edge_draw(tree_seed, v, 0, 0) * v as f64) as usize).min(v - 1);
            edges.push((parent, v));
            tree.insert((parent.min(v), parent.max(v)));
        }
        for u in 0..n {
            for v in u + 1..n {
                if !tree.contains(&(u, v)) && rng::edge_draw(extra_seed, u, v, 1) < extra_p {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, &edges).expect("construction is valid by design")
    }
}

/// A graph family plus its parameters, e.g. `path:5` or `star_chain:r=2,s=10`.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    /// Path on `n` vertices.
    Path { n: usize },
    /// Cycle on `n >= 3` vertices.
    Cycle { n: usize },
    /// Star with `leaves` leaves (order `leaves + 1`), center 0.
    Star { leaves: usize },
    /// Complete graph on `n` vertices.
    Complete { n: usize },
    /// `legs` paths of length `leg_len` attached to a center.
    Spider { legs: usize, leg_len: usize },
    /// `2r + 1` stars of `s` vertices each, centers joined in a path.
    /// Star `i` occupies vertices `i*s..(i+1)*s` with center `i*s`.
    StarChain { r: usize, s: usize },
    /// Erdős–Rényi G(n, p), resampled until connected.
    Gnp { n: usize, p: f64, seed: u64 },
}

impl FamilySpec {
    /// Build the graph. Deterministic given the parameters (and seed for gnp).
    pub fn generate(&self) -> Result<Graph> {
        match *self {
            FamilySpec::Path { n } => {
                require(n >= 1, "path needs n >= 1")?;
                Graph::from_edges(n, &chain(0, n))
            }
            FamilySpec::Cycle { n } => {
                require(n >= 3, "cycle needs n >= 3")?;
                let mut e = chain(0, n);
                e.push((n - 1, 0));
                Graph::from_edges(n, &e)
            }
            FamilySpec::Star { leaves } => {
                require(leaves >= 1, "star needs at least one leaf")?;
                let e: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
                Graph::from_edges(leaves + 1, &e)
            }
            FamilySpec::Complete { n } => {
                require(n >= 1, "complete graph needs n >= 1")?;
                let mut e = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        e.push((u, v));
                    }
                }
                Graph::from_edges(n, &e)
            }
            FamilySpec::Spider { legs, leg_len } => {
                require(legs >= 1 && leg_len >= 1, "spider needs l >= 1 and m >= 1")?;
                let mut e = Vec::new();
                for leg in 0..legs {
                    let base = 1 + leg * leg_len;
                    e.push((0, base));
                    e.extend(chain(base, leg_len));
                }
                Graph::from_edges(1 + legs * leg_len, &e)
            }
            FamilySpec::StarChain { r, s } => {
                require(r >= 1 && s >= 1, "star_chain needs r >= 1 and s >= 1")?;
                let stars = 2 * r + 1;
                let mut e = Vec::new();
                for i in 0..stars {
                    let center = i * s;
                    for leaf in 1..s {
                        e.push((center, center + leaf));
                    }
                    if i + 1 < stars {
                        e.push((center, (i + 1) * s));
                    }
                }
                Graph::from_edges(stars * s, &e)
            }
            FamilySpec::Gnp { n, p, seed } => {
                require(n >= 1, "gnp needs n >= 1")?;
                require(p > 0.0 && p <= 1.0, "gnp needs 0 < p <= 1")?;
                const ATTEMPTS: u32 = 100;
                for attempt in 0..ATTEMPTS {
                    let aseed = rng::derive_seed(seed, rng::DOMAIN_GNP, attempt as u64);
                    let mut e = Vec::new();
                    for u in 0..n {
                        for v in u + 1..n {
                            if rng::edge_draw(aseed, u, v, 0) < p {
                                e.push((u, v));
                            }
                        }
                    }
                    let g = Graph::from_edges(n, &e)?;
                    if is_connected(&g) {
                        return Ok(g);
                    }
                }
                Err(Error::GnpDisconnected { attempts: ATTEMPTS })
            }
        }
    }
}

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidFamily(msg.to_string()))
    }
}

fn chain(base: usize, len: usize) -> Vec<(usize, usize)> {
    (0..len.saturating_sub(1))
        .map(|i| (base + i, base + i + 1))
        .collect()
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Path { n } => write!(f, "path:{n}"),
            FamilySpec::Cycle { n } => write!(f, "cycle:{n}"),
            FamilySpec::Star { leaves } => write!(f, "star:{leaves}"),
            FamilySpec::Complete { n } => write!(f, "complete:{n}"),
            FamilySpec::Spider { legs, leg_len } => write!(f, "spider:l={legs},m={leg_len}"),
            FamilySpec::StarChain { r, s } => write!(f, "star_chain:r={r},s={s}"),
            FamilySpec::Gnp { n, p, seed } => write!(f, "gnp:n={n},p={p},seed={seed}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = |msg: String| Error::InvalidFamily(msg);
        let (family, params) = text
            .split_once(':')
            .ok_or_else(|| bad(format!("expected 'family:params', got '{text}'")))?;
        let single = |what: &str| -> Result<usize> {
            params
                .parse::<usize>()
                .map_err(|_| bad(format!("{family} expects a single integer ({what}): '{params}'")))
        };
        match family {
            "path" => Ok(FamilySpec::Path { n: single("n")? }),
            "cycle" => Ok(FamilySpec::Cycle { n: single("n")? }),
            "star" => Ok(FamilySpec::Star { leaves: single("leaf count")? }),
            "complete" => Ok(FamilySpec::Complete { n: single("n")? }),
            "spider" => {
                let kv = parse_kv(family, params, &["l", "m"])?;
                Ok(FamilySpec::Spider {
                    legs: parse_int(family, &kv, "l")?,
                    leg_len: parse_int(family, &kv, "m")?,
                })
            }
            "star_chain" => {
                let kv = parse_kv(family, params, &["r", "s"])?;
                Ok(FamilySpec::StarChain {
                    r: parse_int(family, &kv, "r")?,
                    s: parse_int(family, &kv, "s")?,
                })
            }
            "gnp" => {
                let kv = parse_kv(family, params, &["n", "p", "seed"])?;
                let p: f64 = kv
                    .iter()
                    .find(|(k, _)| k == "p")
                    .ok_or_else(|| bad("gnp requires key 'p'".into()))?
                    .1
                    .parse()
                    .map_err(|_| bad("gnp key 'p' must be a real number".into()))?;
                let seed = match kv.iter().find(|(k, _)| k == "seed") {
                    Some((_, v)) => v
                        .parse::<u64>()
                        .map_err(|_| bad("gnp key 'seed' must be a 64-bit integer".into()))?,
                    None => 0,
                };
                Ok(FamilySpec::Gnp {
                    n: parse_int("gnp", &kv, "n")?,
                    p,
                    seed,
                })
            }
            other => Err(bad(format!("unknown family '{other}'"))),
        }
    }
}

fn parse_kv(family: &str, params: &str, allowed: &[&str]) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for piece in params.split(',') {
        let (k, v) = piece.split_once('=').ok_or_else(|| {
            Error::InvalidFamily(format!("{family}: expected key=value, got '{piece}'"))
        })?;
        if !allowed.contains(&k) {
            return Err(Error::InvalidFamily(format!(
                "{family}: unknown key '{k}' (allowed: {})",
                allowed.join(", ")
            )));
        }
        out.push((k.to_string(), v.to_string()));
    }
    Ok(out)
}

fn parse_int(family: &str, kv: &[(String, String)], key: &str) -> Result<usize> {
    let (_, v) = kv
        .iter()
        .find(|(k, _)| k == key)
        .ok_or_else(|| Error::InvalidFamily(format!("{family} requires key '{key}'")))?;
    v.parse::<usize>()
        .map_err(|_| Error::InvalidFamily(format!("{family} key '{key}' must be an integer")))
}

/// Breadth-first distances from `src` (`usize::MAX` marks unreachable).
pub fn bfs_distances(g: &Graph, src: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    let mut queue = std::collections::VecDeque::new();
    dist[src] = 0;
    queue.push_back(src);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// True iff a single search from vertex 0 reaches all `n` vertices.
pub fn is_connected(g: &Graph) -> bool {
    bfs_distances(g, 0).iter().all(|&d| d != usize::MAX)
}

/// Minimum eccentricity. Errors on disconnected graphs.
pub fn radius(g: &Graph) -> Result<usize> {
    Ok(eccentricities(g)?.into_iter().min().expect("n >= 1"))
}

/// Lowest-index vertex of minimum eccentricity. Errors on disconnected graphs.
pub fn center_vertex(g: &Graph) -> Result<usize> {
    let ecc = eccentricities(g)?;
    let best = *ecc.iter().min().expect("n >= 1");
    Ok(ecc.iter().position(|&e| e == best).unwrap())
}

fn eccentricities(g: &Graph) -> Result<Vec<usize>> {
    (0..g.n())
        .map(|v| {
            let dist = bfs_distances(g, v);
            let ecc = *dist.iter().max().unwrap();
            if ecc == usize::MAX {
                Err(Error::Disconnected)
            } else {
                Ok(ecc)
            }
        })
        .collect()
}

/// Parse the edge-list text format (`n m` header then `m` lines `u v`).
pub fn parse_graph(text: &str) -> Result<Graph> {
    let lines: Vec<&str> = text.lines().collect();
    let header = lines
        .first()
        .map(|l| l.trim())
        .filter(|l| !l.is_empty())
        .ok_or_else(|| Error::MalformedLine {
            line: 1,
            msg: "empty input".into(),
        })?;
    let mut it = header.split_whitespace();
    let (n, m) = match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) => {
            let n = a.parse::<usize>().map_err(|_| Error::MalformedLine {
                line: 1,
                msg: format!("bad vertex count '{a}'"),
            })?;
            let m = b.parse::<usize>().map_err(|_| Error::MalformedLine {
                line: 1,
                msg: format!("bad edge count '{b}'"),
            })?;
            (n, m)
        }
        _ => {
            return Err(Error::MalformedLine {
                line: 1,
                msg: format!("expected header 'n m', got '{header}'"),
            })
        }
    };
    if n == 0 {
        return Err(Error::MalformedLine {
            line: 1,
            msg: "vertex count must be at least 1".into(),
        });
    }
    let mut adj = vec![Vec::new(); n];
    let mut seen = HashSet::new();
    for i in 0..m {
        let line_no = i + 2;
        let raw = lines.get(i + 1).map(|l| l.trim()).unwrap_or("");
        if raw.is_empty() {
            return Err(Error::WrongEdgeCount {
                expected: m,
                found: i,
            });
        }
        let mut it = raw.split_whitespace();
        let (u, v) = match (it.next(), it.next(), it.next()) {
            (Some(a), Some(b), None) => {
                let parse = |tok: &str| {
                    tok.parse::<usize>().map_err(|_| Error::MalformedLine {
                        line: line_no,
                        msg: format!("bad vertex id '{tok}'"),
                    })
                };
                (parse(a)?, parse(b)?)
            }
            _ => {
                return Err(Error::MalformedLine {
                    line: line_no,
                    msg: format!("expected 'u v', got '{raw}'"),
                })
            }
        };
        for id in [u, v] {
            if id >= n {
                return Err(Error::VertexOutOfRange {
                    line: line_no,
                    id,
                    n,
                });
            }
        }
        if u == v {
            return Err(Error::SelfLoop { line: line_no, v });
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::DuplicateEdge { line: line_no, u, v });
        }
        adj[u].push(v);
        adj[v].push(u);
    }
    let extra = lines
        .iter()
        .skip(m + 1)
        .filter(|l| !l.trim().is_empty())
        .count();
    if extra > 0 {
        return Err(Error::WrongEdgeCount {
            expected: m,
            found: m + extra,
        });
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    Ok(Graph { n, adj })
}

/// Canonical edge-list text for `g` (inverse of [`parse_graph`]).
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = format!("{} {}", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("\n{u} {v}"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gen(text: &str) -> Graph {
        text.parse::<FamilySpec>().unwrap().generate().unwrap()
    }

    #[test]
    fn path_three_has_expected_edges() {
        let g = gen("path:3");
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn star_chain_r1_s3_layout() {
        let g = gen("star_chain:r=1,s=3");
        assert_eq!(g.n(), 9);
        // Three stars of 3 vertices; centers 0, 3, 6 joined in a chain.
        for center in [0, 3, 6] {
            assert!(g.has_edge(center, center + 1) && g.has_edge(center, center + 2));
        }
        assert!(g.has_edge(0, 3) && g.has_edge(3, 6));
        assert!(!g.has_edge(0, 6));
        assert_eq!(g.edge_count(), 8);
    }

    #[test]
    fn complete_four_has_six_edges() {
        assert_eq!(gen("complete:4").edge_count(), 6);
    }

    #[test]
    fn spider_shape() {
        let g = gen("spider:l=3,m=2");
        assert_eq!(g.n(), 7);
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(radius(&g).unwrap(), 2);
    }

    #[test]
    fn radius_values() {
        assert_eq!(radius(&gen("star:5")).unwrap(), 1);
        assert_eq!(radius(&gen("path:5")).unwrap(), 2);
        assert_eq!(radius(&gen("star_chain:r=2,s=4")).unwrap(), 3);
        for n in 1..=9 {
            assert_eq!(radius(&gen(&format!("path:{n}"))).unwrap(), n / 2);
        }
        for n in 2..=6 {
            assert_eq!(radius(&gen(&format!("complete:{n}"))).unwrap(), 1);
        }
        for (r, s) in [(1, 2), (1, 5), (2, 2), (3, 4)] {
            let g = gen(&format!("star_chain:r={r},s={s}"));
            assert_eq!(radius(&g).unwrap(), r + 1, "star_chain r={r} s={s}");
        }
    }

    #[test]
    fn radius_errors_on_disconnected() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(radius(&g), Err(Error::Disconnected)));
    }

    #[test]
    fn connectivity_checks() {
        assert!(is_connected(&gen("path:4")));
        assert!(is_connected(&gen("complete:1")));
        assert!(!is_connected(&Graph::from_edges(2, &[]).unwrap()));
    }

    #[test]
    fn gnp_is_deterministic_and_connected() {
        let a = gen("gnp:n=50,p=0.1,seed=7");
        let b = gen("gnp:n=50,p=0.1,seed=7");
        assert_eq!(a, b);
        assert!(is_connected(&a));
        let c = gen("gnp:n=50,p=0.1,seed=8");
        assert_ne!(a, c, "different seeds should give different samples");
    }

    #[test]
    fn gnp_p_one_is_complete() {
        let g = gen("gnp:n=6,p=1,seed=0");
        assert_eq!(g.edge_count(), 15);
    }

    #[test]
    fn family_spec_round_trips_through_display() {
        for text in [
            "path:5",
            "cycle:6",
            "star:4",
            "complete:3",
            "spider:l=3,m=2",
            "star_chain:r=2,s=10",
            "gnp:n=50,p=0.1,seed=7",
        ] {
            let spec: FamilySpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
        }
    }

    #[test]
    fn family_spec_rejects_bad_input() {
        assert!("path".parse::<FamilySpec>().is_err());
        assert!("blob:3".parse::<FamilySpec>().is_err());
        assert!("path:x".parse::<FamilySpec>().is_err());
        assert!("star_chain:r=2".parse::<FamilySpec>().is_err());
        assert!("star_chain:r=2,s=3,q=1".parse::<FamilySpec>().is_err());
        assert!("gnp:n=5,p=zz,seed=1".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn generators_reject_degenerate_parameters() {
        assert!(FamilySpec::Path { n: 0 }.generate().is_err());
        assert!(FamilySpec::Cycle { n: 2 }.generate().is_err());
        assert!(FamilySpec::Star { leaves: 0 }.generate().is_err());
        assert!(FamilySpec::StarChain { r: 0, s: 3 }.generate().is_err());
        assert!(FamilySpec::Gnp { n: 5, p: 0.0, seed: 1 }.generate().is_err());
        assert!(FamilySpec::Gnp { n: 5, p: 1.5, seed: 1 }.generate().is_err());
    }

    #[test]
    fn parse_accepts_canonical_form() {
        let g = parse_graph("3 2\n0 1\n1 2").unwrap();
        assert_eq!(g, gen("path:3"));
    }

    #[test]
    fn parse_rejects_each_error_distinctly() {
        assert!(matches!(
            parse_graph("2 1\n0 0"),
            Err(Error::SelfLoop { line: 2, v: 0 })
        ));
        assert!(matches!(
            parse_graph("3 2\n0 1\n1 0"),
            Err(Error::DuplicateEdge { line: 3, .. })
        ));
        assert!(matches!(
            parse_graph("3 1\n0 7"),
            Err(Error::VertexOutOfRange { line: 2, id: 7, n: 3 })
        ));
        assert!(matches!(
            parse_graph("junk"),
            Err(Error::MalformedLine { line: 1, .. })
        ));
        assert!(matches!(
            parse_graph("3 2\n0 1 9\n1 2"),
            Err(Error::MalformedLine { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("3 3\n0 1\n1 2"),
            Err(Error::WrongEdgeCount { expected: 3, found: 2 })
        ));
        assert!(matches!(
            parse_graph("3 1\n0 1\n1 2"),
            Err(Error::WrongEdgeCount { expected: 1, found: 2 })
        ));
        assert!(matches!(parse_graph(""), Err(Error::MalformedLine { line: 1, .. })));
    }

    #[test]
    fn serialize_is_canonical() {
        assert_eq!(serialize_graph(&gen("path:3")), "3 2\n0 1\n1 2");
        assert_eq!(serialize_graph(&gen("complete:1")), "1 0");
    }

    #[test]
    fn parse_tolerates_trailing_blank_lines() {
        assert!(parse_graph("3 2\n0 1\n1 2\n\n").is_ok());
    }

    #[test]
    fn induced_subgraph_maps_back() {
        let g = gen("path:5");
        let keep = ColorState::from_indices(5, &[1, 2, 4]).unwrap();
        let (sub, map) = g.induced(&keep);
        assert_eq!(sub.n(), 3);
        assert_eq!(map, vec![1, 2, 4]);
        assert!(sub.has_edge(0, 1));
        assert!(!sub.has_edge(1, 2), "2-4 is not an edge of the path");
    }

    #[test]
    fn random_connected_is_connected_and_deterministic() {
        for i in 0..20 {
            let g = Graph::random_connected(3 + i, 0.2, i as u64);
            assert!(is_connected(&g));
            assert_eq!(g, Graph::random_connected(3 + i, 0.2, i as u64));
        }
    }

    proptest! {
        #[test]
        fn parse_serialize_identity_on_generated_graphs(
            n in 1usize..30,
            p in 0.05f64..0.95,
            seed in 0u64..5000,
        ) {
            let g = Graph::random_connected(n, p, seed);
            prop_assert_eq!(parse_graph(&serialize_graph(&g)).unwrap(), g);
        }

        #[test]
        fn families_are_connected(which in 0usize..6, a in 1usize..8, b in 1usize..6) {
            let spec = match which {
                0 => FamilySpec::Path { n: a },
                1 => FamilySpec::Cycle { n: a + 2 },
                2 => FamilySpec::Star { leaves: a },
                3 => FamilySpec::Complete { n: a },
                4 => FamilySpec::Spider { legs: a, leg_len: b },
                _ => FamilySpec::StarChain { r: a.min(3), s: b },
            };
            let g = spec.generate().unwrap();
            prop_assert!(is_connected(&g));
        }
    }
}
