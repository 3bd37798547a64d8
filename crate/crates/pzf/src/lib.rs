//! Probabilistic zero forcing on graphs: simulation, exact expected
//! propagation times, throttling, structural analysis, and bound checking.
//!
//! A blue vertex `u` forces each of its white neighbors `v` independently
//! with probability `(1 + b(u)) / deg(u)`, where `b(u)` counts the blue
//! neighbors of `u`; all forces within a step happen simultaneously. Starting
//! from a nonempty blue set on a connected graph, every vertex is eventually
//! blue; the quantity of interest is the expected number of steps.
//!
//! Module map:
//!
//! - [`graph`]: graph type, deterministic and random families, radius, IO.
//! - [`engine`]: single steps, seeded trajectories, coupled runs.
//! - [`exact`]: exact expected propagation times, reach probabilities, and
//!   throttling via dynamic programming over blue-set bitmasks.
//! - [`estimate`]: parallel Monte Carlo estimation with confidence intervals.
//! - [`structure`]: cut vertices, cornerstone pairs, balanced partitions.
//! - [`modified`]: the instrumented seven-phase reference process.
//! - [`bounds`]: closed forms, binomial tails, and bound reports.
//! - [`cli`]: the `pzf` command-line front end.
//!
//! Randomness is counter-based: the uniform draw for a given (seed, directed
//! edge, time step) is a pure function with no hidden state, so runs replay
//! bit-for-bit and two coupled processes can consume identical randomness.

pub mod bounds;
pub mod cli;
pub mod engine;
pub mod estimate;
pub mod exact;
pub mod graph;
pub mod modified;
pub mod rng;
pub mod state;
pub mod structure;

pub use engine::Trajectory;
pub use estimate::EstimateResult;
pub use exact::ExactTable;
pub use graph::{FamilySpec, Graph};
pub use state::ColorState;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Bad family name or parameters in a generator spec.
    #[error("invalid graph family: {0}")]
    InvalidFamily(String),
    /// No connected sample was found within the retry budget.
    #[error("no connected G(n,p) sample after {attempts} attempts")]
    GnpDisconnected { attempts: u32 },
    /// Unparseable line in edge-list input.
    #[error("line {line}: malformed input: {msg}")]
    MalformedLine { line: usize, msg: String },
    /// Edge-list vertex id is not in `0..n`.
    #[error("line {line}: vertex {id} out of range for n={n}")]
    VertexOutOfRange { line: usize, id: usize, n: usize },
    /// Edge listed twice (in either orientation).
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    /// Edge from a vertex to itself.
    #[error("line {line}: self-loop at vertex {v}")]
    SelfLoop { line: usize, v: usize },
    /// Header edge count does not match the number of edge lines.
    #[error("expected {expected} edges, found {found}")]
    WrongEdgeCount { expected: usize, found: usize },
    /// Programmatic graph construction received invalid input.
    #[error("invalid graph: {0}")]
    BadGraph(String),
    /// Operation requires a connected graph.
    #[error("graph is disconnected")]
    Disconnected,
    /// Graph order exceeds the exact-solver state-space cap.
    #[error("graph order {n} exceeds the exact-solver cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    /// Vertex index out of range in an API argument.
    #[error("vertex {id} out of range for n={n}")]
    BadVertex { id: usize, n: usize },
    /// An operation precondition was violated.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// Numeric argument outside the supported range.
    #[error("invalid range: {0}")]
    InvalidRange(String),
    /// Unparseable bitset literal.
    #[error("invalid bitset literal: {0}")]
    InvalidBitset(String),
    /// A Monte Carlo estimate had truncated trials and is not trustworthy.
    #[error("{count} of {trials} trials hit the step cap; estimate is invalid")]
    TruncatedTrials { count: u64, trials: u64 },
    /// The modified process could make no further progress.
    #[error("modified process stalled: {0}")]
    Stalled(String),
    /// Command-line usage error.
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
