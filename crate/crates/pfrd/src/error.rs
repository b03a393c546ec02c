use thiserror::Error;

/// Errors produced by graph construction, projection, and the evolution
/// pipelines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("self-loop on vertex {v} is not allowed")]
    SelfLoop { v: usize },

    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: usize, v: usize },

    #[error("negative weight {w} on edge ({u}, {v})")]
    NegativeWeight { u: usize, v: usize, w: f64 },

    #[error("vertex index {index} out of range for {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("hyperedge {edge:?} has a repeated vertex")]
    RepeatedVertex { edge: Vec<usize> },

    #[error("hyperedge weight must be positive, got {w}")]
    NonPositiveHyperedgeWeight { w: f64 },

    #[error("expected a vector of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("negative entry {value} at index {index}")]
    NegativeEntry { index: usize, value: f64 },

    #[error("need at least {required} points, got {got}")]
    TooFewPoints { required: usize, got: usize },

    #[error("bandwidth must be positive, got {0}")]
    NonPositiveBandwidth(f64),

    #[error("invalid cap {epsilon} for dimension {n}: must satisfy 1/n <= epsilon <= 1")]
    InvalidCap { n: usize, epsilon: f64 },

    #[error("projection input is identically zero")]
    AllZeroInput,

    #[error("state has a degenerate update: x * g(x) is identically zero")]
    DegenerateState,

    #[error("state is not feasible: {0}")]
    InfeasibleState(String),

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("cluster is empty at threshold {delta1}")]
    EmptyCluster { delta1: f64 },

    #[error("graph is weighted; clique extraction requires all weights equal to 1")]
    WeightedGraph,

    #[error("extracted vertex set is not a clique: {members:?}")]
    NotAClique { members: Vec<usize> },

    #[error("invalid subgraph size {k} for {n} vertices")]
    InvalidSubgraphSize { k: usize, n: usize },

    #[error("duplicate subgraph size {k}")]
    DuplicateSubgraphSize { k: usize },

    #[error("covariance matrix is not positive semidefinite")]
    NotPositiveSemidefinite,

    #[error("degree sequence could not be realized after {attempts} attempts")]
    UnrealizableDegrees { attempts: usize },

    #[error("cannot fit a line: all sample points coincide")]
    DegenerateFit,

    #[error("no structures were fitted")]
    NoStructures,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("oracle limit exceeded: {0}")]
    OracleLimit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
