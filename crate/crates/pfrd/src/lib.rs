//! Path-following replicator dynamic for revealing the cluster structure
//! of weighted graphs.
//!
//! The crate is organized around one iteration: multiply a probability
//! vector by its payoff direction and project back onto a capped simplex,
//! then sweep the cap upward and follow the solution path. On top of the
//! dynamic sit four applications: maximum clique extraction, densest
//! k-subgraph search, multi-line structure fitting, and high-density
//! region discovery, plus generators for the synthetic benchmarks they
//! are validated on.

pub mod applications;
pub mod error;
pub mod graph;
pub mod oracles;
pub mod points;
pub mod projection;
pub mod replicator;
pub mod structfit;
pub mod synth;

pub use error::{Error, Result};
pub use graph::{
    build_kernel_graph, evaluate_poly, evaluate_quadratic, load_edge_list, subgraph_weight,
    GradientField, Hypergraph, SparseGraph,
};
pub use projection::{min_support, project_simplex, project_truncated, CappedSimplexSpec};
pub use replicator::{
    evolve_fixed_epsilon, evolve_traced, kkt_report, polish_fixed_point, run_drd, run_pfrd,
    run_pfrd_streaming, step, verify_fixed_point, IterationConfig, KktReport, PathEntry,
    PathSchedule, SolutionPath, StateVector,
};
