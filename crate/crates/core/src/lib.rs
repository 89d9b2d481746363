//! Orientability of random hypergraphs, maximum degree-constrained
//! subgraphs and the Gibbs/message-passing machinery that connects them.
//!
//! * [`graph`]: hypergraphs, constrained graphs, incidence graphs.
//! * [`local_ops`]: the single-vertex operators `R`, `D`, `Q`, `P`.
//! * [`message_passing`]: global finite-`z` and `z = ∞` dynamics.
//! * [`oracle`]: exact max-flow and enumeration ground truth.
//! * [`random`]: seeded samplers for the random models.
//! * [`asymptotics`]: closed-form limits, thresholds and tables.
//! * [`harness`]: Monte Carlo experiments and report output.
//! * [`io`]: the line-oriented graph text format.

pub mod asymptotics;
pub mod exec;
pub mod graph;
pub mod harness;
pub mod io;
pub mod local_ops;
pub mod message_passing;
pub mod oracle;
pub mod random;

pub use exec::Exec;
pub use graph::{
    incidence_graph, incidence_graph_strict, orientation_from_subgraph, Constrained,
    ConstrainedBipartiteGraph, ConstrainedGraph, GraphError, Hypergraph, Orientation,
    OrientationError, SpanningSubgraph,
};
