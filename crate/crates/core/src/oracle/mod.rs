//! Ground truth for `M(G)` and the Gibbs measure on small graphs.
//!
//! [`flow`] computes `M(G)` on bipartite graphs of any size by max flow;
//! [`enumerate`] walks every admissible subgraph of a small graph (any
//! graph, bipartite or not).

pub mod enumerate;
pub mod flow;

pub use enumerate::{
    brute_force_m, gibbs_marginals_exact, partition_polynomial, GibbsExact, OracleError,
    PartitionPolynomial, ENUMERATION_LIMIT,
};
pub use flow::{max_flow_m, FlowNetwork, MaxFlowResult};
