//! Message passing against the max-flow oracle.

use std::ops::RangeInclusive;

use rand::Rng;
use serde::Serialize;

use crate::exec::Exec;
use crate::graph::{incidence_graph, ConstrainedGraph};
use crate::message_passing::{indicator_dynamics_general, iterate_r, max_size_tree, MessageState, IndicatorState};
use crate::oracle::max_flow_m;
use crate::random::{random_tree, sample_h_n_m_h, stream_rng, Seed};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MpCheckConfig {
    pub seed: Seed,
    /// Random trees compared exactly.
    pub trees: usize,
    pub tree_sizes: RangeInclusive<usize>,
    pub tree_caps: RangeInclusive<u32>,
    /// Densities `c` of `H_{n, ⌊cn⌋, 2}` for the sparse-graph runs.
    pub densities: Vec<f64>,
    pub sparse_n: usize,
    pub sparse_trials: usize,
    /// Caps of the hyperedge and vertex sides of the incidence graph.
    pub l: u32,
    pub k: u32,
    pub max_rounds: usize,
    #[serde(skip)]
    pub exec: Exec,
}

impl Default for MpCheckConfig {
    fn default() -> Self {
        MpCheckConfig {
            seed: 0,
            trees: 500,
            tree_sizes: 1..=200,
            tree_caps: 1..=4,
            densities: vec![0.3],
            sparse_n: 10_000,
            sparse_trials: 100,
            l: 1,
            k: 1,
            max_rounds: 1000,
            exec: Exec::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TreeCheck {
    pub trees: usize,
    pub mismatches: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SparseCheck {
    pub c: f64,
    pub trials: usize,
    /// Trials whose 0/1 dynamics reached a fixed point.
    pub converged: usize,
    /// Converged trials whose size functional equals the flow value.
    pub exact: usize,
    /// Trials whose incidence graph contains a cycle.
    pub cyclic: usize,
    /// Non-converged trials whose incidence graph contains a cycle.
    pub cyclic_among_unconverged: usize,
    /// Mean `|value - M|` over converged trials.
    pub mean_abs_gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MpReport {
    pub trees: TreeCheck,
    pub sparse: Vec<SparseCheck>,
}

/// Tree size from the message-passing fixed point versus max flow, for one
/// random tree per stream.
fn tree_mismatch(cfg: &MpCheckConfig, stream: u64) -> bool {
    let mut rng = stream_rng(cfg.seed, stream);
    let n = rng.random_range(cfg.tree_sizes.clone());
    let tree = random_tree(&mut rng, n, cfg.tree_caps.clone());
    let mp = max_size_tree(&tree, Exec::Sequential).expect("random_tree returns a tree").size;
    let (bip, _) = tree.to_bipartite().expect("trees are bipartite");
    mp != max_flow_m(&bip).size
}

fn sparse_check(cfg: &MpCheckConfig, c: f64, index: usize) -> SparseCheck {
    struct Trial {
        converged: bool,
        exact: bool,
        cyclic: bool,
        gap: f64,
    }
    let trials = cfg.exec.map_range(cfg.sparse_trials, |t| {
        let stream = ((index as u64 + 1) << 32) | t as u64;
        let mut rng = stream_rng(cfg.seed, stream);
        let m = (c * cfg.sparse_n as f64).floor() as usize;
        let hg = sample_h_n_m_h(&mut rng, cfg.sparse_n, m, 2).expect("sparse density is feasible");
        let inc = incidence_graph(&hg, cfg.l, cfg.k).expect("caps are positive");
        let flow = max_flow_m(&inc).size as f64;
        let g = inc.to_general();
        let dynamics = indicator_dynamics_general(&g, cfg.max_rounds, Exec::Sequential);
        let gap = (dynamics.even_value - flow).abs();
        Trial { converged: dynamics.fixed_point, exact: dynamics.fixed_point && gap == 0.0, cyclic: !g.is_forest(), gap }
    });
    let converged: Vec<&Trial> = trials.iter().filter(|t| t.converged).collect();
    SparseCheck {
        c,
        trials: trials.len(),
        converged: converged.len(),
        exact: converged.iter().filter(|t| t.exact).count(),
        cyclic: trials.iter().filter(|t| t.cyclic).count(),
        cyclic_among_unconverged: trials.iter().filter(|t| !t.converged && t.cyclic).count(),
        mean_abs_gap: converged.iter().map(|t| t.gap).sum::<f64>() / converged.len().max(1) as f64,
    }
}

/// Exactness on random trees, and convergence/accuracy of the 0/1
/// dynamics on incidence graphs of sparse random graphs.
pub fn run_mp_vs_oracle(cfg: &MpCheckConfig) -> MpReport {
    let mismatches = cfg.exec.map_range(cfg.trees, |t| tree_mismatch(cfg, t as u64)).into_iter().filter(|&m| m).count();
    let sparse = cfg.densities.iter().enumerate().map(|(i, &c)| sparse_check(cfg, c, i)).collect();
    MpReport { trees: TreeCheck { trees: cfg.trees, mismatches }, sparse }
}

/// One message of one round, for trace output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MessageRow {
    pub round: usize,
    pub src: usize,
    pub dst: usize,
    pub value: f64,
}

/// Every message for rounds `0..=rounds`: the finite-`z` weights started
/// from zero when `z` is given, otherwise the 0/1 indicators started from
/// all ones.
pub fn message_trace(g: &ConstrainedGraph, z: Option<f64>, rounds: usize, exec: Exec) -> Vec<MessageRow> {
    let mut rows = Vec::new();
    let mut emit = |round: usize, values: &mut dyn Iterator<Item = f64>| {
        for (oe, value) in values.enumerate() {
            let (src, dst) = g.oriented(oe);
            rows.push(MessageRow { round, src, dst, value });
        }
    };
    match z {
        Some(z) => {
            let mut y = MessageState::zeros(g);
            for round in 0..=rounds {
                emit(round, &mut y.y.iter().map(|w| w.to_f64()));
                y = iterate_r(g, &y, z, exec);
            }
        }
        None => {
            let mut state = IndicatorState::ones(g);
            for round in 0..=rounds {
                emit(round, &mut state.bits.iter().map(|&b| if b { 1.0 } else { 0.0 }));
                state = crate::message_passing::iterate_p(g, &state, exec);
            }
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_tree_run_has_no_mismatch() {
        let cfg = MpCheckConfig { trees: 40, tree_sizes: 1..=30, densities: vec![], ..Default::default() };
        let rep = run_mp_vs_oracle(&cfg);
        assert_eq!(rep.trees.mismatches, 0);
    }

    #[test]
    fn trace_of_single_edge() {
        let g = ConstrainedGraph::with_uniform_cap(2, vec![(0, 1)], 1).unwrap();
        let rows = message_trace(&g, Some(2.0), 1, Exec::Sequential);
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[2], MessageRow { round: 1, src: 0, dst: 1, value: 2.0 });
        let rows = message_trace(&g, None, 2, Exec::Sequential);
        assert!(rows.iter().all(|r| r.value == 1.0));
    }
}
