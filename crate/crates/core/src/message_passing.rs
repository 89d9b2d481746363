//! Synchronous message passing on a degree-constrained graph.
//!
//! Two dynamics live on the oriented edges:
//!
//! * finite activity `z`: `Y_{i→j} ← z · R({Y_{ℓ→i} : ℓ ∈ ∂i \ j}, w_i)`,
//!   started from `Y = 0`. Even iterates increase, odd iterates decrease, and
//!   on a finite tree both meet at the unique fixed point, whose local
//!   conditioned measures are the exact Gibbs marginals.
//! * `z = ∞`: `I_{i→j} ← 1(Σ_{ℓ ∈ ∂i \ j} I_{ℓ→i} < w_i)`, started from all
//!   ones. On a finite tree it stops within `diameter + 1` rounds and the
//!   fixed point gives the maximum admissible subgraph size in closed form.
//!
//! Updates are Jacobi-style (read the old buffer, write a new one); each
//! round may be computed in parallel without changing the result.

use thiserror::Error;

use crate::exec::Exec;
use crate::graph::{Constrained, ConstrainedGraph};
use crate::local_ops::{d_op, edge_marginal, p_op, r_op, ExtWeight};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MpError {
    #[error("graph contains a cycle")]
    NotATree,
}

/// One weight per oriented edge (see [`ConstrainedGraph`] for the numbering).
#[derive(Debug, Clone, PartialEq)]
pub struct MessageState {
    pub y: Vec<ExtWeight>,
}

impl MessageState {
    pub fn zeros(g: &ConstrainedGraph) -> Self {
        MessageState { y: vec![ExtWeight::ZERO; g.oriented_count()] }
    }

    pub fn constant(g: &ConstrainedGraph, value: f64) -> Self {
        MessageState { y: vec![ExtWeight::new(value); g.oriented_count()] }
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    /// Largest coordinatewise absolute difference (infinite entries must
    /// agree exactly, otherwise the gap is infinite).
    pub fn max_gap(&self, other: &MessageState) -> f64 {
        self.y
            .iter()
            .zip(&other.y)
            .map(|(a, b)| match (a, b) {
                (ExtWeight::Finite(x), ExtWeight::Finite(y)) => (x - y).abs(),
                (ExtWeight::Infinite, ExtWeight::Infinite) => 0.0,
                _ => f64::INFINITY,
            })
            .fold(0.0, f64::max)
    }

    /// `self ≤ other` in every coordinate, up to `slack`.
    pub fn dominated_by(&self, other: &MessageState, slack: f64) -> bool {
        self.y.iter().zip(&other.y).all(|(a, b)| a.to_f64() <= b.to_f64() + slack)
    }
}

/// One bit per oriented edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndicatorState {
    pub bits: Vec<bool>,
}

impl IndicatorState {
    pub fn ones(g: &ConstrainedGraph) -> Self {
        IndicatorState { bits: vec![true; g.oriented_count()] }
    }

    pub fn zeros(g: &ConstrainedGraph) -> Self {
        IndicatorState { bits: vec![false; g.oriented_count()] }
    }

    /// Coordinatewise `self ≤ other`.
    pub fn le(&self, other: &IndicatorState) -> bool {
        self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GibbsParams {
    pub z: f64,
    pub tol: f64,
    pub max_rounds: usize,
}

impl GibbsParams {
    pub const DEFAULT_TOL: f64 = 1e-12;

    pub fn new(z: f64) -> Self {
        assert!(z > 0.0, "activity must be positive");
        GibbsParams { z, tol: Self::DEFAULT_TOL, max_rounds: 10_000 }
    }

    /// Round cap of `10 · (diameter + 1)`, enough for exact convergence on a
    /// finite tree.
    pub fn for_tree(g: &ConstrainedGraph, z: f64) -> Self {
        GibbsParams { max_rounds: 10 * (g.forest_diameter() + 1), ..Self::new(z) }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_max_rounds(mut self, rounds: usize) -> Self {
        self.max_rounds = rounds;
        self
    }
}

fn others_into(g: &ConstrainedGraph, y: &MessageState, oe: usize) -> (usize, Vec<ExtWeight>) {
    let (i, _) = g.oriented(oe);
    let back = ConstrainedGraph::reverse(oe) as u32;
    let others = g
        .incoming(i)
        .iter()
        .filter(|&&f| f != back)
        .map(|&f| y.y[f as usize])
        .collect();
    (i, others)
}

/// `R` evaluated on every oriented edge: `out[i→j] = R({Y_{ℓ→i}}_{ℓ≠j}, w_i)`.
pub fn r_global(g: &ConstrainedGraph, y: &MessageState, exec: Exec) -> Vec<f64> {
    let mut out = vec![0.0; g.oriented_count()];
    exec.fill_indexed(&mut out, |oe| {
        let (i, others) = others_into(g, y, oe);
        r_op(&others, g.caps()[i])
    });
    out
}

/// One synchronous round `Y ← z · R_G(Y)`.
pub fn iterate_r(g: &ConstrainedGraph, y: &MessageState, z: f64, exec: Exec) -> MessageState {
    let r = r_global(g, y, exec);
    MessageState { y: r.into_iter().map(|v| ExtWeight::Finite(z * v)).collect() }
}

/// Outcome of the bracketed fixed-point iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedPoint {
    /// Midpoint of the two envelopes.
    pub state: MessageState,
    /// Last even iterate (increasing sequence).
    pub lower: MessageState,
    /// Last odd iterate (decreasing sequence).
    pub upper: MessageState,
    pub rounds: usize,
    pub gap: f64,
    pub converged: bool,
}

/// Iterates `Y^{k+1} = z R_G(Y^k)` from `Y^0 = 0` until the even and odd
/// envelopes are within `tol` (max norm), or `max_rounds` applications of
/// `R_G` were spent. Non-convergence is reported, not an error.
pub fn solve_fixed_point(g: &ConstrainedGraph, params: GibbsParams, exec: Exec) -> FixedPoint {
    let mut lower = MessageState::zeros(g);
    let mut upper = iterate_r(g, &lower, params.z, exec);
    let mut rounds = 1;
    let mut gap = upper.max_gap(&lower);
    while gap > params.tol && rounds + 2 <= params.max_rounds {
        lower = iterate_r(g, &upper, params.z, exec);
        upper = iterate_r(g, &lower, params.z, exec);
        rounds += 2;
        gap = upper.max_gap(&lower);
    }
    let state = MessageState {
        y: lower
            .y
            .iter()
            .zip(&upper.y)
            .map(|(a, b)| ExtWeight::Finite(0.5 * (a.to_f64() + b.to_f64())))
            .collect(),
    };
    FixedPoint { state, lower, upper, rounds, gap, converged: gap <= params.tol }
}

/// Mean degree `D_v` of every vertex under the local conditioned measures
/// parametrised by the incoming messages.
pub fn gibbs_mean_degrees(g: &ConstrainedGraph, y: &MessageState) -> Vec<f64> {
    (0..g.vertex_count())
        .map(|v| {
            let incoming: Vec<ExtWeight> = g.incoming(v).iter().map(|&f| y.y[f as usize]).collect();
            d_op(&incoming, g.caps()[v])
        })
        .collect()
}

/// Probability that each (undirected) edge is selected, read off at the
/// edge's first endpoint.
pub fn gibbs_edge_marginals(g: &ConstrainedGraph, y: &MessageState) -> Vec<f64> {
    (0..g.edges().len())
        .map(|e| {
            // oriented edge 2e + 1 points into the first endpoint u
            let into_u = 2 * e + 1;
            let (u, _) = g.oriented(2 * e);
            let others: Vec<ExtWeight> = g
                .incoming(u)
                .iter()
                .filter(|&&f| f as usize != into_u)
                .map(|&f| y.y[f as usize])
                .collect();
            match y.y[into_u] {
                ExtWeight::Finite(v) => edge_marginal(v, r_op(&others, g.caps()[u])),
                ExtWeight::Infinite => {
                    if r_op(&others, g.caps()[u]) > 0.0 {
                        1.0
                    } else {
                        0.0
                    }
                }
            }
        })
        .collect()
}

/// `I_{i→j} = 1(Y_{i→j} > √z)`: messages that diverge with `z` become 1.
pub fn indicators_from_messages(y: &MessageState, z: f64) -> IndicatorState {
    let threshold = z.sqrt();
    IndicatorState { bits: y.y.iter().map(|v| v.to_f64() > threshold).collect() }
}

/// One synchronous round of the 0/1 dynamics.
pub fn iterate_p(g: &ConstrainedGraph, state: &IndicatorState, exec: Exec) -> IndicatorState {
    let inflow: Vec<u32> = (0..g.vertex_count())
        .map(|v| g.incoming(v).iter().filter(|&&f| state.bits[f as usize]).count() as u32)
        .collect();
    let mut bits = vec![false; g.oriented_count()];
    exec.fill_indexed(&mut bits, |oe| {
        let (i, _) = g.oriented(oe);
        let back = ConstrainedGraph::reverse(oe);
        let others = inflow[i] - state.bits[back] as u32;
        others < g.caps()[i]
    });
    IndicatorState { bits }
}

/// Same rule as [`iterate_p`], spelled out through [`p_op`] on each edge.
/// Slow; kept for cross-checking.
pub fn iterate_p_local(g: &ConstrainedGraph, state: &IndicatorState) -> IndicatorState {
    let bits = (0..g.oriented_count())
        .map(|oe| {
            let (i, _) = g.oriented(oe);
            let back = ConstrainedGraph::reverse(oe) as u32;
            let others: Vec<bool> = g
                .incoming(i)
                .iter()
                .filter(|&&f| f != back)
                .map(|&f| state.bits[f as usize])
                .collect();
            p_op(&others, g.caps()[i])
        })
        .collect();
    IndicatorState { bits }
}

/// Per-vertex term `w·1(s ≥ w+1) + min(w, s)` where `s` is the number of
/// incoming ones.
pub fn vertex_contributions(g: &ConstrainedGraph, state: &IndicatorState) -> Vec<u32> {
    (0..g.vertex_count())
        .map(|v| {
            let w = g.caps()[v];
            let s = g.incoming(v).iter().filter(|&&f| state.bits[f as usize]).count() as u32;
            let saturated = if s > w { w } else { 0 };
            saturated + w.min(s)
        })
        .collect()
}

/// Half the sum of [`vertex_contributions`]. Equals `M(G)` at the fixed point
/// on a finite tree; on other graphs it is only a heuristic value.
pub fn size_functional(g: &ConstrainedGraph, state: &IndicatorState) -> f64 {
    vertex_contributions(g, state).iter().map(|&c| c as f64).sum::<f64>() / 2.0
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeIndicators {
    pub state: IndicatorState,
    /// Rounds until the state stopped changing.
    pub rounds: usize,
}

/// Runs the 0/1 dynamics from all ones to its fixed point on a forest.
pub fn solve_indicator_tree(g: &ConstrainedGraph, exec: Exec) -> Result<TreeIndicators, MpError> {
    if !g.is_forest() {
        return Err(MpError::NotATree);
    }
    let limit = g.forest_diameter() + 2;
    let mut state = IndicatorState::ones(g);
    for round in 0..=limit {
        let next = iterate_p(g, &state, exec);
        if next == state {
            return Ok(TreeIndicators { state, rounds: round });
        }
        state = next;
    }
    unreachable!("0/1 dynamics did not settle within diameter + 2 rounds on a forest")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeMaxSize {
    pub size: usize,
    pub contributions: Vec<u32>,
    pub indicators: IndicatorState,
}

/// Maximum admissible subgraph size of a forest from the 0/1 fixed point.
pub fn max_size_tree(g: &ConstrainedGraph, exec: Exec) -> Result<TreeMaxSize, MpError> {
    let fixed = solve_indicator_tree(g, exec)?;
    let contributions = vertex_contributions(g, &fixed.state);
    let total: u64 = contributions.iter().map(|&c| c as u64).sum();
    assert!(total.is_multiple_of(2), "vertex contributions must sum to an even number on a forest");
    Ok(TreeMaxSize { size: (total / 2) as usize, contributions, indicators: fixed.state })
}

#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorDynamics {
    /// `I_0 = 1, I_1, …` up to the last computed round.
    pub history: Vec<IndicatorState>,
    /// Reached `I = P(I)`.
    pub fixed_point: bool,
    /// Reached `I = P(P(I))` with `I ≠ P(I)`.
    pub period_two: bool,
    /// Size functional at the last even and last odd iterate; both equal the
    /// fixed point's value when one was reached.
    pub even_value: f64,
    pub odd_value: f64,
}

/// Runs the 0/1 dynamics from all ones for up to `rounds` rounds on any
/// graph, stopping early once a fixed point or a 2-cycle is reached.
pub fn indicator_dynamics_general(g: &ConstrainedGraph, rounds: usize, exec: Exec) -> IndicatorDynamics {
    let mut history = vec![IndicatorState::ones(g)];
    let (mut fixed_point, mut period_two) = (false, false);
    for _ in 0..rounds {
        let next = iterate_p(g, history.last().unwrap(), exec);
        let len = history.len();
        if next == history[len - 1] {
            fixed_point = true;
            break;
        }
        if len >= 2 && next == history[len - 2] {
            history.push(next);
            period_two = true;
            break;
        }
        history.push(next);
    }
    let (even_value, odd_value) = if fixed_point {
        let v = size_functional(g, history.last().unwrap());
        (v, v)
    } else {
        let last = history.len() - 1;
        let even = &history[last - last % 2];
        let odd = if last == 0 { even } else { &history[last - (last + 1) % 2] };
        (size_functional(g, even), size_functional(g, odd))
    };
    IndicatorDynamics {
        even_value,
        odd_value,
        history,
        fixed_point,
        period_two,
    }
}
