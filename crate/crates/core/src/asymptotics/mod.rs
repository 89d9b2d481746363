//! Limit theory of the uniform and general models: Poisson and binomial
//! tails, the functional `F`, the maps `g^A`, `g^B`, the threshold `c*`,
//! and the critical-load tables.

use thiserror::Error;

pub mod functional;
pub mod general;
pub mod roots;
pub mod special;
pub mod threshold;

pub use functional::{
    curly_f, delta, find_roots_delta, find_roots_delta_with, g_a, g_ab, g_b, h_a, h_b, inf_f,
    FixedPointDiagnostics, ModelParams, DELTA_GRID, INF_F_TOL,
};
pub use general::{general_fa, general_g_a, general_g_b, general_inf_fa, GeneralInf};
pub use special::{binom_tail_lt, poisson_pmf, poisson_split, poisson_tail};
pub use threshold::{load_table, sign_changes, threshold_lhs, xi_star, LoadTable, TableCell, ThresholdResult};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AsymptoticsError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("no sign change of the threshold equation for (h, l, k) = ({h}, {l}, {k})")]
    NoBracket { h: u32, l: u32, k: u32 },
    #[error("threshold equation for (h, l, k) = ({h}, {l}, {k}) changes sign {count} times")]
    MultipleCrossings { h: u32, l: u32, k: u32, count: usize },
    #[error("Δ has {found} roots in [0, 1] even on the refined grid")]
    TooManyRoots { found: usize },
    #[error("fixed-point infimum {fixed_point} disagrees with direct minimum {direct}")]
    Disagreement { fixed_point: f64, direct: f64 },
    #[error("numerical failure: {0}")]
    Numerical(String),
}
