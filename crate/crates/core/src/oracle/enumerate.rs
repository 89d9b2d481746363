//! Exhaustive enumeration of admissible subgraphs of small graphs.
//!
//! The walk fixes edges in index order and only includes an edge while both
//! endpoints have spare capacity, so every admissible subset is visited
//! exactly once and nothing else is.

use thiserror::Error;

use crate::graph::Constrained;

/// Largest edge count accepted by the enumerators.
pub const ENUMERATION_LIMIT: usize = 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {edges} edges; enumeration is limited to {limit}")]
    TooLarge { edges: usize, limit: usize },
}

fn check_size<G: Constrained + ?Sized>(g: &G) -> Result<(), OracleError> {
    if g.edge_count() > ENUMERATION_LIMIT {
        return Err(OracleError::TooLarge { edges: g.edge_count(), limit: ENUMERATION_LIMIT });
    }
    Ok(())
}

/// Calls `visit(mask)` for every admissible edge subset, as a bitmask over
/// edge indices.
fn for_each_admissible<G, F>(g: &G, mut visit: F)
where
    G: Constrained + ?Sized,
    F: FnMut(u32),
{
    let ends: Vec<(usize, usize)> = (0..g.edge_count()).map(|e| g.endpoints(e)).collect();
    let mut spare: Vec<u32> = (0..g.vertex_count()).map(|v| g.cap(v)).collect();
    walk(&ends, 0, 0, &mut spare, &mut visit);
}

fn walk<F: FnMut(u32)>(ends: &[(usize, usize)], e: usize, mask: u32, spare: &mut [u32], visit: &mut F) {
    if e == ends.len() {
        visit(mask);
        return;
    }
    walk(ends, e + 1, mask, spare, visit);
    let (u, v) = ends[e];
    if spare[u] > 0 && spare[v] > 0 {
        spare[u] -= 1;
        spare[v] -= 1;
        walk(ends, e + 1, mask | (1 << e), spare, visit);
        spare[u] += 1;
        spare[v] += 1;
    }
}

/// `M(G)` by enumeration.
pub fn brute_force_m<G: Constrained + ?Sized>(g: &G) -> Result<usize, OracleError> {
    check_size(g)?;
    let mut best = 0;
    for_each_admissible(g, |mask| best = best.max(mask.count_ones() as usize));
    Ok(best)
}

/// `Z(z) = Σ_s c_s z^s`, with `c_s` the number of admissible subgraphs with
/// `s` edges. The degree is `M(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionPolynomial {
    pub coefficients: Vec<u64>,
}

impl PartitionPolynomial {
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn evaluate(&self, z: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, &c| acc * z + c as f64)
    }

    pub fn admissible_count(&self) -> u64 {
        self.coefficients.iter().sum()
    }
}

pub fn partition_polynomial<G: Constrained + ?Sized>(g: &G) -> Result<PartitionPolynomial, OracleError> {
    check_size(g)?;
    let mut counts = vec![0u64; g.edge_count() + 1];
    for_each_admissible(g, |mask| counts[mask.count_ones() as usize] += 1);
    trim(&mut counts);
    Ok(PartitionPolynomial { coefficients: counts })
}

fn trim(counts: &mut Vec<u64>) {
    while counts.len() > 1 && *counts.last().unwrap() == 0 {
        counts.pop();
    }
}

/// Exact Gibbs marginals `P_z(B_e = 1)` and mean degrees `E_z[deg_B(v)]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GibbsExact {
    pub edge_marginals: Vec<f64>,
    pub mean_degrees: Vec<f64>,
}

/// Marginals of the measure `P_z(B) ∝ z^{|B|}` on admissible subgraphs.
///
/// Per-size counts are accumulated exactly; each `z^s` is evaluated as
/// `z^{s - s_ref}` with `s_ref = M(G)` when `z > 1` and 0 otherwise, so no
/// term exceeds 1.
pub fn gibbs_marginals_exact<G: Constrained + ?Sized>(g: &G, z: f64) -> Result<GibbsExact, OracleError> {
    check_size(g)?;
    assert!(z > 0.0 && z.is_finite(), "z must be positive and finite, got {z}");
    let m = g.edge_count();
    let mut total = vec![0u64; m + 1];
    // with_edge[e][s]: admissible subsets of size s containing e
    let mut with_edge = vec![vec![0u64; m + 1]; m];
    for_each_admissible(g, |mask| {
        let s = mask.count_ones() as usize;
        total[s] += 1;
        let mut rest = mask;
        while rest != 0 {
            let e = rest.trailing_zeros() as usize;
            with_edge[e][s] += 1;
            rest &= rest - 1;
        }
    });
    trim(&mut total);
    let top = total.len() - 1;
    let reference = if z > 1.0 { top as f64 } else { 0.0 };
    let weight: Vec<f64> = (0..=top).map(|s| ((s as f64 - reference) * z.ln()).exp()).collect();
    let norm: f64 = total.iter().zip(&weight).map(|(&c, &w)| c as f64 * w).sum();
    let edge_marginals: Vec<f64> = with_edge
        .iter()
        .map(|counts| counts.iter().zip(&weight).map(|(&c, &w)| c as f64 * w).sum::<f64>() / norm)
        .collect();
    let mut mean_degrees = vec![0.0; g.vertex_count()];
    for (e, &p) in edge_marginals.iter().enumerate() {
        let (u, v) = g.endpoints(e);
        mean_degrees[u] += p;
        mean_degrees[v] += p;
    }
    Ok(GibbsExact { edge_marginals, mean_degrees })
}
