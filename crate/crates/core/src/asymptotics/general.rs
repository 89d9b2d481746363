//! `F^A(q)` for a general pair of (degree, constraint) laws.
//!
//! ```text
//! F^A(q) = E[W^A ∧ D^A(g^B(q))] + (E D^A / E D^B) E[W^B 1(D^B(q) >= W^B + 1)]
//! g^B(q) = P(N^B(q) < W^B),   g^A(p) = P(N^A(p) < W^A)
//! ```
//!
//! `D(x)` keeps each of `D` points independently with probability `x`, and
//! `N` is the offspring count under the size-biased law. A Poisson degree
//! thins to a Poisson degree and is its own size-biased law, so those laws
//! are handled in closed form; finitely supported laws by exact binomial
//! sums.

use serde::Serialize;

use super::functional::{minimize_on_unit, scan_roots, INF_F_TOL};
use super::special::{binomial_pmf_pq, poisson_pmf, poisson_split};
use super::AsymptoticsError;
use crate::random::{BugwtSpec, TypeLaw};

const INDEPENDENCE_TOL: f64 = 1e-12;

/// Degree and constraint must be independent under `law`.
fn check_independent(law: &TypeLaw, side: &str) -> Result<(), AsymptoticsError> {
    let TypeLaw::Joint(pmf) = law else { return Ok(()) };
    let mut deg = std::collections::BTreeMap::<u32, f64>::new();
    let mut cap = std::collections::BTreeMap::<u32, f64>::new();
    let mut joint = std::collections::BTreeMap::<(u32, u32), f64>::new();
    for &(d, w, p) in pmf {
        *deg.entry(d).or_default() += p;
        *cap.entry(w).or_default() += p;
        *joint.entry((d, w)).or_default() += p;
    }
    for (&d, &pd) in &deg {
        for (&w, &pw) in &cap {
            let pj = joint.get(&(d, w)).copied().unwrap_or(0.0);
            if (pj - pd * pw).abs() > INDEPENDENCE_TOL {
                return Err(AsymptoticsError::InvalidParams(format!(
                    "{side}: degree and constraint are not independent at ({d}, {w})"
                )));
            }
        }
    }
    Ok(())
}

/// `E[f(Bin(d, x), w)]` under a finite joint law.
fn thinned_sum<F: Fn(u32, u32) -> f64>(pmf: &[(u32, u32, f64)], x: f64, f: F) -> f64 {
    pmf.iter()
        .map(|&(d, w, p)| {
            let inner: f64 = binomial_pmf_pq(d, x, 1.0 - x).iter().enumerate().map(|(j, m)| m * f(j as u32, w)).sum();
            p * inner
        })
        .sum()
}

/// `E[W ∧ D(x)]`.
fn min_thinned(law: &TypeLaw, x: f64) -> f64 {
    match law {
        TypeLaw::Joint(pmf) => thinned_sum(pmf, x, |j, w| j.min(w) as f64),
        TypeLaw::PoissonConst { mean, w } => {
            let m = mean * x;
            let below: f64 = (0..*w as u64).map(|j| j as f64 * poisson_pmf(j, m)).sum();
            below + *w as f64 * poisson_split(m, *w as u64).1
        }
    }
}

/// `E[W 1(D(x) >= W + 1)]`.
fn excess_thinned(law: &TypeLaw, x: f64) -> f64 {
    match law {
        TypeLaw::Joint(pmf) => thinned_sum(pmf, x, |j, w| if j > w { w as f64 } else { 0.0 }),
        TypeLaw::PoissonConst { mean, w } => *w as f64 * poisson_split(mean * x, *w as u64 + 1).1,
    }
}

/// `P(N(x) < W)` with `(N, W)` drawn from the size-biased law.
fn below_cap_size_biased(law: &TypeLaw, x: f64) -> f64 {
    match law {
        TypeLaw::Joint(_) => {
            let biased = law.size_biased().expect("finite law");
            thinned_sum(&biased, x, |j, w| if j < w { 1.0 } else { 0.0 })
        }
        TypeLaw::PoissonConst { mean, w } => poisson_split(mean * x, *w as u64).0,
    }
}

pub fn general_g_b(q: f64, spec: &BugwtSpec) -> f64 {
    below_cap_size_biased(&spec.b, q)
}

pub fn general_g_a(p: f64, spec: &BugwtSpec) -> f64 {
    below_cap_size_biased(&spec.a, p)
}

/// `F^A(q)`.
pub fn general_fa(q: f64, spec: &BugwtSpec) -> f64 {
    assert!((0.0..=1.0).contains(&q), "q = {q} outside [0, 1]");
    let ratio = spec.a.mean_degree() / spec.b.mean_degree();
    min_thinned(&spec.a, general_g_b(q, spec)) + ratio * excess_thinned(&spec.b, q)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneralInf {
    /// `min F^A` over the fixed points of `g^A ∘ g^B`.
    pub value: f64,
    pub fixed_points: Vec<f64>,
    /// Minimum of `F^A` over `[0, 1]` found directly.
    pub direct_min: f64,
}

/// `inf_q F^A(q)`, computed over the fixed points `q = g^A(g^B(q))` and
/// checked against direct minimization.
pub fn general_inf_fa(spec: &BugwtSpec) -> Result<GeneralInf, AsymptoticsError> {
    check_independent(&spec.a, "A")?;
    check_independent(&spec.b, "B")?;
    let fixed_points = scan_roots(|q| q - general_g_a(general_g_b(q, spec), spec), 10_000);
    if fixed_points.is_empty() {
        return Err(AsymptoticsError::Numerical("no fixed point of g^A ∘ g^B found".into()));
    }
    let value = fixed_points.iter().map(|&q| general_fa(q, spec)).fold(f64::INFINITY, f64::min);
    let direct_min = minimize_on_unit(|q| general_fa(q, spec)).1;
    if (value - direct_min).abs() > INF_F_TOL {
        return Err(AsymptoticsError::Disagreement { fixed_point: value, direct: direct_min });
    }
    Ok(GeneralInf { value, fixed_points, direct_min })
}
