//! The limiting functional `F_{l,k}(q, c)` of the uniform model, the maps
//! `g^A`, `g^B` and their derivatives, and the location of `inf_q F`
//! through the largest root of `Δ(x) = x - g^A(g^B(x))`.

use serde::Serialize;

use super::roots::{bracketed_root, golden_section};
use super::special::{binom_lt_pq, binomial_pmf_pq, poisson_pmf, poisson_split};
use super::AsymptoticsError;

/// Largest hyperedge size for which binomial sums are evaluated.
pub const MAX_H: u32 = 64;

/// `(h, l, k)` and a density `c` (hyperedges per vertex).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    pub h: u32,
    pub l: u32,
    pub k: u32,
    pub c: f64,
}

impl ModelParams {
    pub fn new(h: u32, l: u32, k: u32, c: f64) -> Result<Self, AsymptoticsError> {
        check_triple(h, l, k)?;
        if !(c > 0.0 && c.is_finite()) {
            return Err(AsymptoticsError::InvalidParams(format!("density c = {c} must be positive")));
        }
        Ok(ModelParams { h, l, k, c })
    }

    /// `l = h - 1` and `k = 1`: the threshold formula does not apply.
    pub fn degenerate(&self) -> bool {
        is_degenerate(self.h, self.l, self.k)
    }

    pub fn with_c(self, c: f64) -> Self {
        ModelParams { c, ..self }
    }

    /// Poisson mean `c h x` seen by one side.
    fn mean(&self, x: f64) -> f64 {
        self.c * self.h as f64 * x
    }
}

pub(crate) fn is_degenerate(h: u32, l: u32, k: u32) -> bool {
    l + 1 == h && k == 1
}

pub(crate) fn check_triple(h: u32, l: u32, k: u32) -> Result<(), AsymptoticsError> {
    if !(l >= 1 && h > l && k >= 1) {
        return Err(AsymptoticsError::InvalidParams(format!("need h > l >= 1 and k >= 1 (got h = {h}, l = {l}, k = {k})")));
    }
    if h > MAX_H {
        return Err(AsymptoticsError::InvalidParams(format!("h = {h} exceeds {MAX_H}")));
    }
    Ok(())
}

fn check_unit(name: &str, x: f64) {
    assert!((0.0..=1.0).contains(&x), "{name} = {x} outside [0, 1]");
}

/// `g^B(q) = 1 - Q(c h q, k)` as the pair `(g^B, 1 - g^B)`.
fn gb_pair(q: f64, p: &ModelParams) -> (f64, f64) {
    poisson_split(p.mean(q), p.k as u64)
}

/// `E[min(l, Bin(h, 1 - Q(c h q, k)))] + k Q(c h q, k + 1) / c`.
pub fn curly_f(q: f64, p: &ModelParams) -> f64 {
    check_unit("q", q);
    let (keep, drop) = gb_pair(q, p);
    let pmf = binomial_pmf_pq(p.h, keep, drop);
    let min_term: f64 = pmf.iter().enumerate().map(|(j, m)| (j as u32).min(p.l) as f64 * m).sum();
    let tail = poisson_split(p.mean(q), p.k as u64 + 1).1;
    min_term + p.k as f64 * tail / p.c
}

pub fn g_b(q: f64, p: &ModelParams) -> f64 {
    check_unit("q", q);
    gb_pair(q, p).0
}

/// `g^A(x) = P(Bin(h - 1, x) < l)`.
pub fn g_a(x: f64, p: &ModelParams) -> f64 {
    check_unit("x", x);
    binom_lt_pq(p.h - 1, x, 1.0 - x, p.l)
}

/// `g^A(g^B(q))`, keeping the precision of a small `1 - g^B(q)`.
pub fn g_ab(q: f64, p: &ModelParams) -> f64 {
    let (keep, drop) = gb_pair(q, p);
    binom_lt_pq(p.h - 1, keep, drop, p.l)
}

/// `h^A = -d g^A / dx`.
pub fn h_a(x: f64, p: &ModelParams) -> f64 {
    check_unit("x", x);
    let (h, l) = (p.h, p.l);
    if l == h - 1 {
        return (h - 1) as f64 * x.powi(h as i32 - 2);
    }
    // (h-1)(h-2)...(h-l) / (l-1)!
    let coef = (1..=l).map(|i| (h - i) as f64).product::<f64>() / (1..l).map(f64::from).product::<f64>();
    coef * x.powi(l as i32 - 1) * (1.0 - x).powi((h - l - 1) as i32)
}

/// `h^B = -d g^B / dq = c h e^{-c h q} (c h q)^{k-1} / (k-1)!`.
pub fn h_b(q: f64, p: &ModelParams) -> f64 {
    check_unit("q", q);
    let ch = p.c * p.h as f64;
    if p.k == 1 {
        return ch * (-ch * q).exp();
    }
    ch * poisson_pmf(p.k as u64 - 1, ch * q)
}

/// `Δ(x) = x - g^A(g^B(x))`.
pub fn delta(x: f64, p: &ModelParams) -> f64 {
    check_unit("x", x);
    x - g_ab(x, p)
}

/// Default number of grid intervals for the root scan of `Δ`.
pub const DELTA_GRID: usize = 10_000;
const ROOT_XTOL: f64 = 1e-13;

/// Sorted roots of `Δ` in `[0, 1]`. Sign changes on a uniform grid are
/// refined by bracketing; exact zeros on the grid count as roots. More than
/// three roots triggers one ×10 refinement before failing.
pub fn find_roots_delta(p: &ModelParams) -> Result<Vec<f64>, AsymptoticsError> {
    find_roots_delta_with(p, DELTA_GRID)
}

pub fn find_roots_delta_with(p: &ModelParams, grid: usize) -> Result<Vec<f64>, AsymptoticsError> {
    let d1 = delta(1.0, p);
    if d1 <= 0.0 {
        return Err(AsymptoticsError::Numerical(format!("Δ(1) = {d1} is not positive")));
    }
    let roots = scan_roots(|x| delta(x, p), grid);
    if roots.len() <= 3 {
        return Ok(roots);
    }
    let finer = scan_roots(|x| delta(x, p), grid * 10);
    if finer.len() <= 3 {
        Ok(finer)
    } else {
        Err(AsymptoticsError::TooManyRoots { found: finer.len() })
    }
}

pub(crate) fn scan_roots<F: Fn(f64) -> f64>(f: F, grid: usize) -> Vec<f64> {
    let xs: Vec<f64> = (0..=grid).map(|i| i as f64 / grid as f64).collect();
    let fs: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let mut roots: Vec<f64> = Vec::new();
    let push = |r: f64, roots: &mut Vec<f64>| {
        if roots.last().is_none_or(|&last| r - last > 1e-10) {
            roots.push(r);
        }
    };
    for i in 0..=grid {
        if fs[i] == 0.0 {
            push(xs[i], &mut roots);
        } else if i < grid && fs[i + 1] != 0.0 && fs[i].signum() != fs[i + 1].signum() {
            let (r, _, _) = bracketed_root(&f, xs[i], xs[i + 1], ROOT_XTOL);
            push(r, &mut roots);
        }
    }
    roots
}

/// Diagnostics of `inf_q F(q, c)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixedPointDiagnostics {
    /// Largest root `x*(c)` of `Δ`.
    pub x_star: f64,
    pub roots: Vec<f64>,
    /// `min(l, F(x*))`.
    pub inf_f: f64,
    /// A minimizer: `x*` if `F(x*) < l`, else 0.
    pub argmin: f64,
    /// The same infimum found by direct minimization over `[0, 1]`.
    pub direct_min: f64,
}

/// Agreement required between the fixed-point route and direct minimization.
pub const INF_F_TOL: f64 = 1e-9;

/// `inf_q F(q, c) = min(l, F(x*(c), c))`, cross-checked against a direct
/// grid + golden-section minimization.
pub fn inf_f(p: &ModelParams) -> Result<FixedPointDiagnostics, AsymptoticsError> {
    let roots = find_roots_delta(p)?;
    let x_star = *roots.last().expect("0 is always a root");
    let at_root = curly_f(x_star, p);
    let l = p.l as f64;
    let (inf_f, argmin) = if at_root < l { (at_root, x_star) } else { (l, 0.0) };
    let direct_min = minimize_on_unit(|q| curly_f(q, p)).1;
    if (inf_f - direct_min).abs() > INF_F_TOL {
        return Err(AsymptoticsError::Disagreement { fixed_point: inf_f, direct: direct_min });
    }
    Ok(FixedPointDiagnostics { x_star, roots, inf_f, argmin, direct_min })
}

/// Minimum of `f` over `[0, 1]`: a 4000-interval grid, then golden-section
/// refinement around the three best local grid minima.
pub(crate) fn minimize_on_unit<F: Fn(f64) -> f64>(f: F) -> (f64, f64) {
    const GRID: usize = 4000;
    let vals: Vec<f64> = (0..=GRID).map(|i| f(i as f64 / GRID as f64)).collect();
    let mut local: Vec<usize> = (0..=GRID)
        .filter(|&i| (i == 0 || vals[i] <= vals[i - 1]) && (i == GRID || vals[i] <= vals[i + 1]))
        .collect();
    local.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
    let mut best = (0.0, f64::INFINITY);
    for &i in local.iter().take(3) {
        let a = i.saturating_sub(1) as f64 / GRID as f64;
        let b = (i + 1).min(GRID) as f64 / GRID as f64;
        let (x, v) = golden_section(&f, a, b, 1e-12);
        for cand in [(x, v), (i as f64 / GRID as f64, vals[i])] {
            if cand.1 < best.1 {
                best = cand;
            }
        }
    }
    best
}
