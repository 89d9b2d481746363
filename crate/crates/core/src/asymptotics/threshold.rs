//! The orientability threshold `c*_{h,l,k}` and the critical-load tables.
//!
//! `ξ*` is the positive root of `G(ξ) = h k`, where
//!
//! ```text
//! G(ξ) = ξ E[(l - Bin(h, 1 - Q(ξ, k)))^+] / (Q(ξ, k + 1) P(Bin(h - 1, 1 - Q(ξ, k)) < l)),
//! ```
//!
//! and `c* = ξ* / (h P(Bin(h - 1, 1 - Q(ξ*, k)) < l))`. When `l = h - 1` and
//! `k = 1` the equation does not apply and `c* = 1 / (h (h - 1))`.

use serde::Serialize;

use super::functional::{check_triple, is_degenerate};
use super::roots::bracketed_root;
use super::special::poisson_split;
use super::AsymptoticsError;
use crate::exec::Exec;

/// Search interval for `ξ*`.
pub const XI_RANGE: (f64, f64) = (1e-9, 1e3);
const XI_GRID: usize = 2400;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdResult {
    pub h: u32,
    pub l: u32,
    pub k: u32,
    /// 0 for the degenerate case.
    pub xi_star: f64,
    pub c_star: f64,
    /// `l c* / k`.
    pub load: f64,
    /// `|G(ξ*) - h k| / (h k)`.
    pub residual: f64,
    pub bracket: (f64, f64),
    pub degenerate: bool,
}

/// `G(ξ)` from its factors. Both `E[(l - Bin)^+]` and `P(Bin < l)` carry a
/// factor `Q(ξ, k)^{h-l}` which is divided out analytically, so small `ξ`
/// does not underflow.
pub fn threshold_lhs(xi: f64, h: u32, l: u32, k: u32) -> f64 {
    let (keep, drop) = poisson_split(xi, k as u64);
    let tail = poisson_split(xi, k as u64 + 1).1;
    let (excess, below) = reduced_factors(h, l, keep, drop);
    xi * excess / (tail * below)
}

/// `E[(l - Bin(h, p))^+] / q^{h-l}` and `P(Bin(h - 1, p) < l) / q^{h-l}`.
fn reduced_factors(h: u32, l: u32, p: f64, q: f64) -> (f64, f64) {
    let choose = |n: u32, j: u32| (0..j).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64);
    let mut excess = 0.0;
    let mut below = 0.0;
    for j in 0..l {
        let pj = p.powi(j as i32);
        excess += (l - j) as f64 * choose(h, j) * pj * q.powi((l - j) as i32);
        below += choose(h - 1, j) * pj * q.powi((l - 1 - j) as i32);
    }
    (excess, below)
}

/// `P(Bin(h - 1, 1 - Q(ξ, k)) < l)`.
fn below_probability(xi: f64, h: u32, l: u32, k: u32) -> f64 {
    let (keep, drop) = poisson_split(xi, k as u64);
    super::special::binom_lt_pq(h - 1, keep, drop, l)
}

/// Solves for `ξ*` and `c*_{h,l,k}`.
pub fn xi_star(h: u32, l: u32, k: u32) -> Result<ThresholdResult, AsymptoticsError> {
    check_triple(h, l, k)?;
    if is_degenerate(h, l, k) {
        let c_star = 1.0 / (h as f64 * (h - 1) as f64);
        return Ok(ThresholdResult {
            h,
            l,
            k,
            xi_star: 0.0,
            c_star,
            load: l as f64 * c_star / k as f64,
            residual: 0.0,
            bracket: (0.0, 0.0),
            degenerate: true,
        });
    }
    let target = (h * k) as f64;
    let f = |xi: f64| threshold_lhs(xi, h, l, k) - target;
    let brackets = sign_changes(&f);
    let &(lo, hi) = match brackets.as_slice() {
        [] => return Err(AsymptoticsError::NoBracket { h, l, k }),
        [one] => one,
        many => return Err(AsymptoticsError::MultipleCrossings { h, l, k, count: many.len() }),
    };
    let (xi, blo, bhi) = bracketed_root(f, lo, hi, 1e-15 * hi);
    let residual = f(xi).abs() / target;
    let c_star = xi / (h as f64 * below_probability(xi, h, l, k));
    Ok(ThresholdResult {
        h,
        l,
        k,
        xi_star: xi,
        c_star,
        load: l as f64 * c_star / k as f64,
        residual,
        bracket: (blo, bhi),
        degenerate: false,
    })
}

/// Brackets of every sign change of `f` over a log grid on [`XI_RANGE`].
/// Grid points where `f` is not finite are skipped.
pub fn sign_changes<F: Fn(f64) -> f64>(f: &F) -> Vec<(f64, f64)> {
    let (a, b) = (XI_RANGE.0.ln(), XI_RANGE.1.ln());
    let pts: Vec<(f64, f64)> = (0..=XI_GRID)
        .map(|i| (a + (b - a) * i as f64 / XI_GRID as f64).exp())
        .map(|x| (x, f(x)))
        .filter(|(_, v)| v.is_finite())
        .collect();
    pts.windows(2)
        .filter(|w| w[0].1 == 0.0 || w[0].1.signum() != w[1].1.signum() && w[1].1 != 0.0)
        .map(|w| (w[0].0, w[1].0))
        .collect()
}

/// One cell of a critical-load table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableCell {
    pub h: u32,
    pub l: u32,
    pub k: u32,
    /// `l c* / k`, or `c*` itself for the degenerate cell.
    pub value: f64,
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LoadTable {
    /// Which parameter the rows vary: `"l"` or `"h"`.
    pub row_param: &'static str,
    pub row_values: Vec<u32>,
    pub ks: Vec<u32>,
    /// Row-major cells.
    pub cells: Vec<Vec<TableCell>>,
}

/// Maps (row value, k) to (h, l, k).
type CellParams = fn(u32, u32) -> (u32, u32, u32);

/// The two standard tables: `1` has `h = 4` with rows `l = 1..3`; `2` has
/// `l = 2` with rows `h = 5..7`. Columns are `k = 1..6`.
pub fn load_table(which: u8, exec: Exec) -> Result<LoadTable, AsymptoticsError> {
    let (row_param, rows, triple): (&'static str, Vec<u32>, CellParams) = match which {
        1 => ("l", vec![1, 2, 3], |r, k| (4, r, k)),
        2 => ("h", vec![5, 6, 7], |r, k| (r, 2, k)),
        _ => return Err(AsymptoticsError::InvalidParams(format!("no table {which}; expected 1 or 2"))),
    };
    let ks: Vec<u32> = (1..=6).collect();
    let flat = exec.map_range(rows.len() * ks.len(), |i| {
        let (h, l, k) = triple(rows[i / ks.len()], ks[i % ks.len()]);
        xi_star(h, l, k).map(|t| TableCell {
            h,
            l,
            k,
            value: if t.degenerate { t.c_star } else { t.load },
            degenerate: t.degenerate,
        })
    });
    let flat: Vec<TableCell> = flat.into_iter().collect::<Result<_, _>>()?;
    let cells = flat.chunks(ks.len()).map(<[TableCell]>::to_vec).collect();
    Ok(LoadTable { row_param, row_values: rows, ks, cells })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_cells() {
        let t = xi_star(4, 1, 1).unwrap();
        assert!((t.load - 0.9767701648).abs() < 5e-10);
        assert!(t.residual < 1e-12);
        assert!(t.xi_star > 0.0);
        let t = xi_star(5, 2, 3).unwrap();
        assert!((t.load - 0.9909792334).abs() < 5e-10);
    }

    #[test]
    fn degenerate_cell() {
        let t = xi_star(4, 3, 1).unwrap();
        assert!(t.degenerate);
        assert_eq!(t.c_star, 1.0 / 12.0);
    }

    #[test]
    fn small_xi_limit_is_finite() {
        // G(0+) = h (k + 1) / (h - l + 1)
        let g = threshold_lhs(1e-9, 7, 2, 6);
        assert!((g - 7.0 * 7.0 / 6.0).abs() < 1e-6, "{g}");
    }

    #[test]
    fn tables_have_expected_shape() {
        let t = load_table(1, Exec::Sequential).unwrap();
        assert_eq!(t.cells.len(), 3);
        assert!(t.cells[2][0].degenerate);
        assert!(t.cells.iter().flatten().filter(|c| c.degenerate).count() == 1);
        assert!(load_table(3, Exec::Sequential).is_err());
    }
}
