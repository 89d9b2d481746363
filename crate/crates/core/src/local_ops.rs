//! Local operators at a single degree-constrained vertex.
//!
//! A vertex with cap `w` sees weights `Y_e` on its incoming edges. Under the
//! product Bernoulli measure with `P(B_e = 1) = Y_e / (1 + Y_e)` conditioned
//! on `Σ B_e ≤ w`, the marginal of edge `e` is `Y_e R_e / (1 + Y_e R_e)`,
//! where `R_e` ([`r_op`]) depends only on the other weights. [`d_op`] is the
//! conditioned mean degree, [`q_op`] the `z → ∞` limit of `z R_e(z X)`, and
//! [`p_op`] the 0/1 threshold rule used by the `z = ∞` dynamics.
//!
//! Infinite weights are a tagged value and are resolved before any
//! arithmetic, so `+∞` never comes from floating-point overflow.

use std::fmt;

/// Nonnegative weight that may be `+∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtWeight {
    Finite(f64),
    Infinite,
}

impl ExtWeight {
    pub const ZERO: ExtWeight = ExtWeight::Finite(0.0);

    /// Panics on negative or NaN input; `f64::INFINITY` maps to [`ExtWeight::Infinite`].
    pub fn new(value: f64) -> Self {
        assert!(value >= 0.0, "weights must be nonnegative, got {value}");
        if value.is_infinite() {
            ExtWeight::Infinite
        } else {
            ExtWeight::Finite(value)
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtWeight::Infinite)
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ExtWeight::Finite(v) => Some(v),
            ExtWeight::Infinite => None,
        }
    }

    /// The value as an `f64`, with `Infinite` mapped to `f64::INFINITY`.
    pub fn to_f64(self) -> f64 {
        self.finite().unwrap_or(f64::INFINITY)
    }
}

impl From<f64> for ExtWeight {
    fn from(v: f64) -> Self {
        ExtWeight::new(v)
    }
}

impl fmt::Display for ExtWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtWeight::Finite(v) => write!(f, "{v}"),
            ExtWeight::Infinite => f.write_str("inf"),
        }
    }
}

/// Elementary symmetric polynomials `e_0..=e_t` of `weights`, by the
/// degree-capped product recurrence.
pub fn elementary_symmetric(weights: &[f64], t: usize) -> Vec<f64> {
    let mut e = vec![0.0; t + 1];
    e[0] = 1.0;
    for (i, &y) in weights.iter().enumerate() {
        for j in (1..=t.min(i + 1)).rev() {
            e[j] += y * e[j - 1];
        }
    }
    e
}

/// `Σ_{S ⊆ E, |S| ≤ t} Π_{e∈S} Y_e`; the empty product is 1.
pub fn sym_trunc(weights: &[f64], t: usize) -> f64 {
    elementary_symmetric(weights, t).iter().sum()
}

/// `R_e` from the weights on `E \ e`, with constraint `w`.
///
/// If at least `w` of the other weights are infinite the result is 0.
/// Otherwise the infinite ones use up part of the budget and the ratio is
/// taken over the finite ones with the remaining budget `t = w - #∞`.
pub fn r_op(others: &[ExtWeight], w: u32) -> f64 {
    let infinite = others.iter().filter(|y| y.is_infinite()).count();
    if infinite >= w as usize {
        return 0.0;
    }
    let t = w as usize - infinite;
    let finite: Vec<f64> = others.iter().filter_map(|y| y.finite()).collect();
    ratio_below_top(&finite, t)
}

/// `Σ_{j<t} e_j / Σ_{j≤t} e_j`, for `t ≥ 1`.
fn ratio_below_top(finite: &[f64], t: usize) -> f64 {
    let e = elementary_symmetric(finite, t);
    let num: f64 = e[..t].iter().sum();
    num / (num + e[t])
}

/// Conditioned marginal `y r / (1 + y r)` of one finite edge.
pub fn edge_marginal(y: f64, r: f64) -> f64 {
    let yr = y * r;
    yr / (1.0 + yr)
}

/// Conditioned mean degree: the sum of the finite edges' marginals plus
/// `min(w, #∞)`.
pub fn d_op(weights: &[ExtWeight], w: u32) -> f64 {
    let infinite = weights.iter().filter(|y| y.is_infinite()).count();
    let mut others = Vec::with_capacity(weights.len().saturating_sub(1));
    let mut total = 0.0;
    for (i, y) in weights.iter().enumerate() {
        let Some(y) = y.finite() else { continue };
        others.clear();
        others.extend(weights.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v));
        total += edge_marginal(y, r_op(&others, w));
    }
    total + infinite.min(w as usize) as f64
}

/// `lim_{z→∞} z R_e(z X)` for `X ∈ [0, 1]^{E \ e}`: infinite when fewer than
/// `w` entries are positive, else `e_{w-1} / e_w` over the positive entries.
pub fn q_op(others: &[f64], w: u32) -> ExtWeight {
    if w == 0 {
        return ExtWeight::ZERO;
    }
    let positive: Vec<f64> = others.iter().copied().filter(|&x| x > 0.0).collect();
    if positive.len() < w as usize {
        return ExtWeight::Infinite;
    }
    let e = elementary_symmetric(&positive, w as usize);
    ExtWeight::Finite(e[w as usize - 1] / e[w as usize])
}

/// 1 iff the other incoming indicators sum to less than `w`.
pub fn p_op(others: &[bool], w: u32) -> bool {
    others.iter().filter(|&&b| b).count() < w as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_ops::ExtWeight::{Finite, Infinite};

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-14 * (1.0 + a.abs().max(b.abs()))
    }

    #[test]
    fn sym_trunc_examples() {
        assert_eq!(sym_trunc(&[], 0), 1.0);
        assert_eq!(sym_trunc(&[], 5), 1.0);
        assert_eq!(sym_trunc(&[1.0, 1.0], 1), 3.0);
        assert_eq!(sym_trunc(&[2.0, 3.0, 4.0], 2), 36.0);
        assert_eq!(sym_trunc(&[2.0, 3.0, 4.0], 0), 1.0);
        assert_eq!(sym_trunc(&[2.0, 3.0, 4.0], 9), 60.0);
    }

    #[test]
    fn r_op_examples() {
        assert!(close(r_op(&[Finite(1.0), Finite(1.0)], 1), 1.0 / 3.0));
        assert_eq!(r_op(&[Infinite], 1), 0.0);
        assert_eq!(r_op(&[], 1), 1.0);
        assert_eq!(r_op(&[], 4), 1.0);
        // one infinite neighbour uses one unit of budget
        assert!(close(r_op(&[Infinite, Finite(1.0), Finite(1.0)], 2), 1.0 / 3.0));
        // w = 0 is forced to zero
        assert_eq!(r_op(&[Finite(3.0)], 0), 0.0);
        assert_eq!(r_op(&[], 0), 0.0);
    }

    #[test]
    fn d_op_examples() {
        assert_eq!(d_op(&[Finite(0.0), Finite(0.0)], 2), 0.0);
        assert_eq!(d_op(&[Infinite, Infinite, Infinite], 2), 2.0);
        assert!(close(d_op(&[Finite(1.0), Finite(1.0)], 1), 2.0 / 3.0));
        assert_eq!(d_op(&[Finite(5.0)], 0), 0.0);
        // a single infinite edge takes the whole budget of w = 1
        assert_eq!(d_op(&[Infinite, Finite(7.0)], 1), 1.0);
    }

    #[test]
    fn q_op_examples() {
        assert_eq!(q_op(&[1.0, 1.0], 1), Finite(0.5));
        assert_eq!(q_op(&[0.0, 0.0], 1), Infinite);
        assert_eq!(q_op(&[0.25], 1), Finite(4.0));
        assert_eq!(q_op(&[0.5, 0.0], 2), Infinite);
    }

    #[test]
    fn p_op_examples() {
        assert!(!p_op(&[true, true], 2));
        assert!(p_op(&[], 1));
        assert!(p_op(&[true, false, true], 3));
        assert!(!p_op(&[], 0));
    }

    #[test]
    fn ext_weight_conversions() {
        assert_eq!(ExtWeight::new(f64::INFINITY), Infinite);
        assert_eq!(ExtWeight::new(2.0).to_f64(), 2.0);
        assert_eq!(Infinite.to_f64(), f64::INFINITY);
        assert_eq!(Infinite.to_string(), "inf");
    }

    #[test]
    #[should_panic]
    fn ext_weight_rejects_negative() {
        let _ = ExtWeight::new(-1.0);
    }
}
