//! The uniform model `H_{n,m,h}` and the binomial model `H_{n,p,h}`.

use std::collections::HashSet;

use rand::Rng;

use super::RandomError;
use crate::graph::Hypergraph;

/// `C(n, k)` in 128 bits, or `None` on overflow.
pub fn binomial_u128(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        // acc = C(n, j); acc * (n - j) / (j + 1) is exact
        acc = acc.checked_mul((n - j) as u128)? / (j as u128 + 1);
    }
    Some(acc)
}

fn check_edge_size(n: usize, h: usize) -> Result<(), RandomError> {
    if h == 0 || h > n {
        return Err(RandomError::BadEdgeSize { n, h });
    }
    Ok(())
}

/// Uniform `h`-subset of `0..n`, sorted.
fn random_subset<R: Rng + ?Sized>(rng: &mut R, n: usize, h: usize, out: &mut Vec<u32>) {
    out.clear();
    while out.len() < h {
        let v = rng.random_range(0..n as u32);
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out.sort_unstable();
}

/// `m` distinct hyperedges, uniform over all sets of `m` distinct
/// `h`-subsets of `0..n`. Subsets are drawn one at a time and a subset already
/// present is redrawn. When more than half of all subsets are requested the
/// collection is drawn as a uniform index set instead, so rejection never
/// dominates.
pub fn sample_h_n_m_h<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize, h: usize) -> Result<Hypergraph, RandomError> {
    check_edge_size(n, h)?;
    let available = binomial_u128(n as u64, h as u64).unwrap_or(u128::MAX);
    if m as u128 > available {
        return Err(RandomError::Infeasible { n, m, h, available });
    }
    let mut members = Vec::with_capacity(m * h);
    let mut edge_ptr = Vec::with_capacity(m + 1);
    edge_ptr.push(0);
    if 2 * m as u128 > available {
        // available <= 2m fits in usize here
        for rank in rand::seq::index::sample(rng, available as usize, m) {
            members.extend(unrank_colex(rank as u128, n, h));
            edge_ptr.push(members.len());
        }
    } else {
        let mut seen: HashSet<Vec<u32>> = HashSet::with_capacity(m);
        let mut e = Vec::with_capacity(h);
        while edge_ptr.len() <= m {
            random_subset(rng, n, h, &mut e);
            if seen.insert(e.clone()) {
                members.extend_from_slice(&e);
                edge_ptr.push(members.len());
            }
        }
    }
    let g = Hypergraph::from_sorted_parts(n, edge_ptr, members);
    debug_assert!(is_simple(&g, h));
    Ok(g)
}

fn is_simple(g: &Hypergraph, h: usize) -> bool {
    let mut seen = HashSet::new();
    g.edges().all(|e| e.len() == h && e.windows(2).all(|w| w[0] < w[1]) && seen.insert(e.to_vec()))
}

/// `p = c h / C(n - 1, h - 1)`, the edge probability matching `c n` expected
/// hyperedges.
pub fn binomial_edge_probability(n: usize, c: f64, h: usize) -> Result<f64, RandomError> {
    check_edge_size(n, h)?;
    let denom = binomial_u128(n as u64 - 1, h as u64 - 1).ok_or(RandomError::TooManySubsets { n, h })?;
    let p = c * h as f64 / denom as f64;
    if !(0.0..=1.0).contains(&p) {
        return Err(RandomError::POutOfRange(p));
    }
    Ok(p)
}

/// The subset with colex rank `rank`: the unique `c_1 < ... < c_h` with
/// `rank = Σ_i C(c_i, i)`.
fn unrank_colex(mut rank: u128, n: usize, h: usize) -> Vec<u32> {
    let mut out = vec![0u32; h];
    let mut hi = n as u64;
    for i in (1..=h as u64).rev() {
        // largest c < hi with C(c, i) <= rank
        let (mut lo, mut top) = (i - 1, hi - 1);
        while lo < top {
            let mid = top - (top - lo) / 2;
            if binomial_u128(mid, i).is_some_and(|b| b <= rank) {
                lo = mid;
            } else {
                top = mid - 1;
            }
        }
        rank -= binomial_u128(lo, i).unwrap();
        out[i as usize - 1] = lo as u32;
        hi = lo;
    }
    out
}

/// `H_{n,p,h}` with `p = c h / C(n - 1, h - 1)`: every `h`-subset is present
/// independently with probability `p`. Subsets are visited in colex order and
/// the gaps between present ones are drawn as geometric variables, so the
/// cost is proportional to the number of edges, not to `C(n, h)`.
pub fn sample_h_n_p_h<R: Rng + ?Sized>(rng: &mut R, n: usize, c: f64, h: usize) -> Result<Hypergraph, RandomError> {
    let p = binomial_edge_probability(n, c, h)?;
    let total = binomial_u128(n as u64, h as u64)
        .filter(|&t| t < 1 << 120)
        .ok_or(RandomError::TooManySubsets { n, h })?;
    let mut members = Vec::new();
    let mut edge_ptr = vec![0];
    if p > 0.0 {
        let log_miss = (-p).ln_1p();
        let mut pos: u128 = 0;
        loop {
            let skip = if p >= 1.0 {
                0.0
            } else {
                let u: f64 = 1.0 - rng.random::<f64>(); // in (0, 1]
                (u.ln() / log_miss).floor()
            };
            if skip >= (total - pos) as f64 {
                break;
            }
            pos += skip as u128;
            if pos >= total {
                break;
            }
            members.extend(unrank_colex(pos, n, h));
            edge_ptr.push(members.len());
            pos += 1;
        }
    }
    Ok(Hypergraph::from_sorted_parts(n, edge_ptr, members))
}
