use hyperorient::local_ops::{d_op, edge_marginal, p_op, q_op, r_op, sym_trunc, ExtWeight};
use proptest::prelude::*;

/// `(Σ_{|S|≤w} Π Y, Σ_{|S|≤w, e∈S} Π Y)` by listing subsets.
fn subset_weights(y: &[f64], w: u32, e: usize) -> (f64, f64) {
    let (mut total, mut with_e) = (0.0, 0.0);
    for mask in 0u32..1 << y.len() {
        if mask.count_ones() > w {
            continue;
        }
        let prod: f64 = (0..y.len()).filter(|i| mask >> i & 1 == 1).map(|i| y[i]).product();
        total += prod;
        if mask >> e & 1 == 1 {
            with_e += prod;
        }
    }
    (total, with_e)
}

fn finite(y: &[f64]) -> Vec<ExtWeight> {
    y.iter().map(|&v| ExtWeight::Finite(v)).collect()
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #[test]
    fn sym_trunc_matches_subset_listing(y in proptest::collection::vec(0.0f64..5.0, 0..=8), t in 0usize..=9) {
        let brute: f64 = (0u32..1 << y.len())
            .filter(|m| m.count_ones() as usize <= t)
            .map(|m| (0..y.len()).filter(|i| m >> i & 1 == 1).map(|i| y[i]).product::<f64>())
            .sum();
        prop_assert!(rel_close(sym_trunc(&y, t), brute, 1e-12));
    }

    #[test]
    fn marginal_from_r_matches_conditioned_measure(
        y in proptest::collection::vec(0.0f64..5.0, 1..=8),
        w in 1u32..=4,
        pick in any::<proptest::sample::Index>(),
    ) {
        let e = pick.index(y.len());
        let mut others = y.clone();
        others.remove(e);
        let r = r_op(&finite(&others), w);
        let (total, with_e) = subset_weights(&y, w, e);
        prop_assert!(rel_close(edge_marginal(y[e], r), with_e / total, 1e-12));
    }

    #[test]
    fn mean_degree_matches_conditioned_measure(y in proptest::collection::vec(0.0f64..5.0, 0..=8), w in 0u32..=4) {
        let brute: f64 = (0..y.len())
            .map(|e| {
                let (total, with_e) = subset_weights(&y, w, e);
                with_e / total
            })
            .sum();
        let d = d_op(&finite(&y), w);
        prop_assert!(rel_close(d, brute, 1e-12));
        prop_assert!(d <= w as f64 + 1e-12);
    }

    #[test]
    fn r_is_antitone(y in proptest::collection::vec(0.0f64..5.0, 1..=6), bump in 0.0f64..3.0, w in 1u32..=3) {
        let mut bigger = y.clone();
        bigger[0] += bump;
        prop_assert!(r_op(&finite(&bigger), w) <= r_op(&finite(&y), w) + 1e-15);
    }

    #[test]
    fn q_is_the_large_activity_limit(
        x in proptest::collection::vec(prop_oneof![Just(0.0), 0.05f64..=1.0], 0..=6),
        w in 1u32..=3,
    ) {
        let q = q_op(&x, w);
        let scaled = |z: f64| z * r_op(&x.iter().map(|&v| ExtWeight::Finite(z * v)).collect::<Vec<_>>(), w);
        match q {
            ExtWeight::Infinite => {
                // fewer than w positive entries: z R grows linearly
                prop_assert!(scaled(1e6) > 0.5e6);
            }
            ExtWeight::Finite(q) => {
                let errs: Vec<f64> = [1e2, 1e4, 1e6].iter().map(|&z| (scaled(z) - q).abs()).collect();
                // positive entries are at least 0.05, so the error is O(1/z)
                prop_assert!(errs[2] <= 1e-3 * (1.0 + q), "errors {:?} for q = {}", errs, q);
                prop_assert!(errs[2] <= errs[0] + 1e-12);
            }
        }
    }

    #[test]
    fn p_is_antitone(bits in proptest::collection::vec(any::<bool>(), 0..=8), flip in any::<proptest::sample::Index>(), w in 0u32..=4) {
        let mut more = bits.clone();
        if !more.is_empty() {
            more[flip.index(bits.len())] = true;
        }
        prop_assert!(!p_op(&more, w) || p_op(&bits, w));
    }
}

#[test]
fn infinite_neighbours_fill_the_budget() {
    let inf = ExtWeight::Infinite;
    assert_eq!(r_op(&[inf, inf], 2), 0.0);
    assert_eq!(d_op(&[inf, ExtWeight::Finite(1.0)], 1), 1.0);
    // two infinite and one finite neighbour with w = 3: the finite one sees budget 1
    let r = r_op(&[inf, inf, ExtWeight::Finite(2.0)], 3);
    assert!((r - 1.0 / 3.0).abs() < 1e-15);
}
