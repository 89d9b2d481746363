//! Poisson and binomial probabilities.
//!
//! Small probabilities are always summed directly rather than obtained as
//! `1 - (something close to 1)`: callers that need both a tail and its
//! complement get them as a pair from [`poisson_split`].

use std::f64::consts::PI;

/// `ln(n!) - [(n + 1/2) ln n - n + ln √(2π)]`, the Stirling remainder.
fn stirling_error(n: f64) -> f64 {
    const S0: f64 = 1.0 / 12.0;
    const S1: f64 = 1.0 / 360.0;
    const S2: f64 = 1.0 / 1260.0;
    const S3: f64 = 1.0 / 1680.0;
    const S4: f64 = 1.0 / 1188.0;
    if n <= 15.0 {
        let ln_fact: f64 = (2..=n as u64).map(|i| (i as f64).ln()).sum();
        return ln_fact - (n + 0.5) * n.ln() + n - 0.5 * (2.0 * PI).ln();
    }
    let nn = n * n;
    (S0 - (S1 - (S2 - (S3 - S4 / nn) / nn) / nn) / nn) / n
}

/// `x ln(x / m) + m - x`, accurate when `x ≈ m`.
fn deviance(x: f64, m: f64) -> f64 {
    if (x - m).abs() < 0.1 * (x + m) {
        let v = (x - m) / (x + m);
        let mut s = (x - m) * v;
        let mut ej = 2.0 * x * v;
        let v2 = v * v;
        for j in 1.. {
            ej *= v2;
            let s1 = s + ej / (2 * j + 1) as f64;
            if s1 == s {
                return s1;
            }
            s = s1;
        }
    }
    x * (x / m).ln() + m - x
}

/// `P(Poi(mean) = j)`, with relative accuracy near machine precision over the
/// whole range (saddle-point form of the pmf).
pub fn poisson_pmf(j: u64, mean: f64) -> f64 {
    debug_assert!(mean >= 0.0);
    if mean == 0.0 {
        return if j == 0 { 1.0 } else { 0.0 };
    }
    if j == 0 {
        return (-mean).exp();
    }
    let x = j as f64;
    (-stirling_error(x) - deviance(x, mean)).exp() / (2.0 * PI * x).sqrt()
}

/// `(P(Poi(x) < y), P(Poi(x) >= y))`, each to full relative precision in the
/// regime where it is the smaller of the two.
pub fn poisson_split(x: f64, y: u64) -> (f64, f64) {
    assert!(x >= 0.0, "Poisson mean must be nonnegative, got {x}");
    if y == 0 {
        return (0.0, 1.0);
    }
    if x == 0.0 {
        return (1.0, 0.0);
    }
    if (y as f64) <= x {
        // terms j = y-1, y-2, ... decrease
        let mut t = poisson_pmf(y - 1, x);
        let mut lower = 0.0;
        let mut j = y - 1;
        loop {
            lower += t;
            if j == 0 || t < lower * 1e-18 {
                break;
            }
            t *= j as f64 / x;
            j -= 1;
        }
        (lower, 1.0 - lower)
    } else {
        // terms j = y, y+1, ... decrease
        let mut t = poisson_pmf(y, x);
        let mut upper = 0.0;
        let mut j = y;
        while t > 0.0 && t >= upper * 1e-18 {
            upper += t;
            j += 1;
            t *= x / j as f64;
        }
        (1.0 - upper, upper)
    }
}

/// `Q(x, y) = P(Poi(x) >= y)`.
pub fn poisson_tail(x: f64, y: u64) -> f64 {
    poisson_split(x, y).1
}

fn choose(n: u32, j: u32) -> f64 {
    let j = j.min(n - j);
    (0..j).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Probability mass function of `Bin(n, p)` given both `p` and `q = 1 - p`,
/// so a small `q` keeps its precision.
pub fn binomial_pmf_pq(n: u32, p: f64, q: f64) -> Vec<f64> {
    (0..=n).map(|j| choose(n, j) * p.powi(j as i32) * q.powi((n - j) as i32)).collect()
}

/// `P(Bin(n, p) < t)` given `p` and `q = 1 - p`.
pub fn binom_lt_pq(n: u32, p: f64, q: f64, t: u32) -> f64 {
    (0..t.min(n + 1)).map(|j| choose(n, j) * p.powi(j as i32) * q.powi((n - j) as i32)).sum()
}

/// `P(Bin(n, p) < t)`.
pub fn binom_tail_lt(n: u32, p: f64, t: u32) -> f64 {
    assert!((0.0..=1.0).contains(&p), "p = {p} outside [0, 1]");
    binom_lt_pq(n, p, 1.0 - p, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poisson_tail_examples() {
        for x in [0.0, 0.3, 5.0, 1e4] {
            assert_eq!(poisson_tail(x, 0), 1.0);
        }
        assert_eq!(poisson_tail(0.0, 3), 0.0);
        let oracle = 1.0 - (-2.0f64).exp() * 3.0;
        assert!((poisson_tail(2.0, 2) - oracle).abs() < 1e-15);
    }

    #[test]
    fn pmf_against_direct_formula() {
        for &(j, m) in &[(0u64, 1.5f64), (1, 1.5), (3, 0.2), (7, 7.0), (20, 3.0), (30, 30.5)] {
            let direct = (-m).exp() * m.powi(j as i32) / (1..=j).map(|i| i as f64).product::<f64>();
            assert!((poisson_pmf(j, m) - direct).abs() <= 1e-14 * direct, "{j} {m}");
        }
    }

    #[test]
    fn split_sums_to_one_and_tail_is_precise() {
        for &x in &[1e-9, 1e-3, 0.5, 3.0, 17.2, 300.0, 1e4] {
            for y in [1u64, 2, 5, 12, 40, 10_050] {
                let (lo, hi) = poisson_split(x, y);
                assert!((lo + hi - 1.0).abs() < 1e-13, "{x} {y}");
                assert!((0.0..=1.0).contains(&lo) && (0.0..=1.0).contains(&hi));
            }
        }
        // leading term of a far upper tail
        let q = poisson_tail(1e-9, 3);
        assert!((q / (1e-27 / 6.0) - 1.0).abs() < 1e-8);
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binom_tail_lt(3, 0.5, 0), 0.0);
        assert!((binom_tail_lt(3, 0.5, 4) - 1.0).abs() < 1e-15);
        assert!((binom_tail_lt(3, 0.5, 2) - 0.5).abs() < 1e-15);
        let pmf = binomial_pmf_pq(5, 0.3, 0.7);
        assert!((pmf.iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }
}
