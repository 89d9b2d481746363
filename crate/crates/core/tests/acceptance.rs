//! Acceptance criteria, one line of output per criterion.
//!
//! Runs as a plain binary so the result lines are always shown. Pass
//! criterion numbers to run a subset: `cargo test --test acceptance -- 1 5`.
//! Any other filter argument skips the suite.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;

use hyperorient::asymptotics::{curly_f, general_fa, inf_f, load_table, xi_star, ModelParams};
use hyperorient::graph::ConstrainedGraph;
use hyperorient::harness::{run_orientability_experiment, RunConfig};
use hyperorient::local_ops::{d_op, q_op, r_op, ExtWeight};
use hyperorient::message_passing::{
    gibbs_mean_degrees, indicator_dynamics_general, iterate_p, max_size_tree, solve_fixed_point, GibbsParams,
    IndicatorState,
};
use hyperorient::oracle::{brute_force_m, gibbs_marginals_exact, max_flow_m};
use hyperorient::random::{random_bipartite, random_tree, stream_rng, truncated_poisson, BugwtSpec, TypeLaw};
use hyperorient::Exec;

/// Published critical loads, `(h, l, k, value)`.
const PUBLISHED: [(u32, u32, u32, f64); 35] = [
    (4, 1, 1, 0.9767701648),
    (4, 1, 2, 0.9982414840),
    (4, 1, 3, 0.9997951433),
    (4, 1, 4, 0.9999720662),
    (4, 1, 5, 0.9999958680),
    (4, 1, 6, 0.9999993570),
    (4, 2, 1, 0.7596968140),
    (4, 2, 2, 0.9266442602),
    (4, 2, 3, 0.9676950000),
    (4, 2, 4, 0.9834603210),
    (4, 2, 5, 0.9908051880),
    (4, 2, 6, 0.9946173050),
    (4, 3, 2, 0.6612827547),
    (4, 3, 3, 0.7892143791),
    (4, 3, 4, 0.8525202000),
    (4, 3, 5, 0.8898186996),
    (4, 3, 6, 0.9141344769),
    (5, 2, 1, 0.8833250296),
    (5, 2, 2, 0.9730747564),
    (5, 2, 3, 0.9909792334),
    (5, 2, 4, 0.9964896324),
    (5, 2, 5, 0.9985201920),
    (5, 2, 6, 0.9993444714),
    (6, 2, 1, 0.9378552354),
    (6, 2, 2, 0.9894605852),
    (6, 2, 3, 0.9974188480),
    (6, 2, 4, 0.9992698236),
    (6, 2, 5, 0.9997769140),
    (6, 2, 6, 0.9999284650),
    (7, 2, 1, 0.9652101902),
    (7, 2, 2, 0.9957801256),
    (7, 2, 3, 0.9992689074),
    (7, 2, 4, 0.9998543770),
    (7, 2, 5, 0.9999687056),
    (7, 2, 6, 0.9999929390),
];

const SEED: u64 = 20_240_601;

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: String) -> Verdict {
    Verdict { passed, detail }
}

fn table_reproduction() -> Verdict {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut cells = 0;
    let mut degenerate_ok = false;
    for which in [1, 2] {
        let table = load_table(which, Exec::default()).expect("tables compute");
        for cell in table.cells.iter().flatten() {
            if cell.degenerate {
                degenerate_ok = (cell.h, cell.l, cell.k) == (4, 3, 1) && (cell.value - 1.0 / 12.0).abs() < 1e-15;
                continue;
            }
            let want = PUBLISHED.iter().find(|p| (p.0, p.1, p.2) == (cell.h, cell.l, cell.k)).expect("published cell").3;
            worst = worst.max((cell.value - want).abs());
            cells += 1;
        }
    }
    let elapsed = start.elapsed();
    verdict(
        cells == 35 && worst <= 5e-10 && degenerate_ok && elapsed < Duration::from_secs(5),
        format!("{cells} cells, max |error| {worst:.2e}, (4,3,1) = 1/12 flagged: {degenerate_ok}, {elapsed:.2?}"),
    )
}

fn degenerate_closed_form() -> Verdict {
    let wrong: Vec<u32> = (3..=8u32)
        .filter(|&h| {
            let t = xi_star(h, h - 1, 1).expect("valid triple");
            !(t.degenerate && t.c_star == 1.0 / (h * (h - 1)) as f64)
        })
        .collect();
    verdict(wrong.is_empty(), format!("h = 3..8, mismatches at {wrong:?}"))
}

fn phase_transition() -> Verdict {
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for (h, l, k) in [(3, 1, 1), (4, 1, 2), (4, 2, 1), (5, 2, 3)] {
        let c_star = xi_star(h, l, k).unwrap().c_star;
        let mut fractions = [0.0; 2];
        for (i, factor) in [0.9, 1.1].into_iter().enumerate() {
            let cfg = RunConfig::new(h, l, k, factor * c_star, 20_000).trials(50).seed(SEED + i as u64);
            let rep = run_orientability_experiment(&cfg).expect("valid config");
            assert_eq!(rep.summary.failed_trials, 0);
            fractions[i] = rep.summary.orientable_fraction;
        }
        ok &= fractions[0] >= 0.95 && fractions[1] <= 0.05;
        parts.push(format!("({h},{l},{k}) {:.2}/{:.2}", fractions[0], fractions[1]));
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(600);
    verdict(ok, format!("orientable at 0.9c*/1.1c*: {}, {elapsed:.2?}", parts.join(", ")))
}

fn ratio_limit() -> Verdict {
    let start = Instant::now();
    let (h, l, k) = (4, 1, 2);
    let c_star = xi_star(h, l, k).unwrap().c_star;
    let mut ok = true;
    let mut parts = Vec::new();
    for factor in [0.8, 1.2] {
        let c = factor * c_star;
        let cfg = RunConfig::new(h, l, k, c, 100_000).trials(20).seed(SEED + 7);
        let rep = run_orientability_experiment(&cfg).expect("valid config");
        let limit = inf_f(&ModelParams::new(h, l, k, c).unwrap()).unwrap().inf_f;
        let gap = (rep.summary.mean_ratio - limit).abs();
        ok &= gap <= 0.01;
        parts.push(format!("{factor}c*: mean {:.5} vs inf F {limit:.5}", rep.summary.mean_ratio));
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(900);
    verdict(ok, format!("{}, {elapsed:.2?}", parts.join("; ")))
}

fn tree_exactness() -> Verdict {
    let mut rng = stream_rng(SEED, 5);
    let mut mismatches = 0;
    for _ in 0..500 {
        let n = rng.random_range(1..=200);
        let tree = random_tree(&mut rng, n, 1..=4);
        let mp = max_size_tree(&tree, Exec::Sequential).unwrap().size;
        let (bip, _) = tree.to_bipartite().unwrap();
        mismatches += usize::from(mp != max_flow_m(&bip).size);
    }
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let n = rng.random_range(1..=13);
        let tree = random_tree(&mut rng, n, 1..=4);
        for z in [0.5, 1.0, 2.0, 10.0] {
            let fp = solve_fixed_point(&tree, GibbsParams::for_tree(&tree, z).with_tol(0.0), Exec::Sequential);
            let mp = gibbs_mean_degrees(&tree, &fp.state);
            let exact = gibbs_marginals_exact(&tree, z).unwrap().mean_degrees;
            worst = mp.iter().zip(&exact).map(|(a, b)| (a - b).abs()).fold(worst, f64::max);
        }
    }
    verdict(
        mismatches == 0 && worst <= 1e-10,
        format!("{mismatches} size mismatches on 500 trees; Gibbs mean degrees max |error| {worst:.2e} on 100 trees"),
    )
}

fn oracle_equivalence() -> Verdict {
    let mut rng = stream_rng(SEED, 6);
    let mut mismatches = 0;
    let mut largest = 0;
    for _ in 0..500 {
        let (a, b) = (rng.random_range(1..=8), rng.random_range(1..=8));
        let e = rng.random_range(0..=22);
        let g = random_bipartite(&mut rng, a, b, e, 1..=3);
        largest = largest.max(g.edges().len());
        mismatches += usize::from(Ok(max_flow_m(&g).size) != brute_force_m(&g));
    }
    verdict(mismatches == 0, format!("{mismatches} mismatches on 500 graphs (up to {largest} edges)"))
}

fn operator_properties() -> Verdict {
    const TOL: f64 = 1e-12;
    let mut rng = stream_rng(SEED, 7);
    let mut violations = 0;
    for i in 0..10_000 {
        let len = rng.random_range(1..=8);
        let w = rng.random_range(1..=4u32);
        let j = rng.random_range(0..len);
        let bump = rng.random_range(0.01..2.0);
        match i % 3 {
            0 => {
                // r_op is non-increasing in each coordinate
                let y: Vec<f64> = (0..len).map(|_| rng.random_range(0.0..5.0)).collect();
                let mut up = y.clone();
                up[j] += bump;
                let f = |v: &[f64]| r_op(&v.iter().map(|&x| ExtWeight::Finite(x)).collect::<Vec<_>>(), w);
                violations += usize::from(f(&up) > f(&y) + TOL);
            }
            1 => {
                // d_op is strictly increasing in each positive coordinate
                let y: Vec<f64> = (0..len).map(|_| rng.random_range(0.05..5.0)).collect();
                let mut up = y.clone();
                up[j] += bump;
                let f = |v: &[f64]| d_op(&v.iter().map(|&x| ExtWeight::Finite(x)).collect::<Vec<_>>(), w);
                violations += usize::from(f(&up) - f(&y) < TOL);
            }
            _ => {
                // z ↦ z r(z X) is strictly increasing for X > 0
                let x: Vec<f64> = (0..len).map(|_| rng.random_range(0.05..=1.0)).collect();
                let z = rng.random_range(0.01..20.0);
                let f = |z: f64| z * r_op(&x.iter().map(|&v| ExtWeight::Finite(z * v)).collect::<Vec<_>>(), w);
                violations += usize::from(f(z + bump) - f(z) < TOL);
            }
        }
    }
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let len = rng.random_range(0..=8);
        let x: Vec<f64> = (0..len).map(|_| if rng.random_bool(0.25) { 0.0 } else { rng.random_range(0.0..=1.0) }).collect();
        let w = rng.random_range(1..=5u32);
        let lhs: f64 = (0..len)
            .map(|e| {
                let others: Vec<f64> = x.iter().enumerate().filter(|&(f, _)| f != e).map(|(_, &v)| v).collect();
                match q_op(&others, w) {
                    ExtWeight::Finite(q) => x[e] * q / (1.0 + x[e] * q),
                    ExtWeight::Infinite => 0.0,
                }
            })
            .sum();
        let positive = x.iter().filter(|&&v| v > 0.0).count();
        let rhs = if positive > w as usize { w as f64 } else { 0.0 };
        worst = worst.max((lhs - rhs).abs());
    }
    verdict(
        violations == 0 && worst <= TOL,
        format!("{violations} monotonicity violations in 10^4 checks; identity max deviation {worst:.2e} on 10^4 instances"),
    )
}

fn counterexamples() -> Verdict {
    let k3 = ConstrainedGraph::complete(3, 1);
    let dynamics = indicator_dynamics_general(&k3, 100, Exec::Sequential);
    let k3_ok = dynamics.period_two && !dynamics.fixed_point;
    let k4 = ConstrainedGraph::complete(4, 2);
    let m = brute_force_m(&k4).unwrap();
    let fixed: Vec<u32> = (0u32..1 << 12)
        .filter(|mask| {
            let s = IndicatorState { bits: (0..12).map(|i| mask >> i & 1 == 1).collect() };
            iterate_p(&k4, &s, Exec::Sequential) == s
        })
        .collect();
    verdict(
        k3_ok && m == 4 && fixed.len() >= 2,
        format!("K3 period two: {k3_ok}; K4 caps 2: M = {m}, {} fixed points {fixed:03x?}", fixed.len()),
    )
}

fn specialization_identity() -> Verdict {
    let mut worst_closed = 0.0f64;
    let mut worst_truncated = 0.0f64;
    let mut points = 0;
    for (h, l, k) in [(3, 1, 1), (4, 1, 2), (4, 2, 1), (5, 2, 3)] {
        for c in [0.3, 0.6, 0.9, 1.3, 2.0] {
            let p = ModelParams::new(h, l, k, c).unwrap();
            let closed = BugwtSpec::uniform_model(h, l, k, c).unwrap();
            let (b, _) = truncated_poisson(c * h as f64, k, 1e-15);
            let truncated = BugwtSpec::new(TypeLaw::constant(h, l), b).unwrap();
            for i in 0..10 {
                let q = i as f64 / 9.0;
                let want = curly_f(q, &p);
                worst_closed = worst_closed.max((general_fa(q, &closed) - want).abs());
                worst_truncated = worst_truncated.max((general_fa(q, &truncated) - want).abs());
                points += 1;
            }
        }
    }
    verdict(
        worst_closed <= 1e-10 && worst_truncated <= 1e-10,
        format!(
            "{} (q, c) points per triple; max |error| {worst_closed:.2e} (Poisson law), {worst_truncated:.2e} (truncated pmf)",
            points / 4
        ),
    )
}

type Criterion = (u32, &'static str, fn() -> Verdict);

const CRITERIA: [Criterion; 9] = [
    (1, "table reproduction", table_reproduction),
    (2, "degenerate closed form", degenerate_closed_form),
    (3, "phase transition", phase_transition),
    (4, "ratio limit", ratio_limit),
    (5, "tree exactness", tree_exactness),
    (6, "oracle equivalence", oracle_equivalence),
    (7, "operator properties", operator_properties),
    (8, "counterexamples", counterexamples),
    (9, "specialization identity", specialization_identity),
];

fn main() -> ExitCode {
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let selected: Vec<u32> = filters.iter().filter_map(|a| a.parse().ok()).collect();
    if !filters.is_empty() && selected.is_empty() {
        println!("acceptance: skipped (filter does not name a criterion number)");
        return ExitCode::SUCCESS;
    }
    let mut failed = 0;
    for (id, name, run) in CRITERIA {
        if !selected.is_empty() && !selected.contains(&id) {
            continue;
        }
        let v = run();
        println!("criterion {id} ({name}): {} | {}", if v.passed { "PASS" } else { "FAIL" }, v.detail);
        failed += usize::from(!v.passed);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion/criteria failed");
        ExitCode::FAILURE
    }
}
