//! A quick self-check of the library: published loads, closed forms, tree
//! exactness, oracle agreement, local-operator identities and the small
//! counterexamples. Used by the `verify` command.

use rand::Rng;
use serde::Serialize;

use crate::asymptotics::{curly_f, general_fa, load_table, xi_star, ModelParams};
use crate::exec::Exec;
use crate::graph::ConstrainedGraph;
use crate::local_ops::{q_op, ExtWeight};
use crate::message_passing::{indicator_dynamics_general, iterate_p, max_size_tree, IndicatorState};
use crate::oracle::{brute_force_m, max_flow_m};
use crate::random::{random_bipartite, random_tree, stream_rng, BugwtSpec, Seed};

/// Published critical loads `l c* / k` as `(h, l, k, value)`, 10 digits.
/// The `(4, 3, 1)` entry is `c*` itself.
pub const REFERENCE_LOADS: [(u32, u32, u32, f64); 36] = [
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
    (4, 3, 1, 0.0833333333),
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

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &'static str, passed: bool, detail: String) -> CheckOutcome {
    CheckOutcome { name, passed, detail }
}

fn check_tables(exec: Exec) -> CheckOutcome {
    let mut worst: f64 = 0.0;
    let mut flagged = false;
    for which in [1, 2] {
        let Ok(table) = load_table(which, exec) else {
            return outcome("tables", false, format!("table {which} failed to compute"));
        };
        for cell in table.cells.iter().flatten() {
            let (_, _, _, want) = REFERENCE_LOADS.iter().find(|r| (r.0, r.1, r.2) == (cell.h, cell.l, cell.k)).unwrap();
            worst = worst.max((cell.value - want).abs());
            flagged |= cell.degenerate;
        }
    }
    outcome("tables", worst <= 5e-10 && flagged, format!("max |error| = {worst:.2e}"))
}

fn check_degenerate() -> CheckOutcome {
    let bad: Vec<u32> = (3..=8)
        .filter(|&h| {
            let t = xi_star(h, h - 1, 1);
            !matches!(t, Ok(ref t) if t.degenerate && t.c_star == 1.0 / (h * (h - 1)) as f64)
        })
        .collect();
    let detail = if bad.is_empty() { "c* = 1/(h(h-1)) for h = 3..8".to_string() } else { format!("wrong for h in {bad:?}") };
    outcome("degenerate closed form", bad.is_empty(), detail)
}

fn check_trees(seed: Seed, count: usize) -> CheckOutcome {
    let mut rng = stream_rng(seed, 1);
    let mut mismatches = 0;
    for _ in 0..count {
        let n = rng.random_range(1..=120);
        let t = random_tree(&mut rng, n, 1..=4);
        let mp = max_size_tree(&t, Exec::Sequential).map(|r| r.size);
        let flow = max_flow_m(&t.to_bipartite().unwrap().0).size;
        mismatches += usize::from(mp != Ok(flow));
    }
    outcome("tree exactness", mismatches == 0, format!("{mismatches} mismatches in {count} trees"))
}

fn check_oracles(seed: Seed, count: usize) -> CheckOutcome {
    let mut rng = stream_rng(seed, 2);
    let mut mismatches = 0;
    for _ in 0..count {
        let (a, b) = (rng.random_range(1..=7), rng.random_range(1..=7));
        let e = rng.random_range(0..=16);
        let g = random_bipartite(&mut rng, a, b, e, 1..=3);
        mismatches += usize::from(Ok(max_flow_m(&g).size) != brute_force_m(&g));
    }
    outcome("oracle equivalence", mismatches == 0, format!("{mismatches} mismatches in {count} graphs"))
}

/// Largest `|Σ_e X_e Q_e / (1 + X_e Q_e) 1(Q_e < ∞) - w 1(#{X_e > 0} > w)|`.
fn check_local_identity(seed: Seed, count: usize) -> CheckOutcome {
    let mut rng = stream_rng(seed, 3);
    let mut worst: f64 = 0.0;
    for _ in 0..count {
        let len = rng.random_range(0..=8);
        let x: Vec<f64> = (0..len).map(|_| if rng.random_bool(0.2) { 0.0 } else { rng.random() }).collect();
        let w = rng.random_range(1..=4);
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
    outcome("local identity", worst < 1e-12, format!("max deviation {worst:.2e}"))
}

fn check_counterexamples() -> CheckOutcome {
    let k3 = ConstrainedGraph::complete(3, 1);
    let dyn3 = indicator_dynamics_general(&k3, 50, Exec::Sequential);
    let k4 = ConstrainedGraph::complete(4, 2);
    let m4 = brute_force_m(&k4);
    let fixed = (0u32..1 << 12)
        .filter(|mask| {
            let s = IndicatorState { bits: (0..12).map(|i| mask >> i & 1 == 1).collect() };
            iterate_p(&k4, &s, Exec::Sequential) == s
        })
        .count();
    let passed = dyn3.period_two && !dyn3.fixed_point && m4 == Ok(4) && fixed >= 2;
    let m4 = m4.map_or_else(|e| e.to_string(), |m| m.to_string());
    outcome("counterexamples", passed, format!("K3 period two: {}, K4 M = {m4}, K4 fixed points: {fixed}", dyn3.period_two))
}

fn check_specialization() -> CheckOutcome {
    let mut worst: f64 = 0.0;
    for (h, l, k) in [(3, 1, 1), (4, 1, 2), (4, 2, 1), (5, 2, 3)] {
        for c in [0.3, 0.7, 1.1, 1.6] {
            let p = ModelParams::new(h, l, k, c).unwrap();
            let spec = BugwtSpec::uniform_model(h, l, k, c).unwrap();
            for q in [0.0, 0.2, 0.5, 0.9, 1.0] {
                worst = worst.max((general_fa(q, &spec) - curly_f(q, &p)).abs());
            }
        }
    }
    outcome("specialization identity", worst <= 1e-10, format!("max |error| = {worst:.2e}"))
}

/// Runs every check; all are deterministic given `seed`.
pub fn verify_suite(seed: Seed, exec: Exec) -> Vec<CheckOutcome> {
    vec![
        check_tables(exec),
        check_degenerate(),
        check_trees(seed, 100),
        check_oracles(seed, 100),
        check_local_identity(seed, 2000),
        check_counterexamples(),
        check_specialization(),
    ]
}
