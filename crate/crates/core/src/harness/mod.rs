//! Monte Carlo experiments and report output.
//!
//! Each trial draws its hypergraph from its own `(seed, trial)` stream and
//! results are collected in trial order, so a run is reproducible for any
//! worker count.

use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::asymptotics::{inf_f, xi_star, AsymptoticsError, ModelParams};
use crate::exec::Exec;
use crate::graph::incidence_graph;
use crate::oracle::max_flow_m;
use crate::random::{sample_h_n_m_h, sample_h_n_p_h, stream_rng, Seed};

pub mod mp_check;
pub mod report;
pub mod verify;

pub use mp_check::{message_trace, run_mp_vs_oracle, MessageRow, MpCheckConfig, MpReport, SparseCheck, TreeCheck};
pub use report::{emit_curve, emit_table, records_csv, to_json, SCHEMA_VERSION};
pub use verify::{verify_suite, CheckOutcome, REFERENCE_LOADS};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Asymptotics(#[from] AsymptoticsError),
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
    #[error("json output: {0}")]
    Json(#[from] serde_json::Error),
}

/// Which random hypergraph model a run samples from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    /// `H_{n,m,h}` with `m = ⌊c n⌋`.
    UniformM,
    /// `H_{n,p,h}` with `p = c h / C(n - 1, h - 1)`.
    BinomialP,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub h: u32,
    pub l: u32,
    pub k: u32,
    pub c: f64,
    pub n: usize,
    pub trials: usize,
    pub seed: Seed,
    pub model: Model,
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
    #[serde(skip)]
    pub exec: Exec,
}

impl RunConfig {
    pub fn new(h: u32, l: u32, k: u32, c: f64, n: usize) -> Self {
        RunConfig { h, l, k, c, n, trials: 1, seed: 0, model: Model::UniformM, workers: None, exec: Exec::default() }
    }

    pub fn trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn seed(mut self, seed: Seed) -> Self {
        self.seed = seed;
        self
    }

    pub fn model(mut self, model: Model) -> Self {
        self.model = model;
        self
    }

    pub fn workers(mut self, workers: Option<usize>) -> Self {
        self.workers = workers;
        self
    }

    pub fn exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn params(&self) -> Result<ModelParams, HarnessError> {
        ModelParams::new(self.h, self.l, self.k, self.c).map_err(|e| HarnessError::InvalidConfig(e.to_string()))
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        self.params()?;
        if self.trials == 0 {
            return Err(HarnessError::InvalidConfig("trials must be at least 1".into()));
        }
        if self.n < self.h as usize {
            return Err(HarnessError::InvalidConfig(format!("n = {} is smaller than h = {}", self.n, self.h)));
        }
        if self.workers == Some(0) {
            return Err(HarnessError::InvalidConfig("workers must be at least 1".into()));
        }
        Ok(())
    }
}

/// One trial. `orientable` is `M = l m`; `ratio` is `M / (c n)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRecord {
    pub trial: usize,
    pub seed: Seed,
    pub n: usize,
    pub m: usize,
    pub h: u32,
    pub l: u32,
    pub k: u32,
    pub c: f64,
    #[serde(rename = "M")]
    pub max_size: usize,
    pub ratio: f64,
    pub orientable: bool,
    pub wall_ms: f64,
    pub error: Option<String>,
}

impl ExperimentRecord {
    /// Equality ignoring the timing field.
    pub fn same_outcome(&self, other: &ExperimentRecord) -> bool {
        ExperimentRecord { wall_ms: 0.0, ..self.clone() } == ExperimentRecord { wall_ms: 0.0, ..other.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub trials: usize,
    pub failed_trials: usize,
    pub orientable_fraction: f64,
    pub mean_ratio: f64,
    pub stderr_ratio: f64,
    /// `inf_q F(q, c)`, the predicted limit of the ratio.
    pub inf_f: f64,
    pub c_star: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub config: RunConfig,
    pub summary: Summary,
    pub records: Vec<ExperimentRecord>,
}

/// Samples, orients by max flow and records one trial.
pub fn run_trial(cfg: &RunConfig, trial: usize) -> ExperimentRecord {
    let start = Instant::now();
    let mut rng = stream_rng(cfg.seed, trial as u64);
    let (h, l, k, c, n) = (cfg.h, cfg.l, cfg.k, cfg.c, cfg.n);
    let sampled = match cfg.model {
        Model::UniformM => sample_h_n_m_h(&mut rng, n, (c * n as f64).floor() as usize, h as usize),
        Model::BinomialP => sample_h_n_p_h(&mut rng, n, c, h as usize),
    };
    let mut rec = ExperimentRecord {
        trial,
        seed: cfg.seed,
        n,
        m: 0,
        h,
        l,
        k,
        c,
        max_size: 0,
        ratio: 0.0,
        orientable: false,
        wall_ms: 0.0,
        error: None,
    };
    match sampled.map_err(|e| e.to_string()).and_then(|hg| {
        let inc = incidence_graph(&hg, l, k).map_err(|e| e.to_string())?;
        Ok((hg.edge_count(), max_flow_m(&inc).size))
    }) {
        Ok((m, size)) => {
            rec.m = m;
            rec.max_size = size;
            rec.ratio = size as f64 / (c * n as f64);
            rec.orientable = size == l as usize * m;
        }
        Err(e) => rec.error = Some(e),
    }
    rec.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    rec
}

pub fn summarize(cfg: &RunConfig, records: &[ExperimentRecord]) -> Result<Summary, HarnessError> {
    let ok: Vec<&ExperimentRecord> = records.iter().filter(|r| r.error.is_none()).collect();
    let count = ok.len() as f64;
    let mean = ok.iter().map(|r| r.ratio).sum::<f64>() / count;
    let var = if ok.len() > 1 { ok.iter().map(|r| (r.ratio - mean).powi(2)).sum::<f64>() / (count - 1.0) } else { 0.0 };
    Ok(Summary {
        trials: records.len(),
        failed_trials: records.len() - ok.len(),
        orientable_fraction: ok.iter().filter(|r| r.orientable).count() as f64 / count,
        mean_ratio: mean,
        stderr_ratio: (var / count).sqrt(),
        inf_f: inf_f(&cfg.params()?)?.inf_f,
        c_star: xi_star(cfg.h, cfg.l, cfg.k)?.c_star,
    })
}

/// Runs every trial of `cfg` and summarizes. A failing trial is recorded
/// with its error and does not stop the batch.
pub fn run_orientability_experiment(cfg: &RunConfig) -> Result<ExperimentReport, HarnessError> {
    cfg.validate()?;
    let records = cfg.exec.with_workers(cfg.workers, || cfg.exec.map_range(cfg.trials, |t| run_trial(cfg, t)));
    let summary = summarize(cfg, &records)?;
    Ok(ExperimentReport { config: cfg.clone(), summary, records })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_density_is_always_orientable() {
        let cfg = RunConfig::new(3, 1, 1, 0.01, 50).trials(5).seed(1);
        let rep = run_orientability_experiment(&cfg).unwrap();
        assert!(rep.records.iter().all(|r| r.orientable && r.m == 0));
        assert_eq!(rep.summary.orientable_fraction, 1.0);
    }

    #[test]
    fn invalid_configs() {
        assert!(RunConfig::new(3, 1, 1, 0.5, 2).validate().is_err());
        assert!(RunConfig::new(3, 1, 1, 0.5, 20).trials(0).validate().is_err());
        assert!(RunConfig::new(3, 3, 1, 0.5, 20).validate().is_err());
    }

    #[test]
    fn failing_trial_is_recorded() {
        // more hyperedges than 3-subsets of 4 vertices
        let cfg = RunConfig::new(3, 1, 1, 2.0, 4).trials(2);
        let rep = run_orientability_experiment(&cfg).unwrap();
        assert!(rep.records.iter().all(|r| r.error.is_some()));
        assert_eq!(rep.summary.failed_trials, 2);
    }

    #[test]
    fn records_do_not_depend_on_worker_count() {
        let base = RunConfig::new(3, 1, 1, 0.8, 300).trials(8).seed(11);
        let seq = run_orientability_experiment(&base.clone().exec(Exec::Sequential)).unwrap();
        let par = run_orientability_experiment(&base.workers(Some(3))).unwrap();
        assert!(seq.records.iter().zip(&par.records).all(|(a, b)| a.same_outcome(b)));
    }
}
