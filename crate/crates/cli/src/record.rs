//! Batch experiment records, one JSON object per line.

use std::collections::BTreeMap;
use std::time::Instant;

use betti_core::asymptotics::Counterexample;
use betti_core::corpus::{random_ideal, CorpusSpec};
use betti_core::monomial::default_names;
use betti_core::{find_linear_quotients_power, AnalysisOptions, Error, ExecMode, PowerLadder};
use serde::{Deserialize, Serialize};

use crate::parse::IdealExpression;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrandSummary {
    pub k: u32,
    pub nonzero: Vec<u32>,
    pub full: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjectureSummary {
    pub target: u32,
    pub conjecture_holds: bool,
    pub formula_holds: bool,
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub schema_version: u32,
    pub seed: u64,
    pub index: u64,
    pub n: usize,
    pub max_degree: u32,
    pub general: bool,
    pub ideal: String,
    pub engine: String,
    /// `ok`, `inconclusive` or `error`.
    pub status: String,
    pub message: Option<String>,
    pub c_index: Option<u32>,
    /// `reg(m^k I)` for `k = 0..=c_I + 2`.
    pub regularity: Vec<u32>,
    pub strands: Vec<StrandSummary>,
    pub conjecture: Option<ConjectureSummary>,
    pub lambda_trajectory: Option<Vec<u32>>,
    pub linear_quotients_power: Option<u32>,
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

#[derive(Debug, Clone, Copy)]
pub struct BatchSettings {
    pub spec: CorpusSpec,
    pub seed: u64,
    pub index_cap: u32,
    pub timings: bool,
}

pub fn compute_record(settings: &BatchSettings, index: u64) -> ExperimentRecord {
    let spec = &settings.spec;
    let ideal = random_ideal(settings.seed, index, spec);
    let expr = IdealExpression::from_ideal(default_names(spec.n), ideal.clone());
    let mut record = ExperimentRecord {
        schema_version: SCHEMA_VERSION,
        seed: settings.seed,
        index,
        n: spec.n,
        max_degree: spec.max_degree,
        general: spec.general,
        ideal: expr.source.clone(),
        engine: "koszul".into(),
        status: "ok".into(),
        message: None,
        c_index: None,
        regularity: Vec::new(),
        strands: Vec::new(),
        conjecture: None,
        lambda_trajectory: None,
        linear_quotients_power: None,
        timings_ms: None,
    };
    let mut timings = BTreeMap::new();
    let clock = Instant::now();
    let opts = AnalysisOptions {
        index_cap: settings.index_cap,
        exec: ExecMode::Sequential,
        ..Default::default()
    };
    let mut ladder = PowerLadder::new(ideal.clone(), opts);
    if let Err(e) = fill_asymptotics(&mut ladder, &mut record) {
        record.status = match e {
            Error::Truncated { .. } | Error::CapExceeded { .. } => "inconclusive".into(),
            _ => "error".into(),
        };
        record.message = Some(e.to_string());
    }
    timings.insert(
        "asymptotics".to_string(),
        clock.elapsed().as_secs_f64() * 1e3,
    );
    if let Some(mono) = ideal.as_monomial_ideal() {
        let clock = Instant::now();
        if let Ok(lq) = find_linear_quotients_power(&mono, settings.index_cap.max(1)) {
            record.lambda_trajectory = Some(lq.trajectory);
            record.linear_quotients_power = Some(lq.t);
        }
        timings.insert(
            "linear_quotients".to_string(),
            clock.elapsed().as_secs_f64() * 1e3,
        );
    }
    if settings.timings {
        record.timings_ms = Some(timings);
    }
    record
}

fn fill_asymptotics(
    ladder: &mut PowerLadder,
    record: &mut ExperimentRecord,
) -> betti_core::Result<()> {
    let c = ladder.c_index()?;
    record.c_index = Some(c);
    for k in 0..=c + 2 {
        record.regularity.push(ladder.table(k)?.regularity()?);
    }
    for k in c..=c + 2 {
        let report = ladder.strand_report(k)?;
        record.strands.push(StrandSummary {
            k,
            nonzero: report.nonzero_strands.iter().copied().collect(),
            full: report.fullness.values().copied().collect(),
        });
    }
    let conj = ladder.conjecture_check()?;
    record.conjecture = Some(ConjectureSummary {
        target: conj.target,
        conjecture_holds: conj.conjecture_holds,
        formula_holds: conj.formula_holds,
        counterexample: conj.counterexample,
    });
    Ok(())
}

/// Records for `indices`, in order, on up to `workers` threads.
pub fn compute_batch(
    settings: &BatchSettings,
    indices: Vec<u64>,
    workers: usize,
) -> Vec<ExperimentRecord> {
    #[cfg(feature = "parallel")]
    {
        if workers > 1 {
            use rayon::prelude::*;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .expect("thread pool");
            return pool.install(|| {
                indices
                    .into_par_iter()
                    .map(|i| compute_record(settings, i))
                    .collect()
            });
        }
    }
    let _ = workers;
    indices
        .into_iter()
        .map(|i| compute_record(settings, i))
        .collect()
}
