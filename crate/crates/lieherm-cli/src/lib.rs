//! Config-driven checks, solvers and scripted verification bundles over the
//! `lieherm` engine.

pub mod catalog;
pub mod config;
pub mod render;
pub mod run;
pub mod theorem;

use std::collections::BTreeMap;
use std::time::Instant;

use thiserror::Error;

use crate::run::{EntryReport, RunReport};

/// Errors that abort a command before any verdict; all exit with code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub const EXIT_CODE: i32 = 2;
}

/// Pulls the canonical metric back by a `B`-reflection; when the result is
/// BTP the `B`-isometry relation must hold exactly.
pub fn cmd_experiment(cartan: &str, seed: u64) -> Result<RunReport, CliError> {
    let ct = config::cartan(cartan)?;
    let t = Instant::now();
    let x = lieherm::groupgeom::automorphism_experiment(ct, seed);
    let consistent = !x.pulled_back_btp || x.relation.as_ref().is_some_and(|r| r.residual_zero);
    let flags = BTreeMap::from([
        ("preserves_killing".to_string(), x.preserves_killing),
        ("is_lie_automorphism".to_string(), x.is_lie_automorphism),
        ("pulled_back_btp".to_string(), x.pulled_back_btp),
        ("relation_consistent".to_string(), consistent),
    ]);
    let entry = EntryReport {
        name: format!("b-isometry {cartan} seed {seed}"),
        kind: "experiment".into(),
        description: format!("{} pulled back by a {}", x.space, x.map),
        passed: consistent,
        flags,
        expected: BTreeMap::from([("relation_consistent".to_string(), true)]),
        mismatches: if consistent { vec![] } else { vec!["relation_consistent: expected true, got false".into()] },
        witnesses: BTreeMap::new(),
        warnings: vec![],
        details: serde_json::to_value(&x).unwrap_or_default(),
        timing_ms: t.elapsed().as_millis(),
    };
    Ok(RunReport::new(&format!("experiment b-isometry {cartan}"), vec![entry]))
}
