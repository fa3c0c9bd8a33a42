use std::collections::BTreeMap;
use std::path::PathBuf;

use lieherm_cli::catalog::catalog;
use lieherm_cli::run::{cmd_check, RunOptions};

type Golden = BTreeMap<String, BTreeMap<String, bool>>;

fn golden_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("golden/catalog.json")
}

/// Set `LIEHERM_BLESS=1` to rewrite the golden file after a reviewed change.
#[test]
fn catalog_passes_and_matches_golden_flags() {
    let entries: Vec<_> = catalog().into_iter().map(|c| c.entry).collect();
    let report = cmd_check(&entries, &RunOptions::default()).unwrap();
    for e in &report.entries {
        assert!(e.passed, "{}: {:?}", e.name, e.mismatches);
    }
    let computed: Golden = report.entries.iter().map(|e| (e.name.clone(), e.flags.clone())).collect();
    if std::env::var_os("LIEHERM_BLESS").is_some() {
        std::fs::write(golden_path(), serde_json::to_string_pretty(&computed).unwrap() + "\n").unwrap();
    }
    let golden: Golden = serde_json::from_str(&std::fs::read_to_string(golden_path()).unwrap()).unwrap();
    assert_eq!(computed, golden);
}
