use lieherm_cli::run::RunOptions;
use lieherm_cli::theorem::{cmd_theorem, THEOREMS};
use lieherm_cli::CliError;

#[test]
fn every_bundle_passes() {
    let opts = RunOptions { samples: 2000, ..RunOptions::default() };
    for (id, _) in THEOREMS {
        let r = cmd_theorem(id, &opts).unwrap();
        assert!(!r.entries.is_empty(), "{id}");
        for e in &r.entries {
            assert!(e.passed, "{id} / {}: {}", e.name, e.description);
        }
    }
}

#[test]
fn unknown_id_lists_known_ids() {
    match cmd_theorem("nope", &RunOptions::default()) {
        Err(CliError::Usage(msg)) => assert!(msg.contains("flag-su4")),
        other => panic!("{other:?}"),
    }
}
