use lieherm_cli::catalog::catalog;
use lieherm_cli::run::{cmd_check, RunOptions};
use lieherm_cli::config::{parse_config, SpaceEntry, SpaceSpec};
use proptest::prelude::*;

#[test]
fn reports_are_deterministic() {
    let entries: Vec<_> = catalog().into_iter().map(|c| c.entry).collect();
    let opts = RunOptions::default();
    let a = cmd_check(&entries, &opts).unwrap().without_timing();
    let b = cmd_check(&entries, &opts).unwrap().without_timing();
    assert_eq!(a, b);
}

#[test]
fn catalog_entries_round_trip() {
    for c in catalog() {
        let text = serde_json::to_string(&c.entry).unwrap();
        assert_eq!(parse_config(&text).unwrap(), vec![c.entry]);
    }
}

fn rational() -> impl Strategy<Value = String> {
    (-20i64..20, 1i64..9).prop_map(|(n, d)| format!("{n}/{d}"))
}

fn space() -> impl Strategy<Value = SpaceSpec> {
    prop_oneof![
        prop::sample::select(vec!["A1", "A2", "B2", "G2"]).prop_map(|c| SpaceSpec::Canonical { cartan: c.into() }),
        (-9i64..0, 1i64..5).prop_map(|(a1, a2)| SpaceSpec::M4 { a1, a2 }),
        (2usize..4, prop::collection::vec((rational(), rational()), 2)).prop_map(|(n, ys)| SpaceSpec::Nilpotent {
            n,
            r: 1,
            y: ys.into_iter().take(n - 1).map(|(a, b)| vec![format!("{a}+{b}i")]).collect(),
        }),
        (prop::collection::vec(0usize..3, 0..2), prop::option::of(prop::collection::vec(rational(), 3))).prop_map(
            |(isotropy, metric)| SpaceSpec::Flag {
                cartan: "A3".into(),
                isotropy,
                complex_structure: None,
                metric: metric.map(lieherm_cli::config::FlagMetricSpec::Values),
            }
        ),
    ]
}

proptest! {
    #[test]
    fn space_entries_round_trip(space in space(), name in prop::option::of("[a-z]{1,8}"), expect in prop::option::of(prop::collection::btree_map("[a-z_]{1,6}", any::<bool>(), 0..3))) {
        let entry = SpaceEntry { name, space, expect };
        let text = serde_json::to_string(&entry).unwrap();
        prop_assert_eq!(parse_config(&text).unwrap(), vec![entry.clone()]);
        let wrapped = format!(r#"{{"spaces":[{text},{text}]}}"#);
        prop_assert_eq!(parse_config(&wrapped).unwrap(), vec![entry.clone(), entry]);
    }
}
