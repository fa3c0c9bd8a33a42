//! Built-in spaces with their expected flag vectors.

use serde::Serialize;

use crate::config::{FlagMetricSpec, SpaceEntry, SpaceSpec};

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub description: &'static str,
    pub entry: SpaceEntry,
}

fn s(x: &str) -> String {
    x.to_string()
}

fn flag(cartan: &str, isotropy: &[usize], metric: Option<FlagMetricSpec>) -> SpaceSpec {
    SpaceSpec::Flag { cartan: s(cartan), isotropy: isotropy.to_vec(), complex_structure: None, metric }
}

pub fn catalog() -> Vec<CatalogEntry> {
    let killing_flags = [("btp", true), ("bas", true), ("balanced", true), ("kahler", false)];
    let e = |description, entry| CatalogEntry { description, entry };
    vec![
        e(
            "SL(2,C) with the canonical metric",
            SpaceEntry::new("canonical-sl2", SpaceSpec::Canonical { cartan: s("A1") }).expecting(&[
                ("btp", true),
                ("chern_flat", true),
                ("bas", true),
                ("btp2", true),
                ("formulas", true),
                ("kahler", false),
            ]),
        ),
        e(
            "SL(3,C) with the canonical metric",
            SpaceEntry::new("canonical-sl3", SpaceSpec::Canonical { cartan: s("A2") }).expecting(&[
                ("btp", true),
                ("chern_flat", true),
                ("bas", true),
                ("btp2", true),
                ("formulas", true),
            ]),
        ),
        e("SU(3)/T, Killing metric", SpaceEntry::new("flag-su3-killing", flag("A2", &[], None)).expecting(&killing_flags)),
        e(
            "SU(3)/T, Kähler metric from the grading",
            SpaceEntry::new("flag-su3-kahler", flag("A2", &[], Some(FlagMetricSpec::Named(s("grading")))))
                .expecting(&[("kahler", true), ("btp", true), ("balanced", true)]),
        ),
        e(
            "SU(3)/T, metric (1, 2, 2): neither Kähler nor BTP",
            SpaceEntry::new("flag-su3-generic", flag("A2", &[], Some(FlagMetricSpec::Values(vec![s("1"), s("2"), s("2")]))))
                .expecting(&[("kahler", false), ("btp", false)]),
        ),
        e("SU(4)/T, Killing metric", SpaceEntry::new("flag-su4-killing", flag("A3", &[], None)).expecting(&killing_flags)),
        e("G2/U(2), Killing metric", SpaceEntry::new("flag-g2-u2-killing", flag("G2", &[0], None)).expecting(&killing_flags)),
        e(
            "Sp(3)/U(3)-type Hermitian symmetric flag, Killing metric",
            SpaceEntry::new("flag-c3-hermitian-symmetric", flag("C3", &[0, 1], None)).expecting(&[
                ("hermitian_symmetric", true),
                ("kahler", true),
                ("btp", true),
                ("bas", true),
            ]),
        ),
        e(
            "SU(3) with a Samelson structure, g_α ≡ 1",
            SpaceEntry::new("samelson-su3", SpaceSpec::Samelson { cartan: vec![s("A2")], roots: None, torus: None })
                .expecting(&[("btp", true), ("bas", true), ("formulas", true), ("curvature_formula", true)]),
        ),
        e(
            "SU(3) with a Samelson structure, g = (1, 1, 2)",
            SpaceEntry::new(
                "samelson-su3-nonconstant",
                SpaceSpec::Samelson { cartan: vec![s("A2")], roots: Some(vec![s("1"), s("1"), s("2")]), torus: None },
            )
            .expecting(&[("btp", false), ("formulas", true)]),
        ),
        e(
            "Kodaira-type nilpotent group, n = 2, Y = (1)",
            SpaceEntry::new("nilpotent-kodaira", SpaceSpec::Nilpotent { n: 2, r: 1, y: vec![vec![s("1")]] }).expecting(&[
                ("btp", true),
                ("bas", true),
                ("structure_constants", true),
                ("abelian_j", true),
                ("curvature_formula", true),
            ]),
        ),
        e(
            "Nilpotent group, n = 3, r = 2",
            SpaceEntry::new("nilpotent-n3", SpaceSpec::Nilpotent { n: 3, r: 2, y: vec![vec![s("1/2+i"), s("-2+1/3i")]] })
                .expecting(&[("btp", true), ("bas", true), ("connection_diagonal", true), ("curvature_formula", true)]),
        ),
        e(
            "(SU(3) x R)/S^1 at (a1, a2) = (-3, 1): BTP, not BAS",
            SpaceEntry::new("m4", SpaceSpec::M4 { a1: -3, a2: 1 }).expecting(&[
                ("btp", true),
                ("bas", false),
                ("base_kahler", true),
                ("omega_matches_killing", true),
                ("d_omega_is_theta_wedge_omega", true),
                ("reductivity_witness_nonzero", true),
                ("naturally_reductive", false),
            ]),
        ),
        e(
            "Calabi-Eckmann S^3 x S^3",
            SpaceEntry::new(
                "calabi-eckmann-s3s3",
                SpaceSpec::CalabiEckmann {
                    m1: 1,
                    m2: 1,
                    alpha: None,
                    beta: None,
                    c: None,
                    q_scale: None,
                    max_denominator: None,
                },
            )
            .expecting(&[("certificate", true), ("btp", true), ("bas", true)]),
        ),
        e(
            "Isosceles Hopf metric on C^2 minus the origin",
            SpaceEntry::new(
                "hopf-2",
                SpaceSpec::Hopf { n: 2, samples: Some(20), step: None, seed: None, profile: None },
            )
            .expecting(&[("passed", true), ("btp", true), ("xi_identity", true)]),
        ),
        e(
            "Hopf metric with a (1 + |z1|^2/2) factor",
            SpaceEntry::new(
                "hopf-2-perturbed",
                SpaceSpec::Hopf {
                    n: 2,
                    samples: Some(5),
                    step: None,
                    seed: None,
                    profile: Some(lieherm::coordgeo::Profile::PerturbedHopf { eps: 0.5 }),
                },
            )
            .expecting(&[("btp", false)]),
        ),
    ]
}

pub fn lookup(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|c| c.entry.name.as_deref() == Some(name))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let mut names: Vec<_> = catalog().into_iter().map(|c| c.entry.name.unwrap()).collect();
        let n = names.len();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), n);
        assert!(lookup("m4").is_some() && lookup("nope").is_none());
    }
}
