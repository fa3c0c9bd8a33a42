//! Acceptance suite: one printed PASS/FAIL line per criterion, then a single
//! assertion over all of them. Run with `--nocapture` to see the lines.

use std::time::{Duration, Instant};

use lieherm::coordgeo::{hopf_check, HopfConfig};
use lieherm::flagspace::{
    build_flag, class_c_instances, closed_form_witness, enumerate_complex_structures, flag_model, killing_metric,
    solve_btp_metrics, FamilyTag, FlagComplexStructure, FlagManifold, FlagMetric, SolveOptions,
};
use lieherm::groupgeom::m4::m4_example;
use lieherm::groupgeom::nilpotent::{nilpotent_model, nilpotent_report, NilpotentNormalForm};
use lieherm::groupgeom::samelson::{
    bismut_curvature_witness, samelson_btp_witness, samelson_formula_witness, samelson_model,
    solve_samelson_projectable, SamelsonGroup, SamelsonMetric, SamelsonStructure,
};
use lieherm::groupgeom::{
    b_isometry_relation, btp2_identity, canonical_formula_witness, canonical_metric, random_inner_automorphism,
};
use lieherm::hermgeo::report::check_conditions_with;
use lieherm::hermgeo::{check_conditions, InfinitesimalModel};
use lieherm::rootsys::{build_root_system, chevalley_constants, check_chevalley_invariants, CartanType};
use lieherm::scalar::{q, Q, Qi};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn ct(s: &str) -> CartanType {
    s.parse().unwrap()
}

fn full_flag(s: &str) -> FlagManifold {
    build_flag(ct(s), &[]).unwrap()
}

/// Metric with `g_α` the sum of painted simple-root coefficients of `α`.
fn grading_metric(fm: &FlagManifold) -> FlagMetric {
    let values = fm
        .classes()
        .iter()
        .map(|class| {
            let root = &fm.root_system().root(class[0]).0;
            let painted: i32 =
                root.iter().enumerate().filter(|(i, _)| !fm.isotropy_simple().contains(i)).map(|(_, c)| *c).sum();
            q(painted as i128)
        })
        .collect();
    FlagMetric::new(fm, values).unwrap()
}

/// Flag spaces with the metrics exercised across the catalog.
fn flag_cases() -> Vec<(String, FlagManifold, FlagComplexStructure, FlagMetric)> {
    let mut spaces: Vec<(String, FlagManifold)> = vec![
        ("SU(3)/T".into(), full_flag("A2")),
        ("SU(4)/T".into(), full_flag("A3")),
        ("G2/U(2)".into(), build_flag(ct("G2"), &[0]).unwrap()),
        ("C3 [0,1]".into(), build_flag(ct("C3"), &[0, 1]).unwrap()),
    ];
    spaces.extend(class_c_instances(4).iter().map(|i| (i.name.clone(), i.flag())));
    let mut out = Vec::new();
    for (name, fm) in spaces {
        let cs = FlagComplexStructure::standard(&fm);
        out.push((format!("{name} Killing"), fm.clone(), cs.clone(), killing_metric(&fm)));
        out.push((format!("{name} grading"), fm.clone(), cs.clone(), grading_metric(&fm)));
        if fm.classes().len() == 3 {
            let g = FlagMetric::new(&fm, vec![q(1), q(2), q(2)]).unwrap();
            out.push((format!("{name} (1,2,2)"), fm.clone(), cs, g));
        }
    }
    out
}

fn samelson_su3() -> (SamelsonGroup, SamelsonStructure, lieherm::linalg::Mat<Q>) {
    let group = SamelsonGroup::new(&[ct("A2")]);
    let (structure, g_o) = SamelsonStructure::default_for(&group).unwrap();
    (group, structure, g_o)
}

fn nilpotent_forms() -> Vec<NilpotentNormalForm> {
    let y = |s: &str| s.parse::<Qi>().unwrap();
    vec![
        NilpotentNormalForm::new(2, 1, vec![vec![y("1")]]).unwrap(),
        NilpotentNormalForm::new(3, 2, vec![vec![y("1/2+i"), y("-2+1/3i")]]).unwrap(),
        NilpotentNormalForm::new(3, 1, vec![vec![y("1/3+1/3i")], vec![y("2/3i")]]).unwrap(),
    ]
}

/// Every model the catalog exercises, by name.
fn catalog_models() -> Vec<(String, InfinitesimalModel)> {
    let mut out = Vec::new();
    for t in ["A1", "A2"] {
        out.push((format!("canonical {t}"), canonical_metric(ct(t)).model));
    }
    for (name, fm, cs, g) in flag_cases() {
        out.push((name, flag_model(&fm, &cs, &g).unwrap()));
    }
    let (group, structure, g_o) = samelson_su3();
    for roots in [vec![q(1), q(1), q(1)], vec![q(1), q(1), q(2)]] {
        let m = SamelsonMetric { roots: roots.clone(), torus: g_o.clone() };
        out.push((format!("Samelson SU(3) {roots:?}"), samelson_model(&group, &structure, &m).unwrap()));
    }
    for nf in nilpotent_forms() {
        out.push((format!("nilpotent n={} r={}", nf.n, nf.r), nilpotent_model(&nf).unwrap()));
    }
    for (a1, a2) in [(-3, 1), (-5, 1), (-5, 2)] {
        out.push((format!("M4({a1},{a2})"), lieherm::groupgeom::m4::m4_model(a1, a2).unwrap()));
    }
    out
}

fn c1_chevalley() -> Outcome {
    let mut fails = Vec::new();
    for t in ["A1", "A2", "A3", "B2", "G2"] {
        let rs = build_root_system(ct(t));
        let ch = chevalley_constants(&rs);
        if let Some(w) = check_chevalley_invariants(&rs, &ch) {
            fails.push(format!("{t}: {w}"));
        }
    }
    outcome(fails.is_empty(), if fails.is_empty() { "A1 A2 A3 B2 G2 invariants exact".into() } else { fails.join("; ") })
}

fn c2_canonical() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for t in ["A1", "A2"] {
        let c = canonical_metric(ct(t));
        let r = check_conditions(&c.model);
        let formulas = canonical_formula_witness(&c);
        ok &= r.btp.holds && r.chern_flat.holds && formulas.is_none();
        parts.push(format!("{t}: btp {} chern_flat {} formulas {}", r.btp.holds, r.chern_flat.holds, formulas.unwrap_or("match".into())));
    }
    outcome(ok, parts.join("; "))
}

fn c3_canonical_bas() -> Outcome {
    let v: Vec<bool> =
        ["A1", "A2"].iter().map(|t| check_conditions(&canonical_metric(ct(t)).model).bas.is_some_and(|b| b.holds)).collect();
    outcome(v.iter().all(|&b| b), format!("bas on A1, A2: {v:?}"))
}

fn c4_btp2(models: &[(String, InfinitesimalModel)]) -> Outcome {
    let mut checked = Vec::new();
    let mut ok = true;
    for (name, m) in models {
        let r = check_conditions(m);
        if r.btp.holds && r.chern_flat.holds {
            let b = btp2_identity(m);
            ok &= b.holds() && r.btp2.holds;
            checked.push(name.clone());
        }
    }
    ok &= !checked.is_empty();
    outcome(ok, format!("Chern-flat BTP models: {}", checked.join(", ")))
}

fn c5_b_isometry() -> Outcome {
    let c = canonical_metric(ct("A1"));
    let mut residuals = Vec::new();
    let scaled = b_isometry_relation(&c.metric, &c.metric.scaled(q(2)));
    residuals.push(scaled.map(|r| r.residual_zero && r.residual_max == "0").unwrap_or(false));
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..5 {
        let a = random_inner_automorphism(&c, &mut rng);
        let r = c.metric.pullback(&a).and_then(|h| b_isometry_relation(&c.metric, &h));
        residuals.push(r.map(|r| r.residual_zero && r.residual_max == "0").unwrap_or(false));
    }
    outcome(residuals.iter().all(|&b| b), format!("residual exactly 0: {residuals:?}"))
}

fn c6_killing_flags() -> Outcome {
    let mut spaces: Vec<(String, FlagManifold)> = class_c_instances(4).iter().map(|i| (i.name.clone(), i.flag())).collect();
    spaces.push(("SU(3)/T".into(), full_flag("A2")));
    spaces.push(("SU(4)/T".into(), full_flag("A3")));
    let mut fails = Vec::new();
    let n = spaces.len();
    for (name, fm) in spaces {
        let cs = FlagComplexStructure::standard(&fm);
        let r = check_conditions(&flag_model(&fm, &cs, &killing_metric(&fm)).unwrap());
        let bas = r.bas.as_ref().is_some_and(|v| v.holds);
        if !(r.btp.holds && bas && r.balanced.holds && r.kahler.holds == fm.is_hermitian_symmetric()) {
            fails.push(name);
        }
    }
    outcome(fails.is_empty(), format!("{n} spaces, failures: {fails:?}"))
}

fn two_families(fm: &FlagManifold) -> (bool, String) {
    let cs = FlagComplexStructure::standard(fm);
    let rep = solve_btp_metrics(fm, &cs, &SolveOptions::default());
    let mut tags = rep.tag_summary();
    tags.sort();
    // Every verification point re-checked by the generic engine.
    let verified = rep.families.iter().all(|f| {
        !f.verified_points.is_empty()
            && f.verified_points.iter().all(|x| {
                let g = FlagMetric::new(fm, x.clone()).unwrap();
                check_conditions(&flag_model(fm, &cs, &g).unwrap()).btp.holds
            })
    });
    let ok = tags == vec![vec![FamilyTag::KahlerFamily], vec![FamilyTag::KillingRay]]
        && rep.btp_outside_families.is_empty()
        && rep.samples == 10_000
        && rep.engine_cross_check_agrees
        && verified
        && !rep.partial;
    (ok, format!("{}: {tags:?}, {}/{} samples BTP, {} outside", rep.space, rep.samples_btp, rep.samples, rep.btp_outside_families.len()))
}

fn c7_full_flags() -> Outcome {
    let (a, da) = two_families(&full_flag("A2"));
    let (b, db) = two_families(&full_flag("A3"));
    outcome(a && b, format!("{da}; {db}"))
}

fn c8_two_summands() -> Outcome {
    let inst = class_c_instances(4)
        .into_iter()
        .find(|i| i.name.starts_with('B') && i.summands == 2 && !i.hermitian_symmetric)
        .unwrap();
    let (a, da) = two_families(&build_flag(ct("G2"), &[0]).unwrap());
    let (b, db) = two_families(&inst.flag());
    // Exact verification of one point on each family.
    let mut exact = true;
    for fm in [build_flag(ct("G2"), &[0]).unwrap(), inst.flag()] {
        let cs = FlagComplexStructure::standard(&fm);
        for g in [killing_metric(&fm), grading_metric(&fm)] {
            exact &= check_conditions(&flag_model(&fm, &cs, &g).unwrap()).btp.holds;
        }
    }
    outcome(a && b && exact, format!("{da}; {db}; exact points BTP {exact}"))
}

fn c9_samelson() -> Outcome {
    let (group, structure, g_o) = samelson_su3();
    let rep = solve_samelson_projectable(&group, &structure, &g_o, &SolveOptions::default()).unwrap();
    let constant = rep.is_factorwise_constant(&group) && rep.btp_outside_families.is_empty();
    let metric = SamelsonMetric::constant(&group, q(1), g_o.clone());
    let model = samelson_model(&group, &structure, &metric).unwrap();
    let r = check_conditions(&model);
    let constructed = r.btp.holds
        && r.bas.as_ref().is_some_and(|v| v.holds)
        && bismut_curvature_witness(&group, &metric, &model).is_none()
        && samelson_formula_witness(&group, &metric, &model).is_none();
    let mut witnesses = 0;
    let bad = [[1, 1, 2], [1, 2, 3], [2, 1, 1], [3, 1, 3]];
    for roots in bad {
        let m = SamelsonMetric { roots: roots.iter().map(|&x| q(x)).collect(), torus: g_o.clone() };
        let model = samelson_model(&group, &structure, &m).unwrap();
        if samelson_btp_witness(&group, &model).is_some() && !check_conditions(&model).btp.holds {
            witnesses += 1;
        }
    }
    outcome(
        constant && constructed && witnesses == bad.len(),
        format!("family constant {constant}, g≡1 btp+bas+curvature {constructed}, witnesses {witnesses}/{}", bad.len()),
    )
}

fn c10_nilpotent() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut ok = true;
    let mut btp = 0;
    for _ in 0..10 {
        let n = rng.gen_range(2..=3);
        let r = rng.gen_range(1..n);
        let mut entry = || {
            let d = rng.gen_range(1..=5);
            Qi::new(Q::new(rng.gen_range(-5..=5), d), Q::new(rng.gen_range(-5..=5), d))
        };
        let y = (0..n - r).map(|_| (0..r).map(|_| entry()).collect()).collect();
        let nf = NilpotentNormalForm::new(n, r, y).unwrap();
        let c = check_conditions(&nilpotent_model(&nf).unwrap());
        let rep = nilpotent_report(&nf).unwrap();
        btp += c.btp.holds as usize;
        ok &= (!c.btp.holds || c.bas.as_ref().is_some_and(|v| v.holds))
            && rep.curvature_formula_matches
            && rep.curvature_closed_form_matches;
    }
    outcome(ok, format!("10 random Y, {btp} BTP, all BTP ones BAS with matching curvature: {ok}"))
}

fn c11_hopf() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [2, 3] {
        let cfg = HopfConfig::new(n);
        match hopf_check(&cfg) {
            Ok(r) => {
                let good = cfg.samples == 20
                    && cfg.step == 1e-5
                    && r.residuals.btp < 1e-6
                    && r.residuals.xi < 1e-6
                    && r.btp_order >= 1.9
                    && r.xi_order >= 1.9;
                ok &= good;
                parts.push(format!(
                    "n={n}: btp {:.2e} xi {:.2e} orders {:.2}/{:.2}",
                    r.residuals.btp, r.residuals.xi, r.btp_order, r.xi_order
                ));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("n={n}: {e}"));
            }
        }
    }
    outcome(ok, parts.join("; "))
}

fn c12_m4() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (a1, a2) in [(-3, 1), (-5, 1), (-5, 2)] {
        let r = m4_example(a1, a2).unwrap();
        ok &= r.d_omega_is_theta_wedge_omega && r.naturally_reductive_failure != "0";
        parts.push(format!("({a1},{a2}) dω=θ∧ω {} witness {}", r.d_omega_is_theta_wedge_omega, r.naturally_reductive_failure));
    }
    outcome(ok, parts.join("; "))
}

fn c13_cross_engine(models: &[(String, InfinitesimalModel)]) -> Outcome {
    let mut fails = Vec::new();
    let mut flags = 0;
    for (name, fm, cs, g) in flag_cases() {
        flags += 1;
        if let Some(w) = closed_form_witness(&fm, &cs, &g).unwrap() {
            fails.push(format!("{name}: {w}"));
        }
    }
    // Every invariant complex structure of the full SU(3) flag.
    let fm = full_flag("A2");
    for cs in enumerate_complex_structures(&fm) {
        for g in [killing_metric(&fm), FlagMetric::new(&fm, vec![q(1), q(2), q(3)]).unwrap()] {
            if let Some(w) = closed_form_witness(&fm, &cs, &g).unwrap() {
                fails.push(format!("SU(3)/T non-standard J: {w}"));
            }
        }
    }
    let (group, structure, g_o) = samelson_su3();
    for roots in [[1, 1, 1], [1, 1, 2], [2, 3, 5]] {
        let m = SamelsonMetric { roots: roots.iter().map(|&x| q(x)).collect(), torus: g_o.clone() };
        let model = samelson_model(&group, &structure, &m).unwrap();
        if let Some(w) = samelson_formula_witness(&group, &m, &model) {
            fails.push(format!("Samelson {roots:?}: {w}"));
        }
    }
    for (name, m) in models {
        let r = check_conditions_with(m, 1e-9);
        if !r.paths_agree {
            fails.push(format!("{name}: componentwise and tensorial BTP paths disagree"));
        }
        if r.literal_btp.as_ref().is_some_and(|v| v.holds != r.btp.holds) {
            fails.push(format!("{name}: literal BTP system disagrees"));
        }
    }
    outcome(fails.is_empty(), format!("{flags} flag cases, 3 Samelson metrics, {} models; failures: {fails:?}", models.len()))
}

fn c14_symmetries(models: &[(String, InfinitesimalModel)]) -> Outcome {
    let mut fails = Vec::new();
    let mut checked = 0;
    for (name, m) in models {
        let r = check_conditions(m);
        if r.btp.holds {
            checked += 1;
            match &r.curvature_symmetries {
                Some(s) if s.bismut_20_vanishes && s.bismut_pair_symmetric => {}
                _ => fails.push(name.clone()),
            }
        }
    }
    outcome(fails.is_empty() && checked > 0, format!("{checked} BTP models, failures: {fails:?}"))
}

/// Id, title, time budget, check.
type Criterion<'a> = (u32, &'static str, Duration, Box<dyn Fn() -> Outcome + 'a>);

#[test]
fn acceptance() {
    let models = catalog_models();
    let criteria: Vec<Criterion> = vec![
        (1, "Chevalley invariants", Duration::from_secs(1), Box::new(c1_chevalley)),
        (2, "canonical metrics BTP and Chern flat", Duration::from_secs(5), Box::new(c2_canonical)),
        (3, "canonical metrics BAS", Duration::from_secs(5), Box::new(c3_canonical_bas)),
        (4, "torsion norm identity on Chern-flat BTP models", Duration::from_secs(60), Box::new(|| c4_btp2(&models))),
        (5, "B-isometry relation", Duration::from_secs(10), Box::new(c5_b_isometry)),
        (6, "Killing metrics on flags", Duration::from_secs(60), Box::new(c6_killing_flags)),
        (7, "BTP metrics on SU(3)/T and SU(4)/T", Duration::from_secs(300), Box::new(c7_full_flags)),
        (8, "BTP metrics on two-summand flags", Duration::from_secs(120), Box::new(c8_two_summands)),
        (9, "Samelson SU(3)", Duration::from_secs(60), Box::new(c9_samelson)),
        (10, "nilpotent BTP implies BAS", Duration::from_secs(60), Box::new(c10_nilpotent)),
        (11, "Hopf residuals and convergence", Duration::from_secs(30), Box::new(c11_hopf)),
        (12, "M4 identities", Duration::from_secs(10), Box::new(c12_m4)),
        (13, "cross-engine agreement", Duration::from_secs(300), Box::new(|| c13_cross_engine(&models))),
        (14, "BTP curvature symmetries", Duration::from_secs(300), Box::new(|| c14_symmetries(&models))),
    ];
    println!();
    let mut failed = Vec::new();
    for (id, title, budget, run) in criteria {
        let t = Instant::now();
        let o = run();
        let elapsed = t.elapsed();
        let in_time = elapsed <= budget;
        let pass = o.passed && in_time;
        println!(
            "criterion {id:>2} {}: {title} [{:.2}s / {}s] {}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs(),
            o.detail
        );
        if !pass {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
