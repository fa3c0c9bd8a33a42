//! Evaluation of config entries into reports.

use std::collections::BTreeMap;
use std::time::Instant;

use lieherm::coordgeo::{hopf_check, HopfConfig, Profile};
use lieherm::flagspace::{
    build_flag, flag_model, killing_metric, solve_btp_metrics, FlagComplexStructure, FlagManifold, FlagMetric,
    SolveOptions,
};
use lieherm::groupgeom::calabi_eckmann::{calabi_eckmann_search, CalabiEckmann};
use lieherm::groupgeom::m4::m4_example;
use lieherm::groupgeom::nilpotent::{nilpotent_model, nilpotent_report, NilpotentNormalForm};
use lieherm::groupgeom::samelson::{
    bismut_curvature_witness, samelson_formula_witness, samelson_model, solve_samelson_projectable, SamelsonGroup,
    SamelsonMetric, SamelsonStructure,
};
use lieherm::groupgeom::{btp2_identity, canonical_formula_witness, canonical_metric};
use lieherm::hermgeo::report::{check_conditions_with, CheckReport, Verdict, DEFAULT_TOLERANCE};
use lieherm::hermgeo::InfinitesimalModel;
use lieherm::scalar::{q, Q};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::config::{cartan, gaussian, rational, rational_matrix, FlagMetricSpec, SpaceEntry, SpaceSpec};
use crate::CliError;

#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Floating cross-check tolerance; `None` keeps each engine's default.
    pub tolerance: Option<f64>,
    pub solver_cap: usize,
    pub samples: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        let d = SolveOptions::default();
        RunOptions { tolerance: None, solver_cap: d.cap, samples: d.samples }
    }
}

impl RunOptions {
    fn solve_options(&self) -> SolveOptions {
        SolveOptions { cap: self.solver_cap, samples: self.samples, ..SolveOptions::default() }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct EntryReport {
    pub name: String,
    pub kind: String,
    pub description: String,
    pub passed: bool,
    pub flags: BTreeMap<String, bool>,
    pub expected: BTreeMap<String, bool>,
    pub mismatches: Vec<String>,
    pub witnesses: BTreeMap<String, String>,
    pub warnings: Vec<String>,
    pub details: Value,
    /// Wall time; excluded from determinism comparisons.
    pub timing_ms: u128,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct RunReport {
    pub command: String,
    pub passed: bool,
    pub entries: Vec<EntryReport>,
}

impl RunReport {
    pub fn new(command: &str, entries: Vec<EntryReport>) -> Self {
        RunReport { command: command.to_string(), passed: entries.iter().all(|e| e.passed), entries }
    }

    /// Copy with timings zeroed.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        for e in &mut r.entries {
            e.timing_ms = 0;
        }
        r
    }
}

/// Computed facts about one space before expectations are applied.
#[derive(Default)]
pub struct Outcome {
    pub description: String,
    pub flags: BTreeMap<String, bool>,
    pub witnesses: BTreeMap<String, String>,
    pub warnings: Vec<String>,
    pub default_expect: Vec<(&'static str, bool)>,
    pub details: Value,
}

impl Outcome {
    fn flag(&mut self, name: &str, value: bool) {
        self.flags.insert(name.to_string(), value);
    }

    fn witness(&mut self, name: &str, text: Option<String>) {
        if let Some(t) = text {
            self.witnesses.insert(name.to_string(), t);
        }
    }

    fn verdict(&mut self, name: &str, v: &Verdict) {
        self.flag(name, v.holds);
        self.witness(
            name,
            v.witness.as_ref().map(|w| format!("at ({}) value {}", w.labels.join(", "), w.value)),
        );
    }

    fn check_report(&mut self, r: &CheckReport) {
        self.verdict("kahler", &r.kahler);
        self.verdict("balanced", &r.balanced);
        self.verdict("pluriclosed", &r.pluriclosed);
        self.verdict("chern_flat", &r.chern_flat);
        self.verdict("bismut_flat", &r.bismut_flat);
        self.verdict("btp", &r.btp);
        match &r.bas {
            Some(v) => self.verdict("bas", v),
            None => {
                self.flag("bas", false);
                self.witness("bas", Some("not evaluated: metric is not BTP".into()));
            }
        }
        self.verdict("naturally_reductive", &r.naturally_reductive);
        self.flag("paths_agree", r.paths_agree);
        if let Some(s) = &r.curvature_symmetries {
            self.flag("curvature_symmetries", s.bismut_20_vanishes && s.bismut_pair_symmetric);
        }
    }
}

fn serialize<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn tolerance(opts: &RunOptions) -> f64 {
    opts.tolerance.unwrap_or(DEFAULT_TOLERANCE)
}

fn model_outcome(model: &InfinitesimalModel, opts: &RunOptions) -> (Outcome, CheckReport) {
    let r = check_conditions_with(model, tolerance(opts));
    let mut o = Outcome { description: format!("{} (real dim {})", model.name(), model.dim()), ..Outcome::default() };
    o.check_report(&r);
    (o, r)
}

pub fn flag_space(
    ct: &str,
    isotropy: &[usize],
    cs: Option<&Vec<bool>>,
) -> Result<(FlagManifold, FlagComplexStructure), CliError> {
    let fm = build_flag(cartan(ct)?, isotropy).map_err(|e| CliError::Config(e.to_string()))?;
    let cs = match cs {
        None => FlagComplexStructure::standard(&fm),
        Some(signs) => FlagComplexStructure::new(&fm, signs.clone()).map_err(|e| CliError::Config(e.to_string()))?,
    };
    Ok((fm, cs))
}

/// Sum of painted simple-root coefficients; additive, hence Kähler for the
/// standard structure.
pub fn grading_metric(fm: &FlagManifold) -> FlagMetric {
    let rs = fm.root_system();
    let painted: Vec<usize> = (0..rs.rank()).filter(|i| !fm.isotropy_simple().contains(i)).collect();
    let values = fm
        .classes()
        .iter()
        .map(|c| q(painted.iter().map(|&i| rs.root(c[0]).0[i] as i128).sum()))
        .collect();
    FlagMetric { values }
}

fn flag_metric(fm: &FlagManifold, spec: Option<&FlagMetricSpec>) -> Result<FlagMetric, CliError> {
    match spec {
        None => Ok(killing_metric(fm)),
        Some(FlagMetricSpec::Named(n)) if n == "killing" => Ok(killing_metric(fm)),
        Some(FlagMetricSpec::Named(n)) if n == "grading" => Ok(grading_metric(fm)),
        Some(FlagMetricSpec::Named(n)) => Err(CliError::Config(format!("unknown flag metric {n:?}"))),
        Some(FlagMetricSpec::Values(v)) => {
            let values = v.iter().map(|x| rational("metric", x)).collect::<Result<Vec<Q>, _>>()?;
            FlagMetric::new(fm, values).map_err(|e| CliError::Config(e.to_string()))
        }
    }
}

pub fn samelson_setup(
    types: &[String],
    roots: Option<&Vec<String>>,
    torus: Option<&Vec<Vec<String>>>,
) -> Result<(SamelsonGroup, SamelsonStructure, SamelsonMetric), CliError> {
    let cts = types.iter().map(|t| cartan(t)).collect::<Result<Vec<_>, _>>()?;
    if cts.is_empty() {
        return Err(CliError::Config("samelson needs at least one factor".into()));
    }
    let group = SamelsonGroup::new(&cts);
    let (structure, g_o) = SamelsonStructure::default_for(&group).map_err(|e| CliError::Config(e.to_string()))?;
    let k = group.positive_roots().len();
    let roots = match roots {
        None => vec![Q::from_integer(1); k],
        Some(v) => v.iter().map(|x| rational("roots", x)).collect::<Result<_, _>>()?,
    };
    let torus = match torus {
        None => g_o,
        Some(m) => rational_matrix("torus", m)?,
    };
    Ok((group, structure, SamelsonMetric { roots, torus }))
}

pub fn nilpotent_form(n: usize, r: usize, y: &[Vec<String>]) -> Result<NilpotentNormalForm, CliError> {
    let y = y
        .iter()
        .map(|row| row.iter().map(|x| gaussian("y", x)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    NilpotentNormalForm::new(n, r, y).map_err(|e| CliError::Config(e.to_string()))
}

#[allow(clippy::too_many_arguments)]
pub fn calabi_eckmann_params(
    m1: usize,
    m2: usize,
    alpha: Option<&String>,
    beta: Option<&String>,
    c: Option<&[String; 2]>,
    q_scale: Option<&String>,
) -> Result<CalabiEckmann, CliError> {
    let mut ce = CalabiEckmann::new(m1, m2);
    if let Some(a) = alpha {
        ce.alpha = rational("alpha", a)?;
    }
    if let Some(b) = beta {
        ce.beta = rational("beta", b)?;
    }
    if let Some([c1, c2]) = c {
        ce.c = [rational("c", c1)?, rational("c", c2)?];
    }
    if let Some(s) = q_scale {
        ce.q_scale = rational("q_scale", s)?;
    }
    Ok(ce)
}

fn group_error(e: impl std::fmt::Display) -> CliError {
    CliError::Config(e.to_string())
}

/// Builds and checks one space.
pub fn evaluate(space: &SpaceSpec, opts: &RunOptions) -> Result<Outcome, CliError> {
    Ok(match space {
        SpaceSpec::Canonical { cartan: t } => {
            let c = canonical_metric(cartan(t)?);
            let (mut o, _) = model_outcome(&c.model, opts);
            let formulas = canonical_formula_witness(&c);
            o.flag("formulas", formulas.is_none());
            o.witness("formulas", formulas);
            let b2 = btp2_identity(&c.model);
            o.flag("btp2", b2.holds());
            o.witness("btp2", b2.witness.as_ref().map(|((i, j), d)| format!("(i, j) = ({i}, {j}), difference {d}")));
            o.default_expect = vec![("btp", true), ("chern_flat", true), ("bas", true), ("formulas", true)];
            o.details = serialize(&c.model.name());
            o
        }
        SpaceSpec::Samelson { cartan: types, roots, torus } => {
            let (group, structure, metric) = samelson_setup(types, roots.as_ref(), torus.as_ref())?;
            let model = samelson_model(&group, &structure, &metric).map_err(group_error)?;
            let (mut o, r) = model_outcome(&model, opts);
            let formulas = samelson_formula_witness(&group, &metric, &model);
            o.flag("formulas", formulas.is_none());
            o.witness("formulas", formulas);
            if metric.roots.iter().all(|x| *x == Q::from_integer(1)) {
                let curvature = bismut_curvature_witness(&group, &metric, &model);
                o.flag("curvature_formula", curvature.is_none());
                o.witness("curvature_formula", curvature);
            }
            o.default_expect = vec![("btp", true), ("formulas", true)];
            o.details = serialize(&r);
            o
        }
        SpaceSpec::Nilpotent { n, r, y } => {
            let nf = nilpotent_form(*n, *r, y)?;
            let model = nilpotent_model(&nf).map_err(group_error)?;
            let (mut o, _) = model_outcome(&model, opts);
            let rep = nilpotent_report(&nf).map_err(group_error)?;
            o.flag("structure_constants", rep.c_vanishes && rep.d_matches);
            o.flag("two_step", rep.two_step);
            o.flag("abelian_j", rep.j_abelian);
            o.flag("connection_diagonal", rep.theta_b_diagonal);
            o.flag("curvature_formula", rep.curvature_formula_matches && rep.curvature_closed_form_matches);
            o.default_expect = vec![
                ("btp", true),
                ("bas", true),
                ("structure_constants", true),
                ("abelian_j", true),
                ("curvature_formula", true),
            ];
            o.details = serialize(&rep);
            o
        }
        SpaceSpec::M4 { a1, a2 } => {
            let rep = m4_example(*a1, *a2).map_err(group_error)?;
            let mut o = Outcome {
                description: format!("{} (real dim {})", rep.report.model, rep.report.real_dim),
                ..Outcome::default()
            };
            o.check_report(&rep.report);
            o.flag("base_kahler", rep.base_kahler);
            o.flag("omega_matches_killing", rep.omega_matches_killing);
            o.flag("d_omega_is_theta_wedge_omega", rep.d_omega_is_theta_wedge_omega);
            o.flag("reductivity_witness_nonzero", rep.naturally_reductive_failure != "0");
            o.witness("reductivity_witness_nonzero", Some(format!("difference {}", rep.naturally_reductive_failure)));
            o.default_expect = vec![
                ("btp", true),
                ("bas", false),
                ("base_kahler", true),
                ("d_omega_is_theta_wedge_omega", true),
                ("reductivity_witness_nonzero", true),
            ];
            o.details = serialize(&rep);
            o
        }
        SpaceSpec::CalabiEckmann { m1, m2, alpha, beta, c, q_scale, max_denominator } => {
            let ce = calabi_eckmann_params(*m1, *m2, alpha.as_ref(), beta.as_ref(), c.as_ref(), q_scale.as_ref())?;
            let rep = calabi_eckmann_search(&ce, max_denominator.unwrap_or(8)).map_err(group_error)?;
            let mut o = Outcome {
                description: format!("Calabi-Eckmann S^{} x S^{}", 2 * m1 + 1, 2 * m2 + 1),
                ..Outcome::default()
            };
            o.flag("certificate", rep.certificate);
            o.flag("btp", rep.btp.unwrap_or(false));
            o.flag("bas", rep.bas.unwrap_or(false));
            o.witness("certificate", Some(rep.status.clone()));
            o.default_expect = vec![("certificate", true)];
            o.details = serialize(&rep);
            o
        }
        SpaceSpec::Hopf { n, samples, step, seed, profile } => {
            let mut cfg = HopfConfig::new(*n);
            if let Some(s) = samples {
                cfg.samples = *s;
            }
            if let Some(h) = step {
                cfg.step = *h;
            }
            if let Some(s) = seed {
                cfg.seed = *s;
            }
            if let Some(p) = profile {
                cfg.profile = *p;
            }
            if let Some(t) = opts.tolerance {
                cfg.tolerance = t;
            }
            if *n < 2 || cfg.samples == 0 {
                return Err(CliError::Config("hopf needs n >= 2 and at least one sample".into()));
            }
            let rep = hopf_check(&cfg).map_err(group_error)?;
            let mut o = Outcome { description: format!("{} ({} points)", rep.metric, rep.samples), ..Outcome::default() };
            o.flag("passed", rep.passed);
            o.flag("btp", rep.residuals.btp < cfg.tolerance);
            o.flag("xi_identity", rep.residuals.xi < cfg.tolerance);
            o.witness("btp", Some(format!("max |∇ᵇT| = {:.3e}, order {:.2}", rep.residuals.btp, rep.btp_order)));
            o.witness("xi_identity", Some(format!("max |dξ − [θᵇ, ξ]| = {:.3e}, order {:.2}", rep.residuals.xi, rep.xi_order)));
            o.warnings = rep.residuals.warnings.clone();
            let expect_pass = matches!(cfg.profile, Profile::Hopf | Profile::Euclidean);
            o.default_expect = vec![("btp", expect_pass)];
            if matches!(cfg.profile, Profile::Hopf) {
                o.default_expect.push(("passed", true));
            }
            o.details = serialize(&rep);
            o
        }
        SpaceSpec::Flag { cartan: t, isotropy, complex_structure, metric } => {
            let (fm, cs) = flag_space(t, isotropy, complex_structure.as_ref())?;
            let g = flag_metric(&fm, metric.as_ref())?;
            let model = flag_model(&fm, &cs, &g).map_err(|e| CliError::Config(e.to_string()))?;
            let (mut o, r) = model_outcome(&model, opts);
            o.flag("hermitian_symmetric", fm.is_hermitian_symmetric());
            o.default_expect = vec![("btp", true)];
            o.details = serialize(&r);
            o
        }
    })
}

pub fn expectation(entry: &SpaceEntry, o: &Outcome) -> BTreeMap<String, bool> {
    match &entry.expect {
        Some(e) => e.clone(),
        None => o.default_expect.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
    }
}

fn finish(name: String, kind: &str, o: Outcome, expected: BTreeMap<String, bool>, start: Instant) -> Result<EntryReport, CliError> {
    let mut mismatches = Vec::new();
    for (flag, want) in &expected {
        match o.flags.get(flag) {
            None => {
                let known: Vec<&str> = o.flags.keys().map(String::as_str).collect();
                return Err(CliError::Config(format!("{name}: unknown flag {flag:?} (known: {})", known.join(", "))));
            }
            Some(got) if got != want => {
                let w = o.witnesses.get(flag).map(|w| format!(" [{w}]")).unwrap_or_default();
                mismatches.push(format!("{flag}: expected {want}, got {got}{w}"));
            }
            Some(_) => {}
        }
    }
    Ok(EntryReport {
        name,
        kind: kind.to_string(),
        description: o.description,
        passed: mismatches.is_empty(),
        flags: o.flags,
        expected,
        mismatches,
        witnesses: o.witnesses,
        warnings: o.warnings,
        details: o.details,
        timing_ms: start.elapsed().as_millis(),
    })
}

pub fn check_entry(entry: &SpaceEntry, index: usize, opts: &RunOptions) -> Result<EntryReport, CliError> {
    let start = Instant::now();
    let o = evaluate(&entry.space, opts)?;
    let expected = expectation(entry, &o);
    finish(entry.display_name(index), entry.space.kind(), o, expected, start)
}

/// Entries run concurrently; reports keep input order.
pub fn cmd_check(entries: &[SpaceEntry], opts: &RunOptions) -> Result<RunReport, CliError> {
    let reports = entries.par_iter().enumerate().map(|(i, e)| check_entry(e, i, opts)).collect::<Result<_, _>>()?;
    Ok(RunReport::new("check", reports))
}

/// Solver run for one entry; flag, Samelson and Calabi–Eckmann spaces only.
pub fn solve_entry(entry: &SpaceEntry, index: usize, opts: &RunOptions) -> Result<EntryReport, CliError> {
    let start = Instant::now();
    let name = entry.display_name(index);
    let mut o = Outcome::default();
    match &entry.space {
        SpaceSpec::Flag { cartan: t, isotropy, complex_structure, .. } => {
            let (fm, cs) = flag_space(t, isotropy, complex_structure.as_ref())?;
            let rep = solve_btp_metrics(&fm, &cs, &opts.solve_options());
            o.description = format!("{}: {} families over {}", rep.space, rep.families.len(), rep.parameters.join(", "));
            o.flag("no_btp_outside_families", rep.btp_outside_families.is_empty());
            o.flag("engine_cross_check", rep.engine_cross_check_agrees);
            o.flag("triple_equalities", rep.triple_equalities_hold);
            o.flag("complete_branching", !rep.partial);
            if rep.partial {
                o.warnings.push(format!("solver cap {} reached: some disjunctions were not branched", opts.solver_cap));
            }
            for (i, f) in rep.families.iter().enumerate() {
                let rels: Vec<&str> = f.relations.iter().map(|r| r.text.as_str()).collect();
                o.witnesses.insert(format!("family {i}"), format!("{:?} dim {}: {}", f.tags, f.dimension, rels.join("; ")));
            }
            o.default_expect =
                vec![("no_btp_outside_families", true), ("engine_cross_check", true), ("triple_equalities", true)];
            o.details = serialize(&rep);
        }
        SpaceSpec::Samelson { cartan: types, torus, .. } => {
            let (group, structure, metric) = samelson_setup(types, None, torus.as_ref())?;
            let rep = solve_samelson_projectable(&group, &structure, &metric.torus, &opts.solve_options())
                .map_err(group_error)?;
            o.description = format!("{}: {} families", rep.space, rep.families.len());
            o.flag("factorwise_constant", rep.is_factorwise_constant(&group));
            o.flag("no_btp_outside_families", rep.btp_outside_families.is_empty());
            o.flag("sum_rule_excluded", rep.sum_rule_excluded);
            for (i, f) in rep.families.iter().enumerate() {
                let rels: Vec<&str> = f.relations.iter().map(|r| r.text.as_str()).collect();
                o.witnesses.insert(format!("family {i}"), format!("dim {}: {}", f.dimension, rels.join("; ")));
            }
            o.default_expect =
                vec![("factorwise_constant", true), ("no_btp_outside_families", true), ("sum_rule_excluded", true)];
            o.details = serialize(&rep);
        }
        SpaceSpec::CalabiEckmann { .. } => {
            o = evaluate(&entry.space, opts)?;
        }
        other => return Err(CliError::Config(format!("{name}: no solver for type {:?}", other.kind()))),
    }
    let expected = expectation(entry, &o);
    finish(name, entry.space.kind(), o, expected, start)
}

pub fn cmd_solve(entries: &[SpaceEntry], opts: &RunOptions) -> Result<RunReport, CliError> {
    let reports = entries.par_iter().enumerate().map(|(i, e)| solve_entry(e, i, opts)).collect::<Result<_, _>>()?;
    Ok(RunReport::new("solve", reports))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;

    fn run(text: &str) -> Result<RunReport, CliError> {
        cmd_check(&parse_config(text)?, &RunOptions::default())
    }

    #[test]
    fn killing_metric_on_g2_mod_u2() {
        let r = run(r#"{"type":"flag","cartan":"G2","isotropy":[0],
            "expect":{"btp":true,"bas":true,"balanced":true,"kahler":false}}"#)
        .unwrap();
        assert!(r.passed, "{:?}", r.entries[0].mismatches);
    }

    #[test]
    fn grading_metric_is_kahler() {
        let r = run(r#"{"type":"flag","cartan":"A2","metric":"grading","expect":{"kahler":true}}"#).unwrap();
        assert!(r.passed, "{:?}", r.entries[0].mismatches);
    }

    #[test]
    fn unmet_expectation_fails_with_witness() {
        let r = run(r#"{"type":"samelson","cartan":["A2"],"roots":["1","1","2"]}"#).unwrap();
        assert!(!r.passed);
        assert!(r.entries[0].mismatches[0].starts_with("btp: expected true, got false ["));
    }

    #[test]
    fn config_errors() {
        assert!(matches!(run(r#"{"type":"flag","cartan":"A2","metric":["1","1/0","1"]}"#), Err(CliError::Config(_))));
        assert!(matches!(run(r#"{"type":"m4","a1":-1,"a2":1}"#), Err(CliError::Config(_))));
        assert!(matches!(run(r#"{"type":"m4","a1":-3,"a2":1,"expect":{"shiny":true}}"#), Err(CliError::Config(_))));
        assert!(matches!(run(r#"{"type":"samelson","cartan":["A1"]}"#), Err(CliError::Config(_))));
    }

    #[test]
    fn solve_rejects_types_without_solver() {
        let e = parse_config(r#"{"type":"m4","a1":-3,"a2":1}"#).unwrap();
        assert!(matches!(cmd_solve(&e, &RunOptions::default()), Err(CliError::Config(_))));
    }

    #[test]
    fn cap_exceeded_is_a_warning() {
        let e = parse_config(r#"{"type":"flag","cartan":"A3"}"#).unwrap();
        let opts = RunOptions { solver_cap: 1, samples: 20, ..RunOptions::default() };
        let r = cmd_solve(&e, &opts).unwrap();
        assert!(!r.entries[0].warnings.is_empty());
        assert!(!r.entries[0].flags["complete_branching"]);
    }
}
