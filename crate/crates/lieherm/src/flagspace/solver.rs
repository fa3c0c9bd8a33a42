//! Branch-and-verify search for invariant BTP metrics.
//!
//! Every triple `α, β, α+β` of holomorphic roots forces a two-way
//! disjunction: the sum rule `g_{α+β} = g_α + g_β`, or an equality rule whose
//! shape depends on whether `α − β` is a root of `𝔪` and of which type. Each
//! branch is a linear subspace of the orbit parameters; leaves meeting the
//! positive cone are verified exactly at random points. Completeness beyond
//! the branch rule is certified only by rejection sampling.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{flag_model, FlagComplexStructure, FlagHermitian, FlagManifold, FlagMetric};
use crate::hermgeo::{bismut_connection, torsion, torsion_derivative_witness};
use crate::linalg::{nullspace, rank, rref, Mat};
use crate::rootsys::RootId;
use crate::scalar::{fmt_q, qser, Q};

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Maximum number of disjunctions branched on; the rest are left to verification.
    pub cap: usize,
    pub samples: usize,
    pub max_denominator: i128,
    pub verify_points: usize,
    pub seed: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { cap: 12, samples: 10_000, max_denominator: 20, verify_points: 3, seed: 0x5eed }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyTag {
    KahlerFamily,
    KillingRay,
    FullCone,
    Other,
}

/// `Σ coeffs[c] · g_c = 0` over orbit parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    #[serde(serialize_with = "qser::vec")]
    pub coeffs: Vec<Q>,
    pub text: String,
}

impl Relation {
    pub(crate) fn new(coeffs: Vec<Q>, names: &[String]) -> Self {
        let text = relation_text(&coeffs, names);
        Relation { coeffs, text }
    }
}

fn relation_text(row: &[Q], names: &[String]) -> String {
    let Some(p) = row.iter().position(|x| !x.is_zero()) else { return "0 = 0".into() };
    let lead = row[p];
    let mut rhs = Vec::new();
    for (c, x) in row.iter().enumerate().skip(p + 1) {
        if x.is_zero() {
            continue;
        }
        let k = -*x / lead;
        let term = if k.abs() == Q::one() { names[c].clone() } else { format!("{}·{}", fmt_q(&k.abs()), names[c]) };
        let sign = if k.is_negative() { "-" } else { "+" };
        if rhs.is_empty() {
            rhs.push(if k.is_negative() { format!("-{term}") } else { term });
        } else {
            rhs.push(format!("{sign} {term}"));
        }
    }
    format!("{} = {}", names[p], if rhs.is_empty() { "0".into() } else { rhs.join(" ") })
}

#[derive(Clone, Debug, Serialize)]
pub struct MetricFamily {
    pub relations: Vec<Relation>,
    pub dimension: usize,
    pub tags: Vec<FamilyTag>,
    #[serde(serialize_with = "qser::nested")]
    pub verified_points: Vec<Vec<Q>>,
}

impl MetricFamily {
    pub fn contains(&self, x: &[Q]) -> bool {
        self.relations.iter().all(|r| dot(&r.coeffs, x).is_zero())
    }
    pub fn has_tag(&self, t: FamilyTag) -> bool {
        self.tags.contains(&t)
    }
    fn rows(&self) -> Mat<Q> {
        self.relations.iter().map(|r| r.coeffs.clone()).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RejectedLeaf {
    pub relations: Vec<Relation>,
    #[serde(serialize_with = "qser::vec")]
    pub point: Vec<Q>,
    pub witness: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub space: String,
    pub parameters: Vec<String>,
    pub families: Vec<MetricFamily>,
    pub rejected_leaves: Vec<RejectedLeaf>,
    pub disjunctions: usize,
    pub leaves: usize,
    /// Some disjunction was not branched on because of the cap.
    pub partial: bool,
    pub triple_equalities_hold: bool,
    pub engine_cross_check_agrees: bool,
    pub samples: usize,
    pub samples_btp: usize,
    #[serde(serialize_with = "qser::nested")]
    pub btp_outside_families: Vec<Vec<Q>>,
    pub completeness: &'static str,
}

impl SolveReport {
    pub fn tag_summary(&self) -> Vec<Vec<FamilyTag>> {
        self.families.iter().map(|f| f.tags.clone()).collect()
    }
}

pub(crate) fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| *x * *y).sum()
}

pub(crate) fn canonical(rows: &Mat<Q>, k: usize) -> Mat<Q> {
    let mut m: Mat<Q> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    if m.is_empty() {
        return m;
    }
    let piv = rref(&mut m);
    m.truncate(piv.len());
    debug_assert!(m.iter().all(|r| r.len() == k));
    m
}

pub(crate) fn implies(base: &Mat<Q>, rows: &Mat<Q>) -> bool {
    if rows.iter().all(|r| r.iter().all(Zero::is_zero)) {
        return true;
    }
    let r0 = if base.is_empty() { 0 } else { rank(base) };
    let mut all = base.clone();
    all.extend(rows.iter().cloned());
    rank(&all) == r0
}

/// A point with `rows · x = 0` and every `x_c ≥ 1`, by exact phase-one simplex
/// with Bland's rule.
pub fn positive_point(rows: &Mat<Q>, k: usize) -> Option<Vec<Q>> {
    let rows: Mat<Q> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let m = rows.len();
    if m == 0 {
        return Some(vec![Q::one(); k]);
    }
    // y = x − 1 ≥ 0, rows·y = −rows·1.
    let width = k + m + 1;
    let mut t: Mat<Q> = Vec::with_capacity(m);
    for (i, r) in rows.iter().enumerate() {
        let b: Q = -r.iter().copied().sum::<Q>();
        let s = if b.is_negative() { -Q::one() } else { Q::one() };
        let mut row = vec![Q::zero(); width];
        for c in 0..k {
            row[c] = s * r[c];
        }
        row[k + i] = Q::one();
        row[width - 1] = s * b;
        t.push(row);
    }
    let mut basis: Vec<usize> = (k..k + m).collect();
    let mut z = vec![Q::zero(); width];
    for row in &t {
        for c in 0..k {
            z[c] -= row[c];
        }
        z[width - 1] -= row[width - 1];
    }
    while let Some(j) = (0..width - 1).find(|&c| z[c].is_negative()) {
        let mut best: Option<(Q, usize, usize)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[j].is_positive() {
                let ratio = row[width - 1] / row[j];
                let better = match best {
                    None => true,
                    Some((br, _, bb)) => ratio < br || (ratio == br && basis[i] < bb),
                };
                if better {
                    best = Some((ratio, i, basis[i]));
                }
            }
        }
        // Phase one is bounded below by 0.
        let (_, p, _) = best.expect("phase one is bounded");
        let inv = Q::one() / t[p][j];
        for x in t[p].iter_mut() {
            *x *= inv;
        }
        let prow = t[p].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != p && !row[j].is_zero() {
                let f = row[j];
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= f * *y;
                }
            }
        }
        let f = z[j];
        for (x, y) in z.iter_mut().zip(&prow) {
            *x -= f * *y;
        }
        basis[p] = j;
    }
    if !z[width - 1].is_zero() {
        return None;
    }
    let mut x = vec![Q::one(); k];
    for (i, &b) in basis.iter().enumerate() {
        if b < k {
            x[b] += t[i][width - 1];
        }
    }
    debug_assert!(rows.iter().all(|r| dot(r, &x).is_zero()));
    Some(x)
}

pub(crate) fn random_q(rng: &mut ChaCha8Rng, max_den: i128, lo: i128, hi: i128) -> Q {
    let d = rng.gen_range(1..=max_den);
    Q::new(rng.gen_range(lo * d..=hi * d), d)
}

/// Random positive point of `{rows · x = 0}`, spread around the anchor `x0`.
pub(crate) fn random_point(rows: &Mat<Q>, x0: &[Q], rng: &mut ChaCha8Rng, max_den: i128) -> Vec<Q> {
    let k = x0.len();
    let basis = if rows.is_empty() { (0..k).map(|c| unit(k, c)).collect() } else { nullspace(rows, k) };
    let scale: Q = x0.iter().copied().fold(Q::one(), |a, b| if b > a { b } else { a });
    loop {
        let mut x: Vec<Q> = x0.to_vec();
        for v in &basis {
            let r = random_q(rng, max_den, -1, 1) * scale;
            for (xi, vi) in x.iter_mut().zip(v) {
                *xi += r * *vi;
            }
        }
        if x.iter().all(Signed::is_positive) {
            return x;
        }
    }
}

pub(crate) fn unit(k: usize, c: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); k];
    v[c] = Q::one();
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum TripleCase {
    /// `α − β ∉ R_𝔪`: sum rule, or `g_{α+β} = g_α = g_β`.
    Neither,
    /// `α − β` holomorphic: sum rule, or `g_{α+β} = g_α`.
    DiffHolomorphic,
    /// `α − β` antiholomorphic: sum rule, or `g_{α+β} = g_β`.
    DiffAntiholomorphic,
}

fn holomorphic(fm: &FlagManifold, cs: &FlagComplexStructure) -> Vec<RootId> {
    fm.m_roots().into_iter().filter(|&a| cs.eps(fm, a) == 1).collect()
}

/// Unordered holomorphic triples `(α, β, α+β)` with the applicable case.
fn triples(fm: &FlagManifold, cs: &FlagComplexStructure) -> Vec<(RootId, RootId, RootId, TripleCase)> {
    let p = holomorphic(fm, cs);
    let mut out = Vec::new();
    for (i, &a) in p.iter().enumerate() {
        for &b in &p[i + 1..] {
            let Some(s) = fm.sum_in_m(a, b) else { continue };
            let case = match fm.root_system().diff(a, b).filter(|&d| fm.in_m(d)) {
                None => TripleCase::Neither,
                Some(d) if cs.eps(fm, d) == 1 => TripleCase::DiffHolomorphic,
                Some(_) => TripleCase::DiffAntiholomorphic,
            };
            out.push((a, b, s, case));
        }
    }
    out
}

/// First holomorphic triple whose metric values violate the branch rule.
pub fn triple_equalities_witness(fm: &FlagManifold, cs: &FlagComplexStructure, g: &FlagMetric) -> Option<String> {
    for (a, b, s, case) in triples(fm, cs) {
        let (ga, gb, gs) = (g.of(fm, a), g.of(fm, b), g.of(fm, s));
        let ok = gs == ga + gb
            || match case {
                TripleCase::Neither => gs == ga && gs == gb,
                TripleCase::DiffHolomorphic => gs == ga,
                TripleCase::DiffAntiholomorphic => gs == gb,
            };
        if !ok {
            let rs = fm.root_system();
            return Some(format!("{} + {} ({case:?})", rs.root(a), rs.root(b)));
        }
    }
    None
}

/// One alternative of a disjunction: linear rows that must all vanish.
type Branch = Mat<Q>;

/// Disjunctions over orbit parameters, deduplicated; vacuous ones dropped.
fn disjunctions(fm: &FlagManifold, cs: &FlagComplexStructure) -> Vec<Vec<Branch>> {
    let k = fm.classes().len();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (a, b, s, case) in triples(fm, cs) {
        let (ca, cb, cc) = (fm.class_of_root(a), fm.class_of_root(b), fm.class_of_root(s));
        let mut sum = vec![Q::zero(); k];
        sum[cc] += Q::one();
        sum[ca] -= Q::one();
        sum[cb] -= Q::one();
        let eq = |c: usize| {
            let mut r = vec![Q::zero(); k];
            r[cc] += Q::one();
            r[c] -= Q::one();
            r
        };
        let alt = match case {
            TripleCase::Neither => vec![eq(ca), eq(cb)],
            TripleCase::DiffHolomorphic => vec![eq(ca)],
            TripleCase::DiffAntiholomorphic => vec![eq(cb)],
        };
        let options = [canonical(&vec![sum], k), canonical(&alt, k)];
        if options.iter().any(Vec::is_empty) {
            continue;
        }
        let key: Vec<Vec<String>> =
            options.iter().map(|o| o.iter().flat_map(|r| r.iter().map(fmt_q)).collect()).collect();
        if seen.insert(key) {
            out.push(options.to_vec());
        }
    }
    out
}

pub(crate) fn dfs(dis: &[Vec<Branch>], i: usize, rows: &Mat<Q>, k: usize, leaves: &mut Vec<Mat<Q>>) {
    if i == dis.len() {
        leaves.push(canonical(rows, k));
        return;
    }
    if dis[i].iter().any(|o| implies(rows, o)) {
        return dfs(dis, i + 1, rows, k, leaves);
    }
    for o in &dis[i] {
        let mut next = rows.clone();
        next.extend(o.iter().cloned());
        let next = canonical(&next, k);
        if positive_point(&next, k).is_some() {
            dfs(dis, i + 1, &next, k, leaves);
        }
    }
}

fn is_btp(fm: &FlagManifold, cs: &FlagComplexStructure, x: &[Q]) -> bool {
    let g = FlagMetric { values: x.to_vec() };
    FlagHermitian { fm, cs, g: &g }.btp_witness().is_none()
}

fn generic_is_btp(fm: &FlagManifold, cs: &FlagComplexStructure, x: &[Q]) -> bool {
    let g = FlagMetric { values: x.to_vec() };
    let model = flag_model(fm, cs, &g).expect("solver metrics are valid");
    let b = bismut_connection(&model);
    torsion_derivative_witness(&b, &torsion(&model, &b)).is_none()
}

fn kahler_rows(fm: &FlagManifold, cs: &FlagComplexStructure) -> Mat<Q> {
    let k = fm.classes().len();
    triples(fm, cs)
        .into_iter()
        .map(|(a, b, s, _)| {
            let mut r = vec![Q::zero(); k];
            r[fm.class_of_root(s)] += Q::one();
            r[fm.class_of_root(a)] -= Q::one();
            r[fm.class_of_root(b)] -= Q::one();
            r
        })
        .collect()
}

/// Orbit parameter names, `g[root]` for the first root of each orbit.
pub fn parameter_names(fm: &FlagManifold) -> Vec<String> {
    fm.classes().iter().map(|c| format!("g{}", fm.root_system().root(c[0]))).collect()
}

pub fn solve_btp_metrics(fm: &FlagManifold, cs: &FlagComplexStructure, opts: &SolveOptions) -> SolveReport {
    let k = fm.classes().len();
    let names = parameter_names(fm);
    let dis = disjunctions(fm, cs);
    let partial = dis.len() > opts.cap;
    let mut leaves = Vec::new();
    dfs(&dis[..dis.len().min(opts.cap)], 0, &Vec::new(), k, &mut leaves);
    leaves.sort();
    leaves.dedup();
    let n_leaves = leaves.len();

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let kahler = kahler_rows(fm, cs);
    let ones = vec![Q::one(); k];
    let mut accepted: Vec<(Mat<Q>, Vec<Vec<Q>>)> = Vec::new();
    let mut rejected = Vec::new();
    let mut cross_ok = true;
    for leaf in leaves {
        let x0 = positive_point(&leaf, k).expect("leaves are feasible");
        let points: Vec<Vec<Q>> =
            (0..opts.verify_points).map(|_| random_point(&leaf, &x0, &mut rng, opts.max_denominator)).collect();
        match points.iter().find(|x| !is_btp(fm, cs, x)) {
            None => {
                cross_ok &= generic_is_btp(fm, cs, &points[0]);
                accepted.push((leaf, points));
            }
            Some(bad) => {
                cross_ok &= !generic_is_btp(fm, cs, bad);
                let g = FlagMetric { values: bad.clone() };
                let w = FlagHermitian { fm, cs, g: &g }.btp_witness().expect("failed point has a witness");
                let rs = fm.root_system();
                let ((c, a, b), v) = w;
                rejected.push(RejectedLeaf {
                    relations: leaf.iter().map(|r| Relation::new(r.clone(), &names)).collect(),
                    point: bad.clone(),
                    witness: format!(
                        "(∇ᵇ_{} Tᵇ)({}, {}) = {}",
                        rs.root(c),
                        rs.root(a),
                        rs.root(b),
                        fmt_q(&v)
                    ),
                });
            }
        }
    }
    // Drop families contained in another accepted family.
    let contained = |small: &Mat<Q>, big: &Mat<Q>| implies(small, big);
    let keep: Vec<bool> = (0..accepted.len())
        .map(|i| {
            !(0..accepted.len()).any(|j| j != i && accepted[i].0 != accepted[j].0 && contained(&accepted[i].0, &accepted[j].0))
        })
        .collect();
    let mut families: Vec<MetricFamily> = accepted
        .into_iter()
        .zip(keep)
        .filter(|(_, keep)| *keep)
        .map(|((rows, points), _)| {
            let mut tags = Vec::new();
            if rows.is_empty() {
                tags.push(FamilyTag::FullCone);
            }
            if implies(&rows, &kahler) {
                tags.push(FamilyTag::KahlerFamily);
            }
            if k - rows.len() == 1 && rows.iter().all(|r| dot(r, &ones).is_zero()) {
                tags.push(FamilyTag::KillingRay);
            }
            if tags.is_empty() {
                tags.push(FamilyTag::Other);
            }
            MetricFamily {
                dimension: k - rows.len(),
                relations: rows.iter().map(|r| Relation::new(r.clone(), &names)).collect(),
                tags,
                verified_points: points,
            }
        })
        .collect();
    families.sort_by(|a, b| a.tags.cmp(&b.tags));

    let triples_ok = families.iter().flat_map(|f| &f.verified_points).all(|x| {
        let g = FlagMetric { values: x.clone() };
        triple_equalities_witness(fm, cs, &g).is_none()
    });

    // Rejection sampling: the full cone, each rejected leaf, and each family
    // with one relation dropped.
    let mut sources: Vec<Mat<Q>> = vec![Vec::new()];
    sources.extend(rejected.iter().map(|r| r.relations.iter().map(|x| x.coeffs.clone()).collect()));
    for f in &families {
        let rows = f.rows();
        for drop in 0..rows.len() {
            let mut r = rows.clone();
            r.remove(drop);
            sources.push(r);
        }
    }
    let anchors: Vec<Vec<Q>> = sources.iter().map(|s| positive_point(s, k).expect("sources are feasible")).collect();
    let results: Vec<(bool, Option<Vec<Q>>)> = (0..opts.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let s = i % sources.len();
            let x = if s == 0 {
                (0..k).map(|_| random_q(&mut rng, opts.max_denominator, 0, 2).max(Q::new(1, opts.max_denominator))).collect()
            } else {
                random_point(&sources[s], &anchors[s], &mut rng, opts.max_denominator)
            };
            if !is_btp(fm, cs, &x) {
                return (false, None);
            }
            let inside = families.iter().any(|f| f.contains(&x));
            (true, (!inside).then_some(x))
        })
        .collect();
    let samples_btp = results.iter().filter(|r| r.0).count();
    let outside: Vec<Vec<Q>> = results.into_iter().filter_map(|r| r.1).collect();

    SolveReport {
        space: format!("{} / {:?}", fm.cartan_type(), fm.isotropy_simple()),
        parameters: names,
        families,
        rejected_leaves: rejected,
        disjunctions: dis.len(),
        leaves: n_leaves,
        partial,
        triple_equalities_hold: triples_ok,
        engine_cross_check_agrees: cross_ok,
        samples: opts.samples,
        samples_btp,
        btp_outside_families: outside,
        completeness: "empirical: rejection sampling, not a proof",
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SimplyLacedReport {
    pub applicable: bool,
    pub reason: Option<String>,
    pub btp: bool,
    pub equal_six_checked: usize,
    pub decomposition_checked: usize,
    pub auxiliary_checked: usize,
    pub violations: Vec<String>,
}

impl SimplyLacedReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Equalities forced on simply laced `K` by a BTP metric with a non-Kähler
/// holomorphic pair. Checks are evaluated even when the hypotheses fail.
pub fn simply_laced_properties(fm: &FlagManifold, cs: &FlagComplexStructure, g: &FlagMetric) -> SimplyLacedReport {
    let fh = FlagHermitian { fm, cs, g };
    let btp = fh.btp_witness().is_none();
    let rs = fm.root_system();
    let p = holomorphic(fm, cs);
    let gv = |a: RootId| g.of(fm, a);
    let pairs: Vec<(RootId, RootId, RootId)> = p
        .iter()
        .flat_map(|&a| p.iter().map(move |&b| (a, b)))
        .filter_map(|(a, b)| fm.sum_in_m(a, b).map(|s| (a, b, s)))
        .filter(|&(a, b, s)| gv(s) != gv(a) + gv(b))
        .collect();
    let reason = if !fm.cartan_type().is_simply_laced() {
        Some("root system is not simply laced".to_string())
    } else if pairs.is_empty() {
        Some("metric is Kähler: no holomorphic pair breaks the sum rule".to_string())
    } else if !btp {
        Some("metric is not BTP".to_string())
    } else {
        None
    };
    let mut report = SimplyLacedReport {
        applicable: reason.is_none(),
        reason,
        btp,
        equal_six_checked: 0,
        decomposition_checked: 0,
        auxiliary_checked: 0,
        violations: Vec::new(),
    };
    if !fm.cartan_type().is_simply_laced() {
        return report;
    }
    let one = Q::one();
    for &(a, b, ab) in &pairs {
        for &c in &p {
            let (Some(bc), Some(abc)) = (fm.sum_in_m(b, c), fm.sum_in_m(ab, c)) else { continue };
            report.equal_six_checked += 1;
            let six = [gv(a), gv(b), gv(c), gv(ab), gv(bc), gv(abc)];
            if six.iter().any(|x| *x != six[0]) {
                report.violations.push(format!("six values differ at {}, {}, {}", rs.root(a), rs.root(b), rs.root(c)));
            }
            let (ga, gb, gc, gab, gbc, gabc) = (six[0], six[1], six[2], six[3], six[4], six[5]);
            let first = (one - (gb + gc) / gbc) * (one - ga / gabc) == (one - ga / gab) * (one - (gc + gab) / gabc);
            let second = (one - gb / gab) * (one - (gc + gab) / gabc) == (one - gb / gbc) * (one - (ga + gbc) / gabc);
            report.auxiliary_checked += 2;
            if !first || !second {
                report.violations.push(format!("auxiliary identity fails at {}, {}, {}", rs.root(a), rs.root(b), rs.root(c)));
            }
        }
        for &l in &p {
            for &m in &p {
                if l < m && fm.sum_in_m(l, m) == Some(a) {
                    report.decomposition_checked += 1;
                    if gv(l) != gv(a) || gv(m) != gv(a) {
                        report.violations.push(format!("{} = {} + {} with unequal values", rs.root(a), rs.root(l), rs.root(m)));
                    }
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flagspace::{build_flag, enumerate_complex_structures, killing_metric};
    use crate::scalar::{q, qr};

    fn fast() -> SolveOptions {
        SolveOptions { samples: 400, ..SolveOptions::default() }
    }

    #[test]
    fn simplex_finds_positive_points_or_refuses() {
        // x0 − x1 − x2 = 0 is feasible; x0 + x1 = 0 is not.
        let p = positive_point(&vec![vec![q(1), q(-1), q(-1)]], 3).unwrap();
        assert_eq!(p[0], p[1] + p[2]);
        assert!(p.iter().all(|x| *x >= Q::one()));
        assert!(positive_point(&vec![vec![q(1), q(1), q(0)]], 3).is_none());
        assert!(positive_point(&vec![vec![q(1), q(-2), q(0)], vec![q(0), q(1), q(-1)], vec![q(1), q(0), q(-1)]], 3).is_none());
        let r = positive_point(&vec![vec![q(2), q(-3), q(0)]], 3).unwrap();
        assert_eq!(q(2) * r[0], q(3) * r[1]);
    }

    #[test]
    fn relation_text_reads_as_equation() {
        let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        assert_eq!(relation_text(&[q(1), q(-1), q(-1)], &names), "a = b + c");
        assert_eq!(relation_text(&[q(1), qr(-1, 2), q(0)], &names), "a = 1/2·b");
    }

    #[test]
    fn su3_flag_gives_kahler_and_constant() {
        let fm = build_flag("A2".parse().unwrap(), &[]).unwrap();
        for cs in enumerate_complex_structures(&fm) {
            let r = solve_btp_metrics(&fm, &cs, &fast());
            assert_eq!(r.families.len(), 2, "{r:#?}");
            assert!(r.families.iter().any(|f| f.has_tag(FamilyTag::KahlerFamily) && f.dimension == 2));
            assert!(r.families.iter().any(|f| f.has_tag(FamilyTag::KillingRay)));
            assert!(r.btp_outside_families.is_empty() && r.triple_equalities_hold && r.engine_cross_check_agrees);
            assert!(!r.partial);
        }
    }

    #[test]
    fn g2_mod_u2_gives_kahler_and_killing_ray() {
        let fm = build_flag("G2".parse().unwrap(), &[0]).unwrap();
        let cs = FlagComplexStructure::standard(&fm);
        let r = solve_btp_metrics(&fm, &cs, &fast());
        let mut tags = r.tag_summary();
        tags.sort();
        assert_eq!(tags, vec![vec![FamilyTag::KahlerFamily], vec![FamilyTag::KillingRay]]);
        assert!(r.btp_outside_families.is_empty());
    }

    #[test]
    fn hermitian_symmetric_gives_full_cone() {
        let fm = build_flag("C3".parse().unwrap(), &[0, 1]).unwrap();
        assert!(fm.is_hermitian_symmetric());
        let r = solve_btp_metrics(&fm, &FlagComplexStructure::standard(&fm), &fast());
        assert_eq!(r.families.len(), 1);
        assert!(r.families[0].has_tag(FamilyTag::FullCone));
    }

    #[test]
    fn cap_flags_partial_result() {
        let fm = build_flag("A3".parse().unwrap(), &[]).unwrap();
        let opts = SolveOptions { cap: 1, samples: 10, ..SolveOptions::default() };
        assert!(solve_btp_metrics(&fm, &FlagComplexStructure::standard(&fm), &opts).partial);
    }

    #[test]
    fn simply_laced_properties_on_su4() {
        let fm = build_flag("A3".parse().unwrap(), &[]).unwrap();
        let cs = FlagComplexStructure::standard(&fm);
        let rep = simply_laced_properties(&fm, &cs, &killing_metric(&fm));
        assert!(rep.applicable && rep.holds() && rep.equal_six_checked > 0 && rep.decomposition_checked > 0);

        let kahler: Vec<Q> = fm
            .classes()
            .iter()
            .map(|c| q(fm.root_system().root(c[0]).height() as i128))
            .collect();
        let rep = simply_laced_properties(&fm, &cs, &FlagMetric::new(&fm, kahler).unwrap());
        assert!(!rep.applicable && rep.reason.unwrap().contains("Kähler"));

        // Break the six-value chain at the top root only.
        let top = fm.classes().iter().position(|c| fm.root_system().root(c[0]).height() == 3).unwrap();
        let mut vals = vec![q(1); fm.classes().len()];
        vals[top] = q(2);
        let g = FlagMetric::new(&fm, vals).unwrap();
        let rep = simply_laced_properties(&fm, &cs, &g);
        assert!(!rep.btp && !rep.holds());
        assert!(FlagHermitian { fm: &fm, cs: &cs, g: &g }.btp_witness().is_some());
    }
}
