//! Samelson structures on compact semisimple groups (`𝔥 = 0`).
//!
//! `J` acts on `span(v_α, w_α)` by `v ↦ w`, so `e_α` is of type `(1,0)` for
//! `α > 0`, and on the Cartan algebra by a chosen `J_𝔱`. Right-`T`-invariant
//! metrics are `2 s_α² g_α` on each root plane plus any `J_𝔱`-Hermitian `g_o`.

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::GroupError;
use crate::flagspace::solver::{canonical, dfs, positive_point, random_point, random_q, Relation};
use crate::flagspace::{FamilyTag, MetricFamily, SolveOptions};
use crate::hermgeo::frame::gc;
use crate::hermgeo::{bismut_connection, curvature, torsion, torsion_derivative_witness, InfinitesimalModel, Nomizu, Torsion};
use crate::liealg::{compact_real_form, CompactForm, LieAlgebra};
use crate::linalg::{inverse, mat_mul, transpose, Endo, Mat, SVec};
use crate::rootsys::{build_root_system, chevalley_constants, weyl_scale_sq, CartanType, ChevalleyData, RootId, RootSystem};
use crate::scalar::{fmt_q, q, Q, Qi};

struct Factor {
    rs: RootSystem,
    ch: ChevalleyData,
    cf: CompactForm,
    offset: usize,
}

/// Direct sum of compact simple algebras over their compact bases.
pub struct SamelsonGroup {
    pub types: Vec<CartanType>,
    factors: Vec<Factor>,
    pub algebra: LieAlgebra<Q>,
    /// `(factor, positive root id)` in parameter order.
    positive: Vec<(usize, RootId)>,
    /// Algebra index of each Cartan basis vector.
    torus: Vec<usize>,
}

impl SamelsonGroup {
    pub fn new(types: &[CartanType]) -> Self {
        let mut factors = Vec::new();
        let mut algebra: Option<LieAlgebra<Q>> = None;
        let mut offset = 0;
        for &ct in types {
            let rs = build_root_system(ct);
            let ch = chevalley_constants(&rs);
            let cf = compact_real_form(&rs, &ch);
            let dim = cf.algebra.dim();
            let labelled = if types.len() > 1 {
                let labels = cf.algebra.labels().iter().map(|l| format!("{ct}:{l}")).collect();
                cf.algebra.clone().with_labels(labels).expect("label count")
            } else {
                cf.algebra.clone()
            };
            algebra = Some(match algebra {
                None => labelled,
                Some(a) => a.direct_sum(&labelled),
            });
            factors.push(Factor { rs, ch, cf, offset });
            offset += dim;
        }
        let positive = factors.iter().enumerate().flat_map(|(f, x)| x.rs.positive_ids().map(move |a| (f, a))).collect();
        let torus = factors.iter().flat_map(|x| (0..x.rs.rank()).map(move |j| x.offset + x.cf.t(j))).collect();
        SamelsonGroup { types: types.to_vec(), factors, algebra: algebra.expect("at least one factor"), positive, torus }
    }

    pub fn name(&self) -> String {
        self.types.iter().map(ToString::to_string).collect::<Vec<_>>().join("×")
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn rank(&self) -> usize {
        self.torus.len()
    }

    pub fn is_simple(&self) -> bool {
        self.types.len() == 1
    }

    pub fn positive_roots(&self) -> &[(usize, RootId)] {
        &self.positive
    }

    pub fn parameter_names(&self) -> Vec<String> {
        self.positive
            .iter()
            .map(|&(f, a)| {
                let r = self.factors[f].rs.root(a);
                if self.is_simple() { format!("g{r}") } else { format!("g{}{r}", self.types[f]) }
            })
            .collect()
    }

    fn param(&self, f: usize, a: RootId) -> usize {
        let rs = &self.factors[f].rs;
        let p = if rs.is_positive(a) { a } else { rs.neg(a) };
        self.positive.iter().position(|&x| x == (f, p)).expect("positive root")
    }

    fn shift(&self, f: usize, v: SVec<Qi>) -> SVec<Qi> {
        let o = self.factors[f].offset;
        SVec::from_pairs(v.iter().map(|(i, x)| (i + o, x)))
    }

    /// Chevalley `e_α` of factor `f`.
    pub fn e(&self, f: usize, a: RootId) -> SVec<Qi> {
        let x = &self.factors[f];
        self.shift(f, x.cf.chevalley_vector(&x.rs, x.rs.rank() + a))
    }

    /// Chevalley `h_j` of factor `f`.
    pub fn h(&self, f: usize, j: usize) -> SVec<Qi> {
        let x = &self.factors[f];
        self.shift(f, x.cf.chevalley_vector(&x.rs, j))
    }

    /// `h_α = Σ_j ⟨α, coroot⟩_j h_j`.
    pub fn coroot_vector(&self, f: usize, a: RootId) -> SVec<Qi> {
        let rs = &self.factors[f].rs;
        let mut out = SVec::zero();
        for (j, c) in rs.coroot(a).into_iter().enumerate() {
            out = out.add_scaled(Qi::real(q(c as i128)), &self.h(f, j));
        }
        out
    }

    /// Cartan basis `(factor, j)` in torus order.
    fn torus_basis(&self) -> Vec<(usize, usize)> {
        self.factors.iter().enumerate().flat_map(|(f, x)| (0..x.rs.rank()).map(move |j| (f, j))).collect()
    }

    fn s2(&self, f: usize, a: RootId) -> Q {
        weyl_scale_sq(&self.factors[f].rs, a)
    }

    /// Real Killing form restricted to the Cartan basis.
    pub fn torus_killing(&self) -> Mat<Q> {
        let b = self.algebra.killing_form().matrix.clone();
        self.torus.iter().map(|&i| self.torus.iter().map(|&j| b[i][j]).collect()).collect()
    }
}

/// `J_𝔱` as a matrix over the Cartan basis, columns are images.
#[derive(Clone, Debug, PartialEq)]
pub struct SamelsonStructure {
    pub torus_j: Mat<Q>,
}

impl SamelsonStructure {
    /// Pairs consecutive `−B`-orthogonalized Cartan vectors `u_{2i} ↦ u_{2i+1}`,
    /// with the companion metric `g_o(u_k, u_k) = −B(u_{2i}, u_{2i})` for
    /// `k ∈ {2i, 2i+1}`.
    pub fn default_for(group: &SamelsonGroup) -> Result<(Self, Mat<Q>), GroupError> {
        let r = group.rank();
        if r % 2 == 1 {
            return Err(GroupError::OddDimension(group.dim()));
        }
        let nb: Mat<Q> = group.torus_killing().iter().map(|row| row.iter().map(|x| -*x).collect()).collect();
        let ip = |u: &[Q], v: &[Q]| -> Q {
            let mut s = Q::zero();
            for i in 0..r {
                for j in 0..r {
                    s += u[i] * nb[i][j] * v[j];
                }
            }
            s
        };
        let mut us: Vec<Vec<Q>> = Vec::new();
        for k in 0..r {
            let mut u: Vec<Q> = (0..r).map(|i| if i == k { Q::one() } else { Q::zero() }).collect();
            for w in &us {
                let c = ip(&u, w) / ip(w, w);
                for i in 0..r {
                    u[i] -= c * w[i];
                }
            }
            us.push(u);
        }
        let p: Mat<Q> = (0..r).map(|i| (0..r).map(|k| us[k][i]).collect()).collect();
        let pinv = inverse(&p).expect("orthogonalized basis");
        let mut jstd = vec![vec![Q::zero(); r]; r];
        let mut d = vec![vec![Q::zero(); r]; r];
        for i in 0..r / 2 {
            jstd[2 * i + 1][2 * i] = Q::one();
            jstd[2 * i][2 * i + 1] = -Q::one();
            let n = ip(&us[2 * i], &us[2 * i]);
            d[2 * i][2 * i] = n;
            d[2 * i + 1][2 * i + 1] = n;
        }
        let torus_j = mat_mul(&mat_mul(&p, &jstd), &pinv);
        let g_o = mat_mul(&mat_mul(&transpose(&pinv), &d), &pinv);
        Ok((SamelsonStructure { torus_j }, g_o))
    }
}

/// Right-`T`-invariant metric: `g_α` per positive root, `g_o` on the Cartan basis.
#[derive(Clone, Debug, PartialEq)]
pub struct SamelsonMetric {
    pub roots: Vec<Q>,
    pub torus: Mat<Q>,
}

impl SamelsonMetric {
    pub fn constant(group: &SamelsonGroup, c: Q, torus: Mat<Q>) -> Self {
        SamelsonMetric { roots: vec![c; group.positive.len()], torus }
    }
}

pub fn samelson_model(
    group: &SamelsonGroup,
    structure: &SamelsonStructure,
    metric: &SamelsonMetric,
) -> Result<InfinitesimalModel, GroupError> {
    let n = group.dim();
    if n % 2 == 1 {
        return Err(GroupError::OddDimension(n));
    }
    let r = group.rank();
    if structure.torus_j.len() != r || metric.torus.len() != r || metric.roots.len() != group.positive.len() {
        return Err(GroupError::Dimension(format!("rank {r}, {} positive roots", group.positive.len())));
    }
    if metric.roots.iter().any(|x| *x <= Q::zero()) {
        return Err(GroupError::Parameters("g_α must be positive".into()));
    }
    let mut cols: Vec<SVec<Q>> = vec![SVec::zero(); n];
    let mut g = vec![vec![Q::zero(); n]; n];
    for (k, &tk) in group.torus.iter().enumerate() {
        cols[tk] = SVec::from_pairs((0..r).map(|i| (group.torus[i], structure.torus_j[i][k])));
        for (l, &tl) in group.torus.iter().enumerate() {
            g[tk][tl] = metric.torus[k][l];
        }
    }
    for (p, &(f, a)) in group.positive.iter().enumerate() {
        let x = &group.factors[f];
        let (v, w) = (x.offset + x.cf.v(a), x.offset + x.cf.w(a));
        cols[v] = SVec::unit(w);
        cols[w] = SVec::unit(v).neg();
        let val = Q::from_integer(2) * group.s2(f, a) * metric.roots[p];
        g[v][v] = val;
        g[w][w] = val;
    }
    Ok(InfinitesimalModel::group(format!("Samelson {}", group.name()), &group.algebra, Endo::from_cols(cols), g)?)
}

struct Ops {
    b: Nomizu,
    t: Torsion,
}

impl Ops {
    fn new(model: &InfinitesimalModel) -> Self {
        let b = bismut_connection(model);
        let t = torsion(model, &b);
        Ops { b, t }
    }
    fn nabla(&self, x: &SVec<Qi>, y: &SVec<Qi>) -> SVec<Qi> {
        self.b.apply_complex(x, y)
    }
    fn tor(&self, x: &SVec<Qi>, y: &SVec<Qi>) -> SVec<Qi> {
        self.t.eval_complex(x, y)
    }
    /// `(∇_x T)(y, z)`.
    fn dtor(&self, x: &SVec<Qi>, y: &SVec<Qi>, z: &SVec<Qi>) -> SVec<Qi> {
        self.nabla(x, &self.tor(y, z)).sub(&self.tor(&self.nabla(x, y), z)).sub(&self.tor(y, &self.nabla(x, z)))
    }
}

/// Root-root Bismut coefficient with general signs:
/// `½N((1+ε_αε_β) − (1+ε_βε_γ)g_α/g_γ + (1−ε_αε_γ)g_β/g_γ)`, `γ = α+β`.
fn root_root(group: &SamelsonGroup, metric: &SamelsonMetric, f: usize, a: RootId, b: RootId) -> Q {
    let rs = &group.factors[f].rs;
    let Some(s) = rs.sum(a, b) else { return Q::zero() };
    let eps = |x: RootId| if rs.is_positive(x) { Q::one() } else { -Q::one() };
    let g = |x: RootId| metric.roots[group.param(f, x)];
    let n = q(group.factors[f].ch.n(a, b) as i128);
    let one = Q::one();
    let (ea, eb, es) = (eps(a), eps(b), eps(s));
    Q::new(1, 2) * n * ((one + ea * eb) - (one + eb * es) * g(a) / g(s) + (one - ea * es) * g(b) / g(s))
}

/// First failure among the displayed Samelson formulas, all in the Chevalley
/// basis with `H_α = h_α / s_α²` and `g` extended complex-bilinearly:
/// `∇ᵇ_{e_α}e_{−α} = 0`, `Tᵇ(e_α, e_{−α}) = −h_α`,
/// `∇ᵇ_H e_α = (α(H) + g(H, H_α)/g_α) e_α`, `∇ᵇ_{e_α}H = 0`, `∇ᵇ_H H' = 0`,
/// `Tᵇ(H, e_α) = g(H, H_α)/g_α e_α`, and the root-root coefficient.
pub fn samelson_formula_witness(group: &SamelsonGroup, metric: &SamelsonMetric, model: &InfinitesimalModel) -> Option<String> {
    let ops = Ops::new(model);
    let torus = group.torus_basis();
    for (f, x) in group.factors.iter().enumerate() {
        let rs = &x.rs;
        for a in 0..rs.len() {
            let ea = group.e(f, a);
            let na = rs.neg(a);
            let root = rs.root(a);
            if !ops.nabla(&ea, &group.e(f, na)).is_zero() {
                return Some(format!("∇ᵇ(e{root})e(-{root}) ≠ 0"));
            }
            let ha = group.coroot_vector(f, a);
            if ops.tor(&ea, &group.e(f, na)) != ha.neg() {
                return Some(format!("Tᵇ(e{root}, e(-{root})) ≠ −h{root}"));
            }
            let big_h = ha.scale(Qi::real(Q::one() / group.s2(f, a)));
            let ga = metric.roots[group.param(f, a)];
            for &(fj, j) in &torus {
                let hj = group.h(fj, j);
                let alpha_h = if fj == f { q(rs.eval_on_coroot(a, j) as i128) } else { Q::zero() };
                let ratio = gc(model, &hj, &big_h) / Qi::real(ga);
                if ops.nabla(&hj, &ea) != ea.scale(Qi::real(alpha_h) + ratio) {
                    return Some(format!("∇ᵇ(h{j})e{root} differs"));
                }
                if !ops.nabla(&ea, &hj).is_zero() {
                    return Some(format!("∇ᵇ(e{root})h{j} ≠ 0"));
                }
                if ops.tor(&hj, &ea) != ea.scale(ratio) {
                    return Some(format!("Tᵇ(h{j}, e{root}) differs"));
                }
            }
            for (g2, y) in group.factors.iter().enumerate() {
                for b in 0..y.rs.len() {
                    if g2 == f && (b == a || b == na) {
                        continue;
                    }
                    let got = ops.nabla(&ea, &group.e(g2, b));
                    let expect = match (g2 == f).then(|| rs.sum(a, b)).flatten() {
                        Some(s) => group.e(f, s).scale(Qi::real(root_root(group, metric, f, a, b))),
                        None => SVec::zero(),
                    };
                    if got != expect {
                        return Some(format!("∇ᵇ(e{root})e{} differs", y.rs.root(b)));
                    }
                }
            }
        }
    }
    for &(fi, i) in &torus {
        for &(fj, j) in &torus {
            if !ops.nabla(&group.h(fi, i), &group.h(fj, j)).is_zero() {
                return Some(format!("∇ᵇ(h{i})h{j} ≠ 0"));
            }
        }
    }
    None
}

/// With `g_α ≡ 1`: `Rᵇ(e_α, e_{−α})e_β = −s_α²[β(H_α) + g(H_α, H_β)] e_β` and
/// every other Chevalley component of `Rᵇ` vanishes.
pub fn bismut_curvature_witness(group: &SamelsonGroup, metric: &SamelsonMetric, model: &InfinitesimalModel) -> Option<String> {
    if metric.roots.iter().any(|x| !x.is_one()) {
        return Some("formula requires g_α ≡ 1".into());
    }
    let b = bismut_connection(model);
    let r = curvature(model, &b);
    // Label, vector, and `(factor, root)` for root vectors.
    type Labelled = (String, SVec<Qi>, Option<(usize, RootId)>);
    let mut basis: Vec<Labelled> = Vec::new();
    for (f, j) in group.torus_basis() {
        basis.push((format!("h{}", j + 1), group.h(f, j), None));
    }
    for (f, x) in group.factors.iter().enumerate() {
        for a in 0..x.rs.len() {
            basis.push((format!("e{}", x.rs.root(a)), group.e(f, a), Some((f, a))));
        }
    }
    let big_h = |f: usize, a: RootId| group.coroot_vector(f, a).scale(Qi::real(Q::one() / group.s2(f, a)));
    for (i, (lx, x, rx)) in basis.iter().enumerate() {
        for (ly, y, ry) in basis.iter().skip(i + 1) {
            for (lz, z, rz) in &basis {
                let got = r.eval_complex(x, y, z);
                let expect = match (rx, ry, rz) {
                    (Some((f, a)), Some((f2, na)), Some((fb, b)))
                        if f == f2 && group.factors[*f].rs.neg(*a) == *na =>
                    {
                        let rs_b = &group.factors[*fb].rs;
                        let ha = big_h(*f, *a);
                        let beta_ha = if fb == f { rs_b.killing_pairing_ids(*a, *b) } else { Q::zero() };
                        let c = Qi::real(beta_ha) + gc(model, &ha, &big_h(*fb, *b));
                        z.scale(-(Qi::real(group.s2(*f, *a)) * c))
                    }
                    _ => SVec::zero(),
                };
                if got != expect {
                    return Some(format!("Rᵇ({lx}, {ly}){lz} differs"));
                }
            }
        }
    }
    None
}

/// First nonzero `(∇ᵇ_{e_γ}Tᵇ)(h_j, e_β)`, else the first nonzero real component.
pub fn samelson_btp_witness(group: &SamelsonGroup, model: &InfinitesimalModel) -> Option<String> {
    let ops = Ops::new(model);
    for (f, x) in group.factors.iter().enumerate() {
        for c in 0..x.rs.len() {
            let ec = group.e(f, c);
            for (fj, j) in group.torus_basis() {
                let hj = group.h(fj, j);
                for b in 0..x.rs.len() {
                    let v = ops.dtor(&ec, &hj, &group.e(f, b));
                    let first = v.iter().next();
                    if let Some((_, z)) = first {
                        return Some(format!(
                            "(∇ᵇ_e{} Tᵇ)(h{}, e{}) ≠ 0 (first coefficient {z})",
                            x.rs.root(c),
                            j + 1,
                            x.rs.root(b)
                        ));
                    }
                }
            }
        }
    }
    torsion_derivative_witness(&ops.b, &ops.t).map(|(a, b, c)| {
        let l = model.labels();
        format!("(∇ᵇ_{} Tᵇ)({}, {}) ≠ 0", l[a], l[b], l[c])
    })
}

fn is_btp(model: &InfinitesimalModel) -> bool {
    let b = bismut_connection(model);
    torsion_derivative_witness(&b, &torsion(model, &b)).is_none()
}

#[derive(Clone, Debug, Serialize)]
pub struct RejectedSamelsonLeaf {
    pub relations: Vec<Relation>,
    pub point: Vec<String>,
    pub witness: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SamelsonSolveReport {
    pub space: String,
    pub parameters: Vec<String>,
    pub families: Vec<MetricFamily>,
    pub rejected_leaves: Vec<RejectedSamelsonLeaf>,
    pub disjunctions: usize,
    pub leaves: usize,
    /// No accepted point satisfies `g_{α+β} = g_α + g_β` on any triple.
    pub sum_rule_excluded: bool,
    pub samples: usize,
    pub samples_btp: usize,
    pub btp_outside_families: Vec<Vec<String>>,
    /// Witnesses for the first non-BTP samples.
    pub sample_witnesses: Vec<String>,
    pub completeness: &'static str,
}

impl SamelsonSolveReport {
    /// Single family `g_α ≡ c` on every simple factor.
    pub fn is_factorwise_constant(&self, group: &SamelsonGroup) -> bool {
        let k = group.positive.len();
        let expected = canonical(&factor_constant_rows(group), k);
        self.families.len() == 1 && canonical(&self.families[0].relations.iter().map(|r| r.coeffs.clone()).collect(), k) == expected
    }
}

fn factor_constant_rows(group: &SamelsonGroup) -> Mat<Q> {
    let k = group.positive.len();
    let mut rows = Vec::new();
    for p in 1..k {
        let prev = p - 1;
        if group.positive[p].0 == group.positive[prev].0 {
            let mut r = vec![Q::zero(); k];
            r[p] = Q::one();
            r[prev] = -Q::one();
            rows.push(r);
        }
    }
    rows
}

/// `(α, β, α+β)` positive, per factor, as parameter indices, with the
/// equality branch chosen by the type of `α − β`.
fn triples(group: &SamelsonGroup) -> Vec<(usize, usize, usize, Mat<Q>)> {
    let k = group.positive.len();
    let mut out = Vec::new();
    for (i, &(f, a)) in group.positive.iter().enumerate() {
        for &(f2, b) in &group.positive[i + 1..] {
            if f2 != f {
                continue;
            }
            let rs = &group.factors[f].rs;
            let Some(s) = rs.sum(a, b) else { continue };
            let (pa, pb, ps) = (group.param(f, a), group.param(f, b), group.param(f, s));
            let eq = |c: usize| {
                let mut r = vec![Q::zero(); k];
                r[ps] += Q::one();
                r[c] -= Q::one();
                r
            };
            let alt = match rs.diff(a, b) {
                None => vec![eq(pa), eq(pb)],
                Some(d) if rs.is_positive(d) => vec![eq(pa)],
                Some(_) => vec![eq(pb)],
            };
            out.push((pa, pb, ps, alt));
        }
    }
    out
}

/// BTP right-`T`-invariant metrics for a fixed `J_𝔱` and `g_o`.
pub fn solve_samelson_projectable(
    group: &SamelsonGroup,
    structure: &SamelsonStructure,
    g_o: &Mat<Q>,
    opts: &SolveOptions,
) -> Result<SamelsonSolveReport, GroupError> {
    let k = group.positive.len();
    let names = group.parameter_names();
    let build = |x: &[Q]| samelson_model(group, structure, &SamelsonMetric { roots: x.to_vec(), torus: g_o.clone() });
    build(&vec![Q::one(); k])?;
    let tr = triples(group);
    let dis: Vec<Vec<Mat<Q>>> = tr
        .iter()
        .map(|(pa, pb, ps, alt)| {
            let mut sum = vec![Q::zero(); k];
            sum[*ps] += Q::one();
            sum[*pa] -= Q::one();
            sum[*pb] -= Q::one();
            vec![canonical(&vec![sum], k), canonical(alt, k)]
        })
        .collect();
    let mut leaves = Vec::new();
    dfs(&dis[..dis.len().min(opts.cap)], 0, &Vec::new(), k, &mut leaves);
    leaves.sort();
    leaves.dedup();
    let n_leaves = leaves.len();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut families = Vec::new();
    let mut rejected = Vec::new();
    for leaf in leaves {
        let x0 = positive_point(&leaf, k).expect("leaves are feasible");
        let points: Vec<Vec<Q>> =
            (0..opts.verify_points).map(|_| random_point(&leaf, &x0, &mut rng, opts.max_denominator)).collect();
        let relations: Vec<Relation> = leaf.iter().map(|r| Relation::new(r.clone(), &names)).collect();
        let bad = points.iter().find(|x| !is_btp(&build(x).expect("positive point")));
        match bad {
            None => {
                let mut tags = Vec::new();
                if leaf.is_empty() {
                    tags.push(FamilyTag::FullCone);
                } else if k - leaf.len() == 1 {
                    tags.push(FamilyTag::KillingRay);
                } else {
                    tags.push(FamilyTag::Other);
                }
                families.push(MetricFamily { dimension: k - leaf.len(), relations, tags, verified_points: points });
            }
            Some(x) => {
                let model = build(x).expect("positive point");
                rejected.push(RejectedSamelsonLeaf {
                    relations,
                    point: x.iter().map(fmt_q).collect(),
                    witness: samelson_btp_witness(group, &model).unwrap_or_default(),
                });
            }
        }
    }
    let sum_rule_excluded = families.iter().flat_map(|f| &f.verified_points).all(|x| {
        tr.iter().all(|(pa, pb, ps, _)| x[*ps] != x[*pa] + x[*pb])
    });

    let mut sources: Vec<Mat<Q>> = vec![Vec::new()];
    sources.extend(rejected.iter().map(|r| r.relations.iter().map(|x| x.coeffs.clone()).collect()));
    let anchors: Vec<Vec<Q>> = sources.iter().map(|s| positive_point(s, k).expect("feasible")).collect();
    let results: Vec<(bool, Option<Vec<Q>>, Option<String>)> = (0..opts.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let s = i % sources.len();
            let x: Vec<Q> = if s == 0 {
                (0..k).map(|_| random_q(&mut rng, opts.max_denominator, 0, 2).max(Q::new(1, opts.max_denominator))).collect()
            } else {
                random_point(&sources[s], &anchors[s], &mut rng, opts.max_denominator)
            };
            let model = build(&x).expect("positive point");
            if is_btp(&model) {
                let inside = families.iter().any(|f| f.contains(&x));
                (true, (!inside).then_some(x), None)
            } else {
                let w = (i < 8).then(|| samelson_btp_witness(group, &model)).flatten();
                (false, None, w)
            }
        })
        .collect();
    Ok(SamelsonSolveReport {
        space: format!("Samelson {}", group.name()),
        parameters: names,
        families,
        rejected_leaves: rejected,
        disjunctions: dis.len(),
        leaves: n_leaves,
        sum_rule_excluded,
        samples: opts.samples,
        samples_btp: results.iter().filter(|r| r.0).count(),
        btp_outside_families: results.iter().filter_map(|r| r.1.as_ref()).map(|x| x.iter().map(fmt_q).collect()).collect(),
        sample_witnesses: results.iter().filter_map(|r| r.2.clone()).collect(),
        completeness: "empirical: rejection sampling, not a proof",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermgeo::check_conditions;

    fn group(s: &[&str]) -> SamelsonGroup {
        SamelsonGroup::new(&s.iter().map(|x| x.parse().unwrap()).collect::<Vec<_>>())
    }

    #[test]
    fn su3_killing_roots_formulas_curvature_and_flags() {
        let g = group(&["A2"]);
        let (js, g_o) = SamelsonStructure::default_for(&g).unwrap();
        let metric = SamelsonMetric::constant(&g, Q::one(), g_o);
        let model = samelson_model(&g, &js, &metric).unwrap();
        assert_eq!(model.dim(), 8);
        assert_eq!(samelson_formula_witness(&g, &metric, &model), None);
        assert_eq!(bismut_curvature_witness(&g, &metric, &model), None);
        let r = check_conditions(&model);
        assert!(r.btp.holds && r.bas.as_ref().unwrap().holds, "{:?}", r.btp);
    }

    #[test]
    fn formulas_hold_for_general_root_metrics() {
        let g = group(&["A2"]);
        let (js, g_o) = SamelsonStructure::default_for(&g).unwrap();
        let metric = SamelsonMetric { roots: vec![q(1), q(3), Q::new(5, 2)], torus: g_o };
        let model = samelson_model(&g, &js, &metric).unwrap();
        assert_eq!(samelson_formula_witness(&g, &metric, &model), None);
    }

    #[test]
    fn non_constant_fails_with_witness() {
        let g = group(&["A2"]);
        let (js, g_o) = SamelsonStructure::default_for(&g).unwrap();
        let metric = SamelsonMetric { roots: vec![q(1), q(1), q(2)], torus: g_o };
        let model = samelson_model(&g, &js, &metric).unwrap();
        assert!(!is_btp(&model));
        assert!(samelson_btp_witness(&g, &model).is_some());
    }

    #[test]
    fn rejects_odd_rank() {
        let g = group(&["A1"]);
        assert!(matches!(SamelsonStructure::default_for(&g), Err(GroupError::OddDimension(_))));
        let g = group(&["A2", "A1"]);
        assert!(SamelsonStructure::default_for(&g).is_err());
    }

    #[test]
    fn solver_su3_constant_family() {
        let g = group(&["A2"]);
        let (js, g_o) = SamelsonStructure::default_for(&g).unwrap();
        let opts = SolveOptions { samples: 60, ..SolveOptions::default() };
        let rep = solve_samelson_projectable(&g, &js, &g_o, &opts).unwrap();
        assert!(rep.is_factorwise_constant(&g), "{:?}", rep.families);
        assert!(rep.sum_rule_excluded);
        assert_eq!(rep.rejected_leaves.len(), 1);
        assert!(rep.btp_outside_families.is_empty());
    }

    #[test]
    fn solver_a1xa1_per_factor() {
        let g = group(&["A1", "A1"]);
        let (js, g_o) = SamelsonStructure::default_for(&g).unwrap();
        let opts = SolveOptions { samples: 40, ..SolveOptions::default() };
        let rep = solve_samelson_projectable(&g, &js, &g_o, &opts).unwrap();
        assert!(rep.is_factorwise_constant(&g));
        assert_eq!(rep.families[0].dimension, 2);
        assert!(rep.btp_outside_families.is_empty());
    }
}
