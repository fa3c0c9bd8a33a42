//! Generalized flag manifolds `K/H` with `H` the centralizer of a torus.
//!
//! Roots are split into `R_𝔥` (supported on the chosen isotropy simple roots)
//! and `R_𝔪`. Invariant metrics are constant on `R_𝔥`-orbits of `R_𝔪⁺`; an
//! invariant complex structure is a sign on each orbit subject to the two
//! closure conditions. Closed forms are written in the Chevalley basis
//! `e_α = s_α E_α`, where every coefficient is rational.

pub mod catalog;
pub mod solver;

use std::collections::HashMap;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::hermgeo::{
    bismut_connection, d_omega, levi_civita, torsion, torsion_derivative_witness, InfinitesimalModel, ModelError, Nomizu,
};
use crate::liealg::{compact_real_form, CompactForm};
use crate::linalg::{Endo, Mat, SVec};
use crate::rootsys::{build_root_system, chevalley_constants, weyl_scale_sq, CartanType, ChevalleyData, RootId, RootSystem};
use crate::scalar::{q, qser, Q, Qi};

pub use catalog::{class_c_catalog, class_c_instances, ClassCInstance, CatalogRow};
pub use solver::{
    triple_equalities_witness, simply_laced_properties, solve_btp_metrics, FamilyTag, MetricFamily, Relation,
    SimplyLacedReport, SolveOptions, SolveReport,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FlagError {
    #[error("simple root index {0} out of range for rank {1}")]
    SimpleRootOutOfRange(usize, usize),
    #[error("simple root index {0} listed twice")]
    DuplicateSimpleRoot(usize),
    #[error("isotropy is all of K")]
    TrivialQuotient,
    #[error("sign vector has length {0}, expected {1}")]
    SignLength(usize, usize),
    #[error("signs violate the closure conditions at {0}")]
    NotIntegrable(String),
    #[error("metric has {0} values, expected {1}")]
    MetricLength(usize, usize),
    #[error("metric value {0} is not positive")]
    NotPositive(String),
    #[error("metric not ad(𝔥)-invariant at {0}")]
    NotInvariant(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Clone, Debug)]
pub struct FlagManifold {
    ct: CartanType,
    rs: RootSystem,
    ch: OnceLock<ChevalleyData>,
    compact: OnceLock<CompactForm>,
    isotropy_simple: Vec<usize>,
    in_h: Vec<bool>,
    m_pos: Vec<RootId>,
    slot: HashMap<RootId, usize>,
    class_of: Vec<usize>,
    classes: Vec<Vec<RootId>>,
}

/// Flag manifold whose isotropy is generated by the given simple roots
/// (0-based Bourbaki indices).
pub fn build_flag(ct: CartanType, isotropy_simple: &[usize]) -> Result<FlagManifold, FlagError> {
    let r = ct.rank();
    let mut mark = vec![false; r];
    for &i in isotropy_simple {
        if i >= r {
            return Err(FlagError::SimpleRootOutOfRange(i, r));
        }
        if mark[i] {
            return Err(FlagError::DuplicateSimpleRoot(i));
        }
        mark[i] = true;
    }
    if mark.iter().all(|&b| b) {
        return Err(FlagError::TrivialQuotient);
    }
    let rs = build_root_system(ct);
    let in_h: Vec<bool> = rs
        .roots()
        .iter()
        .map(|root| root.0.iter().enumerate().all(|(k, &c)| c == 0 || mark[k]))
        .collect();
    let m_pos: Vec<RootId> = rs.positive_ids().filter(|&a| !in_h[a]).collect();
    let slot: HashMap<RootId, usize> = m_pos.iter().enumerate().map(|(p, &a)| (a, p)).collect();
    // R_𝔥-orbits on R_𝔪⁺ by union-find over α ~ α + γ.
    let mut parent: Vec<usize> = (0..m_pos.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let h_roots: Vec<RootId> = (0..rs.len()).filter(|&a| in_h[a]).collect();
    for (p, &a) in m_pos.iter().enumerate() {
        for &gm in &h_roots {
            if let Some(s) = rs.sum(a, gm) {
                if let Some(&p2) = slot.get(&s) {
                    let (x, y) = (find(&mut parent, p), find(&mut parent, p2));
                    parent[x.max(y)] = x.min(y);
                }
            }
        }
    }
    let mut class_index: HashMap<usize, usize> = HashMap::new();
    let mut class_of = vec![0; m_pos.len()];
    let mut classes: Vec<Vec<RootId>> = Vec::new();
    for p in 0..m_pos.len() {
        let root = find(&mut parent, p);
        let c = *class_index.entry(root).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        class_of[p] = c;
        classes[c].push(m_pos[p]);
    }
    let mut isotropy_simple = isotropy_simple.to_vec();
    isotropy_simple.sort_unstable();
    Ok(FlagManifold {
        ct,
        rs,
        ch: OnceLock::new(),
        compact: OnceLock::new(),
        isotropy_simple, in_h, m_pos, slot, class_of, classes })
}

impl FlagManifold {
    pub fn cartan_type(&self) -> CartanType {
        self.ct
    }
    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }
    pub fn chevalley(&self) -> &ChevalleyData {
        self.ch.get_or_init(|| chevalley_constants(&self.rs))
    }
    pub fn compact_form(&self) -> &CompactForm {
        self.compact.get_or_init(|| compact_real_form(&self.rs, self.chevalley()))
    }
    pub fn isotropy_simple(&self) -> &[usize] {
        &self.isotropy_simple
    }
    /// `R_𝔪⁺` in root order.
    pub fn m_positive(&self) -> &[RootId] {
        &self.m_pos
    }
    /// `R_𝔥`-orbits of `R_𝔪⁺`; these index the metric parameters.
    pub fn classes(&self) -> &[Vec<RootId>] {
        &self.classes
    }
    pub fn real_dim(&self) -> usize {
        2 * self.m_pos.len()
    }
    pub fn is_isotropy_root(&self, a: RootId) -> bool {
        self.in_h[a]
    }
    pub fn in_m(&self, a: RootId) -> bool {
        !self.in_h[a]
    }
    /// Parameter class of `α ∈ R_𝔪` (either sign).
    pub fn class_of_root(&self, a: RootId) -> usize {
        let p = if self.rs.is_positive(a) { a } else { self.rs.neg(a) };
        self.class_of[self.slot[&p]]
    }
    /// `α + β` when it is a root lying in `R_𝔪`.
    pub fn sum_in_m(&self, a: RootId, b: RootId) -> Option<RootId> {
        self.rs.sum(a, b).filter(|&s| self.in_m(s))
    }
    /// All of `R_𝔪`, positive roots first.
    pub fn m_roots(&self) -> Vec<RootId> {
        self.m_pos.iter().copied().chain(self.m_pos.iter().map(|&a| self.rs.neg(a))).collect()
    }
    /// `[𝔪, 𝔪]_𝔪 = 0`.
    pub fn is_hermitian_symmetric(&self) -> bool {
        self.m_pos.iter().all(|&a| self.m_pos.iter().all(|&b| self.sum_in_m(a, b).is_none()))
    }
    /// Grading of `R_𝔪⁺` by the total coefficient on the non-isotropy simple roots.
    pub fn grading_summands(&self) -> Vec<Vec<RootId>> {
        let r = self.ct.rank();
        let painted: Vec<usize> = (0..r).filter(|k| !self.isotropy_simple.contains(k)).collect();
        let mut out: Vec<Vec<RootId>> = Vec::new();
        for &a in &self.m_pos {
            let level: i32 = painted.iter().map(|&k| self.rs.root(a).0[k]).sum();
            let l = level as usize;
            if out.len() < l {
                out.resize(l, Vec::new());
            }
            out[l - 1].push(a);
        }
        out
    }
    /// Chevalley vector `e_α` over the real basis of `𝔪` (v/w pairs in `R_𝔪⁺` order).
    pub fn e_vector(&self, a: RootId) -> SVec<Qi> {
        let half = Q::new(1, 2);
        let (p, positive) = if self.rs.is_positive(a) { (self.slot[&a], true) } else { (self.slot[&self.rs.neg(a)], false) };
        if positive {
            SVec::from_pairs([(2 * p, Qi::real(half)), (2 * p + 1, Qi::new(Q::zero(), -half))])
        } else {
            SVec::from_pairs([(2 * p, Qi::real(-half)), (2 * p + 1, Qi::new(Q::zero(), -half))])
        }
    }
    pub fn labels(&self) -> Vec<String> {
        self.m_pos.iter().map(|&a| self.rs.root(a).to_string()).collect()
    }
}

/// Invariant complex structure: the set `R_𝔪⁺(J)` given by a sign on each orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagComplexStructure {
    /// `positive[c]`: orbit `c` of standard positive roots is of type (1,0).
    pub positive: Vec<bool>,
}

impl FlagComplexStructure {
    pub fn standard(fm: &FlagManifold) -> Self {
        FlagComplexStructure { positive: vec![true; fm.classes.len()] }
    }

    pub fn new(fm: &FlagManifold, positive: Vec<bool>) -> Result<Self, FlagError> {
        if positive.len() != fm.classes.len() {
            return Err(FlagError::SignLength(positive.len(), fm.classes.len()));
        }
        let cs = FlagComplexStructure { positive };
        match cs.closure_witness(fm) {
            None => Ok(cs),
            Some(w) => Err(FlagError::NotIntegrable(w)),
        }
    }

    /// `ε_α = ±1` for `α ∈ R_𝔪`.
    pub fn eps(&self, fm: &FlagManifold, a: RootId) -> i32 {
        let c = fm.class_of_root(a);
        let s = if self.positive[c] { 1 } else { -1 };
        if fm.rs.is_positive(a) {
            s
        } else {
            -s
        }
    }

    fn is_holomorphic(&self, fm: &FlagManifold, a: RootId) -> bool {
        self.eps(fm, a) == 1
    }

    /// First violation of `(R_𝔥 + P) ∩ R ⊆ P` or `(P + P) ∩ R ⊆ P`.
    fn closure_witness(&self, fm: &FlagManifold) -> Option<String> {
        let rs = &fm.rs;
        let m = fm.m_roots();
        let p: Vec<RootId> = m.iter().copied().filter(|&a| self.is_holomorphic(fm, a)).collect();
        for &a in &p {
            for g in (0..rs.len()).filter(|&g| fm.in_h[g]) {
                if let Some(s) = rs.sum(a, g) {
                    if !fm.in_h[s] && !self.is_holomorphic(fm, s) {
                        return Some(format!("{} + {}", rs.root(a), rs.root(g)));
                    }
                }
            }
            for &b in &p {
                if let Some(s) = rs.sum(a, b) {
                    if fm.in_h[s] || !self.is_holomorphic(fm, s) {
                        return Some(format!("{} + {}", rs.root(a), rs.root(b)));
                    }
                }
            }
        }
        None
    }

    /// `J` on the real basis: `J v_α = ε w_α`, `J w_α = −ε v_α`.
    pub fn endo(&self, fm: &FlagManifold) -> Endo<Q> {
        let mut cols = Vec::with_capacity(fm.real_dim());
        for &a in &fm.m_pos {
            let e = Q::from_integer(self.eps(fm, a) as i128);
            let p = fm.slot[&a];
            cols.push(SVec::from_pairs([(2 * p + 1, e)]));
            cols.push(SVec::from_pairs([(2 * p, -e)]));
        }
        Endo::from_cols(cols)
    }
}

/// All invariant complex structures, by brute force over orbit signs.
pub fn enumerate_complex_structures(fm: &FlagManifold) -> Vec<FlagComplexStructure> {
    let k = fm.classes.len();
    assert!(k < 30, "too many orbits for brute force");
    (0u64..1 << k)
        .filter_map(|mask| {
            let positive = (0..k).map(|c| mask >> c & 1 == 0).collect();
            FlagComplexStructure::new(fm, positive).ok()
        })
        .collect()
}

/// Invariant metric: one positive value `g_α = g(E_α, Ē_α)` per orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagMetric {
    #[serde(serialize_with = "qser::vec")]
    pub values: Vec<Q>,
}

impl FlagMetric {
    pub fn new(fm: &FlagManifold, values: Vec<Q>) -> Result<Self, FlagError> {
        if values.len() != fm.classes.len() {
            return Err(FlagError::MetricLength(values.len(), fm.classes.len()));
        }
        if let Some(v) = values.iter().find(|v| **v <= Q::zero()) {
            return Err(FlagError::NotPositive(v.to_string()));
        }
        Ok(FlagMetric { values })
    }

    /// Metric from per-root values on `R_𝔪⁺`; rejects values that are not
    /// constant on orbits.
    pub fn from_roots(fm: &FlagManifold, per_root: &[Q]) -> Result<Self, FlagError> {
        if per_root.len() != fm.m_pos.len() {
            return Err(FlagError::MetricLength(per_root.len(), fm.m_pos.len()));
        }
        let mut values: Vec<Option<Q>> = vec![None; fm.classes.len()];
        for (p, v) in per_root.iter().enumerate() {
            let c = fm.class_of[p];
            match values[c] {
                None => values[c] = Some(*v),
                Some(w) if w != *v => return Err(FlagError::NotInvariant(fm.rs.root(fm.m_pos[p]).to_string())),
                _ => {}
            }
        }
        Self::new(fm, values.into_iter().map(Option::unwrap).collect())
    }

    pub fn of(&self, fm: &FlagManifold, a: RootId) -> Q {
        self.values[fm.class_of_root(a)]
    }
}

/// `g_α ≡ 1`, the metric induced by `−B`.
pub fn killing_metric(fm: &FlagManifold) -> FlagMetric {
    FlagMetric { values: vec![Q::one(); fm.classes.len()] }
}

/// Assembled model on `𝔨 = 𝔥 ⊕ 𝔪` with the Chevalley `(1,0)` frame attached.
pub fn flag_model(fm: &FlagManifold, cs: &FlagComplexStructure, g: &FlagMetric) -> Result<InfinitesimalModel, FlagError> {
    let c = fm.compact_form();
    let mut h_idx: Vec<usize> = (0..fm.ct.rank()).map(|j| c.t(j)).collect();
    for a in fm.rs.positive_ids().filter(|&a| fm.in_h[a]) {
        h_idx.push(c.v(a));
        h_idx.push(c.w(a));
    }
    let mut m_idx = Vec::with_capacity(fm.real_dim());
    let n = fm.real_dim();
    let mut gm: Mat<Q> = vec![vec![Q::zero(); n]; n];
    for (p, &a) in fm.m_pos.iter().enumerate() {
        m_idx.push(c.v(a));
        m_idx.push(c.w(a));
        let d = q(2) * weyl_scale_sq(&fm.rs, a) * g.of(fm, a);
        gm[2 * p][2 * p] = d;
        gm[2 * p + 1][2 * p + 1] = d;
    }
    let name = format!("{}/{}", fm.ct, isotropy_label(fm));
    let model = InfinitesimalModel::from_algebra(name, &c.algebra, &h_idx, &m_idx, cs.endo(fm), gm)?;
    let frame: Vec<SVec<Qi>> = fm
        .m_pos
        .iter()
        .map(|&a| {
            let b = if cs.eps(fm, a) == 1 { a } else { fm.rs.neg(a) };
            fm.e_vector(b)
        })
        .collect();
    Ok(model.with_frame(frame)?)
}

fn isotropy_label(fm: &FlagManifold) -> String {
    if fm.isotropy_simple.is_empty() {
        "T".into()
    } else {
        let s: Vec<String> = fm.isotropy_simple.iter().map(|i| (i + 1).to_string()).collect();
        format!("H[{}]", s.join(","))
    }
}

/// Closed-form quantities of `(K/H, J, g)` in the Chevalley basis.
pub struct FlagHermitian<'a> {
    pub fm: &'a FlagManifold,
    pub cs: &'a FlagComplexStructure,
    pub g: &'a FlagMetric,
}

impl FlagHermitian<'_> {
    fn n(&self, a: RootId, b: RootId) -> Q {
        q(self.fm.chevalley().n(a, b) as i128)
    }
    fn gv(&self, a: RootId) -> Q {
        self.g.of(self.fm, a)
    }
    fn e(&self, a: RootId) -> Q {
        q(self.cs.eps(self.fm, a) as i128)
    }

    /// `Λ^LC(e_α)e_β = ½N(1 + (g_β − g_α)/g_{α+β}) e_{α+β}`.
    pub fn levi_civita(&self, a: RootId, b: RootId) -> Q {
        match self.fm.sum_in_m(a, b) {
            None => Q::zero(),
            Some(s) => Q::new(1, 2) * self.n(a, b) * (Q::one() + (self.gv(b) - self.gv(a)) / self.gv(s)),
        }
    }

    /// `Λᵇ(e_α)e_β`, general signs.
    pub fn bismut(&self, a: RootId, b: RootId) -> Q {
        let Some(s) = self.fm.sum_in_m(a, b) else { return Q::zero() };
        let (ea, eb, es) = (self.e(a), self.e(b), self.e(s));
        let one = Q::one();
        Q::new(1, 2)
            * self.n(a, b)
            * ((one + ea * eb) - (one + eb * es) * self.gv(a) / self.gv(s) + (one - ea * es) * self.gv(b) / self.gv(s))
    }

    /// The three displayed cases for `Λᵇ`; `None` outside them.
    pub fn bismut_cases(&self, a: RootId, b: RootId) -> Option<Q> {
        let pos = |x: RootId| self.cs.eps(self.fm, x) == 1;
        let sum = self.fm.rs.sum(a, b);
        let sum_m = self.fm.sum_in_m(a, b);
        if pos(a) && pos(b) {
            let s = sum_m?;
            return Some(self.n(a, b) * (Q::one() - self.gv(a) / self.gv(s)));
        }
        if pos(a) && !pos(b) && (sum.is_none() || sum_m.is_some_and(pos)) {
            return Some(Q::zero());
        }
        if pos(a) != pos(b) {
            if let Some(s) = sum_m {
                if pos(s) == pos(b) {
                    return Some(self.n(a, b) * (self.gv(b) - self.gv(a)) / self.gv(s));
                }
            }
        }
        None
    }

    /// `Tᵇ(e_α, e_β)` coefficient on `e_{α+β}`.
    pub fn torsion(&self, a: RootId, b: RootId) -> Q {
        match self.fm.sum_in_m(a, b) {
            None => Q::zero(),
            Some(_) => self.bismut(a, b) - self.bismut(b, a) - self.n(a, b),
        }
    }

    /// The four displayed cases for `Tᵇ` with `α ∈ R_𝔪⁺(J)`; `None` outside them.
    pub fn torsion_cases(&self, a: RootId, b: RootId) -> Option<Q> {
        let pos = |x: RootId| self.cs.eps(self.fm, x) == 1;
        if !pos(a) {
            return None;
        }
        let one = Q::one();
        match (pos(b), self.fm.sum_in_m(a, b)) {
            (true, Some(s)) => Some(self.n(a, b) * (one - (self.gv(a) + self.gv(b)) / self.gv(s))),
            (true, None) => None,
            (false, None) => Some(Q::zero()),
            (false, Some(s)) if pos(s) => Some(self.n(a, b) * ((self.gv(a) - self.gv(b)) / self.gv(s) - one)),
            (false, Some(s)) => Some(self.n(a, b) * ((self.gv(b) - self.gv(a)) / self.gv(s) - one)),
        }
    }

    /// `dω(e_α, e_β, e_{−α−β})` from the displayed formula: `−i N s²_{α+β}(ε_α g_α + ε_β g_β − ε_{α+β} g_{α+β})`.
    pub fn d_omega(&self, a: RootId, b: RootId) -> Qi {
        let Some(s) = self.fm.sum_in_m(a, b) else { return Qi::zero() };
        let c = self.n(a, b)
            * weyl_scale_sq(&self.fm.rs, s)
            * (self.e(a) * self.gv(a) + self.e(b) * self.gv(b) - self.e(s) * self.gv(s));
        Qi::new(Q::zero(), -c)
    }

    /// `dω(Je_α, Je_β, Je_{−α−β})`: `−N s²_{α+β}(ε_αε_β g_{α+β} − ε_αε_{α+β} g_β − ε_βε_{α+β} g_α)`.
    pub fn d_omega_j(&self, a: RootId, b: RootId) -> Q {
        let Some(s) = self.fm.sum_in_m(a, b) else { return Q::zero() };
        let (ea, eb, es) = (self.e(a), self.e(b), self.e(s));
        -self.n(a, b) * weyl_scale_sq(&self.fm.rs, s) * (ea * eb * self.gv(s) - ea * es * self.gv(b) - eb * es * self.gv(a))
    }

    /// `g_{α+β} = g_α + g_β` whenever `α, β, α+β ∈ R_𝔪⁺(J)`.
    pub fn kahler_witness(&self) -> Option<(RootId, RootId)> {
        let p: Vec<RootId> = self.fm.m_roots().into_iter().filter(|&a| self.cs.eps(self.fm, a) == 1).collect();
        for &a in &p {
            for &b in &p {
                if let Some(s) = self.fm.sum_in_m(a, b) {
                    if self.gv(s) != self.gv(a) + self.gv(b) {
                        return Some((a, b));
                    }
                }
            }
        }
        None
    }

    /// `(∇ᵇ_{e_γ}Tᵇ)(e_α, e_β)` coefficient on `e_{α+β+γ}`.
    pub fn torsion_derivative(&self, c: RootId, a: RootId, b: RootId) -> Q {
        let fm = self.fm;
        let mut v = Q::zero();
        if let Some(ab) = fm.sum_in_m(a, b) {
            v += self.torsion(a, b) * self.bismut(c, ab);
        }
        if let Some(ca) = fm.sum_in_m(c, a) {
            v -= self.bismut(c, a) * self.torsion(ca, b);
        }
        if let Some(cb) = fm.sum_in_m(c, b) {
            v -= self.bismut(c, b) * self.torsion(a, cb);
        }
        v
    }

    /// First `(γ, α, β)` with `(∇ᵇ_{e_γ}Tᵇ)(e_α, e_β) ≠ 0` in `𝔪^ℂ`.
    pub fn btp_witness(&self) -> Option<((RootId, RootId, RootId), Q)> {
        let m = self.fm.m_roots();
        for &c in &m {
            for (i, &a) in m.iter().enumerate() {
                for &b in &m[i + 1..] {
                    let Some(abc) = self.fm.rs.sum(a, b).and_then(|ab| self.fm.rs.sum(ab, c)) else { continue };
                    if !self.fm.in_m(abc) {
                        continue;
                    }
                    let v = self.torsion_derivative(c, a, b);
                    if !v.is_zero() {
                        return Some(((c, a, b), v));
                    }
                }
            }
        }
        None
    }
}

fn apply_c(conn: &Nomizu, x: &SVec<Qi>, y: &SVec<Qi>) -> SVec<Qi> {
    let mut out = SVec::zero();
    for (a, c) in x.iter() {
        let op = conn.ops[a].map(Qi::real);
        out = out.add_scaled(c, &op.apply(y));
    }
    out
}

/// First disagreement between a closed form and the generic engine over all
/// ordered pairs in `R_𝔪`.
pub fn closed_form_witness(
    fm: &FlagManifold,
    cs: &FlagComplexStructure,
    g: &FlagMetric,
) -> Result<Option<String>, FlagError> {
    let model = flag_model(fm, cs, g)?;
    let fh = FlagHermitian { fm, cs, g };
    let lc = levi_civita(&model);
    let bi = bismut_connection(&model);
    let tb = torsion(&model, &bi);
    let dw = d_omega(&model);
    let eval3 = |x: &SVec<Qi>, y: &SVec<Qi>, z: &SVec<Qi>| {
        let mut s = Qi::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                for (k, c) in z.iter() {
                    s += a * b * c * Qi::real(dw.get(i, j, k));
                }
            }
        }
        s
    };
    let j = cs.endo(fm).map(Qi::real);
    let jv = |v: &SVec<Qi>| j.apply(v);
    let m = fm.m_roots();
    for &a in &m {
        for &b in &m {
            let (ea, eb) = (fm.e_vector(a), fm.e_vector(b));
            let target = |c: Q| match fm.sum_in_m(a, b) {
                Some(s) => fm.e_vector(s).scale(Qi::real(c)),
                None => SVec::zero(),
            };
            let mut t = SVec::zero();
            for (i, x) in ea.iter() {
                for (k, y) in eb.iter() {
                    t = t.add_scaled(x * y, &tb.basis(i, k).map(Qi::real));
                }
            }
            let mut bad = Vec::new();
            if apply_c(&lc, &ea, &eb) != target(fh.levi_civita(a, b)) {
                bad.push("Λ^LC");
            }
            if apply_c(&bi, &ea, &eb) != target(fh.bismut(a, b)) {
                bad.push("Λᵇ");
            }
            if fh.bismut_cases(a, b).is_some_and(|c| c != fh.bismut(a, b)) {
                bad.push("Λᵇ case split");
            }
            if t != target(fh.torsion(a, b)) {
                bad.push("Tᵇ");
            }
            if fh.torsion_cases(a, b).is_some_and(|c| c != fh.torsion(a, b)) {
                bad.push("Tᵇ case split");
            }
            if let Some(s) = fm.sum_in_m(a, b) {
                let ens = fm.e_vector(fm.rs.neg(s));
                if eval3(&ea, &eb, &ens) != fh.d_omega(a, b) {
                    bad.push("dω");
                }
                if eval3(&jv(&ea), &jv(&eb), &jv(&ens)) != Qi::real(fh.d_omega_j(a, b)) {
                    bad.push("dω∘J");
                }
            }
            if let Some(what) = bad.first() {
                return Ok(Some(format!("{what} at roots ({a}, {b})")));
            }
        }
    }
    if fh.btp_witness().is_none() != torsion_derivative_witness(&bi, &tb).is_none() {
        return Ok(Some("BTP closed form disagrees with the engine".into()));
    }
    if fh.kahler_witness().is_none() != dw.first_nonzero().is_none() {
        return Ok(Some("Kähler criterion disagrees with dω".into()));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermgeo::check_conditions;
    use crate::scalar::qr;

    fn ct(s: &str) -> CartanType {
        s.parse().unwrap()
    }

    fn assert_closed_forms(fm: &FlagManifold, cs: &FlagComplexStructure, g: &FlagMetric) {
        assert_eq!(closed_form_witness(fm, cs, g).unwrap(), None);
    }

    #[test]
    fn full_flag_a2_has_three_positive_roots_and_six_structures() {
        let fm = build_flag(ct("A2"), &[]).unwrap();
        assert_eq!(fm.m_positive().len(), 3);
        assert_eq!(enumerate_complex_structures(&fm).len(), 6);
        let a3 = build_flag(ct("A3"), &[]).unwrap();
        assert_eq!(enumerate_complex_structures(&a3).len(), 24);
    }

    #[test]
    fn g2_mod_u2_has_dimension_ten_and_two_summands() {
        let fm = build_flag(ct("G2"), &[0]).unwrap();
        assert_eq!(fm.real_dim(), 10);
        assert_eq!(fm.classes().len(), 2);
        assert_eq!(fm.grading_summands().len(), 2);
        let by_grade: Vec<usize> = fm.grading_summands().iter().map(Vec::len).collect();
        let by_orbit: Vec<usize> = fm.classes().iter().map(Vec::len).collect();
        assert_eq!(by_grade, by_orbit);
    }

    #[test]
    fn rejects_bad_isotropy() {
        assert_eq!(build_flag(ct("A2"), &[2]).unwrap_err(), FlagError::SimpleRootOutOfRange(2, 2));
        assert_eq!(build_flag(ct("A2"), &[0, 0]).unwrap_err(), FlagError::DuplicateSimpleRoot(0));
        assert_eq!(build_flag(ct("A2"), &[0, 1]).unwrap_err(), FlagError::TrivialQuotient);
    }

    #[test]
    fn metric_invariance_is_enforced() {
        let fm = build_flag(ct("A3"), &[0]).unwrap();
        let n = fm.m_positive().len();
        assert!(FlagMetric::from_roots(&fm, &vec![q(1); n]).is_ok());
        let big = fm.classes().iter().find(|c| c.len() > 1).unwrap()[0];
        let mut v = vec![q(1); n];
        v[fm.m_positive().iter().position(|&a| a == big).unwrap()] = q(2);
        assert!(matches!(FlagMetric::from_roots(&fm, &v), Err(FlagError::NotInvariant(_))));
        assert!(FlagMetric::new(&fm, vec![q(0); fm.classes().len()]).is_err());
    }

    #[test]
    fn closed_forms_match_engine_on_su3_flag() {
        let fm = build_flag(ct("A2"), &[]).unwrap();
        for cs in enumerate_complex_structures(&fm) {
            for vals in [[1, 1, 1], [1, 2, 3], [2, 3, 7], [1, 2, 2]] {
                let g = FlagMetric::new(&fm, vals.iter().map(|&x| q(x)).collect()).unwrap();
                assert_closed_forms(&fm, &cs, &g);
            }
        }
    }

    #[test]
    fn closed_forms_match_engine_on_class_c_and_non_simply_laced() {
        for (t, iso, vals) in [
            ("G2", vec![0], vec![q(1), qr(5, 2)]),
            ("B2", vec![], vec![q(1), q(2), q(3), qr(1, 2)]),
            ("C3", vec![0, 2], vec![q(1), q(3)]),
            ("A3", vec![1], vec![q(1), q(2), q(4)]),
        ] {
            let fm = build_flag(ct(t), &iso).unwrap();
            assert_eq!(fm.classes().len(), vals.len(), "{t}");
            let g = FlagMetric::new(&fm, vals).unwrap();
            for cs in enumerate_complex_structures(&fm).iter().take(4) {
                assert_closed_forms(&fm, cs, &g);
            }
        }
    }

    #[test]
    fn killing_metric_examples() {
        let fm = build_flag(ct("A2"), &[]).unwrap();
        let cs = FlagComplexStructure::standard(&fm);
        let g = killing_metric(&fm);
        let fh = FlagHermitian { fm: &fm, cs: &cs, g: &g };
        let (a, b) = (fm.rs.simple(0), fm.rs.simple(1));
        // Tᵇ(E_α, E_β) = −N E_{α+β} at g ≡ 1.
        assert_eq!(fh.torsion(a, b), -q(fm.chevalley().n(a, b) as i128));
        // Λ^LC coefficient ½N.
        assert_eq!(fh.levi_civita(a, b), Q::new(1, 2) * q(fm.chevalley().n(a, b) as i128));
        assert_eq!(fh.bismut(a, fm.rs.neg(b)), Q::zero());
        let r = check_conditions(&flag_model(&fm, &cs, &g).unwrap());
        assert!(r.btp.holds && r.bas.unwrap().holds && r.balanced.holds && !r.kahler.holds);
    }
}
