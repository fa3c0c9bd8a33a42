//! Left-invariant Hermitian structures on Lie groups.
//!
//! Complex groups are handled through their underlying real algebra: the
//! basis `x_1, …, x_n, i·x_1, …, i·x_n` of [`realify`] with `J` equal to
//! multiplication by `i`. A left-invariant Hermitian metric is then a
//! Hermitian Gram matrix `G_ij = h(x_i, x_j)` and `g = Re h`.

pub mod calabi_eckmann;
pub mod m4;
pub mod nilpotent;
pub mod samelson;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::hermgeo::{
    bismut_connection, chern_connection, torsion, torsion_derivative_witness, ComplexFrame, InfinitesimalModel,
    ModelError,
};
use crate::liealg::{compact_real_form, complexify, orthogonal_ideal_split, realify, AlgebraError, LieAlgebra};
use crate::linalg::{inverse, is_hermitian, is_positive_definite, mat_identity, mat_mul, transpose, Endo, Mat, SVec};
use crate::rootsys::{build_root_system, chevalley_constants, CartanType};
use crate::scalar::{Field, Q, Qi};

pub use calabi_eckmann::{calabi_eckmann_search, CalabiEckmann, CalabiEckmannReport};
pub use m4::{m4_example, M4Report};
pub use nilpotent::{nilpotent_chern_curvature, nilpotent_model, NilpotentNormalForm, NilpotentReport};
pub use samelson::{
    samelson_model, solve_samelson_projectable, SamelsonGroup, SamelsonMetric, SamelsonSolveReport, SamelsonStructure,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroupError {
    #[error("algebra is not simple")]
    NotSimple,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("Gram matrix is not Hermitian positive definite")]
    Gram,
    #[error("B (Gᵗ)⁻¹ B̄ is not a positive rational multiple of G")]
    NotProportional,
    #[error("odd-dimensional algebra (dimension {0})")]
    OddDimension(usize),
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `[u, v]` on complex vectors of a group model.
pub fn bracket_c(model: &InfinitesimalModel, u: &SVec<Qi>, v: &SVec<Qi>) -> SVec<Qi> {
    let n = model.dim();
    let mut out = vec![Qi::zero(); n];
    for (a, x) in u.iter() {
        for (b, y) in v.iter() {
            for (k, c) in model.bracket_m(a, b).iter() {
                out[k] += x * y * Qi::real(c);
            }
        }
    }
    SVec::from_dense(&out)
}

/// Left-invariant Hermitian metric on a complex Lie group.
#[derive(Clone, Debug)]
pub struct ComplexGroupMetric {
    pub algebra: LieAlgebra<Qi>,
    /// `G_ij = h(x_i, x_j)`, `h(X, Y) = Xᵗ G Ȳ`.
    pub gram: Mat<Qi>,
}

impl ComplexGroupMetric {
    pub fn new(algebra: LieAlgebra<Qi>, gram: Mat<Qi>) -> Result<Self, GroupError> {
        let n = algebra.dim();
        if gram.len() != n || gram.iter().any(|r| r.len() != n) {
            return Err(GroupError::Dimension(format!("Gram matrix for an algebra of dimension {n}")));
        }
        if !is_hermitian(&gram) || !is_positive_definite(&gram) {
            return Err(GroupError::Gram);
        }
        Ok(ComplexGroupMetric { algebra, gram })
    }

    pub fn scaled(&self, c: Q) -> Self {
        let gram = self.gram.iter().map(|r| r.iter().map(|x| *x * Qi::real(c)).collect()).collect();
        ComplexGroupMetric { algebra: self.algebra.clone(), gram }
    }

    /// `(X, Y) ↦ h(AX, AY)`, Gram `AᵗGĀ`; `a` holds images of basis vectors as columns.
    pub fn pullback(&self, a: &Mat<Qi>) -> Result<Self, GroupError> {
        let abar: Mat<Qi> = a.iter().map(|r| r.iter().map(|x| x.conj()).collect()).collect();
        let gram = mat_mul(&mat_mul(&transpose(a), &self.gram), &abar);
        ComplexGroupMetric::new(self.algebra.clone(), gram)
    }

    /// Real metric on the realified basis.
    pub fn real_metric(&self) -> Mat<Q> {
        let n = self.algebra.dim();
        let mut g = vec![vec![Q::zero(); 2 * n]; 2 * n];
        for a in 0..n {
            for b in 0..n {
                let z = self.gram[a][b];
                g[a][b] = z.re;
                g[a + n][b + n] = z.re;
                g[a][b + n] = z.im;
                g[a + n][b] = -z.im;
            }
        }
        g
    }

    /// Group model on the realification, with preferred frame `½(x_k − i·(i x_k))`.
    pub fn model(&self, name: impl Into<String>) -> Result<InfinitesimalModel, GroupError> {
        let (real, j) = realify(&self.algebra);
        let model = InfinitesimalModel::group(name, &real, j, self.real_metric())?;
        Ok(model.with_frame(holomorphic_frame(self.algebra.dim()))?)
    }

    /// Complex Killing matrix `B_ij = B(x_i, x_j)`.
    pub fn killing(&self) -> Mat<Qi> {
        self.algebra.killing_form().matrix.clone()
    }
}

fn holomorphic_frame(n: usize) -> Vec<SVec<Qi>> {
    let half = Q::new(1, 2);
    (0..n).map(|k| SVec::from_pairs([(k, Qi::real(half)), (k + n, Qi::new(Q::zero(), -half))])).collect()
}

/// Canonical metric on the complexification of a compact simple algebra.
#[derive(Clone, Debug)]
pub struct CanonicalGroup {
    pub cartan: CartanType,
    /// `𝔤 = 𝔲 ⊗ ℂ` over the compact basis.
    pub metric: ComplexGroupMetric,
    pub real: LieAlgebra<Q>,
    pub model: InfinitesimalModel,
}

impl CanonicalGroup {
    /// Complex dimension.
    pub fn n(&self) -> usize {
        self.metric.algebra.dim()
    }
}

/// `g|𝔲×𝔲 = −B`, `g(𝔲, J𝔲) = 0`, `g|J𝔲×J𝔲 = B`, `B` the Killing form of `𝔤_ℝ`.
pub fn canonical_metric(ct: CartanType) -> CanonicalGroup {
    let rs = build_root_system(ct);
    let ch = chevalley_constants(&rs);
    let compact = compact_real_form(&rs, &ch);
    let alg = complexify(&compact.algebra);
    let n = alg.dim();
    let (real, j) = realify(&alg);
    let b = real.killing_form().matrix.clone();
    let mut g = vec![vec![Q::zero(); 2 * n]; 2 * n];
    for a in 0..n {
        for c in 0..n {
            g[a][c] = -b[a][c];
            g[a + n][c + n] = b[a + n][c + n];
        }
    }
    let gram = (0..n).map(|a| (0..n).map(|c| Qi::real(g[a][c])).collect()).collect();
    let model = InfinitesimalModel::group(format!("canonical {ct}"), &real, j, g)
        .and_then(|m| m.with_frame(holomorphic_frame(n)))
        .expect("canonical metric is Hermitian");
    CanonicalGroup { cartan: ct, metric: ComplexGroupMetric { algebra: alg, gram }, real, model }
}

/// First failure of `Λᵇ(x) = 2ad x` (`x ∈ 𝔲`), `Λᵇ(Jx) = 0`, and
/// `Tᵇ = 3[·,·]`, `[·,·]`, `−[·,·]` on `𝔲×𝔲`, `𝔲×J𝔲`, `J𝔲×J𝔲`.
pub fn canonical_formula_witness(c: &CanonicalGroup) -> Option<String> {
    let n = c.n();
    let model = &c.model;
    let b = bismut_connection(model);
    for a in 0..2 * n {
        let expect = if a < n { c.real.ad_basis(a).scale(Q::from_integer(2)) } else { Endo::zero(2 * n) };
        if b.ops[a] != expect {
            return Some(format!("Λᵇ({}) differs from the displayed formula", model.labels()[a]));
        }
    }
    let t = torsion(model, &b);
    for a in 0..2 * n {
        for d in 0..2 * n {
            let k = match (a < n, d < n) {
                (true, true) => 3,
                (false, false) => -1,
                _ => 1,
            };
            if *t.basis(a, d) != model.bracket_m(a, d).scale(Q::from_integer(k)) {
                return Some(format!("Tᵇ({}, {}) ≠ {k}[·,·]", model.labels()[a], model.labels()[d]));
            }
        }
    }
    None
}

/// `τ_{ijk} = −c_{ijk}` with `c_{ijk} = h([f_i, f_j], f_k)` for the Chern torsion
/// in the orthogonal frame; first failing index.
pub fn chern_torsion_structure_witness(model: &InfinitesimalModel) -> Option<(usize, usize, usize)> {
    let frame = ComplexFrame::new(model);
    let chern = chern_connection(model);
    let tau = frame.torsion_components(model, &torsion(model, &chern));
    let m = frame.len();
    for i in 0..m {
        for j in 0..m {
            let br = bracket_c(model, &frame.vectors[i], &frame.vectors[j]);
            for k in 0..m {
                let c = crate::hermgeo::frame::herm(model, &br, &frame.vectors[k]);
                if tau[(i * m + j) * m + k] != -c {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug, Serialize)]
pub struct Btp2Result {
    pub chern_parallel_frame: bool,
    /// First `(i, j)` with `Σ_r |T^j_{ir}|² ≠ Σ_r |T^i_{jr}|²`.
    pub witness: Option<((usize, usize), String)>,
}

impl Btp2Result {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

pub fn btp2_identity(model: &InfinitesimalModel) -> Btp2Result {
    let frame = ComplexFrame::new(model);
    let chern = chern_connection(model);
    let tau = frame.torsion_components(model, &torsion(model, &chern));
    Btp2Result {
        chern_parallel_frame: frame.is_parallel(model, &chern),
        witness: frame.btp2_witness(&tau).map(|(ij, d)| (ij, crate::scalar::fmt_q(&d))),
    }
}

/// Relation between two BTP metrics on the same simple complex group.
#[derive(Clone, Debug, Serialize)]
pub struct BIsometry {
    /// `a₁²` with `B (Gᵗ)⁻¹ B̄ = a₁² G`.
    pub a1_sq: String,
    pub a1p_sq: String,
    /// `r² = a₁′²/a₁²`; `f = r · G⁻ᵗHᵗ`.
    pub ratio_sq: String,
    /// `G⁻ᵗHᵗ`, columns are images of basis vectors.
    pub f_unscaled: Vec<Vec<String>>,
    /// `B(fX, fY) − B(X, Y)` vanishes identically.
    pub residual_zero: bool,
    pub residual_max: String,
}

fn proportionality(b: &Mat<Qi>, g: &Mat<Qi>) -> Result<Q, GroupError> {
    let gt_inv = inverse(&transpose(g)).ok_or(GroupError::Gram)?;
    let bbar: Mat<Qi> = b.iter().map(|r| r.iter().map(|x| x.conj()).collect()).collect();
    let lhs = mat_mul(&mat_mul(b, &gt_inv), &bbar);
    let c = lhs[0][0] / g[0][0];
    let ok = c.is_real()
        && c.re > Q::zero()
        && lhs.iter().zip(g).all(|(l, r)| l.iter().zip(r).all(|(x, y)| *x == c * *y));
    if ok {
        Ok(c.re)
    } else {
        Err(GroupError::NotProportional)
    }
}

pub fn b_isometry_relation(g: &ComplexGroupMetric, h: &ComplexGroupMetric) -> Result<BIsometry, GroupError> {
    let n = g.algebra.dim();
    if h.algebra.dim() != n || h.algebra.structure_constants().ne(g.algebra.structure_constants()) {
        return Err(GroupError::Dimension("metrics live on different algebras".into()));
    }
    let split = orthogonal_ideal_split(&g.algebra, &g.gram)?;
    if !(split.center.is_empty() && split.ideals.len() == 1 && split.ideals[0].simple) {
        return Err(GroupError::NotSimple);
    }
    let b = g.killing();
    let c = proportionality(&b, &g.gram)?;
    let cp = proportionality(&b, &h.gram)?;
    let r2 = cp / c;
    let k = mat_mul(&inverse(&transpose(&g.gram)).ok_or(GroupError::Gram)?, &transpose(&h.gram));
    let kbk = mat_mul(&mat_mul(&transpose(&k), &b), &k);
    let mut max = Q::zero();
    for (row, brow) in kbk.iter().zip(&b) {
        for (x, y) in row.iter().zip(brow) {
            let d = (*x * Qi::real(r2) - *y).abs_sq();
            if d > max {
                max = d;
            }
        }
    }
    let fmt = crate::scalar::fmt_q;
    Ok(BIsometry {
        a1_sq: fmt(&c),
        a1p_sq: fmt(&cp),
        ratio_sq: fmt(&r2),
        f_unscaled: k.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
        residual_zero: max.is_zero(),
        residual_max: fmt(&max),
    })
}

/// `exp(ad x)` for nilpotent `ad x`, as a dense matrix with image columns.
pub fn exp_ad_nilpotent(alg: &LieAlgebra<Qi>, x: &SVec<Qi>) -> Option<Mat<Qi>> {
    let n = alg.dim();
    let ad = alg.ad(x);
    let mut term = Endo::identity(n);
    let mut total = Endo::identity(n);
    for k in 1..=n + 1 {
        term = ad.compose(&term).scale(Qi::real(Q::new(1, k as i128)));
        if term.is_zero() {
            return Some(total.to_dense());
        }
        total = total.add(&term);
    }
    None
}

/// Random inner automorphism `exp(t ad e_α)·exp(s ad e_{−α})` over the root
/// vectors of the compact basis of a canonical group.
pub fn random_inner_automorphism(c: &CanonicalGroup, rng: &mut ChaCha8Rng) -> Mat<Qi> {
    let rs = build_root_system(c.cartan);
    let ch = chevalley_constants(&rs);
    let compact = compact_real_form(&rs, &ch);
    let n = c.n();
    let mut total = mat_identity::<Qi>(n);
    for _ in 0..2 {
        let id = rng.gen_range(0..rs.len());
        let t = Q::new(rng.gen_range(-6..=6), rng.gen_range(1..=4));
        let x = compact.chevalley_vector(&rs, rs.rank() + id).scale(Qi::real(t));
        let e = exp_ad_nilpotent(&c.metric.algebra, &x).expect("root vectors are ad-nilpotent");
        total = mat_mul(&e, &total);
    }
    total
}

/// `f([x, y]) = [f x, f y]` on basis pairs.
pub fn is_lie_automorphism(alg: &LieAlgebra<Qi>, f: &Mat<Qi>) -> bool {
    let n = alg.dim();
    let col = |j: usize| SVec::from_pairs((0..n).map(|i| (i, f[i][j])));
    let apply = |v: &SVec<Qi>| {
        let mut out = vec![Qi::zero(); n];
        for (j, c) in v.iter() {
            for (i, row) in f.iter().enumerate() {
                out[i] += row[j] * c;
            }
        }
        SVec::from_dense(&out)
    };
    (0..n).all(|a| (a + 1..n).all(|b| apply(alg.bracket_basis(a, b)) == alg.bracket(&col(a), &col(b))))
}

/// Outcome of pulling a canonical metric back by a `B`-isometry that is not
/// inner.
#[derive(Clone, Debug, Serialize)]
pub struct AutomorphismExperiment {
    pub space: String,
    pub map: String,
    pub preserves_killing: bool,
    pub is_lie_automorphism: bool,
    pub pulled_back_btp: bool,
    pub relation: Option<BIsometry>,
}

/// Pulls the canonical metric back by a `B`-reflection `x ↦ x − 2B(x,v)/B(v,v) v`
/// with random rational `v ∈ 𝔲`, and by complex conjugation-free inner maps;
/// reports whether the result is BTP and whether the map is an automorphism.
pub fn automorphism_experiment(ct: CartanType, seed: u64) -> AutomorphismExperiment {
    let c = canonical_metric(ct);
    let n = c.n();
    let b = c.metric.killing();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v: Vec<Qi> = (0..n).map(|_| Qi::real(Q::new(rng.gen_range(-3..=3), rng.gen_range(1..=3)))).collect();
    let v = if v.iter().all(Zero::is_zero) { (0..n).map(|i| if i == 0 { Qi::one() } else { Qi::zero() }).collect() } else { v };
    let bv: Vec<Qi> = (0..n).map(|i| (0..n).map(|j| b[i][j] * v[j]).sum()).collect();
    let bvv: Qi = bv.iter().zip(&v).map(|(x, y)| *x * *y).sum();
    let two = Qi::real(Q::from_integer(2));
    let f: Mat<Qi> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Qi::one() } else { Qi::zero() } - two * v[i] * bv[j] / bvv).collect())
        .collect();
    let fbf = mat_mul(&mat_mul(&transpose(&f), &b), &f);
    let h = c.metric.pullback(&f).expect("reflections are invertible");
    let model = h.model(format!("reflected canonical {ct}")).expect("pullback is Hermitian");
    let bis = bismut_connection(&model);
    let btp = torsion_derivative_witness(&bis, &torsion(&model, &bis)).is_none();
    AutomorphismExperiment {
        space: format!("canonical {ct}"),
        map: "B-reflection".into(),
        preserves_killing: fbf == b,
        is_lie_automorphism: is_lie_automorphism(&c.metric.algebra, &f),
        pulled_back_btp: btp,
        relation: if btp { b_isometry_relation(&c.metric, &h).ok() } else { None },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermgeo::check_conditions;
    use crate::liealg::sl2;
    use crate::scalar::q;

    fn ct(s: &str) -> CartanType {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_a1_formulas_and_flags() {
        let c = canonical_metric(ct("A1"));
        assert_eq!(c.model.dim(), 6);
        assert_eq!(canonical_formula_witness(&c), None);
        assert_eq!(chern_torsion_structure_witness(&c.model), None);
        let r = check_conditions(&c.model);
        assert!(r.btp.holds && r.chern_flat.holds && r.bas.as_ref().unwrap().holds);
        assert!(!r.kahler.holds);
        assert!(btp2_identity(&c.model).holds());
        assert!(btp2_identity(&c.model).chern_parallel_frame);
    }

    #[test]
    fn canonical_metric_matches_gram_route() {
        let c = canonical_metric(ct("A2"));
        let b = c.metric.algebra.killing_form().matrix.clone();
        let gram = b.iter().map(|r| r.iter().map(|x| *x * Qi::real(q(-2))).collect()).collect();
        let alt = ComplexGroupMetric::new(c.metric.algebra.clone(), gram).unwrap();
        assert_eq!(alt.real_metric(), *c.model.metric());
    }

    #[test]
    fn scaled_root_plane_breaks_btp2() {
        let c = canonical_metric(ct("A1"));
        let mut gram = c.metric.gram.clone();
        let n = gram.len();
        for i in 0..n {
            gram[1][i] *= Qi::real(q(3));
            gram[i][1] *= Qi::real(q(3));
        }
        let h = ComplexGroupMetric::new(c.metric.algebra.clone(), gram).unwrap();
        let m = h.model("scaled").unwrap();
        let r = check_conditions(&m);
        assert!(!r.btp.holds);
        assert!(!btp2_identity(&m).holds());
    }

    #[test]
    fn abelian_btp2_trivial() {
        let alg = complexify(&LieAlgebra::abelian(2));
        let g = ComplexGroupMetric::new(alg, mat_identity(2)).unwrap();
        assert!(btp2_identity(&g.model("C2").unwrap()).holds());
    }

    #[test]
    fn b_isometry_scaling_and_identity() {
        let c = canonical_metric(ct("A1"));
        let same = b_isometry_relation(&c.metric, &c.metric).unwrap();
        assert!(same.residual_zero);
        assert_eq!(same.ratio_sq, "1");
        let two = b_isometry_relation(&c.metric, &c.metric.scaled(q(2))).unwrap();
        assert!(two.residual_zero);
        assert_eq!(two.ratio_sq, "1/4");
    }

    #[test]
    fn b_isometry_inner_automorphisms() {
        let c = canonical_metric(ct("A1"));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..3 {
            let a = random_inner_automorphism(&c, &mut rng);
            assert!(is_lie_automorphism(&c.metric.algebra, &a));
            let h = c.metric.pullback(&a).unwrap();
            let rel = b_isometry_relation(&c.metric, &h).unwrap();
            assert!(rel.residual_zero);
            assert_eq!(rel.ratio_sq, "1");
        }
    }

    #[test]
    fn b_isometry_rejects_non_simple() {
        let alg = complexify(&LieAlgebra::abelian(2));
        let g = ComplexGroupMetric::new(alg, mat_identity(2)).unwrap();
        assert_eq!(b_isometry_relation(&g, &g).unwrap_err(), GroupError::NotSimple);
    }

    #[test]
    fn sl2_standard_basis_exp() {
        let alg = sl2();
        let e = SVec::unit(1);
        let m = exp_ad_nilpotent(&alg, &e).unwrap();
        assert!(is_lie_automorphism(&alg, &m));
    }

    #[test]
    fn reflection_experiment_runs() {
        let r = automorphism_experiment(ct("A1"), 1);
        assert!(r.preserves_killing);
    }
}
