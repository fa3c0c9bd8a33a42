//! Invariant Hermitian geometry of reductive homogeneous models.
//!
//! A model is the data `(𝔥, 𝔪, [·,·], J, g)` at the origin. Invariant
//! connections are Nomizu operators `Λ: 𝔪 → End(𝔪)`; for them
//! `T(x,y) = Λ(x)y − Λ(y)x − [x,y]_𝔪` and
//! `R(x,y) = [Λ(x),Λ(y)] − Λ([x,y]_𝔪) − λ([x,y]_𝔥)`,
//! and the covariant derivative of an invariant tensor is the derivation
//! action of `Λ(x)`. Groups are the case `𝔥 = 0`.

pub mod frame;
pub mod report;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::liealg::{AlgebraError, LieAlgebra};
use crate::linalg::{combine, inverse, is_positive_definite, Acc, Endo, Mat, SVec};
use crate::scalar::{q, Q, Qi};

pub use frame::{ComplexFrame, FloatChecks};
pub use report::{check_conditions, CheckReport, Verdict, Witness};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("J² ≠ −1")]
    NotComplexStructure,
    #[error("metric is not symmetric positive definite")]
    MetricNotPositive,
    #[error("J is not g-orthogonal")]
    NotCompatible,
    #[error("isotropy element {0} does not preserve 𝔪")]
    NotReductive(String),
    #[error("isotropy is not a subalgebra")]
    NotSubalgebra,
    #[error("isotropy element {0} is not g-skew")]
    IsotropyNotSkew(String),
    #[error("isotropy element {0} does not commute with J")]
    IsotropyNotComplex(String),
    #[error("complex structure is not integrable at ({0}, {1})")]
    NotIntegrable(String, String),
    #[error("frame: {0}")]
    Frame(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Reductive model with complex structure and metric on `𝔪`.
#[derive(Clone, Debug)]
pub struct InfinitesimalModel {
    name: String,
    labels: Vec<String>,
    h_labels: Vec<String>,
    /// `[x_i, x_j]_𝔪` indexed `i * n + j`.
    bracket_m: Vec<SVec<Q>>,
    /// `[x_i, x_j]_𝔥` over the isotropy basis.
    bracket_h: Vec<SVec<Q>>,
    /// `λ(h_a)` restricted to `𝔪`.
    isotropy: Vec<Endo<Q>>,
    j: Endo<Q>,
    g: Mat<Q>,
    g_inv: Mat<Q>,
    frame: Option<Vec<SVec<crate::scalar::Qi>>>,
}

/// Invariant connection at the origin: `ops[a] = Λ(x_a)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Nomizu {
    pub ops: Vec<Endo<Q>>,
}

impl Nomizu {
    pub fn at(&self, x: &SVec<Q>) -> Endo<Q> {
        let n = self.ops.len();
        combine(&self.ops, x, n)
    }

    pub fn apply(&self, a: usize, v: &SVec<Q>) -> SVec<Q> {
        self.ops[a].apply(v)
    }

    /// `Λ(x)y` on `𝔪^ℂ`.
    pub fn apply_complex(&self, x: &SVec<Qi>, y: &SVec<Qi>) -> SVec<Qi> {
        let n = self.ops.len();
        let mut acc = Acc::new(n);
        for (a, c) in x.iter() {
            for (j, yj) in y.iter() {
                acc.add(c * yj, &self.ops[a].col(j).map(Qi::real));
            }
        }
        acc.finish()
    }
}

/// Skew bilinear map `𝔪 × 𝔪 → 𝔪`, entries `(i * n + j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Torsion {
    n: usize,
    table: Vec<SVec<Q>>,
}

impl Torsion {
    pub fn basis(&self, i: usize, j: usize) -> &SVec<Q> {
        &self.table[i * self.n + j]
    }

    pub fn eval(&self, x: &SVec<Q>, y: &SVec<Q>) -> SVec<Q> {
        let mut acc = Acc::new(self.n);
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                acc.add(a * b, &self.table[i * self.n + j]);
            }
        }
        acc.finish()
    }

    pub fn eval_complex(&self, x: &SVec<Qi>, y: &SVec<Qi>) -> SVec<Qi> {
        let mut acc = Acc::new(self.n);
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                acc.add(a * b, &self.table[i * self.n + j].map(Qi::real));
            }
        }
        acc.finish()
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(SVec::is_zero)
    }
}

/// Curvature `R(x_i, x_j)` for all ordered pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct Curvature {
    n: usize,
    table: Vec<Endo<Q>>,
}

impl Curvature {
    pub fn basis(&self, i: usize, j: usize) -> &Endo<Q> {
        &self.table[i * self.n + j]
    }

    pub fn eval(&self, x: &SVec<Q>, y: &SVec<Q>) -> Endo<Q> {
        let mut coeffs = Vec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                coeffs.push((i * self.n + j, a * b));
            }
        }
        combine(&self.table, &SVec::from_pairs(coeffs), self.n)
    }

    /// `R(x, y)z` on `𝔪^ℂ`.
    pub fn eval_complex(&self, x: &SVec<Qi>, y: &SVec<Qi>, z: &SVec<Qi>) -> SVec<Qi> {
        let mut acc = Acc::new(self.n);
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let op = &self.table[i * self.n + j];
                for (k, c) in z.iter() {
                    acc.add(a * b * c, &op.col(k).map(Qi::real));
                }
            }
        }
        acc.finish()
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(Endo::is_zero)
    }
}

/// Dense `n³` array of an invariant 3-tensor.
#[derive(Clone, Debug, PartialEq)]
pub struct Form3 {
    n: usize,
    v: Vec<Q>,
}

impl Form3 {
    pub fn get(&self, i: usize, j: usize, k: usize) -> Q {
        self.v[(i * self.n + j) * self.n + k]
    }

    pub fn eval(&self, x: &SVec<Q>, y: &SVec<Q>, z: &SVec<Q>) -> Q {
        let mut s = Q::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                for (k, c) in z.iter() {
                    s += a * b * c * self.get(i, j, k);
                }
            }
        }
        s
    }

    pub fn first_nonzero(&self) -> Option<((usize, usize, usize), Q)> {
        let n = self.n;
        self.v
            .iter()
            .position(|x| !x.is_zero())
            .map(|p| ((p / (n * n), (p / n) % n, p % n), self.v[p]))
    }
}

impl InfinitesimalModel {
    /// Model on `alg = 𝔥 ⊕ 𝔪` given by index sets; `j` and `g` act on `𝔪` in
    /// the order of `m_idx`.
    pub fn from_algebra(
        name: impl Into<String>,
        alg: &LieAlgebra<Q>,
        h_idx: &[usize],
        m_idx: &[usize],
        j: Endo<Q>,
        g: Mat<Q>,
    ) -> Result<Self, ModelError> {
        let d = alg.dim();
        if h_idx.len() + m_idx.len() != d {
            return Err(ModelError::Dimension(format!(
                "{} + {} basis vectors for an algebra of dimension {d}",
                h_idx.len(),
                m_idx.len()
            )));
        }
        let mut slot = vec![None; d];
        for (k, &i) in h_idx.iter().enumerate() {
            slot[i] = Some((true, k));
        }
        for (k, &i) in m_idx.iter().enumerate() {
            if slot[i].is_some() {
                return Err(ModelError::Dimension(format!("index {i} used twice")));
            }
            slot[i] = Some((false, k));
        }
        if slot.iter().any(Option::is_none) {
            return Err(ModelError::Dimension("index sets do not cover the basis".into()));
        }
        let split = |v: &SVec<Q>| {
            let mut h = Vec::new();
            let mut m = Vec::new();
            for (i, x) in v.iter() {
                match slot[i] {
                    Some((true, k)) => h.push((k, x)),
                    Some((false, k)) => m.push((k, x)),
                    None => unreachable!(),
                }
            }
            (SVec::from_pairs(h), SVec::from_pairs(m))
        };
        let n = m_idx.len();
        let labels: Vec<String> = m_idx.iter().map(|&i| alg.labels()[i].clone()).collect();
        let h_labels: Vec<String> = h_idx.iter().map(|&i| alg.labels()[i].clone()).collect();
        for &a in h_idx {
            for &b in h_idx {
                if !split(alg.bracket_basis(a, b)).1.is_zero() {
                    return Err(ModelError::NotSubalgebra);
                }
            }
        }
        let mut isotropy = Vec::with_capacity(h_idx.len());
        for &a in h_idx {
            let mut cols = Vec::with_capacity(n);
            for &b in m_idx {
                let (hpart, mpart) = split(alg.bracket_basis(a, b));
                if !hpart.is_zero() {
                    return Err(ModelError::NotReductive(alg.labels()[a].clone()));
                }
                cols.push(mpart);
            }
            isotropy.push(Endo::from_cols(cols));
        }
        let mut bracket_m = Vec::with_capacity(n * n);
        let mut bracket_h = Vec::with_capacity(n * n);
        for &a in m_idx {
            for &b in m_idx {
                let (hpart, mpart) = split(alg.bracket_basis(a, b));
                bracket_h.push(hpart);
                bracket_m.push(mpart);
            }
        }
        Self::from_parts(name.into(), labels, h_labels, bracket_m, bracket_h, isotropy, j, g)
    }

    /// Left-invariant structure on a Lie group.
    pub fn group(name: impl Into<String>, alg: &LieAlgebra<Q>, j: Endo<Q>, g: Mat<Q>) -> Result<Self, ModelError> {
        let all: Vec<usize> = (0..alg.dim()).collect();
        Self::from_algebra(name, alg, &[], &all, j, g)
    }

    #[allow(clippy::too_many_arguments)]
    fn from_parts(
        name: String,
        labels: Vec<String>,
        h_labels: Vec<String>,
        bracket_m: Vec<SVec<Q>>,
        bracket_h: Vec<SVec<Q>>,
        isotropy: Vec<Endo<Q>>,
        j: Endo<Q>,
        g: Mat<Q>,
    ) -> Result<Self, ModelError> {
        let n = labels.len();
        if j.dim() != n || g.len() != n || g.iter().any(|r| r.len() != n) {
            return Err(ModelError::Dimension("J and g must act on 𝔪".into()));
        }
        if !n.is_multiple_of(2) {
            return Err(ModelError::Dimension(format!("odd real dimension {n}")));
        }
        if j.compose(&j) != Endo::identity(n).scale(-Q::one()) {
            return Err(ModelError::NotComplexStructure);
        }
        let symmetric = (0..n).all(|a| (0..a).all(|b| g[a][b] == g[b][a]));
        if !symmetric || !is_positive_definite(&g) {
            return Err(ModelError::MetricNotPositive);
        }
        let g_inv = inverse(&g).ok_or(ModelError::MetricNotPositive)?;
        let model = InfinitesimalModel {
            name,
            labels,
            h_labels,
            bracket_m,
            bracket_h,
            isotropy,
            j,
            g,
            g_inv,
            frame: None,
        };
        for a in 0..n {
            for b in 0..n {
                if model.g_eval(model.j.col(a), model.j.col(b)) != model.g[a][b] {
                    return Err(ModelError::NotCompatible);
                }
            }
        }
        for (k, op) in model.isotropy.iter().enumerate() {
            if !model.is_skew(op) {
                return Err(ModelError::IsotropyNotSkew(model.h_labels[k].clone()));
            }
            if op.compose(&model.j) != model.j.compose(op) {
                return Err(ModelError::IsotropyNotComplex(model.h_labels[k].clone()));
            }
        }
        if let Some((a, b)) = model.nijenhuis_witness() {
            return Err(ModelError::NotIntegrable(model.labels[a].clone(), model.labels[b].clone()));
        }
        Ok(model)
    }

    /// Attaches a preferred `(1,0)` frame; it is validated and then
    /// Gram-Schmidt orthogonalized in the given order.
    pub fn with_frame(mut self, frame: Vec<SVec<crate::scalar::Qi>>) -> Result<Self, ModelError> {
        frame::validate_frame(&self, &frame)?;
        self.frame = Some(frame);
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn isotropy_dim(&self) -> usize {
        self.h_labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn j(&self) -> &Endo<Q> {
        &self.j
    }

    pub fn metric(&self) -> &Mat<Q> {
        &self.g
    }

    pub fn preferred_frame(&self) -> Option<&[SVec<crate::scalar::Qi>]> {
        self.frame.as_deref()
    }

    pub fn isotropy(&self) -> &[Endo<Q>] {
        &self.isotropy
    }

    /// `[x_i, x_j]_𝔪`.
    pub fn bracket_m(&self, i: usize, j: usize) -> &SVec<Q> {
        &self.bracket_m[i * self.dim() + j]
    }

    /// `[x_i, x_j]_𝔥` over the isotropy basis.
    pub fn bracket_h(&self, i: usize, j: usize) -> &SVec<Q> {
        &self.bracket_h[i * self.dim() + j]
    }

    pub fn bracket_m_vec(&self, x: &SVec<Q>, y: &SVec<Q>) -> SVec<Q> {
        let mut acc = Acc::new(self.dim());
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                acc.add(a * b, self.bracket_m(i, j));
            }
        }
        acc.finish()
    }

    pub fn g_eval(&self, x: &SVec<Q>, y: &SVec<Q>) -> Q {
        let mut s = Q::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let gij = self.g[i][j];
                if !gij.is_zero() {
                    s += a * gij * b;
                }
            }
        }
        s
    }

    /// `ω(x, y) = g(Jx, y)`.
    pub fn omega(&self, x: &SVec<Q>, y: &SVec<Q>) -> Q {
        self.g_eval(&self.j.apply(x), y)
    }

    /// Vector `v` with `g(v, ·) = covector`.
    pub fn raise(&self, covector: &[Q]) -> SVec<Q> {
        let n = self.dim();
        let mut out = vec![Q::zero(); n];
        for (k, c) in covector.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for i in 0..n {
                let x = self.g_inv[i][k];
                if !x.is_zero() {
                    out[i] += x * *c;
                }
            }
        }
        SVec::from_dense(&out)
    }

    fn is_skew(&self, op: &Endo<Q>) -> bool {
        let n = self.dim();
        (0..n).all(|a| {
            (a..n).all(|b| {
                (self.g_eval(op.col(a), &SVec::unit(b)) + self.g_eval(&SVec::unit(a), op.col(b))).is_zero()
            })
        })
    }

    fn nijenhuis_witness(&self) -> Option<(usize, usize)> {
        let n = self.dim();
        for a in 0..n {
            for b in a + 1..n {
                let (x, y) = (SVec::unit(a), SVec::unit(b));
                let (jx, jy) = (self.j.col(a).clone(), self.j.col(b).clone());
                let nij = self
                    .bracket_m_vec(&jx, &jy)
                    .sub(self.bracket_m(a, b))
                    .sub(&self.j.apply(&self.bracket_m_vec(&jx, &y)))
                    .sub(&self.j.apply(&self.bracket_m_vec(&x, &jy)));
                if !nij.is_zero() {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Same data with `g` replaced.
    pub fn with_metric(&self, g: Mat<Q>) -> Result<Self, ModelError> {
        let mut m = Self::from_parts(
            self.name.clone(),
            self.labels.clone(),
            self.h_labels.clone(),
            self.bracket_m.clone(),
            self.bracket_h.clone(),
            self.isotropy.clone(),
            self.j.clone(),
            g,
        )?;
        if let Some(f) = &self.frame {
            m = m.with_frame(f.clone())?;
        }
        Ok(m)
    }

    /// Real-valued `g([x_c, x_a]_𝔪, x_b)` for all `c, a, b`.
    fn bracket_pairing(&self) -> Form3 {
        let n = self.dim();
        let mut v = vec![Q::zero(); n * n * n];
        for c in 0..n {
            for a in 0..n {
                let br = self.bracket_m(c, a);
                if br.is_zero() {
                    continue;
                }
                for b in 0..n {
                    v[(c * n + a) * n + b] = self.g_eval(br, &SVec::unit(b));
                }
            }
        }
        Form3 { n, v }
    }

    /// Nomizu operator from covectors `cov(a, b)_c = g(Λ(x_a)x_b, x_c)`.
    fn nomizu_from_covectors(&self, cov: impl Fn(usize, usize) -> Vec<Q>) -> Nomizu {
        let n = self.dim();
        let ops = (0..n)
            .map(|a| Endo::from_cols((0..n).map(|b| self.raise(&cov(a, b))).collect()))
            .collect();
        Nomizu { ops }
    }
}

/// Levi-Civita connection: `Λ(x)y = ½([x,y]_𝔪 + U(x,y))`,
/// `g(U(x,y),z) = g([z,x]_𝔪,y) + g([z,y]_𝔪,x)`.
pub fn levi_civita(model: &InfinitesimalModel) -> Nomizu {
    let n = model.dim();
    let bp = model.bracket_pairing();
    let half = Q::new(1, 2);
    model.nomizu_from_covectors(|a, b| {
        (0..n)
            .map(|c| half * (bp.get(a, b, c) + bp.get(c, a, b) + bp.get(c, b, a)))
            .collect()
    })
}

/// `dω(x,y,z) = −ω([x,y],z) + ω([x,z],y) − ω([y,z],x)` with brackets projected to `𝔪`.
pub fn d_omega(model: &InfinitesimalModel) -> Form3 {
    let n = model.dim();
    // ω(x_p, x_q) as a dense matrix.
    let w: Mat<Q> = (0..n)
        .map(|p| (0..n).map(|qq| model.omega(&SVec::unit(p), &SVec::unit(qq))).collect())
        .collect();
    let om = |v: &SVec<Q>, k: usize| v.iter().fold(Q::zero(), |s, (p, x)| s + x * w[p][k]);
    let mut v = vec![Q::zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                v[(i * n + j) * n + k] =
                    -om(model.bracket_m(i, j), k) + om(model.bracket_m(i, k), j) - om(model.bracket_m(j, k), i);
            }
        }
    }
    Form3 { n, v }
}

/// Gauduchon connection
/// `g(ᵗ∇_x y, z) = g(∇^LC_x y, z) − (t−1)/4·dω(Jx,Jy,Jz) − (t+1)/4·dω(Jx,y,z)`.
pub fn gauduchon_connection(model: &InfinitesimalModel, t: Q) -> Nomizu {
    let n = model.dim();
    let lc = levi_civita(model);
    let dw = d_omega(model);
    let jc = |a: usize| model.j.col(a).clone();
    let c1 = (t - Q::one()) / q(4);
    let c2 = (t + Q::one()) / q(4);
    model.nomizu_from_covectors(|a, b| {
        let ja = jc(a);
        let jb = jc(b);
        let lab = lc.apply(a, &SVec::unit(b));
        (0..n)
            .map(|c| {
                let z = SVec::unit(c);
                let mut s = model.g_eval(&lab, &z);
                if !c1.is_zero() {
                    s -= c1 * dw.eval(&ja, &jb, &jc(c));
                }
                if !c2.is_zero() {
                    s -= c2 * dw.eval(&ja, &SVec::unit(b), &z);
                }
                s
            })
            .collect()
    })
}

pub fn chern_connection(model: &InfinitesimalModel) -> Nomizu {
    gauduchon_connection(model, Q::one())
}

pub fn bismut_connection(model: &InfinitesimalModel) -> Nomizu {
    gauduchon_connection(model, -Q::one())
}

pub fn torsion(model: &InfinitesimalModel, conn: &Nomizu) -> Torsion {
    let n = model.dim();
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let t = conn.ops[a].col(b).sub(conn.ops[b].col(a)).sub(model.bracket_m(a, b));
            table.push(t);
        }
    }
    Torsion { n, table }
}

pub fn curvature(model: &InfinitesimalModel, conn: &Nomizu) -> Curvature {
    let n = model.dim();
    let mut table = vec![Endo::zero(n); n * n];
    for a in 0..n {
        for b in a + 1..n {
            let mut r = conn.ops[a].commutator(&conn.ops[b]);
            r = r.sub(&conn.at(model.bracket_m(a, b)));
            let bh = model.bracket_h(a, b);
            if !bh.is_zero() {
                r = r.sub(&combine(&model.isotropy, bh, n));
            }
            table[b * n + a] = r.scale(-Q::one());
            table[a * n + b] = r;
        }
    }
    Curvature { n, table }
}

/// First `(a, i, j)` with `(∇_{x_a} T)(x_i, x_j) ≠ 0`.
pub fn torsion_derivative_witness(conn: &Nomizu, t: &Torsion) -> Option<(usize, usize, usize)> {
    let n = t.n;
    for a in 0..n {
        let op = &conn.ops[a];
        for i in 0..n {
            for j in i + 1..n {
                let v = op
                    .apply(t.basis(i, j))
                    .sub(&t.eval(op.col(i), &SVec::unit(j)))
                    .sub(&t.eval(&SVec::unit(i), op.col(j)));
                if !v.is_zero() {
                    return Some((a, i, j));
                }
            }
        }
    }
    None
}

/// First `(a, i, j)` with `(∇_{x_a} R)(x_i, x_j) ≠ 0`.
pub fn curvature_derivative_witness(conn: &Nomizu, r: &Curvature) -> Option<(usize, usize, usize)> {
    let n = r.n;
    for a in 0..n {
        let op = &conn.ops[a];
        for i in 0..n {
            for j in i + 1..n {
                let v = op
                    .commutator(r.basis(i, j))
                    .sub(&r.eval(op.col(i), &SVec::unit(j)))
                    .sub(&r.eval(&SVec::unit(i), op.col(j)));
                if !v.is_zero() {
                    return Some((a, i, j));
                }
            }
        }
    }
    None
}

/// `H(x,y,z) = g(Tᵇ(x,y), z)`.
pub fn torsion_form(model: &InfinitesimalModel, t: &Torsion) -> Form3 {
    let n = model.dim();
    let mut v = vec![Q::zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            let tij = t.basis(i, j);
            if tij.is_zero() {
                continue;
            }
            for k in 0..n {
                v[(i * n + j) * n + k] = model.g_eval(tij, &SVec::unit(k));
            }
        }
    }
    Form3 { n, v }
}

/// First triple where `g(T(x,y),z)` fails to be totally skew.
pub fn skew_torsion_witness(model: &InfinitesimalModel, t: &Torsion) -> Option<(usize, usize, usize)> {
    let h = torsion_form(model, t);
    let n = model.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if h.get(i, j, k) != -h.get(i, k, j) {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// First increasing quadruple with `dH ≠ 0`, using
/// `dH(x₀..x₃) = Σ_{p<q} (−1)^{p+q} H([x_p,x_q]_𝔪, …)`.
pub fn d_form3_witness(model: &InfinitesimalModel, h: &Form3) -> Option<([usize; 4], Q)> {
    let n = model.dim();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let x = [a, b, c, d];
                    let mut s = Q::zero();
                    for p in 0..4 {
                        for qq in p + 1..4 {
                            let rest: Vec<usize> = (0..4).filter(|&k| k != p && k != qq).map(|k| x[k]).collect();
                            let br = model.bracket_m(x[p], x[qq]);
                            let mut val = Q::zero();
                            for (i, cf) in br.iter() {
                                val += cf * h.get(i, rest[0], rest[1]);
                            }
                            if (p + qq) % 2 == 1 {
                                val = -val;
                            }
                            s += val;
                        }
                    }
                    if !s.is_zero() {
                        return Some((x, s));
                    }
                }
            }
        }
    }
    None
}

/// First triple violating `g([x,y]_𝔪, z) + g(y, [x,z]_𝔪) = 0`.
pub fn naturally_reductive_witness(model: &InfinitesimalModel) -> Option<((usize, usize, usize), Q)> {
    let n = model.dim();
    let bp = model.bracket_pairing();
    for a in 0..n {
        for b in 0..n {
            for c in b..n {
                let v = bp.get(a, b, c) + bp.get(a, c, b);
                if !v.is_zero() {
                    return Some(((a, b, c), v));
                }
            }
        }
    }
    None
}

/// First pair where `Λ(x_a)` fails to be g-skew or to commute with `J`.
pub fn hermitian_witness(model: &InfinitesimalModel, conn: &Nomizu) -> Option<usize> {
    conn.ops
        .iter()
        .position(|op| !model.is_skew(op) || op.compose(&model.j) != model.j.compose(op))
}

#[cfg(test)]
pub(crate) mod tests_support {
    use super::*;
    use crate::liealg::{compact_real_form, so3};
    use crate::rootsys::{build_root_system, chevalley_constants};

    /// `u(2)` with `J x₁ = x₂`, `J x₃ = z` and a non-bi-invariant diagonal metric.
    pub fn u2_scaled() -> InfinitesimalModel {
        let alg = so3().direct_sum(&LieAlgebra::abelian(1));
        let j = Endo::from_dense(&[
            vec![q(0), q(-1), q(0), q(0)],
            vec![q(1), q(0), q(0), q(0)],
            vec![q(0), q(0), q(0), q(-1)],
            vec![q(0), q(0), q(1), q(0)],
        ]);
        let g = vec![
            vec![q(2), q(0), q(0), q(0)],
            vec![q(0), q(2), q(0), q(0)],
            vec![q(0), q(0), q(3), q(0)],
            vec![q(0), q(0), q(0), q(3)],
        ];
        InfinitesimalModel::group("u2", &alg, j, g).unwrap()
    }

    /// `SU(3)/T` with `g = c_k·(−B)` on the three root planes.
    pub fn flag_a2(c: &[i128; 3]) -> InfinitesimalModel {
        let rs = build_root_system("A2".parse().unwrap());
        let ch = chevalley_constants(&rs);
        let cf = compact_real_form(&rs, &ch);
        let h: Vec<usize> = (0..2).collect();
        let m: Vec<usize> = (2..8).collect();
        let b = cf.algebra.killing_form();
        let g: Mat<Q> = m
            .iter()
            .enumerate()
            .map(|(p, &i)| m.iter().map(|&k| -b.matrix[i][k] * q(c[p / 2])).collect())
            .collect();
        let mut cols = Vec::new();
        for k in 0..3 {
            cols.push(SVec::unit(2 * k + 1));
            cols.push(SVec::unit(2 * k).neg());
        }
        InfinitesimalModel::from_algebra("su3/t", &cf.algebra, &h, &m, Endo::from_cols(cols), g).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{compact_real_form, so3};
    use crate::rootsys::{build_root_system, chevalley_constants};

    /// `su(2) ⊕ ℝ` with `J x₁ = x₂`, `J x₃ = x₄` and the bi-invariant metric.
    fn u2_model() -> InfinitesimalModel {
        let alg = so3().direct_sum(&LieAlgebra::abelian(1));
        let j = Endo::from_dense(&[
            vec![q(0), q(-1), q(0), q(0)],
            vec![q(1), q(0), q(0), q(0)],
            vec![q(0), q(0), q(0), q(-1)],
            vec![q(0), q(0), q(1), q(0)],
        ]);
        InfinitesimalModel::group("u2", &alg, j, crate::linalg::mat_identity(4)).unwrap()
    }

    #[test]
    fn rejects_incompatible_data() {
        let alg = LieAlgebra::<Q>::abelian(2);
        let j = Endo::from_dense(&[vec![q(0), q(-1)], vec![q(1), q(0)]]);
        let g = vec![vec![q(1), q(0)], vec![q(0), q(2)]];
        assert_eq!(
            InfinitesimalModel::group("x", &alg, j.clone(), g).unwrap_err(),
            ModelError::NotCompatible
        );
        let bad_j = Endo::from_dense(&[vec![q(0), q(1)], vec![q(1), q(0)]]);
        assert_eq!(
            InfinitesimalModel::group("x", &alg, bad_j, crate::linalg::mat_identity(2)).unwrap_err(),
            ModelError::NotComplexStructure
        );
        let neg = vec![vec![q(-1), q(0)], vec![q(0), q(-1)]];
        assert_eq!(InfinitesimalModel::group("x", &alg, j, neg).unwrap_err(), ModelError::MetricNotPositive);
    }

    #[test]
    fn bi_invariant_levi_civita_is_half_ad() {
        let m = u2_model();
        let lc = levi_civita(&m);
        let alg = so3().direct_sum(&LieAlgebra::abelian(1));
        for a in 0..4 {
            assert_eq!(lc.ops[a], alg.ad_basis(a).scale(Q::new(1, 2)));
        }
        assert!(torsion(&m, &lc).is_zero());
    }

    #[test]
    fn bismut_vanishes_on_left_invariant_fields_of_bi_invariant_metric() {
        let m = u2_model();
        let b = bismut_connection(&m);
        assert!(b.ops.iter().all(Endo::is_zero));
        assert!(curvature(&m, &b).is_zero());
    }

    #[test]
    fn gauduchon_family_is_hermitian() {
        let m = u2_model().with_metric(vec![
            vec![q(2), q(0), q(0), q(0)],
            vec![q(0), q(2), q(0), q(0)],
            vec![q(0), q(0), q(3), q(0)],
            vec![q(0), q(0), q(0), q(3)],
        ])
        .unwrap();
        for t in [q(-1), q(0), q(1), Q::new(1, 3), q(5)] {
            let c = gauduchon_connection(&m, t);
            assert_eq!(hermitian_witness(&m, &c), None, "t = {t}");
        }
        let tb = torsion(&m, &bismut_connection(&m));
        assert_eq!(skew_torsion_witness(&m, &tb), None);
    }

    #[test]
    fn flag_killing_metric_is_naturally_reductive() {
        let rs = build_root_system("A2".parse().unwrap());
        let ch = chevalley_constants(&rs);
        let c = compact_real_form(&rs, &ch);
        let h: Vec<usize> = (0..2).collect();
        let m: Vec<usize> = (2..8).collect();
        let b = c.algebra.killing_form();
        let g: Mat<Q> = m.iter().map(|&i| m.iter().map(|&k| -b.matrix[i][k]).collect()).collect();
        let mut cols = Vec::new();
        for k in 0..3 {
            cols.push(SVec::unit(2 * k + 1));
            cols.push(SVec::unit(2 * k).neg());
        }
        let model = InfinitesimalModel::from_algebra("su3/t", &c.algebra, &h, &m, Endo::from_cols(cols), g).unwrap();
        assert_eq!(naturally_reductive_witness(&model), None);
        let bis = bismut_connection(&model);
        let t = torsion(&model, &bis);
        assert_eq!(torsion_derivative_witness(&bis, &t), None);
        assert_eq!(curvature_derivative_witness(&bis, &curvature(&model, &bis)), None);
        assert_ne!(d_omega(&model).first_nonzero(), None);
    }
}
