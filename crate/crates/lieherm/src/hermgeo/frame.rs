//! Complex frames of `𝔪 ⊗ ℂ`: an exact orthogonal `(1,0)` frame and its
//! floating-point unitary normalization.
//!
//! In an orthogonal frame `f_k` with `n_k = h(f_k, f_k)` the unitary torsion
//! components are `T^k_{ij} = τ_{ijk} / √(n_i n_j n_k)` with
//! `τ_{ijk} = h(T(f_i, f_j), f_k)`; every identity that is homogeneous in the
//! frame scale is evaluated exactly on `τ`.

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{Curvature, InfinitesimalModel, ModelError, Nomizu, Torsion};
use crate::linalg::{rank, Endo, Mat, SVec};
use crate::scalar::{q_to_f64, Field, Q, Qi};

/// Complex bilinear extension of `g`.
pub fn gc(model: &InfinitesimalModel, u: &SVec<Qi>, v: &SVec<Qi>) -> Qi {
    let g = model.metric();
    let mut s = Qi::zero();
    for (i, a) in u.iter() {
        for (j, b) in v.iter() {
            let x = g[i][j];
            if !x.is_zero() {
                s += a * b * Qi::real(x);
            }
        }
    }
    s
}

/// Hermitian product `h(u, v) = g(u, v̄)`.
pub fn herm(model: &InfinitesimalModel, u: &SVec<Qi>, v: &SVec<Qi>) -> Qi {
    gc(model, u, &v.conj())
}

fn complexify_vec(v: &SVec<Q>) -> SVec<Qi> {
    v.map(Qi::real)
}

fn apply_real(op: &Endo<Q>, v: &SVec<Qi>) -> SVec<Qi> {
    let mut out: Vec<(usize, Qi)> = Vec::new();
    for (j, c) in v.iter() {
        for (i, x) in op.col(j).iter() {
            out.push((i, c * Qi::real(x)));
        }
    }
    SVec::from_pairs(out)
}

fn j_apply(model: &InfinitesimalModel, v: &SVec<Qi>) -> SVec<Qi> {
    apply_real(model.j(), v)
}

pub(super) fn validate_frame(model: &InfinitesimalModel, frame: &[SVec<Qi>]) -> Result<(), ModelError> {
    if frame.len() * 2 != model.dim() {
        return Err(ModelError::Frame(format!("{} vectors for complex dimension {}", frame.len(), model.dim() / 2)));
    }
    for (k, f) in frame.iter().enumerate() {
        if j_apply(model, f) != f.scale(Qi::i()) {
            return Err(ModelError::Frame(format!("vector {k} is not of type (1,0)")));
        }
    }
    let m: Mat<Qi> = frame.iter().map(|f| f.to_dense(model.dim())).collect();
    if rank(&m) != frame.len() {
        return Err(ModelError::Frame("vectors are dependent".into()));
    }
    Ok(())
}

/// Exact orthogonal `(1,0)` frame.
#[derive(Clone, Debug)]
pub struct ComplexFrame {
    pub vectors: Vec<SVec<Qi>>,
    /// `n_k = h(f_k, f_k) > 0`.
    pub norms: Vec<Q>,
}

impl ComplexFrame {
    /// Gram-Schmidt on the model's preferred frame, or on `x − iJx` over
    /// the real basis.
    pub fn new(model: &InfinitesimalModel) -> Self {
        let candidates: Vec<SVec<Qi>> = match model.preferred_frame() {
            Some(f) => f.to_vec(),
            None => (0..model.dim())
                .map(|a| {
                    let x = SVec::unit(a);
                    let jx = complexify_vec(model.j().col(a));
                    x.add_scaled(-Qi::i(), &jx)
                })
                .collect(),
        };
        let mut vectors: Vec<SVec<Qi>> = Vec::new();
        let mut norms: Vec<Q> = Vec::new();
        for c in candidates {
            let mut v = c;
            for (f, nf) in vectors.iter().zip(&norms) {
                let k = herm(model, &v, f) / Qi::real(*nf);
                v = v.add_scaled(-k, f);
            }
            if v.is_zero() {
                continue;
            }
            let nv = herm(model, &v, &v);
            debug_assert!(nv.is_real());
            vectors.push(v);
            norms.push(nv.re);
            if vectors.len() * 2 == model.dim() {
                break;
            }
        }
        ComplexFrame { vectors, norms }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// `√n_k` when every norm is a rational square.
    pub fn rational_scales(&self) -> Option<Vec<Q>> {
        self.norms.iter().map(|n| n.sqrt_exact()).collect()
    }

    /// `τ_{ijk}` indexed `(i * m + j) * m + k`.
    pub fn torsion_components(&self, model: &InfinitesimalModel, t: &Torsion) -> Vec<Qi> {
        let m = self.len();
        let mut out = vec![Qi::zero(); m * m * m];
        for i in 0..m {
            for j in 0..m {
                if i == j {
                    continue;
                }
                let v = complex_torsion(t, &self.vectors[i], &self.vectors[j], model.dim());
                for k in 0..m {
                    out[(i * m + j) * m + k] = herm(model, &v, &self.vectors[k]);
                }
            }
        }
        out
    }

    /// `η(f_i) = Σ_k τ_{kik} / n_k`.
    pub fn eta(&self, tau: &[Qi]) -> Vec<Qi> {
        let m = self.len();
        (0..m)
            .map(|i| (0..m).map(|k| tau[(k * m + i) * m + k] / Qi::real(self.norms[k])).sum())
            .collect()
    }

    /// Rank of `B_{ij̄} = Σ_{r,s} T^j_{rs} conj(T^i_{rs})`.
    pub fn b_tensor_rank(&self, tau: &[Qi]) -> usize {
        let m = self.len();
        let mat: Mat<Qi> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let mut s = Qi::zero();
                        for r in 0..m {
                            for t in 0..m {
                                let a = tau[(r * m + t) * m + j];
                                let b = tau[(r * m + t) * m + i];
                                if !a.is_zero() && !b.is_zero() {
                                    s += a * b.conj() / Qi::real(self.norms[r] * self.norms[t]);
                                }
                            }
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        rank(&mat)
    }

    /// First `(i, j)` with `Σ_r |T^j_{ir}|² ≠ Σ_r |T^i_{jr}|²`, and the difference
    /// in units of `1/(n_i n_j)`.
    pub fn btp2_witness(&self, tau: &[Qi]) -> Option<((usize, usize), Q)> {
        let m = self.len();
        for i in 0..m {
            for j in 0..m {
                let mut d = Q::zero();
                for r in 0..m {
                    d += tau[(i * m + r) * m + j].abs_sq() / self.norms[r];
                    d -= tau[(j * m + r) * m + i].abs_sq() / self.norms[r];
                }
                if !d.is_zero() {
                    return Some(((i, j), d));
                }
            }
        }
        None
    }

    /// Componentwise BTP system evaluated exactly (both lines), scaled by
    /// `√(n_i n_j n_k n_ℓ)`; returns the first nonzero entry.
    pub fn literal_btp_witness(&self, tau: &[Qi]) -> Option<((usize, usize, usize, usize), Qi)> {
        let m = self.len();
        let t = |a: usize, b: usize, c: usize| tau[(a * m + b) * m + c];
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    for l in 0..m {
                        let mut first = Qi::zero();
                        let mut second = Qi::zero();
                        for r in 0..m {
                            let w = Qi::real(Q::one() / self.norms[r]);
                            first += w * (t(r, i, l) * t(j, k, r) + t(r, j, l) * t(k, i, r) + t(r, k, l) * t(i, j, r));
                            second += w
                                * (t(i, r, j) * t(l, r, k).conj() - t(k, r, j) * t(l, r, i).conj()
                                    + t(i, k, r) * t(j, l, r).conj());
                        }
                        if !first.is_zero() {
                            return Some(((i, j, k, l), first));
                        }
                        if !second.is_zero() {
                            return Some(((i, j, k, l), second));
                        }
                    }
                }
            }
        }
        None
    }

    /// True when the frame is parallel for `conn` (group models only).
    pub fn is_parallel(&self, model: &InfinitesimalModel, conn: &Nomizu) -> bool {
        model.isotropy_dim() == 0
            && conn.ops.iter().all(|op| self.vectors.iter().all(|f| apply_real(op, f).is_zero()))
    }

    /// Curvature 4-tensor `g(R(u, v)w, z)` on complex vectors.
    fn curvature_value(&self, model: &InfinitesimalModel, r: &Curvature, u: &SVec<Qi>, v: &SVec<Qi>, w: &SVec<Qi>, z: &SVec<Qi>) -> Qi {
        let mut acc = Qi::zero();
        for (a, x) in u.iter() {
            for (b, y) in v.iter() {
                let rw = apply_real(r.basis(a, b), w);
                if !rw.is_zero() {
                    acc += x * y * gc(model, &rw, z);
                }
            }
        }
        acc
    }

    /// Symmetries of the Bismut curvature expected under BTP.
    pub fn curvature_symmetries(&self, model: &InfinitesimalModel, bismut: &Curvature, chern: &Curvature) -> SymmetryReport {
        let m = self.len();
        let f = &self.vectors;
        let fb: Vec<SVec<Qi>> = f.iter().map(|v| v.conj()).collect();
        let mut report = SymmetryReport { bismut_20_vanishes: true, bismut_pair_symmetric: true, bismut_equals_swapped_chern: true, witness: None };
        let mut mixed = vec![Qi::zero(); m * m * m * m];
        let mut chern_mixed = vec![Qi::zero(); m * m * m * m];
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    for l in 0..m {
                        let v20 = self.curvature_value(model, bismut, &f[i], &f[j], &f[k], &fb[l]);
                        if !v20.is_zero() && report.bismut_20_vanishes {
                            report.bismut_20_vanishes = false;
                            report.witness.get_or_insert(format!("Rb(f{i},f{j},f{k},conj f{l}) = {v20}"));
                        }
                        let idx = ((i * m + j) * m + k) * m + l;
                        mixed[idx] = self.curvature_value(model, bismut, &f[i], &fb[j], &f[k], &fb[l]);
                        chern_mixed[idx] = self.curvature_value(model, chern, &f[i], &fb[j], &f[k], &fb[l]);
                    }
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    for l in 0..m {
                        let a = mixed[((i * m + j) * m + k) * m + l];
                        let b = mixed[((k * m + l) * m + i) * m + j];
                        if a != b && report.bismut_pair_symmetric {
                            report.bismut_pair_symmetric = false;
                            report.witness.get_or_insert(format!("Rb(f{i},f̄{j},f{k},f̄{l}) = {a} ≠ {b}"));
                        }
                        let c = chern_mixed[((k * m + l) * m + i) * m + j];
                        if a != c {
                            report.bismut_equals_swapped_chern = false;
                        }
                    }
                }
            }
        }
        report
    }

    /// Unitary Chern curvature components `R_{ij̄kℓ̄} = g(R(e_i,ē_j)e_k, ē_ℓ)`,
    /// exact when all frame norms are rational squares.
    pub fn unitary_curvature(&self, model: &InfinitesimalModel, r: &Curvature) -> Option<Vec<Qi>> {
        let s = self.rational_scales()?;
        let m = self.len();
        let e: Vec<SVec<Qi>> = self.vectors.iter().zip(&s).map(|(v, x)| v.scale(Qi::real(Q::one() / *x))).collect();
        let eb: Vec<SVec<Qi>> = e.iter().map(|v| v.conj()).collect();
        let mut out = vec![Qi::zero(); m * m * m * m];
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    for l in 0..m {
                        out[((i * m + j) * m + k) * m + l] = self.curvature_value(model, r, &e[i], &eb[j], &e[k], &eb[l]);
                    }
                }
            }
        }
        Some(out)
    }

    /// Unitary torsion components `T^k_{ij}`, exact when possible.
    pub fn unitary_torsion(&self, tau: &[Qi]) -> Option<Vec<Qi>> {
        let s = self.rational_scales()?;
        let m = self.len();
        let mut out = tau.to_vec();
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    out[(i * m + j) * m + k] = out[(i * m + j) * m + k] / Qi::real(s[i] * s[j] * s[k]);
                }
            }
        }
        Some(out)
    }
}

fn complex_torsion(t: &Torsion, u: &SVec<Qi>, v: &SVec<Qi>, n: usize) -> SVec<Qi> {
    let mut out = vec![Qi::zero(); n];
    for (a, x) in u.iter() {
        for (b, y) in v.iter() {
            for (k, c) in t.basis(a, b).iter() {
                out[k] += x * y * Qi::real(c);
            }
        }
    }
    SVec::from_dense(&out)
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SymmetryReport {
    /// `Rᵇ(X, Y, Z, W̄) = 0`.
    pub bismut_20_vanishes: bool,
    /// `Rᵇ(X, Ȳ, Z, W̄) = Rᵇ(Z, W̄, X, Ȳ)`.
    pub bismut_pair_symmetric: bool,
    /// `Rᵇ(X, Ȳ, Z, W̄) = R(Z, W̄, X, Ȳ)` with `R` the Chern curvature; reported, not asserted.
    pub bismut_equals_swapped_chern: bool,
    pub witness: Option<String>,
}

/// Residuals of the unitary-frame component formulas in floating point.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct FloatChecks {
    /// `max |(∇ᵇ_X T)(e_i, e_k)|` over frame components.
    #[serde(serialize_with = "report::sci")]
    pub componentwise_btp: f64,
    /// Residual of the quadratic componentwise system.
    #[serde(serialize_with = "report::sci")]
    pub literal_btp: f64,
    /// `Tᵇ` against its expression through Chern torsion components.
    #[serde(serialize_with = "report::sci")]
    pub bismut_torsion_relation: f64,
    /// `∇ᵇ` against `2∇^LC − ∇ᶜ` and its `(0,1)` correction.
    #[serde(serialize_with = "report::sci")]
    pub bismut_connection_relation: f64,
    /// `Rᵇ − R` against the torsion expression.
    #[serde(serialize_with = "report::sci")]
    pub curvature_difference: f64,
    /// Largest magnitude among the compared quantities.
    #[serde(serialize_with = "report::sci")]
    pub scale: f64,
}

use super::report;

type CVec = Vec<Complex64>;

struct FloatModel {
    n: usize,
    g: Vec<Vec<f64>>,
}

impl FloatModel {
    fn gc(&self, u: &[Complex64], v: &[Complex64]) -> Complex64 {
        let mut s = Complex64::zero();
        for i in 0..self.n {
            if u[i] == Complex64::zero() {
                continue;
            }
            let mut t = Complex64::zero();
            for j in 0..self.n {
                t += self.g[i][j] * v[j];
            }
            s += u[i] * t;
        }
        s
    }
    fn herm(&self, u: &[Complex64], v: &[Complex64]) -> Complex64 {
        let vb: CVec = v.iter().map(|z| z.conj()).collect();
        self.gc(u, &vb)
    }
}

fn dense_f64(op: &Endo<Q>) -> Vec<Vec<f64>> {
    op.to_dense().iter().map(|r| r.iter().map(q_to_f64).collect()).collect()
}

/// Complex matrix `Σ_a u_a ops[a]`.
fn combo(ops: &[Vec<Vec<f64>>], u: &[Complex64]) -> Vec<CVec> {
    let n = ops.first().map_or(0, Vec::len);
    let mut m = vec![vec![Complex64::zero(); n]; n];
    for (a, ua) in u.iter().enumerate() {
        if *ua == Complex64::zero() {
            continue;
        }
        for i in 0..n {
            for j in 0..n {
                let x = ops[a][i][j];
                if x != 0.0 {
                    m[i][j] += *ua * x;
                }
            }
        }
    }
    m
}

fn cmat_cvec(m: &[CVec], v: &[Complex64]) -> CVec {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| *a * *b).sum()).collect()
}

fn sub(a: &[Complex64], b: &[Complex64]) -> CVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn norm_inf(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Bilinear table `T(x_a, x_b)` in floating point.
struct FloatTorsion {
    n: usize,
    t: Vec<Vec<f64>>,
}

impl FloatTorsion {
    fn new(t: &Torsion, n: usize) -> Self {
        let mut out = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                out.push(t.basis(a, b).to_dense(n).iter().map(q_to_f64).collect());
            }
        }
        FloatTorsion { n, t: out }
    }
    fn eval(&self, u: &[Complex64], v: &[Complex64]) -> CVec {
        let n = self.n;
        let mut out = vec![Complex64::zero(); n];
        for a in 0..n {
            if u[a] == Complex64::zero() {
                continue;
            }
            for b in 0..n {
                if v[b] == Complex64::zero() {
                    continue;
                }
                let c = u[a] * v[b];
                for (k, x) in self.t[a * n + b].iter().enumerate() {
                    if *x != 0.0 {
                        out[k] += c * *x;
                    }
                }
            }
        }
        out
    }
}

/// Floating-point evaluation of the unitary-frame formulas.
#[allow(clippy::too_many_arguments)]
pub fn float_checks(
    model: &InfinitesimalModel,
    frame: &ComplexFrame,
    lc: &Nomizu,
    chern: &Nomizu,
    bismut: &Nomizu,
    chern_torsion: &Torsion,
    bismut_torsion: &Torsion,
    chern_curv: &Curvature,
    bismut_curv: &Curvature,
) -> FloatChecks {
    let n = model.dim();
    let m = frame.len();
    let fm = FloatModel { n, g: model.metric().iter().map(|r| r.iter().map(q_to_f64).collect()).collect() };
    let e: Vec<CVec> = frame
        .vectors
        .iter()
        .zip(&frame.norms)
        .map(|(v, nv)| {
            let s = q_to_f64(nv).sqrt();
            v.to_dense(n).iter().map(|z| z.to_c64() / s).collect()
        })
        .collect();
    let eb: Vec<CVec> = e.iter().map(|v| v.iter().map(|z| z.conj()).collect()).collect();
    let ops = |c: &Nomizu| -> Vec<Vec<Vec<f64>>> { c.ops.iter().map(dense_f64).collect() };
    let (lc_f, ch_f, bi_f) = (ops(lc), ops(chern), ops(bismut));
    let tc = FloatTorsion::new(chern_torsion, n);
    let tb = FloatTorsion::new(bismut_torsion, n);
    let mut scale: f64 = 0.0;

    // Unitary Chern torsion components T^k_{ij} = h(T(e_i,e_j), e_k).
    let mut tt = vec![Complex64::zero(); m * m * m];
    let mut t_ij: Vec<CVec> = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            let v = tc.eval(&e[i], &e[j]);
            for k in 0..m {
                tt[(i * m + j) * m + k] = fm.herm(&v, &e[k]);
            }
            t_ij.push(v);
        }
    }
    let t = |a: usize, b: usize, c: usize| tt[(a * m + b) * m + c];
    scale = scale.max(tt.iter().map(|z| z.norm()).fold(0.0, f64::max));

    // Bismut operators along frame vectors and their conjugates.
    let lam_b: Vec<Vec<CVec>> = e.iter().map(|u| combo(&bi_f, u)).collect();
    let lam_bb: Vec<Vec<CVec>> = eb.iter().map(|u| combo(&bi_f, u)).collect();

    // (∇ᵇ_X T)(e_i, e_k) with components along e_ℓ.
    let mut dt = vec![Complex64::zero(); 2 * m * m * m * m];
    let mut componentwise_btp: f64 = 0.0;
    for (xi, lam) in lam_b.iter().chain(lam_bb.iter()).enumerate() {
        for i in 0..m {
            let lei = cmat_cvec(lam, &e[i]);
            for k in 0..m {
                let lek = cmat_cvec(lam, &e[k]);
                let v = sub(
                    &sub(&cmat_cvec(lam, &t_ij[i * m + k]), &tc.eval(&lei, &e[k])),
                    &tc.eval(&e[i], &lek),
                );
                for l in 0..m {
                    let c = fm.herm(&v, &e[l]);
                    dt[((xi * m + i) * m + k) * m + l] = c;
                    componentwise_btp = componentwise_btp.max(c.norm());
                }
                componentwise_btp = componentwise_btp.max(norm_inf(&v));
            }
        }
    }
    // T^ℓ_{ik,j̄} := h((∇ᵇ_{ē_j}T)(e_i,e_k), e_ℓ).
    let dt_bar = |j: usize, i: usize, k: usize, l: usize| dt[(((m + j) * m + i) * m + k) * m + l];

    let mut literal_btp: f64 = 0.0;
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                for l in 0..m {
                    let mut first = Complex64::zero();
                    let mut second = Complex64::zero();
                    for r in 0..m {
                        first += t(r, i, l) * t(j, k, r) + t(r, j, l) * t(k, i, r) + t(r, k, l) * t(i, j, r);
                        second += t(i, r, j) * t(l, r, k).conj() - t(k, r, j) * t(l, r, i).conj()
                            + t(i, k, r) * t(j, l, r).conj();
                    }
                    literal_btp = literal_btp.max(first.norm()).max(second.norm());
                }
            }
        }
    }

    // Tᵇ(e_i,e_j) = −Σ T^k_{ij} e_k and Tᵇ(e_i,ē_j) = Σ (T^j_{ik} ē_k − conj(T^i_{jk}) e_k).
    let mut bismut_torsion_relation: f64 = 0.0;
    for i in 0..m {
        for j in 0..m {
            let lhs = tb.eval(&e[i], &e[j]);
            let mut rhs = vec![Complex64::zero(); n];
            for k in 0..m {
                for a in 0..n {
                    rhs[a] -= t(i, j, k) * e[k][a];
                }
            }
            bismut_torsion_relation = bismut_torsion_relation.max(norm_inf(&sub(&lhs, &rhs)));
            let lhs = tb.eval(&e[i], &eb[j]);
            let mut rhs = vec![Complex64::zero(); n];
            for k in 0..m {
                for a in 0..n {
                    rhs[a] += t(i, k, j) * eb[k][a] - t(j, k, i).conj() * e[k][a];
                }
            }
            scale = scale.max(norm_inf(&lhs));
            bismut_torsion_relation = bismut_torsion_relation.max(norm_inf(&sub(&lhs, &rhs)));
        }
    }

    // ∇ᵇ_{e_i}e_j = 2∇^LC_{e_i}e_j − ∇ᶜ_{e_i}e_j,
    // ∇ᵇ_{ē_i}e_j = 2∇^LC_{ē_i}e_j − Σ_k T^i_{jk} ē_k − ∇ᶜ_{ē_i}e_j.
    let mut bismut_connection_relation: f64 = 0.0;
    for i in 0..m {
        for (bar, x) in [(false, &e[i]), (true, &eb[i])] {
            let (lb, ll, lch) = (combo(&bi_f, x), combo(&lc_f, x), combo(&ch_f, x));
            for j in 0..m {
                let b = cmat_cvec(&lb, &e[j]);
                let mut rhs: CVec = cmat_cvec(&ll, &e[j]).iter().map(|z| 2.0 * z).collect();
                rhs = sub(&rhs, &cmat_cvec(&lch, &e[j]));
                if bar {
                    for k in 0..m {
                        for a in 0..n {
                            rhs[a] -= t(j, k, i) * eb[k][a];
                        }
                    }
                }
                scale = scale.max(norm_inf(&b));
                bismut_connection_relation = bismut_connection_relation.max(norm_inf(&sub(&b, &rhs)));
            }
        }
    }

    // Rᵇ_{ij̄kℓ̄} − R_{ij̄kℓ̄} against the torsion expression.
    let curv_ops = |r: &Curvature| -> Vec<Vec<Vec<f64>>> {
        (0..n * n).map(|p| dense_f64(r.basis(p / n, p % n))).collect()
    };
    let (rb_f, rc_f) = (curv_ops(bismut_curv), curv_ops(chern_curv));
    let pair_coeffs = |u: &[Complex64], v: &[Complex64]| -> CVec {
        let mut c = vec![Complex64::zero(); n * n];
        for a in 0..n {
            for b in 0..n {
                c[a * n + b] = u[a] * v[b];
            }
        }
        c
    };
    let mut curvature_difference: f64 = 0.0;
    for i in 0..m {
        for j in 0..m {
            let c = pair_coeffs(&e[i], &eb[j]);
            let rb = combo(&rb_f, &c);
            let rc = combo(&rc_f, &c);
            for k in 0..m {
                let rbk = cmat_cvec(&rb, &e[k]);
                let rck = cmat_cvec(&rc, &e[k]);
                for l in 0..m {
                    let lhs = fm.gc(&rbk, &eb[l]) - fm.gc(&rck, &eb[l]);
                    let mut rhs = dt_bar(j, i, k, l) + dt_bar(i, j, l, k).conj();
                    for r in 0..m {
                        rhs += t(i, r, l) * t(j, r, k).conj()
                            - t(i, k, r) * t(j, l, r).conj()
                            - t(i, r, j) * t(l, r, k).conj()
                            - t(k, r, l) * t(j, r, i).conj();
                    }
                    scale = scale.max(lhs.norm());
                    curvature_difference = curvature_difference.max((lhs - rhs).norm());
                }
            }
        }
    }

    FloatChecks {
        componentwise_btp,
        literal_btp,
        bismut_torsion_relation,
        bismut_connection_relation,
        curvature_difference,
        scale,
    }
}
