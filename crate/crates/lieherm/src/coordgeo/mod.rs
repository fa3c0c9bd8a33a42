//! Floating-point Hermitian geometry of explicit metrics `g_{ij̄}(z)` on open
//! subsets of `ℂⁿ`.
//!
//! Real coordinates are ordered `x_1..x_n, y_1..y_n` with `J∂_x = ∂_y`. The
//! real metric is `G(X, Y) = 2 Re(uᵗ g v̄)` for `X = u·∂ + ū·∂̄`. Connections
//! follow the same Gauduchon formula as the invariant engine, so the two agree
//! on conventions.

pub mod hopf;

pub use hopf::{
    hopf_btp_residual, hopf_check, hopf_factor, sample_annulus, ConformallyFlat, FubiniStudy, HopfConfig, HopfReport,
    HopfResiduals, Profile,
};

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

pub type C = Complex64;
pub type CMat = DMatrix<C>;
pub type RMat = DMatrix<f64>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoordError {
    #[error("metric is singular at {0}")]
    Singular(String),
    #[error("metric is not Hermitian positive definite at {0}")]
    NotPositive(String),
    #[error("point has {got} coordinates, metric has dimension {want}")]
    Dimension { got: usize, want: usize },
    #[error("step must be positive, got {0}")]
    Step(f64),
}

/// Hermitian metric given by its matrix `g_{ij̄}(z)`.
pub trait CoordinateMetric: Sync {
    fn dim(&self) -> usize;
    fn metric(&self, z: &[C]) -> CMat;
    /// `∂g/∂x_k` for `a = k < n`, `∂g/∂y_k` for `a = n + k`; `None` means
    /// central differences.
    fn derivative(&self, _z: &[C], _a: usize) -> Option<CMat> {
        None
    }
    fn name(&self) -> String;
}

/// Flat metric `δ_{ij}`.
pub struct Euclidean(pub usize);

impl CoordinateMetric for Euclidean {
    fn dim(&self) -> usize {
        self.0
    }
    fn metric(&self, _z: &[C]) -> CMat {
        CMat::identity(self.0, self.0)
    }
    fn derivative(&self, _z: &[C], _a: usize) -> Option<CMat> {
        Some(CMat::zeros(self.0, self.0))
    }
    fn name(&self) -> String {
        format!("euclidean C^{}", self.0)
    }
}

/// `z` moved by `t` along real coordinate `a`.
pub fn shift(z: &[C], a: usize, t: f64) -> Vec<C> {
    let n = z.len();
    let mut w = z.to_vec();
    if a < n {
        w[a] += C::new(t, 0.0);
    } else {
        w[a - n] += C::new(0.0, t);
    }
    w
}

/// Largest entry modulus.
pub fn cmax(m: &CMat) -> f64 {
    m.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

fn fmt_point(z: &[C]) -> String {
    let parts: Vec<String> = z.iter().map(|c| format!("{:.4}{:+.4}i", c.re, c.im)).collect();
    format!("({})", parts.join(", "))
}

/// Complex components of `∂_{x_k}` (`e_k`) and `∂_{y_k}` (`i e_k`).
fn real_direction(n: usize, a: usize) -> Vec<C> {
    let mut u = vec![C::new(0.0, 0.0); n];
    u[a % n] = if a < n { C::new(1.0, 0.0) } else { C::new(0.0, 1.0) };
    u
}

/// Real-coordinate components of `∂_k = ½(∂_{x_k} − i∂_{y_k})`.
fn holomorphic_vector(n: usize, k: usize) -> Vec<C> {
    let mut w = vec![C::new(0.0, 0.0); 2 * n];
    w[k] = C::new(0.5, 0.0);
    w[n + k] = C::new(0.0, -0.5);
    w
}

/// `G_{ab} = 2 Re(u_aᵗ g ū_b)`; linear in `g`, so it also maps derivatives.
pub fn realify_metric(g: &CMat) -> RMat {
    let n = g.nrows();
    let dirs: Vec<Vec<C>> = (0..2 * n).map(|a| real_direction(n, a)).collect();
    RMat::from_fn(2 * n, 2 * n, |a, b| {
        let mut s = C::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                s += dirs[a][i] * g[(i, j)] * dirs[b][j].conj();
            }
        }
        2.0 * s.re
    })
}

/// `J` on real coordinates, columns are images.
pub fn complex_structure(n: usize) -> RMat {
    let mut j = RMat::zeros(2 * n, 2 * n);
    for k in 0..n {
        j[(n + k, k)] = 1.0;
        j[(k, n + k)] = -1.0;
    }
    j
}

/// Hermitian check and inverse.
fn checked_inverse(g: &CMat, z: &[C]) -> Result<CMat, CoordError> {
    let herm = cmax(&(g - g.adjoint()));
    let eig = g.clone().symmetric_eigen();
    if herm > 1e-12 * cmax(g).max(1.0) || eig.eigenvalues.iter().any(|&l| l <= 0.0) {
        return Err(CoordError::NotPositive(fmt_point(z)));
    }
    g.clone().try_inverse().ok_or_else(|| CoordError::Singular(fmt_point(z)))
}

/// Evaluation of a metric and its first derivatives at one point.
pub struct Jet {
    pub n: usize,
    pub g: CMat,
    pub g_inv: CMat,
    /// Real-direction derivatives `∂_a g`.
    pub dg: Vec<CMat>,
}

impl Jet {
    pub fn at(metric: &dyn CoordinateMetric, z: &[C], h: f64) -> Result<Self, CoordError> {
        let n = metric.dim();
        if z.len() != n {
            return Err(CoordError::Dimension { got: z.len(), want: n });
        }
        if h <= 0.0 || !h.is_finite() {
            return Err(CoordError::Step(h));
        }
        let g = metric.metric(z);
        let g_inv = checked_inverse(&g, z)?;
        let dg = (0..2 * n)
            .map(|a| {
                metric.derivative(z, a).unwrap_or_else(|| {
                    (metric.metric(&shift(z, a, h)) - metric.metric(&shift(z, a, -h))) / C::new(2.0 * h, 0.0)
                })
            })
            .collect();
        Ok(Jet { n, g, g_inv, dg })
    }

    /// `∂_k g` for `k < n` and `∂̄_k g` for `k ≥ n`.
    fn dz(&self, k: usize, bar: bool) -> CMat {
        let i = C::new(0.0, 1.0);
        let sign = if bar { i } else { -i };
        (&self.dg[k] + &self.dg[self.n + k] * sign) * C::new(0.5, 0.0)
    }

    /// Chern Christoffels from the complex formula:
    /// `chern[i][(p, k)] = Γ^p_{ik} = Σ_q ∂_i g_{kq̄} g^{q̄p}`.
    pub fn chern_complex(&self) -> Vec<CMat> {
        (0..self.n).map(|i| (self.dz(i, false) * &self.g_inv).transpose()).collect()
    }

    pub fn real(&self) -> RealJet {
        let g = realify_metric(&self.g);
        let g_inv = g.clone().try_inverse().expect("positive metric");
        RealJet { n: self.n, j: complex_structure(self.n), g, g_inv, dg: self.dg.iter().map(realify_metric).collect() }
    }
}

/// Real metric, inverse, `J` and first derivatives.
pub struct RealJet {
    pub n: usize,
    pub j: RMat,
    pub g: RMat,
    pub g_inv: RMat,
    pub dg: Vec<RMat>,
}

/// Christoffel matrices: `gamma[b][(a, c)] = Γ^a_{bc}`, so column `c` of
/// `gamma[b]` is `∇_{∂_b} ∂_c`.
pub type Christoffel = Vec<RMat>;

impl RealJet {
    fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn levi_civita(&self) -> Christoffel {
        let m = self.dim();
        (0..m)
            .map(|b| {
                let lower = RMat::from_fn(m, m, |d, c| 0.5 * (self.dg[b][(d, c)] + self.dg[c][(d, b)] - self.dg[d][(b, c)]));
                &self.g_inv * lower
            })
            .collect()
    }

    /// `dω_{abc} = ∂_a ω_{bc} − ∂_b ω_{ac} + ∂_c ω_{ab}`, `ω_{ab} = G(J∂_a, ∂_b)`.
    pub fn d_omega(&self) -> Vec<f64> {
        let m = self.dim();
        let jt = self.j.transpose();
        let dw: Vec<RMat> = self.dg.iter().map(|d| &jt * d).collect();
        let mut out = vec![0.0; m * m * m];
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    out[(a * m + b) * m + c] = dw[a][(b, c)] - dw[b][(a, c)] + dw[c][(a, b)];
                }
            }
        }
        out
    }

    /// `g(∇_b ∂_c, ∂_d) = g(∇^LC_b ∂_c, ∂_d) − (t−1)/4 dω(J∂_b, J∂_c, J∂_d) − (t+1)/4 dω(J∂_b, ∂_c, ∂_d)`.
    pub fn gauduchon(&self, t: f64) -> Christoffel {
        let m = self.dim();
        let lc = self.levi_civita();
        let dw = self.d_omega();
        let idx = |a: usize, b: usize, c: usize| (a * m + b) * m + c;
        // dω(J·, ·, ·) and dω(J·, J·, J·) in coordinates.
        let mut j1 = vec![0.0; m * m * m];
        let mut j3 = vec![0.0; m * m * m];
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    j1[idx(a, b, c)] = (0..m).map(|e| self.j[(e, a)] * dw[idx(e, b, c)]).sum();
                }
            }
        }
        let mut j2 = vec![0.0; m * m * m];
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    j2[idx(a, b, c)] = (0..m).map(|f| self.j[(f, b)] * j1[idx(a, f, c)]).sum();
                }
            }
        }
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    j3[idx(a, b, c)] = (0..m).map(|h| self.j[(h, c)] * j2[idx(a, b, h)]).sum();
                }
            }
        }
        let (c1, c2) = ((t - 1.0) / 4.0, (t + 1.0) / 4.0);
        (0..m)
            .map(|b| {
                let lower = &self.g * &lc[b];
                let corr = RMat::from_fn(m, m, |d, c| lower[(d, c)] - c1 * j3[idx(b, c, d)] - c2 * j1[idx(b, c, d)]);
                &self.g_inv * corr
            })
            .collect()
    }

    pub fn bismut(&self) -> Christoffel {
        self.gauduchon(-1.0)
    }

    pub fn chern(&self) -> Christoffel {
        self.gauduchon(1.0)
    }
}

/// `torsion[b][(a, c)] = Γ^a_{bc} − Γ^a_{cb}`.
pub fn torsion(gamma: &Christoffel) -> Vec<RMat> {
    let m = gamma.len();
    (0..m).map(|b| RMat::from_fn(m, m, |a, c| gamma[b][(a, c)] - gamma[c][(a, b)])).collect()
}

/// Largest `|(∇G)|` and `|(∇J)|` component for a connection.
pub fn metric_and_j_defect(rj: &RealJet, gamma: &Christoffel) -> (f64, f64) {
    let mut dg = 0.0f64;
    let mut dj = 0.0f64;
    for (b, gb) in gamma.iter().enumerate() {
        let ng = &rj.dg[b] - gb.transpose() * &rj.g - &rj.g * gb;
        let nj = gb * &rj.j - &rj.j * gb;
        dg = dg.max(ng.amax());
        dj = dj.max(nj.amax());
    }
    (dg, dj)
}

/// Unitary frame `e = ∂·A` with `A = ḡ^{−1/2}`; columns of `A` are the
/// `∂`-components of `e_i`.
pub fn unitary_frame(g: &CMat) -> CMat {
    let eig = g.map(|c| c.conj()).symmetric_eigen();
    let d = CMat::from_diagonal(&eig.eigenvalues.map(|l| C::new(1.0 / l.sqrt(), 0.0)));
    &eig.eigenvectors * d * eig.eigenvectors.adjoint()
}

/// `(1,0)`-part of a real-coordinate complex vector, and the size of its
/// `(0,1)`-part.
fn split_type(n: usize, v: &[C]) -> (Vec<C>, f64) {
    let i = C::new(0.0, 1.0);
    let hol = (0..n).map(|l| v[l] + i * v[n + l]).collect();
    let anti = (0..n).map(|l| (v[l] - i * v[n + l]).norm()).fold(0.0, f64::max);
    (hol, anti)
}

fn apply_complex(m: &RMat, v: &[C]) -> Vec<C> {
    (0..m.nrows()).map(|a| (0..m.ncols()).map(|c| v[c] * m[(a, c)]).sum()).collect()
}

/// `Γ_a` on `T^{1,0}`: column `k` holds the `∂`-components of `∇_{∂_a} ∂_k`;
/// also returns the largest `(0,1)` leak.
pub fn holomorphic_block(n: usize, gamma_a: &RMat) -> (CMat, f64) {
    let mut out = CMat::zeros(n, n);
    let mut leak = 0.0f64;
    for k in 0..n {
        let (hol, anti) = split_type(n, &apply_complex(gamma_a, &holomorphic_vector(n, k)));
        leak = leak.max(anti);
        for l in 0..n {
            out[(l, k)] = hol[l];
        }
    }
    (out, leak)
}

/// Connection matrices in the unitary frame, one per real direction:
/// `∇_{∂_a} e_i = Σ_r θ_a[(i, r)] e_r`.
pub fn frame_connection(metric: &dyn CoordinateMetric, z: &[C], h: f64, t: f64) -> Result<Vec<CMat>, CoordError> {
    let jet = Jet::at(metric, z, h)?;
    let n = jet.n;
    let gamma = jet.real().gauduchon(t);
    let a0 = unitary_frame(&jet.g);
    let a_inv = a0.clone().try_inverse().ok_or_else(|| CoordError::Singular(fmt_point(z)))?;
    (0..2 * n)
        .map(|a| {
            let da = (unitary_frame(&metric.metric(&shift(z, a, h))) - unitary_frame(&metric.metric(&shift(z, a, -h))))
                / C::new(2.0 * h, 0.0);
            let (block, _) = holomorphic_block(n, &gamma[a]);
            Ok((&a_inv * (da + block * &a0)).transpose())
        })
        .collect()
}

/// Everything computed at one point.
pub struct PointFrameData {
    pub point: Vec<C>,
    /// `chern[i][(p, k)] = Γ^p_{ik}` in complex coordinates.
    pub chern: Vec<CMat>,
    /// Real Bismut Christoffels.
    pub bismut: Christoffel,
    /// Real Bismut torsion.
    pub torsion: Vec<RMat>,
    /// Chern `R_{ij̄kℓ̄}` in the unitary frame, indexed `((i n + j) n + k) n + ℓ`.
    pub curvature: Vec<C>,
    /// `ξ = I − z̄ zᵗ / |z|²`.
    pub hopf_factor: CMat,
}

impl PointFrameData {
    pub fn r(&self, i: usize, j: usize, k: usize, l: usize) -> C {
        let n = self.point.len();
        self.curvature[((i * n + j) * n + k) * n + l]
    }
}

/// `∂_a ∂_b g` by central differences of first derivatives.
fn second_derivatives(metric: &dyn CoordinateMetric, z: &[C], h: f64) -> Result<Vec<Vec<CMat>>, CoordError> {
    let n = metric.dim();
    let plus: Vec<Jet> = (0..2 * n).map(|b| Jet::at(metric, &shift(z, b, h), h)).collect::<Result<_, _>>()?;
    let minus: Vec<Jet> = (0..2 * n).map(|b| Jet::at(metric, &shift(z, b, -h), h)).collect::<Result<_, _>>()?;
    Ok((0..2 * n)
        .map(|a| (0..2 * n).map(|b| (&plus[b].dg[a] - &minus[b].dg[a]) / C::new(2.0 * h, 0.0)).collect())
        .collect())
}

/// Chern curvature in coordinates:
/// `R_{ij̄kℓ̄} = −∂_i∂_j̄ g_{kℓ̄} + Σ ∂_i g_{kq̄} g^{q̄p} ∂_j̄ g_{pℓ̄}`.
pub fn chern_curvature_coordinates(metric: &dyn CoordinateMetric, z: &[C], h: f64) -> Result<Vec<C>, CoordError> {
    let jet = Jet::at(metric, z, h)?;
    let n = jet.n;
    let dd = second_derivatives(metric, z, h)?;
    let i = C::new(0.0, 1.0);
    let quarter = C::new(0.25, 0.0);
    let mut out = vec![C::new(0.0, 0.0); n * n * n * n];
    for a in 0..n {
        let da = jet.dz(a, false);
        for b in 0..n {
            let db = jet.dz(b, true);
            // ∂_a ∂̄_b = ¼(∂x_a − i∂y_a)(∂x_b + i∂y_b)
            let ddg = (&dd[a][b] + &dd[a][n + b] * i - &dd[n + a][b] * i + &dd[n + a][n + b]) * quarter;
            let quad = &da * &jet.g_inv * &db;
            for k in 0..n {
                for l in 0..n {
                    out[((a * n + b) * n + k) * n + l] = -ddg[(k, l)] + quad[(k, l)];
                }
            }
        }
    }
    Ok(out)
}

/// Coordinate tensor `R_{pq̄rs̄}` expressed in the frame `e = ∂·A`.
pub fn to_frame(n: usize, r: &[C], a: &CMat) -> Vec<C> {
    let idx = |i: usize, j: usize, k: usize, l: usize| ((i * n + j) * n + k) * n + l;
    let mut cur = r.to_vec();
    // One index at a time; barred slots take Ā.
    for slot in 0..4 {
        let mut next = vec![C::new(0.0, 0.0); cur.len()];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut s = C::new(0.0, 0.0);
                        for p in 0..n {
                            let (src, new) = match slot {
                                0 => (idx(p, j, k, l), i),
                                1 => (idx(i, p, k, l), j),
                                2 => (idx(i, j, p, l), k),
                                _ => (idx(i, j, k, p), l),
                            };
                            let coef = if slot % 2 == 0 { a[(p, new)] } else { a[(p, new)].conj() };
                            s += coef * cur[src];
                        }
                        next[idx(i, j, k, l)] = s;
                    }
                }
            }
        }
        cur = next;
    }
    cur
}

/// Chern curvature in the unitary frame from real Christoffels:
/// `R(∂_c, ∂_d) = ∂_cΓ_d − ∂_dΓ_c + [Γ_c, Γ_d]`, then `g(R(e_i, ē_j)e_k, ē_ℓ)`.
pub fn chern_curvature_real_route(metric: &dyn CoordinateMetric, z: &[C], h: f64) -> Result<Vec<C>, CoordError> {
    let jet = Jet::at(metric, z, h)?;
    let n = jet.n;
    let m = 2 * n;
    let rj = jet.real();
    let gamma = rj.chern();
    let plus: Vec<Christoffel> =
        (0..m).map(|c| Jet::at(metric, &shift(z, c, h), h).map(|j| j.real().chern())).collect::<Result<_, _>>()?;
    let minus: Vec<Christoffel> =
        (0..m).map(|c| Jet::at(metric, &shift(z, c, -h), h).map(|j| j.real().chern())).collect::<Result<_, _>>()?;
    let dgam = |c: usize, d: usize| (&plus[c][d] - &minus[c][d]) / (2.0 * h);
    let mut rcd = vec![RMat::zeros(m, m); m * m];
    for c in 0..m {
        for d in 0..m {
            rcd[c * m + d] = dgam(c, d) - dgam(d, c) + &gamma[c] * &gamma[d] - &gamma[d] * &gamma[c];
        }
    }
    let a = unitary_frame(&jet.g);
    let frame: Vec<Vec<C>> = (0..n)
        .map(|i| {
            let mut v = vec![C::new(0.0, 0.0); m];
            for k in 0..n {
                for (x, w) in v.iter_mut().zip(holomorphic_vector(n, k)) {
                    *x += a[(k, i)] * w;
                }
            }
            v
        })
        .collect();
    let conj = |v: &[C]| v.iter().map(|c| c.conj()).collect::<Vec<_>>();
    let gc = |u: &[C], v: &[C]| -> C {
        let mut s = C::new(0.0, 0.0);
        for x in 0..m {
            for y in 0..m {
                s += u[x] * rj.g[(x, y)] * v[y];
            }
        }
        s
    };
    let mut out = vec![C::new(0.0, 0.0); n * n * n * n];
    for i in 0..n {
        for j in 0..n {
            let ej = conj(&frame[j]);
            let mut rij = CMat::zeros(m, m);
            for c in 0..m {
                for d in 0..m {
                    let coef = frame[i][c] * ej[d];
                    if coef != C::new(0.0, 0.0) {
                        rij += rcd[c * m + d].map(|x| C::new(x, 0.0)) * coef;
                    }
                }
            }
            for k in 0..n {
                let rk: Vec<C> = (0..m).map(|x| (0..m).map(|y| rij[(x, y)] * frame[k][y]).sum()).collect();
                for l in 0..n {
                    out[((i * n + j) * n + k) * n + l] = gc(&rk, &conj(&frame[l]));
                }
            }
        }
    }
    Ok(out)
}

pub fn chern_data_at(metric: &dyn CoordinateMetric, z: &[C], h: f64) -> Result<PointFrameData, CoordError> {
    let jet = Jet::at(metric, z, h)?;
    let rj = jet.real();
    let bismut = rj.bismut();
    let torsion = torsion(&bismut);
    let coords = chern_curvature_coordinates(metric, z, h)?;
    let curvature = to_frame(jet.n, &coords, &unitary_frame(&jet.g));
    Ok(PointFrameData {
        point: z.to_vec(),
        chern: jet.chern_complex(),
        bismut,
        torsion,
        curvature,
        hopf_factor: hopf_factor(z),
    })
}

/// Largest component of `∇ᵇTᵇ` in real coordinates; `∂T` by central
/// differences of step `h`.
pub fn btp_residual_at(metric: &dyn CoordinateMetric, z: &[C], h: f64) -> Result<f64, CoordError> {
    let rj = Jet::at(metric, z, h)?.real();
    let m = 2 * rj.n;
    let gamma = rj.bismut();
    let t = torsion(&gamma);
    let tors_at = |w: &[C]| Jet::at(metric, w, h).map(|j| torsion(&j.real().bismut()));
    let mut worst = 0.0f64;
    for e in 0..m {
        let tp = tors_at(&shift(z, e, h))?;
        let tm = tors_at(&shift(z, e, -h))?;
        for b in 0..m {
            // (∇_e T)(∂_b, ·) as a matrix over (a, c)
            let mut nt = (&tp[b] - &tm[b]) / (2.0 * h);
            nt += &gamma[e] * &t[b];
            for d in 0..m {
                let gdb = gamma[e][(d, b)];
                if gdb != 0.0 {
                    nt -= &t[d] * gdb;
                }
            }
            nt -= &t[b] * &gamma[e];
            worst = worst.max(nt.amax());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn euclidean_is_flat_and_torsion_free() {
        let z = [c(0.3, -0.2), c(1.1, 0.4)];
        let d = chern_data_at(&Euclidean(2), &z, 1e-5).unwrap();
        assert!(d.chern.iter().all(|m| cmax(m) == 0.0));
        assert!(d.bismut.iter().all(|m| m.amax() == 0.0));
        assert!(d.curvature.iter().all(|x| x.norm() == 0.0));
        assert_eq!(btp_residual_at(&Euclidean(2), &z, 1e-5).unwrap(), 0.0);
    }

    #[test]
    fn realified_metric_is_j_invariant() {
        let g = CMat::from_row_slice(2, 2, &[c(2.0, 0.0), c(0.5, 0.3), c(0.5, -0.3), c(1.0, 0.0)]);
        let gr = realify_metric(&g);
        let j = complex_structure(2);
        assert!((j.transpose() * &gr * &j - &gr).amax() < 1e-14);
        assert!((gr.transpose() - &gr).amax() < 1e-14);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(Jet::at(&Euclidean(2), &[c(1.0, 0.0)], 1e-5), Err(CoordError::Dimension { .. })));
        assert!(matches!(Jet::at(&Euclidean(1), &[c(1.0, 0.0)], 0.0), Err(CoordError::Step(_))));
    }

    #[test]
    fn unitary_frame_is_unitary() {
        let g = CMat::from_row_slice(2, 2, &[c(2.0, 0.0), c(0.5, 0.3), c(0.5, -0.3), c(1.0, 0.0)]);
        let a = unitary_frame(&g);
        let gram = a.transpose() * &g * a.map(|x| x.conj());
        assert!(cmax(&(gram - CMat::identity(2, 2))) < 1e-12);
    }
}
