//! The isosceles Hopf metric `g_{ij̄} = δ_{ij}/|z|²` on `ℂⁿ∖{0}`, its unitary
//! frame `e_i = |z|∂_i` and the numerical checks of `∇ᵇTᵇ = 0` and
//! `dξ = [θᵇ, ξ]`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    btp_residual_at, chern_curvature_real_route, chern_data_at, cmax, frame_connection, metric_and_j_defect, shift, CMat,
    CoordError, CoordinateMetric, Jet, C,
};

/// Roundoff estimate above which a step is reported as too small.
const CANCELLATION_LIMIT: f64 = 1e-8;

fn norm_sq(z: &[C]) -> f64 {
    z.iter().map(|c| c.norm_sqr()).sum()
}

fn real_coord(z: &[C], a: usize) -> f64 {
    let n = z.len();
    if a < n { z[a].re } else { z[a - n].im }
}

/// Conformal factor `φ` of `g = φ δ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Profile {
    Euclidean,
    /// `φ = 1/|z|²`.
    Hopf,
    /// `φ = (1 + ε|z_1|²)/|z|²`.
    PerturbedHopf { eps: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConformallyFlat {
    pub n: usize,
    pub profile: Profile,
}

impl ConformallyFlat {
    pub fn hopf(n: usize) -> Self {
        ConformallyFlat { n, profile: Profile::Hopf }
    }

    pub fn perturbed_hopf(n: usize, eps: f64) -> Self {
        ConformallyFlat { n, profile: Profile::PerturbedHopf { eps } }
    }

    /// `(φ, ∂_a φ)`.
    fn factor(&self, z: &[C], a: Option<usize>) -> (f64, f64) {
        let r2 = norm_sq(z);
        let dr2 = a.map_or(0.0, |a| 2.0 * real_coord(z, a));
        match self.profile {
            Profile::Euclidean => (1.0, 0.0),
            Profile::Hopf => (1.0 / r2, -dr2 / (r2 * r2)),
            Profile::PerturbedHopf { eps } => {
                let num = 1.0 + eps * z[0].norm_sqr();
                let dnum = match a {
                    Some(0) => 2.0 * eps * z[0].re,
                    Some(a) if a == self.n => 2.0 * eps * z[0].im,
                    _ => 0.0,
                };
                (num / r2, (dnum * r2 - num * dr2) / (r2 * r2))
            }
        }
    }
}

impl CoordinateMetric for ConformallyFlat {
    fn dim(&self) -> usize {
        self.n
    }

    fn metric(&self, z: &[C]) -> CMat {
        CMat::identity(self.n, self.n) * C::new(self.factor(z, None).0, 0.0)
    }

    fn derivative(&self, z: &[C], a: usize) -> Option<CMat> {
        Some(CMat::identity(self.n, self.n) * C::new(self.factor(z, Some(a)).1, 0.0))
    }

    fn name(&self) -> String {
        match self.profile {
            Profile::Euclidean => format!("euclidean C^{}", self.n),
            Profile::Hopf => format!("hopf C^{}", self.n),
            Profile::PerturbedHopf { eps } => format!("perturbed hopf C^{} eps={eps}", self.n),
        }
    }
}

/// Fubini–Study on an affine chart, `g_{ij̄} = ((1+|z|²)δ_{ij} − z̄_i z_j)/(1+|z|²)²`;
/// derivatives by central differences.
pub struct FubiniStudy(pub usize);

impl CoordinateMetric for FubiniStudy {
    fn dim(&self) -> usize {
        self.0
    }

    fn metric(&self, z: &[C]) -> CMat {
        let s = 1.0 + norm_sq(z);
        CMat::from_fn(self.0, self.0, |i, j| {
            let d = if i == j { s } else { 0.0 };
            (C::new(d, 0.0) - z[i].conj() * z[j]) / (s * s)
        })
    }

    fn name(&self) -> String {
        format!("fubini-study C^{}", self.0)
    }
}

/// `ξ = I − z̄ zᵗ/|z|²`.
pub fn hopf_factor(z: &[C]) -> CMat {
    let n = z.len();
    let r2 = norm_sq(z);
    CMat::from_fn(n, n, |i, j| {
        let d = if i == j { 1.0 } else { 0.0 };
        C::new(d, 0.0) - z[i].conj() * z[j] / r2
    })
}

/// `θᵇ(∂_a) = ½(∂ − ∂̄)log|z|²·I + (dz̄ zᵗ − z̄ dzᵗ)/|z|²`.
pub fn hopf_theta_closed_form(z: &[C], a: usize) -> CMat {
    let n = z.len();
    let r2 = norm_sq(z);
    let mut u = vec![C::new(0.0, 0.0); n];
    u[a % n] = if a < n { C::new(1.0, 0.0) } else { C::new(0.0, 1.0) };
    let del: C = z.iter().zip(&u).map(|(zk, uk)| zk.conj() * uk).sum::<C>() / r2;
    let delbar: C = z.iter().zip(&u).map(|(zk, uk)| zk * uk.conj()).sum::<C>() / r2;
    CMat::from_fn(n, n, |i, j| {
        let d = if i == j { (del - delbar) * 0.5 } else { C::new(0.0, 0.0) };
        d + (u[i].conj() * z[j] - z[i].conj() * u[j]) / r2
    })
}

/// `count` points with `1/2 < |z| < 2`, deterministic in `seed`.
pub fn sample_annulus(n: usize, count: usize, seed: u64) -> Vec<Vec<C>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let dir: Vec<C> = loop {
                let v: Vec<C> = (0..n).map(|_| C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
                if norm_sq(&v) > 1e-2 {
                    break v;
                }
            };
            let r = rng.gen_range(0.55..1.95) / norm_sq(&dir).sqrt();
            dir.into_iter().map(|c| c * r).collect()
        })
        .collect()
}

/// Largest `|dξ − [θᵇ, ξ]|` entry at `z`.
pub fn xi_residual_at(metric: &dyn CoordinateMetric, z: &[C], h: f64) -> Result<f64, CoordError> {
    let theta = frame_connection(metric, z, h, -1.0)?;
    let xi = hopf_factor(z);
    let mut worst = 0.0f64;
    for (a, th) in theta.iter().enumerate() {
        let dxi = (hopf_factor(&shift(z, a, h)) - hopf_factor(&shift(z, a, -h))) / C::new(2.0 * h, 0.0);
        let comm = th * &xi - &xi * th;
        worst = worst.max(cmax(&(dxi - comm)));
    }
    Ok(worst)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HopfResiduals {
    /// Largest `|∇ᵇTᵇ|` component over the points.
    pub btp: f64,
    /// Largest `|dξ − [θᵇ, ξ]|` entry over the points.
    pub xi: f64,
    pub warnings: Vec<String>,
}

fn residuals(metric: &dyn CoordinateMetric, points: &[Vec<C>], h: f64) -> Result<HopfResiduals, CoordError> {
    let per: Vec<(f64, f64)> = points
        .par_iter()
        .map(|z| Ok((btp_residual_at(metric, z, h)?, xi_residual_at(metric, z, h)?)))
        .collect::<Result<_, CoordError>>()?;
    let btp = per.iter().map(|p| p.0).fold(0.0, f64::max);
    let xi = per.iter().map(|p| p.1).fold(0.0, f64::max);
    let mut warnings = Vec::new();
    let smallest = points.iter().map(|z| norm_sq(z).sqrt()).fold(f64::INFINITY, f64::min);
    // Torsion scales like 1/|z|; one difference quotient of it loses ε/h.
    let roundoff = f64::EPSILON / (smallest * h);
    if roundoff > CANCELLATION_LIMIT {
        warnings.push(format!("step {h:e} is in the cancellation regime (roundoff ≈ {roundoff:.1e})"));
    }
    Ok(HopfResiduals { btp, xi, warnings })
}

/// `∇ᵇTᵇ` and `dξ − [θᵇ, ξ]` for the Hopf metric on `ℂⁿ`.
pub fn hopf_btp_residual(n: usize, points: &[Vec<C>], h: f64) -> Result<HopfResiduals, CoordError> {
    residuals(&ConformallyFlat::hopf(n), points, h)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HopfConfig {
    pub n: usize,
    pub samples: usize,
    pub step: f64,
    pub seed: u64,
    pub tolerance: f64,
    /// Coarse step for the convergence-order estimate; the ratio is taken
    /// between this step and its half.
    pub order_step: f64,
    pub profile: Profile,
}

impl HopfConfig {
    pub fn new(n: usize) -> Self {
        HopfConfig { n, samples: 20, step: 1e-5, seed: 7, tolerance: 1e-6, order_step: 1e-2, profile: Profile::Hopf }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HopfReport {
    pub metric: String,
    pub n: usize,
    pub samples: usize,
    pub step: f64,
    pub residuals: HopfResiduals,
    /// `log₂` of the residual ratio between `order_step` and `order_step/2`.
    pub btp_order: f64,
    pub xi_order: f64,
    /// Engine `θᵇ` against the closed form.
    pub theta_closed_form: f64,
    /// Engine `R_{ij̄kℓ̄}` against `ξ_{ij}δ_{kℓ}`.
    pub curvature_closed_form: f64,
    /// Coordinate curvature route against the real-Christoffel route.
    pub curvature_routes: f64,
    /// `|∇ᵇJ|` and `|∇ᵇg|`.
    pub bismut_defect: f64,
    /// `ξ² = ξ` with spectrum `{0, 1, …, 1}`.
    pub xi_projector: bool,
    pub passed: bool,
}

fn order(coarse: f64, fine: f64) -> f64 {
    (coarse / fine).log2()
}

fn projector_ok(z: &[C]) -> bool {
    let xi = hopf_factor(z);
    let n = z.len();
    let mut eig: Vec<f64> = xi.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
    eig.sort_by(f64::total_cmp);
    cmax(&(&xi * &xi - &xi)) < 1e-10 && eig[0].abs() < 1e-10 && eig[1..n].iter().all(|l| (l - 1.0).abs() < 1e-10)
}

pub fn hopf_check(cfg: &HopfConfig) -> Result<HopfReport, CoordError> {
    let metric = ConformallyFlat { n: cfg.n, profile: cfg.profile };
    let points = sample_annulus(cfg.n, cfg.samples, cfg.seed);
    let residuals = residuals(&metric, &points, cfg.step)?;
    let coarse = self::residuals(&metric, &points, cfg.order_step)?;
    let fine = self::residuals(&metric, &points, cfg.order_step / 2.0)?;
    let n = cfg.n;
    let per: Vec<[f64; 4]> = points
        .par_iter()
        .map(|z| {
            let theta = frame_connection(&metric, z, cfg.step, -1.0)?;
            let th = theta.iter().enumerate().map(|(a, t)| cmax(&(t - hopf_theta_closed_form(z, a)))).fold(0.0, f64::max);
            // Curvature needs second differences; 1e-4 keeps roundoff near 1e-8.
            let hc = cfg.step.max(1e-4);
            let data = chern_data_at(&metric, z, hc)?;
            let xi = hopf_factor(z);
            let mut curv = 0.0f64;
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        for l in 0..n {
                            let expect = if k == l { xi[(i, j)] } else { C::new(0.0, 0.0) };
                            curv = curv.max((data.r(i, j, k, l) - expect).norm());
                        }
                    }
                }
            }
            let real = chern_curvature_real_route(&metric, z, hc)?;
            let routes = real.iter().zip(&data.curvature).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            let rj = Jet::at(&metric, z, cfg.step)?.real();
            let (dg, dj) = metric_and_j_defect(&rj, &rj.bismut());
            Ok([th, curv, routes, dg.max(dj)])
        })
        .collect::<Result<_, CoordError>>()?;
    let col = |k: usize| per.iter().map(|p| p[k]).fold(0.0, f64::max);
    let xi_projector = points.iter().all(|z| projector_ok(z));
    let tol = cfg.tolerance;
    let btp_order = order(coarse.btp, fine.btp);
    let xi_order = order(coarse.xi, fine.xi);
    let passed = residuals.btp < tol && residuals.xi < tol && btp_order >= 1.9 && xi_order >= 1.9 && xi_projector;
    Ok(HopfReport {
        metric: metric.name(),
        n,
        samples: cfg.samples,
        step: cfg.step,
        residuals,
        btp_order,
        xi_order,
        theta_closed_form: col(0),
        curvature_closed_form: col(1),
        curvature_routes: col(2),
        bismut_defect: col(3),
        xi_projector,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn hopf_factor_at_e1() {
        let xi = hopf_factor(&[c(1.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(xi, CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![c(0.0, 0.0), c(1.0, 0.0)])));
    }

    #[test]
    fn hopf_curvature_at_e1() {
        let d = chern_data_at(&ConformallyFlat::hopf(2), &[c(1.0, 0.0), c(0.0, 0.0)], 1e-4).unwrap();
        assert!((d.r(1, 1, 0, 0) - c(1.0, 0.0)).norm() < 1e-6);
        assert!(d.r(0, 0, 1, 1).norm() < 1e-6);
    }

    #[test]
    fn fubini_study_curvature_at_origin() {
        let d = chern_data_at(&FubiniStudy(2), &[c(0.0, 0.0), c(0.0, 0.0)], 1e-4).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        let expect = f64::from(u8::from(i == j && k == l) + u8::from(i == l && k == j));
                        assert!((d.r(i, j, k, l) - c(expect, 0.0)).norm() < 1e-6, "{i}{j}{k}{l}");
                    }
                }
            }
        }
        // Kähler: Bismut torsion vanishes.
        assert!(d.torsion.iter().all(|t| t.amax() < 1e-8));
    }

    #[test]
    fn fubini_study_routes_agree_off_origin() {
        let z = [c(0.3, 0.1), c(-0.2, 0.4)];
        let a = chern_data_at(&FubiniStudy(2), &z, 1e-4).unwrap();
        let b = chern_curvature_real_route(&FubiniStudy(2), &z, 1e-4).unwrap();
        let diff = a.curvature.iter().zip(&b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        assert!(diff < 1e-5, "{diff}");
    }

    #[test]
    fn hopf_n2_passes() {
        let r = hopf_check(&HopfConfig::new(2)).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.theta_closed_form < 1e-6, "{r:?}");
        assert!(r.curvature_closed_form < 1e-5, "{r:?}");
        assert!(r.curvature_routes < 1e-5, "{r:?}");
        assert!(r.bismut_defect < 1e-9, "{r:?}");
    }

    #[test]
    fn euclidean_profile_residual_is_roundoff() {
        let pts = sample_annulus(2, 5, 3);
        let r = residuals(&ConformallyFlat { n: 2, profile: Profile::Euclidean }, &pts, 1e-5).unwrap();
        assert_eq!(r.btp, 0.0);
    }

    #[test]
    fn perturbed_hopf_fails() {
        let pts = sample_annulus(2, 10, 5);
        let r = residuals(&ConformallyFlat::perturbed_hopf(2, 0.5), &pts, 1e-5).unwrap();
        assert!(r.btp > 1e-2, "{r:?}");
    }

    #[test]
    fn tiny_step_warns() {
        let r = hopf_btp_residual(2, &sample_annulus(2, 2, 1), 1e-10).unwrap();
        assert!(!r.warnings.is_empty());
    }

    #[test]
    fn samples_lie_in_annulus() {
        assert!(sample_annulus(3, 50, 9).iter().all(|z| (0.5..2.0).contains(&norm_sq(z).sqrt())));
    }
}
