//! The BTP, non-BAS example on `(SU(3) × ℝ)/S¹`.
//!
//! `ℓ = i·diag(a₁, a₂, −a₁−a₂)`, `𝔥 = ℝh` with
//! `h = i·diag(2a₂+a₁, −2a₁−a₂, a₁−a₂)`, `𝔭 = 𝔩 ⊕ 𝔪 ⊕ 𝔷`, `Jz = ℓ`. On the
//! root planes `ω = ω_o` with `ω_o(x, y) = B([ℓ, x], y)`, so `g_γ = iγ(ℓ)`.

use num_traits::{One, Zero};
use serde::Serialize;

use super::GroupError;
use crate::flagspace::{build_flag, FlagComplexStructure, FlagHermitian, FlagMetric};
use crate::hermgeo::frame::gc;
use crate::hermgeo::{check_conditions, d_omega, CheckReport, InfinitesimalModel};
use crate::liealg::{compact_real_form, LieAlgebra};
use crate::linalg::{Endo, SVec};
use crate::rootsys::{build_root_system, chevalley_constants, weyl_scale_sq, CartanType, Series};
use crate::scalar::{fmt_q, q, Q, Qi};

#[derive(Clone, Debug, Serialize)]
pub struct M4Report {
    pub a1: i64,
    pub a2: i64,
    /// `g_α, g_β, g_{α+β}` of the base flag metric.
    pub base_metric: [String; 3],
    pub base_kahler: bool,
    /// `ω(x, y) = B([ℓ, x], y)` on the root planes.
    pub omega_matches_killing: bool,
    /// `dω = θ ∧ ω`, `θ = (Jℓ)^♭ / g(ℓ, ℓ)`.
    pub d_omega_is_theta_wedge_omega: bool,
    /// `g(E_{α+β}, E_{−α−β}) − g(E_β, E_{−β})`.
    pub naturally_reductive_failure: String,
    pub report: CheckReport,
}

/// Model of the example, with the 𝔭-basis `ℓ, v/w root planes, z`.
pub fn m4_model(a1: i64, a2: i64) -> Result<InfinitesimalModel, GroupError> {
    if a1 == 0 || a2 == 0 || a1 >= a2 || 2 * a2 >= -a1 {
        return Err(GroupError::Parameters(format!("need a1 < a2 < -a1/2, both nonzero; got ({a1}, {a2})")));
    }
    let (x1, x2) = (q(a1 as i128), q(a2 as i128));
    let ct = CartanType::new(Series::A, 2).expect("A2");
    let rs = build_root_system(ct);
    let ch = chevalley_constants(&rs);
    let cf = compact_real_form(&rs, &ch);
    let su3 = cf.algebra.clone();
    let full: LieAlgebra<Q> = su3.direct_sum(&LieAlgebra::abelian(1).with_labels(vec!["z".into()]).expect("label"));
    let d = full.dim();
    // Coordinates over t1 = i h1, t2 = i h2.
    let ell = [x1, x1 + x2];
    let hvec = [x1 + q(2) * x2, x2 - x1];
    let mut p = vec![vec![Q::zero(); d]; d];
    p[cf.t(0)][0] = hvec[0];
    p[cf.t(1)][0] = hvec[1];
    p[cf.t(0)][1] = ell[0];
    p[cf.t(1)][1] = ell[1];
    for (i, row) in p.iter_mut().enumerate().take(d).skip(2) {
        row[i] = Q::one();
    }
    let mut labels = vec!["h".to_string(), "l".to_string()];
    labels.extend(full.labels()[2..].iter().cloned());
    let alg = full.change_basis(&p, labels)?;
    let killing = su3.killing_form().matrix.clone();
    let b_ll = {
        let mut s = Q::zero();
        for i in 0..2 {
            for j in 0..2 {
                s += ell[i] * killing[cf.t(i)][cf.t(j)] * ell[j];
            }
        }
        s
    };
    // 𝔭 = [l, root planes..., z]
    let m_idx: Vec<usize> = (1..d).collect();
    let n = m_idx.len();
    let mut cols = vec![SVec::zero(); n];
    let mut g = vec![vec![Q::zero(); n]; n];
    cols[0] = SVec::unit(n - 1).neg();
    cols[n - 1] = SVec::unit(0);
    g[0][0] = -b_ll;
    g[n - 1][n - 1] = -b_ll;
    for a in rs.positive_ids() {
        let (v, w) = (cf.v(a) - 1, cf.w(a) - 1);
        cols[v] = SVec::unit(w);
        cols[w] = SVec::unit(v).neg();
        let gv = g_gamma(&rs, a, &ell);
        g[v][v] = q(2) * weyl_scale_sq(&rs, a) * gv;
        g[w][w] = g[v][v];
    }
    let model = InfinitesimalModel::from_algebra(format!("M4({a1},{a2})"), &alg, &[0], &m_idx, Endo::from_cols(cols), g)?;
    Ok(model)
}

/// `iγ(ℓ) = −Σ_j c_j ⟨γ, α_j^∨⟩` for `ℓ = Σ c_j t_j`.
fn g_gamma(rs: &crate::rootsys::RootSystem, a: usize, ell: &[Q; 2]) -> Q {
    -(0..2).map(|j| ell[j] * q(rs.eval_on_coroot(a, j) as i128)).sum::<Q>()
}

pub fn m4_example(a1: i64, a2: i64) -> Result<M4Report, GroupError> {
    let model = m4_model(a1, a2)?;
    let (x1, x2) = (q(a1 as i128), q(a2 as i128));
    let ell = [x1, x1 + x2];
    let ct = CartanType::new(Series::A, 2).expect("A2");
    let rs = build_root_system(ct);
    let ch = chevalley_constants(&rs);
    let cf = compact_real_form(&rs, &ch);
    let pos: Vec<usize> = rs.positive_ids().collect();
    let (al, be) = (rs.simple(0), rs.simple(1));
    let ab = rs.sum(al, be).expect("α+β");
    let gvals = [g_gamma(&rs, al, &ell), g_gamma(&rs, be, &ell), g_gamma(&rs, ab, &ell)];

    let fm = build_flag(ct, &[]).expect("full flag");
    let cs = FlagComplexStructure::standard(&fm);
    let values = fm.classes().iter().map(|c| g_gamma(&rs, c[0], &ell)).collect();
    let fmet = FlagMetric { values };
    let base_kahler = FlagHermitian { fm: &fm, cs: &cs, g: &fmet }.kahler_witness().is_none();

    let n = model.dim();
    let su3_killing = cf.algebra.killing_form().matrix.clone();
    let ell_vec = SVec::from_pairs([(cf.t(0), ell[0]), (cf.t(1), ell[1])]);
    let mut omega_ok = true;
    for &a in &pos {
        for &b in &pos {
            for (xa, ya) in [(cf.v(a), cf.v(b)), (cf.v(a), cf.w(b)), (cf.w(a), cf.v(b)), (cf.w(a), cf.w(b))] {
                let br = cf.algebra.bracket(&ell_vec, &SVec::unit(xa));
                let bval: Q = br.iter().map(|(i, c)| c * su3_killing[i][ya]).sum();
                omega_ok &= model.omega(&SVec::unit(xa - 1), &SVec::unit(ya - 1)) == bval;
            }
        }
    }

    // θ = (Jℓ)^♭ / g(ℓ, ℓ)
    let l = SVec::unit(0);
    let jl = model.j().apply(&l);
    let gll = model.g_eval(&l, &l);
    let theta: Vec<Q> = (0..n).map(|i| model.g_eval(&jl, &SVec::unit(i)) / gll).collect();
    let om = |i: usize, j: usize| model.omega(&SVec::unit(i), &SVec::unit(j));
    let dw = d_omega(&model);
    let mut dw_ok = true;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let wedge = theta[i] * om(j, k) - theta[j] * om(i, k) + theta[k] * om(i, j);
                dw_ok &= dw.get(i, j, k) == wedge;
            }
        }
    }

    // Chevalley vectors in 𝔭 coordinates (shift by the removed 𝔥 slot).
    let e = |id: usize| {
        let v = cf.chevalley_vector(&rs, rs.rank() + id);
        SVec::from_pairs(v.iter().map(|(i, x)| (i - 1, x)))
    };
    let weyl_pair = |id: usize| gc(&model, &e(id), &e(rs.neg(id))) / Qi::real(weyl_scale_sq(&rs, id));
    let failure = weyl_pair(ab) - weyl_pair(be);

    Ok(M4Report {
        a1,
        a2,
        base_metric: gvals.map(|x| fmt_q(&x)),
        base_kahler,
        omega_matches_killing: omega_ok,
        d_omega_is_theta_wedge_omega: dw_ok,
        naturally_reductive_failure: failure.to_string(),
        report: check_conditions(&model),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_minus3_1() {
        let r = m4_example(-3, 1).unwrap();
        assert_eq!(r.base_metric, ["4".to_string(), "1".into(), "5".into()]);
        assert!(r.base_kahler);
        assert!(r.omega_matches_killing);
        assert!(r.d_omega_is_theta_wedge_omega);
        assert_eq!(r.naturally_reductive_failure, "-4");
        assert!(r.report.btp.holds);
        assert!(!r.report.bas.as_ref().unwrap().holds);
        assert!(!r.report.naturally_reductive.holds);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(m4_model(-1, 1).is_err());
        assert!(m4_model(-3, 0).is_err());
    }
}
