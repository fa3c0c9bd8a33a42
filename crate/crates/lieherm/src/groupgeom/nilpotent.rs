//! Two-step nilpotent groups in the `Y`-normal form.
//!
//! Unitary frame `e_k = ½(X_k − iY_k)`, `JX_k = Y_k`, `g(X, X) = 2`; the only
//! nonzero brackets are `[e_i, ē_i] = Σ_α (−Y_{αi} e_α + Ȳ_{αi} ē_α)` for
//! `i ≤ r < α`, i.e. `[X_i, Y_i] = Σ_α (2a Y_α − 2b X_α)` with `Y_{αi} = a + ib`.

use num_traits::Zero;
use serde::Serialize;

use super::{bracket_c, GroupError};
use crate::hermgeo::frame::gc;
use crate::hermgeo::{
    bismut_connection, chern_connection, check_conditions, curvature, ComplexFrame, InfinitesimalModel,
};
use crate::liealg::LieAlgebra;
use crate::linalg::{Endo, SVec};
use crate::scalar::{q, Field, Q, Qi};

#[derive(Clone, Debug, PartialEq)]
pub struct NilpotentNormalForm {
    pub n: usize,
    pub r: usize,
    /// `y[α − r][i] = Y_{αi}`, an `(n − r) × r` matrix.
    pub y: Vec<Vec<Qi>>,
}

impl NilpotentNormalForm {
    pub fn new(n: usize, r: usize, y: Vec<Vec<Qi>>) -> Result<Self, GroupError> {
        if r == 0 || r >= n {
            return Err(GroupError::Parameters(format!("need 0 < r < n, got r = {r}, n = {n}")));
        }
        if y.len() != n - r || y.iter().any(|row| row.len() != r) {
            return Err(GroupError::Dimension(format!("Y must be {} × {r}", n - r)));
        }
        Ok(NilpotentNormalForm { n, r, y })
    }

    /// `Y_{αi}` with 0-based `α ≥ r`, `i < r`.
    pub fn y_at(&self, alpha: usize, i: usize) -> Qi {
        self.y[alpha - self.r][i]
    }

    fn x(k: usize) -> usize {
        2 * k
    }
    fn yv(k: usize) -> usize {
        2 * k + 1
    }

    /// Real algebra over `X_1, Y_1, …, X_n, Y_n`.
    pub fn algebra(&self) -> LieAlgebra<Q> {
        let mut entries = Vec::new();
        let two = q(2);
        for i in 0..self.r {
            for a in self.r..self.n {
                let y = self.y_at(a, i);
                if !y.re.is_zero() {
                    entries.push((Self::x(i), Self::yv(i), Self::yv(a), two * y.re));
                }
                if !y.im.is_zero() {
                    entries.push((Self::x(i), Self::yv(i), Self::x(a), -two * y.im));
                }
            }
        }
        let labels = (1..=self.n).flat_map(|k| [format!("X{k}"), format!("Y{k}")]).collect();
        LieAlgebra::from_brackets(labels, entries).expect("normal form is well formed")
    }

    pub fn frame(&self) -> Vec<SVec<Qi>> {
        let half = Q::new(1, 2);
        (0..self.n)
            .map(|k| SVec::from_pairs([(Self::x(k), Qi::real(half)), (Self::yv(k), Qi::new(Q::zero(), -half))]))
            .collect()
    }
}

/// Group model with the metric that makes `e` unitary.
pub fn nilpotent_model(nf: &NilpotentNormalForm) -> Result<InfinitesimalModel, GroupError> {
    let dim = 2 * nf.n;
    let cols = (0..dim).map(|c| if c % 2 == 0 { SVec::unit(c + 1) } else { SVec::unit(c - 1).neg() }).collect();
    let g = (0..dim).map(|i| (0..dim).map(|j| if i == j { q(2) } else { Q::zero() }).collect()).collect();
    let model = InfinitesimalModel::group(format!("nilpotent n={} r={}", nf.n, nf.r), &nf.algebra(), Endo::from_cols(cols), g)?;
    Ok(model.with_frame(nf.frame())?)
}

pub type Tensor3 = Vec<Vec<Vec<Qi>>>;

/// `C^j_{ik} = ⟨[e_i, e_k], ē_j⟩`, `D^j_{ik} = ⟨[ē_j, e_k], e_i⟩`, indexed `[j][i][k]`.
pub fn structure_tensors(nf: &NilpotentNormalForm, model: &InfinitesimalModel) -> (Tensor3, Tensor3) {
    let e = nf.frame();
    let eb: Vec<SVec<Qi>> = e.iter().map(SVec::conj).collect();
    let n = nf.n;
    let mut c = vec![vec![vec![Qi::zero(); n]; n]; n];
    let mut d = vec![vec![vec![Qi::zero(); n]; n]; n];
    for j in 0..n {
        for i in 0..n {
            for k in 0..n {
                c[j][i][k] = gc(model, &bracket_c(model, &e[i], &e[k]), &eb[j]);
                d[j][i][k] = gc(model, &bracket_c(model, &eb[j], &e[k]), &e[i]);
            }
        }
    }
    (c, d)
}

/// Chern curvature `R_{ij̄kℓ̄}` from `D` by the structure-constant formula
/// `Σ_s (D^s_{ki} D̄^s_{ℓj} − D^ℓ_{si} D̄^k_{sj} − D^j_{si} D̄^k_{ℓs} − D̄^i_{sj} D^ℓ_{ks})`,
/// indexed `((i n + j) n + k) n + ℓ`.
pub fn curvature_from_d(n: usize, d: &[Vec<Vec<Qi>>]) -> Vec<Qi> {
    let dd = |j: usize, i: usize, k: usize| d[j][i][k];
    let mut out = vec![Qi::zero(); n * n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut s = Qi::zero();
                    for t in 0..n {
                        s += dd(t, k, i) * dd(t, l, j).conj() - dd(l, t, i) * dd(k, t, j).conj()
                            - dd(j, t, i) * dd(k, l, t).conj()
                            - dd(i, t, j).conj() * dd(l, k, t);
                    }
                    out[((i * n + j) * n + k) * n + l] = s;
                }
            }
        }
    }
    out
}

/// Closed form: `R_{iīαβ̄} = Ȳ_{αi}Y_{βi}`, `R_{ij̄jī} = −Σ_α Ȳ_{αi}Y_{αj}`, zero otherwise.
pub fn nilpotent_chern_curvature(nf: &NilpotentNormalForm) -> Vec<Qi> {
    let n = nf.n;
    let mut out = vec![Qi::zero(); n * n * n * n];
    let idx = |i: usize, j: usize, k: usize, l: usize| ((i * n + j) * n + k) * n + l;
    for i in 0..nf.r {
        for a in nf.r..n {
            for b in nf.r..n {
                out[idx(i, i, a, b)] = nf.y_at(a, i).conj() * nf.y_at(b, i);
            }
        }
        for j in 0..nf.r {
            out[idx(i, j, j, i)] = (nf.r..n).map(|a| nf.y_at(a, i).conj() * nf.y_at(a, j)).sum();
            out[idx(i, j, j, i)] = -out[idx(i, j, j, i)];
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct NilpotentReport {
    pub c_vanishes: bool,
    /// Only `D^i_{αi} = −Ȳ_{αi}` is nonzero.
    pub d_matches: bool,
    pub two_step: bool,
    pub j_abelian: bool,
    /// `∇ᵇ_{e_α}e_i = −Ȳ_{αi}e_i`, `∇ᵇ_{ē_α}e_i = Y_{αi}e_i`, all else zero.
    pub theta_b_diagonal: bool,
    /// Engine curvature = structure-constant formula = closed form.
    pub curvature_formula_matches: bool,
    pub curvature_closed_form_matches: bool,
    pub btp: bool,
    pub bas: bool,
}

pub fn nilpotent_report(nf: &NilpotentNormalForm) -> Result<NilpotentReport, GroupError> {
    let model = nilpotent_model(nf)?;
    let n = nf.n;
    let (c, d) = structure_tensors(nf, &model);
    let c_vanishes = c.iter().flatten().flatten().all(Zero::is_zero);
    let mut d_matches = true;
    for j in 0..n {
        for i in 0..n {
            for k in 0..n {
                let expect = if j == k && j < nf.r && i >= nf.r { -nf.y_at(i, j).conj() } else { Qi::zero() };
                d_matches &= d[j][i][k] == expect;
            }
        }
    }
    let alg = nf.algebra();
    let dim = 2 * n;
    let mut two_step = true;
    let mut j_abelian = true;
    let jm = model.j().clone();
    for a in 0..dim {
        for b in 0..dim {
            let ab = alg.bracket_basis(a, b);
            for c2 in 0..dim {
                two_step &= alg.bracket(ab, &SVec::unit(c2)).is_zero();
            }
            j_abelian &= alg.bracket(jm.col(a), jm.col(b)) == *ab;
        }
    }
    let bis = bismut_connection(&model);
    let e = nf.frame();
    let mut theta_b_diagonal = true;
    for k in 0..n {
        for i in 0..n {
            let (hol, anti) = if i < nf.r && k >= nf.r {
                (-nf.y_at(k, i).conj(), nf.y_at(k, i))
            } else {
                (Qi::zero(), Qi::zero())
            };
            theta_b_diagonal &= bis.apply_complex(&e[k], &e[i]) == e[i].scale(hol);
            theta_b_diagonal &= bis.apply_complex(&e[k].conj(), &e[i]) == e[i].scale(anti);
        }
    }
    let frame = ComplexFrame::new(&model);
    let engine = frame
        .unitary_curvature(&model, &curvature(&model, &chern_connection(&model)))
        .expect("unitary frame");
    let formula = curvature_from_d(n, &d);
    let closed = nilpotent_chern_curvature(nf);
    let report = check_conditions(&model);
    Ok(NilpotentReport {
        c_vanishes,
        d_matches,
        two_step,
        j_abelian,
        theta_b_diagonal,
        curvature_formula_matches: engine == formula,
        curvature_closed_form_matches: engine == closed,
        btp: report.btp.holds,
        bas: report.bas.is_some_and(|v| v.holds),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermgeo::check_conditions;

    fn qi(re: i128, im: i128) -> Qi {
        Qi::new(q(re), q(im))
    }

    #[test]
    fn kodaira_type_example() {
        let nf = NilpotentNormalForm::new(2, 1, vec![vec![qi(1, 0)]]).unwrap();
        let m = nilpotent_model(&nf).unwrap();
        assert_eq!(m.dim(), 4);
        let r = nilpotent_report(&nf).unwrap();
        assert!(r.c_vanishes && r.d_matches && r.two_step && r.j_abelian && r.theta_b_diagonal);
        assert!(r.curvature_formula_matches && r.curvature_closed_form_matches);
        assert!(r.btp && r.bas);
        let rc = nilpotent_chern_curvature(&nf);
        let idx = |i: usize, j: usize, k: usize, l: usize| ((i * 2 + j) * 2 + k) * 2 + l;
        assert_eq!(rc[idx(0, 0, 1, 1)], qi(1, 0));
        assert_eq!(rc[idx(0, 0, 0, 0)], qi(-1, 0));
    }

    #[test]
    fn zero_y_is_flat_kahler() {
        let nf = NilpotentNormalForm::new(2, 1, vec![vec![Qi::zero()]]).unwrap();
        let r = check_conditions(&nilpotent_model(&nf).unwrap());
        assert!(r.kahler.holds && r.chern_flat.holds);
        assert!(nilpotent_chern_curvature(&nf).iter().all(Zero::is_zero));
    }

    #[test]
    fn generic_n3_r2() {
        let nf = NilpotentNormalForm::new(3, 2, vec![vec![qi(1, 2), Qi::new(Q::new(-1, 3), q(1))]]).unwrap();
        let r = nilpotent_report(&nf).unwrap();
        assert!(r.theta_b_diagonal && r.d_matches && r.c_vanishes);
        assert!(r.curvature_formula_matches && r.curvature_closed_form_matches);
        assert!(r.btp && r.bas);
    }

    #[test]
    fn rejects_r_ge_n() {
        assert!(NilpotentNormalForm::new(2, 2, vec![]).is_err());
    }
}
