//! Naturally reductive decompositions of Calabi–Eckmann manifolds
//! `S^{2m₁+1} × S^{2m₂+1} = (SU(m₁+1) × SU(m₂+1) × A)/(SU(m₁) × SU(m₂) × A)`.
//!
//! `𝔤_i = 𝔥_i ⊕ 𝔷_i ⊕ 𝔪_i`, `𝔮 = 𝔷₁ ⊕ 𝔷₂`, `𝔞 ≅ 𝔮` abelian with `ρ_* = id`.
//! The isotropy is `𝔥 ⊕ {(−x, x)}`; the complement is `V_f ⊕ 𝔪` with
//! `V_f = {(q, f(q))}`, identified with the tangent space by `q ↦ (1+F)q`.
//! Metric and `J` on `V_f` are pulled back through that identification.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::GroupError;
use crate::hermgeo::report::naturally_reductive_value;
use crate::hermgeo::{check_conditions, naturally_reductive_witness, InfinitesimalModel};
use crate::liealg::{compact_real_form, CompactForm, LieAlgebra};
use crate::linalg::{inverse, mat_mul, nullspace, rref, transpose, Endo, Mat, SVec};
use crate::rootsys::{build_root_system, chevalley_constants, CartanType, RootSystem, Series};
use crate::scalar::{fmt_q, q, Q};

/// Structure and metric parameters: `J|𝔮 = (α, −(1+α²)/β; β, −α)` on `z₁, z₂`,
/// `g|𝔪_i = c_i · (−B_i)`, `g|𝔮 = s · (1, −α/β; −α/β, (1+α²)/β²)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CalabiEckmann {
    pub m1: usize,
    pub m2: usize,
    pub alpha: Q,
    pub beta: Q,
    pub c: [Q; 2],
    pub q_scale: Q,
}

impl CalabiEckmann {
    pub fn new(m1: usize, m2: usize) -> Self {
        CalabiEckmann { m1, m2, alpha: Q::zero(), beta: Q::one(), c: [Q::one(), Q::one()], q_scale: Q::one() }
    }

    fn validate(&self) -> Result<(), GroupError> {
        if !(1..=2).contains(&self.m1) || !(1..=2).contains(&self.m2) {
            return Err(GroupError::Parameters("m₁, m₂ must lie in {1, 2}".into()));
        }
        if self.beta.is_zero() || self.c.iter().any(|x| *x <= Q::zero()) || self.q_scale <= Q::zero() {
            return Err(GroupError::Parameters("need β ≠ 0 and positive scales".into()));
        }
        Ok(())
    }

    pub fn j_q(&self) -> Mat<Q> {
        let (a, b) = (self.alpha, self.beta);
        vec![vec![a, -(Q::one() + a * a) / b], vec![b, -a]]
    }

    pub fn g_q(&self) -> Mat<Q> {
        let (a, b, s) = (self.alpha, self.beta, self.q_scale);
        vec![vec![s, -s * a / b], vec![-s * a / b, s * (Q::one() + a * a) / (b * b)]]
    }
}

struct Sphere {
    rs: RootSystem,
    cf: CompactForm,
    /// `z` over the Cartan basis (fundamental coweight direction).
    z: Vec<Q>,
    /// Cartan basis indices in `𝔥_i`.
    h_torus: Vec<usize>,
    /// Positive roots in `𝔥_i` and in `𝔪_i`.
    h_roots: Vec<usize>,
    m_roots: Vec<usize>,
}

fn sphere(m: usize) -> Sphere {
    let ct = CartanType::new(Series::A, m).expect("A_m");
    let rs = build_root_system(ct);
    let ch = chevalley_constants(&rs);
    let cf = compact_real_form(&rs, &ch);
    let z = if m == 1 { vec![q(1)] } else { vec![q(2), q(1)] };
    let (m_roots, h_roots) = rs.positive_ids().partition(|&a| rs.root(a).0[0] != 0);
    Sphere { h_torus: (1..m).collect(), rs, cf, z, h_roots, m_roots }
}

/// Negative Killing form value `−B(z, z)`.
fn neg_killing_z(s: &Sphere) -> Q {
    let b = s.cf.algebra.killing_form().matrix.clone();
    let mut v = Q::zero();
    for (i, x) in s.z.iter().enumerate() {
        for (j, y) in s.z.iter().enumerate() {
            v -= *x * b[s.cf.t(i)][s.cf.t(j)] * *y;
        }
    }
    v
}

fn one_plus(f: &Mat<Q>) -> Mat<Q> {
    vec![vec![Q::one() + f[0][0], f[0][1]], vec![f[1][0], Q::one() + f[1][1]]]
}

/// Model for `f` with matrix `F` (columns are `f(z_k)` over `a₁, a₂`).
pub fn calabi_eckmann_model(ce: &CalabiEckmann, f: &Mat<Q>) -> Result<InfinitesimalModel, GroupError> {
    ce.validate()?;
    let k = one_plus(f);
    let kinv = inverse(&k).ok_or_else(|| GroupError::Parameters("f∘ρ_* has eigenvalue −1".into()))?;
    let spheres = [sphere(ce.m1), sphere(ce.m2)];
    let (d1, d2) = (spheres[0].cf.algebra.dim(), spheres[1].cf.algebra.dim());
    let alg: LieAlgebra<Q> = spheres[0]
        .cf
        .algebra
        .direct_sum(&spheres[1].cf.algebra)
        .direct_sum(&LieAlgebra::abelian(2));
    let d = alg.dim();
    let offs = [0, d1];
    let a_idx = [d1 + d2, d1 + d2 + 1];
    let unit = |i: usize| {
        let mut v = vec![Q::zero(); d];
        v[i] = Q::one();
        v
    };
    let z_vec = |s: usize| {
        let mut v = vec![Q::zero(); d];
        for (j, c) in spheres[s].z.iter().enumerate() {
            v[offs[s] + spheres[s].cf.t(j)] = *c;
        }
        v
    };
    let mut cols: Vec<Vec<Q>> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    for (s, sp) in spheres.iter().enumerate() {
        for &j in &sp.h_torus {
            cols.push(unit(offs[s] + sp.cf.t(j)));
            labels.push(format!("t{}.{}", s + 1, j + 1));
        }
        for &a in &sp.h_roots {
            cols.push(unit(offs[s] + sp.cf.v(a)));
            cols.push(unit(offs[s] + sp.cf.w(a)));
            labels.push(format!("v{}.{}", s + 1, sp.rs.root(a)));
            labels.push(format!("w{}.{}", s + 1, sp.rs.root(a)));
        }
    }
    for s in 0..2 {
        let mut v: Vec<Q> = z_vec(s).iter().map(|x| -*x).collect();
        v[a_idx[s]] = Q::one();
        cols.push(v);
        labels.push(format!("a{}-z{}", s + 1, s + 1));
    }
    let n_h = cols.len();
    for s in 0..2 {
        let mut v = z_vec(s);
        for l in 0..2 {
            v[a_idx[l]] += f[l][s];
        }
        cols.push(v);
        labels.push(format!("V{}", s + 1));
    }
    let mut m_planes = Vec::new();
    for (s, sp) in spheres.iter().enumerate() {
        for &a in &sp.m_roots {
            cols.push(unit(offs[s] + sp.cf.v(a)));
            cols.push(unit(offs[s] + sp.cf.w(a)));
            labels.push(format!("v{}.{}", s + 1, sp.rs.root(a)));
            labels.push(format!("w{}.{}", s + 1, sp.rs.root(a)));
            m_planes.push((s, a));
        }
    }
    let p: Mat<Q> = (0..d).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    let alg = alg.change_basis(&p, labels)?;
    let n = d - n_h;
    let jv = mat_mul(&mat_mul(&kinv, &ce.j_q()), &k);
    let gv = mat_mul(&mat_mul(&transpose(&k), &ce.g_q()), &k);
    let mut jcols = vec![SVec::zero(); n];
    let mut g = vec![vec![Q::zero(); n]; n];
    for a in 0..2 {
        jcols[a] = SVec::from_pairs((0..2).map(|b| (b, jv[b][a])));
        for b in 0..2 {
            g[a][b] = gv[a][b];
        }
    }
    for (i, &(s, a)) in m_planes.iter().enumerate() {
        let (v, w) = (2 + 2 * i, 3 + 2 * i);
        jcols[v] = SVec::unit(w);
        jcols[w] = SVec::unit(v).neg();
        let sp = &spheres[s];
        let b = sp.cf.algebra.killing_form().matrix.clone();
        let val = -ce.c[s] * b[sp.cf.v(a)][sp.cf.v(a)];
        g[v][v] = val;
        g[w][w] = val;
    }
    let h_idx: Vec<usize> = (0..n_h).collect();
    let m_idx: Vec<usize> = (n_h..d).collect();
    Ok(InfinitesimalModel::from_algebra(
        format!("Calabi-Eckmann S{}×S{}", 2 * ce.m1 + 1, 2 * ce.m2 + 1),
        &alg,
        &h_idx,
        &m_idx,
        Endo::from_cols(jcols),
        g,
    )?)
}

/// Every `g([x,y]_𝔪, z) + g(y, [x,z]_𝔪)` on basis triples.
fn residuals(model: &InfinitesimalModel) -> Vec<Q> {
    let n = model.dim();
    let mut out = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                out.push(naturally_reductive_value(model, &SVec::unit(a), &SVec::unit(b), &SVec::unit(c)));
            }
        }
    }
    out
}

/// Expected solution `F = G_𝔮⁻¹ D − I`, `D = diag(c_i · (−B_i)(z_i, z_i))`.
pub fn closed_form_f(ce: &CalabiEckmann) -> Mat<Q> {
    let d = [ce.c[0] * neg_killing_z(&sphere(ce.m1)), ce.c[1] * neg_killing_z(&sphere(ce.m2))];
    let gi = inverse(&ce.g_q()).expect("positive definite");
    (0..2).map(|i| (0..2).map(|j| gi[i][j] * d[j] - if i == j { Q::one() } else { Q::zero() }).collect()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CalabiEckmannReport {
    pub m1: usize,
    pub m2: usize,
    pub max_denominator: i128,
    /// Residual is affine in `F` (checked at random points).
    pub residual_affine: bool,
    /// Dimension of the exact solution set, `None` if empty.
    pub solution_dimension: Option<usize>,
    /// Candidates dropped because `f∘ρ_*` has eigenvalue −1.
    pub excluded_eigenvalue_minus_one: usize,
    pub candidates_checked: usize,
    /// `F` (rows over `a₁, a₂`, columns over `z₁, z₂`).
    pub f: Option<[[String; 2]; 2]>,
    /// Generic engine confirms natural reductivity for `f`.
    pub certificate: bool,
    pub btp: Option<bool>,
    pub bas: Option<bool>,
    pub status: String,
}

fn den_ok(x: &Q, max_den: i128) -> bool {
    *x.denom() <= max_den
}

/// Searches `F` with entries of denominator at most `max_den`.
pub fn calabi_eckmann_search(ce: &CalabiEckmann, max_den: i128) -> Result<CalabiEckmannReport, GroupError> {
    ce.validate()?;
    let zero = vec![vec![Q::zero(); 2]; 2];
    let r0 = residuals(&calabi_eckmann_model(ce, &zero)?);
    let mut basis_cols = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            let mut e = zero.clone();
            e[i][j] = Q::one();
            let r = residuals(&calabi_eckmann_model(ce, &e)?);
            basis_cols.push(r.iter().zip(&r0).map(|(a, b)| *a - *b).collect::<Vec<Q>>());
        }
    }
    let predict = |f: &Mat<Q>| -> Vec<Q> {
        let x = [f[0][0], f[0][1], f[1][0], f[1][1]];
        (0..r0.len()).map(|t| r0[t] + (0..4).map(|c| x[c] * basis_cols[c][t]).sum::<Q>()).collect()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut affine = true;
    let mut tried = 0;
    while tried < 3 {
        let f: Mat<Q> = (0..2)
            .map(|_| (0..2).map(|_| Q::new(rng.gen_range(-3 * max_den..=3 * max_den), rng.gen_range(1..=max_den))).collect())
            .collect();
        if let Ok(m) = calabi_eckmann_model(ce, &f) {
            affine &= residuals(&m) == predict(&f);
            tried += 1;
        }
    }
    let mut report = CalabiEckmannReport {
        m1: ce.m1,
        m2: ce.m2,
        max_denominator: max_den,
        residual_affine: affine,
        solution_dimension: None,
        excluded_eigenvalue_minus_one: 0,
        candidates_checked: 0,
        f: None,
        certificate: false,
        btp: None,
        bas: None,
        status: String::new(),
    };
    if !affine {
        report.status = "residual is not affine in F; no exact solve attempted".into();
        return Ok(report);
    }
    // Σ_c x_c col_c = −r0, rows with any nonzero entry only.
    let mut aug: Mat<Q> = (0..r0.len())
        .filter(|&t| !r0[t].is_zero() || basis_cols.iter().any(|c| !c[t].is_zero()))
        .map(|t| {
            let mut row: Vec<Q> = basis_cols.iter().map(|c| c[t]).collect();
            row.push(-r0[t]);
            row
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.contains(&4) {
        report.status = "no F satisfies the natural-reductivity equations".into();
        return Ok(report);
    }
    let mut x0 = [Q::zero(); 4];
    for (r, &c) in piv.iter().enumerate() {
        x0[c] = aug[r][4];
    }
    let coeff: Mat<Q> = aug.iter().map(|r| r[..4].to_vec()).collect();
    let null = nullspace(&coeff, 4);
    report.solution_dimension = Some(null.len());
    // Enumerate free parameters over rationals of bounded denominator in [−2, 2].
    let mut grid: Vec<Q> = vec![Q::zero()];
    for d in 1..=max_den {
        for p in -2 * d..=2 * d {
            let x = Q::new(p, d);
            if !grid.contains(&x) {
                grid.push(x);
            }
        }
    }
    let mut stack: Vec<Vec<Q>> = vec![Vec::new()];
    let combos: Vec<Vec<Q>> = {
        for _ in 0..null.len() {
            stack = stack.into_iter().flat_map(|p| grid.iter().map(move |g| [p.clone(), vec![*g]].concat())).collect();
        }
        stack
    };
    for t in combos {
        let mut x = x0;
        for (v, s) in null.iter().zip(&t) {
            for c in 0..4 {
                x[c] += *s * v[c];
            }
        }
        report.candidates_checked += 1;
        if !x.iter().all(|v| den_ok(v, max_den)) {
            continue;
        }
        let f = vec![vec![x[0], x[1]], vec![x[2], x[3]]];
        let Ok(model) = calabi_eckmann_model(ce, &f) else {
            report.excluded_eigenvalue_minus_one += 1;
            continue;
        };
        if naturally_reductive_witness(&model).is_none() {
            let r = check_conditions(&model);
            report.f = Some([[fmt_q(&x[0]), fmt_q(&x[1])], [fmt_q(&x[2]), fmt_q(&x[3])]]);
            report.certificate = true;
            report.btp = Some(r.btp.holds);
            report.bas = r.bas.map(|v| v.holds);
            report.status = "naturally reductive decomposition found".into();
            return Ok(report);
        }
    }
    report.status = format!("exhausted: no admissible F with denominators ≤ {max_den}");
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3xs3_found_and_matches_closed_form() {
        let ce = CalabiEckmann::new(1, 1);
        let r = calabi_eckmann_search(&ce, 8).unwrap();
        assert!(r.residual_affine);
        assert!(r.certificate, "{}", r.status);
        let f = closed_form_f(&ce);
        let fs = r.f.unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(fs[i][j], fmt_q(&f[i][j]));
            }
        }
        assert_eq!(r.btp, Some(true));
        assert_eq!(r.bas, Some(true));
    }

    #[test]
    fn bi_invariant_choice_gives_zero_f() {
        let mut ce = CalabiEckmann::new(1, 1);
        ce.q_scale = neg_killing_z(&sphere(1));
        let r = calabi_eckmann_search(&ce, 8).unwrap();
        assert_eq!(r.f.unwrap(), [["0".to_string(), "0".into()], ["0".into(), "0".into()]]);
    }

    #[test]
    fn eigenvalue_minus_one_rejected() {
        let ce = CalabiEckmann::new(1, 1);
        let f = vec![vec![q(-1), Q::zero()], vec![Q::zero(), q(2)]];
        assert!(calabi_eckmann_model(&ce, &f).is_err());
    }

    #[test]
    fn tilted_structure_s3xs5() {
        let mut ce = CalabiEckmann::new(1, 2);
        ce.alpha = Q::new(1, 2);
        ce.beta = q(2);
        let r = calabi_eckmann_search(&ce, 8).unwrap();
        assert!(r.residual_affine);
        let f = closed_form_f(&ce);
        let dens_ok = f.iter().flatten().all(|x| *x.denom() <= 8);
        assert_eq!(r.certificate, dens_ok, "{}", r.status);
    }
}
