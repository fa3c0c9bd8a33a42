//! Named condition checks for one model.

use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::frame::{float_checks, ComplexFrame, FloatChecks, SymmetryReport};
use super::{
    bismut_connection, chern_connection, curvature, curvature_derivative_witness, d_form3_witness, d_omega,
    levi_civita, naturally_reductive_witness, skew_torsion_witness, torsion, torsion_derivative_witness,
    torsion_form, Curvature, Form3, InfinitesimalModel, Torsion,
};
use crate::linalg::SVec;
use crate::scalar::{fmt_q, Field, Q, Qi};

pub(crate) fn sci<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{x:e}"))
}

/// Location and value of a failure.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub labels: Vec<String>,
    pub value: String,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
    /// `"0"` when the condition holds, else the witness value.
    pub residual: String,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict { holds: true, witness: None, residual: "0".into() }
    }

    pub fn fail(indices: Vec<usize>, labels: Vec<String>, value: String) -> Self {
        Verdict { holds: false, residual: value.clone(), witness: Some(Witness { indices, labels, value }) }
    }

    fn from_basis(model: &InfinitesimalModel, w: Option<(Vec<usize>, String)>) -> Self {
        match w {
            None => Verdict::pass(),
            Some((idx, value)) => {
                let labels = idx.iter().map(|&i| model.labels()[i].clone()).collect();
                Verdict::fail(idx, labels, value)
            }
        }
    }

    fn from_frame(w: Option<(Vec<usize>, String)>) -> Self {
        match w {
            None => Verdict::pass(),
            Some((idx, value)) => {
                let labels = idx.iter().map(|i| format!("f{i}")).collect();
                Verdict::fail(idx, labels, value)
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub model: String,
    pub real_dim: usize,
    pub kahler: Verdict,
    pub balanced: Verdict,
    pub pluriclosed: Verdict,
    pub chern_flat: Verdict,
    pub bismut_flat: Verdict,
    /// `∇ᵇTᵇ = 0`, exact tensorial path.
    pub btp: Verdict,
    /// `∇ᵇRᵇ = 0`; absent unless `btp` holds.
    pub bas: Option<Verdict>,
    pub naturally_reductive: Verdict,
    /// `∇ᵇT = 0` for the Chern torsion `T`.
    pub chern_torsion_parallel: Verdict,
    /// `∇ᵇR = 0` for the Chern curvature; absent unless `btp` holds.
    pub chern_curvature_parallel: Option<Verdict>,
    pub bismut_torsion_skew: Verdict,
    /// `g(Tᵇ(x,y),z) = dω(Jx,Jy,Jz)`.
    pub torsion_form_matches_d_omega: bool,
    /// `Σ|T^j_{ir}|² = Σ|T^i_{jr}|²`; necessary for Chern-flat BTP metrics only.
    pub btp2: Verdict,
    /// Gauduchon 1-form on the frame, `η(f_i)`.
    pub eta: Vec<String>,
    /// Real trace form `θ(x) = tr(y ↦ T(x,y))` of the Chern torsion.
    pub torsion_trace: Vec<String>,
    pub r_b: usize,
    pub frame_norms: Vec<String>,
    /// Frame is `∇ᶜ`-parallel (group models).
    pub chern_parallel_frame: bool,
    /// Componentwise quadratic BTP system, exact; evaluated only in a
    /// `∇ᶜ`-parallel frame.
    pub literal_btp: Option<Verdict>,
    /// Present only when `btp` holds.
    pub curvature_symmetries: Option<SymmetryReport>,
    pub float_checks: FloatChecks,
    /// Exact and floating BTP verdicts agree.
    pub paths_agree: bool,
    /// Frame relations hold within tolerance.
    pub frame_relations_hold: bool,
    #[serde(serialize_with = "sci")]
    pub tolerance: f64,
}

impl CheckReport {
    /// Failed top-level conditions that are expected to hold under `btp`.
    pub fn all_btp_consistency(&self) -> bool {
        self.paths_agree
            && self.frame_relations_hold
            && self.btp.holds == self.chern_torsion_parallel.holds
            && self.bas.as_ref().map(|v| v.holds) == self.chern_curvature_parallel.as_ref().map(|v| v.holds)
    }
}

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

pub fn check_conditions(model: &InfinitesimalModel) -> CheckReport {
    check_conditions_with(model, DEFAULT_TOLERANCE)
}

/// `(x,y,z) ↦ dω(Jx,Jy,Jz)`, the Bismut torsion 3-form.
pub fn j_d_omega(model: &InfinitesimalModel) -> Form3 {
    let n = model.dim();
    let dw = d_omega(model);
    let mut v = vec![Q::zero(); n * n * n];
    for a in 0..n {
        let ja = model.j().col(a);
        for b in 0..n {
            let jb = model.j().col(b);
            for c in 0..n {
                v[(a * n + b) * n + c] = dw.eval(ja, jb, model.j().col(c));
            }
        }
    }
    Form3 { n, v }
}

fn triple(w: Option<((usize, usize, usize), Q)>) -> Option<(Vec<usize>, String)> {
    w.map(|((a, b, c), x)| (vec![a, b, c], fmt_q(&x)))
}

fn torsion_trace(model: &InfinitesimalModel, t: &Torsion) -> Vec<Q> {
    let n = model.dim();
    (0..n).map(|a| (0..n).map(|b| t.basis(a, b).get(b)).sum()).collect()
}

fn derivative_verdict(model: &InfinitesimalModel, w: Option<(usize, usize, usize)>) -> Verdict {
    Verdict::from_basis(model, w.map(|(a, i, j)| (vec![a, i, j], "nonzero".to_string())))
}

fn curvature_witness(r: &Curvature, n: usize) -> Option<(Vec<usize>, String)> {
    for a in 0..n {
        for b in a + 1..n {
            let e = r.basis(a, b);
            if !e.is_zero() {
                return Some((vec![a, b], format!("max entry {}", fmt_q(&e.max_abs()))));
            }
        }
    }
    None
}

pub fn check_conditions_with(model: &InfinitesimalModel, tolerance: f64) -> CheckReport {
    let n = model.dim();
    let lc = levi_civita(model);
    let ch = chern_connection(model);
    let bi = bismut_connection(model);
    let tc = torsion(model, &ch);
    let tb = torsion(model, &bi);
    let rc = curvature(model, &ch);
    let rb = curvature(model, &bi);
    let dw = d_omega(model);
    let jdw = j_d_omega(model);
    let h = torsion_form(model, &tb);

    let kahler = Verdict::from_basis(model, triple(dw.first_nonzero()));
    let pluriclosed =
        Verdict::from_basis(model, d_form3_witness(model, &jdw).map(|(x, v)| (x.to_vec(), fmt_q(&v))));
    let chern_flat = Verdict::from_basis(model, curvature_witness(&rc, n));
    let bismut_flat = Verdict::from_basis(model, curvature_witness(&rb, n));
    let btp = derivative_verdict(model, torsion_derivative_witness(&bi, &tb));
    let chern_torsion_parallel = derivative_verdict(model, torsion_derivative_witness(&bi, &tc));
    let (bas, chern_curvature_parallel) = if btp.holds {
        (
            Some(derivative_verdict(model, curvature_derivative_witness(&bi, &rb))),
            Some(derivative_verdict(model, curvature_derivative_witness(&bi, &rc))),
        )
    } else {
        (None, None)
    };
    let naturally_reductive = Verdict::from_basis(model, triple(naturally_reductive_witness(model)));
    let bismut_torsion_skew = Verdict::from_basis(
        model,
        skew_torsion_witness(model, &tb).map(|(a, b, c)| (vec![a, b, c], fmt_q(&(h.get(a, b, c) + h.get(a, c, b))))),
    );

    let frame = ComplexFrame::new(model);
    let tau = frame.torsion_components(model, &tc);
    let eta = frame.eta(&tau);
    let theta = torsion_trace(model, &tc);
    let balanced = match eta.iter().position(|z| !z.is_zero()) {
        None => Verdict::pass(),
        Some(i) => Verdict::fail(vec![i], vec![format!("f{i}")], eta[i].render()),
    };
    let btp2 = Verdict::from_frame(frame.btp2_witness(&tau).map(|((i, j), d)| (vec![i, j], fmt_q(&d))));
    let chern_parallel_frame = frame.is_parallel(model, &ch);
    let literal_btp = chern_parallel_frame.then(|| {
        Verdict::from_frame(frame.literal_btp_witness(&tau).map(|((i, j, k, l), v)| (vec![i, j, k, l], v.render())))
    });
    let curvature_symmetries = btp.holds.then(|| frame.curvature_symmetries(model, &rb, &rc));
    let fc = float_checks(model, &frame, &lc, &ch, &bi, &tc, &tb, &rc, &rb);
    let bound = tolerance * (1.0 + fc.scale);
    let paths_agree = btp.holds == (fc.componentwise_btp <= bound);
    let frame_relations_hold = fc.bismut_torsion_relation <= bound
        && fc.bismut_connection_relation <= bound
        && fc.curvature_difference <= bound;

    CheckReport {
        model: model.name().to_string(),
        real_dim: n,
        kahler,
        balanced,
        pluriclosed,
        chern_flat,
        bismut_flat,
        btp,
        bas,
        naturally_reductive,
        chern_torsion_parallel,
        chern_curvature_parallel,
        bismut_torsion_skew,
        torsion_form_matches_d_omega: h == jdw,
        btp2,
        eta: eta.iter().map(Qi::render).collect(),
        torsion_trace: theta.iter().map(fmt_q).collect(),
        r_b: frame.b_tensor_rank(&tau),
        frame_norms: frame.norms.iter().map(fmt_q).collect(),
        chern_parallel_frame,
        literal_btp,
        curvature_symmetries,
        float_checks: fc,
        paths_agree,
        frame_relations_hold,
        tolerance,
    }
}

/// Re-evaluates a basis triple of the natural-reductivity expression.
pub fn naturally_reductive_value(model: &InfinitesimalModel, a: &SVec<Q>, b: &SVec<Q>, c: &SVec<Q>) -> Q {
    model.g_eval(&model.bracket_m_vec(a, b), c) + model.g_eval(b, &model.bracket_m_vec(a, c))
}
