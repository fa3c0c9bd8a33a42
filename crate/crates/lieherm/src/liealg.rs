//! Finite-dimensional Lie algebras as exact structure-constant tensors.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{inverse, nullspace, rank, rref, Acc, Endo, Mat, SVec};
use crate::rootsys::{ChevalleyData, RootId, RootSystem};
use crate::scalar::{Field, ScalarError, Q, Qi};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("basis index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("bracket of basis vector {0} with itself must vanish")]
    NonzeroDiagonal(usize),
    #[error("conflicting values for [x{0}, x{1}]")]
    Conflict(usize, usize),
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("change of basis is singular")]
    SingularBasisChange,
    #[error("structure constant of [x{0}, x{1}] is not real")]
    NotReal(usize, usize),
    #[error("metric is not positive definite")]
    DegenerateMetric,
    #[error("algebra is not reductive (center and derived algebra do not split)")]
    NotReductive,
    #[error("field marker {0:?} does not match the scalar type")]
    FieldMismatch(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("json: {0}")]
    Json(String),
}

/// Scalar fields that can tag serialized algebras.
pub trait FieldTag: Field {
    const NAME: &'static str;
    fn parse(text: &str) -> Result<Self, ScalarError>;
}

impl FieldTag for Q {
    const NAME: &'static str = "real";
    fn parse(text: &str) -> Result<Q, ScalarError> {
        crate::scalar::parse_q(text)
    }
}

impl FieldTag for Qi {
    const NAME: &'static str = "complex";
    fn parse(text: &str) -> Result<Qi, ScalarError> {
        text.parse()
    }
}

/// Lie algebra given by the adjoint matrices of its basis vectors:
/// column `j` of `ad[i]` is `[x_i, x_j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra<F> {
    labels: Vec<String>,
    ad: Vec<Endo<F>>,
}

/// Bilinear form on a basis.
#[derive(Clone, Debug, PartialEq)]
pub struct BilinearForm<F> {
    pub matrix: Mat<F>,
    pub symmetric: bool,
}

impl<F: Field> BilinearForm<F> {
    pub fn new(matrix: Mat<F>) -> Self {
        let n = matrix.len();
        let symmetric = (0..n).all(|i| (0..i).all(|j| matrix[i][j] == matrix[j][i]));
        BilinearForm { matrix, symmetric }
    }

    pub fn eval(&self, x: &SVec<F>, y: &SVec<F>) -> F {
        let mut s = F::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                s += a * self.matrix[i][j] * b;
            }
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(|x| x.is_zero())
    }

    pub fn is_nondegenerate(&self) -> bool {
        rank(&self.matrix) == self.matrix.len()
    }
}

impl<F: Field> LieAlgebra<F> {
    /// Builds an algebra from entries `(i, j, k, c)` meaning `c^k_{ij} = c`.
    /// Each unordered pair may be given in either order; the opposite order is
    /// filled in by antisymmetry.
    pub fn from_brackets(
        labels: Vec<String>,
        entries: impl IntoIterator<Item = (usize, usize, usize, F)>,
    ) -> Result<Self, AlgebraError> {
        let n = labels.len();
        let mut table: Vec<Vec<Vec<(usize, F)>>> = vec![vec![Vec::new(); n]; n];
        // Orientation in which each unordered pair was first given.
        let mut given: Vec<Vec<Option<bool>>> = vec![vec![None; n]; n];
        for (i, j, k, c) in entries {
            for idx in [i, j, k] {
                if idx >= n {
                    return Err(AlgebraError::IndexOutOfRange(idx));
                }
            }
            if i == j {
                if c.is_zero() {
                    continue;
                }
                return Err(AlgebraError::NonzeroDiagonal(i));
            }
            let (a, b, s) = if i < j { (i, j, c) } else { (j, i, -c) };
            match given[a][b] {
                Some(o) if o != (i < j) => return Err(AlgebraError::Conflict(i, j)),
                _ => given[a][b] = Some(i < j),
            }
            table[a][b].push((k, s));
        }
        let mut cols: Vec<Vec<SVec<F>>> = vec![vec![SVec::zero(); n]; n];
        for a in 0..n {
            for b in a + 1..n {
                let v = SVec::from_pairs(table[a][b].iter().copied());
                if !v.is_zero() {
                    cols[b][a] = v.neg();
                    cols[a][b] = v;
                }
            }
        }
        Ok(LieAlgebra { labels, ad: cols.into_iter().map(Endo::from_cols).collect() })
    }

    pub fn abelian(n: usize) -> Self {
        LieAlgebra {
            labels: (0..n).map(|i| format!("x{}", i + 1)).collect(),
            ad: vec![Endo::zero(n); n],
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, AlgebraError> {
        if labels.len() != self.dim() {
            return Err(AlgebraError::LabelCount { expected: self.dim(), got: labels.len() });
        }
        self.labels = labels;
        Ok(self)
    }

    /// `[x_i, x_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &SVec<F> {
        self.ad[i].col(j)
    }

    pub fn bracket(&self, x: &SVec<F>, y: &SVec<F>) -> SVec<F> {
        let mut acc = Acc::new(self.dim());
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                acc.add(a * b, self.ad[i].col(j));
            }
        }
        acc.finish()
    }

    pub fn ad_basis(&self, i: usize) -> &Endo<F> {
        &self.ad[i]
    }

    pub fn ad(&self, x: &SVec<F>) -> Endo<F> {
        crate::linalg::combine(&self.ad, x, self.dim())
    }

    /// Iterator over nonzero constants `(i, j, k, c^k_{ij})` with `i < j`.
    pub fn structure_constants(&self) -> impl Iterator<Item = (usize, usize, usize, F)> + '_ {
        let n = self.dim();
        (0..n).flat_map(move |i| {
            (i + 1..n).flat_map(move |j| self.ad[i].col(j).iter().map(move |(k, c)| (i, j, k, c)))
        })
    }

    /// Max-norm of the Jacobiator over basis triples with the first failing triple.
    pub fn jacobi_residual(&self) -> (Q, Option<(usize, usize, usize)>) {
        let n = self.dim();
        let mut worst = Q::zero();
        let mut witness = None;
        for i in 0..n {
            for j in i + 1..n {
                let xy = self.ad[i].col(j);
                for k in j + 1..n {
                    let a = self.bracket(xy, &SVec::unit(k));
                    let b = self.bracket(self.ad[j].col(k), &SVec::unit(i));
                    let c = self.bracket(self.ad[k].col(i), &SVec::unit(j));
                    let r = a.add(&b).add(&c).max_abs();
                    if r > worst {
                        worst = r;
                        witness.get_or_insert((i, j, k));
                    }
                }
            }
        }
        (worst, witness)
    }

    /// `B(x_i, x_j) = tr(ad x_i ∘ ad x_j)`.
    pub fn killing_form(&self) -> BilinearForm<F> {
        let n = self.dim();
        let mut m = vec![vec![F::zero(); n]; n];
        for i in 0..n {
            for j in i..n {
                let mut t = F::zero();
                for k in 0..n {
                    for (l, x) in self.ad[j].col(k).iter() {
                        let y = self.ad[i].entry(k, l);
                        if !y.is_zero() {
                            t += y * x;
                        }
                    }
                }
                m[i][j] = t;
                m[j][i] = t;
            }
        }
        BilinearForm::new(m)
    }

    /// First basis triple violating `B([x,y],z) + B(y,[x,z]) = 0`.
    pub fn ad_invariance_witness(&self, form: &BilinearForm<F>) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let a = form.eval(self.ad[i].col(j), &SVec::unit(k));
                    let b = form.eval(&SVec::unit(j), self.ad[i].col(k));
                    if !(a + b).is_zero() {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Basis of the center.
    pub fn center(&self) -> Vec<SVec<F>> {
        let n = self.dim();
        let rows: Mat<F> = self.ad.iter().flat_map(|a| a.to_dense()).collect();
        nullspace(&rows, n).iter().map(|v| SVec::from_dense(v)).collect()
    }

    /// Basis of the derived algebra `[g, g]`.
    pub fn derived(&self) -> Vec<SVec<F>> {
        let mut span = Span::new(self.dim());
        for (i, j, _, _) in self.structure_constants() {
            span.insert(self.ad[i].col(j));
        }
        span.basis()
    }

    /// Smallest ideal containing `gens`.
    pub fn ideal_closure(&self, gens: &[SVec<F>]) -> Vec<SVec<F>> {
        let mut span = Span::new(self.dim());
        let mut frontier: Vec<SVec<F>> = gens.iter().filter_map(|v| span.insert(v)).collect();
        while let Some(v) = frontier.pop() {
            for i in 0..self.dim() {
                let w = self.ad[i].apply(&v);
                if let Some(r) = span.insert(&w) {
                    frontier.push(r);
                }
            }
        }
        span.basis()
    }

    /// Same algebra in the basis whose `a`-th vector is column `a` of `p`.
    pub fn change_basis(&self, p: &Mat<F>, labels: Vec<String>) -> Result<Self, AlgebraError> {
        let n = self.dim();
        if labels.len() != n {
            return Err(AlgebraError::LabelCount { expected: n, got: labels.len() });
        }
        let pinv = inverse(p).ok_or(AlgebraError::SingularBasisChange)?;
        let pinv = Endo::from_dense(&pinv);
        let new: Vec<SVec<F>> = (0..n).map(|a| SVec::from_pairs((0..n).map(|i| (i, p[i][a])))).collect();
        let mut entries = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let c = pinv.apply(&self.bracket(&new[a], &new[b]));
                entries.extend(c.iter().map(|(k, x)| (a, b, k, x)));
            }
        }
        LieAlgebra::from_brackets(labels, entries)
    }

    /// Direct sum; the basis of `other` follows that of `self`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (n, m) = (self.dim(), other.dim());
        let shift = |v: &SVec<F>, s: usize| SVec::from_pairs(v.iter().map(|(i, x)| (i + s, x)));
        let mut ad = Vec::with_capacity(n + m);
        for a in &self.ad {
            let mut cols: Vec<SVec<F>> = (0..n).map(|j| a.col(j).clone()).collect();
            cols.extend((0..m).map(|_| SVec::zero()));
            ad.push(Endo::from_cols(cols));
        }
        for a in &other.ad {
            let mut cols: Vec<SVec<F>> = (0..n).map(|_| SVec::zero()).collect();
            cols.extend((0..m).map(|j| shift(a.col(j), n)));
            ad.push(Endo::from_cols(cols));
        }
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        LieAlgebra { labels, ad }
    }

    pub fn map_scalars<G: Field>(&self, f: impl Fn(F) -> G + Copy) -> LieAlgebra<G> {
        LieAlgebra { labels: self.labels.clone(), ad: self.ad.iter().map(|a| a.map(f)).collect() }
    }
}

/// Incrementally maintained fully reduced echelon basis.
struct Span<F> {
    n: usize,
    rows: Vec<(usize, SVec<F>)>,
}

impl<F: Field> Span<F> {
    fn new(n: usize) -> Self {
        Span { n, rows: Vec::new() }
    }

    fn reduce(&self, v: &SVec<F>) -> SVec<F> {
        let mut v = v.clone();
        for (p, r) in &self.rows {
            let c = v.get(*p);
            if !c.is_zero() {
                v = v.add_scaled(-c, r);
            }
        }
        v
    }

    /// Inserts `v`; returns the new reduced row when `v` was independent.
    fn insert(&mut self, v: &SVec<F>) -> Option<SVec<F>> {
        let w = self.reduce(v);
        let (p, lead) = w.iter().next()?;
        let w = w.scale(F::one() / lead);
        for (_, r) in self.rows.iter_mut() {
            let c = r.get(p);
            if !c.is_zero() {
                *r = r.add_scaled(-c, &w);
            }
        }
        self.rows.push((p, w.clone()));
        Some(w)
    }

    fn basis(&self) -> Vec<SVec<F>> {
        let mut rows = self.rows.clone();
        rows.sort_by_key(|r| r.0);
        rows.into_iter().map(|r| r.1).collect()
    }

    #[allow(dead_code)]
    fn dim(&self) -> usize {
        debug_assert!(self.rows.len() <= self.n);
        self.rows.len()
    }
}

/// Coordinates of `v` in a fully reduced echelon basis, `None` if `v` lies outside.
fn coords_in<F: Field>(basis: &[SVec<F>], v: &SVec<F>) -> Option<Vec<F>> {
    let mut rest = v.clone();
    let mut c = Vec::with_capacity(basis.len());
    for b in basis {
        let (p, _) = b.iter().next()?;
        let x = rest.get(p);
        rest = rest.add_scaled(-x, b);
        c.push(x);
    }
    rest.is_zero().then_some(c)
}

fn echelon<F: Field>(vs: &[SVec<F>], n: usize) -> Vec<SVec<F>> {
    let mut m: Mat<F> = vs.iter().map(|v| v.to_dense(n)).collect();
    let k = rref(&mut m).len();
    m.truncate(k);
    m.iter().map(|r| SVec::from_dense(r)).collect()
}

/// One factor of an ideal decomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct Ideal<F> {
    pub basis: Vec<SVec<F>>,
    /// Centroid test: true when the ideal admits no proper nonzero ideal.
    pub simple: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdealSplit<F> {
    pub center: Vec<SVec<F>>,
    pub ideals: Vec<Ideal<F>>,
    /// Factors (center included) are pairwise orthogonal for the metric.
    pub metric_orthogonal: bool,
}

/// Decomposes a reductive algebra into its center and ideals that are
/// orthogonal for the Killing form, then reports metric orthogonality.
pub fn orthogonal_ideal_split<F: Field>(
    alg: &LieAlgebra<F>,
    metric: &Mat<F>,
) -> Result<IdealSplit<F>, AlgebraError> {
    let n = alg.dim();
    if metric.len() != n
        || !crate::linalg::is_hermitian(metric)
        || !crate::linalg::is_positive_definite(metric)
    {
        return Err(AlgebraError::DegenerateMetric);
    }
    let center = echelon(&alg.center(), n);
    let derived = alg.derived();
    let mut union = center.clone();
    union.extend(derived.iter().cloned());
    if center.len() + derived.len() != n || echelon(&union, n).len() != n {
        return Err(AlgebraError::NotReductive);
    }
    let killing = alg.killing_form();
    let mut pieces: Vec<Vec<SVec<F>>> = if derived.is_empty() { vec![] } else { vec![derived] };
    loop {
        let mut changed = false;
        'outer: for idx in 0..pieces.len() {
            for gen in pieces[idx].clone() {
                let sub = alg.ideal_closure(std::slice::from_ref(&gen));
                if sub.len() < pieces[idx].len() {
                    let rest = orthogonal_within(&killing, &pieces[idx], &sub, n);
                    pieces[idx] = sub;
                    pieces.push(rest);
                    changed = true;
                    break 'outer;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let ideals: Vec<Ideal<F>> = pieces
        .into_iter()
        .map(|basis| {
            let simple = centroid_is_field(alg, &basis);
            Ideal { basis, simple }
        })
        .collect();
    let mut factors: Vec<&Vec<SVec<F>>> = ideals.iter().map(|i| &i.basis).collect();
    factors.push(&center);
    let form = BilinearForm::new(metric.clone());
    let metric_orthogonal = factors.iter().enumerate().all(|(a, fa)| {
        factors.iter().skip(a + 1).all(|fb| {
            fa.iter().all(|x| fb.iter().all(|y| form.eval(x, &y.conj()).is_zero()))
        })
    });
    Ok(IdealSplit { center, ideals, metric_orthogonal })
}

fn orthogonal_within<F: Field>(
    b: &BilinearForm<F>,
    whole: &[SVec<F>],
    part: &[SVec<F>],
    n: usize,
) -> Vec<SVec<F>> {
    let m: Mat<F> = part.iter().map(|y| whole.iter().map(|x| b.eval(x, y)).collect()).collect();
    let null = nullspace(&m, whole.len());
    let vs: Vec<SVec<F>> = null
        .iter()
        .map(|c| {
            let mut acc = Acc::new(n);
            for (x, &k) in whole.iter().zip(c) {
                acc.add(k, x);
            }
            acc.finish()
        })
        .collect();
    echelon(&vs, n)
}

/// An ideal is simple iff its centroid (maps commuting with all
/// adjoints) is a field: dimension 1, or dimension 2 without a square root of
/// the discriminant.
fn centroid_is_field<F: Field>(alg: &LieAlgebra<F>, basis: &[SVec<F>]) -> bool {
    let d = basis.len();
    if d == 0 {
        return false;
    }
    let gens = generators(alg, basis);
    let restrict = |y: &SVec<F>| -> Mat<F> {
        let cols: Vec<Vec<F>> =
            basis.iter().map(|b| coords_in(basis, &alg.bracket(y, b)).expect("ideal is ad-stable")).collect();
        (0..d).map(|r| (0..d).map(|p| cols[p][r]).collect()).collect()
    };
    // Commutant computed generator by generator inside the running solution space.
    let mut sols: Vec<Vec<F>> = (0..d * d)
        .map(|k| (0..d * d).map(|l| if k == l { F::one() } else { F::zero() }).collect())
        .collect();
    for y in &gens {
        let a = restrict(y);
        let mut rows: Mat<F> = Vec::new();
        for r in 0..d {
            for p in 0..d {
                let row: Vec<F> = sols
                    .iter()
                    .map(|t| {
                        let mut s = F::zero();
                        for k in 0..d {
                            s += t[r * d + k] * a[k][p] - a[r][k] * t[k * d + p];
                        }
                        s
                    })
                    .collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        let null = nullspace(&rows, sols.len());
        sols = null
            .iter()
            .map(|c| {
                let mut t = vec![F::zero(); d * d];
                for (coef, s) in c.iter().zip(&sols) {
                    if !coef.is_zero() {
                        for (x, y) in t.iter_mut().zip(s) {
                            *x += *coef * *y;
                        }
                    }
                }
                t
            })
            .collect();
        if sols.len() <= 1 {
            break;
        }
    }
    match sols.len() {
        1 => true,
        2 => {
            // Pick the non-scalar element T and write T² = a·I + b·T.
            let ident: Vec<F> = (0..d * d).map(|k| if k / d == k % d { F::one() } else { F::zero() }).collect();
            let t = sols.iter().find(|s| !is_multiple(s, &ident)).expect("two-dimensional centroid");
            let mut t2 = vec![F::zero(); d * d];
            for r in 0..d {
                for p in 0..d {
                    for k in 0..d {
                        t2[r * d + p] += t[r * d + k] * t[k * d + p];
                    }
                }
            }
            let m: Mat<F> = (0..d * d).map(|k| vec![ident[k], t[k]]).collect();
            let Some(ab) = crate::linalg::solve(&m, &t2) else { return false };
            let disc = ab[1] * ab[1] + F::from(Q::from_integer(4)) * ab[0];
            disc.sqrt_exact().is_none()
        }
        _ => false,
    }
}

fn is_multiple<F: Field>(a: &[F], b: &[F]) -> bool {
    let Some(k) = b.iter().position(|x| !x.is_zero()) else { return false };
    let c = a[k] / b[k];
    a.iter().zip(b).all(|(x, y)| *x == c * *y)
}

/// A small generating set of the subalgebra spanned by `basis`.
fn generators<F: Field>(alg: &LieAlgebra<F>, basis: &[SVec<F>]) -> Vec<SVec<F>> {
    let n = alg.dim();
    let mut gens: Vec<SVec<F>> = Vec::new();
    let mut generated = Span::new(n);
    for b in basis {
        if generated.reduce(b).is_zero() {
            continue;
        }
        gens.push(b.clone());
        generated = Span::new(n);
        let mut frontier: Vec<SVec<F>> = gens.iter().filter_map(|g| generated.insert(g)).collect();
        let mut all: Vec<SVec<F>> = frontier.clone();
        while let Some(v) = frontier.pop() {
            for w in all.clone() {
                if let Some(r) = generated.insert(&alg.bracket(&v, &w)) {
                    frontier.push(r.clone());
                    all.push(r);
                }
            }
        }
    }
    gens
}

/// Complexification: same structure constants over the Gaussian rationals.
pub fn complexify(alg: &LieAlgebra<Q>) -> LieAlgebra<Qi> {
    alg.map_scalars(Qi::from)
}

/// Underlying real algebra with basis `x_1, …, x_n, i·x_1, …, i·x_n` and the
/// complex structure `J` given by multiplication by `i`.
pub fn realify(alg: &LieAlgebra<Qi>) -> (LieAlgebra<Q>, Endo<Q>) {
    let n = alg.dim();
    let mut entries = Vec::new();
    // [i^a x_p, i^b x_q] = i^{a+b} Σ c^k x_k with c = re + i·im.
    for a in 0..2usize {
        for b in 0..2usize {
            for p in 0..n {
                for qq in 0..n {
                    let (u, v) = (p + a * n, qq + b * n);
                    if u >= v {
                        continue;
                    }
                    for (k, c) in alg.bracket_basis(p, qq).iter() {
                        let mut z = c;
                        if a + b >= 1 {
                            z *= Qi::i();
                        }
                        if a + b == 2 {
                            z *= Qi::i();
                        }
                        if !z.re.is_zero() {
                            entries.push((u, v, k, z.re));
                        }
                        if !z.im.is_zero() {
                            entries.push((u, v, k + n, z.im));
                        }
                    }
                }
            }
        }
    }
    let mut labels: Vec<String> = alg.labels().to_vec();
    labels.extend(alg.labels().iter().map(|l| format!("i{l}")));
    let real = LieAlgebra::from_brackets(labels, entries).expect("realification is well formed");
    let cols = (0..2 * n)
        .map(|j| if j < n { SVec::unit(j + n) } else { SVec::unit(j - n).neg() })
        .collect();
    (real, Endo::from_cols(cols))
}

/// Real algebra with the same constants, when all of them are real.
pub fn real_part_exact(alg: &LieAlgebra<Qi>) -> Result<LieAlgebra<Q>, AlgebraError> {
    let mut entries = Vec::new();
    for (i, j, k, c) in alg.structure_constants() {
        if !c.is_real() {
            return Err(AlgebraError::NotReal(i, j));
        }
        entries.push((i, j, k, c.re));
    }
    LieAlgebra::from_brackets(alg.labels().to_vec(), entries)
}

fn root_label(rs: &RootSystem, prefix: &str, id: RootId) -> String {
    format!("{prefix}{}", rs.root(id))
}

/// Chevalley basis `h_1, …, h_r, e_α (α ∈ R in root-system order)`.
pub fn chevalley_algebra(rs: &RootSystem, ch: &ChevalleyData) -> LieAlgebra<Q> {
    let r = rs.rank();
    let e = |id: RootId| r + id;
    let mut labels: Vec<String> = (1..=r).map(|j| format!("h{j}")).collect();
    labels.extend((0..rs.len()).map(|id| root_label(rs, "e", id)));
    let mut entries = Vec::new();
    for j in 0..r {
        for id in 0..rs.len() {
            let v = rs.eval_on_coroot(id, j);
            entries.push((j, e(id), e(id), Q::from_integer(v as i128)));
        }
    }
    for a in rs.positive_ids() {
        let na = rs.neg(a);
        for (j, &c) in ch.coroot(a).iter().enumerate() {
            entries.push((e(a), e(na), j, Q::from_integer(c as i128)));
        }
    }
    for ((a, b), n) in ch.nonzero() {
        if a < b {
            let s = rs.sum(a, b).expect("nonzero constant implies root sum");
            entries.push((e(a), e(b), e(s), Q::from_integer(n as i128)));
        }
    }
    LieAlgebra::from_brackets(labels, entries).expect("Chevalley table is well formed")
}

/// Compact real form with basis `t_j = i h_j`, then for each positive root
/// `v_α = e_α − e_{−α}`, `w_α = i(e_α + e_{−α})`.
#[derive(Clone, Debug)]
pub struct CompactForm {
    pub algebra: LieAlgebra<Q>,
    rank: usize,
}

impl CompactForm {
    pub fn t(&self, j: usize) -> usize {
        j
    }
    /// Index of `v_α` for a positive root id.
    pub fn v(&self, alpha: RootId) -> usize {
        self.rank + 2 * alpha
    }
    pub fn w(&self, alpha: RootId) -> usize {
        self.rank + 2 * alpha + 1
    }
    pub fn rank(&self) -> usize {
        self.rank
    }
    /// Coordinates of the Chevalley vectors over the compact basis, as
    /// complex combinations: `e_α = ½(v_α − i w_α)`, `e_{−α} = −½(v_α + i w_α)`,
    /// `h_j = −i t_j`.
    pub fn chevalley_vector(&self, rs: &RootSystem, chev_index: usize) -> SVec<Qi> {
        let half = Q::new(1, 2);
        if chev_index < self.rank {
            return SVec::from_pairs([(chev_index, -Qi::i())]);
        }
        let id = chev_index - self.rank;
        if rs.is_positive(id) {
            SVec::from_pairs([(self.v(id), Qi::real(half)), (self.w(id), Qi::new(Q::zero(), -half))])
        } else {
            let p = rs.neg(id);
            SVec::from_pairs([(self.v(p), Qi::real(-half)), (self.w(p), Qi::new(Q::zero(), -half))])
        }
    }
}

pub fn compact_real_form(rs: &RootSystem, ch: &ChevalleyData) -> CompactForm {
    let r = rs.rank();
    let chev = complexify(&chevalley_algebra(rs, ch));
    let n = chev.dim();
    let mut p = vec![vec![Qi::zero(); n]; n];
    let mut labels: Vec<String> = (1..=r).map(|j| format!("t{j}")).collect();
    for j in 0..r {
        p[j][j] = Qi::i();
    }
    for a in rs.positive_ids() {
        let (ea, ena) = (r + a, r + rs.neg(a));
        let (cv, cw) = (r + 2 * a, r + 2 * a + 1);
        p[ea][cv] = Qi::one();
        p[ena][cv] = -Qi::one();
        p[ea][cw] = Qi::i();
        p[ena][cw] = Qi::i();
        labels.push(root_label(rs, "v", a));
        labels.push(root_label(rs, "w", a));
    }
    let alg = chev.change_basis(&p, labels).expect("compact basis is invertible");
    CompactForm { algebra: real_part_exact(&alg).expect("compact form constants are real"), rank: r }
}

#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    dim: usize,
    labels: Vec<String>,
    bracket: Vec<(usize, usize, usize, String)>,
    field: String,
}

impl<F: FieldTag> LieAlgebra<F> {
    pub fn to_json(&self) -> String {
        let j = AlgebraJson {
            dim: self.dim(),
            labels: self.labels.clone(),
            bracket: self.structure_constants().map(|(i, j, k, c)| (i, j, k, c.render())).collect(),
            field: F::NAME.to_string(),
        };
        serde_json::to_string(&j).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, AlgebraError> {
        let j: AlgebraJson = serde_json::from_str(text).map_err(|e| AlgebraError::Json(e.to_string()))?;
        if j.field != F::NAME {
            return Err(AlgebraError::FieldMismatch(j.field));
        }
        if j.labels.len() != j.dim {
            return Err(AlgebraError::LabelCount { expected: j.dim, got: j.labels.len() });
        }
        let mut entries = Vec::with_capacity(j.bracket.len());
        for (a, b, c, s) in j.bracket {
            entries.push((a, b, c, F::parse(&s)?));
        }
        LieAlgebra::from_brackets(j.labels, entries)
    }
}

impl<F: Field> fmt::Display for LieAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Lie algebra of dimension {}", self.dim())?;
        for (i, j, k, c) in self.structure_constants() {
            writeln!(f, "  [{}, {}] ∋ {} {}", self.labels[i], self.labels[j], c.render(), self.labels[k])?;
        }
        Ok(())
    }
}

/// `so(3)` with `[x_1, x_2] = x_3` and cyclic permutations.
pub fn so3() -> LieAlgebra<Q> {
    let one = Q::one();
    LieAlgebra::from_brackets(
        vec!["x1".into(), "x2".into(), "x3".into()],
        [(0, 1, 2, one), (1, 2, 0, one), (2, 0, 1, one)],
    )
    .expect("so(3)")
}

/// Heisenberg algebra `[x, y] = z`.
pub fn heisenberg() -> LieAlgebra<Q> {
    LieAlgebra::from_brackets(vec!["x".into(), "y".into(), "z".into()], [(0, 1, 2, Q::one())])
        .expect("heisenberg")
}

/// `sl(2, ℂ)` in the basis `h, e, f`.
pub fn sl2() -> LieAlgebra<Qi> {
    let c = |n: i128| Qi::real(Q::from_integer(n));
    LieAlgebra::from_brackets(
        vec!["h".into(), "e".into(), "f".into()],
        [(0, 1, 1, c(2)), (0, 2, 2, c(-2)), (1, 2, 0, c(1))],
    )
    .expect("sl(2)")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{is_positive_definite, mat_identity};
    use crate::rootsys::{build_root_system, chevalley_constants};
    use crate::scalar::q;

    fn compact(t: &str) -> CompactForm {
        let rs = build_root_system(t.parse().unwrap());
        let ch = chevalley_constants(&rs);
        compact_real_form(&rs, &ch)
    }

    /// Independent double trace via dense matrices.
    fn dense_killing(alg: &LieAlgebra<Q>) -> Mat<Q> {
        let ads: Vec<Mat<Q>> = (0..alg.dim()).map(|i| alg.ad_basis(i).to_dense()).collect();
        let n = alg.dim();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let m = crate::linalg::mat_mul(&ads[i], &ads[j]);
                        (0..n).map(|k| m[k][k]).sum()
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn jacobi_on_standard_examples() {
        assert_eq!(so3().jacobi_residual().0, q(0));
        assert_eq!(heisenberg().jacobi_residual().0, q(0));
        let one = Q::one();
        // Rescaling a diagonal constant keeps a Lie algebra.
        let rescaled = LieAlgebra::from_brackets(
            vec!["x1".into(), "x2".into(), "x3".into()],
            [(0, 1, 2, q(2)), (1, 2, 0, one), (2, 0, 1, one)],
        )
        .unwrap();
        assert_eq!(rescaled.jacobi_residual().0, q(0));
        // [x1,x2] = x3 + 2x1: the Jacobiator on (x1,x2,x3) is 2[x1,x3] = −2x2.
        let bad = LieAlgebra::from_brackets(
            vec!["x1".into(), "x2".into(), "x3".into()],
            [(0, 1, 2, one), (0, 1, 0, q(2)), (1, 2, 0, one), (2, 0, 1, one)],
        )
        .unwrap();
        assert_eq!(bad.jacobi_residual(), (q(2), Some((0, 1, 2))));
    }

    #[test]
    fn killing_forms_of_small_algebras() {
        let so = so3();
        let b = so.killing_form();
        assert_eq!(b.matrix, dense_killing(&so));
        assert_eq!(b.matrix, crate::linalg::mat_identity::<Q>(3).iter().map(|r| r.iter().map(|x| *x * q(-2)).collect()).collect::<Mat<Q>>());
        assert!(heisenberg().killing_form().is_zero());
        assert!(LieAlgebra::<Q>::abelian(4).killing_form().is_zero());
        assert!(so.ad_invariance_witness(&b).is_none());
    }

    #[test]
    fn rejects_malformed_tables() {
        let labels = || vec!["a".to_string(), "b".to_string()];
        assert!(matches!(
            LieAlgebra::from_brackets(labels(), [(0, 0, 1, q(1))]),
            Err(AlgebraError::NonzeroDiagonal(0))
        ));
        assert!(matches!(
            LieAlgebra::from_brackets(labels(), [(0, 1, 1, q(1)), (1, 0, 1, q(1))]),
            Err(AlgebraError::Conflict(1, 0))
        ));
        assert!(matches!(
            LieAlgebra::from_brackets(labels(), [(0, 5, 1, q(1))]),
            Err(AlgebraError::IndexOutOfRange(5))
        ));
    }

    #[test]
    fn compact_forms_are_negative_definite() {
        for t in ["A1", "A2", "B2", "G2", "A3"] {
            let c = compact(t);
            let alg = &c.algebra;
            assert_eq!(alg.jacobi_residual().0, q(0), "{t}");
            let b = alg.killing_form();
            assert_eq!(b.matrix, dense_killing(alg), "{t}");
            let neg: Mat<Q> = b.matrix.iter().map(|r| r.iter().map(|x| -*x).collect()).collect();
            assert!(is_positive_definite(&neg), "{t}");
            assert!(alg.ad_invariance_witness(&b).is_none(), "{t}");
        }
        assert_eq!(compact("A2").algebra.dim(), 8);
    }

    #[test]
    fn compact_basis_norms_match_weyl_dictionary() {
        // −B(v_α, v_α) = 2·s_α²: the Killing metric has g_α = 1 on Weyl vectors.
        for t in ["A2", "B2", "G2"] {
            let rs = build_root_system(t.parse().unwrap());
            let ch = chevalley_constants(&rs);
            let c = compact_real_form(&rs, &ch);
            let b = c.algebra.killing_form();
            for a in rs.positive_ids() {
                let s2 = crate::rootsys::weyl_scale_sq(&rs, a);
                assert_eq!(-b.matrix[c.v(a)][c.v(a)], q(2) * s2, "{t}");
                assert_eq!(b.matrix[c.v(a)][c.w(a)], q(0));
                assert_eq!(b.matrix[c.v(a)][c.v(a)], b.matrix[c.w(a)][c.w(a)]);
            }
        }
    }

    #[test]
    fn compact_brackets_follow_root_data() {
        let rs = build_root_system("A2".parse().unwrap());
        let ch = chevalley_constants(&rs);
        let c = compact_real_form(&rs, &ch);
        for j in 0..rs.rank() {
            for a in rs.positive_ids() {
                let k = q(rs.eval_on_coroot(a, j) as i128);
                assert_eq!(*c.algebra.bracket_basis(c.t(j), c.v(a)), SVec::unit(c.w(a)).scale(k));
                assert_eq!(*c.algebra.bracket_basis(c.t(j), c.w(a)), SVec::unit(c.v(a)).scale(-k));
            }
        }
        // [v_α, w_α] = 2 t_α.
        for a in rs.positive_ids() {
            let t: SVec<Q> = SVec::from_pairs(
                ch.coroot(a).iter().enumerate().map(|(j, &x)| (j, q(2 * x as i128))),
            );
            assert_eq!(*c.algebra.bracket_basis(c.v(a), c.w(a)), t);
        }
    }

    #[test]
    fn complexified_su2_is_sl2() {
        let c = compact("A1");
        let su2c = complexify(&c.algebra);
        // h = −i t, e = ½(v − i w), f = −½(v + i w).
        let half = Q::new(1, 2);
        let p = vec![
            vec![-Qi::i(), Qi::zero(), Qi::zero()],
            vec![Qi::zero(), Qi::real(half), Qi::real(-half)],
            vec![Qi::zero(), Qi::new(q(0), -half), Qi::new(q(0), -half)],
        ];
        let back = su2c.change_basis(&p, vec!["h".into(), "e".into(), "f".into()]).unwrap();
        assert_eq!(back, sl2());
    }

    #[test]
    fn realify_doubles_dimension_and_j_is_complex() {
        let (r, j) = realify(&sl2());
        assert_eq!(r.dim(), 6);
        assert_eq!(r.jacobi_residual().0, q(0));
        let minus_id = Endo::identity(6).scale(q(-1));
        assert_eq!(j.compose(&j), minus_id);
        // [Jx, y] = J[x, y].
        for a in 0..6 {
            for b in 0..6 {
                let lhs = r.bracket(j.col(a), &SVec::unit(b));
                assert_eq!(lhs, j.apply(r.bracket_basis(a, b)));
            }
        }
        let c = compact("A2");
        assert_eq!(realify(&complexify(&c.algebra)).0.dim(), 16);
    }

    #[test]
    fn ideal_split_examples() {
        let ab = LieAlgebra::<Qi>::abelian(2);
        let s = orthogonal_ideal_split(&ab, &mat_identity(2)).unwrap();
        assert_eq!(s.center.len(), 2);
        assert!(s.ideals.is_empty());

        let sum = sl2().direct_sum(&LieAlgebra::abelian(1));
        let s = orthogonal_ideal_split(&sum, &mat_identity(4)).unwrap();
        assert_eq!(s.center, vec![SVec::unit(3)]);
        assert_eq!(s.ideals.len(), 1);
        assert_eq!(s.ideals[0].basis.len(), 3);
        assert!(s.ideals[0].simple);
        assert!(s.metric_orthogonal);

        let s = orthogonal_ideal_split(&sl2(), &mat_identity(3)).unwrap();
        assert_eq!(s.ideals.len(), 1);
        assert!(s.ideals[0].simple);

        let mut bad = mat_identity::<Qi>(3);
        bad[2][2] = Qi::zero();
        assert_eq!(orthogonal_ideal_split(&sl2(), &bad), Err(AlgebraError::DegenerateMetric));
        assert_eq!(
            orthogonal_ideal_split(&heisenberg(), &mat_identity(3)),
            Err(AlgebraError::NotReductive)
        );
    }

    #[test]
    fn split_separates_two_simple_factors() {
        let a = compact("A1").algebra;
        let two = a.direct_sum(&a);
        let s = orthogonal_ideal_split(&two, &mat_identity(6)).unwrap();
        assert_eq!(s.ideals.len(), 2);
        assert!(s.ideals.iter().all(|i| i.simple && i.basis.len() == 3));
        for x in &s.ideals[0].basis {
            for y in &s.ideals[1].basis {
                assert!(two.bracket(x, y).is_zero());
            }
        }
    }

    #[test]
    fn realified_sl2_is_simple_over_the_reals() {
        let (r, _) = realify(&sl2());
        let s = orthogonal_ideal_split(&r, &mat_identity(6)).unwrap();
        assert_eq!(s.ideals.len(), 1);
        assert!(s.ideals[0].simple);
    }

    #[test]
    fn json_round_trip() {
        let c = compact("B2").algebra;
        let back = LieAlgebra::<Q>::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        let s = sl2();
        assert_eq!(LieAlgebra::<Qi>::from_json(&s.to_json()).unwrap(), s);
        assert!(matches!(LieAlgebra::<Qi>::from_json(&c.to_json()), Err(AlgebraError::FieldMismatch(_))));
        let broken = r#"{"dim":2,"labels":["a","b"],"bracket":[[0,1,1,"1/0"]],"field":"real"}"#;
        assert!(matches!(LieAlgebra::<Q>::from_json(broken), Err(AlgebraError::Scalar(_))));
    }

    #[test]
    fn center_and_derived() {
        let h = heisenberg();
        assert_eq!(h.center(), vec![SVec::unit(2)]);
        assert_eq!(h.derived(), vec![SVec::unit(2)]);
        assert!(so3().center().is_empty());
    }
}
