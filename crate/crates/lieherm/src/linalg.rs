//! Sparse vectors, sparse endomorphisms and dense exact elimination.

use crate::scalar::{Field, Q};
use num_traits::Zero;

/// Sparse vector: entries sorted by index, no stored zeros.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct SVec<F> {
    entries: Vec<(usize, F)>,
}

impl<F: Field> SVec<F> {
    pub fn zero() -> Self {
        SVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SVec { entries: vec![(i, F::one())] }
    }

    pub fn from_dense(v: &[F]) -> Self {
        SVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, *x))
                .collect(),
        }
    }

    /// Builds from unsorted pairs, summing duplicates.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, F)>) -> Self {
        let mut v: Vec<(usize, F)> = pairs.into_iter().collect();
        v.sort_by_key(|p| p.0);
        let mut out: Vec<(usize, F)> = Vec::with_capacity(v.len());
        for (i, x) in v {
            match out.last_mut() {
                Some((j, y)) if *j == i => *y += x,
                _ => out.push((i, x)),
            }
        }
        out.retain(|(_, x)| !x.is_zero());
        SVec { entries: out }
    }

    pub fn to_dense(&self, n: usize) -> Vec<F> {
        let mut d = vec![F::zero(); n];
        for &(i, x) in &self.entries {
            d[i] = x;
        }
        d
    }

    pub fn get(&self, i: usize) -> F {
        match self.entries.binary_search_by_key(&i, |p| p.0) {
            Ok(k) => self.entries[k].1,
            Err(_) => F::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, F)> + '_ {
        self.entries.iter().copied()
    }

    pub fn scale(&self, c: F) -> Self {
        if c.is_zero() {
            return SVec::zero();
        }
        SVec { entries: self.entries.iter().map(|&(i, x)| (i, x * c)).collect() }
    }

    pub fn neg(&self) -> Self {
        SVec { entries: self.entries.iter().map(|&(i, x)| (i, -x)).collect() }
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, c: F, other: &Self) -> Self {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i >= a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, b[j].1 * c));
                j += 1;
            } else {
                let s = a[i].1 + b[j].1 * c;
                if !s.is_zero() {
                    out.push((a[i].0, s));
                }
                i += 1;
                j += 1;
            }
        }
        SVec { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(F::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(-F::one(), other)
    }

    pub fn map<G: Field>(&self, f: impl Fn(F) -> G) -> SVec<G> {
        SVec::from_pairs(self.entries.iter().map(|&(i, x)| (i, f(x))))
    }

    pub fn conj(&self) -> Self {
        SVec { entries: self.entries.iter().map(|&(i, x)| (i, x.conj())).collect() }
    }

    /// Largest absolute coordinate.
    pub fn max_abs(&self) -> Q {
        self.entries.iter().map(|(_, x)| x.max_abs()).fold(Q::zero(), |a, b| a.max(b))
    }
}

/// Dense accumulator for sums of many sparse vectors.
pub struct Acc<F> {
    dense: Vec<F>,
}

impl<F: Field> Acc<F> {
    pub fn new(n: usize) -> Self {
        Acc { dense: vec![F::zero(); n] }
    }
    pub fn add(&mut self, c: F, v: &SVec<F>) {
        if c.is_zero() {
            return;
        }
        for (i, x) in v.iter() {
            self.dense[i] += c * x;
        }
    }
    pub fn add_at(&mut self, i: usize, x: F) {
        self.dense[i] += x;
    }
    pub fn finish(self) -> SVec<F> {
        SVec::from_dense(&self.dense)
    }
}

/// Sparse endomorphism of an `n`-dimensional space, stored by columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Endo<F> {
    cols: Vec<SVec<F>>,
}

impl<F: Field> Endo<F> {
    pub fn zero(n: usize) -> Self {
        Endo { cols: vec![SVec::zero(); n] }
    }

    pub fn identity(n: usize) -> Self {
        Endo { cols: (0..n).map(SVec::unit).collect() }
    }

    pub fn from_cols(cols: Vec<SVec<F>>) -> Self {
        Endo { cols }
    }

    pub fn from_dense(m: &[Vec<F>]) -> Self {
        let n = m.len();
        Endo {
            cols: (0..n)
                .map(|j| SVec::from_pairs((0..n).map(|i| (i, m[i][j]))))
                .collect(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        let n = self.dim();
        let mut m = vec![vec![F::zero(); n]; n];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c.iter() {
                m[i][j] = x;
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn col(&self, j: usize) -> &SVec<F> {
        &self.cols[j]
    }

    pub fn entry(&self, i: usize, j: usize) -> F {
        self.cols[j].get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    pub fn apply(&self, v: &SVec<F>) -> SVec<F> {
        let mut acc = Acc::new(self.dim());
        for (j, x) in v.iter() {
            acc.add(x, &self.cols[j]);
        }
        acc.finish()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Endo { cols: other.cols.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.compose(other).sub(&other.compose(self))
    }

    pub fn add_scaled(&self, c: F, other: &Self) -> Self {
        Endo {
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.add_scaled(c, b)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(F::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(-F::one(), other)
    }

    pub fn scale(&self, c: F) -> Self {
        Endo { cols: self.cols.iter().map(|v| v.scale(c)).collect() }
    }

    pub fn trace(&self) -> F {
        let mut t = F::zero();
        for (j, c) in self.cols.iter().enumerate() {
            t += c.get(j);
        }
        t
    }

    pub fn map<G: Field>(&self, f: impl Fn(F) -> G + Copy) -> Endo<G> {
        Endo { cols: self.cols.iter().map(|c| c.map(f)).collect() }
    }

    pub fn max_abs(&self) -> Q {
        self.cols.iter().map(|c| c.max_abs()).fold(Q::zero(), |a, b| a.max(b))
    }
}

/// Linear combination `Σ c_k · ops[k]` for a sparse coefficient vector.
pub fn combine<F: Field>(ops: &[Endo<F>], coeffs: &SVec<F>, n: usize) -> Endo<F> {
    let mut cols: Vec<Acc<F>> = (0..n).map(|_| Acc::new(n)).collect();
    for (k, c) in coeffs.iter() {
        for (j, col) in ops[k].cols.iter().enumerate() {
            cols[j].add(c, col);
        }
    }
    Endo { cols: cols.into_iter().map(Acc::finish).collect() }
}

/// Dense matrix helpers (row-major `Vec<Vec<F>>`).
pub type Mat<F> = Vec<Vec<F>>;

pub fn mat_identity<F: Field>(n: usize) -> Mat<F> {
    (0..n).map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect()).collect()
}

pub fn mat_mul<F: Field>(a: &Mat<F>, b: &Mat<F>) -> Mat<F> {
    let (n, m, p) = (a.len(), b.len(), b.first().map_or(0, |r| r.len()));
    let mut c = vec![vec![F::zero(); p]; n];
    for i in 0..n {
        for k in 0..m {
            let x = a[i][k];
            if x.is_zero() {
                continue;
            }
            for j in 0..p {
                let y = b[k][j];
                if !y.is_zero() {
                    c[i][j] += x * y;
                }
            }
        }
    }
    c
}

pub fn mat_vec<F: Field>(a: &Mat<F>, v: &[F]) -> Vec<F> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(F::zero(), |s, (x, y)| if x.is_zero() || y.is_zero() { s } else { s + *x * *y }))
        .collect()
}

pub fn transpose<F: Field>(a: &Mat<F>) -> Mat<F> {
    let n = a.len();
    let m = a.first().map_or(0, |r| r.len());
    (0..m).map(|j| (0..n).map(|i| a[i][j]).collect()).collect()
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<F: Field>(a: &mut Mat<F>) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = F::one() / a[r][c];
        for x in a[r].iter_mut() {
            *x = *x * inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c];
                for k in 0..cols {
                    let t = a[r][k];
                    if !t.is_zero() {
                        a[i][k] -= f * t;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(a: &Mat<F>) -> usize {
    let mut m = a.clone();
    rref(&mut m).len()
}

/// Basis of `{x : a·x = 0}`.
pub fn nullspace<F: Field>(a: &Mat<F>, ncols: usize) -> Vec<Vec<F>> {
    let mut m = a.clone();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); ncols];
            v[f] = F::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f];
            }
            v
        })
        .collect()
}

pub fn inverse<F: Field>(a: &Mat<F>) -> Option<Mat<F>> {
    let n = a.len();
    let mut aug: Mat<F> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves `a·x = b` for one right-hand side; `None` when inconsistent.
pub fn solve<F: Field>(a: &Mat<F>, b: &[F]) -> Option<Vec<F>> {
    let n = a.first().map_or(0, |r| r.len());
    let mut aug: Mat<F> = a.iter().zip(b).map(|(row, &y)| {
        let mut r = row.clone();
        r.push(y);
        r
    }).collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&n) {
        return None;
    }
    let mut x = vec![F::zero(); n];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[r][n];
    }
    Some(x)
}

/// Positive definiteness of a Hermitian (or real symmetric) matrix by
/// pivot-free elimination: every pivot must be real and positive.
pub fn is_positive_definite<F: Field>(a: &Mat<F>) -> bool {
    let n = a.len();
    let mut m = a.clone();
    for k in 0..n {
        let p = m[k][k];
        if !(p == p.conj()) || p.abs_sq().is_zero() || p.to_c64().re <= 0.0 {
            return false;
        }
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = m[i][k] / p;
            for j in k..n {
                let t = m[k][j];
                if !t.is_zero() {
                    m[i][j] -= f * t;
                }
            }
        }
    }
    true
}

pub fn is_hermitian<F: Field>(a: &Mat<F>) -> bool {
    let n = a.len();
    (0..n).all(|i| (0..n).all(|j| a[i][j] == a[j][i].conj()))
}

pub fn to_complex(a: &Mat<Q>) -> Mat<crate::scalar::Qi> {
    a.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qr, Qi};

    #[test]
    fn sparse_add_cancels() {
        let a = SVec::from_pairs([(0, q(1)), (3, q(2))]);
        let b = SVec::from_pairs([(3, q(-2)), (5, q(1))]);
        let s = a.add(&b);
        assert_eq!(s, SVec::from_pairs([(0, q(1)), (5, q(1))]));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn endo_composition_matches_dense() {
        let a = vec![vec![q(1), q(2)], vec![q(0), q(3)]];
        let b = vec![vec![q(0), q(1)], vec![q(-1), q(4)]];
        let ea = Endo::from_dense(&a);
        let eb = Endo::from_dense(&b);
        assert_eq!(ea.compose(&eb).to_dense(), mat_mul(&a, &b));
    }

    #[test]
    fn inverse_and_nullspace() {
        let a = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), mat_identity(2));
        let s = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        let ns = nullspace(&s, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(mat_vec(&s, &v).iter().all(|x| x.is_zero()));
        }
        assert!(inverse(&vec![vec![q(1), q(2)], vec![q(2), q(4)]]).is_none());
    }

    #[test]
    fn positive_definite_hermitian() {
        let i = Qi::i();
        let one = Qi::real(q(1));
        let two = Qi::real(q(2));
        let h = vec![vec![two, i], vec![-i, two]];
        assert!(is_hermitian(&h));
        assert!(is_positive_definite(&h));
        let bad = vec![vec![one, two], vec![two, one]];
        assert!(!is_positive_definite(&bad));
        assert!(is_positive_definite(&vec![vec![qr(1, 3)]]));
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        assert!(solve(&a, &[q(1), q(3)]).is_none());
        let x = solve(&a, &[q(1), q(2)]).unwrap();
        assert_eq!(x[0] + x[1], q(1));
    }
}
