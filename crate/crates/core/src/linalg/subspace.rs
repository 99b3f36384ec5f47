use super::{vector_at, Mat};
use crate::field::{Elem, FiniteField};

/// A subspace of `K^n`, stored as its reduced row echelon basis.
///
/// Two subspaces are equal exactly when their bases are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Mat,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FiniteField, n: usize) -> Self {
        Subspace { basis: Mat::zeros(field, 0, n), pivots: Vec::new() }
    }

    pub fn full(field: FiniteField, n: usize) -> Self {
        Subspace { basis: Mat::identity(field, n), pivots: (0..n).collect() }
    }

    /// Row space of `m`.
    pub fn row_space(m: &Mat) -> Self {
        let (r, pivots) = m.rref();
        let basis = r.submatrix(0, 0, pivots.len(), m.cols());
        Subspace { basis, pivots }
    }

    pub fn span(field: FiniteField, n: usize, vecs: &[Vec<Elem>]) -> Self {
        Self::row_space(&Mat::from_rows(field, n, vecs))
    }

    pub fn field(&self) -> FiniteField {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn basis_vecs(&self) -> Vec<Vec<Elem>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient()
    }

    /// Canonical representative of `v` modulo the subspace: its pivot
    /// coordinates are cleared.
    pub fn reduce(&self, v: &[Elem]) -> Vec<Elem> {
        let f = self.field();
        let mut out = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = out[p];
            if c.is_zero() {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.basis.row(i)) {
                *o = f.sub(*o, f.mul(c, b));
            }
        }
        out
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        self.reduce(v).iter().all(|e| e.is_zero())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p]).collect())
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Self::row_space(&self.basis.vstack(&other.basis))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let f = self.field();
        let n = self.ambient();
        if self.is_zero() || other.is_zero() {
            return Self::zero(f, n);
        }
        let k = self.basis.vstack(&other.basis).left_kernel();
        let d = self.dim();
        let vecs: Vec<Vec<Elem>> = (0..k.rows())
            .map(|r| {
                let coeffs = &k.row(r)[..d];
                self.basis.apply(coeffs)
            })
            .collect();
        Self::span(f, n, &vecs)
    }

    /// Image under `v ↦ v·M`.
    pub fn image(&self, m: &Mat) -> Subspace {
        Self::row_space(&self.basis.mul(m))
    }

    pub fn is_invariant(&self, m: &Mat) -> bool {
        (0..self.dim()).all(|i| self.contains(&m.apply(self.basis.row(i))))
    }

    /// Standard basis vectors at the non-pivot positions; they span a
    /// complement.
    pub fn complement_basis(&self) -> Vec<Vec<Elem>> {
        let n = self.ambient();
        (0..n)
            .filter(|j| !self.pivots.contains(j))
            .map(|j| {
                let mut v = vec![Elem::ZERO; n];
                v[j] = Elem::ONE;
                v
            })
            .collect()
    }

    /// Orthogonal complement with respect to the bilinear form with Gram
    /// matrix `gram`: `{v : v·gram·bᵀ = 0 for all b}`.
    pub fn perp(&self, gram: &Mat) -> Subspace {
        let f = self.field();
        let n = self.ambient();
        if self.is_zero() {
            return Self::full(f, n);
        }
        Self::row_space(&gram.mul(&self.basis.transpose()).left_kernel())
    }

    /// All vectors of the subspace, in the order of their coordinate index.
    pub fn vectors(&self) -> impl Iterator<Item = Vec<Elem>> + '_ {
        let f = self.field();
        let d = self.dim();
        let count = (f.order() as u64).pow(d as u32);
        (0..count).map(move |i| self.basis.apply(&vector_at(f, d, i)))
    }

    /// Number of vectors, `q^dim`, saturating.
    pub fn size(&self) -> u64 {
        (self.field().order() as u64).saturating_pow(self.dim() as u32)
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace{:?}", self.basis.codes())
    }
}
