use std::cmp::Ordering;
use std::fmt;

use crate::error::{domain, Result};
use crate::field::{Elem, FiniteField, Poly};

/// Dense matrix over a finite field, row-major.
///
/// Matrices act on row vectors from the right: the image of `v` is `v·M`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: FiniteField,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Mat {
    pub fn zeros(field: FiniteField, rows: usize, cols: usize) -> Self {
        Mat { field, rows, cols, data: vec![Elem::ZERO; rows * cols] }
    }

    pub fn identity(field: FiniteField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    /// Scalar matrix `c·I`.
    pub fn scalar(field: FiniteField, n: usize, c: Elem) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, c);
        }
        m
    }

    /// Builds a matrix from rows of equal length; `cols` is needed when
    /// there are no rows.
    pub fn from_rows(field: FiniteField, cols: usize, rows: &[Vec<Elem>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend_from_slice(r);
        }
        Mat { field, rows: rows.len(), cols, data }
    }

    /// Builds a matrix from rows of canonical element codes.
    pub fn from_codes(field: FiniteField, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut out = Vec::with_capacity(rows.len());
        for r in rows {
            if r.len() != cols {
                return domain("matrix rows have different lengths");
            }
            out.push(r.iter().map(|&c| field.elem(c)).collect::<Result<Vec<_>>>()?);
        }
        Ok(Self::from_rows(field, cols, &out))
    }

    pub fn from_flat(field: FiniteField, rows: usize, cols: usize, data: Vec<Elem>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Mat { field, rows, cols, data }
    }

    /// Companion matrix of a monic polynomial of positive degree, in the
    /// row convention: `e_i ↦ e_{i+1}` and `e_{d-1} ↦ -(c_0, …, c_{d-1})`.
    pub fn companion(poly: &Poly) -> Result<Self> {
        let d = poly.deg();
        if d == 0 || !poly.is_monic() {
            return domain("companion matrix needs a monic polynomial of positive degree");
        }
        let f = poly.field();
        let mut m = Self::zeros(f, d, d);
        for i in 0..d - 1 {
            m.set(i, i + 1, Elem::ONE);
        }
        for j in 0..d {
            m.set(d - 1, j, f.neg(poly.coeff(j)));
        }
        Ok(m)
    }

    /// Block diagonal matrix; the blocks must be square.
    pub fn block_diag(field: FiniteField, blocks: &[&Mat]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut m = Self::zeros(field, n, n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(off + i, off + j, b.get(i, j));
                }
            }
            off += b.rows;
        }
        m
    }

    /// Stacks the rows of `self` on top of the rows of `other`.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    #[inline]
    pub fn field(&self) -> FiniteField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    pub fn codes(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|e| e.code()).collect()).collect()
    }

    /// Canonical order: shape first, then the row-major code sequence.
    pub fn canonical_cmp(&self, other: &Mat) -> Ordering {
        (self.rows, self.cols)
            .cmp(&(other.rows, other.cols))
            .then_with(|| self.data.cmp(&other.data))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| self.get(i, j) == if i == j { Elem::ONE } else { Elem::ZERO })
            })
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Mat { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Mat { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: Elem) -> Mat {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Mat { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Mat {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.neg(a)).collect();
        Mat { field: f, rows: self.rows, cols: self.cols, data }
    }

    /// `self - I`.
    pub fn minus_identity(&self) -> Mat {
        let mut m = self.clone();
        let f = self.field;
        for i in 0..self.rows.min(self.cols) {
            m.set(i, i, f.sub(m.get(i, i), Elem::ONE));
        }
        m
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let f = self.field;
        let mut out = vec![Elem::ZERO; self.rows * other.cols];
        for i in 0..self.rows {
            let orow = &mut out[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                if a == Elem::ONE {
                    for (o, &b) in orow.iter_mut().zip(brow) {
                        *o = f.add(*o, b);
                    }
                } else {
                    for (o, &b) in orow.iter_mut().zip(brow) {
                        *o = f.add(*o, f.mul(a, b));
                    }
                }
            }
        }
        Mat { field: f, rows: self.rows, cols: other.cols, data: out }
    }

    /// The row vector `v·M`.
    pub fn apply(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.rows);
        let f = self.field;
        let mut out = vec![Elem::ZERO; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.row(k)) {
                *o = f.add(*o, f.mul(a, b));
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Mat::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Evaluates a polynomial at a square matrix (Horner).
    pub fn eval_poly(&self, p: &Poly) -> Mat {
        assert!(self.is_square());
        let f = self.field;
        let n = self.rows;
        let mut acc = Mat::zeros(f, n, n);
        for &c in p.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                acc.set(i, i, f.add(acc.get(i, i), c));
            }
        }
        acc
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..m.cols {
                m.set(r, j, f.mul(m.get(r, j), inv));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let a = m.get(i, c);
                if a.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(a, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the left kernel `{v : v·M = 0}`, one vector per row, in
    /// reduced echelon form.
    pub fn left_kernel(&self) -> Mat {
        // v·M = 0  ⇔  Mᵀ·vᵀ = 0: solve the right kernel of Mᵀ
        let t = self.transpose();
        let (r, pivots) = t.rref();
        let n = t.cols;
        let f = self.field;
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![Elem::ZERO; n];
            v[fc] = Elem::ONE;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(row, fc));
            }
            basis.push(v);
        }
        Mat::from_rows(f, n, &basis).rref().0.drop_zero_rows()
    }

    fn drop_zero_rows(&self) -> Mat {
        let rows: Vec<Vec<Elem>> =
            self.row_vecs().into_iter().filter(|r| r.iter().any(|e| !e.is_zero())).collect();
        Mat::from_rows(self.field, self.cols, &rows)
    }

    /// Inverse of a square matrix, if nonsingular.
    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let f = self.field;
        let mut aug = Mat::zeros(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, Elem::ONE);
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots.last().is_some_and(|&p| p >= n) {
            return None;
        }
        let mut inv = Mat::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Some(inv)
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> Elem {
        assert!(self.is_square());
        let f = self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Elem::ONE;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Elem::ZERO;
            };
            if pr != c {
                m.swap_rows(pr, c);
                det = f.neg(det);
            }
            let piv = m.get(c, c);
            det = f.mul(det, piv);
            let inv = f.inv(piv).expect("nonzero pivot");
            for i in c + 1..n {
                let a = f.mul(m.get(i, c), inv);
                if a.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(i, j), f.mul(a, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Transpose inverse `M⁺ = (Mᵀ)⁻¹`.
    pub fn transpose_inverse(&self) -> Option<Mat> {
        self.transpose().inverse()
    }

    /// Solves `x·self = b` for one row vector `x`, if solvable.
    pub fn solve_left(&self, b: &[Elem]) -> Option<Vec<Elem>> {
        assert_eq!(b.len(), self.cols);
        let f = self.field;
        let n = self.rows;
        // columns of the augmented transpose system [Mᵀ | bᵀ]
        let mut aug = Mat::zeros(f, self.cols, n + 1);
        for i in 0..self.cols {
            for j in 0..n {
                aug.set(i, j, self.get(j, i));
            }
            aug.set(i, n, b[i]);
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&n) {
            return None;
        }
        let mut x = vec![Elem::ZERO; n];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, n);
        }
        Some(x)
    }

    /// The matrix restricted to its first `r` rows and `c` columns offset by
    /// `(r0, c0)`.
    pub fn submatrix(&self, r0: usize, c0: usize, r: usize, c: usize) -> Mat {
        let mut m = Mat::zeros(self.field, r, c);
        for i in 0..r {
            for j in 0..c {
                m.set(i, j, self.get(r0 + i, c0 + j));
            }
        }
        m
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.codes())
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.code().to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(q: u32) -> FiniteField {
        FiniteField::of_order(q).unwrap()
    }

    #[test]
    fn inverse_and_kernel() {
        let f = gf(3);
        let m = Mat::from_codes(f, &[vec![1, 2], vec![0, 1]]).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let sing = Mat::from_codes(f, &[vec![1, 2], vec![2, 1]]).unwrap();
        assert!(sing.inverse().is_none());
        assert_eq!(sing.det(), Elem(0));
        assert_eq!(m.det(), Elem(1));
        let k = sing.left_kernel();
        assert_eq!(k.rows(), 1);
        assert!(k.mul(&sing).is_zero());
    }

    #[test]
    fn companion_realizes_polynomial() {
        let f = gf(2);
        let p = Poly::from_codes(f, &[1, 0, 1]).unwrap();
        let c = Mat::companion(&p).unwrap();
        assert!(c.eval_poly(&p).is_zero());
        assert_eq!(c.apply(&[Elem::ONE, Elem::ZERO]), vec![Elem::ZERO, Elem::ONE]);
    }

    #[test]
    fn solve_left_finds_preimage() {
        let f = gf(5);
        let m = Mat::from_codes(f, &[vec![1, 2, 3], vec![0, 1, 4]]).unwrap();
        let x = vec![Elem(3), Elem(2)];
        let b = m.apply(&x);
        assert_eq!(m.solve_left(&b).unwrap(), x);
        assert!(m.solve_left(&[Elem(0), Elem(0), Elem(1)]).is_none());
    }

    fn square(q: u32, n: usize) -> impl Strategy<Value = Mat> {
        prop::collection::vec(0u32..q, n * n).prop_map(move |v| {
            let f = gf(q);
            Mat::from_flat(f, n, n, v.into_iter().map(|c| Elem(c as u8)).collect())
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in square(4, 4)) {
            prop_assert_eq!(m.rank() + m.left_kernel().rows(), 4);
            prop_assert!(m.left_kernel().mul(&m).is_zero());
        }

        #[test]
        fn inverse_is_two_sided(m in square(3, 3)) {
            if let Some(inv) = m.inverse() {
                prop_assert!(m.mul(&inv).is_identity());
                prop_assert!(inv.mul(&m).is_identity());
            } else {
                prop_assert!(m.rank() < 3);
            }
        }
    }
}
