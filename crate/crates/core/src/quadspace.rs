//! Nondefective quadratic spaces `(K^n, Q)`.
//!
//! A form is stored as an upper-triangular matrix `U` with `Q(v) = v·U·vᵀ`;
//! the polar form is `f(u, w) = u·B·wᵀ` with `B = U + Uᵀ`. The diagonal of
//! `U` keeps the information that `B` loses in characteristic 2.

use crate::error::{domain, Result};
use crate::field::{Elem, FiniteField};
use crate::linalg::{all_vectors, axpy, is_zero_vec, scale_vec, Mat, Subspace};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadSpace {
    field: FiniteField,
    upper: Mat,
    bilinear: Mat,
}

/// Isometry invariants of a nondefective space over a finite field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FormClass {
    pub dim: usize,
    pub witt_index: usize,
    /// Characteristic 2 only.
    pub arf: Option<u32>,
    /// Odd characteristic only: whether `det B` is a square.
    pub det_is_square: Option<bool>,
}

/// Folds an arbitrary matrix `M` into the upper-triangular matrix of the
/// quadratic form `v ↦ v·M·vᵀ`.
pub fn fold_upper(m: &Mat) -> Mat {
    let f = m.field();
    let n = m.rows();
    let mut u = Mat::zeros(f, n, n);
    for i in 0..n {
        u.set(i, i, m.get(i, i));
        for j in i + 1..n {
            u.set(i, j, f.add(m.get(i, j), m.get(j, i)));
        }
    }
    u
}

impl QuadSpace {
    /// Space with the given upper-triangular Gram data; rejects defective
    /// forms and nonzero entries below the diagonal.
    pub fn new(upper: Mat) -> Result<Self> {
        if !upper.is_square() {
            return domain("Gram matrix must be square");
        }
        let n = upper.rows();
        for i in 0..n {
            for j in 0..i {
                if !upper.get(i, j).is_zero() {
                    return domain("gram_upper must be upper triangular");
                }
            }
        }
        let bilinear = upper.add(&upper.transpose());
        if !bilinear.is_invertible() {
            return domain("quadratic form is defective (polar form is degenerate)");
        }
        Ok(QuadSpace { field: upper.field(), upper, bilinear })
    }

    /// Space with form `v ↦ v·M·vᵀ` for an arbitrary square `M`.
    pub fn from_matrix(m: &Mat) -> Result<Self> {
        Self::new(fold_upper(m))
    }

    /// The hyperbolic space `H^m` with basis `e_1, f_1, …, e_m, f_m` and
    /// `Q = Σ x_{e_i} x_{f_i}`.
    pub fn hyperbolic(field: FiniteField, m: usize) -> Self {
        let mut u = Mat::zeros(field, 2 * m, 2 * m);
        for i in 0..m {
            u.set(2 * i, 2 * i + 1, Elem::ONE);
        }
        Self::new(u).expect("hyperbolic space is nondefective")
    }

    /// The anisotropic plane: `x² + xy + a·y²` with `Tr(a) = 1` in
    /// characteristic 2, `x² − ν·y²` with `ν` a non-square otherwise.
    pub fn anisotropic_plane(field: FiniteField) -> Self {
        let mut u = Mat::zeros(field, 2, 2);
        u.set(0, 0, Elem::ONE);
        if field.is_char2() {
            u.set(0, 1, Elem::ONE);
            u.set(1, 1, field.trace_one().expect("trace-one element"));
        } else {
            u.set(1, 1, field.neg(field.non_square().expect("non-square")));
        }
        Self::new(u).expect("anisotropic plane is nondefective")
    }

    /// Standard representative of dimension `n`: `plus = true` gives the
    /// space of maximal Witt index with square determinant class (odd `n`)
    /// or the hyperbolic space (even `n`); `plus = false` gives the other
    /// isometry class. Odd `n` needs odd characteristic.
    pub fn standard(field: FiniteField, n: usize, plus: bool) -> Result<Self> {
        if n % 2 == 1 {
            if field.is_char2() {
                return domain("odd-dimensional forms are defective in characteristic 2");
            }
            let h = Self::hyperbolic(field, n / 2);
            let c = if plus { Elem::ONE } else { field.non_square().expect("non-square") };
            let mut u = Mat::zeros(field, 1, 1);
            u.set(0, 0, c);
            return Ok(h.orthogonal_sum(&Self::new(u)?));
        }
        if plus {
            return Ok(Self::hyperbolic(field, n / 2));
        }
        if n == 0 {
            return domain("the zero space has a single isometry class");
        }
        Ok(Self::hyperbolic(field, n / 2 - 1).orthogonal_sum(&Self::anisotropic_plane(field)))
    }

    pub fn orthogonal_sum(&self, other: &QuadSpace) -> QuadSpace {
        let u = Mat::block_diag(self.field, &[&self.upper, &other.upper]);
        Self::new(u).expect("orthogonal sum of nondefective spaces")
    }

    /// The form restricted to the span of `vecs`, in those coordinates.
    pub fn restrict_to(&self, vecs: &[Vec<Elem>]) -> Result<QuadSpace> {
        Self::new(self.gram_upper_of(vecs))
    }

    /// Upper Gram data of `Q` on the given vectors: `Q(v_i)` on the
    /// diagonal, `f(v_i, v_j)` above.
    pub fn gram_upper_of(&self, vecs: &[Vec<Elem>]) -> Mat {
        let k = vecs.len();
        let mut u = Mat::zeros(self.field, k, k);
        for i in 0..k {
            u.set(i, i, self.q(&vecs[i]));
            for j in i + 1..k {
                u.set(i, j, self.f(&vecs[i], &vecs[j]));
            }
        }
        u
    }

    pub fn field(&self) -> FiniteField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.upper.rows()
    }

    pub fn gram_upper(&self) -> &Mat {
        &self.upper
    }

    /// Gram matrix `B` of the polar form.
    pub fn bilinear(&self) -> &Mat {
        &self.bilinear
    }

    /// `Q(v)`; the length of `v` must be the dimension.
    pub fn q(&self, v: &[Elem]) -> Elem {
        let f = self.field;
        let n = self.dim();
        let mut acc = Elem::ZERO;
        for i in 0..n {
            if v[i].is_zero() {
                continue;
            }
            let mut s = Elem::ZERO;
            for j in i..n {
                s = f.add(s, f.mul(self.upper.get(i, j), v[j]));
            }
            acc = f.add(acc, f.mul(v[i], s));
        }
        acc
    }

    /// `f(u, w) = Q(u + w) − Q(u) − Q(w)`.
    pub fn f(&self, u: &[Elem], w: &[Elem]) -> Elem {
        let f = self.field;
        let n = self.dim();
        let mut acc = Elem::ZERO;
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            let mut s = Elem::ZERO;
            for j in 0..n {
                s = f.add(s, f.mul(self.bilinear.get(i, j), w[j]));
            }
            acc = f.add(acc, f.mul(u[i], s));
        }
        acc
    }

    fn check_len(&self, v: &[Elem]) -> Result<()> {
        if v.len() != self.dim() {
            return domain(format!("vector of length {} in a space of dimension {}", v.len(), self.dim()));
        }
        Ok(())
    }

    pub fn eval_q(&self, v: &[Elem]) -> Result<Elem> {
        self.check_len(v)?;
        Ok(self.q(v))
    }

    pub fn eval_f(&self, u: &[Elem], w: &[Elem]) -> Result<Elem> {
        self.check_len(u)?;
        self.check_len(w)?;
        Ok(self.f(u, w))
    }

    /// `W^⊥` with respect to `f`.
    pub fn perp(&self, w: &Subspace) -> Subspace {
        w.perp(&self.bilinear)
    }

    /// `rad W = W ∩ W^⊥`.
    pub fn radical(&self, w: &Subspace) -> Subspace {
        w.intersect(&self.perp(w))
    }

    /// `Q` vanishes on `W`: on a basis, with `f` vanishing on basis pairs.
    pub fn is_totally_isotropic(&self, w: &Subspace) -> bool {
        let b = w.basis_vecs();
        b.iter().all(|v| self.q(v).is_zero())
            && (0..b.len()).all(|i| (i + 1..b.len()).all(|j| self.f(&b[i], &b[j]).is_zero()))
    }

    /// `W ≤ W^⊥`.
    pub fn is_totally_degenerate(&self, w: &Subspace) -> bool {
        let b = w.basis_vecs();
        (0..b.len()).all(|i| (i..b.len()).all(|j| self.f(&b[i], &b[j]).is_zero()))
    }

    /// The restriction of `f` to `W` is nondegenerate.
    pub fn is_nondefective_subspace(&self, w: &Subspace) -> bool {
        let b = w.basis();
        b.mul(&self.bilinear).mul(&b.transpose()).is_invertible()
    }

    /// Hyperbolic pairs `(e_i, f_i)` and an anisotropic kernel, found by
    /// canonical search for isotropic vectors.
    pub fn witt_decompose(&self) -> (Vec<(Vec<Elem>, Vec<Elem>)>, Subspace) {
        let fld = self.field;
        let n = self.dim();
        let mut rest = Subspace::full(fld, n);
        let mut pairs = Vec::new();
        while let Some(e) = self.find_isotropic(&rest) {
            let basis = rest.basis_vecs();
            let b = basis
                .iter()
                .find(|b| !self.f(&e, b).is_zero())
                .expect("nondefective subspace has no radical");
            let fp = scale_vec(fld, fld.inv(self.f(&e, b)).expect("nonzero"), b);
            let fv = axpy(fld, &fp, fld.neg(self.q(&fp)), &e);
            debug_assert!(self.q(&fv).is_zero() && self.f(&e, &fv) == Elem::ONE);
            let plane = Subspace::span(fld, n, &[e.clone(), fv.clone()]);
            rest = rest.intersect(&self.perp(&plane));
            pairs.push((e, fv));
        }
        (pairs, rest)
    }

    /// First nonzero isotropic vector of a nondefective subspace, searching
    /// the span of its first three basis vectors (a quadratic form in three
    /// or more variables over a finite field always has a nontrivial zero).
    fn find_isotropic(&self, s: &Subspace) -> Option<Vec<Elem>> {
        let basis = s.basis_vecs();
        let k = basis.len().min(3);
        let sub = Mat::from_rows(self.field, self.dim(), &basis[..k]);
        all_vectors(self.field, k)
            .skip(1)
            .map(|c| sub.apply(&c))
            .find(|v| self.q(v).is_zero())
    }

    pub fn witt_index(&self) -> usize {
        self.witt_decompose().0.len()
    }

    pub fn is_hyperbolic(&self) -> bool {
        2 * self.witt_index() == self.dim()
    }

    /// Arf invariant (characteristic 2): absolute trace of `Σ Q(e_i)Q(f_i)`
    /// over a symplectic basis.
    pub fn arf_invariant(&self) -> Result<u32> {
        let fld = self.field;
        if !fld.is_char2() {
            return domain("the Arf invariant is defined in characteristic 2 only");
        }
        let n = self.dim();
        let mut rest = Subspace::full(fld, n);
        let mut sum = Elem::ZERO;
        while !rest.is_zero() {
            let basis = rest.basis_vecs();
            let e = basis[0].clone();
            let w = basis.iter().find(|w| !self.f(&e, w).is_zero()).expect("nondegenerate");
            let fv = scale_vec(fld, fld.inv(self.f(&e, w)).expect("nonzero"), w);
            sum = fld.add(sum, fld.mul(self.q(&e), self.q(&fv)));
            let plane = Subspace::span(fld, n, &[e, fv]);
            rest = rest.intersect(&self.perp(&plane));
        }
        Ok(fld.abs_trace(sum))
    }

    /// Whether `det B` is a nonzero square (odd characteristic).
    pub fn det_is_square(&self) -> Result<bool> {
        if self.field.is_char2() {
            return domain("determinant class is used in odd characteristic only");
        }
        Ok(self.field.is_square(self.bilinear.det()))
    }

    pub fn form_class(&self) -> FormClass {
        let char2 = self.field.is_char2();
        FormClass {
            dim: self.dim(),
            witt_index: self.witt_index(),
            arf: if char2 { self.arf_invariant().ok() } else { None },
            det_is_square: if char2 { None } else { self.det_is_square().ok() },
        }
    }

    /// Whether the two spaces are isometric.
    pub fn is_isometric(&self, other: &QuadSpace) -> bool {
        self.field == other.field && self.form_class() == other.form_class()
    }

    /// The nondefective form induced on `W / rad W`, with the transversal
    /// (rows, ambient coordinates) used as its basis.
    pub fn quotient_form(&self, w: &Subspace) -> Result<(QuadSpace, Mat)> {
        let rad = self.radical(w);
        if !self.is_totally_isotropic(&rad) {
            return domain("radical is not totally isotropic");
        }
        let mut span = rad.clone();
        let mut transversal = Vec::new();
        for b in w.basis_vecs() {
            if !span.contains(&b) {
                span = span.sum(&Subspace::span(self.field, self.dim(), &[b.clone()]));
                transversal.push(b);
            }
        }
        let sp = self.restrict_to(&transversal)?;
        Ok((sp, Mat::from_rows(self.field, self.dim(), &transversal)))
    }

    /// A basis adapted to the Witt decomposition: hyperbolic pairs in order,
    /// then a basis of the anisotropic kernel.
    pub fn witt_basis(&self) -> Vec<Vec<Elem>> {
        let (pairs, kernel) = self.witt_decompose();
        let mut out = Vec::with_capacity(self.dim());
        for (e, f) in pairs {
            out.push(e);
            out.push(f);
        }
        out.extend(kernel.basis_vecs());
        out
    }

    /// An invertible `T` with `Q_other(v·T) = Q_self(v)` for all `v`, if the
    /// spaces are isometric.
    pub fn find_isometry(&self, other: &QuadSpace) -> Option<Mat> {
        if self.field != other.field || self.dim() != other.dim() {
            return None;
        }
        let fld = self.field;
        let n = self.dim();
        let (pa, ka) = self.witt_decompose();
        let (pb, kb) = other.witt_decompose();
        if pa.len() != pb.len() {
            return None;
        }
        let ka_basis = ka.basis_vecs();
        let kb_image = match_kernel(self, &ka_basis, other, &kb)?;
        let mut rows_a = Vec::with_capacity(n);
        let mut rows_b = Vec::with_capacity(n);
        for ((ea, fa), (eb, fb)) in pa.into_iter().zip(pb) {
            rows_a.push(ea);
            rows_a.push(fa);
            rows_b.push(eb);
            rows_b.push(fb);
        }
        rows_a.extend(ka_basis);
        rows_b.extend(kb_image);
        let a = Mat::from_rows(fld, n, &rows_a);
        let b = Mat::from_rows(fld, n, &rows_b);
        let t = a.inverse()?.mul(&b);
        debug_assert!(self.is_isometry_to(other, &t));
        Some(t)
    }

    /// `Q_other(v·T) = Q_self(v)` for all `v`, checked on Gram data.
    pub fn is_isometry_to(&self, other: &QuadSpace, t: &Mat) -> bool {
        let pulled = fold_upper(&t.mul(other.gram_upper()).mul(&t.transpose()));
        t.is_invertible() && pulled == self.upper
    }
}

/// Images in `kb` of the vectors `ka` preserving `Q` and `f`, by search.
fn match_kernel(a: &QuadSpace, ka: &[Vec<Elem>], b: &QuadSpace, kb: &Subspace) -> Option<Vec<Vec<Elem>>> {
    if ka.len() != kb.dim() {
        return None;
    }
    let cands: Vec<Vec<Elem>> = kb.vectors().filter(|v| !is_zero_vec(v)).collect();
    fn extend(
        a: &QuadSpace,
        ka: &[Vec<Elem>],
        b: &QuadSpace,
        cands: &[Vec<Elem>],
        chosen: &mut Vec<Vec<Elem>>,
    ) -> bool {
        let i = chosen.len();
        if i == ka.len() {
            return true;
        }
        for c in cands {
            if b.q(c) != a.q(&ka[i]) {
                continue;
            }
            if (0..i).any(|j| b.f(&chosen[j], c) != a.f(&ka[j], &ka[i])) {
                continue;
            }
            chosen.push(c.clone());
            if extend(a, ka, b, cands, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    extend(a, ka, b, &cands, &mut chosen).then_some(chosen)
}

impl std::fmt::Debug for QuadSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "QuadSpace({}, {:?})", self.field, self.upper)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{add_vec, vector_at};
    use proptest::prelude::*;

    fn gf(q: u32) -> FiniteField {
        FiniteField::of_order(q).unwrap()
    }

    fn v(c: &[u8]) -> Vec<Elem> {
        c.iter().map(|&x| Elem(x)).collect()
    }

    fn elliptic2() -> QuadSpace {
        QuadSpace::anisotropic_plane(gf(2))
    }

    #[test]
    fn evaluation_examples() {
        let h = QuadSpace::hyperbolic(gf(2), 1);
        assert_eq!(h.eval_q(&v(&[1, 1])).unwrap(), Elem(1));
        assert_eq!(h.eval_f(&v(&[1, 0]), &v(&[0, 1])).unwrap(), Elem(1));
        assert_eq!(elliptic2().eval_q(&v(&[1, 1])).unwrap(), Elem(1));
        assert!(h.eval_q(&v(&[1])).is_err());
    }

    #[test]
    fn rejects_defective_and_lower_entries() {
        let f = gf(2);
        let u = Mat::from_codes(f, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert!(QuadSpace::new(u).is_err());
        let l = Mat::from_codes(f, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert!(QuadSpace::new(l).is_err());
        let f3 = gf(3);
        assert!(QuadSpace::new(Mat::from_codes(f3, &[vec![1, 0], vec![0, 1]]).unwrap()).is_ok());
    }

    #[test]
    fn radical_examples() {
        let f = gf(2);
        let h = QuadSpace::hyperbolic(f, 1);
        assert!(h.radical(&Subspace::full(f, 2)).is_zero());
        let diag = Subspace::span(f, 2, &[v(&[1, 1])]);
        assert_eq!(h.radical(&diag), diag);
        let hh = QuadSpace::hyperbolic(f, 2);
        let plane = Subspace::span(f, 4, &[v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0])]);
        assert!(hh.radical(&plane).is_zero());
    }

    #[test]
    fn isotropy_examples() {
        let f = gf(2);
        let h = QuadSpace::hyperbolic(f, 1);
        let e1 = Subspace::span(f, 2, &[v(&[1, 0])]);
        assert!(h.is_totally_isotropic(&e1));
        let diag = Subspace::span(f, 2, &[v(&[1, 1])]);
        assert!(h.is_totally_degenerate(&diag) && !h.is_totally_isotropic(&diag));
        let zero = Subspace::zero(f, 2);
        assert!(h.is_totally_isotropic(&zero) && h.is_totally_degenerate(&zero));
    }

    #[test]
    fn witt_examples() {
        for q in [2, 3, 4, 5] {
            let (pairs, k) = QuadSpace::hyperbolic(gf(q), 1).witt_decompose();
            assert_eq!((pairs.len(), k.dim()), (1, 0));
        }
        let (pairs, k) = elliptic2().witt_decompose();
        assert_eq!((pairs.len(), k.dim()), (0, 2));
        let mixed = QuadSpace::hyperbolic(gf(2), 1).orthogonal_sum(&elliptic2());
        let (pairs, k) = mixed.witt_decompose();
        assert_eq!((pairs.len(), k.dim()), (1, 2));
    }

    #[test]
    fn arf_examples() {
        let f = gf(2);
        assert_eq!(QuadSpace::hyperbolic(f, 1).arf_invariant().unwrap(), 0);
        assert_eq!(elliptic2().arf_invariant().unwrap(), 1);
        assert_eq!(QuadSpace::hyperbolic(f, 2).arf_invariant().unwrap(), 0);
        assert!(QuadSpace::hyperbolic(gf(3), 1).arf_invariant().is_err());
    }

    #[test]
    fn quotient_examples() {
        let f = gf(2);
        let hh = QuadSpace::hyperbolic(f, 2);
        let (q, t) = hh.quotient_form(&Subspace::full(f, 4)).unwrap();
        assert_eq!(q.dim(), 4);
        assert!(t.is_identity());
        let plane = Subspace::span(f, 4, &[v(&[0, 0, 1, 0]), v(&[0, 0, 0, 1])]);
        let (q, _) = hh.quotient_form(&plane).unwrap();
        assert!(q.is_isometric(&QuadSpace::hyperbolic(f, 1)));
        // e1^⊥ = ⟨e1, e2, f2⟩ has radical ⟨e1⟩
        let w = Subspace::span(f, 4, &[v(&[1, 0, 0, 0]), v(&[0, 0, 1, 0]), v(&[0, 0, 0, 1])]);
        let (q, t) = hh.quotient_form(&w).unwrap();
        assert_eq!(q.dim(), 2);
        for c in all_vectors(f, 2) {
            assert_eq!(q.q(&c), hh.q(&t.apply(&c)));
        }
        // a line spanned by an anisotropic vector of char 2 has a radical that is not isotropic
        let line = Subspace::span(f, 2, &[v(&[1, 1])]);
        assert!(QuadSpace::hyperbolic(f, 1).quotient_form(&line).is_err());
    }

    fn space_strategy() -> impl Strategy<Value = QuadSpace> {
        (prop::sample::select(vec![2u32, 3, 4, 5, 7, 8, 9]), 1usize..4, any::<bool>(), any::<u64>()).prop_map(
            |(q, half, plus, seed)| {
                let f = gf(q);
                let base = QuadSpace::standard(f, 2 * half, plus).unwrap();
                // change coordinates by a pseudo-random invertible matrix
                let n = 2 * half;
                let mut s = seed;
                loop {
                    let data: Vec<Elem> = (0..n * n)
                        .map(|_| {
                            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                            Elem(((s >> 33) % q as u64) as u8)
                        })
                        .collect();
                    let p = Mat::from_flat(f, n, n, data);
                    if p.is_invertible() {
                        let g = fold_upper(&p.mul(base.gram_upper()).mul(&p.transpose()));
                        return QuadSpace::new(g).unwrap();
                    }
                }
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn polar_identity(sp in space_strategy(), a in any::<u64>(), b in any::<u64>()) {
            let f = sp.field();
            let n = sp.dim();
            let max = (f.order() as u64).pow(n as u32);
            let u = vector_at(f, n, a % max);
            let w = vector_at(f, n, b % max);
            let lhs = sp.f(&u, &w);
            let rhs = f.sub(f.sub(sp.q(&add_vec(f, &u, &w)), sp.q(&u)), sp.q(&w));
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(sp.f(&u, &u), f.add(sp.q(&u), sp.q(&u)));
        }

        #[test]
        fn witt_reassembly_preserves_class(sp in space_strategy()) {
            let (pairs, kernel) = sp.witt_decompose();
            let mut basis = Vec::new();
            for (e, fv) in &pairs {
                prop_assert!(sp.q(e).is_zero() && sp.q(fv).is_zero());
                prop_assert_eq!(sp.f(e, fv), Elem::ONE);
                basis.push(e.clone());
                basis.push(fv.clone());
            }
            basis.extend(kernel.basis_vecs());
            let rebuilt = sp.restrict_to(&basis).unwrap();
            prop_assert_eq!(rebuilt.dim(), sp.dim());
            prop_assert_eq!(rebuilt.form_class(), sp.form_class());
            for c in kernel.vectors().skip(1) {
                prop_assert!(!sp.q(&c).is_zero());
            }
            if sp.is_hyperbolic() && sp.field().is_char2() {
                prop_assert_eq!(sp.arf_invariant().unwrap(), 0);
            }
            let t = sp.find_isometry(&rebuilt).unwrap();
            prop_assert!(sp.is_isometry_to(&rebuilt, &t));
        }
    }
}
