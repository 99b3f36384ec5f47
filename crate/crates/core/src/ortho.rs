//! Orthogonal transformations of a quadratic space.
//!
//! `SO(V, Q)` is taken to be the set of orthogonal maps whose path space
//! `Bahn(φ) = V(φ − 1)` has even dimension. In odd characteristic this is the
//! determinant-one subgroup; in characteristic 2 it replaces the determinant.

use crate::error::{domain, internal, Error, Result};
use crate::field::{Elem, Poly};
use crate::linalg::{bahn_fix, min_poly, projective_points, restrict, Mat, Subspace};
use crate::quadspace::{fold_upper, QuadSpace};

/// An orthogonal map of a fixed space, with its minimal polynomial and path
/// dimension computed at construction.
#[derive(Clone, PartialEq, Eq)]
pub struct OrthMap {
    space: QuadSpace,
    mat: Mat,
    min_poly: Poly,
    path_dim: usize,
}

/// `Q(v·M) = Q(v)` for all `v`, decided on Gram data.
pub fn is_orthogonal(sp: &QuadSpace, m: &Mat) -> Result<bool> {
    if m.rows() != sp.dim() || m.cols() != sp.dim() || m.field() != sp.field() {
        return domain(format!(
            "matrix is {}x{}, space has dimension {}",
            m.rows(),
            m.cols(),
            sp.dim()
        ));
    }
    Ok(preserves_form(sp, m))
}

pub(crate) fn preserves_form(sp: &QuadSpace, m: &Mat) -> bool {
    fold_upper(&m.mul(sp.gram_upper()).mul(&m.transpose())) == *sp.gram_upper()
}

impl OrthMap {
    /// Certifies `mat` as orthogonal for `space`.
    pub fn new(space: QuadSpace, mat: Mat) -> Result<Self> {
        if !is_orthogonal(&space, &mat)? {
            return domain("matrix does not preserve the quadratic form");
        }
        Ok(Self::trusted(space, mat))
    }

    /// Caller guarantees orthogonality.
    pub(crate) fn trusted(space: QuadSpace, mat: Mat) -> Self {
        debug_assert!(preserves_form(&space, &mat));
        let min_poly = min_poly(&mat).expect("square");
        let path_dim = mat.minus_identity().rank();
        OrthMap { space, mat, min_poly, path_dim }
    }

    pub fn identity(space: QuadSpace) -> Self {
        let id = Mat::identity(space.field(), space.dim());
        Self::trusted(space, id)
    }

    pub fn space(&self) -> &QuadSpace {
        &self.space
    }

    pub fn mat(&self) -> &Mat {
        &self.mat
    }

    pub fn into_mat(self) -> Mat {
        self.mat
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn min_poly(&self) -> &Poly {
        &self.min_poly
    }

    /// `dim Bahn(φ)`.
    pub fn path_dim(&self) -> usize {
        self.path_dim
    }

    /// Membership in `SO(V, Q)`: even path dimension.
    pub fn is_special(&self) -> bool {
        self.path_dim % 2 == 0
    }

    pub fn is_identity(&self) -> bool {
        self.path_dim == 0
    }

    pub fn is_involution(&self) -> bool {
        self.mat.mul(&self.mat).is_identity()
    }

    pub fn bahn(&self) -> Subspace {
        self.bahn_j(1)
    }

    pub fn fix(&self) -> Subspace {
        self.fix_j(1)
    }

    /// Image of `(φ − 1)^j`.
    pub fn bahn_j(&self, j: usize) -> Subspace {
        bahn_fix(&self.mat, j).expect("square").0
    }

    /// Kernel of `(φ − 1)^j`.
    pub fn fix_j(&self, j: usize) -> Subspace {
        bahn_fix(&self.mat, j).expect("square").1
    }

    pub fn inverse(&self) -> OrthMap {
        let inv = self.mat.inverse().expect("orthogonal maps are invertible");
        Self::trusted(self.space.clone(), inv)
    }

    /// `self · other` (apply `self` first).
    pub fn compose(&self, other: &OrthMap) -> Result<OrthMap> {
        if self.space != other.space {
            return domain("maps act on different spaces");
        }
        Ok(Self::trusted(self.space.clone(), self.mat.mul(&other.mat)))
    }

    pub fn pow(&self, e: i64) -> OrthMap {
        let base = if e < 0 { self.inverse().mat } else { self.mat.clone() };
        Self::trusted(self.space.clone(), base.pow(e.unsigned_abs()))
    }

    /// `α⁻¹ · φ · α` for an orthogonal `α`.
    pub fn conjugate_by(&self, alpha: &Mat) -> Result<OrthMap> {
        if !is_orthogonal(&self.space, alpha)? {
            return domain("conjugator is not orthogonal");
        }
        let inv = alpha.inverse().expect("orthogonal maps are invertible");
        Ok(Self::trusted(self.space.clone(), inv.mul(&self.mat).mul(alpha)))
    }

    pub fn commutes_with(&self, other: &Mat) -> bool {
        self.mat.mul(other) == other.mul(&self.mat)
    }

    /// The restriction to a nondefective invariant subspace, in the
    /// coordinates of its echelon basis.
    pub fn restrict(&self, w: &Subspace) -> Result<OrthMap> {
        let sub = self.space.restrict_to(&w.basis_vecs())?;
        let m = restrict(&self.mat, w)?;
        Ok(Self::trusted(sub, m))
    }
}

impl std::fmt::Debug for OrthMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "OrthMap({:?}, path_dim={})", self.mat, self.path_dim)
    }
}

/// The reflection `v ↦ v − (f(v, b)/Q(b))·b` along an anisotropic `b`.
pub fn reflection(sp: &QuadSpace, b: &[Elem]) -> Result<OrthMap> {
    sp.eval_q(b)?;
    let m = reflection_mat(sp, b).ok_or_else(|| Error::Domain("reflection vector is isotropic".into()))?;
    Ok(OrthMap::trusted(sp.clone(), m))
}

pub(crate) fn reflection_mat(sp: &QuadSpace, b: &[Elem]) -> Option<Mat> {
    let fld = sp.field();
    let n = sp.dim();
    let qb = sp.q(b);
    let c = fld.inv(qb).ok()?;
    let mut m = Mat::identity(fld, n);
    // row i is e_i − c·f(e_i, b)·b
    for i in 0..n {
        let mut fib = Elem::ZERO;
        for j in 0..n {
            fib = fld.add(fib, fld.mul(sp.bilinear().get(i, j), b[j]));
        }
        let coef = fld.mul(c, fib);
        for j in 0..n {
            let cur = m.get(i, j);
            m.set(i, j, fld.sub(cur, fld.mul(coef, b[j])));
        }
    }
    Some(m)
}

/// Anisotropic vectors up to scalars, in canonical order.
pub(crate) fn anisotropic_points(sp: &QuadSpace) -> Vec<Vec<Elem>> {
    projective_points(sp.field(), sp.dim()).filter(|v| !sp.q(v).is_zero()).collect()
}

/// Vectors `b_1, …, b_t` with `φ = σ_{b_1}···σ_{b_t}` and
/// `t ≤ dim Bahn(φ) + 2`.
///
/// Each step prefers the canonically smallest anisotropic `b ∈ Bahn(φ)`,
/// which lowers the path dimension by one; when none leads to a word within
/// the length bound an anisotropic `b ∉ Bahn(φ)` raises it first. Over
/// `H ⊥ H` on GF(2) the reflections generate a proper subgroup and elements
/// outside it are reported as a domain error.
pub fn reflection_factorization(phi: &OrthMap) -> Result<Vec<Vec<Elem>>> {
    let sp = phi.space();
    let points = anisotropic_points(sp);
    let reflections: Vec<Mat> =
        points.iter().map(|b| reflection_mat(sp, b).expect("anisotropic")).collect();
    let d = phi.path_dim();
    for limit in d..=d + 2 {
        let mut word = Vec::new();
        if factor_within(phi.mat(), limit, &points, &reflections, &mut word) {
            word.reverse();
            return Ok(word.into_iter().map(|i| points[i].clone()).collect());
        }
    }
    let fld = sp.field();
    if fld.order() == 2 && sp.dim() == 4 && sp.is_hyperbolic() {
        return domain("element lies outside the subgroup generated by reflections");
    }
    internal("no reflection factorization within dim Bahn + 2 factors")
}

/// Appends reflection indices `i_t, …, i_1` with `m = σ_{i_1}···σ_{i_t}`.
fn factor_within(m: &Mat, limit: usize, points: &[Vec<Elem>], refl: &[Mat], word: &mut Vec<usize>) -> bool {
    let d = m.minus_identity().rank();
    if d == 0 {
        return true;
    }
    if limit < d {
        return false;
    }
    let bahn = Subspace::row_space(&m.minus_identity());
    // φ = (φσ_b)σ_b, so σ_b is the last factor
    let (inside, outside): (Vec<usize>, Vec<usize>) = (0..points.len()).partition(|&i| bahn.contains(&points[i]));
    for i in inside {
        word.push(i);
        if factor_within(&m.mul(&refl[i]), limit - 1, points, refl, word) {
            return true;
        }
        word.pop();
    }
    if limit >= d + 2 {
        for i in outside {
            word.push(i);
            if factor_within(&m.mul(&refl[i]), limit - 1, points, refl, word) {
                return true;
            }
            word.pop();
        }
    }
    false
}

/// A product `ψ` of `n` reflections with `Bahn(ψ) = V`, so `Fix(ψ) = 0`.
///
/// Each factor is the canonically smallest anisotropic vector outside the
/// current path space; the path grows by one at every step.
pub fn full_path_element(sp: &QuadSpace) -> Result<OrthMap> {
    let points = anisotropic_points(sp);
    let fld = sp.field();
    let n = sp.dim();
    let mut psi = Mat::identity(fld, n);
    for step in 0..n {
        let bahn = Subspace::row_space(&psi.minus_identity());
        debug_assert_eq!(bahn.dim(), step);
        let Some(b) = points.iter().find(|b| !bahn.contains(b)) else {
            return domain("anisotropic vectors do not span the space (hyperbolic plane over GF(2))");
        };
        psi = psi.mul(&reflection_mat(sp, b).expect("anisotropic"));
    }
    Ok(OrthMap::trusted(sp.clone(), psi))
}

/// `φ` stabilises a totally isotropic subspace of half the dimension.
pub fn preserves_lagrangian(phi: &OrthMap, t: &Subspace) -> bool {
    2 * t.dim() == phi.dim() && phi.space().is_totally_isotropic(t) && t.is_invariant(phi.mat())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FiniteField;
    use crate::linalg::all_vectors;
    use proptest::prelude::*;

    fn gf(q: u32) -> FiniteField {
        FiniteField::of_order(q).unwrap()
    }

    fn v(c: &[u8]) -> Vec<Elem> {
        c.iter().map(|&x| Elem(x)).collect()
    }

    fn swap(f: FiniteField) -> Mat {
        Mat::from_codes(f, &[vec![0, 1], vec![1, 0]]).unwrap()
    }

    #[test]
    fn membership_examples() {
        let f = gf(2);
        let h = QuadSpace::hyperbolic(f, 1);
        assert!(is_orthogonal(&h, &Mat::identity(f, 2)).unwrap());
        assert!(is_orthogonal(&h, &swap(f)).unwrap());
        let shear = Mat::from_codes(f, &[vec![1, 1], vec![0, 1]]).unwrap();
        assert!(!is_orthogonal(&h, &shear).unwrap());
        assert!(is_orthogonal(&h, &Mat::identity(f, 3)).is_err());
        assert!(OrthMap::new(h, shear).is_err());
    }

    /// Independent check: `Q(vM) = Q(v)` on every vector.
    fn orthogonal_brute(sp: &QuadSpace, m: &Mat) -> bool {
        all_vectors(sp.field(), sp.dim()).all(|x| sp.q(&m.apply(&x)) == sp.q(&x))
    }

    #[test]
    fn membership_matches_pointwise_check() {
        let f = gf(2);
        let h = QuadSpace::hyperbolic(f, 1);
        for i in 0..16u64 {
            let data = (0..4).map(|b| Elem(((i >> b) & 1) as u8)).collect();
            let m = Mat::from_flat(f, 2, 2, data);
            assert_eq!(is_orthogonal(&h, &m).unwrap(), orthogonal_brute(&h, &m) && m.is_invertible());
        }
    }

    #[test]
    fn special_examples() {
        let f3 = gf(3);
        let h3 = QuadSpace::hyperbolic(f3, 1);
        assert!(OrthMap::identity(h3.clone()).is_special());
        let minus = OrthMap::new(h3.clone(), Mat::identity(f3, 2).neg()).unwrap();
        assert!(minus.is_special() && minus.path_dim() == 2);
        let r = reflection(&h3, &v(&[1, 1])).unwrap();
        assert!(!r.is_special());
    }

    #[test]
    fn reflection_examples() {
        let f = gf(2);
        let h = QuadSpace::hyperbolic(f, 1);
        let r = reflection(&h, &v(&[1, 1])).unwrap();
        assert_eq!(r.mat(), &swap(f));
        assert!(r.is_involution());
        assert!(reflection(&h, &v(&[1, 0])).is_err());
        assert!(reflection(&h, &v(&[1])).is_err());
    }

    #[test]
    fn factorization_examples() {
        let f = gf(2);
        let h = QuadSpace::hyperbolic(f, 1);
        assert!(reflection_factorization(&OrthMap::identity(h.clone())).unwrap().is_empty());
        let s = OrthMap::new(h, swap(f)).unwrap();
        assert_eq!(reflection_factorization(&s).unwrap(), vec![v(&[1, 1])]);
    }

    fn product(sp: &QuadSpace, word: &[Vec<Elem>]) -> Mat {
        word.iter()
            .fold(Mat::identity(sp.field(), sp.dim()), |acc, b| acc.mul(reflection(sp, b).unwrap().mat()))
    }

    #[test]
    fn full_path_examples() {
        let h3 = QuadSpace::hyperbolic(gf(3), 1);
        let psi = full_path_element(&h3).unwrap();
        assert!(psi.fix().is_zero() && psi.is_special());
        let expected = reflection(&h3, &v(&[1, 1])).unwrap().compose(&reflection(&h3, &v(&[1, 2])).unwrap()).unwrap();
        assert_eq!(psi, expected);
        let h4 = QuadSpace::hyperbolic(gf(4), 1);
        let psi = full_path_element(&h4).unwrap();
        assert!(psi.fix().is_zero() && psi.is_special());
        assert!(full_path_element(&QuadSpace::hyperbolic(gf(2), 1)).is_err());
        let h6 = QuadSpace::hyperbolic(gf(2), 3);
        let psi = full_path_element(&h6).unwrap();
        assert!(psi.fix().is_zero() && psi.is_special());
        let word = reflection_factorization(&psi).unwrap();
        assert_eq!(word.len(), 6);
        assert_eq!(&product(&h6, &word), psi.mat());
    }

    #[test]
    fn lagrangian_forces_special() {
        let f = gf(2);
        let hh = QuadSpace::hyperbolic(f, 2);
        // block form diag(P, P⁺) on the basis e1, e2 | f1, f2 in H ⊥ H coordinates
        let m = Mat::from_codes(
            f,
            &[vec![1, 0, 1, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 1, 0, 1]],
        )
        .unwrap();
        let phi = OrthMap::new(hh, m).unwrap();
        let t = Subspace::span(f, 4, &[v(&[1, 0, 0, 0]), v(&[0, 0, 1, 0])]);
        assert!(preserves_lagrangian(&phi, &t));
        assert!(phi.is_special());
    }

    fn word_strategy() -> impl Strategy<Value = (u32, usize, bool, Vec<u64>)> {
        (
            prop::sample::select(vec![2u32, 3, 4, 5]),
            1usize..3,
            any::<bool>(),
            prop::collection::vec(any::<u64>(), 0..6),
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn factorization_round_trips((q, half, plus, picks) in word_strategy()) {
            let sp = QuadSpace::standard(gf(q), 2 * half, plus).unwrap();
            let points = anisotropic_points(&sp);
            prop_assume!(!points.is_empty());
            let word: Vec<Vec<Elem>> = picks.iter().map(|&i| points[(i % points.len() as u64) as usize].clone()).collect();
            let phi = OrthMap::new(sp.clone(), product(&sp, &word)).unwrap();
            prop_assert_eq!(phi.is_special(), word.len() % 2 == 0);
            let w = reflection_factorization(&phi).unwrap();
            prop_assert!(w.len() <= phi.path_dim() + 2);
            prop_assert_eq!(&product(&sp, &w), phi.mat());
        }

        #[test]
        fn reflection_dichotomy((q, half, plus, picks) in word_strategy(), pick in any::<u64>()) {
            let sp = QuadSpace::standard(gf(q), 2 * half, plus).unwrap();
            let points = anisotropic_points(&sp);
            prop_assume!(!points.is_empty());
            let word: Vec<Vec<Elem>> = picks.iter().map(|&i| points[(i % points.len() as u64) as usize].clone()).collect();
            let phi = OrthMap::new(sp.clone(), product(&sp, &word)).unwrap();
            let b = &points[(pick % points.len() as u64) as usize];
            let sigma = reflection(&sp, b).unwrap();
            let ps = phi.compose(&sigma).unwrap();
            let (bp, bps, bs) = (phi.bahn(), ps.bahn(), sigma.bahn());
            let grows = bps == bp.sum(&bs) && bp.intersect(&bs).is_zero();
            let shrinks = bp == bps.sum(&bs) && bps.intersect(&bs).is_zero();
            prop_assert!(grows ^ shrinks);
            for j in 0..=sp.dim() {
                prop_assert_eq!(sp.perp(&phi.bahn_j(j)), phi.fix_j(j));
            }
        }
    }
}
