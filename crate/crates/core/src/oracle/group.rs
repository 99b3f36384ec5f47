use std::collections::HashMap;

use crate::error::{domain, Error, Result};
use crate::field::Elem;
use crate::linalg::{all_vectors, projective_points, Mat};
use crate::ortho::{anisotropic_points, preserves_form, reflection_mat, OrthMap};
use crate::quadspace::QuadSpace;

/// Default cap on enumerated group elements.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Largest dimension the enumerator accepts.
pub const MAX_DIM: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    O,
    SO,
}

/// A finite orthogonal group with its elements in canonical order.
#[derive(Clone)]
pub struct GroupTable {
    space: QuadSpace,
    kind: GroupKind,
    elements: Vec<Mat>,
    index: HashMap<Vec<Elem>, usize>,
    involution_index: Vec<usize>,
    special_mask: Vec<bool>,
    generators: Vec<usize>,
}

/// `|O(V, Q)|` from the classical closed forms:
/// `2·q^{m(m−1)}·(q^m − ε)·∏_{i<m}(q^{2i} − 1)` in dimension `2m` with
/// `ε = ±1` for the hyperbolic / non-hyperbolic class, and
/// `2·q^{m²}·∏_{i≤m}(q^{2i} − 1)` in odd dimension `2m + 1`.
pub fn orthogonal_group_order(sp: &QuadSpace) -> u128 {
    let q = sp.field().order() as u128;
    let n = sp.dim();
    if n == 0 {
        return 1;
    }
    let m = (n / 2) as u32;
    let prod: u128 = (1..=m).map(|i| q.pow(2 * i) - 1).product();
    if n % 2 == 1 {
        return 2 * q.pow(m * m) * prod;
    }
    let qm = q.pow(m);
    let head = if sp.is_hyperbolic() { qm - 1 } else { qm + 1 };
    2 * q.pow(m * (m - 1)) * head * prod / (q.pow(2 * m) - 1)
}

/// `v ↦ v + f(v, u)·w − f(v, w)·u − Q(w)·f(v, u)·u` for isotropic `u` and
/// `w ⟂ u`.
fn eichler_mat(sp: &QuadSpace, u: &[Elem], w: &[Elem]) -> Mat {
    let fld = sp.field();
    let n = sp.dim();
    let qw = sp.q(w);
    let rows: Vec<Vec<Elem>> = (0..n)
        .map(|i| {
            let e = crate::linalg::unit_vector(n, i);
            let fu = sp.f(&e, u);
            let fw = sp.f(&e, w);
            let mut r = e;
            r = crate::linalg::axpy(fld, &r, fu, w);
            r = crate::linalg::axpy(fld, &r, fld.neg(fw), u);
            crate::linalg::axpy(fld, &r, fld.neg(fld.mul(qw, fu)), u)
        })
        .collect();
    Mat::from_rows(fld, n, &rows)
}

struct Closure {
    elements: Vec<Mat>,
    index: HashMap<Vec<Elem>, usize>,
    gens: Vec<Mat>,
    budget: u64,
}

impl Closure {
    fn insert(&mut self, m: Mat) -> Result<bool> {
        if self.index.contains_key(m.data()) {
            return Ok(false);
        }
        if self.elements.len() as u64 >= self.budget {
            return Err(Error::Resource(format!("group exceeds the element budget of {}", self.budget)));
        }
        self.index.insert(m.data().to_vec(), self.elements.len());
        self.elements.push(m);
        Ok(true)
    }

    /// Right multiplication by every generator, from `start` on; then the
    /// elements before `start` by generators from `first_new_gen` on.
    fn run(&mut self, start: usize, first_new_gen: usize) -> Result<()> {
        for i in 0..start {
            for g in first_new_gen..self.gens.len() {
                let p = self.elements[i].mul(&self.gens[g]);
                self.insert(p)?;
            }
        }
        let mut i = start;
        while i < self.elements.len() {
            for g in 0..self.gens.len() {
                let p = self.elements[i].mul(&self.gens[g]);
                self.insert(p)?;
            }
            i += 1;
        }
        Ok(())
    }
}

impl GroupTable {
    /// Builds `O(V, Q)` or `SO(V, Q)` by closure from all reflections, adding
    /// Eichler transformations `v ↦ v + f(v,u)w − f(v,w)u − Q(w)f(v,u)u` that
    /// the reflections miss.
    pub fn enumerate(sp: &QuadSpace, kind: GroupKind, budget: u64) -> Result<GroupTable> {
        if sp.dim() > MAX_DIM {
            return Err(Error::Resource(format!("enumeration is limited to dimension {MAX_DIM}")));
        }
        let expected = orthogonal_group_order(sp);
        let needed = match kind {
            GroupKind::O => expected,
            GroupKind::SO => expected.div_ceil(2),
        };
        if needed > budget as u128 {
            return Err(Error::Resource(format!("group of order {needed} exceeds the element budget of {budget}")));
        }
        let o = Self::closure(sp, budget.max(expected as u64))?;
        Ok(match kind {
            GroupKind::O => o,
            GroupKind::SO => o.special_subgroup(),
        })
    }

    fn closure(sp: &QuadSpace, budget: u64) -> Result<GroupTable> {
        let fld = sp.field();
        let n = sp.dim();
        let mut c = Closure { elements: Vec::new(), index: HashMap::new(), gens: Vec::new(), budget };
        c.insert(Mat::identity(fld, n))?;
        for b in anisotropic_points(sp) {
            let r = reflection_mat(sp, &b).expect("anisotropic");
            if !c.gens.contains(&r) {
                c.gens.push(r);
            }
        }
        c.run(0, 0)?;
        for u in projective_points(fld, n).filter(|u| sp.q(u).is_zero()) {
            for w in all_vectors(fld, n).filter(|w| sp.f(&u, w).is_zero()) {
                let e = eichler_mat(sp, &u, &w);
                if c.index.contains_key(e.data()) {
                    continue;
                }
                debug_assert!(preserves_form(sp, &e));
                let start = c.elements.len();
                let first = c.gens.len();
                c.gens.push(e);
                c.run(start, first)?;
            }
        }
        let gens = c.gens;
        let mut elements = c.elements;
        elements.sort_by(|a, b| a.data().cmp(b.data()));
        let mut t = GroupTable::from_sorted(sp.clone(), GroupKind::O, elements);
        t.generators = gens.iter().map(|g| t.index[g.data()]).collect();
        Ok(t)
    }

    fn from_sorted(space: QuadSpace, kind: GroupKind, elements: Vec<Mat>) -> GroupTable {
        let index: HashMap<Vec<Elem>, usize> =
            elements.iter().enumerate().map(|(i, m)| (m.data().to_vec(), i)).collect();
        let special_mask: Vec<bool> = elements.iter().map(|m| m.minus_identity().rank() % 2 == 0).collect();
        let involution_index = (0..elements.len()).filter(|&i| elements[i].mul(&elements[i]).is_identity()).collect();
        GroupTable { space, kind, elements, index, involution_index, special_mask, generators: Vec::new() }
    }

    /// `SO(V, Q)` inside `O(V, Q)`, generated by Schreier generators for the
    /// transversal `{1, r}` with `r` a non-special generator.
    pub fn special_subgroup(&self) -> GroupTable {
        let elements: Vec<Mat> =
            (0..self.len()).filter(|&i| self.special_mask[i]).map(|i| self.elements[i].clone()).collect();
        let mut t = GroupTable::from_sorted(self.space.clone(), GroupKind::SO, elements);
        let r = self.generators.iter().copied().find(|&g| !self.special_mask[g]);
        let mut gens = Vec::new();
        for &s in &self.generators {
            let sm = &self.elements[s];
            let cands: Vec<Mat> = match r {
                None => vec![sm.clone()],
                Some(r) => {
                    let rm = &self.elements[r];
                    let rinv = rm.inverse().expect("invertible");
                    if self.special_mask[s] {
                        vec![sm.clone(), rm.mul(sm).mul(&rinv)]
                    } else {
                        vec![sm.mul(&rinv), rm.mul(sm)]
                    }
                }
            };
            for c in cands {
                let i = t.index[c.data()];
                if !c.is_identity() && !gens.contains(&i) {
                    gens.push(i);
                }
            }
        }
        t.generators = gens;
        t
    }

    pub fn space(&self) -> &QuadSpace {
        &self.space
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Mat] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Mat {
        &self.elements[i]
    }

    /// The element as an orthogonal map.
    pub fn map(&self, i: usize) -> OrthMap {
        OrthMap::trusted(self.space.clone(), self.elements[i].clone())
    }

    pub fn index_of(&self, m: &Mat) -> Option<usize> {
        self.index.get(m.data()).copied()
    }

    pub fn involution_index(&self) -> &[usize] {
        &self.involution_index
    }

    pub fn is_involution(&self, i: usize) -> bool {
        self.involution_index.binary_search(&i).is_ok()
    }

    pub fn special_mask(&self) -> &[bool] {
        &self.special_mask
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Position of `φ`, or a domain error when `φ` is not in the group.
    pub fn position(&self, phi: &OrthMap) -> Result<usize> {
        if phi.space() != &self.space {
            return domain("map belongs to a different space");
        }
        self.index_of(phi.mat()).ok_or_else(|| Error::Domain("map is not an element of the group".into()))
    }

    /// Conjugacy classes: `class_of[i]` is the smallest index conjugate to `i`.
    pub fn conjugacy_classes(&self) -> Vec<usize> {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let gens: Vec<(Mat, Mat)> = self
            .generators
            .iter()
            .map(|&g| (self.elements[g].clone(), self.elements[g].inverse().expect("invertible")))
            .collect();
        for i in 0..n {
            for (g, ginv) in &gens {
                let c = ginv.mul(&self.elements[i]).mul(g);
                let j = self.index[c.data()];
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    parent[hi] = lo;
                }
            }
        }
        (0..n).map(|i| find(&mut parent, i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FiniteField;

    fn gf(q: u32) -> FiniteField {
        FiniteField::of_order(q).unwrap()
    }

    #[test]
    fn small_orders() {
        let h2 = QuadSpace::hyperbolic(gf(2), 1);
        let o = GroupTable::enumerate(&h2, GroupKind::O, DEFAULT_BUDGET).unwrap();
        assert_eq!((o.len(), o.special_subgroup().len()), (2, 1));
        let h3 = QuadSpace::hyperbolic(gf(3), 1);
        let o = GroupTable::enumerate(&h3, GroupKind::O, DEFAULT_BUDGET).unwrap();
        assert_eq!((o.len(), o.special_subgroup().len()), (4, 2));
        let h22 = QuadSpace::hyperbolic(gf(2), 2);
        assert_eq!(GroupTable::enumerate(&h22, GroupKind::O, DEFAULT_BUDGET).unwrap().len(), 72);
    }

    #[test]
    fn closed_form_orders() {
        // |O+_4(2)| = 72, |O-_4(2)| = 120, |O+_6(2)| = 40320, |O-_6(2)| = 51840
        let f = gf(2);
        let cases = [(4, true, 72), (4, false, 120), (6, true, 40320), (6, false, 51840), (2, false, 6)];
        for (n, plus, order) in cases {
            assert_eq!(orthogonal_group_order(&QuadSpace::standard(f, n, plus).unwrap()), order);
        }
        // |O_3(3)| = 2·|SO_3(3)| = 2·24, |O_1(q)| = 2
        assert_eq!(orthogonal_group_order(&QuadSpace::standard(gf(3), 3, true).unwrap()), 48);
        assert_eq!(orthogonal_group_order(&QuadSpace::standard(gf(5), 1, true).unwrap()), 2);
    }

    #[test]
    fn enumeration_matches_closed_form() {
        for q in [2, 3, 4, 5] {
            for plus in [true, false] {
                let sp = QuadSpace::standard(gf(q), 4, plus).unwrap();
                let o = GroupTable::enumerate(&sp, GroupKind::O, DEFAULT_BUDGET).unwrap();
                assert_eq!(o.len() as u128, orthogonal_group_order(&sp), "q={q} plus={plus}");
                let so = o.special_subgroup();
                assert_eq!(2 * so.len(), o.len());
            }
        }
        let sp = QuadSpace::standard(gf(3), 3, true).unwrap();
        assert_eq!(GroupTable::enumerate(&sp, GroupKind::O, DEFAULT_BUDGET).unwrap().len(), 48);
    }

    #[test]
    fn budget_and_membership() {
        let sp = QuadSpace::hyperbolic(gf(2), 2);
        assert!(matches!(GroupTable::enumerate(&sp, GroupKind::O, 10), Err(Error::Resource(_))));
        let o = GroupTable::enumerate(&sp, GroupKind::O, DEFAULT_BUDGET).unwrap();
        let so = o.special_subgroup();
        let swap = o.map(o.involution_index().iter().copied().find(|&i| !o.special_mask()[i]).unwrap());
        assert!(so.position(&swap).is_err());
        assert!(o.position(&swap).is_ok());
    }

    #[test]
    fn classes_are_unions_of_conjugates() {
        let sp = QuadSpace::standard(gf(2), 4, false).unwrap();
        let o = GroupTable::enumerate(&sp, GroupKind::O, DEFAULT_BUDGET).unwrap();
        let cls = o.conjugacy_classes();
        let mut reps: Vec<usize> = cls.clone();
        reps.sort();
        reps.dedup();
        for i in 0..o.len() {
            for j in 0..o.len() {
                let c = o.element(j).inverse().unwrap().mul(o.element(i)).mul(o.element(j));
                assert_eq!(cls[o.index_of(&c).unwrap()], cls[i]);
            }
        }
        assert!(reps.iter().all(|&r| cls[r] == r));
        // O-_4(2) is isomorphic to S_5
        assert_eq!(reps.len(), 7);
    }
}
