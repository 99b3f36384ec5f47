//! Exhaustive searches over an enumerated group.

use crate::error::Result;
use crate::ortho::OrthMap;

use super::group::GroupTable;

/// First involution pair `(s, t)` in canonical order with `s·t = φ`.
pub fn brute_bireflectional(phi: &OrthMap, g: &GroupTable) -> Result<Option<(usize, usize)>> {
    g.position(phi)?;
    for &s in g.involution_index() {
        let t = g.element(s).mul(phi.mat());
        if let Some(j) = g.index_of(&t) {
            if g.is_involution(j) {
                return Ok(Some((s, j)));
            }
        }
    }
    Ok(None)
}

/// First `α` with `α⁻¹·φ·α = φ⁻¹`.
pub fn brute_reversible(phi: &OrthMap, g: &GroupTable) -> Result<Option<usize>> {
    g.position(phi)?;
    let inv = phi.inverse();
    Ok((0..g.len()).find(|&a| phi.mat().mul(g.element(a)) == g.element(a).mul(inv.mat())))
}

/// All elements commuting with `φ`.
pub fn brute_centralizer(phi: &OrthMap, g: &GroupTable) -> Result<Vec<usize>> {
    g.position(phi)?;
    Ok((0..g.len()).filter(|&a| phi.commutes_with(g.element(a))).collect())
}

/// All `ψ` with `ψ² = φ`.
pub fn brute_square_roots(phi: &OrthMap, g: &GroupTable) -> Result<Vec<usize>> {
    g.position(phi)?;
    Ok((0..g.len()).filter(|&a| g.element(a).mul(g.element(a)) == *phi.mat()).collect())
}

/// All involutions `σ` with `σ·φ·σ = φ⁻¹`.
pub fn brute_inverting_involutions(phi: &OrthMap, g: &GroupTable) -> Result<Vec<usize>> {
    g.position(phi)?;
    let inv = phi.inverse();
    Ok(g
        .involution_index()
        .iter()
        .copied()
        .filter(|&s| g.element(s).mul(phi.mat()).mul(g.element(s)) == *inv.mat())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Elem, FiniteField};
    use crate::linalg::Mat;
    use crate::oracle::group::{GroupKind, DEFAULT_BUDGET};
    use crate::ortho::full_path_element;
    use crate::quadspace::QuadSpace;
    use crate::structure::{make_type1_fixture, make_hyperbolic_type1};
    use crate::witness::square_root_type1o;

    fn gf(q: u32) -> FiniteField {
        FiniteField::of_order(q).unwrap()
    }

    fn so(sp: &QuadSpace) -> GroupTable {
        GroupTable::enumerate(sp, GroupKind::SO, DEFAULT_BUDGET).unwrap()
    }

    fn o(sp: &QuadSpace) -> GroupTable {
        GroupTable::enumerate(sp, GroupKind::O, DEFAULT_BUDGET).unwrap()
    }

    #[test]
    fn identity_and_minus_identity() {
        let h3 = QuadSpace::hyperbolic(gf(3), 1);
        let g = so(&h3);
        let id = OrthMap::identity(h3.clone());
        let i = g.position(&id).unwrap();
        assert_eq!(brute_bireflectional(&id, &g).unwrap(), Some((i, i)));
        let minus = OrthMap::new(h3, Mat::identity(gf(3), 2).neg()).unwrap();
        assert!(brute_bireflectional(&minus, &g).unwrap().is_some());
        assert_eq!(brute_centralizer(&id, &g).unwrap().len(), g.len());
    }

    #[test]
    fn gf4_plane_has_no_pairs() {
        let h4 = QuadSpace::hyperbolic(gf(4), 1);
        let g = so(&h4);
        assert_eq!(g.len(), 3);
        let psi = full_path_element(&h4).unwrap();
        assert_eq!(brute_bireflectional(&psi, &g).unwrap(), None);
        assert_eq!(brute_reversible(&psi, &g).unwrap(), None);
        // the inverse is reached by a non-special conjugator
        assert!(brute_reversible(&psi, &o(&h4)).unwrap().is_some());
    }

    #[test]
    fn involutions_are_reversed_by_identity() {
        let sp = QuadSpace::hyperbolic(gf(2), 2);
        let g = o(&sp);
        let id = g.position(&OrthMap::identity(sp.clone())).unwrap();
        for &s in g.involution_index() {
            let a = brute_reversible(&g.map(s), &g).unwrap().unwrap();
            assert!(a <= id);
        }
    }

    #[test]
    fn square_roots() {
        let h2 = QuadSpace::hyperbolic(gf(2), 1);
        let g = o(&h2);
        assert_eq!(brute_square_roots(&OrthMap::identity(h2), &g).unwrap().len(), 2);
        let e = make_hyperbolic_type1(gf(2), 2).unwrap();
        assert!(brute_square_roots(&e, &o(e.space())).unwrap().is_empty());
        let t1o = make_type1_fixture(gf(2), 1, false).unwrap();
        let g = o(t1o.space());
        let roots = brute_square_roots(&t1o, &g).unwrap();
        let psi = square_root_type1o(&t1o).unwrap();
        assert!(roots.contains(&g.position(&psi).unwrap()));
    }

    #[test]
    fn membership_is_checked() {
        let sp = QuadSpace::hyperbolic(gf(2), 2);
        let g = so(&sp);
        let swap = crate::ortho::reflection(&sp, &[Elem(1), Elem(1), Elem(0), Elem(0)]).unwrap();
        assert!(brute_centralizer(&swap, &g).is_err());
    }
}
