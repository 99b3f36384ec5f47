use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::sample::Index;

use bireflect::oracle::{brute_bireflectional, brute_reversible, GroupKind, GroupTable, DEFAULT_BUDGET};
use bireflect::structure::{certify_indecomposable, make_type1_fixture, ortho_indecomposable_summands, TypeKind};
use bireflect::witness::{inverting_involution, is_bireflectional_so, lemma4_basis, square_root_type1o, FixDim};
use bireflect::{FiniteField, QuadSpace};

/// O and SO tables for every small space: (q, n) with both classes.
fn groups() -> &'static [(GroupTable, GroupTable)] {
    static GROUPS: OnceLock<Vec<(GroupTable, GroupTable)>> = OnceLock::new();
    GROUPS.get_or_init(|| {
        let mut out = Vec::new();
        for (q, n) in [(2, 2), (2, 4), (3, 2), (3, 3), (3, 4), (4, 2), (4, 4), (5, 2), (5, 3)] {
            let f = FiniteField::of_order(q).unwrap();
            for plus in [true, false] {
                let sp = QuadSpace::standard(f, n, plus).unwrap();
                let o = GroupTable::enumerate(&sp, GroupKind::O, DEFAULT_BUDGET).unwrap();
                let so = o.special_subgroup();
                out.push((o, so));
            }
        }
        out
    })
}

fn pick(which: &Index) -> &'static (GroupTable, GroupTable) {
    which.get(groups())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn classifier_matches_exhaustive_search(g in any::<Index>(), e in any::<Index>()) {
        let (_, so) = pick(&g);
        let phi = so.map(e.index(so.len()));
        let r = is_bireflectional_so(&phi).unwrap();
        let brute = brute_bireflectional(&phi, so).unwrap();
        prop_assert_eq!(r.is_bireflectional(), brute.is_some());
        prop_assert_eq!(r.reversible, brute_reversible(&phi, so).unwrap().is_some());
        prop_assert_eq!(r.reversible, r.is_bireflectional());
        match &r.pair {
            Some((s, t)) => {
                prop_assert!(s.is_involution() && t.is_involution());
                prop_assert!(s.is_special() && t.is_special());
                prop_assert_eq!(&s.compose(t).unwrap(), &phi);
            }
            None => prop_assert!(!r.is_bireflectional()),
        }
    }

    #[test]
    fn verdict_is_a_conjugacy_invariant(g in any::<Index>(), e in any::<Index>(), a in any::<Index>()) {
        let (o, so) = pick(&g);
        let phi = so.map(e.index(so.len()));
        let alpha = o.element(a.index(o.len()));
        let conj = phi.conjugate_by(alpha).unwrap();
        prop_assert_eq!(
            is_bireflectional_so(&phi).unwrap().verdict,
            is_bireflectional_so(&conj).unwrap().verdict
        );
    }

    #[test]
    fn decompositions_are_valid_and_indecomposable(g in any::<Index>(), e in any::<Index>()) {
        let (o, _) = pick(&g);
        let phi = o.map(e.index(o.len()));
        let d = ortho_indecomposable_summands(&phi).unwrap();
        prop_assert!(d.is_valid_for(&phi));
        prop_assert_eq!(d.parts.iter().map(|p| p.dim()).sum::<usize>(), phi.dim());
        for p in &d.parts {
            prop_assert!(certify_indecomposable(&p.map));
        }
    }

    #[test]
    fn indecomposables_have_half_dimensional_inverters(g in any::<Index>(), e in any::<Index>()) {
        let (o, _) = pick(&g);
        let phi = o.map(e.index(o.len()));
        for p in &ortho_indecomposable_summands(&phi).unwrap().parts {
            let s = inverting_involution(&p.map, FixDim::Half).unwrap();
            prop_assert!(s.is_involution());
            prop_assert_eq!(s.fix().dim(), p.dim() / 2);
            prop_assert_eq!(s.compose(&p.map).unwrap().compose(&s).unwrap(), p.map.inverse());
            let unipotent_flexible = p.label.unipotent
                && matches!(p.label.kind, TypeKind::Type1o | TypeKind::Type2);
            if unipotent_flexible {
                let s = inverting_involution(&p.map, FixDim::HalfPlusOne).unwrap();
                prop_assert_eq!(s.fix().dim(), p.dim() / 2 + 1);
            }
        }
    }

}

// (q, m) pairs with a feasible splitting search
const TYPE1O_SIZES: [(u32, usize); 7] = [(2, 0), (2, 1), (2, 2), (4, 0), (4, 1), (4, 2), (8, 1)];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn type1o_fixtures_have_roots_and_paired_bases((q, m) in prop::sample::select(TYPE1O_SIZES.to_vec())) {
        let f = FiniteField::of_order(q).unwrap();
        let phi = make_type1_fixture(f, m, false).unwrap();
        prop_assert_eq!(phi.dim(), 4 * m + 2);
        let psi = square_root_type1o(&phi).unwrap();
        prop_assert_eq!(&psi.compose(&psi).unwrap(), &phi);
        prop_assert!(!psi.is_special());
        let b = lemma4_basis(&phi).unwrap();
        prop_assert!(b.satisfies(&phi, phi.dim()));
    }

    #[test]
    fn type1e_fixtures_have_no_roots(q in prop::sample::select(vec![2u32, 4, 8]), m in 1usize..=2) {
        let f = FiniteField::of_order(q).unwrap();
        let phi = make_type1_fixture(f, m, true).unwrap();
        prop_assert_eq!(phi.dim(), 4 * m);
        prop_assert!(square_root_type1o(&phi).is_err());
    }
}
