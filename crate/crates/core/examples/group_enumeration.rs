//! Enumerating O and SO and checking the closed-form orders.

use bireflect::oracle::{brute_bireflectional, orthogonal_group_order, GroupKind, GroupTable, DEFAULT_BUDGET};
use bireflect::witness::is_group_bireflectional;
use bireflect::{FiniteField, QuadSpace};

fn main() -> bireflect::Result<()> {
    for (q, n) in [(2, 2), (3, 2), (4, 2), (5, 2), (2, 4), (3, 3), (3, 4)] {
        let f = FiniteField::of_order(q)?;
        for plus in [true, false] {
            let sp = QuadSpace::standard(f, n, plus)?;
            let o = GroupTable::enumerate(&sp, GroupKind::O, DEFAULT_BUDGET)?;
            let so = o.special_subgroup();
            assert_eq!(o.len() as u128, orthogonal_group_order(&sp));
            let reps = so.conjugacy_classes();
            let mut classes: Vec<usize> = reps.clone();
            classes.sort_unstable();
            classes.dedup();
            let mut bad = 0;
            for &c in &classes {
                if brute_bireflectional(&so.map(c), &so)?.is_none() {
                    bad += 1;
                }
            }
            println!(
                "GF({q}) dim {n} {}: |O| = {}, |SO| = {}, {} SO-classes, {} not bireflectional (classifier says all: {})",
                if plus { "+" } else { "-" },
                o.len(),
                so.len(),
                classes.len(),
                bad,
                is_group_bireflectional(&sp),
            );
        }
    }
    Ok(())
}
