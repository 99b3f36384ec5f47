//! Orthogonal square roots exist exactly for type 1o in characteristic 2.

use bireflect::oracle::{brute_square_roots, GroupKind, GroupTable, DEFAULT_BUDGET};
use bireflect::structure::{make_hyperbolic_type1, make_type1_fixture};
use bireflect::witness::square_root_type1o;
use bireflect::FiniteField;

fn main() -> bireflect::Result<()> {
    for q in [2, 4] {
        let f = FiniteField::of_order(q)?;
        let phi = make_type1_fixture(f, 1, false)?;
        let psi = square_root_type1o(&phi)?;
        assert_eq!(psi.compose(&psi)?, phi);
        println!("GF({q}) dim {}: square root found, special {}", phi.dim(), psi.is_special());
    }

    let e = make_hyperbolic_type1(FiniteField::of_order(2)?, 2)?;
    match square_root_type1o(&e) {
        Err(err) => println!("type 1e: {err}"),
        Ok(_) => unreachable!("type 1e has no orthogonal square root"),
    }
    let o = GroupTable::enumerate(e.space(), GroupKind::O, DEFAULT_BUDGET)?;
    println!("exhaustive search over O ({} elements): {} roots", o.len(), brute_square_roots(&e, &o)?.len());
    Ok(())
}
