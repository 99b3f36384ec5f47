//! Involutions conjugating a map to its inverse, with a chosen fixed-space
//! dimension.

use bireflect::structure::{make_hyperbolic_type1, make_type1_fixture, realize_cyclic, unipotent_poly};
use bireflect::witness::{inverting_involution, FixDim};
use bireflect::{FiniteField, OrthMap, QuadSpace};

fn show(name: &str, phi: &OrthMap) -> bireflect::Result<()> {
    for want in [FixDim::Half, FixDim::HalfPlusOne] {
        match inverting_involution(phi, want) {
            Ok(s) => {
                assert_eq!(s.compose(phi)?.compose(&s)?, phi.inverse());
                println!("{name}: fix dim {} (special {})", s.fix().dim(), s.is_special());
            }
            Err(e) => println!("{name}: {want:?} unavailable: {e}"),
        }
    }
    Ok(())
}

fn main() -> bireflect::Result<()> {
    let f = FiniteField::of_order(2)?;
    show("type 1o, dim 6", &make_type1_fixture(f, 1, false)?)?;
    show("type 1e, dim 4", &make_hyperbolic_type1(f, 2)?)?;
    let sp = QuadSpace::hyperbolic(f, 2);
    show("cyclic unipotent, dim 4", &realize_cyclic(&sp, &unipotent_poly(f, 4))?)?;
    Ok(())
}
