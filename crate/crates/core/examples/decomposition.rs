//! Orthogonal decomposition into indecomposable summands and their types.

use bireflect::ortho::full_path_element;
use bireflect::structure::{make_hyperbolic_type1, make_type1_fixture, ortho_indecomposable_summands};
use bireflect::{FiniteField, OrthMap, QuadSpace};

fn show(name: &str, phi: &OrthMap) -> bireflect::Result<()> {
    let d = ortho_indecomposable_summands(phi)?;
    println!("{name} (dim {}, minimal polynomial {}):", phi.dim(), phi.min_poly());
    for p in &d.parts {
        let divisors: Vec<String> = p.label.divisors.iter().map(|(g, e)| format!("({g})^{e:?}")).collect();
        println!("  dim {} type {} unipotent {} divisors {}", p.dim(), p.label.kind.name(), p.label.unipotent, divisors.join(" "));
    }
    assert!(d.is_valid_for(phi));
    Ok(())
}

fn main() -> bireflect::Result<()> {
    let f2 = FiniteField::of_order(2)?;
    show("type 1o fixture", &make_type1_fixture(f2, 1, false)?)?;
    show("diag(J3, J3⁺)", &make_hyperbolic_type1(f2, 3)?)?;
    show("full-path element on H⁶", &full_path_element(&QuadSpace::hyperbolic(f2, 3))?)?;
    let f5 = FiniteField::of_order(5)?;
    show("full-path element on GF(5)⁴", &full_path_element(&QuadSpace::standard(f5, 4, false)?)?)?;
    Ok(())
}
