//! Verdicts and explicit factorizations into two involutions of SO.

use bireflect::ortho::full_path_element;
use bireflect::witness::is_bireflectional_so;
use bireflect::{FiniteField, Mat, OrthMap, QuadSpace};

fn report(name: &str, phi: &OrthMap) -> bireflect::Result<()> {
    let r = is_bireflectional_so(phi)?;
    println!("{name}: {:?} ({}), reversible {}", r.verdict, r.reason, r.reversible);
    if let Some((s, t)) = &r.pair {
        assert_eq!(s.compose(t)?, *phi);
        println!("  σ = {:?}\n  τ = {:?}", s.mat().codes(), t.mat().codes());
    }
    Ok(())
}

fn main() -> bireflect::Result<()> {
    let f3 = FiniteField::of_order(3)?;
    let h = QuadSpace::hyperbolic(f3, 1);
    report("−1 on H over GF(3)", &OrthMap::new(h, Mat::identity(f3, 2).neg())?)?;

    let f2 = FiniteField::of_order(2)?;
    report("full path on H⁴ over GF(2)", &full_path_element(&QuadSpace::hyperbolic(f2, 2))?)?;
    report("full path on H⁶ over GF(2)", &full_path_element(&QuadSpace::hyperbolic(f2, 3))?)?;

    let f5 = FiniteField::of_order(5)?;
    report("full path on GF(5)⁶, − class", &full_path_element(&QuadSpace::standard(f5, 6, false)?)?)?;
    Ok(())
}
