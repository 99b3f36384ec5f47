//! Reflections, path dimension and membership in SO.

use bireflect::linalg::all_vectors;
use bireflect::ortho::{full_path_element, reflection, reflection_factorization};
use bireflect::{FiniteField, QuadSpace};

fn main() -> bireflect::Result<()> {
    let f = FiniteField::of_order(2)?;
    let sp = QuadSpace::hyperbolic(f, 3);

    let b = all_vectors(f, 6).find(|v| !sp.q(v).is_zero()).expect("anisotropic vector");
    let r = reflection(&sp, &b)?;
    println!("reflection: path dim {}, special {}, involution {}", r.path_dim(), r.is_special(), r.is_involution());

    let phi = full_path_element(&sp)?;
    println!("full-path element: path dim {}, fix dim {}, special {}", phi.path_dim(), phi.fix().dim(), phi.is_special());

    let factors = reflection_factorization(&phi)?;
    println!("written as a product of {} reflections:", factors.len());
    let mut prod = bireflect::OrthMap::identity(sp.clone());
    for v in &factors {
        println!("  {:?}", v.iter().map(|e| e.code()).collect::<Vec<_>>());
        prod = prod.compose(&reflection(&sp, v)?)?;
    }
    assert_eq!(prod, phi);
    Ok(())
}
