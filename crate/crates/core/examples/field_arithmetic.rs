//! Arithmetic in GF(4) and factoring over it.

use bireflect::field::{factor, is_irreducible};
use bireflect::{FiniteField, Poly};

fn main() -> bireflect::Result<()> {
    let f = FiniteField::of_order(4)?;
    println!("GF(4): characteristic {}, modulus {:?}", f.characteristic(), f.modulus());
    for a in f.elements() {
        let inv = f.inv(a).map(|b| b.code().to_string()).unwrap_or_else(|_| "-".into());
        println!("  {} : square {}, inverse {}, trace {}", a.code(), f.mul(a, a).code(), inv, f.abs_trace(a));
    }

    // x^4 + x is the product of x - a over all a in GF(4)
    let p = Poly::from_codes(f, &[0, 1, 0, 0, 1])?;
    println!("{p} factors as:");
    for (g, e) in factor(&p)? {
        println!("  ({g})^{e}, irreducible = {}", is_irreducible(&g));
    }

    let g = Poly::from_codes(f, &[2, 1, 1])?;
    println!("{g} has reciprocal {}", g.reciprocal()?);
    Ok(())
}
