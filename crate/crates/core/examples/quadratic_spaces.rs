//! The two isometry classes of quadratic space in each dimension.

use bireflect::{FiniteField, QuadSpace};

fn main() -> bireflect::Result<()> {
    for q in [2, 3, 4, 5] {
        let f = FiniteField::of_order(q)?;
        for n in 1..=4 {
            if n % 2 == 1 && f.is_char2() {
                continue;
            }
            for plus in [true, false] {
                let sp = QuadSpace::standard(f, n, plus)?;
                let invariant = if f.is_char2() {
                    format!("arf {}", sp.arf_invariant()?)
                } else {
                    format!("det square {}", sp.det_is_square()?)
                };
                println!(
                    "GF({q}) dim {n} {}: Witt index {}, hyperbolic {}, {invariant}",
                    if plus { "+" } else { "-" },
                    sp.witt_index(),
                    sp.is_hyperbolic(),
                );
            }
        }
    }

    let f = FiniteField::of_order(3)?;
    let a = QuadSpace::hyperbolic(f, 1).orthogonal_sum(&QuadSpace::hyperbolic(f, 1));
    let b = QuadSpace::standard(f, 4, true)?;
    println!("H ⊥ H over GF(3) isometric to the standard + space: {}", a.find_isometry(&b).is_some());
    Ok(())
}
