//! Runs every exhaustive check on one space, e.g.
//! `cargo run --release --example verify_space -- 3 4`.

use bireflect::oracle::verify_theorems;
use bireflect::{FiniteField, QuadSpace};

fn main() -> bireflect::Result<()> {
    let mut args = std::env::args().skip(1);
    let q: u32 = args.next().and_then(|s| s.parse().ok()).unwrap_or(3);
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(4);
    let f = FiniteField::of_order(q)?;
    for plus in [true, false] {
        let sp = QuadSpace::standard(f, n, plus)?;
        let r = verify_theorems(&sp)?;
        println!("GF({q}) dim {n} {}: |O| = {}, |SO| = {}", if plus { "+" } else { "-" }, r.order_o, r.order_so);
        for c in &r.claims {
            if c.instances > 0 {
                println!("  {:<36} {:>7} instances, {} failures", c.claim_id, c.instances, c.failure_count);
            }
        }
        for e in &r.evidence {
            println!("  evidence {}: {}", e.name, e.count);
        }
        println!("  all pass: {}", r.all_pass());
    }
    Ok(())
}
