//! Factorisation over GF(q): squarefree decomposition, distinct-degree
//! splitting, then Cantor–Zassenhaus equal-degree splitting driven by a
//! seeded generator so that every run returns the same factor order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Elem, Poly};
use crate::error::{domain, Result};

const EDF_SEED: u64 = 0x5eed_0f_f1e1d;

/// Squarefree decomposition of a monic polynomial: pairs `(g, i)` with the
/// `g` pairwise coprime, squarefree, and `f = Π g^i`.
pub fn squarefree_decomposition(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    if f.is_zero() {
        return domain("cannot factor the zero polynomial");
    }
    let mut out = Vec::new();
    sff(&f.monic(), 1, &mut out);
    Ok(out)
}

fn sff(f: &Poly, mult: usize, out: &mut Vec<(Poly, usize)>) {
    let field = f.field();
    if f.deg() == 0 {
        return;
    }
    let p = field.characteristic() as usize;
    let mut c = f.gcd(&f.derivative());
    let mut w = f.exact_div(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.exact_div(&y);
        if fac.deg() > 0 {
            out.push((fac.monic(), i * mult));
        }
        w = y;
        c = c.exact_div(&w);
        i += 1;
    }
    if c.deg() > 0 {
        sff(&c.monic().pth_root(), mult * p, out);
    }
}

/// Distinct-degree splitting of a squarefree monic polynomial: pairs
/// `(g, d)` where `g` is the product of all irreducible factors of degree `d`.
fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field();
    let q = field.order() as u128;
    let x = Poly::x(field);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.deg() >= 2 * d {
        h = h.pow_mod(q, &rest);
        let g = rest.gcd(&h.sub(&x));
        if g.deg() > 0 {
            rest = rest.exact_div(&g);
            h = h.rem(&rest).expect("nonzero");
            out.push((g, d));
        }
        d += 1;
    }
    if rest.deg() > 0 {
        let dr = rest.deg();
        out.push((rest, dr));
    }
    out
}

/// Splits a product of distinct irreducibles of degree `d` into its factors.
fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    let n = f.deg();
    if n == d {
        out.push(f.monic());
        return;
    }
    let field = f.field();
    let q = field.order();
    loop {
        let coeffs: Vec<Elem> = (0..n).map(|_| Elem(rng.gen_range(0..q) as u8)).collect();
        let a = Poly::new(field, coeffs);
        if a.deg() == 0 {
            continue;
        }
        let b = if field.is_char2() {
            // trace map a + a^2 + ... + a^(2^(kd-1))
            let steps = field.degree() as usize * d;
            let mut t = a.rem(f).expect("nonzero");
            let mut acc = t.clone();
            for _ in 1..steps {
                t = t.mul(&t).rem(f).expect("nonzero");
                acc = acc.add(&t);
            }
            acc
        } else {
            // a^((q^d - 1)/2) = (Π_i a^(q^i))^((q - 1)/2)
            let mut t = a.rem(f).expect("nonzero");
            let mut norm = t.clone();
            for _ in 1..d {
                t = t.pow_mod(q as u128, f);
                norm = norm.mul(&t).rem(f).expect("nonzero");
            }
            norm.pow_mod(((q - 1) / 2) as u128, f).sub(&Poly::one(field))
        };
        let g = f.gcd(&b);
        if g.deg() > 0 && g.deg() < n {
            let h = f.exact_div(&g);
            equal_degree(&g, d, rng, out);
            equal_degree(&h.monic(), d, rng, out);
            return;
        }
    }
}

/// Complete factorisation of a nonzero polynomial into monic irreducibles,
/// with multiplicities, in canonical order. The leading coefficient is dropped.
pub fn factor(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let sq = squarefree_decomposition(f)?;
    let mut rng = ChaCha8Rng::seed_from_u64(EDF_SEED);
    let mut out: Vec<(Poly, usize)> = Vec::new();
    for (g, mult) in sq {
        for (h, d) in distinct_degree(&g) {
            let mut parts = Vec::new();
            equal_degree(&h, d, &mut rng, &mut parts);
            for part in parts {
                match out.iter_mut().find(|(p, _)| *p == part) {
                    Some(entry) => entry.1 += mult,
                    None => out.push((part, mult)),
                }
            }
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(out)
}

/// True iff `f` has positive degree and no nontrivial factorisation.
pub fn is_irreducible(f: &Poly) -> bool {
    if f.deg() == 0 {
        return false;
    }
    matches!(factor(f).as_deref(), Ok([(_, 1)]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FiniteField;
    use proptest::prelude::*;

    fn p(f: FiniteField, c: &[u32]) -> Poly {
        Poly::from_codes(f, c).unwrap()
    }

    /// Independent oracle: trial division by every monic polynomial in
    /// increasing degree.
    fn factor_brute_force(f: &Poly) -> Vec<(Poly, usize)> {
        let field = f.field();
        let q = field.order();
        let mut rest = f.monic();
        let mut out: Vec<(Poly, usize)> = Vec::new();
        let mut d = 1;
        while rest.deg() > 0 {
            if 2 * d > rest.deg() {
                out.push((rest.clone(), 1));
                break;
            }
            for low in 0..q.pow(d as u32) {
                let mut coeffs: Vec<Elem> =
                    (0..d).map(|i| Elem((low / q.pow(i as u32) % q) as u8)).collect();
                coeffs.push(Elem::ONE);
                let g = Poly::new(field, coeffs);
                while g.divides(&rest) {
                    rest = rest.exact_div(&g);
                    match out.iter_mut().find(|(h, _)| *h == g) {
                        Some(e) => e.1 += 1,
                        None => out.push((g.clone(), 1)),
                    }
                }
            }
            d += 1;
        }
        out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        out
    }

    #[test]
    fn freshman_dream_in_char_two() {
        let f2 = FiniteField::prime(2).unwrap();
        assert_eq!(factor(&p(f2, &[1, 0, 1])).unwrap(), vec![(p(f2, &[1, 1]), 2)]);
    }

    #[test]
    fn irreducible_quadratic_and_quartic() {
        let f2 = FiniteField::prime(2).unwrap();
        assert_eq!(factor(&p(f2, &[1, 1, 1])).unwrap(), vec![(p(f2, &[1, 1, 1]), 1)]);
        let quartic = p(f2, &[1, 1, 0, 0, 1]);
        assert!(is_irreducible(&quartic));
        assert_eq!(factor_brute_force(&quartic), vec![(quartic.clone(), 1)]);
    }

    #[test]
    fn zero_is_rejected() {
        let f2 = FiniteField::prime(2).unwrap();
        assert!(factor(&Poly::zero(f2)).is_err());
    }

    #[test]
    fn mixed_multiplicities() {
        let f3 = FiniteField::prime(3).unwrap();
        // (x+1)^3 (x^2+1)^2 x
        let a = p(f3, &[1, 1]).pow(3).mul(&p(f3, &[1, 0, 1]).pow(2)).mul(&p(f3, &[0, 1]));
        let fac = factor(&a).unwrap();
        assert_eq!(fac, factor_brute_force(&a));
        assert_eq!(fac.len(), 3);
    }

    fn poly_strategy() -> impl Strategy<Value = (u32, Vec<u32>)> {
        (prop::sample::select(vec![2u32, 3, 4, 5, 8, 9]), prop::collection::vec(0u32..64, 1..9))
    }

    fn build(q: u32, raw: &[u32]) -> Poly {
        let f = FiniteField::of_order(q).unwrap();
        let mut coeffs: Vec<Elem> = raw.iter().map(|&c| Elem((c % q) as u8)).collect();
        coeffs.push(Elem::ONE);
        Poly::new(f, coeffs)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn factor_matches_trial_division((q, raw) in poly_strategy()) {
            let f = build(q, &raw);
            let fac = factor(&f).unwrap();
            prop_assert_eq!(&fac, &factor_brute_force(&f));
            let prod = fac.iter().fold(Poly::one(f.field()), |acc, (g, m)| acc.mul(&g.pow(*m as u64)));
            prop_assert_eq!(prod, f);
        }

        #[test]
        fn factor_is_multiplicative((q, raw) in poly_strategy(), raw2 in prop::collection::vec(0u32..64, 1..6)) {
            let f = build(q, &raw);
            let g = build(q, &raw2);
            let mut union = factor(&f).unwrap();
            for (h, m) in factor(&g).unwrap() {
                match union.iter_mut().find(|(x, _)| *x == h) {
                    Some(e) => e.1 += m,
                    None => union.push((h, m)),
                }
            }
            union.sort_by(|a, b| a.0.canonical_cmp(&b.0));
            prop_assert_eq!(factor(&f.mul(&g)).unwrap(), union);
        }

        #[test]
        fn reciprocal_is_an_involution((q, raw) in poly_strategy()) {
            let f = build(q, &raw);
            prop_assume!(!f.coeff(0).is_zero());
            let r = f.reciprocal().unwrap();
            prop_assert!(r.is_monic());
            prop_assert_eq!(r.reciprocal().unwrap(), f);
        }
    }
}
