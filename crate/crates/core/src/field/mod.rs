//! Exact arithmetic in GF(p^k) and in univariate polynomials over it.
//!
//! A field is a cheap `Copy` handle onto interned lookup tables. Elements are
//! stored as their canonical code: the base-`p` integer whose digits are the
//! coordinates with respect to the power basis of a root of the modulus.
//! Comparing codes gives the library-wide canonical order on elements.

mod factor;
mod poly;

pub use factor::{factor, is_irreducible, squarefree_decomposition};
pub use poly::Poly;

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Mutex, OnceLock};

use crate::error::{domain, Result};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u32 = 64;

/// An element of some finite field, as its canonical code.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u8);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn code(self) -> u32 {
        self.0 as u32
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

/// Handle onto GF(p^k) with a fixed modulus polynomial.
#[derive(Clone, Copy)]
pub struct FiniteField {
    t: &'static Tables,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.t, other.t)
    }
}

impl Eq for FiniteField {}

impl Hash for FiniteField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        (self.t as *const Tables as usize).hash(state);
    }
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; modulus {:?})", self.t.p, self.t.k, self.t.modulus)
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.t.q)
    }
}

type Registry = Mutex<HashMap<(u32, Vec<u32>), &'static Tables>>;

fn registry() -> &'static Registry {
    static REG: OnceLock<Registry> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

// Integer-coefficient polynomial helpers over Z/p, used only to build tables
// and to pick default moduli.
fn zp_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv_lead = zp_inv(b[db], p);
    while r.len() > db && !r.is_empty() {
        let top = *r.last().unwrap();
        if top != 0 {
            let c = top * inv_lead % p;
            let shift = r.len() - 1 - db;
            for (i, &bi) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - c * bi % p) % p;
            }
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

fn zp_inv(a: u32, p: u32) -> u32 {
    (1..p).find(|&b| a * b % p == 1).expect("nonzero residue")
}

fn zp_irreducible(f: &[u32], p: u32) -> bool {
    let n = f.len() - 1;
    if n <= 1 {
        return n == 1;
    }
    // trial division by all monic polynomials of degree 1..=n/2
    for d in 1..=n / 2 {
        let count = p.pow(d as u32);
        for low in 0..count {
            let mut g: Vec<u32> = (0..d).map(|i| low / p.pow(i as u32) % p).collect();
            g.push(1);
            if zp_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible polynomial of degree `k` over GF(p), ordered by
/// the base-`p` code of its lower coefficients.
fn default_modulus(p: u32, k: u32) -> Vec<u32> {
    if k == 1 {
        return vec![0, 1];
    }
    let count = p.pow(k);
    for low in 0..count {
        let mut f: Vec<u32> = (0..k).map(|i| low / p.pow(i) % p).collect();
        f.push(1);
        if zp_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn build_tables(p: u32, k: u32, modulus: Vec<u32>) -> Tables {
    let q = p.pow(k);
    let digits = |c: u32| -> Vec<u32> { (0..k).map(|i| c / p.pow(i) % p).collect() };
    let code = |d: &[u32]| -> u32 { d.iter().rev().fold(0, |acc, &x| acc * p + x) };
    let qs = q as usize;
    let mut add = vec![0u8; qs * qs];
    let mut mul = vec![0u8; qs * qs];
    for a in 0..q {
        let da = digits(a);
        for b in 0..q {
            let db = digits(b);
            let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            add[(a * q + b) as usize] = code(&s) as u8;
            let mut prod = vec![0u32; 2 * k as usize];
            for (i, x) in da.iter().enumerate() {
                for (j, y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let mut r = zp_rem(&prod, &modulus, p);
            r.resize(k as usize, 0);
            mul[(a * q + b) as usize] = code(&r) as u8;
        }
    }
    let mut neg = vec![0u8; qs];
    let mut inv = vec![0u8; qs];
    for a in 0..q {
        for b in 0..q {
            if add[(a * q + b) as usize] == 0 {
                neg[a as usize] = b as u8;
            }
            if mul[(a * q + b) as usize] == 1 {
                inv[a as usize] = b as u8;
            }
        }
    }
    Tables { p, k, q, modulus, add, mul, neg, inv }
}

impl FiniteField {
    /// GF(p^k) with the default (smallest) monic irreducible modulus.
    pub fn new(p: u32, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return domain(format!("{p} is not prime"));
        }
        if k == 0 {
            return domain("extension degree must be at least 1");
        }
        match p.checked_pow(k) {
            Some(q) if q <= MAX_FIELD_ORDER => {}
            _ => return domain(format!("GF({p}^{k}) exceeds {MAX_FIELD_ORDER} elements")),
        }
        Self::with_modulus(p, default_modulus(p, k))
    }

    /// GF(p) for a prime `p`.
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1)
    }

    /// The field of order `q`, if `q` is a supported prime power.
    pub fn of_order(q: u32) -> Result<Self> {
        for p in 2..=q {
            if is_prime(p) {
                let mut k = 1;
                let mut pk = p;
                while pk < q {
                    pk *= p;
                    k += 1;
                }
                if pk == q {
                    return Self::new(p, k);
                }
                if q % p == 0 {
                    break;
                }
            }
        }
        domain(format!("{q} is not a prime power"))
    }

    /// GF(p^k) where `modulus` lists the coefficients c0..ck over GF(p).
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return domain(format!("{p} is not prime"));
        }
        if modulus.len() < 2 {
            return domain("modulus must have degree at least 1");
        }
        if modulus.iter().any(|&c| c >= p) {
            return domain("modulus coefficients must lie in [0, p)");
        }
        let k = (modulus.len() - 1) as u32;
        if modulus[k as usize] != 1 {
            return domain("modulus must be monic");
        }
        // every monic linear modulus yields the same coordinates on GF(p)
        let modulus = if k == 1 { vec![0, 1] } else { modulus };
        match p.checked_pow(k) {
            Some(q) if q <= MAX_FIELD_ORDER => {}
            _ => return domain(format!("GF({p}^{k}) exceeds {MAX_FIELD_ORDER} elements")),
        }
        if !zp_irreducible(&modulus, p) {
            return domain("modulus is not irreducible");
        }
        let key = (p, modulus.clone());
        let mut reg = registry().lock().expect("field registry poisoned");
        let t = *reg
            .entry(key)
            .or_insert_with(|| Box::leak(Box::new(build_tables(p, k, modulus))));
        Ok(FiniteField { t })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.t.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.t.k
    }

    /// Number of elements p^k.
    #[inline]
    pub fn order(&self) -> u32 {
        self.t.q
    }

    /// Coefficients c0..ck of the modulus over GF(p).
    pub fn modulus(&self) -> &[u32] {
        &self.t.modulus
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    #[inline]
    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// Element from its canonical code.
    pub fn elem(&self, code: u32) -> Result<Elem> {
        if code >= self.t.q {
            return domain(format!("code {code} out of range for {self}"));
        }
        Ok(Elem(code as u8))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        let p = self.t.p as i64;
        Elem(n.rem_euclid(p) as u8)
    }

    /// Coordinates of `a` in the power basis, lowest first.
    pub fn digits(&self, a: Elem) -> Vec<u32> {
        let p = self.t.p;
        (0..self.t.k).map(|i| a.code() / p.pow(i) % p).collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<Elem> {
        if digits.len() != self.t.k as usize || digits.iter().any(|&d| d >= self.t.p) {
            return domain("digit vector does not describe a field element");
        }
        let p = self.t.p;
        Ok(Elem(digits.iter().rev().fold(0, |acc, &x| acc * p + x) as u8))
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.t.q).map(|c| Elem(c as u8))
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.t.add[a.0 as usize * self.t.q as usize + b.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.t.mul[a.0 as usize * self.t.q as usize + b.0 as usize])
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.t.neg[a.0 as usize])
    }

    /// Multiplicative inverse; zero has none.
    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return domain("inversion of zero");
        }
        Ok(Elem(self.t.inv[a.0 as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The Frobenius automorphism a ↦ a^p.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.t.p as u64)
    }

    /// Some square root of `a`, the smallest by code.
    pub fn sqrt(&self, a: Elem) -> Option<Elem> {
        self.elements().find(|&x| self.mul(x, x) == a)
    }

    pub fn is_square(&self, a: Elem) -> bool {
        self.sqrt(a).is_some()
    }

    /// Absolute trace GF(p^k) → GF(p), returned as a residue.
    pub fn abs_trace(&self, a: Elem) -> u32 {
        let mut acc = Elem::ZERO;
        let mut x = a;
        for _ in 0..self.t.k {
            acc = self.add(acc, x);
            x = self.frobenius(x);
        }
        debug_assert!(acc.code() < self.t.p);
        acc.code()
    }

    /// Smallest non-square, for odd characteristic.
    pub fn non_square(&self) -> Option<Elem> {
        self.elements().skip(1).find(|&a| !self.is_square(a))
    }

    /// Smallest element of absolute trace one, for characteristic 2.
    pub fn trace_one(&self) -> Option<Elem> {
        self.elements().find(|&a| self.abs_trace(a) == 1)
    }

    pub fn is_char2(&self) -> bool {
        self.t.p == 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gf4_reduces_by_modulus() {
        let f = FiniteField::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let t = f.from_digits(&[0, 1]).unwrap();
        let t_plus_1 = f.from_digits(&[1, 1]).unwrap();
        assert_eq!(f.mul(t, t), t_plus_1);
    }

    #[test]
    fn gf3_addition() {
        let f = FiniteField::prime(3).unwrap();
        assert_eq!(f.add(Elem(2), Elem(2)), Elem(1));
    }

    #[test]
    fn gf5_inverse() {
        let f = FiniteField::prime(5).unwrap();
        assert_eq!(f.inv(Elem(2)).unwrap(), Elem(3));
        assert!(matches!(f.inv(Elem(0)), Err(crate::Error::Domain(_))));
        assert!(f.div(Elem(1), Elem(0)).is_err());
    }

    #[test]
    fn rejects_bad_fields() {
        assert!(FiniteField::new(4, 1).is_err());
        assert!(FiniteField::new(2, 7).is_err());
        assert!(FiniteField::with_modulus(2, vec![1, 0, 1]).is_err());
        assert!(FiniteField::with_modulus(3, vec![1, 3]).is_err());
        assert!(FiniteField::of_order(6).is_err());
    }

    #[test]
    fn interning_gives_equal_handles() {
        let a = FiniteField::new(2, 3).unwrap();
        let b = FiniteField::with_modulus(2, vec![1, 1, 0, 1]).unwrap();
        assert_eq!(a, b);
        assert_eq!(FiniteField::of_order(8).unwrap(), a);
        let c = FiniteField::with_modulus(2, vec![1, 0, 1, 1]).unwrap();
        assert_ne!(a, c);
        assert_eq!(c.order(), 8);
    }

    #[test]
    fn trace_and_squares() {
        let f2 = FiniteField::prime(2).unwrap();
        assert_eq!(f2.trace_one(), Some(Elem(1)));
        let f4 = FiniteField::new(2, 2).unwrap();
        // t has trace t + t^2 = t + t + 1 = 1
        assert_eq!(f4.abs_trace(Elem(2)), 1);
        assert_eq!(f4.abs_trace(Elem(1)), 0);
        let f5 = FiniteField::prime(5).unwrap();
        assert_eq!(f5.non_square(), Some(Elem(2)));
        let f3 = FiniteField::prime(3).unwrap();
        assert_eq!(f3.non_square(), Some(Elem(2)));
    }

    fn field_strategy() -> impl Strategy<Value = FiniteField> {
        prop::sample::select(vec![2u32, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64])
            .prop_map(|q| FiniteField::of_order(q).unwrap())
    }

    proptest! {
        #[test]
        fn field_axioms(f in field_strategy(), a in 0u32..64, b in 0u32..64, c in 0u32..64) {
            let q = f.order();
            let (a, b, c) = (Elem((a % q) as u8), Elem((b % q) as u8), Elem((c % q) as u8));
            prop_assert_eq!(f.add(a, b), f.add(b, a));
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
            if !a.is_zero() {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
            }
        }

        #[test]
        fn frobenius_is_additive_and_multiplicative(f in field_strategy(), a in 0u32..64, b in 0u32..64) {
            let q = f.order();
            let (a, b) = (Elem((a % q) as u8), Elem((b % q) as u8));
            prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
            prop_assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
        }
    }
}
