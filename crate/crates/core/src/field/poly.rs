use std::cmp::Ordering;
use std::fmt;

use super::{Elem, FiniteField};
use crate::error::{domain, Result};

/// Univariate polynomial over a finite field, coefficients lowest degree first.
///
/// The zero polynomial has no coefficients; otherwise the leading coefficient
/// is nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FiniteField,
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(field: FiniteField, coeffs: Vec<Elem>) -> Self {
        let mut p = Poly { field, coeffs };
        p.trim();
        p
    }

    /// From canonical element codes, lowest degree first.
    pub fn from_codes(field: FiniteField, codes: &[u32]) -> Result<Self> {
        let coeffs = codes.iter().map(|&c| field.elem(c)).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(field, coeffs))
    }

    pub fn zero(field: FiniteField) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: FiniteField) -> Self {
        Self::constant(field, Elem::ONE)
    }

    pub fn constant(field: FiniteField, c: Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// The polynomial `x`.
    pub fn x(field: FiniteField) -> Self {
        Self::new(field, vec![Elem::ZERO, Elem::ONE])
    }

    /// `x - a`.
    pub fn linear(field: FiniteField, a: Elem) -> Self {
        Self::new(field, vec![field.neg(a), Elem::ONE])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> FiniteField {
        self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Elem::ONE
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Elem::ONE
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    pub fn scale(&self, c: Elem) -> Self {
        let f = self.field;
        Self::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(f, (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(f, (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn neg(&self) -> Self {
        let f = self.field;
        Self::new(f, self.coeffs.iter().map(|&a| f.neg(a)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f);
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Self::new(f, out)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder; division by zero is a domain error.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let f = self.field;
        if d.is_zero() {
            return domain("polynomial division by zero");
        }
        let dd = d.deg();
        let inv_lead = f.inv(d.leading())?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(f), self.clone()));
        }
        let mut quot = vec![Elem::ZERO; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = f.mul(r[i], inv_lead);
            if c.is_zero() {
                continue;
            }
            let shift = i - dd;
            quot[shift] = c;
            for (j, &dj) in d.coeffs.iter().enumerate() {
                r[shift + j] = f.sub(r[shift + j], f.mul(c, dj));
            }
        }
        r.truncate(dd);
        Ok((Self::new(f, quot), Self::new(f, r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.div_rem(d)?.1)
    }

    /// Exact quotient; panics if `d` is zero.
    pub fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Self) -> bool {
        !self.is_zero() && other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        self.mul(other).exact_div(&self.gcd(other)).monic()
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u128, m: &Self) -> Self {
        let mut base = self.rem(m).expect("nonzero modulus");
        let mut acc = Self::one(self.field).rem(m).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m).expect("nonzero modulus");
            }
            base = base.mul(&base).rem(m).expect("nonzero modulus");
            e >>= 1;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let f = self.field;
        Self::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
                .collect(),
        )
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = self.field;
        self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// The p-th root of a polynomial whose exponents are all multiples of p.
    pub(crate) fn pth_root(&self) -> Self {
        let f = self.field;
        let p = f.characteristic() as usize;
        // x ↦ x^(p^(k-1)) inverts the Frobenius on GF(p^k)
        let root_exp = (f.order() / f.characteristic()) as u64;
        let coeffs = self
            .coeffs
            .iter()
            .step_by(p)
            .map(|&c| f.pow(c, root_exp))
            .collect();
        Self::new(f, coeffs)
    }

    /// Reciprocal polynomial f(0)⁻¹ · x^deg f · f(1/x), normalised to be monic.
    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = self.coeff(0);
        if self.is_zero() || c0.is_zero() {
            return domain("reciprocal needs a nonzero constant term");
        }
        let rev: Vec<Elem> = self.coeffs.iter().rev().copied().collect();
        Ok(Self::new(self.field, rev).monic())
    }

    /// Canonical order: by degree, then coefficients from the top down.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }

    pub fn codes(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.code()).collect()
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let show_coeff = c.code() != 1 || i == 0;
            if show_coeff {
                write!(f, "{}", c.code())?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(f: FiniteField, c: &[u32]) -> Poly {
        Poly::from_codes(f, c).unwrap()
    }

    #[test]
    fn reciprocal_examples() {
        let f2 = FiniteField::prime(2).unwrap();
        assert_eq!(p(f2, &[1, 1, 1]).reciprocal().unwrap(), p(f2, &[1, 1, 1]));
        let f5 = FiniteField::prime(5).unwrap();
        // x - 2 = x + 3  ↦  x - 3 = x + 2
        assert_eq!(p(f5, &[3, 1]).reciprocal().unwrap(), p(f5, &[2, 1]));
        let f3 = FiniteField::prime(3).unwrap();
        assert_eq!(p(f3, &[2, 1]).reciprocal().unwrap(), p(f3, &[2, 1]));
        assert!(p(f3, &[0, 1]).reciprocal().is_err());
        assert!(Poly::zero(f3).reciprocal().is_err());
    }

    #[test]
    fn division_and_gcd() {
        let f3 = FiniteField::prime(3).unwrap();
        let a = p(f3, &[2, 0, 1]); // x^2 - 1
        let b = p(f3, &[1, 1]); // x + 1
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, p(f3, &[2, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(f3, &[2, 1])), p(f3, &[2, 1]));
        assert!(a.div_rem(&Poly::zero(f3)).is_err());
        assert_eq!(a.lcm(&b), a);
    }

    #[test]
    fn pth_root_inverts_frobenius() {
        let f4 = FiniteField::new(2, 2).unwrap();
        let g = p(f4, &[2, 3, 1]);
        let sq = g.mul(&g);
        assert!(sq.derivative().is_zero());
        assert_eq!(sq.pth_root(), g);
    }

    #[test]
    fn display() {
        let f2 = FiniteField::prime(2).unwrap();
        assert_eq!(p(f2, &[1, 1, 0, 1]).to_string(), "x^3 + x + 1");
        assert_eq!(Poly::zero(f2).to_string(), "0");
    }
}
