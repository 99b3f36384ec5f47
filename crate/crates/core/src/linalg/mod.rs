//! Exact linear algebra over a finite field: matrices, subspaces, and the
//! module structure of a single linear map.

mod mat;
mod module;
mod subspace;

pub use mat::Mat;
pub use module::{
    annihilator, bahn_fix, char_poly, cyclic_subspace, cyclic_vector, elementary_divisors,
    fitting_split, is_cyclic, is_semisimple, is_unipotent, jordan_chevalley, min_poly,
    module_similar, primary_decomposition, restrict,
};
pub use subspace::Subspace;

use crate::field::{Elem, FiniteField};

/// The vector with canonical index `index`: coordinate `j` is digit `j` of
/// `index` in base `q`. Index 0 is the zero vector, index 1 is `e_1`.
pub fn vector_at(field: FiniteField, n: usize, mut index: u64) -> Vec<Elem> {
    let q = field.order() as u64;
    let mut v = Vec::with_capacity(n);
    for _ in 0..n {
        v.push(Elem((index % q) as u8));
        index /= q;
    }
    v
}

/// Inverse of [`vector_at`].
pub fn vector_index(field: FiniteField, v: &[Elem]) -> u64 {
    let q = field.order() as u64;
    v.iter().rev().fold(0, |acc, e| acc * q + e.code() as u64)
}

/// All `q^n` vectors in canonical order.
pub fn all_vectors(field: FiniteField, n: usize) -> impl Iterator<Item = Vec<Elem>> {
    let count = (field.order() as u64).pow(n as u32);
    (0..count).map(move |i| vector_at(field, n, i))
}

/// Nonzero vectors whose first nonzero coordinate is 1, one per line, in
/// canonical order.
pub fn projective_points(field: FiniteField, n: usize) -> impl Iterator<Item = Vec<Elem>> {
    all_vectors(field, n).filter(|v| v.iter().find(|e| !e.is_zero()) == Some(&Elem::ONE))
}

pub fn unit_vector(n: usize, i: usize) -> Vec<Elem> {
    let mut v = vec![Elem::ZERO; n];
    v[i] = Elem::ONE;
    v
}

pub fn is_zero_vec(v: &[Elem]) -> bool {
    v.iter().all(|e| e.is_zero())
}

pub fn add_vec(field: FiniteField, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().zip(b).map(|(&x, &y)| field.add(x, y)).collect()
}

pub fn sub_vec(field: FiniteField, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().zip(b).map(|(&x, &y)| field.sub(x, y)).collect()
}

pub fn scale_vec(field: FiniteField, c: Elem, a: &[Elem]) -> Vec<Elem> {
    a.iter().map(|&x| field.mul(c, x)).collect()
}

/// `a + c·b`.
pub fn axpy(field: FiniteField, a: &[Elem], c: Elem, b: &[Elem]) -> Vec<Elem> {
    a.iter().zip(b).map(|(&x, &y)| field.add(x, field.mul(c, y))).collect()
}

pub fn dot(field: FiniteField, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter().zip(b).fold(Elem::ZERO, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}
