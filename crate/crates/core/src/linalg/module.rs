//! The `K[x]`-module structure of `K^n` under a single matrix.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{is_zero_vec, vector_at, Mat, Subspace};
use crate::error::{domain, internal, Result};
use crate::field::{factor, Elem, Poly};

const SEARCH_SEED: u64 = 0xc0c1_1c;
/// Canonical enumeration budget before switching to seeded random sampling.
const CANONICAL_TRIES: u64 = 1 << 14;
const RANDOM_TRIES: usize = 4096;

fn require_square(m: &Mat) -> Result<()> {
    if !m.is_square() {
        return domain(format!("expected a square matrix, got {}x{}", m.rows(), m.cols()));
    }
    Ok(())
}

/// Monic polynomial `g` of least degree with `v·g(M) = 0`.
pub fn annihilator(m: &Mat, v: &[Elem]) -> Poly {
    let f = m.field();
    let n = m.rows();
    // echelon rows: (reduced vector normalised at its pivot, combination of powers, pivot)
    let mut rows: Vec<(Vec<Elem>, Vec<Elem>, usize)> = Vec::new();
    let mut w = v.to_vec();
    for k in 0..=n {
        let mut r = w.clone();
        let mut comb = vec![Elem::ZERO; n + 1];
        comb[k] = Elem::ONE;
        for (row, c, p) in &rows {
            let a = r[*p];
            if a.is_zero() {
                continue;
            }
            for (x, &y) in r.iter_mut().zip(row) {
                *x = f.sub(*x, f.mul(a, y));
            }
            for (x, &y) in comb.iter_mut().zip(c) {
                *x = f.sub(*x, f.mul(a, y));
            }
        }
        match r.iter().position(|e| !e.is_zero()) {
            None => return Poly::new(f, comb),
            Some(p) => {
                let inv = f.inv(r[p]).expect("nonzero pivot");
                let r: Vec<Elem> = r.iter().map(|&x| f.mul(x, inv)).collect();
                let comb: Vec<Elem> = comb.iter().map(|&x| f.mul(x, inv)).collect();
                rows.push((r, comb, p));
            }
        }
        w = m.apply(&w);
    }
    unreachable!("n+1 vectors in K^n are dependent")
}

/// Minimal polynomial: the lcm of the annihilators of the standard basis.
pub fn min_poly(m: &Mat) -> Result<Poly> {
    require_square(m)?;
    let f = m.field();
    let n = m.rows();
    let mut mu = Poly::one(f);
    for i in 0..n {
        let e = super::unit_vector(n, i);
        if mu.deg() == n {
            break;
        }
        mu = mu.lcm(&annihilator(m, &e));
    }
    Ok(mu)
}

/// `(image, kernel)` of `(M - 1)^j`, i.e. `(Bahn^j, Fix^j)`.
pub fn bahn_fix(m: &Mat, j: usize) -> Result<(Subspace, Subspace)> {
    require_square(m)?;
    let a = m.minus_identity().pow(j as u64);
    Ok((Subspace::row_space(&a), Subspace::row_space(&a.left_kernel())))
}

/// The Fitting split `(Bahn^∞, Fix^∞)` of `M - 1`.
pub fn fitting_split(m: &Mat) -> Result<(Subspace, Subspace)> {
    bahn_fix(m, m.rows())
}

/// Elementary divisors grouped by prime: for each monic irreducible `p`
/// dividing the minimal polynomial (canonical order), the exponents `e` of
/// the divisors `p^e`, largest first.
pub fn elementary_divisors(m: &Mat) -> Result<Vec<(Poly, Vec<usize>)>> {
    let mu = min_poly(m)?;
    let n = m.rows();
    let mut out = Vec::new();
    if mu.deg() == 0 {
        return Ok(out);
    }
    for (p, e) in factor(&mu)? {
        let d = p.deg();
        let pm = m.eval_poly(&p);
        let mut kdims = vec![0usize];
        let mut acc = Mat::identity(m.field(), n);
        for _ in 0..e {
            acc = acc.mul(&pm);
            kdims.push(n - acc.rank());
        }
        // number of divisors p^t with t ≥ j is (k_j - k_{j-1}) / d
        let at_least: Vec<usize> = (1..=e).map(|j| (kdims[j] - kdims[j - 1]) / d).collect();
        let mut exps = Vec::new();
        for j in (1..=e).rev() {
            let exact = at_least[j - 1] - at_least.get(j).copied().unwrap_or(0);
            exps.extend(std::iter::repeat(j).take(exact));
        }
        out.push((p, exps));
    }
    Ok(out)
}

/// Characteristic polynomial, assembled from the elementary divisors.
pub fn char_poly(m: &Mat) -> Result<Poly> {
    let mut c = Poly::one(m.field());
    for (p, exps) in elementary_divisors(m)? {
        c = c.mul(&p.pow(exps.iter().sum::<usize>() as u64));
    }
    Ok(c)
}

/// Primary components `(p, ker p(M)^e)` for each prime power `p^e` exactly
/// dividing the minimal polynomial, in canonical order of `p`.
pub fn primary_decomposition(m: &Mat) -> Result<Vec<(Poly, Subspace)>> {
    let mu = min_poly(m)?;
    if mu.deg() == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for (p, e) in factor(&mu)? {
        let k = m.eval_poly(&p.pow(e as u64)).left_kernel();
        out.push((p, Subspace::row_space(&k)));
    }
    Ok(out)
}

/// Matrix of `M` restricted to an invariant subspace, in the echelon basis
/// of the subspace.
pub fn restrict(m: &Mat, s: &Subspace) -> Result<Mat> {
    let f = m.field();
    let mut rows = Vec::with_capacity(s.dim());
    for b in s.basis_vecs() {
        match s.coords(&m.apply(&b)) {
            Some(c) => rows.push(c),
            None => return domain("subspace is not invariant"),
        }
    }
    Ok(Mat::from_rows(f, s.dim(), &rows))
}

/// The cyclic subspace `⟨v⟩_M` spanned by `v, vM, vM², …`.
pub fn cyclic_subspace(m: &Mat, v: &[Elem]) -> Subspace {
    let f = m.field();
    let n = m.rows();
    let mut vecs = Vec::new();
    let mut w = v.to_vec();
    let mut s = Subspace::zero(f, n);
    while !s.contains(&w) {
        vecs.push(w.clone());
        s = Subspace::span(f, n, &vecs);
        w = m.apply(&w);
    }
    s
}

pub fn is_cyclic(m: &Mat) -> Result<bool> {
    Ok(min_poly(m)?.deg() == m.rows())
}

pub fn is_unipotent(m: &Mat) -> bool {
    m.is_square() && m.minus_identity().pow(m.rows() as u64).is_zero()
}

pub fn is_semisimple(m: &Mat) -> Result<bool> {
    let mu = min_poly(m)?;
    Ok(mu.gcd(&mu.derivative()).is_one())
}

/// A vector generating the invariant subspace `S` as a `K[x]`-module, the
/// first in canonical coordinate order; `None` when `M|S` is not cyclic.
pub fn cyclic_vector(m: &Mat, s: &Subspace) -> Result<Option<Vec<Elem>>> {
    require_square(m)?;
    let r = restrict(m, s)?;
    let d = s.dim();
    if d == 0 {
        return Ok(Some(vec![Elem::ZERO; m.rows()]));
    }
    if min_poly(&r)?.deg() != d {
        return Ok(None);
    }
    let f = m.field();
    let total = (f.order() as u64).saturating_pow(d as u32);
    let generates = |c: &[Elem]| annihilator(&r, c).deg() == d;
    for i in 1..total.min(CANONICAL_TRIES) {
        let c = vector_at(f, d, i);
        if generates(&c) {
            return Ok(Some(s.basis().apply(&c)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEARCH_SEED);
    for _ in 0..RANDOM_TRIES {
        let c: Vec<Elem> = (0..d).map(|_| Elem(rng.gen_range(0..f.order()) as u8)).collect();
        if generates(&c) {
            return Ok(Some(s.basis().apply(&c)));
        }
    }
    internal("cyclic restriction but no generating vector found")
}

/// Multiplicative Jordan–Chevalley decomposition `M = S·U = U·S` with `S`
/// semisimple and `U` unipotent, returned as `(S, U)`.
///
/// With every irreducible factor of the minimal polynomial of degree
/// dividing `D`, the semisimple part satisfies `S^(q^D) = S`, while `U`
/// raised to any power of `p` at least its nilpotency index is 1. Hence
/// `S = M^(q^(D·t))` for `q^(D·t)` at least the largest multiplicity.
pub fn jordan_chevalley(m: &Mat) -> Result<(Mat, Mat)> {
    require_square(m)?;
    if !m.is_invertible() {
        return domain("Jordan-Chevalley decomposition needs an invertible matrix");
    }
    let n = m.rows();
    let f = m.field();
    if n == 0 {
        return Ok((m.clone(), m.clone()));
    }
    let q = f.order() as u64;
    let factors = factor(&min_poly(m)?)?;
    let d = factors.iter().map(|(p, _)| p.deg() as u64).fold(1, lcm);
    let e_max = factors.iter().map(|(_, e)| *e as u64).max().unwrap_or(1);
    let mut t = 1;
    while q.checked_pow((d * t) as u32).is_some_and(|v| v < e_max) {
        t += 1;
    }
    let mut s = m.clone();
    for _ in 0..d * t {
        s = s.pow(q);
    }
    let s_inv = s.inverse().expect("power of an invertible matrix");
    let u = m.mul(&s_inv);
    debug_assert!(is_unipotent(&u) && s.mul(&u) == u.mul(&s));
    Ok((s, u))
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// An invertible `C` with `C⁻¹·A·C = B`, or `None` when `A` and `B` are not
/// similar. Similarity is decided by the elementary divisors; the conjugator
/// is drawn from the solution space of `A·C = C·B`.
pub fn module_similar(a: &Mat, b: &Mat) -> Result<Option<Mat>> {
    require_square(a)?;
    require_square(b)?;
    if a.rows() != b.rows() {
        return domain("matrices of different sizes");
    }
    if elementary_divisors(a)? != elementary_divisors(b)? {
        return Ok(None);
    }
    let sols = intertwiners(a, b);
    let f = a.field();
    let n = a.rows();
    let as_mat = |coeffs: &[Elem]| -> Mat {
        let mut flat = vec![Elem::ZERO; n * n];
        for (c, s) in coeffs.iter().zip(&sols) {
            if c.is_zero() {
                continue;
            }
            for (x, &y) in flat.iter_mut().zip(s) {
                *x = f.add(*x, f.mul(*c, y));
            }
        }
        Mat::from_flat(f, n, n, flat)
    };
    let k = sols.len();
    for i in 0..k {
        let c = as_mat(&super::unit_vector(k, i));
        if c.is_invertible() {
            return Ok(Some(c));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEARCH_SEED);
    for _ in 0..RANDOM_TRIES {
        let coeffs: Vec<Elem> = (0..k).map(|_| Elem(rng.gen_range(0..f.order()) as u8)).collect();
        if is_zero_vec(&coeffs) {
            continue;
        }
        let c = as_mat(&coeffs);
        if c.is_invertible() {
            return Ok(Some(c));
        }
    }
    internal("similar matrices but no invertible intertwiner found")
}

/// Basis (as flattened row-major matrices) of `{C : A·C = C·B}`.
fn intertwiners(a: &Mat, b: &Mat) -> Vec<Vec<Elem>> {
    let f = a.field();
    let n = a.rows();
    // rows: unknowns c_{kl}; columns: equations (i, j)
    let mut sys = Mat::zeros(f, n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let eq = i * n + j;
            for k in 0..n {
                // + a_ik c_kj
                let var = k * n + j;
                sys.set(var, eq, f.add(sys.get(var, eq), a.get(i, k)));
                // - c_ik b_kj
                let var = i * n + k;
                sys.set(var, eq, f.sub(sys.get(var, eq), b.get(k, j)));
            }
        }
    }
    sys.left_kernel().row_vecs()
}
