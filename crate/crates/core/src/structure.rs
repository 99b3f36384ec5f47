//! Orthogonal decompositions of an orthogonal map into orthogonally
//! indecomposable summands, Huppert's type of each summand, hyperbolic
//! splittings, and the fixture families used throughout the tests.
//!
//! Types of an orthogonally indecomposable `φ`:
//!
//! - type 1: bicyclic with elementary divisors `(x ± 1)^m, (x ± 1)^m`,
//!   split into 1o and 1e by the parity of `m`;
//! - type 2: a single elementary divisor;
//! - type 3: cyclic with minimal polynomial `(p·p*)^m`, `p ≠ p*`.

use std::collections::{HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, internal, Error, Result};
use crate::field::{Elem, FiniteField, Poly};
use crate::linalg::{
    cyclic_subspace, cyclic_vector, elementary_divisors, jordan_chevalley, module_similar,
    primary_decomposition, projective_points, restrict, vector_at, Mat, Subspace,
};
use crate::ortho::{is_orthogonal, OrthMap};
use crate::quadspace::{fold_upper, QuadSpace};

const FORM_SEED: u64 = 0xf0_4a5e;
/// Invariant forms tried in canonical order before seeded sampling.
const CANONICAL_FORMS: u64 = 1 << 12;
const RANDOM_FORMS: usize = 1 << 12;
/// Largest projective space searched for an orthogonal splitting.
const SPLIT_SEARCH_LIMIT: u128 = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeKind {
    Type1o,
    Type1e,
    Type2,
    Type3,
}

impl TypeKind {
    pub fn name(self) -> &'static str {
        match self {
            TypeKind::Type1o => "1o",
            TypeKind::Type1e => "1e",
            TypeKind::Type2 => "2",
            TypeKind::Type3 => "3",
        }
    }

    pub fn is_type1(self) -> bool {
        matches!(self, TypeKind::Type1o | TypeKind::Type1e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeLabel {
    pub kind: TypeKind,
    /// Elementary divisors as `(prime, exponents in descending order)`.
    pub divisors: Vec<(Poly, Vec<usize>)>,
    pub unipotent: bool,
}

/// One orthogonally indecomposable summand: the ambient subspace, the map
/// restricted to it (in the coordinates of its echelon basis), and its type.
#[derive(Clone, Debug)]
pub struct Summand {
    pub subspace: Subspace,
    pub map: OrthMap,
    pub label: TypeLabel,
}

impl Summand {
    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }
}

#[derive(Clone, Debug)]
pub struct SummandDecomposition {
    pub parts: Vec<Summand>,
}

impl SummandDecomposition {
    /// Parts are pairwise orthogonal, nondefective, invariant, and their
    /// direct sum is the whole space.
    pub fn is_valid_for(&self, phi: &OrthMap) -> bool {
        let sp = phi.space();
        let n = sp.dim();
        let mut total = Subspace::zero(sp.field(), n);
        let mut dims = 0;
        for (i, p) in self.parts.iter().enumerate() {
            if p.subspace.is_zero()
                || !p.subspace.is_invariant(phi.mat())
                || !sp.is_nondefective_subspace(&p.subspace)
            {
                return false;
            }
            for q in &self.parts[i + 1..] {
                if !sp.perp(&p.subspace).contains_subspace(&q.subspace) {
                    return false;
                }
            }
            dims += p.dim();
            total = total.sum(&p.subspace);
        }
        dims == n && total.is_full()
    }

    pub fn has_kind(&self, kind: TypeKind) -> bool {
        self.parts.iter().any(|p| p.label.kind == kind)
    }
}

fn divisor_count(divs: &[(Poly, Vec<usize>)]) -> usize {
    divs.iter().map(|(_, e)| e.len()).sum()
}

/// `x − 1` or `x + 1`.
fn is_plus_minus_one(p: &Poly) -> bool {
    let f = p.field();
    p.deg() == 1 && (p.coeff(0) == f.neg(Elem::ONE) || p.coeff(0) == Elem::ONE)
}

/// Huppert type read off the elementary divisors of an orthogonally
/// indecomposable map.
fn label_from_divisors(divs: Vec<(Poly, Vec<usize>)>) -> Result<TypeLabel> {
    let unipotent = divs.len() == 1 && {
        let p = &divs[0].0;
        p.deg() == 1 && p.coeff(0) == p.field().neg(Elem::ONE)
    };
    let kind = match divisor_count(&divs) {
        1 => TypeKind::Type2,
        2 if divs.len() == 2 => {
            let (p, ep) = &divs[0];
            let (r, er) = &divs[1];
            if p.reciprocal().ok().as_ref() != Some(r) || p == r || ep != er {
                return internal(format!("summand with elementary divisors {divs:?} fits no type"));
            }
            TypeKind::Type3
        }
        2 => {
            let (p, e) = &divs[0];
            if !is_plus_minus_one(p) || e[0] != e[1] {
                return internal(format!("summand with elementary divisors {divs:?} fits no type"));
            }
            if e[0] % 2 == 1 {
                TypeKind::Type1o
            } else {
                TypeKind::Type1e
            }
        }
        _ => return internal(format!("summand with elementary divisors {divs:?} fits no type")),
    };
    Ok(TypeLabel { kind, divisors: divs, unipotent })
}

/// The type of an orthogonally indecomposable map.
pub fn classify_summand(phi: &OrthMap) -> Result<TypeLabel> {
    let full = Subspace::full(phi.space().field(), phi.dim());
    let divs = elementary_divisors(phi.mat())?;
    if find_split(phi.space(), phi.mat(), &full, divisor_count(&divs))?.is_some() {
        return domain("map is orthogonally decomposable");
    }
    label_from_divisors(divs)
}

/// A proper nondefective invariant subspace of the nondefective invariant
/// subspace `s`, or `None` when `M|s` is orthogonally indecomposable.
///
/// Every orthogonally indecomposable summand is cyclic or bicyclic, so the
/// search over cyclic and then bicyclic submodules is complete. With at most
/// two elementary divisors both halves of a splitting are cyclic.
fn find_split(sp: &QuadSpace, m: &Mat, s: &Subspace, divisors: usize) -> Result<Option<Subspace>> {
    let d = s.dim();
    if divisors <= 1 {
        return Ok(None);
    }
    let fld = sp.field();
    let q = fld.order() as u128;
    let points_count = (q.pow(d as u32) - 1) / (q - 1);
    if points_count > SPLIT_SEARCH_LIMIT {
        return Err(Error::Resource(format!(
            "splitting search over {points_count} points of a {d}-dimensional block exceeds {SPLIT_SEARCH_LIMIT}"
        )));
    }
    let lift = |c: &[Elem]| s.basis().apply(c);
    for c in projective_points(fld, d) {
        let w = cyclic_subspace(m, &lift(&c));
        if w.dim() < d && sp.is_nondefective_subspace(&w) {
            return Ok(Some(w));
        }
    }
    if divisors <= 2 {
        return Ok(None);
    }
    let points: Vec<Vec<Elem>> = projective_points(fld, d).map(|c| lift(&c)).collect();
    let cyclics: Vec<Subspace> = points.iter().map(|v| cyclic_subspace(m, v)).collect();
    for a in &cyclics {
        if a.dim() >= d {
            continue;
        }
        for (v, b) in points.iter().zip(&cyclics) {
            if a.contains(v) {
                continue;
            }
            let w = a.sum(b);
            if w.dim() < d && sp.is_nondefective_subspace(&w) {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// Splits `V` into orthogonally indecomposable summands.
///
/// The primary components for `p` and `p*` are paired into nondefective
/// blocks; each block is split recursively along the first proper
/// nondefective invariant subspace found in canonical order. Blocks whose
/// projective space has more than 2^22 points fail with `Resource`.
pub fn ortho_indecomposable_summands(phi: &OrthMap) -> Result<SummandDecomposition> {
    let sp = phi.space();
    let m = phi.mat();
    let mut blocks: Vec<Subspace> = Vec::new();
    let primary = primary_decomposition(m)?;
    let mut used = vec![false; primary.len()];
    for i in 0..primary.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let (p, s) = &primary[i];
        let star = p.reciprocal()?;
        let mut block = s.clone();
        if star != *p {
            let j = primary
                .iter()
                .position(|(r, _)| *r == star)
                .ok_or_else(|| Error::Internal(format!("primary component {p} has no reciprocal partner")))?;
            used[j] = true;
            block = block.sum(&primary[j].1);
        }
        if !sp.is_nondefective_subspace(&block) {
            return internal(format!("primary block for {p} is defective"));
        }
        blocks.push(block);
    }
    let mut parts = Vec::new();
    let mut stack: Vec<Subspace> = blocks.into_iter().rev().collect();
    while let Some(s) = stack.pop() {
        let local = restrict(m, &s)?;
        let divs = elementary_divisors(&local)?;
        let count = divisor_count(&divs);
        let biprimary_cyclic = count == 2 && divs.len() == 2;
        let split = if biprimary_cyclic { None } else { find_split(sp, m, &s, count)? };
        match split {
            Some(w) => {
                let rest = s.intersect(&sp.perp(&w));
                stack.push(rest);
                stack.push(w);
            }
            None => {
                let map = phi.restrict(&s)?;
                let label = label_from_divisors(divs)?;
                parts.push(Summand { subspace: s, map, label });
            }
        }
    }
    Ok(SummandDecomposition { parts })
}

/// All `M`-invariant subspaces, found breadth-first: each invariant `S` is
/// extended by `⟨c⟩_M` for every line `c` of a fixed complement of `S`.
pub fn invariant_subspaces(m: &Mat) -> Vec<Subspace> {
    invariant_subspaces_where(m, |_| true)
}

/// Invariant subspaces closed under the predicate: the search only extends
/// subspaces that satisfy `keep`, so `keep` must be inherited by invariant
/// subspaces for the result to be complete.
fn invariant_subspaces_where(m: &Mat, keep: impl Fn(&Subspace) -> bool) -> Vec<Subspace> {
    let fld = m.field();
    let n = m.rows();
    let zero = Subspace::zero(fld, n);
    let mut seen: HashSet<Subspace> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(zero.clone());
    queue.push_back(zero);
    let mut out = Vec::new();
    while let Some(s) = queue.pop_front() {
        let comp = Mat::from_rows(fld, n, &s.complement_basis());
        for c in projective_points(fld, n - s.dim()) {
            let v = comp.apply(&c);
            let t = s.sum(&cyclic_subspace(m, &v));
            if !seen.contains(&t) && keep(&t) {
                seen.insert(t.clone());
                queue.push_back(t);
            }
        }
        out.push(s);
    }
    out.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.basis().canonical_cmp(b.basis())));
    out
}

/// Exhaustive certificate: no invariant subspace other than `0` and `V` is
/// nondefective.
pub fn certify_indecomposable(phi: &OrthMap) -> bool {
    let sp = phi.space();
    invariant_subspaces(phi.mat())
        .iter()
        .all(|w| w.is_zero() || w.is_full() || !sp.is_nondefective_subspace(w))
}

/// Complementary totally isotropic invariant subspaces `(U, W)`, if any.
///
/// Type-1 maps in characteristic 2 use the recursion through
/// `Bahn(φ)/Fix(φ)`; everything else, and any case where that recursion
/// does not apply, falls back to a search over invariant totally isotropic
/// subspaces.
pub fn is_hyperbolic_transform(phi: &OrthMap) -> Result<Option<(Subspace, Subspace)>> {
    let sp = phi.space();
    let n = sp.dim();
    if n % 2 == 1 || !sp.is_hyperbolic() {
        return Ok(None);
    }
    if sp.field().is_char2() {
        if let Ok(label) = classify_summand(phi) {
            if label.kind.is_type1() {
                if let Some((x, z)) = type1_isotropic_generators(phi) {
                    let u = cyclic_subspace(phi.mat(), &x);
                    let w = cyclic_subspace(phi.mat(), &z);
                    return Ok(Some((u, w)));
                }
            }
        }
    }
    Ok(hyperbolic_split_search(phi))
}

fn hyperbolic_split_search(phi: &OrthMap) -> Option<(Subspace, Subspace)> {
    let sp = phi.space();
    let n = sp.dim();
    let halves: Vec<Subspace> = invariant_subspaces_where(phi.mat(), |s| {
        2 * s.dim() <= n && sp.is_totally_isotropic(s)
    })
    .into_iter()
    .filter(|s| 2 * s.dim() == n)
    .collect();
    for (i, u) in halves.iter().enumerate() {
        for w in &halves[i + 1..] {
            if u.intersect(w).is_zero() {
                return Some((u.clone(), w.clone()));
            }
        }
    }
    None
}

/// The form and map induced on `Bahn(φ)/Fix(φ)` when `Fix(φ) ≤ Bahn(φ)`,
/// with the transversal (rows, ambient coordinates) used as its basis.
pub(crate) struct BahnFixQuotient {
    pub map: OrthMap,
    pub transversal: Mat,
    pub fix: Subspace,
}

pub(crate) fn bahn_fix_quotient(phi: &OrthMap) -> Option<BahnFixQuotient> {
    let sp = phi.space();
    let bahn = phi.bahn();
    let fix = phi.fix();
    if !bahn.contains_subspace(&fix) {
        return None;
    }
    let (qs, t) = sp.quotient_form(&bahn).ok()?;
    let k = t.rows();
    let full = t.vstack(fix.basis());
    let mut rows = Vec::with_capacity(k);
    for r in t.row_vecs() {
        let img = phi.mat().apply(&r);
        let c = full.solve_left(&img)?;
        rows.push(c[..k].to_vec());
    }
    let mbar = Mat::from_rows(sp.field(), k, &rows);
    let map = OrthMap::new(qs, mbar).ok()?;
    Some(BahnFixQuotient { map, transversal: t, fix })
}

/// For type 1 in characteristic 2 on a hyperbolic space: `x, z` with
/// `V = ⟨x⟩_φ ⊕ ⟨z⟩_φ` and both summands totally isotropic.
///
/// Recursion: the generators `u, w` of a split of `Bahn(φ)/Fix(φ)` lift to
/// `Bahn(φ)`, and `x, z` are preimages under `φ − 1` moved inside their coset
/// of `Fix(φ)` to be isotropic.
pub(crate) fn type1_isotropic_generators(phi: &OrthMap) -> Option<(Vec<Elem>, Vec<Elem>)> {
    let sp = phi.space();
    let fld = sp.field();
    let n = sp.dim();
    if n == 2 {
        if !phi.is_identity() {
            return None;
        }
        let (pairs, _) = sp.witt_decompose();
        let (e, f) = pairs.into_iter().next()?;
        return Some((e, f));
    }
    let quot = bahn_fix_quotient(phi)?;
    let (u, w) = if quot.map.dim() == 0 {
        let fb = quot.fix.basis_vecs();
        if fb.len() != 2 {
            return None;
        }
        (fb[0].clone(), fb[1].clone())
    } else {
        let (ub, wb) = type1_isotropic_generators(&quot.map)?;
        (quot.transversal.apply(&ub), quot.transversal.apply(&wb))
    };
    let a = phi.mat().minus_identity();
    let fix = quot.fix.basis_vecs();
    let lift = |target: &[Elem]| -> Option<Vec<Elem>> {
        let x = a.solve_left(target)?;
        let qx = sp.q(&x);
        if qx.is_zero() {
            return Some(x);
        }
        let c = fix.iter().find(|c| !sp.f(&x, c).is_zero())?;
        let lam = fld.neg(fld.div(qx, sp.f(&x, c)).ok()?);
        Some(crate::linalg::axpy(fld, &x, lam, c))
    };
    let x = lift(&u)?;
    let z = lift(&w)?;
    let ux = cyclic_subspace(phi.mat(), &x);
    let wz = cyclic_subspace(phi.mat(), &z);
    let ok = ux.dim() + wz.dim() == n
        && ux.sum(&wz).is_full()
        && sp.is_totally_isotropic(&ux)
        && sp.is_totally_isotropic(&wz);
    ok.then_some((x, z))
}

/// Moves `φ` to an isometric space: `T⁻¹·φ·T` where `T` carries the form of
/// `φ`'s space onto `target`.
pub fn transport(phi: &OrthMap, target: &QuadSpace) -> Result<OrthMap> {
    let t = phi
        .space()
        .find_isometry(target)
        .ok_or_else(|| Error::Domain("spaces are not isometric".into()))?;
    let ti = t.inverse().expect("isometries are invertible");
    OrthMap::new(target.clone(), ti.mul(phi.mat()).mul(&t))
}

/// Upper-triangular forms `U` with `fold(C·U·Cᵀ) = U`, as a basis.
fn invariant_forms(c: &Mat) -> Vec<Mat> {
    let fld = c.field();
    let n = c.rows();
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut sys = Mat::zeros(fld, slots.len(), slots.len());
    for (r, &(i, j)) in slots.iter().enumerate() {
        let mut e = Mat::zeros(fld, n, n);
        e.set(i, j, Elem::ONE);
        let img = fold_upper(&c.mul(&e).mul(&c.transpose())).sub(&e);
        for (col, &(a, b)) in slots.iter().enumerate() {
            sys.set(r, col, img.get(a, b));
        }
    }
    sys.left_kernel()
        .row_vecs()
        .into_iter()
        .map(|coeffs| {
            let mut u = Mat::zeros(fld, n, n);
            for (x, &(i, j)) in coeffs.iter().zip(&slots) {
                u.set(i, j, *x);
            }
            u
        })
        .collect()
}

fn combine(fld: FiniteField, basis: &[Mat], coeffs: &[Elem]) -> Mat {
    let n = basis[0].rows();
    let mut u = Mat::zeros(fld, n, n);
    for (c, b) in coeffs.iter().zip(basis) {
        if !c.is_zero() {
            u = u.add(&b.scale(*c));
        }
    }
    u
}

/// A cyclic orthogonal map of `sp` with minimal polynomial `g`
/// (`deg g = dim sp`).
///
/// The companion matrix of `g` preserves a linear space of quadratic forms;
/// the first nondefective one isometric to `sp` (canonical order, then
/// seeded sampling) is carried onto `sp`.
pub fn realize_cyclic(sp: &QuadSpace, g: &Poly) -> Result<OrthMap> {
    realize_cyclic_with(sp, g, None)
}

/// As [`realize_cyclic`], choosing the invariant form at random when a
/// generator is supplied.
pub fn realize_cyclic_with(sp: &QuadSpace, g: &Poly, rng: Option<&mut ChaCha8Rng>) -> Result<OrthMap> {
    let n = sp.dim();
    if g.deg() != n || !g.is_monic() {
        return domain("polynomial must be monic of degree dim V");
    }
    if g.field() != sp.field() {
        return domain("polynomial and space over different fields");
    }
    let fld = sp.field();
    let c = Mat::companion(g)?;
    let basis = invariant_forms(&c);
    if basis.is_empty() {
        return Err(Error::WitnessNotFound(format!("companion of {g} preserves no quadratic form")));
    }
    let k = basis.len();
    let target = sp.form_class();
    let accept = |coeffs: &[Elem]| -> Option<OrthMap> {
        let u = combine(fld, &basis, coeffs);
        let cand = QuadSpace::new(u).ok()?;
        if cand.form_class() != target {
            return None;
        }
        let phi = OrthMap::new(cand, c.clone()).ok()?;
        transport(&phi, sp).ok()
    };
    let total = (fld.order() as u64).saturating_pow(k as u32);
    match rng {
        None => {
            for i in 1..total.min(CANONICAL_FORMS) {
                if let Some(phi) = accept(&vector_at(fld, k, i)) {
                    return Ok(phi);
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(FORM_SEED);
            for _ in 0..RANDOM_FORMS {
                if let Some(phi) = accept(&random_coeffs(fld, k, &mut rng)) {
                    return Ok(phi);
                }
            }
        }
        Some(rng) => {
            for _ in 0..RANDOM_FORMS {
                if let Some(phi) = accept(&random_coeffs(fld, k, rng)) {
                    return Ok(phi);
                }
            }
        }
    }
    Err(Error::WitnessNotFound(format!("no cyclic orthogonal map with minimal polynomial {g} on this space")))
}

fn random_coeffs(fld: FiniteField, k: usize, rng: &mut ChaCha8Rng) -> Vec<Elem> {
    (0..k).map(|_| Elem(rng.gen_range(0..fld.order()) as u8)).collect()
}

/// `(x − 1)^e`.
pub fn unipotent_poly(fld: FiniteField, e: usize) -> Poly {
    Poly::linear(fld, fld.neg(Elem::ONE)).pow(e as u64)
}

/// The space `K^m ⊕ K^m` with `Q(a, b) = a·bᵀ`.
fn split_hyperbolic(fld: FiniteField, m: usize) -> QuadSpace {
    let mut u = Mat::zeros(fld, 2 * m, 2 * m);
    for i in 0..m {
        u.set(i, m + i, Elem::ONE);
    }
    QuadSpace::new(u).expect("hyperbolic")
}

/// `diag(A, A⁺)` on `K^m ⊕ K^m` with `Q(a, b) = a·bᵀ`, carried onto the
/// standard hyperbolic space.
pub fn paired_block(a: &Mat) -> Result<OrthMap> {
    let fld = a.field();
    let m = a.rows();
    let ap = a.transpose_inverse().ok_or_else(|| Error::Domain("block must be invertible".into()))?;
    let sp = split_hyperbolic(fld, m);
    let phi = OrthMap::new(sp, Mat::block_diag(fld, &[a, &ap]))?;
    transport(&phi, &QuadSpace::hyperbolic(fld, m))
}

/// Type-1 fixtures in characteristic 2.
///
/// - `hyperbolic = false`, `m ≥ 1`: `ψ²` for a cyclic unipotent `ψ` on the
///   space of dimension `4m + 2` and Witt index `2m` (type 1o, not
///   hyperbolic).
/// - `hyperbolic = true`, `m ≥ 1`: `diag(J, J⁺)` for the unipotent Jordan
///   block `J` of size `2m` (type 1e, dimension `4m`).
/// - `m = 0`: the identity on the anisotropic plane, or on the hyperbolic
///   plane when `hyperbolic` is set (type 1o).
pub fn make_type1_fixture(fld: FiniteField, m: usize, hyperbolic: bool) -> Result<OrthMap> {
    if !fld.is_char2() {
        return domain("type-1 fixtures are built in characteristic 2");
    }
    if m == 0 {
        let sp = if hyperbolic { QuadSpace::hyperbolic(fld, 1) } else { QuadSpace::anisotropic_plane(fld) };
        return Ok(OrthMap::identity(sp));
    }
    if hyperbolic {
        let j = Mat::companion(&unipotent_poly(fld, 2 * m))?;
        return paired_block(&j);
    }
    let sp = QuadSpace::standard(fld, 4 * m + 2, false)?;
    let psi = realize_cyclic(&sp, &unipotent_poly(fld, 4 * m + 2))?;
    Ok(psi.pow(2))
}

/// Type-1 map `diag(J_b, J_b⁺)` for any block size `b ≥ 1`: type 1o for odd
/// `b`, type 1e for even `b`, always on the hyperbolic space of dimension `2b`.
pub fn make_hyperbolic_type1(fld: FiniteField, b: usize) -> Result<OrthMap> {
    if b == 0 {
        return domain("block size must be positive");
    }
    paired_block(&Mat::companion(&unipotent_poly(fld, b))?)
}

/// Type-3 fixture `diag(C, C⁺)` for the companion `C` of `p^m`, `p ≠ p*`.
pub fn make_type3_fixture(p: &Poly, m: usize) -> Result<OrthMap> {
    if !crate::field::is_irreducible(p) || !p.is_monic() {
        return domain("p must be monic irreducible");
    }
    if p.reciprocal()? == *p {
        return domain("p must differ from its reciprocal");
    }
    paired_block(&Mat::companion(&p.pow(m as u64))?)
}

/// A cyclic `η ∈ O(V, Q)` whose unipotent Jordan–Chevalley factor is `φ`.
///
/// `η₀` is cyclic with minimal polynomial `(x² + x + 1)^{2m}`; its unipotent
/// factor is of type 1e, hence conjugate to `φ` by some orthogonal `α`, and
/// `η = α·η₀·α⁻¹`.
pub fn cyclic_cover_type1e(phi: &OrthMap) -> Result<OrthMap> {
    let sp = phi.space();
    let fld = sp.field();
    if !fld.is_char2() {
        return domain("cyclic covers are built in characteristic 2");
    }
    let label = classify_summand(phi)?;
    if label.kind != TypeKind::Type1e {
        return domain("cyclic cover needs an orthogonally indecomposable map of type 1e");
    }
    let n = sp.dim();
    let g = Poly::new(fld, vec![Elem::ONE, Elem::ONE, Elem::ONE]).pow((n / 2) as u64);
    let eta0 = realize_cyclic(sp, &g)?;
    let (_, u) = jordan_chevalley(eta0.mat())?;
    let u = OrthMap::new(sp.clone(), u)?;
    let alpha = conjugate_type1e(phi, &u)?;
    let ai = alpha.inverse().expect("orthogonal");
    let eta = OrthMap::new(sp.clone(), alpha.mul(eta0.mat()).mul(&ai))?;
    debug_assert_eq!(jordan_chevalley(eta.mat()).map(|(_, u)| u).ok().as_ref(), Some(phi.mat()));
    Ok(eta)
}

/// An orthogonal `α` with `α⁻¹·φ·α = ψ` for maps of type 1e.
///
/// Both maps are block diagonal `diag(A, A⁺)`, `diag(D, D⁺)` in bases adapted
/// to invariant totally isotropic splits; a similarity `C⁻¹AC = D` gives the
/// isometry `diag(C, C⁺)` between the two block forms.
pub fn conjugate_type1e(phi: &OrthMap, psi: &OrthMap) -> Result<Mat> {
    if phi.space() != psi.space() {
        return domain("maps act on different spaces");
    }
    for m in [phi, psi] {
        if classify_summand(m)?.kind != TypeKind::Type1e {
            return domain("conjugate_type1e needs two maps of type 1e");
        }
    }
    let (pa, a) = paired_basis(phi)?;
    let (pd, d) = paired_basis(psi)?;
    let c = module_similar(&a, &d)?.ok_or_else(|| Error::Internal("type-1e blocks are not similar".into()))?;
    let cp = c.transpose_inverse().expect("invertible");
    let k = Mat::block_diag(phi.space().field(), &[&c, &cp]);
    let alpha = pa.inverse().expect("basis").mul(&k).mul(&pd);
    debug_assert!(is_orthogonal(phi.space(), &alpha).unwrap_or(false));
    debug_assert_eq!(&alpha.inverse().unwrap().mul(phi.mat()).mul(&alpha), psi.mat());
    Ok(alpha)
}

/// Basis rows `[u_1..u_m; w_1..w_m]` with `U = ⟨u⟩`, `W = ⟨w⟩` an invariant
/// totally isotropic split and `f(u_i, w_j) = δ_ij`, plus the block `A` of
/// `φ` on `U`.
fn paired_basis(phi: &OrthMap) -> Result<(Mat, Mat)> {
    let sp = phi.space();
    let fld = sp.field();
    let (u, w) =
        is_hyperbolic_transform(phi)?.ok_or_else(|| Error::Internal("type-1e map is not hyperbolic".into()))?;
    let ub = u.basis_vecs();
    let m = ub.len();
    // dual basis of W: solve f(u_i, w_j) = δ_ij inside W
    let wb = w.basis_vecs();
    let pairing = Mat::from_rows(fld, m, &ub.iter().map(|x| wb.iter().map(|y| sp.f(x, y)).collect()).collect::<Vec<_>>());
    let inv = pairing.inverse().ok_or_else(|| Error::Internal("isotropic halves are not paired".into()))?;
    // w'_j = Σ_k inv[k][j]·w_k gives f(u_i, w'_j) = (P·inv)_ij = δ_ij
    let wmat = Mat::from_rows(fld, sp.dim(), &wb);
    let dual = inv.transpose().mul(&wmat);
    let mut rows = ub.clone();
    rows.extend(dual.row_vecs());
    let p = Mat::from_rows(fld, sp.dim(), &rows);
    let local = p.mul(phi.mat()).mul(&p.inverse().expect("basis"));
    Ok((p, local.submatrix(0, 0, m, m)))
}

/// Cyclic vector of `φ` on the whole space, if `φ` is cyclic.
pub fn cyclic_generator(phi: &OrthMap) -> Option<Vec<Elem>> {
    let full = Subspace::full(phi.space().field(), phi.dim());
    cyclic_vector(phi.mat(), &full).ok().flatten()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::is_unipotent;

    fn gf(q: u32) -> FiniteField {
        FiniteField::of_order(q).unwrap()
    }

    #[test]
    fn block_diagonal_splits_into_planes() {
        let f = gf(3);
        let hh = QuadSpace::hyperbolic(f, 2);
        let minus = Mat::identity(f, 2).neg();
        let m = Mat::block_diag(f, &[&minus, &Mat::identity(f, 2)]);
        let phi = OrthMap::new(hh, m).unwrap();
        let d = ortho_indecomposable_summands(&phi).unwrap();
        assert!(d.is_valid_for(&phi));
        assert!(d.parts.len() >= 2);
        assert!(d.parts.iter().all(|p| certify_indecomposable(&p.map)));
    }

    #[test]
    fn cyclic_unipotent_is_type2() {
        let f = gf(2);
        let sp = QuadSpace::hyperbolic(f, 2);
        let phi = realize_cyclic(&sp, &unipotent_poly(f, 4)).unwrap();
        let d = ortho_indecomposable_summands(&phi).unwrap();
        assert_eq!(d.parts.len(), 1);
        assert_eq!(d.parts[0].label.kind, TypeKind::Type2);
        assert!(d.parts[0].label.unipotent);
        assert!(certify_indecomposable(&phi));
    }

    #[test]
    fn type1o_fixture_is_not_hyperbolic() {
        let f = gf(2);
        let phi = make_type1_fixture(f, 1, false).unwrap();
        assert_eq!(phi.dim(), 6);
        assert_eq!(phi.space().witt_index(), 2);
        let d = ortho_indecomposable_summands(&phi).unwrap();
        assert_eq!(d.parts.len(), 1);
        assert_eq!(d.parts[0].label.kind, TypeKind::Type1o);
        assert!(certify_indecomposable(&phi));
        assert!(is_hyperbolic_transform(&phi).unwrap().is_none());
    }

    #[test]
    fn identity_labels() {
        let f = gf(2);
        let id = OrthMap::identity(QuadSpace::hyperbolic(f, 1));
        let label = classify_summand(&id).unwrap();
        assert_eq!(label.kind, TypeKind::Type1o);
        assert_eq!(label.divisors, vec![(Poly::linear(f, Elem::ONE), vec![1, 1])]);
        let (u, w) = is_hyperbolic_transform(&id).unwrap().unwrap();
        assert_eq!(u.dim() + w.dim(), 2);
        let id4 = OrthMap::identity(QuadSpace::hyperbolic(f, 2));
        assert!(classify_summand(&id4).is_err());
        let e = make_type1_fixture(f, 0, false).unwrap();
        assert_eq!(classify_summand(&e).unwrap().kind, TypeKind::Type1o);
    }

    #[test]
    fn type1e_fixture_is_hyperbolic_and_covered() {
        let f = gf(2);
        let phi = make_type1_fixture(f, 1, true).unwrap();
        assert_eq!(phi.dim(), 4);
        assert_eq!(classify_summand(&phi).unwrap().kind, TypeKind::Type1e);
        assert!(certify_indecomposable(&phi));
        let (u, w) = is_hyperbolic_transform(&phi).unwrap().unwrap();
        assert!(u.intersect(&w).is_zero());
        let eta = cyclic_cover_type1e(&phi).unwrap();
        assert!(cyclic_generator(&eta).is_some());
        let g = Poly::new(f, vec![Elem::ONE, Elem::ONE, Elem::ONE]).pow(2);
        assert_eq!(eta.min_poly(), &g);
        let (_, unip) = jordan_chevalley(eta.mat()).unwrap();
        assert_eq!(&unip, phi.mat());
    }

    #[test]
    fn type1e_conjugation() {
        let f = gf(2);
        let phi = make_type1_fixture(f, 1, true).unwrap();
        let sp = phi.space().clone();
        // a second type-1e map: the unipotent factor of a cyclic map
        let g = Poly::new(f, vec![Elem::ONE, Elem::ONE, Elem::ONE]).pow(2);
        let eta = realize_cyclic(&sp, &g).unwrap();
        let (_, u) = jordan_chevalley(eta.mat()).unwrap();
        let psi = OrthMap::new(sp.clone(), u).unwrap();
        assert!(is_unipotent(psi.mat()));
        let alpha = conjugate_type1e(&phi, &psi).unwrap();
        assert!(is_orthogonal(&sp, &alpha).unwrap());
        assert_eq!(&alpha.inverse().unwrap().mul(phi.mat()).mul(&alpha), psi.mat());
        let alpha = conjugate_type1e(&phi, &phi).unwrap();
        assert_eq!(&alpha.inverse().unwrap().mul(phi.mat()).mul(&alpha), phi.mat());
        let o = make_hyperbolic_type1(f, 1).unwrap();
        assert!(conjugate_type1e(&o, &o).is_err());
    }

    #[test]
    fn type3_fixture() {
        let f = gf(2);
        // x^3 + x + 1 has reciprocal x^3 + x^2 + 1
        let p = Poly::from_codes(f, &[1, 1, 0, 1]).unwrap();
        let phi = make_type3_fixture(&p, 1).unwrap();
        let label = classify_summand(&phi).unwrap();
        assert_eq!(label.kind, TypeKind::Type3);
        assert!(cyclic_generator(&phi).is_some());
        assert!(certify_indecomposable(&phi));
        assert!(make_type3_fixture(&Poly::from_codes(f, &[1, 1, 1]).unwrap(), 1).is_err());
    }

    #[test]
    fn cyclic_unipotent_tower_identities() {
        let f = gf(2);
        for m in 1..=3 {
            for plus in [true, false] {
                let sp = QuadSpace::standard(f, 2 * m, plus).unwrap();
                let phi = realize_cyclic(&sp, &unipotent_poly(f, 2 * m)).unwrap();
                let b1 = phi.bahn_j(m + 1);
                assert_eq!(b1, phi.fix_j(m - 1));
                assert!(sp.is_totally_isotropic(&b1));
                let b = phi.bahn_j(m);
                assert_eq!(b, phi.fix_j(m));
                assert!(!sp.is_totally_isotropic(&b));
            }
        }
    }

    #[test]
    fn fixture_errors() {
        assert!(make_type1_fixture(gf(3), 1, true).is_err());
        assert!(make_hyperbolic_type1(gf(2), 0).is_err());
        let sp = QuadSpace::hyperbolic(gf(2), 1);
        assert!(realize_cyclic(&sp, &unipotent_poly(gf(2), 3)).is_err());
    }
}
