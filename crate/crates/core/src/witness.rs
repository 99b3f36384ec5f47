//! Explicit witnesses: paired bases for type-1o maps, orthogonal square
//! roots, inverting involutions with a prescribed fixed-space dimension,
//! involution pairs inside `SO(V, Q)`, and the classifiers built on them.

use crate::error::{domain, internal, Error, Result};
use crate::field::Elem;
use crate::linalg::{all_vectors, axpy, cyclic_subspace, Mat, Subspace};
use crate::ortho::OrthMap;
use crate::quadspace::QuadSpace;
use crate::structure::{
    bahn_fix_quotient, classify_summand, cyclic_cover_type1e, cyclic_generator, is_hyperbolic_transform,
    ortho_indecomposable_summands, Summand, SummandDecomposition, TypeKind,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Bireflectional,
    NotBireflectional,
}

/// Machine-readable reason for a verdict, naming the rule applied.
pub mod reason {
    pub const DIM_NOT_2_MOD_4: &str = "dim-not-2-mod-4";
    pub const ODD_SUMMAND: &str = "odd-dimensional-summand";
    pub const NO_ODD_SUMMAND: &str = "no-odd-dimensional-summand";
    pub const UNIPOTENT_SUMMAND: &str = "type1o-or-cyclic-unipotent-summand";
    pub const NO_UNIPOTENT_SUMMAND: &str = "no-type1o-or-cyclic-unipotent-summand";
}

#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub verdict: Verdict,
    pub reversible: bool,
    /// Special involutions `(σ, τ)` with `σ·τ = φ`.
    pub pair: Option<(OrthMap, OrthMap)>,
    pub reason: &'static str,
    pub decomposition: SummandDecomposition,
}

impl WitnessReport {
    pub fn is_bireflectional(&self) -> bool {
        self.verdict == Verdict::Bireflectional
    }
}

/// Generators `x, z` of a type-1o map with `V = ⟨x⟩_φ ⊕ ⟨z⟩_φ`,
/// `f(x, xφ^k) = f(z, zφ^k)`, `f(xφ^k, z) = f(x, zφ^{k−1})` for `k ≥ 1`,
/// and `Q(x) = Q(z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairedBasis {
    pub x: Vec<Elem>,
    pub z: Vec<Elem>,
    /// `dim V = 2m`.
    pub m: usize,
}

impl PairedBasis {
    /// The four defining conditions, checked for `0 ≤ k ≤ bound`.
    pub fn satisfies(&self, phi: &OrthMap, bound: usize) -> bool {
        let sp = phi.space();
        let n = sp.dim();
        let m = phi.mat();
        let orbit = |v: &[Elem]| {
            let mut out = vec![v.to_vec()];
            for k in 0..bound {
                out.push(m.apply(&out[k]));
            }
            out
        };
        let xs = orbit(&self.x);
        let zs = orbit(&self.z);
        let spans = {
            let gx = cyclic_subspace(m, &self.x);
            let gz = cyclic_subspace(m, &self.z);
            gx.dim() + gz.dim() == n && gx.sum(&gz).is_full()
        };
        spans
            && (0..=bound).all(|k| sp.f(&self.x, &xs[k]) == sp.f(&self.z, &zs[k]))
            && (1..=bound).all(|k| sp.f(&xs[k], &self.z) == sp.f(&self.x, &zs[k - 1]))
            && sp.q(&self.x) == sp.q(&self.z)
    }
}

fn require_char2(phi: &OrthMap) -> Result<()> {
    if !phi.space().field().is_char2() {
        return domain("this construction is for characteristic 2");
    }
    Ok(())
}

/// Paired basis of an orthogonally indecomposable type-1o map.
///
/// Recursion through `Bahn(φ)/Fix(φ)`: the generators `u, w` of the quotient
/// lift to `Bahn(φ)` with preimages `x, z` under `φ + 1`; `z` is moved by
/// `Fix²(φ)` into `u^⊥` and then by `Fix(φ)` to match `Q(x)`.
pub fn lemma4_basis(phi: &OrthMap) -> Result<PairedBasis> {
    require_char2(phi)?;
    if classify_summand(phi)?.kind != TypeKind::Type1o {
        return domain("paired bases exist for orthogonally indecomposable maps of type 1o");
    }
    let (x, z) = paired_basis_rec(phi).ok_or_else(|| Error::Internal("paired-basis recursion failed".into()))?;
    let pb = PairedBasis { x, z, m: phi.dim() / 2 };
    if !pb.satisfies(phi, phi.dim()) {
        return internal("constructed paired basis violates its conditions");
    }
    Ok(pb)
}

fn paired_basis_rec(phi: &OrthMap) -> Option<(Vec<Elem>, Vec<Elem>)> {
    let sp = phi.space();
    let fld = sp.field();
    let n = sp.dim();
    if n == 2 {
        if !phi.is_identity() {
            return None;
        }
        let vecs: Vec<Vec<Elem>> = all_vectors(fld, 2).skip(1).collect();
        return vecs.iter().find_map(|x| {
            let line = Subspace::span(fld, 2, &[x.clone()]);
            let z = vecs.iter().find(|z| !line.contains(z) && sp.q(z) == sp.q(x))?;
            Some((x.clone(), z.clone()))
        });
    }
    let quot = bahn_fix_quotient(phi)?;
    let (ub, wb) = paired_basis_rec(&quot.map)?;
    let u = quot.transversal.apply(&ub);
    let w = quot.transversal.apply(&wb);
    let a = phi.mat().minus_identity();
    let x = a.solve_left(&u)?;
    let mut z = a.solve_left(&w)?;
    // z ⟂ u using Fix²(φ)
    let fu = sp.f(&z, &u);
    if !fu.is_zero() {
        let fix2 = phi.fix_j(2).basis_vecs();
        let d = fix2.iter().find(|d| !sp.f(d, &u).is_zero())?;
        z = axpy(fld, &z, fld.neg(fld.div(fu, sp.f(d, &u)).ok()?), d);
    }
    // Q(z) = Q(x) using Fix(φ), which is totally isotropic and orthogonal to u
    let gap = fld.sub(sp.q(&x), sp.q(&z));
    if !gap.is_zero() {
        let fix = quot.fix.basis_vecs();
        let c = fix.iter().find(|c| !sp.f(&z, c).is_zero())?;
        z = axpy(fld, &z, fld.div(gap, sp.f(&z, c)).ok()?, c);
    }
    Some((x, z))
}

/// Basis rows `xφ^0, …, xφ^{m−1}, zφ^0, …, zφ^{m−1}`.
fn orbit_basis(phi: &OrthMap, pb: &PairedBasis) -> Mat {
    let m = phi.mat();
    let mut rows = Vec::with_capacity(2 * pb.m);
    for start in [&pb.x, &pb.z] {
        let mut v = start.clone();
        for _ in 0..pb.m {
            rows.push(v.clone());
            v = m.apply(&v);
        }
    }
    Mat::from_rows(phi.space().field(), phi.dim(), &rows)
}

/// The linear map sending row `i` of `basis` to row `i` of `images`.
fn map_from_images(basis: &Mat, images: &Mat) -> Option<Mat> {
    Some(basis.inverse()?.mul(images))
}

/// An orthogonal `ψ` with `ψ² = φ` for `φ` of type 1o: `xφ^j ↦ zφ^j` and
/// `zφ^j ↦ xφ^{j+1}` on a paired basis.
pub fn square_root_type1o(phi: &OrthMap) -> Result<OrthMap> {
    require_char2(phi)?;
    match classify_summand(phi)?.kind {
        TypeKind::Type1o => {}
        TypeKind::Type1e => return Err(Error::NoSquareRoot("type 1e maps have no orthogonal square root".into())),
        _ => return domain("square roots are constructed for type-1 maps"),
    }
    let pb = lemma4_basis(phi)?;
    let basis = orbit_basis(phi, &pb);
    let m = phi.mat();
    let mut rows = Vec::with_capacity(phi.dim());
    let mut zk = pb.z.clone();
    for _ in 0..pb.m {
        rows.push(zk.clone());
        zk = m.apply(&zk);
    }
    let mut xk = m.apply(&pb.x);
    for _ in 0..pb.m {
        rows.push(xk.clone());
        xk = m.apply(&xk);
    }
    let images = Mat::from_rows(phi.space().field(), phi.dim(), &rows);
    let psi = map_from_images(&basis, &images).ok_or_else(|| Error::Internal("paired basis is singular".into()))?;
    let psi = OrthMap::new(phi.space().clone(), psi).map_err(|_| Error::Internal("square root is not orthogonal".into()))?;
    if psi.mat().mul(psi.mat()) != *phi.mat() {
        return internal("square root does not square to the input");
    }
    Ok(psi)
}

/// Requested `dim Fix(σ)`: `⌊n/2⌋` or `⌊n/2⌋ + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixDim {
    Half,
    HalfPlusOne,
}

impl FixDim {
    pub fn target(self, n: usize) -> usize {
        match self {
            FixDim::Half => n / 2,
            FixDim::HalfPlusOne => n / 2 + 1,
        }
    }
}

/// An involution `σ ∈ O(V, Q)` with `σφσ = φ⁻¹` and the requested fixed
/// space dimension, for an orthogonally indecomposable `φ`.
///
/// - cyclic `φ`: every map reversing `φ` is `vφ^k ↦ wφ^{−k}` for a cyclic
///   vector `v`; all `w` are tried and the canonically smallest valid `σ`
///   is returned;
/// - type 1o: the paired-basis involution `xφ^k ↦ zφ^{−k}` for `Half`, and
///   an involution reversing a cyclic square root for `HalfPlusOne`;
/// - type 1e in characteristic 2: an involution reversing a cyclic cover,
///   which also reverses its unipotent factor `φ`;
/// - type 1 in odd characteristic: `[[0, X], [X⁻¹, 0]]` on an invariant
///   totally isotropic split with `X` symmetric and `A·X = X·Aᵀ`.
///
/// `HalfPlusOne` is accepted for unipotent maps of type 1o or 2 and for
/// odd-dimensional maps.
pub fn inverting_involution(phi: &OrthMap, want: FixDim) -> Result<OrthMap> {
    let label = classify_summand(phi)?;
    let n = phi.dim();
    let char2 = phi.space().field().is_char2();
    if want == FixDim::HalfPlusOne {
        let eligible = n % 2 == 1
            || (char2 && label.unipotent && matches!(label.kind, TypeKind::Type1o | TypeKind::Type2));
        if !eligible {
            return domain("fixed dimension n/2 + 1 needs a unipotent map of type 1o or 2");
        }
    }
    let target = want.target(n);
    let not_found = || Error::WitnessNotFound(format!("no inverting involution with dim Fix = {target}"));
    let sigma = match label.kind {
        TypeKind::Type2 | TypeKind::Type3 => cyclic_inverting(phi, phi, target).ok_or_else(not_found)?,
        TypeKind::Type1o if char2 => match want {
            FixDim::Half => paired_basis_involution(phi)?,
            FixDim::HalfPlusOne => {
                let psi = square_root_type1o(phi)?;
                cyclic_inverting(&psi, phi, target).ok_or_else(not_found)?
            }
        },
        TypeKind::Type1e if char2 => {
            let eta = cyclic_cover_type1e(phi)?;
            cyclic_inverting(&eta, phi, target).ok_or_else(not_found)?
        }
        _ => block_inverting(phi).ok_or_else(not_found)?,
    };
    let ok = sigma.is_involution()
        && sigma.fix().dim() == target
        && sigma.mat().mul(phi.mat()).mul(sigma.mat()) == *phi.inverse().mat();
    if !ok {
        return internal("constructed involution does not invert the map");
    }
    Ok(sigma)
}

/// Canonically smallest involution reversing the cyclic map `eta` with the
/// given fixed dimension, returned on `phi`'s space.
fn cyclic_inverting(eta: &OrthMap, phi: &OrthMap, target: usize) -> Option<OrthMap> {
    let sp = eta.space();
    let fld = sp.field();
    let n = sp.dim();
    let v = cyclic_generator(eta)?;
    let m = eta.mat();
    let minv = eta.inverse().mat().clone();
    let mut rows = Vec::with_capacity(n);
    let mut cur = v;
    for _ in 0..n {
        rows.push(cur.clone());
        cur = m.apply(&cur);
    }
    let binv = Mat::from_rows(fld, n, &rows).inverse()?;
    let id = Mat::identity(fld, n);
    let mut best: Option<Mat> = None;
    for w in all_vectors(fld, n).skip(1) {
        let mut img = Vec::with_capacity(n);
        let mut cur = w;
        for _ in 0..n {
            img.push(cur.clone());
            cur = minv.apply(&cur);
        }
        let sigma = binv.mul(&Mat::from_rows(fld, n, &img));
        if sigma.mul(&sigma) != id
            || sigma.minus_identity().rank() != n - target
            || !crate::ortho::is_orthogonal(sp, &sigma).unwrap_or(false)
        {
            continue;
        }
        if best.as_ref().map_or(true, |b| sigma.canonical_cmp(b).is_lt()) {
            best = Some(sigma);
        }
    }
    OrthMap::new(phi.space().clone(), best?).ok()
}

/// `(xφ^k)σ = zφ^{−k}` and `(zφ^k)σ = xφ^{−k}` on a paired basis.
fn paired_basis_involution(phi: &OrthMap) -> Result<OrthMap> {
    let pb = lemma4_basis(phi)?;
    let basis = orbit_basis(phi, &pb);
    let minv = phi.inverse().mat().clone();
    let mut rows = Vec::with_capacity(phi.dim());
    for start in [&pb.z, &pb.x] {
        let mut v = start.clone();
        for _ in 0..pb.m {
            rows.push(v.clone());
            v = minv.apply(&v);
        }
    }
    let images = Mat::from_rows(phi.space().field(), phi.dim(), &rows);
    let sigma = map_from_images(&basis, &images).ok_or_else(|| Error::Internal("paired basis is singular".into()))?;
    OrthMap::new(phi.space().clone(), sigma).map_err(|_| Error::Internal("paired-basis involution is not orthogonal".into()))
}

/// `σ = [[0, X], [X⁻¹, 0]]` in a basis `[u; w]` adapted to an invariant
/// totally isotropic split with `f(u_i, w_j) = δ_ij`, where `φ = diag(A, A⁺)`;
/// `X` symmetric with `A·X = X·Aᵀ` makes `σ` an orthogonal involution
/// reversing `φ` with `dim Fix(σ) = n/2`.
fn block_inverting(phi: &OrthMap) -> Option<OrthMap> {
    let sp = phi.space();
    let fld = sp.field();
    let n = sp.dim();
    let half = n / 2;
    let (u, w) = is_hyperbolic_transform(phi).ok()??;
    let ub = u.basis_vecs();
    let wb = w.basis_vecs();
    let pairing = Mat::from_rows(fld, half, &ub.iter().map(|x| wb.iter().map(|y| sp.f(x, y)).collect()).collect::<Vec<_>>());
    let dual = pairing.inverse()?.transpose().mul(&Mat::from_rows(fld, n, &wb));
    let mut rows = ub;
    rows.extend(dual.row_vecs());
    let p = Mat::from_rows(fld, n, &rows);
    let pinv = p.inverse()?;
    let a = p.mul(phi.mat()).mul(&pinv).submatrix(0, 0, half, half);
    // unknowns: X_ij for i ≤ j; equations (A·X − X·Aᵀ)_ij = 0
    let slots: Vec<(usize, usize)> = (0..half).flat_map(|i| (i..half).map(move |j| (i, j))).collect();
    let sym = |coeffs: &[Elem]| {
        let mut x = Mat::zeros(fld, half, half);
        for (c, &(i, j)) in coeffs.iter().zip(&slots) {
            x.set(i, j, *c);
            x.set(j, i, *c);
        }
        x
    };
    let mut sys = Mat::zeros(fld, slots.len(), half * half);
    for (r, _) in slots.iter().enumerate() {
        let mut e = vec![Elem::ZERO; slots.len()];
        e[r] = Elem::ONE;
        let x = sym(&e);
        let d = a.mul(&x).sub(&x.mul(&a.transpose()));
        for i in 0..half {
            for j in 0..half {
                sys.set(r, i * half + j, d.get(i, j));
            }
        }
    }
    let sols = sys.left_kernel().row_vecs();
    let k = sols.len();
    let total = (fld.order() as u64).saturating_pow(k as u32).min(1 << 16);
    let x = (1..total)
        .map(|i| {
            let c = crate::linalg::vector_at(fld, k, i);
            let mut flat = vec![Elem::ZERO; slots.len()];
            for (ci, s) in c.iter().zip(&sols) {
                flat = axpy(fld, &flat, *ci, s);
            }
            sym(&flat)
        })
        .find(|x| x.is_invertible())?;
    let xinv = x.inverse()?;
    let mut local = Mat::zeros(fld, n, n);
    for i in 0..half {
        for j in 0..half {
            local.set(i, half + j, x.get(i, j));
            local.set(half + i, j, xinv.get(i, j));
        }
    }
    let sigma = pinv.mul(&local).mul(&p);
    OrthMap::new(sp.clone(), sigma).ok()
}

/// The classifier's rule, from a decomposition.
fn verdict_for(sp: &QuadSpace, d: &SummandDecomposition) -> (Verdict, &'static str) {
    let n = sp.dim();
    if n % 4 != 2 {
        return (Verdict::Bireflectional, reason::DIM_NOT_2_MOD_4);
    }
    if !sp.field().is_char2() {
        return if d.parts.iter().any(|p| p.dim() % 2 == 1) {
            (Verdict::Bireflectional, reason::ODD_SUMMAND)
        } else {
            (Verdict::NotBireflectional, reason::NO_ODD_SUMMAND)
        };
    }
    if d.parts.iter().any(absorbs_parity) {
        (Verdict::Bireflectional, reason::UNIPOTENT_SUMMAND)
    } else {
        (Verdict::NotBireflectional, reason::NO_UNIPOTENT_SUMMAND)
    }
}

/// A summand with inverting involutions of both fixed-space parities.
fn absorbs_parity(p: &Summand) -> bool {
    if p.dim() % 2 == 1 {
        return true;
    }
    p.map.space().field().is_char2() && p.label.unipotent && matches!(p.label.kind, TypeKind::Type1o | TypeKind::Type2)
}

/// Special involutions `(σ, τ)` with `σ·τ = φ`, or `None` when `φ` is not
/// bireflectional in `SO(V, Q)`.
///
/// `σ` is assembled from inverting involutions of the summands with
/// `dim Fix = ⌊n_i/2⌋`; if its path dimension is odd, one summand that
/// admits both parities switches to `⌊n_i/2⌋ + 1`. Then `τ = σ·φ`.
pub fn involution_pair_so(phi: &OrthMap) -> Result<Option<(OrthMap, OrthMap)>> {
    if !phi.is_special() {
        return domain("map is not in SO(V, Q)");
    }
    let d = ortho_indecomposable_summands(phi)?;
    pair_from_decomposition(phi, &d)
}

fn pair_from_decomposition(phi: &OrthMap, d: &SummandDecomposition) -> Result<Option<(OrthMap, OrthMap)>> {
    let sp = phi.space();
    if verdict_for(sp, d).0 == Verdict::NotBireflectional {
        return Ok(None);
    }
    let mut wants = vec![FixDim::Half; d.parts.len()];
    let path: usize = d.parts.iter().map(|p| p.dim() - p.dim() / 2).sum();
    if path % 2 == 1 {
        let i = d
            .parts
            .iter()
            .position(absorbs_parity)
            .ok_or_else(|| Error::Internal("odd path dimension and no summand to absorb it".into()))?;
        wants[i] = FixDim::HalfPlusOne;
    }
    let sigma = assemble(phi, d, &wants)?;
    let tau = sigma.compose(phi)?;
    let ok = sigma.is_involution() && tau.is_involution() && sigma.is_special() && tau.is_special();
    if !ok || sigma.mat().mul(tau.mat()) != *phi.mat() {
        return internal("assembled involution pair is invalid");
    }
    Ok(Some((sigma, tau)))
}

/// The orthogonal sum of inverting involutions of the summands.
fn assemble(phi: &OrthMap, d: &SummandDecomposition, wants: &[FixDim]) -> Result<OrthMap> {
    let sp = phi.space();
    let fld = sp.field();
    let n = sp.dim();
    let mut basis_rows = Vec::with_capacity(n);
    let mut blocks = Vec::with_capacity(d.parts.len());
    for (p, &want) in d.parts.iter().zip(wants) {
        basis_rows.extend(p.subspace.basis_vecs());
        blocks.push(inverting_involution(&p.map, want)?.into_mat());
    }
    let p = Mat::from_rows(fld, n, &basis_rows);
    let refs: Vec<&Mat> = blocks.iter().collect();
    let local = Mat::block_diag(fld, &refs);
    let sigma = p.inverse().expect("summands span V").mul(&local).mul(&p);
    OrthMap::new(sp.clone(), sigma)
}

/// Bireflectionality of a special `φ` in `SO(V, Q)`:
///
/// - `dim V ≢ 2 mod 4`: always;
/// - odd characteristic: iff some orthogonal summand has odd dimension;
/// - characteristic 2: iff some unipotent summand is of type 1o or cyclic.
///
/// Positive verdicts carry an involution pair.
pub fn is_bireflectional_so(phi: &OrthMap) -> Result<WitnessReport> {
    if !phi.is_special() {
        return domain("map is not in SO(V, Q)");
    }
    let d = ortho_indecomposable_summands(phi)?;
    let (verdict, why) = verdict_for(phi.space(), &d);
    let pair = pair_from_decomposition(phi, &d)?;
    Ok(WitnessReport {
        verdict,
        reversible: verdict == Verdict::Bireflectional,
        pair,
        reason: why,
        decomposition: d,
    })
}

/// Conjugacy to the inverse within `SO(V, Q)`; coincides with
/// bireflectionality there.
pub fn is_reversible_so(phi: &OrthMap) -> Result<bool> {
    Ok(is_bireflectional_so(phi)?.reversible)
}

/// Whether every element of `SO(V, Q)` is bireflectional: iff
/// `dim V ≢ 2 mod 4`, or `V` is the hyperbolic plane over GF(2) or GF(3).
pub fn is_group_bireflectional(sp: &QuadSpace) -> bool {
    let n = sp.dim();
    if n % 4 != 2 {
        return true;
    }
    n == 2 && sp.is_hyperbolic() && matches!(sp.field().order(), 2 | 3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FiniteField;
    use crate::ortho::full_path_element;
    use crate::structure::{make_hyperbolic_type1, make_type1_fixture, make_type3_fixture, realize_cyclic, unipotent_poly};

    fn gf(q: u32) -> FiniteField {
        FiniteField::of_order(q).unwrap()
    }

    #[test]
    fn paired_basis_on_identity_plane() {
        let f = gf(2);
        let id = OrthMap::identity(QuadSpace::hyperbolic(f, 1));
        let pb = lemma4_basis(&id).unwrap();
        assert_eq!(pb.x, vec![Elem(1), Elem(0)]);
        assert_eq!(pb.z, vec![Elem(0), Elem(1)]);
        assert!(pb.satisfies(&id, 2));
    }

    #[test]
    fn paired_basis_on_fixtures() {
        for q in [2, 4] {
            let phi = make_type1_fixture(gf(q), 1, false).unwrap();
            let pb = lemma4_basis(&phi).unwrap();
            assert!(pb.satisfies(&phi, 6));
        }
        let phi = make_hyperbolic_type1(gf(2), 3).unwrap();
        assert!(lemma4_basis(&phi).unwrap().satisfies(&phi, 6));
        let e = make_type1_fixture(gf(2), 1, true).unwrap();
        assert!(lemma4_basis(&e).is_err());
    }

    #[test]
    fn square_roots() {
        let f = gf(2);
        let id = OrthMap::identity(QuadSpace::hyperbolic(f, 1));
        let psi = square_root_type1o(&id).unwrap();
        assert_eq!(psi.mat(), &Mat::from_codes(f, &[vec![0, 1], vec![1, 0]]).unwrap());
        assert!(!psi.is_special());
        let phi = make_type1_fixture(f, 1, false).unwrap();
        let psi = square_root_type1o(&phi).unwrap();
        assert_eq!(psi.min_poly(), &unipotent_poly(f, 6));
        assert!(!psi.is_special());
        let e = make_type1_fixture(f, 1, true).unwrap();
        assert!(matches!(square_root_type1o(&e), Err(Error::NoSquareRoot(_))));
    }

    #[test]
    fn inverting_involution_examples() {
        let f = gf(2);
        let id = OrthMap::identity(QuadSpace::hyperbolic(f, 1));
        let s = inverting_involution(&id, FixDim::Half).unwrap();
        assert_eq!(s.mat(), &Mat::from_codes(f, &[vec![0, 1], vec![1, 0]]).unwrap());
        let cyc = realize_cyclic(&QuadSpace::hyperbolic(f, 2), &unipotent_poly(f, 4)).unwrap();
        assert_eq!(inverting_involution(&cyc, FixDim::Half).unwrap().fix().dim(), 2);
        assert_eq!(inverting_involution(&cyc, FixDim::HalfPlusOne).unwrap().fix().dim(), 3);
        let p = crate::field::Poly::from_codes(f, &[1, 1, 0, 1]).unwrap();
        let t3 = make_type3_fixture(&p, 1).unwrap();
        let s = inverting_involution(&t3, FixDim::Half).unwrap();
        assert_eq!(s.fix().dim(), 3);
        let tau = t3.compose(&s).unwrap();
        assert!(s.fix().intersect(&tau.fix()) == t3.fix() && t3.fix().is_zero());
        assert!(inverting_involution(&t3, FixDim::HalfPlusOne).is_err());
        let e = make_type1_fixture(f, 1, true).unwrap();
        assert_eq!(inverting_involution(&e, FixDim::Half).unwrap().fix().dim(), 2);
        let o = make_type1_fixture(f, 1, false).unwrap();
        assert_eq!(inverting_involution(&o, FixDim::Half).unwrap().fix().dim(), 3);
        assert_eq!(inverting_involution(&o, FixDim::HalfPlusOne).unwrap().fix().dim(), 4);
    }

    #[test]
    fn pairs_and_verdicts() {
        let f3 = gf(3);
        let h3 = QuadSpace::hyperbolic(f3, 1);
        let minus = OrthMap::new(h3.clone(), Mat::identity(f3, 2).neg()).unwrap();
        let (s, t) = involution_pair_so(&minus).unwrap().unwrap();
        assert_eq!(s, minus);
        assert!(t.is_identity());
        let f4 = gf(4);
        let h4 = QuadSpace::hyperbolic(f4, 1);
        let psi = full_path_element(&h4).unwrap();
        assert!(involution_pair_so(&psi).unwrap().is_none());
        assert!(!is_reversible_so(&psi).unwrap());
        let h6 = QuadSpace::hyperbolic(gf(2), 3);
        let psi = full_path_element(&h6).unwrap();
        let r = is_bireflectional_so(&psi).unwrap();
        assert_eq!(r.verdict, Verdict::NotBireflectional);
        assert_eq!(r.reason, reason::NO_UNIPOTENT_SUMMAND);
        assert!(is_bireflectional_so(&OrthMap::identity(h6)).unwrap().is_bireflectional());
        let o = make_type1_fixture(gf(2), 1, false).unwrap();
        let r = is_bireflectional_so(&o).unwrap();
        assert!(r.is_bireflectional() && r.pair.is_some());
    }

    #[test]
    fn group_verdicts() {
        assert!(is_group_bireflectional(&QuadSpace::hyperbolic(gf(2), 1)));
        assert!(is_group_bireflectional(&QuadSpace::hyperbolic(gf(3), 1)));
        assert!(!is_group_bireflectional(&QuadSpace::hyperbolic(gf(4), 1)));
        assert!(!is_group_bireflectional(&QuadSpace::hyperbolic(gf(5), 1)));
        assert!(!is_group_bireflectional(&QuadSpace::anisotropic_plane(gf(2))));
        assert!(is_group_bireflectional(&QuadSpace::standard(gf(2), 4, false).unwrap()));
        assert!(!is_group_bireflectional(&QuadSpace::hyperbolic(gf(2), 3)));
        assert!(is_group_bireflectional(&QuadSpace::standard(gf(3), 3, true).unwrap()));
    }
}
