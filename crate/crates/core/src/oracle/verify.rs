//! Exhaustive verification of the structural statements over one space.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, FiniteField};
use crate::linalg::{all_vectors, cyclic_subspace, is_cyclic, is_unipotent, jordan_chevalley, Mat, Subspace};
use crate::ortho::{anisotropic_points, full_path_element, reflection_factorization, reflection_mat, OrthMap};
use crate::quadspace::QuadSpace;
use crate::structure::{
    bahn_fix_quotient, certify_indecomposable, classify_summand, conjugate_type1e, cyclic_cover_type1e,
    invariant_subspaces, is_hyperbolic_transform, ortho_indecomposable_summands, Summand, SummandDecomposition,
    TypeKind,
};
use crate::witness::{
    inverting_involution, is_bireflectional_so, is_group_bireflectional, lemma4_basis, reason, square_root_type1o,
    FixDim, Verdict,
};

use super::brute::{
    brute_bireflectional, brute_centralizer, brute_inverting_involutions, brute_reversible, brute_square_roots,
};
use super::group::{orthogonal_group_order, GroupKind, GroupTable};

/// Claim identifiers with the statement each one checks.
pub const CLAIMS: &[(&str, &str)] = &[
    ("closure", "the enumerated group is closed under inverses and products with its generators, and |SO| is |O| or |O|/2"),
    ("order-formula", "|O(V, Q)| equals the closed-form order"),
    ("reflection-dichotomy", "for a reflection σ_b, either Bahn(φσ_b) = Bahn(φ) ⊕ ⟨b⟩ or Bahn(φ) = Bahn(φσ_b) ⊕ ⟨b⟩"),
    ("path-fix-duality", "Bahn^j(φ)^⊥ = Fix^j(φ), V = Bahn^∞(φ) ⊕ Fix^∞(φ), rad W ∩ W(φ − 1) is totally isotropic, and a totally isotropic Bahn(φ) has even dimension"),
    ("reflection-factorization", "φ is a product of at most dim Bahn(φ) + 2 reflections, with word length of the parity of dim Bahn(φ)"),
    ("structure-certification", "each element's decomposition is orthogonal, invariant and spanning, and every part is certified indecomposable with a reproducible label"),
    ("so-classifier", "is_bireflectional_so agrees with exhaustive involution-pair search on every element of SO, and every returned pair consists of special involutions with product φ"),
    ("reason-tag", "the verdict's reason tag is the one for the dimension, characteristic and verdict"),
    ("reversible-iff-bireflectional", "an element of SO is conjugate to its inverse in SO iff it is a product of two involutions of SO, and is_reversible_so agrees"),
    ("group-verdict", "is_group_bireflectional agrees with exhaustive search over SO"),
    ("full-path-witness", "in characteristic 2 with dim ≡ 2 mod 4, the full-path product of reflections is special, fixed-point free and not bireflectional"),
    ("inverting-involution-half", "every indecomposable summand is inverted by an involution with dim Fix = ⌊n/2⌋, by construction and by exhaustive search"),
    ("inverting-involution-half-plus-one", "unipotent type-1o or cyclic unipotent summands in characteristic 2, and odd-dimensional summands, are inverted by an involution with dim Fix = ⌊n/2⌋ + 1"),
    ("cyclic-inverter-fix", "for cyclic φ and every involution σ inverting it in characteristic 2, Fix(φ) = Fix(σ) ∩ Fix(φσ)"),
    ("square-root-dichotomy", "an indecomposable type-1 map in characteristic 2 has an orthogonal square root iff it is of type 1o; the constructed root squares to φ and is not special"),
    ("type1e-cover", "a type-1e map is a hyperbolic transformation and the unipotent part of a cyclic orthogonal map"),
    ("type1e-conjugacy", "type-1e maps of the same space are conjugate"),
    ("type1-hyperbolic", "a type-1 map on a hyperbolic space is a hyperbolic transformation"),
    ("cyclic-radical-hyperbolic", "a type-1 map with a cyclic subspace U of half dimension and dim rad U ≥ 3 is a hyperbolic transformation"),
    ("odd-char-summands", "in odd characteristic type-1 summands have dimension ≡ 0 mod 4 and are hyperbolic transformations, and other summands have odd dimension iff φ or −φ is unipotent"),
    ("cyclic-unipotent-towers", "for cyclic φ with minimal polynomial (x+1)^{2m}, Bahn^{m+1} = Fix^{m−1} is totally isotropic and Bahn^m = Fix^m is not"),
    ("quotient-indecomposable", "Bahn(φ)/Fix(φ) of an indecomposable unipotent map in characteristic 2 is indecomposable"),
    ("paired-basis", "a type-1o map has generators x, z satisfying the four paired-basis conditions for all k ≤ dim V"),
    ("splitting-iff-special", "for type-1o φ and an involution σ inverting it, V splits into two φ- and σ-invariant subspaces iff σ is special"),
    ("non-hyperbolic-squares", "on a space of dimension 4m+2 and Witt index 2m in characteristic 2, the square of a cyclic unipotent map is indecomposable of type 1 and not hyperbolic"),
    ("lagrangian-special", "an orthogonal map with an invariant totally isotropic subspace of half dimension is special"),
    ("centralizer-special", "the centralizer in O of φ lies in SO when Fix(φ) = 0 or all unipotent summands are of type 1e (characteristic 2), or when φ has no odd-dimensional summand (odd characteristic)"),
    ("inverters-special", "for unipotent φ in characteristic 2 with all summands of type 1e, every element of O inverting φ is special"),
    ("fixfree-centralizer-summands", "if Fix(φ) = 0 in characteristic 2, every unipotent summand of every element commuting with φ is of type 1"),
];

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub matrix: Vec<Vec<u32>>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimReport {
    pub claim_id: &'static str,
    pub statement: &'static str,
    pub instances: u64,
    pub failure_count: u64,
    /// The first failures in canonical order.
    pub failures: Vec<Failure>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Evidence {
    pub name: &'static str,
    pub count: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub field_order: u32,
    pub dim: usize,
    pub gram_upper: Vec<Vec<u32>>,
    pub witt_index: usize,
    pub order_o: usize,
    pub order_so: usize,
    pub claims: Vec<ClaimReport>,
    pub evidence: Vec<Evidence>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(|c| c.failure_count == 0)
    }

    pub fn claim(&self, id: &str) -> Option<&ClaimReport> {
        self.claims.iter().find(|c| c.claim_id == id)
    }

    /// Claims that were exercised at least once.
    pub fn instantiated(&self) -> usize {
        self.claims.iter().filter(|c| c.instances > 0).count()
    }
}

const KEPT_FAILURES: usize = 8;

struct Recorder {
    claims: Vec<ClaimReport>,
}

impl Recorder {
    fn new() -> Self {
        let claims = CLAIMS
            .iter()
            .map(|&(claim_id, statement)| ClaimReport { claim_id, statement, instances: 0, failure_count: 0, failures: Vec::new() })
            .collect();
        Recorder { claims }
    }

    fn check(&mut self, id: &str, ok: bool, m: &Mat, detail: impl FnOnce() -> String) {
        let c = self.claims.iter_mut().find(|c| c.claim_id == id).expect("registered claim");
        c.instances += 1;
        if !ok {
            c.failure_count += 1;
            if c.failures.len() < KEPT_FAILURES {
                c.failures.push(Failure { matrix: m.codes(), detail: detail() });
            }
        }
    }
}

/// Smallest index per conjugacy class.
fn class_reps(classes: &[usize]) -> Vec<usize> {
    let mut reps: Vec<usize> = classes.to_vec();
    reps.sort_unstable();
    reps.dedup();
    reps
}

type PartKey = (Vec<Elem>, Vec<Elem>);

fn part_key(p: &OrthMap) -> PartKey {
    (p.space().gram_upper().data().to_vec(), p.mat().data().to_vec())
}

struct Verifier<'a> {
    sp: &'a QuadSpace,
    budget: u64,
    rec: Recorder,
    evidence: HashMap<&'static str, u64>,
    tables: HashMap<QuadSpace, GroupTable>,
    seen_parts: HashSet<PartKey>,
    type1e_refs: HashMap<Vec<Elem>, OrthMap>,
    rep_parts: Vec<Summand>,
}

/// Runs every claim over `O(V, Q)` and `SO(V, Q)`.
pub fn verify_theorems(sp: &QuadSpace) -> Result<VerifyReport> {
    verify_with_budget(sp, super::group::DEFAULT_BUDGET)
}

pub fn verify_with_budget(sp: &QuadSpace, budget: u64) -> Result<VerifyReport> {
    let o = GroupTable::enumerate(sp, GroupKind::O, budget)?;
    let so = o.special_subgroup();
    let mut v = Verifier {
        sp,
        budget,
        rec: Recorder::new(),
        evidence: HashMap::new(),
        tables: HashMap::new(),
        seen_parts: HashSet::new(),
        type1e_refs: HashMap::new(),
        rep_parts: Vec::new(),
    };
    v.group_checks(&o, &so);
    let o_reps = class_reps(&o.conjugacy_classes());
    v.element_checks(&o, &o_reps)?;
    v.so_checks(&so, &o)?;
    v.centralizer_checks(&o, &o_reps)?;
    v.tables.insert(sp.clone(), o.clone());
    v.part_checks()?;
    let mut evidence: Vec<Evidence> = v.evidence.into_iter().map(|(name, count)| Evidence { name, count }).collect();
    evidence.sort_by_key(|e| e.name);
    Ok(VerifyReport {
        field_order: sp.field().order(),
        dim: sp.dim(),
        gram_upper: sp.gram_upper().codes(),
        witt_index: sp.witt_index(),
        order_o: o.len(),
        order_so: so.len(),
        claims: v.rec.claims,
        evidence,
    })
}

fn bahn_of(m: &Mat) -> Subspace {
    Subspace::row_space(&m.minus_identity())
}

fn fix_of(m: &Mat) -> Subspace {
    Subspace::row_space(&m.minus_identity().left_kernel())
}

fn direct_sum_is(whole: &Subspace, a: &Subspace, b: &Subspace) -> bool {
    a.intersect(b).is_zero() && a.dim() + b.dim() == whole.dim() && whole.contains_subspace(a) && whole.contains_subspace(b)
}

impl<'a> Verifier<'a> {
    fn field(&self) -> FiniteField {
        self.sp.field()
    }

    fn table_for(&mut self, sp: &QuadSpace) -> Result<&GroupTable> {
        if !self.tables.contains_key(sp) {
            let t = GroupTable::enumerate(sp, GroupKind::O, self.budget)?;
            self.tables.insert(sp.clone(), t);
        }
        Ok(&self.tables[sp])
    }

    fn group_checks(&mut self, o: &GroupTable, so: &GroupTable) {
        let id = Mat::identity(self.field(), self.sp.dim());
        let gens: Vec<Mat> = o.generators().iter().map(|&g| o.element(g).clone()).collect();
        for (i, m) in o.elements().iter().enumerate() {
            let inv_ok = m.inverse().is_some_and(|inv| o.index_of(&inv).is_some());
            let prod_ok = gens.iter().all(|g| o.index_of(&m.mul(g)).is_some());
            self.rec.check("closure", inv_ok && prod_ok, m, || format!("element {i} leaves the table"));
        }
        let halves = so.len() == o.len() || 2 * so.len() == o.len();
        self.rec.check("closure", halves && o.index_of(&id).is_some(), &id, || {
            format!("|O| = {}, |SO| = {}", o.len(), so.len())
        });
        let expected = orthogonal_group_order(self.sp);
        self.rec.check("order-formula", o.len() as u128 == expected, &id, || {
            format!("enumerated {} elements, closed form gives {expected}", o.len())
        });
    }

    /// Per-element checks over `O`: reflection dichotomy and decomposition
    /// certification on every element; the heavier ones on class
    /// representatives.
    fn element_checks(&mut self, o: &GroupTable, reps: &[usize]) -> Result<()> {
        let sp = self.sp;
        let fld = self.field();
        let n = sp.dim();
        let points = anisotropic_points(sp);
        let refl: Vec<(Vec<Elem>, Mat)> =
            points.iter().map(|b| (b.clone(), reflection_mat(sp, b).expect("anisotropic"))).collect();
        let rep_set: HashSet<usize> = reps.iter().copied().collect();
        for i in 0..o.len() {
            let m = o.element(i);
            let is_rep = rep_set.contains(&i);
            let bahn = bahn_of(m);
            let count = if is_rep { refl.len() } else { 1.min(refl.len()) };
            for (b, r) in &refl[..count] {
                let line = Subspace::span(fld, n, std::slice::from_ref(b));
                let bahn_r = bahn_of(&m.mul(r));
                let ok = direct_sum_is(&bahn_r, &bahn, &line) || direct_sum_is(&bahn, &bahn_r, &line);
                self.rec.check("reflection-dichotomy", ok, m, || format!("reflection along {:?}", b));
            }
            let phi = o.map(i);
            let d = ortho_indecomposable_summands(&phi)?;
            let ok = d.is_valid_for(&phi)
                && d.parts.iter().all(|p| {
                    certify_indecomposable(&p.map) && classify_summand(&p.map).is_ok_and(|l| l == p.label)
                });
            self.rec.check("structure-certification", ok, m, || "invalid or uncertified decomposition".into());
            for p in &d.parts {
                self.construction_part_checks(p)?;
            }
            if is_rep {
                self.rep_checks(&phi, &d)?;
            }
        }
        Ok(())
    }

    fn rep_checks(&mut self, phi: &OrthMap, d: &SummandDecomposition) -> Result<()> {
        let sp = self.sp;
        let n = sp.dim();
        let m = phi.mat();
        let mut ok = true;
        for j in 1..=n {
            let (b, f) = (phi.bahn_j(j), phi.fix_j(j));
            ok &= sp.perp(&b) == f;
            for w in [&b, &f] {
                ok &= sp.is_totally_isotropic(&sp.radical(w).intersect(&w.image(&m.minus_identity())));
            }
        }
        ok &= direct_sum_is(&Subspace::full(sp.field(), n), &phi.bahn_j(n), &phi.fix_j(n));
        if sp.is_totally_isotropic(&phi.bahn()) {
            ok &= phi.path_dim() % 2 == 0;
        }
        self.rec.check("path-fix-duality", ok, m, || "path/fix tower identity violated".into());

        match reflection_factorization(phi) {
            Ok(word) => {
                let prod = word.iter().fold(Mat::identity(sp.field(), n), |acc, b| {
                    acc.mul(&reflection_mat(sp, b).expect("anisotropic"))
                });
                let ok = prod == *m && word.len() <= phi.path_dim() + 2 && word.len() % 2 == phi.path_dim() % 2;
                self.rec.check("reflection-factorization", ok, m, || format!("word of length {}", word.len()));
            }
            Err(Error::Domain(_)) if n == 4 && sp.field().order() == 2 && sp.is_hyperbolic() => {
                *self.evidence.entry("elements-outside-the-reflection-subgroup").or_default() += 1;
            }
            Err(e) => self.rec.check("reflection-factorization", false, m, || e.to_string()),
        }

        if n % 2 == 0 {
            let half_lagrangian = invariant_subspaces(m)
                .into_iter()
                .any(|t| t.dim() == n / 2 && sp.is_totally_isotropic(&t));
            if half_lagrangian {
                self.rec.check("lagrangian-special", phi.is_special(), m, || "not special".into());
            }
        }

        let char2 = sp.field().is_char2();
        if char2 && n % 4 == 2 && sp.witt_index() + 1 == n / 2 && is_unipotent(m) && is_cyclic(m)? {
            let sq = OrthMap::trusted(sp.clone(), m.mul(m));
            let ok = classify_summand(&sq).is_ok_and(|l| l.kind.is_type1())
                && is_hyperbolic_transform(&sq)?.is_none();
            self.rec.check("non-hyperbolic-squares", ok, m, || "square is decomposable or hyperbolic".into());
        }

        if d.parts.len() == 1 && d.parts[0].label.kind == TypeKind::Type1o {
            *self.evidence.entry("type1o-classes-of-full-dimension").or_default() += 1;
        }
        Ok(())
    }

    /// Checks on a summand that need no enumeration; each distinct part is
    /// visited once.
    fn construction_part_checks(&mut self, p: &Summand) -> Result<()> {
        if !self.seen_parts.insert(part_key(&p.map)) {
            return Ok(());
        }
        let phi = &p.map;
        let sp = phi.space();
        let m = phi.mat();
        let n = phi.dim();
        let char2 = sp.field().is_char2();
        let kind = p.label.kind;

        let half = inverting_involution(phi, FixDim::Half);
        self.rec.check("inverting-involution-half", half.is_ok(), m, || format!("{:?}", half.as_ref().err()));
        if both_parities(p) {
            let plus = inverting_involution(phi, FixDim::HalfPlusOne);
            self.rec.check("inverting-involution-half-plus-one", plus.is_ok(), m, || {
                format!("{:?}", plus.as_ref().err())
            });
        }

        if char2 && kind.is_type1() {
            let root = square_root_type1o(phi);
            let ok = match (kind, &root) {
                (TypeKind::Type1o, Ok(psi)) => psi.mat().mul(psi.mat()) == *m && !psi.is_special(),
                (TypeKind::Type1e, Err(Error::NoSquareRoot(_))) => true,
                _ => false,
            };
            self.rec.check("square-root-dichotomy", ok, m, || format!("{kind:?}: {:?}", root.as_ref().err()));
        }
        if char2 && kind == TypeKind::Type1o {
            let ok = lemma4_basis(phi).is_ok_and(|pb| pb.satisfies(phi, n));
            self.rec.check("paired-basis", ok, m, || "paired basis missing or invalid".into());
        }
        if char2 && kind == TypeKind::Type1e {
            let hyperbolic = sp.is_hyperbolic() && is_hyperbolic_transform(phi)?.is_some();
            let cover = cyclic_cover_type1e(phi)
                .ok()
                .and_then(|eta| Some(is_cyclic(eta.mat()).ok()? && jordan_chevalley(eta.mat()).ok()?.1 == *m));
            self.rec.check("type1e-cover", hyperbolic && cover == Some(true), m, || "no hyperbolic split or cover".into());
            let key = sp.gram_upper().data().to_vec();
            match self.type1e_refs.get(&key) {
                None => {
                    self.type1e_refs.insert(key, phi.clone());
                }
                Some(r) => {
                    let ok = conjugate_type1e(r, phi).is_ok_and(|a| {
                        crate::ortho::is_orthogonal(sp, &a).unwrap_or(false)
                            && a.inverse().is_some_and(|ai| ai.mul(r.mat()).mul(&a) == *m)
                    });
                    self.rec.check("type1e-conjugacy", ok, m, || "no orthogonal conjugator".into());
                }
            }
        }
        if kind.is_type1() && sp.is_hyperbolic() {
            let ok = is_hyperbolic_transform(phi)?.is_some();
            self.rec.check("type1-hyperbolic", ok, m, || "no invariant totally isotropic split".into());
        }
        if char2 && kind.is_type1() && n % 4 == 2 {
            let big_radical = all_vectors(sp.field(), n).any(|v| {
                let u = cyclic_subspace(m, &v);
                u.dim() == n / 2 && sp.radical(&u).dim() >= 3
            });
            if big_radical {
                let ok = is_hyperbolic_transform(phi)?.is_some();
                self.rec.check("cyclic-radical-hyperbolic", ok, m, || "not hyperbolic".into());
            }
        }
        if !char2 {
            let ok = if kind.is_type1() {
                n % 4 == 0 && is_hyperbolic_transform(phi)?.is_some()
            } else {
                (n % 2 == 1) == (is_unipotent(m) || is_unipotent(&m.neg()))
            };
            self.rec.check("odd-char-summands", ok, m, || format!("{kind:?} of dimension {n}"));
        }
        if char2 && p.label.unipotent && kind == TypeKind::Type2 && n % 2 == 0 {
            let k = n / 2;
            let (b1, f1) = (phi.bahn_j(k + 1), phi.fix_j(k - 1));
            let (b0, f0) = (phi.bahn_j(k), phi.fix_j(k));
            let ok = b1 == f1 && sp.is_totally_isotropic(&b1) && b0 == f0 && !sp.is_totally_isotropic(&b0);
            self.rec.check("cyclic-unipotent-towers", ok, m, || "tower identity violated".into());
        }
        if char2 && p.label.unipotent {
            if let Some(quot) = bahn_fix_quotient(phi) {
                let ok = quot.map.dim() == 0 || certify_indecomposable(&quot.map);
                self.rec.check("quotient-indecomposable", ok, m, || "quotient splits".into());
            }
        }
        Ok(())
    }

    /// Exhaustive cross-checks for the summands of a class representative.
    fn brute_part_checks(&mut self, p: &Summand) -> Result<()> {
        let phi = p.map.clone();
        let sp = phi.space().clone();
        let n = phi.dim();
        let m = phi.mat().clone();
        let char2 = sp.field().is_char2();
        let kind = p.label.kind;
        let g = self.table_for(&sp)?.clone();
        let inverters = brute_inverting_involutions(&phi, &g)?;
        let fix_dims: Vec<usize> = inverters.iter().map(|&s| n - g.element(s).minus_identity().rank()).collect();
        self.rec.check("inverting-involution-half", fix_dims.contains(&(n / 2)), &m, || {
            format!("exhaustive fix dimensions {fix_dims:?}")
        });
        if both_parities(p) {
            self.rec.check("inverting-involution-half-plus-one", fix_dims.contains(&(n / 2 + 1)), &m, || {
                format!("exhaustive fix dimensions {fix_dims:?}")
            });
        }
        if char2 && is_cyclic(&m)? {
            for &s in &inverters {
                let sm = g.element(s);
                let ok = fix_of(sm).intersect(&fix_of(&m.mul(sm))) == fix_of(&m);
                self.rec.check("cyclic-inverter-fix", ok, &m, || format!("inverter {:?}", sm.codes()));
            }
        }
        if char2 && kind.is_type1() {
            let roots = brute_square_roots(&phi, &g)?;
            let ok = match kind {
                TypeKind::Type1o => {
                    square_root_type1o(&phi).is_ok_and(|psi| g.index_of(psi.mat()).is_some_and(|i| roots.contains(&i)))
                }
                _ => roots.is_empty(),
            };
            self.rec.check("square-root-dichotomy", ok, &m, || format!("{} exhaustive roots", roots.len()));
        }
        if char2 && kind == TypeKind::Type1o {
            let subs = invariant_subspaces(&m);
            for &s in &inverters {
                let sm = g.element(s);
                let both: Vec<&Subspace> =
                    subs.iter().filter(|u| !u.is_zero() && !u.is_full() && u.is_invariant(sm)).collect();
                let splits = both.iter().any(|u| {
                    both.iter().any(|w| u.dim() + w.dim() == n && u.intersect(w).is_zero())
                });
                let special = g.special_mask()[s];
                self.rec.check("splitting-iff-special", splits == special, &m, || {
                    format!("inverter special = {special}, splitting found = {splits}")
                });
            }
        }
        Ok(())
    }

    fn part_checks(&mut self) -> Result<()> {
        let reps = std::mem::take(&mut self.rep_parts);
        let mut seen = HashSet::new();
        for p in reps {
            if seen.insert(part_key(&p.map)) {
                self.brute_part_checks(&p)?;
            }
        }
        Ok(())
    }

    fn so_checks(&mut self, so: &GroupTable, o: &GroupTable) -> Result<()> {
        let sp = self.sp;
        let n = sp.dim();
        let classes = so.conjugacy_classes();
        let mut brute: HashMap<usize, (bool, bool)> = HashMap::new();
        let mut all_yes = true;
        for &r in &class_reps(&classes) {
            let phi = so.map(r);
            let bi = brute_bireflectional(&phi, so)?.is_some();
            let rev = brute_reversible(&phi, so)?.is_some();
            let size = classes.iter().filter(|&&c| c == r).count() as u64;
            self.rec.check("reversible-iff-bireflectional", bi == rev, phi.mat(), || {
                format!("bireflectional = {bi}, reversible = {rev}")
            });
            if !rev && brute_reversible(&phi, o)?.is_some() {
                *self.evidence.entry("reversible-in-o-but-not-in-so").or_default() += size;
            }
            all_yes &= bi;
            brute.insert(r, (bi, rev));
        }
        for i in 0..so.len() {
            let phi = so.map(i);
            let (bi, rev) = brute[&classes[i]];
            let report = is_bireflectional_so(&phi)?;
            let pair_ok = match &report.pair {
                None => !report.is_bireflectional(),
                Some((s, t)) => {
                    [s, t].iter().all(|x| so.index_of(x.mat()).is_some_and(|j| so.is_involution(j)))
                        && s.mat().mul(t.mat()) == *phi.mat()
                }
            };
            self.rec.check("so-classifier", report.is_bireflectional() == bi && pair_ok, phi.mat(), || {
                format!("classifier says {:?} ({}), exhaustive search says {bi}", report.verdict, report.reason)
            });
            self.rec.check("reversible-iff-bireflectional", report.reversible == rev, phi.mat(), || {
                format!("classifier reversible = {}, exhaustive = {rev}", report.reversible)
            });
            let expected: &[&str] = match (n % 4 == 2, sp.field().is_char2(), report.verdict) {
                (false, _, _) => &[reason::DIM_NOT_2_MOD_4],
                (true, false, Verdict::Bireflectional) => &[reason::ODD_SUMMAND],
                (true, false, Verdict::NotBireflectional) => &[reason::NO_ODD_SUMMAND],
                (true, true, Verdict::Bireflectional) => &[reason::UNIPOTENT_SUMMAND],
                (true, true, Verdict::NotBireflectional) => &[reason::NO_UNIPOTENT_SUMMAND],
            };
            self.rec.check("reason-tag", expected.contains(&report.reason), phi.mat(), || report.reason.to_string());
        }
        let id = Mat::identity(sp.field(), n);
        self.rec.check("group-verdict", is_group_bireflectional(sp) == all_yes, &id, || {
            format!("exhaustive search says every element is bireflectional: {all_yes}")
        });
        if sp.field().is_char2() && n % 4 == 2 && !(n == 2 && sp.is_hyperbolic() && sp.field().order() == 2) {
            let psi = full_path_element(sp)?;
            let ok = psi.is_special()
                && psi.fix().is_zero()
                && brute_bireflectional(&psi, so)?.is_none()
                && !is_bireflectional_so(&psi)?.is_bireflectional();
            self.rec.check("full-path-witness", ok, psi.mat(), || "full-path element is bireflectional".into());
        }
        Ok(())
    }

    fn centralizer_checks(&mut self, o: &GroupTable, reps: &[usize]) -> Result<()> {
        let sp = self.sp;
        let char2 = sp.field().is_char2();
        for &r in reps {
            let phi = o.map(r);
            let d = ortho_indecomposable_summands(&phi)?;
            self.rep_parts.extend(d.parts.iter().cloned());
            let fixfree = phi.fix().is_zero();
            let unipotent_all_1e = d.parts.iter().filter(|p| p.label.unipotent).all(|p| p.label.kind == TypeKind::Type1e);
            let qualifies = if char2 { fixfree || unipotent_all_1e } else { d.parts.iter().all(|p| p.dim() % 2 == 0) };
            if !qualifies {
                continue;
            }
            let cent = brute_centralizer(&phi, o)?;
            let bad = cent.iter().find(|&&c| !o.special_mask()[c]);
            self.rec.check("centralizer-special", bad.is_none(), phi.mat(), || {
                format!("non-special centralizing element {:?}", bad.map(|&c| o.element(c).codes()))
            });
            if char2 && fixfree {
                for &c in &cent {
                    let xi = o.map(c);
                    let dx = ortho_indecomposable_summands(&xi)?;
                    let ok = dx.parts.iter().filter(|p| p.label.unipotent).all(|p| p.label.kind.is_type1());
                    self.rec.check("fixfree-centralizer-summands", ok, phi.mat(), || {
                        format!("centralizing element {:?} has a unipotent summand of type 2", xi.mat().codes())
                    });
                }
            }
            if char2 && is_unipotent(phi.mat()) && unipotent_all_1e {
                let inv = phi.inverse();
                for a in 0..o.len() {
                    let am = o.element(a);
                    if phi.mat().mul(am) == am.mul(inv.mat()) {
                        self.rec.check("inverters-special", o.special_mask()[a], phi.mat(), || {
                            format!("non-special inverter {:?}", am.codes())
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Summands admitting inverting involutions of both fixed-space parities.
fn both_parities(p: &Summand) -> bool {
    p.dim() % 2 == 1
        || (p.map.space().field().is_char2()
            && p.label.unipotent
            && matches!(p.label.kind, TypeKind::Type1o | TypeKind::Type2))
}
