//! JSON front end for the `bireflect` binary.
//!
//! Every input is a space, optionally with a matrix:
//!
//! ```json
//! {"field": {"p": 2, "k": 1}, "dim": 2, "gram_upper": [[0, 1], [0, 0]], "matrix": [[0, 1], [1, 0]]}
//! ```
//!
//! Field elements are integer codes `Σ c_i p^i` of their coordinates over
//! the prime field. Exit codes: 0 success, 1 negative verdict, 2 invalid
//! input, 3 resource or internal failure.

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{is_irreducible, FiniteField, Poly};
use crate::linalg::Mat;
use crate::oracle::{verify_with_budget, GroupKind, GroupTable, VerifyReport, DEFAULT_BUDGET};
use crate::ortho::{full_path_element, OrthMap};
use crate::quadspace::QuadSpace;
use crate::structure::{
    make_hyperbolic_type1, make_type1_fixture, make_type3_fixture, ortho_indecomposable_summands,
    realize_cyclic_with, unipotent_poly,
};
use crate::witness::{inverting_involution, is_bireflectional_so, square_root_type1o, FixDim, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_FAILURE: i32 = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    #[serde(default = "one")]
    pub k: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

fn one() -> u32 {
    1
}

/// The common input and output record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceSpec {
    pub field: FieldSpec,
    pub dim: usize,
    pub gram_upper: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<u32>>>,
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn check_shape(name: &str, rows: &[Vec<u32>], n: usize) -> Result<()> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(parse_err(format!("{name} must be {n}x{n}")));
    }
    Ok(())
}

impl FieldSpec {
    pub fn field(&self) -> Result<FiniteField> {
        match &self.modulus {
            Some(m) => {
                if m.len() as u32 != self.k + 1 {
                    return Err(parse_err("modulus degree differs from k"));
                }
                FiniteField::with_modulus(self.p, m.clone())
            }
            None => FiniteField::new(self.p, self.k),
        }
    }

    pub fn of(f: FiniteField) -> Self {
        let modulus = (f.degree() > 1).then(|| f.modulus().to_vec());
        FieldSpec { p: f.characteristic(), k: f.degree(), modulus }
    }
}

impl SpaceSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))
    }

    pub fn space(&self) -> Result<QuadSpace> {
        let f = self.field.field()?;
        check_shape("gram_upper", &self.gram_upper, self.dim)?;
        QuadSpace::new(Mat::from_codes(f, &self.gram_upper)?)
    }

    pub fn map(&self) -> Result<OrthMap> {
        let sp = self.space()?;
        let rows = self.matrix.as_ref().ok_or_else(|| parse_err("input has no matrix"))?;
        check_shape("matrix", rows, self.dim)?;
        OrthMap::new(sp.clone(), Mat::from_codes(sp.field(), rows)?)
    }

    pub fn of_space(sp: &QuadSpace) -> Self {
        SpaceSpec { field: FieldSpec::of(sp.field()), dim: sp.dim(), gram_upper: sp.gram_upper().codes(), matrix: None }
    }

    pub fn of_map(phi: &OrthMap) -> Self {
        SpaceSpec { matrix: Some(phi.mat().codes()), ..Self::of_space(phi.space()) }
    }
}

#[derive(Parser, Debug)]
#[command(name = "bireflect", about = "Involution products in special orthogonal groups over finite fields")]
pub struct Cli {
    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// SO membership, summand types and verdicts for a matrix.
    Classify {
        /// JSON file, inline JSON, or `-` for standard input.
        input: String,
    },
    /// Explicit witnesses: an involution pair (default), a square root, or
    /// an inverting involution.
    Witness {
        input: String,
        #[arg(long, conflicts_with_all = ["square_root", "inverting_involution"])]
        pair: bool,
        #[arg(long, conflicts_with = "inverting_involution")]
        square_root: bool,
        #[arg(long, value_enum)]
        inverting_involution: Option<FixArg>,
    },
    /// Exhaustive verification over all spaces up to a dimension.
    Verify {
        #[arg(long, value_delimiter = ',', default_values_t = [2u32, 3, 4, 5])]
        fields: Vec<u32>,
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// All elements of O or SO of a space.
    Enumerate {
        input: String,
        #[arg(long, value_enum, default_value_t = GroupArg::So)]
        group: GroupArg,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// A generated space and matrix.
    Fixture {
        #[arg(long, value_enum)]
        kind: FixtureKind,
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Dimension for `full-path` and `cyclic-unipotent`.
        #[arg(long)]
        dim: Option<usize>,
        /// Use the non-hyperbolic (or non-square determinant) class.
        #[arg(long)]
        minus: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FixArg {
    Half,
    #[value(name = "half+1")]
    HalfPlusOne,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GroupArg {
    O,
    So,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FixtureKind {
    /// ψ² for cyclic unipotent ψ, dimension 4m+2, not hyperbolic.
    Type1o,
    /// diag(J, J⁺) with a Jordan block of odd size 2m+1.
    Type1oHyperbolic,
    /// diag(J, J⁺) with a Jordan block of size 2m.
    Type1e,
    /// diag(C, C⁺) for the companion of p^m with p ≠ p*.
    Type3,
    /// A product of reflections with Bahn = V.
    FullPath,
    /// A cyclic unipotent map.
    CyclicUnipotent,
}

/// Outcome of one command: a JSON document and an exit code.
pub struct Outcome {
    pub code: i32,
    pub body: Value,
}

impl Outcome {
    fn ok(body: Value) -> Self {
        Outcome { code: EXIT_OK, body }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::Parse(_) => EXIT_INVALID,
        Error::NoSquareRoot(_) => EXIT_NEGATIVE,
        Error::WitnessNotFound(_) | Error::Resource(_) | Error::Internal(_) => EXIT_FAILURE,
    }
}

fn error_tag(e: &Error) -> &'static str {
    match e {
        Error::Domain(_) => "DomainError",
        Error::NoSquareRoot(_) => "NoSquareRoot",
        Error::WitnessNotFound(_) => "WitnessNotFound",
        Error::Resource(_) => "ResourceError",
        Error::Internal(_) => "InternalError",
        Error::Parse(_) => "ParseError",
    }
}

fn read_input(input: &str) -> Result<String> {
    let trimmed = input.trim_start();
    if trimmed.starts_with('{') {
        return Ok(input.to_string());
    }
    if input == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| parse_err(e.to_string()))?;
        return Ok(s);
    }
    std::fs::read_to_string(input).map_err(|e| parse_err(format!("{input}: {e}")))
}

fn load(input: &str) -> Result<SpaceSpec> {
    SpaceSpec::parse(&read_input(input)?)
}

/// Parses a matrix back from its emitted codes.
fn reparse(sp: &QuadSpace, codes: &[Vec<u32>]) -> Result<OrthMap> {
    OrthMap::new(sp.clone(), Mat::from_codes(sp.field(), codes)?)
        .map_err(|e| Error::Internal(format!("emitted matrix failed re-verification: {e}")))
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Bireflectional => "bireflectional",
        Verdict::NotBireflectional => "not_bireflectional",
    }
}

pub fn cmd_classify(spec: &SpaceSpec) -> Result<Outcome> {
    let phi = spec.map()?;
    let d = ortho_indecomposable_summands(&phi)?;
    let summands: Vec<Value> = d
        .parts
        .iter()
        .map(|p| {
            json!({
                "dim": p.dim(),
                "type": p.label.kind.name(),
                "unipotent": p.label.unipotent,
                "elementary_divisors": p.label.divisors.iter()
                    .map(|(q, e)| json!({"poly": q.codes(), "exponents": e}))
                    .collect::<Vec<_>>(),
                "basis": p.subspace.basis().codes(),
            })
        })
        .collect();
    let mut body = json!({
        "special": phi.is_special(),
        "path_dim": phi.path_dim(),
        "min_poly": phi.min_poly().codes(),
        "summands": summands,
        "verdict": Value::Null,
        "reversible": Value::Null,
        "reason": "not-special",
    });
    if phi.is_special() {
        let r = is_bireflectional_so(&phi)?;
        body["verdict"] = json!(verdict_name(r.verdict));
        body["reversible"] = json!(r.reversible);
        body["reason"] = json!(r.reason);
    }
    Ok(Outcome::ok(body))
}

pub fn cmd_pair(spec: &SpaceSpec) -> Result<Outcome> {
    let phi = spec.map()?;
    let r = is_bireflectional_so(&phi)?;
    let Some((s, t)) = r.pair else {
        return Ok(Outcome {
            code: EXIT_NEGATIVE,
            body: json!({"verdict": verdict_name(r.verdict), "reason": r.reason}),
        });
    };
    let (sc, tc) = (s.mat().codes(), t.mat().codes());
    let (s2, t2) = (reparse(phi.space(), &sc)?, reparse(phi.space(), &tc)?);
    let valid = s2.is_involution()
        && t2.is_involution()
        && s2.is_special()
        && t2.is_special()
        && s2.mat().mul(t2.mat()) == *phi.mat();
    if !valid {
        return Err(Error::Internal("emitted pair failed re-verification".into()));
    }
    Ok(Outcome::ok(json!({
        "verdict": verdict_name(r.verdict),
        "reason": r.reason,
        "sigma": sc,
        "tau": tc,
    })))
}

pub fn cmd_square_root(spec: &SpaceSpec) -> Result<Outcome> {
    let phi = spec.map()?;
    let psi = match square_root_type1o(&phi) {
        Ok(psi) => psi,
        Err(e @ Error::NoSquareRoot(_)) => {
            return Ok(Outcome { code: EXIT_NEGATIVE, body: json!({"error": error_tag(&e), "reason": e.to_string()}) })
        }
        Err(e) => return Err(e),
    };
    let codes = psi.mat().codes();
    let back = reparse(phi.space(), &codes)?;
    if back.mat().mul(back.mat()) != *phi.mat() {
        return Err(Error::Internal("emitted square root failed re-verification".into()));
    }
    Ok(Outcome::ok(json!({"square_root": codes, "special": back.is_special()})))
}

pub fn cmd_inverting_involution(spec: &SpaceSpec, want: FixDim) -> Result<Outcome> {
    let phi = spec.map()?;
    let sigma = inverting_involution(&phi, want)?;
    let codes = sigma.mat().codes();
    let back = reparse(phi.space(), &codes)?;
    let inverts = back.mat().mul(phi.mat()).mul(back.mat()) == *phi.inverse().mat();
    if !back.is_involution() || !inverts || back.fix().dim() != want.target(phi.dim()) {
        return Err(Error::Internal("emitted involution failed re-verification".into()));
    }
    Ok(Outcome::ok(json!({"involution": codes, "fix_dim": back.fix().dim(), "special": back.is_special()})))
}

/// Spaces of dimension `1..=max_dim` over each field, both isometry classes;
/// odd dimensions only in odd characteristic.
pub fn verification_spaces(fields: &[u32], max_dim: usize) -> Result<Vec<QuadSpace>> {
    let mut out = Vec::new();
    for &q in fields {
        let f = FiniteField::of_order(q)?;
        for n in 1..=max_dim {
            if n % 2 == 1 && f.is_char2() {
                continue;
            }
            for plus in [true, false] {
                out.push(QuadSpace::standard(f, n, plus)?);
            }
        }
    }
    Ok(out)
}

pub fn cmd_verify(fields: &[u32], max_dim: usize, budget: u64) -> Result<Outcome> {
    let spaces = verification_spaces(fields, max_dim)?;
    for sp in &spaces {
        let order = crate::oracle::orthogonal_group_order(sp);
        if sp.dim() > crate::oracle::MAX_DIM || order > budget as u128 {
            return Err(Error::Resource(format!(
                "O of dimension {} over GF({}) has {order} elements, budget is {budget}",
                sp.dim(),
                sp.field().order()
            )));
        }
    }
    let reports: Vec<VerifyReport> = spaces.iter().map(|sp| verify_with_budget(sp, budget)).collect::<Result<_>>()?;
    let all_pass = reports.iter().all(|r| r.all_pass());
    let body = json!({"all_pass": all_pass, "spaces": reports});
    Ok(Outcome { code: if all_pass { EXIT_OK } else { EXIT_NEGATIVE }, body })
}

pub fn cmd_enumerate(spec: &SpaceSpec, group: GroupArg, budget: u64) -> Result<Outcome> {
    let sp = spec.space()?;
    let kind = match group {
        GroupArg::O => GroupKind::O,
        GroupArg::So => GroupKind::SO,
    };
    let g = GroupTable::enumerate(&sp, kind, budget)?;
    let elements: Vec<Vec<Vec<u32>>> = g.elements().iter().map(|m| m.codes()).collect();
    Ok(Outcome::ok(json!({
        "group": if kind == GroupKind::O { "O" } else { "SO" },
        "order": g.len(),
        "space": SpaceSpec::of_space(&sp),
        "elements": elements,
    })))
}

/// Smallest monic irreducible `p` of degree ≤ 3 with `p(0) ≠ 0` and
/// `p ≠ p*`.
fn non_reciprocal_irreducible(f: FiniteField) -> Option<Poly> {
    let q = f.order();
    for deg in 1..=3u32 {
        for low in 0..q.pow(deg) {
            let mut codes: Vec<u32> = (0..deg).map(|i| (low / q.pow(i)) % q).collect();
            codes.push(1);
            let p = Poly::from_codes(f, &codes).ok()?;
            if codes[0] != 0 && is_irreducible(&p) && p.reciprocal().ok()? != p {
                return Some(p);
            }
        }
    }
    None
}

pub fn cmd_fixture(kind: FixtureKind, q: u32, m: usize, dim: Option<usize>, minus: bool, seed: u64) -> Result<Outcome> {
    let f = FiniteField::of_order(q)?;
    let unsupported = |msg: &str| Err(Error::Domain(msg.to_string()));
    let phi = match kind {
        FixtureKind::Type1o | FixtureKind::Type1e | FixtureKind::Type1oHyperbolic if !f.is_char2() => {
            return unsupported("type-1 fixtures are generated in characteristic 2");
        }
        FixtureKind::Type1o => make_type1_fixture(f, m, false)?,
        FixtureKind::Type1oHyperbolic => make_hyperbolic_type1(f, 2 * m + 1)?,
        FixtureKind::Type1e if m == 0 => return unsupported("type 1e needs m ≥ 1"),
        FixtureKind::Type1e => make_type1_fixture(f, m, true)?,
        FixtureKind::Type3 => {
            let p = non_reciprocal_irreducible(f).ok_or_else(|| Error::Domain("no suitable polynomial".into()))?;
            make_type3_fixture(&p, m.max(1))?
        }
        FixtureKind::FullPath => {
            let n = dim.ok_or_else(|| Error::Domain("--dim is required".into()))?;
            full_path_element(&QuadSpace::standard(f, n, !minus)?)?
        }
        FixtureKind::CyclicUnipotent => {
            let n = dim.ok_or_else(|| Error::Domain("--dim is required".into()))?;
            let sp = QuadSpace::standard(f, n, !minus)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            realize_cyclic_with(&sp, &unipotent_poly(f, n), Some(&mut rng)).map_err(|e| match e {
                Error::WitnessNotFound(msg) => Error::Domain(msg),
                other => other,
            })?
        }
    };
    let spec = SpaceSpec::of_map(&phi);
    if spec.map()? != phi {
        return Err(Error::Internal("fixture failed to round-trip".into()));
    }
    Ok(Outcome::ok(serde_json::to_value(spec).expect("serializable")))
}

fn dispatch(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Classify { input } => cmd_classify(&load(&input)?),
        Command::Witness { input, square_root, inverting_involution, .. } => {
            let spec = load(&input)?;
            match (square_root, inverting_involution) {
                (true, _) => cmd_square_root(&spec),
                (false, Some(FixArg::Half)) => cmd_inverting_involution(&spec, FixDim::Half),
                (false, Some(FixArg::HalfPlusOne)) => cmd_inverting_involution(&spec, FixDim::HalfPlusOne),
                (false, None) => cmd_pair(&spec),
            }
        }
        Command::Verify { fields, max_dim, budget } => cmd_verify(&fields, max_dim, budget),
        Command::Enumerate { input, group, budget } => cmd_enumerate(&load(&input)?, group, budget),
        Command::Fixture { kind, q, m, dim, minus } => cmd_fixture(kind, q, m, dim, minus, cli.seed),
    }
}

/// Runs one invocation, writing JSON to `out` and diagnostics to `err`;
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    let (code, body) = match dispatch(cli) {
        Ok(o) => (o.code, o.body),
        Err(e) => {
            let _ = writeln!(err, "bireflect: {e}");
            (exit_code(&e), json!({"error": error_tag(&e), "message": e.to_string()}))
        }
    };
    let text = serde_json::to_string_pretty(&body).expect("serializable");
    let _ = writeln!(out, "{text}");
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn invoke(args: &[&str]) -> (i32, Value) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["bireflect"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        let body = serde_json::from_slice(&out).unwrap_or(Value::Null);
        (code, body)
    }

    const SWAP: &str = r#"{"field":{"p":2},"dim":2,"gram_upper":[[0,1],[0,0]],"matrix":[[0,1],[1,0]]}"#;
    const ID_H2: &str = r#"{"field":{"p":2},"dim":2,"gram_upper":[[0,1],[0,0]],"matrix":[[1,0],[0,1]]}"#;
    const MINUS_H3: &str = r#"{"field":{"p":3},"dim":2,"gram_upper":[[0,1],[0,0]],"matrix":[[2,0],[0,2]]}"#;

    #[test]
    fn classify_swap() {
        let (code, body) = invoke(&["classify", SWAP]);
        assert_eq!(code, 0);
        assert_eq!(body["special"], json!(false));
    }

    #[test]
    fn defective_input_is_rejected() {
        let bad = r#"{"field":{"p":2},"dim":2,"gram_upper":[[1,0],[0,1]],"matrix":[[1,0],[0,1]]}"#;
        assert_eq!(invoke(&["classify", bad]).0, 2);
        assert_eq!(invoke(&["classify", "{not json"]).0, 2);
        let skew = r#"{"field":{"p":2},"dim":2,"gram_upper":[[0,1],[0,0]],"matrix":[[1,1],[0,1]]}"#;
        assert_eq!(invoke(&["classify", skew]).0, 2);
    }

    #[test]
    fn witnesses() {
        let (code, body) = invoke(&["witness", ID_H2, "--square-root"]);
        assert_eq!(code, 0);
        assert_eq!(body["square_root"], json!([[0, 1], [1, 0]]));
        let (code, body) = invoke(&["witness", MINUS_H3, "--pair"]);
        assert_eq!(code, 0);
        assert_eq!(body["sigma"], json!([[2, 0], [0, 2]]));
        assert_eq!(body["tau"], json!([[1, 0], [0, 1]]));
        let (code, body) = invoke(&["witness", ID_H2, "--inverting-involution", "half"]);
        assert_eq!((code, body["fix_dim"].clone()), (0, json!(1)));
    }

    #[test]
    fn type1e_square_root_is_negative() {
        let (code, fx) = invoke(&["fixture", "--kind", "type1e", "--q", "2", "--m", "1"]);
        assert_eq!(code, 0);
        let (code, body) = invoke(&["witness", &fx.to_string(), "--square-root"]);
        assert_eq!(code, 1);
        assert_eq!(body["error"], json!("NoSquareRoot"));
    }

    #[test]
    fn fixture_round_trip() {
        let (code, fx) = invoke(&["fixture", "--kind", "type1o", "--q", "2", "--m", "1"]);
        assert_eq!(code, 0);
        assert_eq!(fx["dim"], json!(6));
        let (code, body) = invoke(&["classify", &fx.to_string()]);
        assert_eq!(code, 0);
        assert_eq!(body["summands"].as_array().unwrap().len(), 1);
        assert_eq!(body["summands"][0]["type"], json!("1o"));
        assert_eq!(invoke(&["fixture", "--kind", "type1o", "--q", "3"]).0, 2);
        assert_eq!(invoke(&["fixture", "--kind", "type1e", "--m", "0"]).0, 2);
    }

    #[test]
    fn full_path_is_negative() {
        let (_, fx) = invoke(&["fixture", "--kind", "full-path", "--dim", "6"]);
        let (code, body) = invoke(&["classify", &fx.to_string()]);
        assert_eq!(code, 0);
        assert_eq!(body["verdict"], json!("not_bireflectional"));
        assert_eq!(body["reason"], json!("no-type1o-or-cyclic-unipotent-summand"));
        assert_eq!(invoke(&["witness", &fx.to_string(), "--pair"]).0, 1);
    }

    #[test]
    fn enumerate_and_budget() {
        let h3 = r#"{"field":{"p":3},"dim":2,"gram_upper":[[0,1],[0,0]]}"#;
        let (code, body) = invoke(&["enumerate", h3]);
        assert_eq!(code, 0);
        assert_eq!(body["elements"].as_array().unwrap().len(), 2);
        assert_eq!(invoke(&["verify", "--budget", "10"]).0, 3);
        let (code, body) = invoke(&["verify", "--fields", "2,3", "--max-dim", "2"]);
        assert_eq!(code, 0);
        assert_eq!(body["all_pass"], json!(true));
    }
}
