//! JSON job specifications: named covers, lattices, sheaves, tori and
//! motives plus a command list, validated and lowered to core objects.
//!
//! [JobSpec] [CommandSpec] [Overrides] [BuiltJob] [parse_jobspec] [build_job]
//!
//! Polynomials are written either as strings in t ("t^3 - t", "(t-1)/(t+1)";
//! integer coefficients are mapped through Z -> F_q) or as arrays of
//! field-element indices, least degree first.  Big integers and rationals
//! travel as strings so nothing is squeezed through a float.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num::BigInt;
use serde::{Deserialize, Serialize};

use weilq_core::exact::IntMat;
use weilq_core::function_field::{field, AbelianCover, Fq, FqPoly, FqRatFn, KummerFactor, Place};
use weilq_core::galois::{FrobModule, GaloisLattice};
use weilq_core::lfun::{LOptions, SheafAtom, VirtualSheaf};
use weilq_core::motives::OneMotive;
use weilq_core::tori::{ClassData, Torus, TorusFamily};

pub const SCHEMA_VERSION: u32 = 1;

/// Errors before any command runs; these map to process exit code 2.
#[derive(Debug)]
pub enum SpecError {
    Parse(String),
    Validation(String),
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::Parse(m) => write!(f, "parse error: {}", m),
            SpecError::Validation(m) => write!(f, "validation error: {}", m),
        }
    }
}

impl std::error::Error for SpecError {}

impl From<weilq_core::Error> for SpecError {
    fn from(e: weilq_core::Error) -> Self {
        // core Validation already carries the bare message; other variants
        // keep their own invariant-naming prefixes
        match e {
            weilq_core::Error::Validation(m) => SpecError::Validation(m),
            other => SpecError::Validation(other.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, SpecError>;

fn default_schema() -> u32 {
    SCHEMA_VERSION
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    #[serde(default = "default_schema")]
    pub schema: u32,
    pub q: u32,
    #[serde(default)]
    pub covers: BTreeMap<String, CoverSpec>,
    #[serde(default)]
    pub lattices: BTreeMap<String, LatticeSpec>,
    #[serde(default)]
    pub sheaves: BTreeMap<String, SheafSpec>,
    #[serde(default)]
    pub tori: BTreeMap<String, TorusSpec>,
    #[serde(default)]
    pub motives: BTreeMap<String, MotiveSpec>,
    #[serde(default)]
    pub commands: Vec<CommandSpec>,
    #[serde(default)]
    pub overrides: Overrides,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Overrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_depth: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverSpec {
    #[serde(default = "default_one")]
    pub constant_degree: u32,
    #[serde(default)]
    pub kummer: Vec<KummerSpec>,
}

fn default_one() -> u32 {
    1
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KummerSpec {
    pub m: u32,
    pub f: PolyInput,
}

/// A polynomial or rational function, as text in t or as an array of
/// field-element indices (least degree first).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolyInput {
    Text(String),
    Coeffs(Vec<u8>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum LatticeSpec {
    /// Z^d with the trivial action of the named cover's group.
    Split { cover: String, d: usize },
    /// The regular representation Z[G] of the named cover's group.
    Induced { cover: String },
    /// The norm-one quotient lattice of the named cover's group.
    NormOne { cover: String },
    /// The dual (inverse-transpose action) of another named lattice.
    Dual { of: String },
    /// Direct sum of named lattices over a common group.
    Product { factors: Vec<String> },
    /// Explicit generator matrices (row-major, one per cover generator).
    Custom { cover: String, action: Vec<Vec<Vec<i64>>> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SheafSpec {
    pub terms: Vec<TermSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    #[serde(default = "default_mult")]
    pub mult: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub push: Option<PushSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sky: Option<SkySpec>,
}

fn default_mult() -> i64 {
    1
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PushSpec {
    pub cover: String,
    pub lattice: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SkySpec {
    pub place: PlaceSpec,
    #[serde(default)]
    pub free_rank: usize,
    /// Invariant factors >= 2 in divisibility order.
    #[serde(default)]
    pub torsion: Vec<u64>,
    /// Frobenius on the free_rank + torsion generators, row-major.
    pub frob: Vec<Vec<i64>>,
}

/// "infinity", a monic irreducible as text/coefficients, or {deg, code}.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PlaceSpec {
    Named(String),
    Coded { deg: u32, code: u64 },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusSpec {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_data: Option<ClassDataSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassDataSpec {
    pub cl_tor: IntInput,
    pub disc: IntInput,
    pub units: IntInput,
}

/// Integers as JSON numbers or as decimal strings (for big values).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntInput {
    Num(i64),
    Text(String),
}

impl IntInput {
    fn to_bigint(&self) -> Result<BigInt> {
        match self {
            IntInput::Num(n) => Ok(BigInt::from(*n)),
            IntInput::Text(s) => BigInt::from_str(s.trim())
                .map_err(|_| SpecError::Parse(format!("not an integer: {:?}", s))),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MotiveSpec {
    pub x_rank: usize,
    pub torus_rank: usize,
    /// map[i][j]: the j-th coordinate of the image of the i-th generator,
    /// as "numerator/denominator" text in F_q[t].
    pub map: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommandSpec {
    pub target: String,
    pub op: String,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub options: serde_json::Value,
}

/// Parse and structurally validate a JSON job specification.
pub fn parse_jobspec(text: &str) -> Result<JobSpec> {
    let spec: JobSpec = serde_json::from_str(text)
        .map_err(|e| SpecError::Parse(format!("jobspec: {}", e)))?;
    if spec.schema > SCHEMA_VERSION {
        return Err(SpecError::Parse(format!(
            "schema version {} is newer than supported version {}",
            spec.schema, SCHEMA_VERSION
        )));
    }
    Ok(spec)
}

/// A torus together with class data supplied in the jobspec (for families
/// without a closed form).
#[derive(Clone, Debug)]
pub struct BuiltTorus {
    pub torus: Torus,
    pub supplied: Option<ClassData>,
}

/// Every named object constructed and invariant-checked, plus the command
/// list and effective options.
#[derive(Debug)]
pub struct BuiltJob {
    pub q: u32,
    pub covers: BTreeMap<String, AbelianCover>,
    pub lattices: BTreeMap<String, GaloisLattice>,
    pub sheaves: BTreeMap<String, VirtualSheaf>,
    pub tori: BTreeMap<String, BuiltTorus>,
    pub motives: BTreeMap<String, OneMotive>,
    pub commands: Vec<CommandSpec>,
    pub opts: LOptions,
    /// Definitions echoed back into reports, keyed "kind:name".
    pub echo: BTreeMap<String, serde_json::Value>,
}

// ---------------------------------------------------------------------------
// polynomial text parsing

fn poly_from_text(fq: &Fq, text: &str) -> Result<FqPoly> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut body = compact.as_str();
    if body.starts_with('(') && body.ends_with(')') {
        body = &body[1..body.len() - 1];
    }
    if body.is_empty() || !body.is_ascii() {
        return Err(SpecError::Parse(format!("not a polynomial in t: {:?}", text)));
    }
    let bytes = body.as_bytes();
    let bad = || SpecError::Parse(format!("not a polynomial in t: {:?}", text));
    let mut coeffs: Vec<i64> = Vec::new();
    let mut i = 0usize;
    while i < bytes.len() {
        let mut sign = 1i64;
        if bytes[i] == b'+' {
            i += 1;
        } else if bytes[i] == b'-' {
            sign = -1;
            i += 1;
        }
        let digits_start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let coef: Option<i64> = if i > digits_start {
            Some(body[digits_start..i].parse().map_err(|_| bad())?)
        } else {
            None
        };
        if i < bytes.len() && bytes[i] == b'*' {
            i += 1;
        }
        let exp: usize = if i < bytes.len() && bytes[i] == b't' {
            i += 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let estart = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i == estart {
                    return Err(bad());
                }
                body[estart..i].parse().map_err(|_| bad())?
            } else {
                1
            }
        } else if coef.is_some() {
            0
        } else {
            return Err(bad());
        };
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, 0);
        }
        coeffs[exp] += sign * coef.unwrap_or(1);
    }
    let reduced: Vec<u8> = coeffs.iter().map(|&c| fq.from_int(c)).collect();
    Ok(FqPoly::new(reduced))
}

fn poly_from_input(fq: &Fq, input: &PolyInput) -> Result<FqPoly> {
    match input {
        PolyInput::Text(s) => {
            if s.contains('/') {
                return Err(SpecError::Parse(format!("expected a polynomial, got {:?}", s)));
            }
            poly_from_text(fq, s)
        }
        PolyInput::Coeffs(c) => {
            if c.iter().any(|&x| x as u32 >= fq.q()) {
                return Err(SpecError::Parse(format!(
                    "coefficient index out of range for F_{}",
                    fq.q()
                )));
            }
            Ok(FqPoly::new(c.clone()))
        }
    }
}

fn ratfn_from_text(fq: &Fq, text: &str) -> Result<FqRatFn> {
    let (num_text, den_text) = match text.find('/') {
        Some(pos) => (&text[..pos], Some(&text[pos + 1..])),
        None => (text, None),
    };
    let num = poly_from_text(fq, num_text)?;
    let den = match den_text {
        Some(d) => poly_from_text(fq, d)?,
        None => FqPoly::one(),
    };
    if num.is_zero() || den.is_zero() {
        return Err(SpecError::Validation(format!("rational function must be nonzero: {:?}", text)));
    }
    Ok(FqRatFn::new(num, den))
}

fn ratfn_from_input(fq: &Fq, input: &PolyInput) -> Result<FqRatFn> {
    match input {
        PolyInput::Text(s) => ratfn_from_text(fq, s),
        PolyInput::Coeffs(_) => {
            let p = poly_from_input(fq, input)?;
            if p.is_zero() {
                return Err(SpecError::Validation("rational function must be nonzero".into()));
            }
            Ok(FqRatFn::from_poly(p))
        }
    }
}

fn place_from_spec(q: u32, fq: &Fq, spec: &PlaceSpec) -> Result<Place> {
    match spec {
        PlaceSpec::Named(s) if s == "infinity" => Ok(Place::Infinity),
        PlaceSpec::Named(s) => {
            let p = poly_from_text(fq, s)?;
            if !p.is_monic() || p.deg() == Some(0) {
                return Err(SpecError::Validation(format!(
                    "place {:?} is not a monic polynomial of positive degree",
                    s
                )));
            }
            if p.factor_monic(fq) != vec![(p.clone(), 1)] {
                return Err(SpecError::Validation(format!("place {:?} is not irreducible", s)));
            }
            Ok(Place::finite(q, &p))
        }
        PlaceSpec::Coded { deg, code } => {
            let p = FqPoly::decode_monic(q, *deg as usize, *code);
            if p.factor_monic(fq) != vec![(p.clone(), 1)] {
                return Err(SpecError::Validation(format!(
                    "code {} of degree {} is not irreducible",
                    code, deg
                )));
            }
            Ok(Place::Finite { deg: *deg, code: *code })
        }
    }
}

// ---------------------------------------------------------------------------
// lowering

fn build_cover(q: u32, fq: &Fq, spec: &CoverSpec) -> Result<AbelianCover> {
    let mut factors = Vec::new();
    for k in &spec.kummer {
        factors.push(KummerFactor { m: k.m, f: ratfn_from_input(fq, &k.f)? });
    }
    Ok(AbelianCover::new(q, spec.constant_degree, factors)?)
}

fn resolve_lattice(
    name: &str,
    specs: &BTreeMap<String, LatticeSpec>,
    covers: &BTreeMap<String, AbelianCover>,
    done: &mut BTreeMap<String, GaloisLattice>,
    seen: &mut BTreeSet<String>,
) -> Result<GaloisLattice> {
    if let Some(l) = done.get(name) {
        return Ok(l.clone());
    }
    if !seen.insert(name.to_string()) {
        return Err(SpecError::Validation(format!("lattice {:?} references itself", name)));
    }
    let spec = specs
        .get(name)
        .ok_or_else(|| SpecError::Validation(format!("unknown lattice {:?}", name)))?;
    let cover_of = |cname: &str| -> Result<&AbelianCover> {
        covers
            .get(cname)
            .ok_or_else(|| SpecError::Validation(format!("unknown cover {:?}", cname)))
    };
    let lat = match spec {
        LatticeSpec::Split { cover, d } => GaloisLattice::split(cover_of(cover)?.orders(), *d),
        LatticeSpec::Induced { cover } => GaloisLattice::induced(cover_of(cover)?.orders()),
        LatticeSpec::NormOne { cover } => GaloisLattice::norm_one(cover_of(cover)?.orders()),
        LatticeSpec::Dual { of } => resolve_lattice(of, specs, covers, done, seen)?.dual(),
        LatticeSpec::Product { factors } => {
            let mut parts = factors.iter();
            let first = parts
                .next()
                .ok_or_else(|| SpecError::Validation("product needs at least one factor".into()))?;
            let mut acc = resolve_lattice(first, specs, covers, done, seen)?;
            for f in parts {
                let next = resolve_lattice(f, specs, covers, done, seen)?;
                acc = GaloisLattice::product(&acc, &next)?;
            }
            acc
        }
        LatticeSpec::Custom { cover, action } => {
            let orders = cover_of(cover)?.orders();
            let rank = action.first().map(|m| m.len()).unwrap_or(0);
            let mats: Vec<IntMat> = action.iter().map(|m| IntMat::from_rows(m)).collect();
            GaloisLattice::new(orders, rank, mats)?
        }
    };
    done.insert(name.to_string(), lat.clone());
    Ok(lat)
}

fn build_sheaf(
    q: u32,
    fq: &Fq,
    spec: &SheafSpec,
    covers: &BTreeMap<String, AbelianCover>,
    lattices: &BTreeMap<String, GaloisLattice>,
) -> Result<VirtualSheaf> {
    let mut terms = Vec::new();
    for t in &spec.terms {
        let atom = match (&t.push, &t.sky) {
            (Some(p), None) => {
                let cover = covers
                    .get(&p.cover)
                    .ok_or_else(|| SpecError::Validation(format!("unknown cover {:?}", p.cover)))?;
                let lattice = lattices.get(&p.lattice).ok_or_else(|| {
                    SpecError::Validation(format!("unknown lattice {:?}", p.lattice))
                })?;
                SheafAtom::pushforward(cover.clone(), lattice.clone())?
            }
            (None, Some(s)) => {
                let place = place_from_spec(q, fq, &s.place)?;
                let torsion: Vec<BigInt> = s.torsion.iter().map(|&d| BigInt::from(d)).collect();
                let n = s.free_rank + torsion.len();
                if s.frob.len() != n || s.frob.iter().any(|row| row.len() != n) {
                    return Err(SpecError::Validation(
                        "frobenius matrix shape does not match free_rank + torsion".into(),
                    ));
                }
                let module = FrobModule::new(s.free_rank, torsion, IntMat::from_rows(&s.frob))?;
                SheafAtom::skyscraper(place, module)?
            }
            _ => {
                return Err(SpecError::Validation(
                    "each term needs exactly one of push or sky".into(),
                ))
            }
        };
        terms.push((t.mult, atom));
    }
    Ok(VirtualSheaf::new(terms))
}

fn resolve_torus(
    name: &str,
    q: u32,
    specs: &BTreeMap<String, TorusSpec>,
    covers: &BTreeMap<String, AbelianCover>,
    lattices: &BTreeMap<String, GaloisLattice>,
    done: &mut BTreeMap<String, BuiltTorus>,
    seen: &mut BTreeSet<String>,
) -> Result<BuiltTorus> {
    if let Some(t) = done.get(name) {
        return Ok(t.clone());
    }
    if !seen.insert(name.to_string()) {
        return Err(SpecError::Validation(format!("torus {:?} references itself", name)));
    }
    let spec = specs
        .get(name)
        .ok_or_else(|| SpecError::Validation(format!("unknown torus {:?}", name)))?;
    let need = |opt: Option<&str>, what: &str| -> Result<String> {
        opt.map(str::to_string).ok_or_else(|| {
            SpecError::Validation(format!("torus family {:?} needs {}", spec.family, what))
        })
    };
    let torus = match spec.family.as_str() {
        "split" => {
            let d = spec.d.ok_or_else(|| {
                SpecError::Validation("torus family \"split\" needs d".into())
            })?;
            Torus::split(q, d)?
        }
        "induced_constant" => {
            let n = spec.n.ok_or_else(|| {
                SpecError::Validation("torus family \"induced_constant\" needs n".into())
            })?;
            Torus::induced_constant(q, n)?
        }
        "norm_one_constant" => {
            let n = spec.n.ok_or_else(|| {
                SpecError::Validation("torus family \"norm_one_constant\" needs n".into())
            })?;
            Torus::norm_one_constant(q, n)?
        }
        "norm_one" => {
            let cname = need(spec.cover.as_deref(), "cover")?;
            let cover = covers
                .get(&cname)
                .ok_or_else(|| SpecError::Validation(format!("unknown cover {:?}", cname)))?;
            Torus::norm_one_of(cover.clone())?
        }
        "custom" => {
            let cname = need(spec.cover.as_deref(), "cover")?;
            let lname = need(spec.lattice.as_deref(), "lattice")?;
            let cover = covers
                .get(&cname)
                .ok_or_else(|| SpecError::Validation(format!("unknown cover {:?}", cname)))?;
            let lattice = lattices
                .get(&lname)
                .ok_or_else(|| SpecError::Validation(format!("unknown lattice {:?}", lname)))?;
            Torus::custom(cover.clone(), lattice.clone())?
        }
        "product" => {
            let factors = spec.factors.as_ref().ok_or_else(|| {
                SpecError::Validation("torus family \"product\" needs factors".into())
            })?;
            let mut parts = factors.iter();
            let first = parts
                .next()
                .ok_or_else(|| SpecError::Validation("product needs at least one factor".into()))?;
            let mut acc = resolve_torus(first, q, specs, covers, lattices, done, seen)?.torus;
            for f in parts {
                let next = resolve_torus(f, q, specs, covers, lattices, done, seen)?.torus;
                acc = Torus::product(&acc, &next)?;
            }
            acc
        }
        other => {
            return Err(SpecError::Validation(format!("unknown torus family {:?}", other)))
        }
    };
    let supplied = match &spec.class_data {
        None => None,
        Some(c) => Some(ClassData::supplied(
            c.cl_tor.to_bigint()?,
            c.disc.to_bigint()?,
            c.units.to_bigint()?,
        )),
    };
    let built = BuiltTorus { torus, supplied };
    done.insert(name.to_string(), built.clone());
    Ok(built)
}

fn build_motive(q: u32, fq: &Fq, spec: &MotiveSpec) -> Result<OneMotive> {
    let mut map = Vec::new();
    for row in &spec.map {
        let mut out = Vec::new();
        for entry in row {
            out.push(ratfn_from_text(fq, entry)?);
        }
        map.push(out);
    }
    Ok(OneMotive::new(q, spec.x_rank, spec.torus_rank, map)?)
}

/// Lower a parsed spec to core objects; command-line overrides win over the
/// spec's own overrides block.
pub fn build_job(
    spec: &JobSpec,
    cli_threads: Option<usize>,
    cli_max_depth: Option<usize>,
) -> Result<BuiltJob> {
    let fq = field(spec.q)?;
    let defaults = LOptions::default();
    let opts = LOptions {
        threads: cli_threads.or(spec.overrides.threads).unwrap_or(defaults.threads),
        max_depth: cli_max_depth.or(spec.overrides.max_depth).unwrap_or(defaults.max_depth),
    };

    let mut echo = BTreeMap::new();
    let mut covers = BTreeMap::new();
    for (name, c) in &spec.covers {
        covers.insert(name.clone(), build_cover(spec.q, &fq, c)?);
        echo.insert(format!("cover:{}", name), serde_json::to_value(c).unwrap());
    }
    let mut lattices = BTreeMap::new();
    for name in spec.lattices.keys() {
        let mut seen = BTreeSet::new();
        resolve_lattice(name, &spec.lattices, &covers, &mut lattices, &mut seen)?;
        echo.insert(
            format!("lattice:{}", name),
            serde_json::to_value(&spec.lattices[name]).unwrap(),
        );
    }
    let mut sheaves = BTreeMap::new();
    for (name, s) in &spec.sheaves {
        sheaves.insert(name.clone(), build_sheaf(spec.q, &fq, s, &covers, &lattices)?);
        echo.insert(format!("sheaf:{}", name), serde_json::to_value(s).unwrap());
    }
    let mut tori = BTreeMap::new();
    for name in spec.tori.keys() {
        let mut seen = BTreeSet::new();
        resolve_torus(name, spec.q, &spec.tori, &covers, &lattices, &mut tori, &mut seen)?;
        echo.insert(format!("torus:{}", name), serde_json::to_value(&spec.tori[name]).unwrap());
    }
    let mut motives = BTreeMap::new();
    for (name, m) in &spec.motives {
        motives.insert(name.clone(), build_motive(spec.q, &fq, m)?);
        echo.insert(format!("motive:{}", name), serde_json::to_value(m).unwrap());
    }

    for cmd in &spec.commands {
        let known = covers.contains_key(&cmd.target)
            || lattices.contains_key(&cmd.target)
            || sheaves.contains_key(&cmd.target)
            || tori.contains_key(&cmd.target)
            || motives.contains_key(&cmd.target);
        if !known {
            return Err(SpecError::Validation(format!("unknown target {:?}", cmd.target)));
        }
    }

    Ok(BuiltJob {
        q: spec.q,
        covers,
        lattices,
        sheaves,
        tori,
        motives,
        commands: spec.commands.clone(),
        opts,
        echo,
    })
}

/// Families the torus spec accepts, used by documentation and diagnostics.
pub fn family_label(f: &TorusFamily) -> String {
    match f {
        TorusFamily::Split(d) => format!("split({})", d),
        TorusFamily::Induced => "induced".into(),
        TorusFamily::NormOne => "norm_one".into(),
        TorusFamily::Product(a, b) => format!("{} x {}", family_label(a), family_label(b)),
        TorusFamily::Custom => "custom".into(),
    }
}
