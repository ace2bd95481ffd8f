//! JSON documents for complexes, specs and certificates.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize, Serializer};

use crate::complex::{FreeComplex, FuvComplex, Generator, Poly};
use crate::error::{Error, Result};
use crate::localeq::{LocalMapCert, MapKind};
use crate::ring::{Lattice, Monomial, RingElem, RingId, Sign, SignedParam};
use crate::standard::{StandardSpec, Zigzag};

pub const SCHEMA_VERSION: u32 = 1;

pub(crate) fn ser_monomial_text<S: Serializer>(m: &Monomial, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&m.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorRecord {
    pub name: String,
    pub gr: [i64; 2],
}

/// A generator reference: its name, or its position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GenRef {
    Name(String),
    Index(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MonoRecord {
    Part {
        part: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        e: Option<[i64; 2]>,
    },
    Fuv {
        #[serde(rename = "U")]
        u: u32,
        #[serde(rename = "V")]
        v: u32,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryRecord {
    pub from: GenRef,
    pub to: GenRef,
    pub coeff: Vec<MonoRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ComplexDocument {
    pub schema_version: u32,
    pub ring: String,
    pub base: String,
    #[serde(rename = "dY", default)]
    pub d_y: i64,
    pub generators: Vec<GeneratorRecord>,
    pub differential: Vec<EntryRecord>,
}

/// The payload of a parsed document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Body {
    S(FreeComplex),
    Fuv(FuvComplex),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub ring: RingId,
    pub d_y: i64,
    pub body: Body,
}

impl Document {
    /// The complex over `ring`, base-changing `F2[U,V]` input.
    pub fn complex(&self) -> FreeComplex {
        match &self.body {
            Body::S(c) => c.clone(),
            Body::Fuv(f) => f.base_change(self.ring),
        }
    }
}

fn records_of(gens: &[Generator]) -> Vec<GeneratorRecord> {
    gens.iter().map(|g| GeneratorRecord { name: g.name.clone(), gr: [g.gr.0, g.gr.1] }).collect()
}

fn mono_record(m: Monomial) -> MonoRecord {
    match m {
        Monomial::One => MonoRecord::Part { part: "K".into(), e: None },
        Monomial::U(e) => MonoRecord::Part { part: "U".into(), e: Some([e.i, e.j]) },
        Monomial::V(e) => MonoRecord::Part { part: "V".into(), e: Some([e.i, e.j]) },
    }
}

pub fn complex_document(c: &FreeComplex, d_y: i64) -> ComplexDocument {
    let name = |k: usize| GenRef::Name(c.generators[k].name.clone());
    ComplexDocument {
        schema_version: SCHEMA_VERSION,
        ring: c.ring.tag().into(),
        base: "S".into(),
        d_y,
        generators: records_of(&c.generators),
        differential: c
            .diff
            .iter()
            .map(|(&(f, t), e)| EntryRecord { from: name(f), to: name(t), coeff: e.monomials().map(mono_record).collect() })
            .collect(),
    }
}

pub fn fuv_document(f: &FuvComplex, ring: RingId, d_y: i64) -> ComplexDocument {
    let name = |k: usize| GenRef::Name(f.generators[k].name.clone());
    ComplexDocument {
        schema_version: SCHEMA_VERSION,
        ring: ring.tag().into(),
        base: "FUV".into(),
        d_y,
        generators: records_of(&f.generators),
        differential: f
            .diff
            .iter()
            .map(|(&(a, b), p)| EntryRecord {
                from: name(a),
                to: name(b),
                coeff: p.iter().map(|&(u, v)| MonoRecord::Fuv { u, v }).collect(),
            })
            .collect(),
    }
}

fn resolve(r: &GenRef, names: &HashMap<&str, usize>, n: usize) -> Result<usize> {
    match r {
        GenRef::Name(s) => names.get(s.as_str()).copied().ok_or_else(|| Error::Parse(format!("unknown generator `{s}`"))),
        GenRef::Index(k) if *k < n => Ok(*k),
        GenRef::Index(k) => Err(Error::Parse(format!("generator index {k} out of range"))),
    }
}

impl ComplexDocument {
    pub fn into_document(self) -> Result<Document> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "schemaVersion {} is not supported (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        let ring: RingId = self.ring.parse()?;
        let generators: Vec<Generator> =
            self.generators.iter().map(|g| Generator::new(g.name.clone(), (g.gr[0], g.gr[1]))).collect();
        let mut names = HashMap::new();
        for (k, g) in generators.iter().enumerate() {
            if names.insert(g.name.as_str(), k).is_some() {
                return Err(Error::Parse(format!("duplicate generator name `{}`", g.name)));
            }
        }
        let n = generators.len();
        let body = match self.base.as_str() {
            "S" => {
                let mut c = FreeComplex::new(ring, generators.clone());
                for rec in &self.differential {
                    let (f, t) = (resolve(&rec.from, &names, n)?, resolve(&rec.to, &names, n)?);
                    let mut e = RingElem::zero();
                    for m in &rec.coeff {
                        e.toggle(parse_mono_record(m)?);
                    }
                    c.add_entry(f, t, &e);
                }
                Body::S(c)
            }
            "FUV" => {
                let mut diff: BTreeMap<(usize, usize), Poly> = BTreeMap::new();
                for rec in &self.differential {
                    let (f, t) = (resolve(&rec.from, &names, n)?, resolve(&rec.to, &names, n)?);
                    let slot = diff.entry((f, t)).or_default();
                    for m in &rec.coeff {
                        let MonoRecord::Fuv { u, v } = m else {
                            return Err(Error::Parse("FUV documents use {\"U\":a,\"V\":b} records".into()));
                        };
                        if !slot.remove(&(*u, *v)) {
                            slot.insert((*u, *v));
                        }
                    }
                }
                diff.retain(|_, p| !p.is_empty());
                Body::Fuv(FuvComplex { generators: generators.clone(), diff })
            }
            other => return Err(Error::Parse(format!("unknown base `{other}`"))),
        };
        Ok(Document { ring, d_y: self.d_y, body })
    }
}

fn parse_mono_record(m: &MonoRecord) -> Result<Monomial> {
    match m {
        MonoRecord::Part { part, e } => match (part.as_str(), e) {
            ("K", None) => Ok(Monomial::One),
            ("U" | "V", Some([i, j])) => {
                let e = Lattice::new(*i, *j);
                if !e.in_region() {
                    return Err(Error::Parse(format!("exponent {e} is outside the monomial region")));
                }
                Ok(if part == "U" { Monomial::U(e) } else { Monomial::V(e) })
            }
            _ => Err(Error::Parse(format!("malformed monomial record with part `{part}`"))),
        },
        MonoRecord::Fuv { .. } => Err(Error::Parse("S documents use {\"part\":...} records".into())),
    }
}

pub fn parse_document(text: &str) -> Result<Document> {
    let doc: ComplexDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    doc.into_document()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamRecord {
    pub sign: i64,
    pub e: [i64; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub ring: String,
    pub params: Vec<ParamRecord>,
}

pub fn spec_document(s: &StandardSpec) -> SpecDocument {
    SpecDocument {
        ring: s.ring().tag().into(),
        params: s.params().iter().map(|b| ParamRecord { sign: b.sign.value(), e: [b.exp.i, b.exp.j] }).collect(),
    }
}

impl SpecDocument {
    pub fn into_spec(self) -> Result<StandardSpec> {
        let ring: RingId = self.ring.parse()?;
        let params = self
            .params
            .iter()
            .enumerate()
            .map(|(k, p)| {
                SignedParam::new(crate::ring::Side::at_position(k + 1), Sign::from_value(p.sign)?, Lattice::new(p.e[0], p.e[1]))
            })
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::Parse(e.to_string()))?;
        StandardSpec::new(ring, params).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertEntry {
    pub from: usize,
    pub to: usize,
    pub coeff: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CertDocument {
    pub source: String,
    pub target: String,
    pub gr2_shift: i64,
    pub kind: MapKind,
    pub entries: Vec<CertEntry>,
}

pub fn cert_document(c: &LocalMapCert) -> CertDocument {
    CertDocument {
        source: c.source.clone(),
        target: c.target.clone(),
        gr2_shift: c.gr2_shift,
        kind: c.kind,
        entries: c
            .matrix
            .iter()
            .map(|(&(f, t), e)| CertEntry { from: f, to: t, coeff: e.monomials().map(|m| m.to_string()).collect() })
            .collect(),
    }
}

/// Anything a command accepts as a complex argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Spec(StandardSpec),
    Doc(Document),
}

impl Input {
    /// The input as a complex; specs are realized.
    pub fn complex(&self) -> FreeComplex {
        match self {
            Input::Spec(s) => crate::standard::realize(s),
            Input::Doc(d) => d.complex(),
        }
    }

    pub fn d_y(&self) -> i64 {
        match self {
            Input::Spec(_) => 0,
            Input::Doc(d) => d.d_y,
        }
    }
}

/// Parses inline spec text, or JSON holding either a spec or a complex.
pub fn parse_input(text: &str) -> Result<Input> {
    let t = text.trim();
    if t.starts_with("C(") || t.starts_with("R:") || t.starts_with("X:") {
        return Ok(Input::Spec(t.parse()?));
    }
    let value: serde_json::Value = serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()))?;
    if value.get("params").is_some() {
        let doc: SpecDocument = serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
        return Ok(Input::Spec(doc.into_spec()?));
    }
    let doc: ComplexDocument = serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(Input::Doc(doc.into_document()?))
}

/// Reads a command argument: inline spec text, or a path to a JSON file.
pub fn load_input(arg: &str) -> Result<Input> {
    let t = arg.trim();
    if t.starts_with("C(") || t.starts_with("R:C(") || t.starts_with("X:C(") {
        return parse_input(t);
    }
    let text = std::fs::read_to_string(arg).map_err(|e| Error::Parse(format!("cannot read `{arg}`: {e}")))?;
    parse_input(&text)
}
