//! Standard and semistandard zig-zag complexes.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::complex::{FreeComplex, Generator};
use crate::error::{domain, Error, Result};
use crate::ring::{compare_with_one, Grading, Monomial, RingElem, RingId, Side, SignedParam};

/// Common view of standard (even length) and semistandard (odd length)
/// parameter sequences.
pub trait Zigzag {
    fn ring(&self) -> RingId;
    fn params(&self) -> &[SignedParam];

    fn len(&self) -> usize {
        self.params().len()
    }

    fn is_empty(&self) -> bool {
        self.params().is_empty()
    }
}

fn check_params(ring: RingId, params: &[SignedParam]) -> Result<()> {
    for (k, b) in params.iter().enumerate() {
        let want = Side::at_position(k + 1);
        if b.side != want {
            return domain(format!("parameter {} must lie on the {want:?} side", k + 1));
        }
        if !ring.admits(b.exp) {
            return domain(format!("parameter {} = {b} is not a monomial of ring {}", k + 1, ring.tag()));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StandardSpec {
    ring: RingId,
    params: Vec<SignedParam>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemistandardSpec {
    ring: RingId,
    params: Vec<SignedParam>,
}

impl StandardSpec {
    pub fn new(ring: RingId, params: Vec<SignedParam>) -> Result<Self> {
        if params.len() % 2 != 0 {
            return domain("a standard sequence has even length");
        }
        check_params(ring, &params)?;
        Ok(StandardSpec { ring, params })
    }

    /// `C(0)`.
    pub fn trivial(ring: RingId) -> Self {
        StandardSpec { ring, params: Vec::new() }
    }

    /// Builds a spec from `(sign, i, j)` triples, deriving sides from
    /// positions.
    pub fn from_triples(ring: RingId, triples: &[(i64, i64, i64)]) -> Result<Self> {
        let params = triples
            .iter()
            .enumerate()
            .map(|(k, &(s, i, j))| {
                SignedParam::new(
                    Side::at_position(k + 1),
                    crate::ring::Sign::from_value(s)?,
                    crate::ring::Lattice::new(i, j),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        StandardSpec::new(ring, params)
    }

    pub fn into_params(self) -> Vec<SignedParam> {
        self.params
    }

    /// Reads a spec over `R` as one over `X`.
    pub fn promote_to_x(&self) -> StandardSpec {
        StandardSpec { ring: RingId::X, params: self.params.clone() }
    }
}

impl SemistandardSpec {
    pub fn new(ring: RingId, params: Vec<SignedParam>) -> Result<Self> {
        if params.len() % 2 != 1 {
            return domain("a semistandard sequence has odd length");
        }
        check_params(ring, &params)?;
        Ok(SemistandardSpec { ring, params })
    }
}

impl Zigzag for StandardSpec {
    fn ring(&self) -> RingId {
        self.ring
    }
    fn params(&self) -> &[SignedParam] {
        &self.params
    }
}

impl Zigzag for SemistandardSpec {
    fn ring(&self) -> RingId {
        self.ring
    }
    fn params(&self) -> &[SignedParam] {
        &self.params
    }
}

fn write_params(f: &mut fmt::Formatter<'_>, ring: RingId, params: &[SignedParam]) -> fmt::Result {
    if ring == RingId::R {
        write!(f, "R:")?;
    }
    if params.is_empty() {
        return write!(f, "C(0)");
    }
    let parts: Vec<String> = params.iter().map(|p| p.to_string()).collect();
    write!(f, "C({})", parts.join(", "))
}

impl fmt::Display for StandardSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_params(f, self.ring, &self.params)
    }
}

impl fmt::Display for SemistandardSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_params(f, self.ring, &self.params)
    }
}

/// Parses `C(-U[2,1], +V[2,1])` or `C(0)`, optionally prefixed by `R:`
/// or `X:`. Display writes the prefix for `R` only.
impl FromStr for StandardSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (ring, body) = match s.split_once(':') {
            Some((r, rest)) if !r.contains('(') => (r.trim().parse()?, rest.trim()),
            _ => (RingId::X, s),
        };
        let inner = body
            .strip_prefix("C(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected `C(...)`, found `{s}`")))?
            .trim();
        if inner == "0" || inner.is_empty() {
            return Ok(StandardSpec::trivial(ring));
        }
        let mut params = Vec::new();
        let mut depth = 0;
        let mut start = 0;
        for (k, ch) in inner.char_indices() {
            match ch {
                '[' => depth += 1,
                ']' => depth -= 1,
                ',' if depth == 0 => {
                    params.push(inner[start..k].parse::<SignedParam>()?);
                    start = k + 1;
                }
                _ => {}
            }
        }
        params.push(inner[start..].parse::<SignedParam>()?);
        StandardSpec::new(ring, params).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Gradings of `x_0..x_n` with `gr(x_0) = (0,0)`.
fn raw_gradings(params: &[SignedParam]) -> Vec<Grading> {
    let mut out = vec![(0, 0)];
    for b in params {
        let prev = *out.last().expect("nonempty");
        let s = b.sign.value();
        let g = b.grading();
        out.push((prev.0 + s + g.0, prev.1 + s + g.1));
    }
    out
}

/// Bigradings of the generators of the realized complex.
pub fn gradings<Z: Zigzag + ?Sized>(z: &Z) -> Vec<Grading> {
    let mut grs = raw_gradings(z.params());
    if z.len() % 2 == 0 {
        let top = grs.last().expect("nonempty").1;
        for g in &mut grs {
            g.1 -= top;
        }
    }
    grs
}

/// The zig-zag complex on `x_0..x_n`.
pub fn realize<Z: Zigzag + ?Sized>(z: &Z) -> FreeComplex {
    let generators = gradings(z)
        .into_iter()
        .enumerate()
        .map(|(k, gr)| Generator::new(format!("x{k}"), gr))
        .collect();
    let mut c = FreeComplex::new(z.ring(), generators);
    for (k, b) in z.params().iter().enumerate() {
        let coeff = RingElem::from(b.magnitude());
        if b.is_positive() {
            c.set_entry(k + 1, k, coeff);
        } else {
            c.set_entry(k, k + 1, coeff);
        }
    }
    c
}

/// Recovers the parameters of a complex laid out as a zig-zag on its
/// generators in order.
pub fn read_standard(c: &FreeComplex) -> Result<StandardSpec> {
    let n = c.len().checked_sub(1).ok_or_else(|| Error::Domain("empty complex".into()))?;
    let mut params = Vec::with_capacity(n);
    for k in 1..=n {
        let side = Side::at_position(k);
        let down = c.entry(k - 1, k).and_then(|e| e.side_monomial(side));
        let up = c.entry(k, k - 1).and_then(|e| e.side_monomial(side));
        let p = match (down, up) {
            (Some(m), None) => SignedParam::new(side, crate::ring::Sign::Minus, m.exp())?,
            (None, Some(m)) => SignedParam::new(side, crate::ring::Sign::Plus, m.exp())?,
            _ => return domain(format!("no unique {side:?} arrow between x{} and x{k}", k - 1)),
        };
        params.push(p);
    }
    StandardSpec::new(c.ring, params)
}

/// Lexicographic order, padding the shorter sequence with `1`.
pub fn lex_compare(a: &StandardSpec, b: &StandardSpec) -> Result<Ordering> {
    if a.ring != b.ring {
        return domain("specs over different rings are not compared; promote first");
    }
    for k in 0..a.len().max(b.len()) {
        let o = compare_with_one(a.params.get(k), b.params.get(k))?;
        if o != Ordering::Equal {
            return Ok(o);
        }
    }
    Ok(Ordering::Equal)
}

pub fn dual_spec(s: &StandardSpec) -> StandardSpec {
    StandardSpec { ring: s.ring, params: s.params.iter().map(SignedParam::inverse).collect() }
}

pub fn reverse_spec(s: &StandardSpec) -> StandardSpec {
    let params = s
        .params
        .iter()
        .rev()
        .enumerate()
        .map(|(k, b)| b.inverse().with_side(Side::at_position(k + 1)))
        .collect();
    StandardSpec { ring: s.ring, params }
}

pub fn is_symmetric(s: &StandardSpec) -> bool {
    let n = s.len();
    (0..n).all(|k| {
        let (a, b) = (&s.params[k], &s.params[n - 1 - k]);
        a.exp == b.exp && a.sign != b.sign
    })
}

/// `m(mu) = multiplier * mu` for `mu <=! threshold`, `m(mu) = mu` above it,
/// extended to inverses by `m(mu^-1) = m(mu)^-1`. `threshold = None` is the
/// neutral parameter `1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShiftMap {
    side: Side,
    threshold: Option<SignedParam>,
    multiplier: Monomial,
}

impl ShiftMap {
    pub fn new(side: Side, threshold: Option<SignedParam>, multiplier: Monomial) -> Result<Self> {
        if multiplier.side() != Some(side) {
            return domain("the multiplier must be a nontrivial monomial on the map's side");
        }
        if threshold.is_some_and(|t| t.side != side) {
            return domain("the threshold must lie on the map's side");
        }
        Ok(ShiftMap { side, threshold, multiplier })
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn apply(&self, b: &SignedParam) -> SignedParam {
        if !b.is_positive() {
            return self.apply(&b.inverse()).inverse();
        }
        let below = compare_with_one(Some(b), self.threshold.as_ref())
            .map(|o| o != Ordering::Greater)
            .unwrap_or(false);
        if below {
            SignedParam { exp: b.exp + self.multiplier.exp(), ..*b }
        } else {
            *b
        }
    }
}

pub fn shift_spec(s: &StandardSpec, mu: Option<&ShiftMap>, mv: Option<&ShiftMap>) -> Result<StandardSpec> {
    if mu.is_some_and(|m| m.side != Side::U) || mv.is_some_and(|m| m.side != Side::V) {
        return domain("shift maps must act on their own side");
    }
    let params = s
        .params
        .iter()
        .map(|b| match (b.side, mu, mv) {
            (Side::U, Some(m), _) | (Side::V, _, Some(m)) => m.apply(b),
            _ => *b,
        })
        .collect();
    StandardSpec::new(s.ring, params)
}
