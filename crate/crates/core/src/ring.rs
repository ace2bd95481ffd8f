//! Arithmetic in the grid rings `R = F2[U,V]/(UV)` and `X`.
//!
//! A homogeneous element of either half of `X` is a lattice point `(i,j)` in
//! the region `j > 0` or `j = 0, i > 0`. On the U side the point stands for
//! `U_B^i W_{B,0}^j` with bigrading `(-2i,-2j)`; on the V side for
//! `V_T^i W_{T,0}^j` with bigrading `(-2j,-2i)`. The ring `R` keeps only the
//! points with `j = 0`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

pub type Grading = (i64, i64);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingId {
    R,
    X,
}

impl RingId {
    /// Whether `e` names a nontrivial monomial of this ring.
    pub fn admits(self, e: Lattice) -> bool {
        match self {
            RingId::X => e.in_region(),
            RingId::R => e.j == 0 && e.i >= 1,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            RingId::R => "R",
            RingId::X => "X",
        }
    }
}

impl FromStr for RingId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "R" => Ok(RingId::R),
            "X" => Ok(RingId::X),
            other => Err(Error::Parse(format!("unknown ring `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    U,
    V,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::U => Side::V,
            Side::V => Side::U,
        }
    }

    /// Side carried by the parameter at 1-based position `k` of a zig-zag.
    pub fn at_position(k: usize) -> Side {
        if k % 2 == 1 {
            Side::U
        } else {
            Side::V
        }
    }

    pub fn letter(self) -> char {
        match self {
            Side::U => 'U',
            Side::V => 'V',
        }
    }
}

/// A point of `Z x Z`. The derived `Ord` is a storage order only; the
/// ring's order is [`lattice_compare`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Lattice {
    pub i: i64,
    pub j: i64,
}

impl Lattice {
    pub const ZERO: Lattice = Lattice { i: 0, j: 0 };

    pub const fn new(i: i64, j: i64) -> Self {
        Lattice { i, j }
    }

    pub fn is_zero(self) -> bool {
        self.i == 0 && self.j == 0
    }

    /// Membership in `(Z x Z>=0) - (Z<=0 x {0})`.
    pub fn in_region(self) -> bool {
        self.j > 0 || (self.j == 0 && self.i > 0)
    }

    pub fn in_region_or_zero(self) -> bool {
        self.is_zero() || self.in_region()
    }
}

impl Add for Lattice {
    type Output = Lattice;
    fn add(self, o: Lattice) -> Lattice {
        Lattice::new(self.i + o.i, self.j + o.j)
    }
}

impl Sub for Lattice {
    type Output = Lattice;
    fn sub(self, o: Lattice) -> Lattice {
        Lattice::new(self.i - o.i, self.j - o.j)
    }
}

impl Neg for Lattice {
    type Output = Lattice;
    fn neg(self) -> Lattice {
        Lattice::new(-self.i, -self.j)
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.i, self.j)
    }
}

/// Compares `1/a` with `1/b` for nonzero integers.
fn cmp_reciprocals(a: i64, b: i64) -> Ordering {
    match (a > 0, b > 0) {
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        _ => b.cmp(&a),
    }
}

/// The total order `<=!` on `Z x Z - {0}`.
///
/// Rows are ranked by `1/j`, with `1/0 = +inf` for `i > 0` and `-inf` for
/// `i < 0`. Inside a row the order agrees with divisibility: on the
/// positive half a point is below another exactly when the other divides it.
/// Hence `(1,0)` is the greatest point and `(-1,0)` the least.
pub fn lattice_compare(a: Lattice, b: Lattice) -> Result<Ordering> {
    if a.is_zero() || b.is_zero() {
        return domain("lattice order is undefined at (0,0)");
    }
    Ok(if a.j != b.j {
        match (a.j, b.j) {
            (0, _) => {
                if a.i > 0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
            (_, 0) => {
                if b.i > 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            (j, l) => cmp_reciprocals(j, l),
        }
    } else if a.j != 0 {
        b.i.cmp(&a.i)
    } else {
        cmp_reciprocals(a.i, b.i)
    })
}

/// A homogeneous monomial: the scalar `1` or a nontrivial element of one
/// maximal ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Monomial {
    One,
    U(Lattice),
    V(Lattice),
}

pub fn side_grading(side: Side, e: Lattice) -> Grading {
    match side {
        Side::U => (-2 * e.i, -2 * e.j),
        Side::V => (-2 * e.j, -2 * e.i),
    }
}

impl Monomial {
    pub fn on(side: Side, e: Lattice) -> Monomial {
        if e.is_zero() {
            return Monomial::One;
        }
        match side {
            Side::U => Monomial::U(e),
            Side::V => Monomial::V(e),
        }
    }

    pub fn side(self) -> Option<Side> {
        match self {
            Monomial::One => None,
            Monomial::U(_) => Some(Side::U),
            Monomial::V(_) => Some(Side::V),
        }
    }

    pub fn exp(self) -> Lattice {
        match self {
            Monomial::One => Lattice::ZERO,
            Monomial::U(e) | Monomial::V(e) => e,
        }
    }

    pub fn grading(self) -> Grading {
        match self {
            Monomial::One => (0, 0),
            Monomial::U(e) => side_grading(Side::U, e),
            Monomial::V(e) => side_grading(Side::V, e),
        }
    }

    pub fn is_valid_in(self, ring: RingId) -> bool {
        match self {
            Monomial::One => true,
            Monomial::U(e) | Monomial::V(e) => ring.admits(e),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Monomial::One => write!(f, "1"),
            Monomial::U(e) => write!(f, "U{e}"),
            Monomial::V(e) => write!(f, "V{e}"),
        }
    }
}

fn parse_bracket_pair(s: &str) -> Result<Lattice> {
    let bad = || Error::Parse(format!("expected `[i,j]`, found `{s}`"));
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(bad)?;
    let mut parts = inner.split(',');
    let i = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
    let j = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok(Lattice::new(i, j))
}

fn parse_side_letter(c: char) -> Result<Side> {
    match c {
        'U' => Ok(Side::U),
        'V' => Ok(Side::V),
        other => Err(Error::Parse(format!("expected side letter U or V, found `{other}`"))),
    }
}

impl FromStr for Monomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Monomial::One);
        }
        let mut chars = s.chars();
        let side = parse_side_letter(chars.next().unwrap_or(' '))?;
        let e = parse_bracket_pair(chars.as_str())?;
        if !e.in_region() {
            return Err(Error::Parse(format!("exponent {e} is outside the monomial region")));
        }
        Ok(Monomial::on(side, e))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Minus => -1,
            Sign::Plus => 1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    pub fn from_value(v: i64) -> Result<Sign> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(Error::Parse(format!("sign must be +1 or -1, found {other}"))),
        }
    }
}

/// A monomial (`Plus`) or the inverse of a monomial (`Minus`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedParam {
    pub side: Side,
    pub sign: Sign,
    pub exp: Lattice,
}

impl SignedParam {
    pub fn new(side: Side, sign: Sign, exp: Lattice) -> Result<Self> {
        if !exp.in_region() {
            return domain(format!("parameter exponent {exp} is outside the monomial region"));
        }
        Ok(SignedParam { side, sign, exp })
    }

    pub fn plus(side: Side, i: i64, j: i64) -> Self {
        SignedParam::new(side, Sign::Plus, Lattice::new(i, j)).expect("valid exponent")
    }

    pub fn minus(side: Side, i: i64, j: i64) -> Self {
        SignedParam::new(side, Sign::Minus, Lattice::new(i, j)).expect("valid exponent")
    }

    /// The monomial `|b|`.
    pub fn magnitude(&self) -> Monomial {
        Monomial::on(self.side, self.exp)
    }

    pub fn is_positive(&self) -> bool {
        self.sign == Sign::Plus
    }

    pub fn inverse(&self) -> SignedParam {
        SignedParam { sign: self.sign.flip(), ..*self }
    }

    /// Exponent with the sign folded in, so that inverses are negated points.
    pub fn signed_exp(&self) -> Lattice {
        match self.sign {
            Sign::Plus => self.exp,
            Sign::Minus => -self.exp,
        }
    }

    pub fn grading(&self) -> Grading {
        let (a, b) = side_grading(self.side, self.exp);
        let s = self.sign.value();
        (s * a, s * b)
    }

    pub fn with_side(&self, side: Side) -> SignedParam {
        SignedParam { side, ..*self }
    }
}

impl fmt::Display for SignedParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.is_positive() { '+' } else { '-' };
        write!(f, "{s}{}{}", self.side.letter(), self.exp)
    }
}

impl FromStr for SignedParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (sign, rest) = if let Some(r) = s.strip_prefix('-') {
            (Sign::Minus, r)
        } else if let Some(r) = s.strip_prefix('+') {
            (Sign::Plus, r)
        } else {
            (Sign::Plus, s)
        };
        let mut chars = rest.chars();
        let side = parse_side_letter(chars.next().unwrap_or(' '))?;
        let exp = parse_bracket_pair(chars.as_str())?;
        SignedParam::new(side, sign, exp).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// `<=!` on signed parameters: negatives below positives; among positives
/// the divisor is the larger; among negatives the one with the dividing
/// magnitude is the smaller.
pub fn param_compare(a: &SignedParam, b: &SignedParam) -> Result<Ordering> {
    if a.side != b.side {
        return domain("cannot compare parameters on different sides");
    }
    lattice_compare(a.signed_exp(), b.signed_exp())
}

/// [`param_compare`] where `None` stands for the neutral parameter `1`.
pub fn compare_with_one(a: Option<&SignedParam>, b: Option<&SignedParam>) -> Result<Ordering> {
    match (a, b) {
        (None, None) => Ok(Ordering::Equal),
        (None, Some(b)) => Ok(if b.is_positive() { Ordering::Less } else { Ordering::Greater }),
        (Some(a), None) => Ok(if a.is_positive() { Ordering::Greater } else { Ordering::Less }),
        (Some(a), Some(b)) => param_compare(a, b),
    }
}

pub fn mono_mul(a: Monomial, b: Monomial) -> RingElem {
    match (a, b) {
        (Monomial::One, m) | (m, Monomial::One) => RingElem::from(m),
        (Monomial::U(x), Monomial::U(y)) => RingElem::from(Monomial::U(x + y)),
        (Monomial::V(x), Monomial::V(y)) => RingElem::from(Monomial::V(x + y)),
        _ => RingElem::zero(),
    }
}

/// Whether `a` divides `b`.
pub fn mono_divides(a: Monomial, b: Monomial) -> Result<bool> {
    match (a.side(), b.side()) {
        (None, _) => Ok(true),
        (Some(_), None) => Ok(false),
        (Some(x), Some(y)) if x != y => domain("divisibility across sides is undefined"),
        _ => Ok((b.exp() - a.exp()).in_region_or_zero()),
    }
}

/// `b / a` when `a` divides `b` on a common side.
pub fn mono_quotient(b: Monomial, a: Monomial) -> Option<Monomial> {
    match (a.side(), b.side()) {
        (None, _) => Some(b),
        (Some(_), None) => None,
        (Some(x), Some(y)) if x != y => None,
        (Some(x), Some(_)) => {
            let q = b.exp() - a.exp();
            q.in_region_or_zero().then(|| Monomial::on(x, q))
        }
    }
}

/// The `<=!`-greatest element of a nonempty same-side set; it divides every
/// member.
pub fn mono_gcd(set: &[Monomial]) -> Result<Monomial> {
    let first = *set.first().ok_or_else(|| Error::Domain("gcd of an empty set".into()))?;
    let side = first
        .side()
        .ok_or_else(|| Error::Domain("gcd expects maximal-ideal monomials".into()))?;
    let mut best = first;
    for &m in &set[1..] {
        if m.side() != Some(side) {
            return domain("gcd expects monomials on a single side");
        }
        if lattice_compare(m.exp(), best.exp())? == Ordering::Greater {
            best = m;
        }
    }
    Ok(best)
}

/// An F2-combination of `1`, U-side monomials and V-side monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RingElem {
    pub scalar: bool,
    pub u: BTreeSet<Lattice>,
    pub v: BTreeSet<Lattice>,
}

fn toggle(set: &mut BTreeSet<Lattice>, e: Lattice) {
    if !set.remove(&e) {
        set.insert(e);
    }
}

impl RingElem {
    pub fn zero() -> Self {
        RingElem::default()
    }

    pub fn one() -> Self {
        RingElem { scalar: true, ..RingElem::default() }
    }

    pub fn is_zero(&self) -> bool {
        !self.scalar && self.u.is_empty() && self.v.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.scalar && self.u.is_empty() && self.v.is_empty()
    }

    pub fn toggle(&mut self, m: Monomial) {
        match m {
            Monomial::One => self.scalar = !self.scalar,
            Monomial::U(e) => toggle(&mut self.u, e),
            Monomial::V(e) => toggle(&mut self.v, e),
        }
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.scalar
            .then_some(Monomial::One)
            .into_iter()
            .chain(self.u.iter().map(|&e| Monomial::U(e)))
            .chain(self.v.iter().map(|&e| Monomial::V(e)))
    }

    pub fn contains(&self, m: Monomial) -> bool {
        match m {
            Monomial::One => self.scalar,
            Monomial::U(e) => self.u.contains(&e),
            Monomial::V(e) => self.v.contains(&e),
        }
    }

    pub fn part(&self, side: Side) -> &BTreeSet<Lattice> {
        match side {
            Side::U => &self.u,
            Side::V => &self.v,
        }
    }

    /// The element keeping only its monomials on `side`.
    pub fn project(&self, side: Side) -> RingElem {
        let mut out = RingElem::zero();
        for &e in self.part(side) {
            out.toggle(Monomial::on(side, e));
        }
        out
    }

    /// The single side monomial of a homogeneous element, if present.
    pub fn side_monomial(&self, side: Side) -> Option<Monomial> {
        self.part(side).iter().next().map(|&e| Monomial::on(side, e))
    }

    /// Common bigrading of all monomials; `None` for zero or mixed elements.
    pub fn grading(&self) -> Option<Grading> {
        let mut it = self.monomials().map(Monomial::grading);
        let g = it.next()?;
        it.all(|h| h == g).then_some(g)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.grading().is_some()
    }

    pub fn is_valid_in(&self, ring: RingId) -> bool {
        self.monomials().all(|m| m.is_valid_in(ring))
    }

    pub fn add_assign(&mut self, other: &RingElem) {
        self.scalar ^= other.scalar;
        for &e in &other.u {
            toggle(&mut self.u, e);
        }
        for &e in &other.v {
            toggle(&mut self.v, e);
        }
    }

    pub fn mul_mono(&self, m: Monomial) -> RingElem {
        let mut out = RingElem::zero();
        for a in self.monomials() {
            out.add_assign(&mono_mul(a, m));
        }
        out
    }
}

impl From<Monomial> for RingElem {
    fn from(m: Monomial) -> Self {
        let mut out = RingElem::zero();
        out.toggle(m);
        out
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self.monomials().map(|m| m.to_string()).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Bilinear extension of [`mono_mul`].
pub fn elem_mul(a: &RingElem, b: &RingElem) -> RingElem {
    let mut out = RingElem::zero();
    for x in a.monomials() {
        for y in b.monomials() {
            out.add_assign(&mono_mul(x, y));
        }
    }
    out
}

impl Add for &RingElem {
    type Output = RingElem;
    fn add(self, o: &RingElem) -> RingElem {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }
}

impl Mul for &RingElem {
    type Output = RingElem;
    fn mul(self, o: &RingElem) -> RingElem {
        elem_mul(self, o)
    }
}

/// The monomial on `side` (or `1`) of bigrading `g`, if any.
pub fn side_element(ring: RingId, side: Side, g: Grading) -> Option<Monomial> {
    if g == (0, 0) {
        return Some(Monomial::One);
    }
    if g.0 % 2 != 0 || g.1 % 2 != 0 {
        return None;
    }
    let e = match side {
        Side::U => Lattice::new(-g.0 / 2, -g.1 / 2),
        Side::V => Lattice::new(-g.1 / 2, -g.0 / 2),
    };
    ring.admits(e).then(|| Monomial::on(side, e))
}

/// F2-basis of the ring in bigrading `g`: `{1}` at the origin and otherwise
/// at most one monomial per side.
pub fn grading_basis(ring: RingId, g: Grading) -> Vec<Monomial> {
    if g == (0, 0) {
        return vec![Monomial::One];
    }
    [Side::U, Side::V]
        .into_iter()
        .filter_map(|s| side_element(ring, s, g))
        .collect()
}
