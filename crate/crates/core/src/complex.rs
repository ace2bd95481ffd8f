//! Free bigraded chain complexes over a grid ring.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::ring::{
    elem_mul, lattice_compare, mono_quotient, Grading, Lattice, Monomial, RingElem, RingId, Side,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub gr: Grading,
}

impl Generator {
    pub fn new(name: impl Into<String>, gr: Grading) -> Self {
        Generator { name: name.into(), gr }
    }

    /// Alexander grading `(gr1 - gr2) / 2`.
    pub fn alexander(&self) -> i64 {
        (self.gr.0 - self.gr.1) / 2
    }
}

/// Differential entries are keyed by `(from, to)`: `d(from)` contains
/// `coeff * to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    pub ring: RingId,
    pub generators: Vec<Generator>,
    pub diff: BTreeMap<(usize, usize), RingElem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Violation {
    IndexOutOfRange { from: usize, to: usize },
    DuplicateName { name: String },
    Parity { generator: usize },
    NotInRing { from: usize, to: usize },
    NotHomogeneous { from: usize, to: usize },
    Degree { from: usize, to: usize, expected: Grading, found: Grading },
    SquareNonzero { from: usize, to: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::IndexOutOfRange { from, to } => {
                write!(f, "entry ({from} -> {to}) references a missing generator")
            }
            Violation::DuplicateName { name } => write!(f, "generator name `{name}` is repeated"),
            Violation::Parity { generator } => {
                write!(f, "generator {generator} has gradings of different parity")
            }
            Violation::NotInRing { from, to } => {
                write!(f, "entry ({from} -> {to}) uses a monomial outside the ring")
            }
            Violation::NotHomogeneous { from, to } => {
                write!(f, "entry ({from} -> {to}) is not homogeneous")
            }
            Violation::Degree { from, to, expected, found } => write!(
                f,
                "entry ({from} -> {to}) has grading {found:?}, expected {expected:?}"
            ),
            Violation::SquareNonzero { from, to } => {
                write!(f, "d^2 has a nonzero entry ({from} -> {to})")
            }
        }
    }
}

pub(crate) fn unique_names(names: Vec<String>) -> Vec<String> {
    let mut seen = HashSet::new();
    names
        .into_iter()
        .map(|n| {
            if seen.insert(n.clone()) {
                return n;
            }
            let mut k = 1;
            loop {
                let candidate = format!("{n}#{k}");
                if seen.insert(candidate.clone()) {
                    return candidate;
                }
                k += 1;
            }
        })
        .collect()
}

impl FreeComplex {
    pub fn new(ring: RingId, generators: Vec<Generator>) -> Self {
        FreeComplex { ring, generators, diff: BTreeMap::new() }
    }

    /// The trivial complex: one generator in bigrading `(0,0)`.
    pub fn trivial(ring: RingId) -> Self {
        FreeComplex::new(ring, vec![Generator::new("x0", (0, 0))])
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn entry(&self, from: usize, to: usize) -> Option<&RingElem> {
        self.diff.get(&(from, to))
    }

    pub fn add_entry(&mut self, from: usize, to: usize, c: &RingElem) {
        let slot = self.diff.entry((from, to)).or_default();
        slot.add_assign(c);
        if slot.is_zero() {
            self.diff.remove(&(from, to));
        }
    }

    pub fn set_entry(&mut self, from: usize, to: usize, c: RingElem) {
        if c.is_zero() {
            self.diff.remove(&(from, to));
        } else {
            self.diff.insert((from, to), c);
        }
    }

    /// Terms of `d(from)`.
    pub fn boundary(&self, from: usize) -> impl Iterator<Item = (usize, &RingElem)> {
        self.diff.range((from, 0)..=(from, usize::MAX)).map(|(&(_, t), c)| (t, c))
    }

    pub fn gr(&self, k: usize) -> Grading {
        self.generators[k].gr
    }

    pub fn is_reduced(&self) -> bool {
        self.diff.values().all(|c| !c.scalar)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Adds `delta` to every bigrading.
    pub fn shifted(&self, delta: Grading) -> FreeComplex {
        let mut out = self.clone();
        for g in &mut out.generators {
            g.gr = (g.gr.0 + delta.0, g.gr.1 + delta.1);
        }
        out
    }

    pub fn direct_sum(&self, other: &FreeComplex) -> Result<FreeComplex> {
        if self.ring != other.ring {
            return domain("direct sum of complexes over different rings");
        }
        let n = self.len();
        let names = self.generators.iter().chain(&other.generators).map(|g| g.name.clone()).collect();
        let grs = self.generators.iter().chain(&other.generators).map(|g| g.gr);
        let generators = unique_names(names)
            .into_iter()
            .zip(grs)
            .map(|(name, gr)| Generator { name, gr })
            .collect();
        let mut out = FreeComplex::new(self.ring, generators);
        out.diff = self.diff.clone();
        for (&(f, t), c) in &other.diff {
            out.diff.insert((f + n, t + n), c.clone());
        }
        Ok(out)
    }

    /// `d(d(from))` as a sparse vector.
    fn square_of(&self, from: usize) -> BTreeMap<usize, RingElem> {
        let mut acc: BTreeMap<usize, RingElem> = BTreeMap::new();
        for (k, c1) in self.boundary(from) {
            for (i, c2) in self.boundary(k) {
                acc.entry(i).or_default().add_assign(&elem_mul(c2, c1));
            }
        }
        acc.retain(|_, c| !c.is_zero());
        acc
    }

    pub fn validate(&self) -> Vec<Violation> {
        let n = self.len();
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for (k, g) in self.generators.iter().enumerate() {
            if !seen.insert(g.name.as_str()) {
                out.push(Violation::DuplicateName { name: g.name.clone() });
            }
            if (g.gr.0 - g.gr.1).rem_euclid(2) != 0 {
                out.push(Violation::Parity { generator: k });
            }
        }
        for (&(from, to), c) in &self.diff {
            if from >= n || to >= n {
                out.push(Violation::IndexOutOfRange { from, to });
                continue;
            }
            if !c.is_valid_in(self.ring) {
                out.push(Violation::NotInRing { from, to });
            }
            match c.grading() {
                None => out.push(Violation::NotHomogeneous { from, to }),
                Some(found) => {
                    let (a, b) = (self.gr(from), self.gr(to));
                    let expected = (a.0 - 1 - b.0, a.1 - 1 - b.1);
                    if found != expected {
                        out.push(Violation::Degree { from, to, expected, found });
                    }
                }
            }
        }
        if out.iter().any(|v| matches!(v, Violation::IndexOutOfRange { .. })) {
            return out;
        }
        for from in 0..n {
            for to in self.square_of(from).into_keys() {
                out.push(Violation::SquareNonzero { from, to });
            }
        }
        out
    }

    pub fn check(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            let msgs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            Err(Error::Invalid(msgs.join("; ")))
        }
    }

    /// Cancels unit entries one at a time until none remain.
    pub fn reduce(&self) -> FreeComplex {
        let mut cur = self.clone();
        while let Some((&(p, q), _)) = cur.diff.iter().find(|(_, c)| c.scalar) {
            cur = cur.cancel(p, q);
        }
        cur
    }

    /// Gaussian elimination of the pair `d(p) = q + ...` with unit
    /// coefficient.
    fn cancel(&self, p: usize, q: usize) -> FreeComplex {
        let keep: Vec<usize> = (0..self.len()).filter(|&k| k != p && k != q).collect();
        let mut index = vec![usize::MAX; self.len()];
        for (new, &old) in keep.iter().enumerate() {
            index[old] = new;
        }
        let generators = keep.iter().map(|&k| self.generators[k].clone()).collect();
        let mut out = FreeComplex::new(self.ring, generators);
        for (&(f, t), c) in &self.diff {
            if index[f] != usize::MAX && index[t] != usize::MAX {
                out.add_entry(index[f], index[t], c);
            }
        }
        let from_p: Vec<(usize, RingElem)> = self
            .boundary(p)
            .filter(|&(t, _)| index[t] != usize::MAX)
            .map(|(t, c)| (t, c.clone()))
            .collect();
        for &j in &keep {
            if let Some(jq) = self.entry(j, q) {
                for (i, pi) in &from_p {
                    out.add_entry(index[j], index[*i], &elem_mul(jq, pi));
                }
            }
        }
        out
    }

    pub fn tensor(&self, other: &FreeComplex) -> Result<FreeComplex> {
        if self.ring != other.ring {
            return domain("tensor product of complexes over different rings");
        }
        let m = other.len();
        let mut names = Vec::with_capacity(self.len() * m);
        let mut grs = Vec::with_capacity(self.len() * m);
        for a in &self.generators {
            for b in &other.generators {
                names.push(format!("{}⊗{}", a.name, b.name));
                grs.push((a.gr.0 + b.gr.0, a.gr.1 + b.gr.1));
            }
        }
        let generators =
            unique_names(names).into_iter().zip(grs).map(|(name, gr)| Generator { name, gr }).collect();
        let mut out = FreeComplex::new(self.ring, generators);
        for (&(f, t), c) in &self.diff {
            for b in 0..m {
                out.add_entry(f * m + b, t * m + b, c);
            }
        }
        for (&(f, t), c) in &other.diff {
            for a in 0..self.len() {
                out.add_entry(a * m + f, a * m + t, c);
            }
        }
        Ok(out)
    }

    pub fn dual(&self) -> FreeComplex {
        let names = self.generators.iter().map(|g| format!("{}∨", g.name)).collect();
        let generators = unique_names(names)
            .into_iter()
            .zip(&self.generators)
            .map(|(name, g)| Generator { name, gr: (-g.gr.0, -g.gr.1) })
            .collect();
        let mut out = FreeComplex::new(self.ring, generators);
        for (&(f, t), c) in &self.diff {
            out.diff.insert((t, f), c.clone());
        }
        out
    }

    /// Reinterprets an `R`-complex over `X` through the embedding `U -> U_B`,
    /// `V -> V_T`.
    pub fn promote_to_x(&self) -> FreeComplex {
        FreeComplex { ring: RingId::X, ..self.clone() }
    }
}

/// Entry of the side differential: the unit or the `side` monomial of `c`.
fn side_value(c: &RingElem, side: Side) -> Option<Monomial> {
    if c.scalar {
        Some(Monomial::One)
    } else {
        c.side_monomial(side)
    }
}

/// `a` is strictly greater than `b` in the divisibility order (`1` on top).
fn divides_more(a: Monomial, b: Monomial) -> bool {
    match (a, b) {
        (Monomial::One, Monomial::One) => false,
        (Monomial::One, _) => true,
        (_, Monomial::One) => false,
        _ => lattice_compare(a.exp(), b.exp()) == Ok(Ordering::Greater),
    }
}

/// A pair `d_side(source) = order * target` of a paired basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pair {
    pub source: usize,
    pub target: usize,
    pub order: Monomial,
}

#[derive(Clone, Debug)]
pub struct PairedBasis {
    pub side: Side,
    /// `change[a][g]`: coefficient of old generator `g` in new basis vector `a`.
    pub change: Vec<Vec<RingElem>>,
    /// The input complex rewritten in the new basis.
    pub complex: FreeComplex,
    pub pairs: Vec<Pair>,
    pub unpaired: Vec<usize>,
}

/// Dense working copy with `m[to][from]`.
struct Work {
    m: Vec<Vec<RingElem>>,
    change: Vec<Vec<RingElem>>,
}

impl Work {
    /// Basis change `e_a <- e_a + c e_b`.
    fn add_multiple(&mut self, a: usize, b: usize, c: &RingElem) {
        let n = self.m.len();
        for r in 0..n {
            let add = elem_mul(c, &self.m[r][b]);
            self.m[r][a].add_assign(&add);
        }
        for col in 0..n {
            let add = elem_mul(c, &self.m[a][col]);
            self.m[b][col].add_assign(&add);
        }
        for g in 0..n {
            let add = elem_mul(c, &self.change[b][g]);
            self.change[a][g].add_assign(&add);
        }
    }
}

/// Homogeneous basis in which the `side` differential is a partial matching.
///
/// Pivots are taken greatest-first in the divisibility order, so every
/// later pivot is a multiple of every earlier one.
pub fn paired_basis(c: &FreeComplex, side: Side) -> Result<PairedBasis> {
    let n = c.len();
    let mut w = Work {
        m: vec![vec![RingElem::zero(); n]; n],
        change: (0..n)
            .map(|a| (0..n).map(|g| if a == g { RingElem::one() } else { RingElem::zero() }).collect())
            .collect(),
    };
    for (&(f, t), e) in &c.diff {
        w.m[t][f] = e.clone();
    }
    let mut used = vec![false; n];
    let mut pairs = Vec::new();
    loop {
        let mut best: Option<(usize, usize, Monomial)> = None;
        for q in (0..n).filter(|&q| !used[q]) {
            for p in (0..n).filter(|&p| !used[p]) {
                if let Some(v) = side_value(&w.m[p][q], side) {
                    if best.map_or(true, |(_, _, b)| divides_more(v, b)) {
                        best = Some((p, q, v));
                    }
                }
            }
        }
        let Some((p, q, nu)) = best else { break };
        for i in (0..n).filter(|&i| i != p && !used[i]) {
            if let Some(mi) = side_value(&w.m[i][q], side) {
                let k = mono_quotient(mi, nu)
                    .ok_or_else(|| Error::Internal("pivot does not divide its column".into()))?;
                w.add_multiple(p, i, &k.into());
            }
        }
        for j in (0..n).filter(|&j| j != q && !used[j]) {
            if let Some(mj) = side_value(&w.m[p][j], side) {
                let k = mono_quotient(mj, nu)
                    .ok_or_else(|| Error::Internal("pivot does not divide its row".into()))?;
                w.add_multiple(j, q, &k.into());
            }
        }
        used[p] = true;
        used[q] = true;
        pairs.push(Pair { source: q, target: p, order: nu });
    }
    let mut complex = FreeComplex::new(c.ring, c.generators.clone());
    for (t, row) in w.m.iter().enumerate() {
        for (f, e) in row.iter().enumerate() {
            complex.set_entry(f, t, e.clone());
        }
    }
    for (&(f, t), e) in &complex.diff {
        if let Some(v) = side_value(e, side) {
            if !pairs.iter().any(|pr| pr.source == f && pr.target == t && pr.order == v) {
                return Err(Error::Internal(format!(
                    "paired basis left a stray {side:?} entry ({f} -> {t})"
                )));
            }
        }
    }
    let unpaired = (0..n).filter(|&k| !used[k]).collect();
    Ok(PairedBasis { side, change: w.change, complex, pairs, unpaired })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Torsion {
    #[serde(serialize_with = "crate::io::ser_monomial_text")]
    pub order: Monomial,
    pub shift: i64,
}

/// Structure of `H(C / m_opposite)` over the `side` valuation ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct QuotientHomology {
    pub side: Side,
    pub tower_count: usize,
    /// Surviving grading of each tower generator: `gr2` on the U side,
    /// `gr1` on the V side.
    pub tower_gradings: Vec<i64>,
    /// Sorted greatest-first in the divisibility order.
    pub torsion: Vec<Torsion>,
}

fn surviving(side: Side, g: Grading) -> i64 {
    match side {
        Side::U => g.1,
        Side::V => g.0,
    }
}

pub fn quotient_homology(c: &FreeComplex, side: Side) -> Result<QuotientHomology> {
    if !c.is_reduced() {
        return domain("quotient homology expects a reduced complex");
    }
    let pb = paired_basis(c, side)?;
    let mut torsion: Vec<Torsion> = pb
        .pairs
        .iter()
        .map(|p| Torsion { order: p.order, shift: surviving(side, c.gr(p.target)) })
        .collect();
    torsion.sort_by(|a, b| {
        lattice_compare(b.order.exp(), a.order.exp())
            .unwrap_or(Ordering::Equal)
            .then(a.shift.cmp(&b.shift))
    });
    let mut tower_gradings: Vec<i64> = pb.unpaired.iter().map(|&k| surviving(side, c.gr(k))).collect();
    tower_gradings.sort_unstable();
    Ok(QuotientHomology { side, tower_count: pb.unpaired.len(), tower_gradings, torsion })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KnotlikeInfo {
    pub knotlike: bool,
    /// Amount to add to every grading so that the U-tower generator has
    /// `gr2 = 0` and the V-tower generator `gr1 = 0`.
    pub shift: Grading,
}

pub fn is_knotlike(c: &FreeComplex) -> Result<KnotlikeInfo> {
    if !c.is_reduced() {
        return domain("knotlike test expects a reduced complex; reduce first");
    }
    let pu = paired_basis(c, Side::U)?;
    let pv = paired_basis(c, Side::V)?;
    if pu.unpaired.len() != 1 || pv.unpaired.len() != 1 {
        return Ok(KnotlikeInfo { knotlike: false, shift: (0, 0) });
    }
    let shift = (-c.gr(pv.unpaired[0]).0, -c.gr(pu.unpaired[0]).1);
    Ok(KnotlikeInfo { knotlike: true, shift })
}

/// Applies the knotlike normalization shift.
pub fn normalize(c: &FreeComplex) -> Result<FreeComplex> {
    let info = is_knotlike(c)?;
    if !info.knotlike {
        return Err(Error::NotKnotlike("quotient homology does not have exactly one tower on each side".into()));
    }
    Ok(c.shifted(info.shift))
}

/// A finite F2-sum of monomials `U^a V^b`.
pub type Poly = BTreeSet<(u32, u32)>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for &(x, y) in a {
        for &(z, w) in b {
            let m = (x + z, y + w);
            if !out.remove(&m) {
                out.insert(m);
            }
        }
    }
    out
}

/// A complex over `F2[U,V]` with `gr(U^a V^b) = (-2a, -2b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuvComplex {
    pub generators: Vec<Generator>,
    pub diff: BTreeMap<(usize, usize), Poly>,
}

impl FuvComplex {
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.generators.len();
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for (k, g) in self.generators.iter().enumerate() {
            if !seen.insert(g.name.as_str()) {
                out.push(Violation::DuplicateName { name: g.name.clone() });
            }
            if (g.gr.0 - g.gr.1).rem_euclid(2) != 0 {
                out.push(Violation::Parity { generator: k });
            }
        }
        for (&(from, to), p) in &self.diff {
            if from >= n || to >= n {
                out.push(Violation::IndexOutOfRange { from, to });
                continue;
            }
            let (a, b) = (self.generators[from].gr, self.generators[to].gr);
            let expected = (a.0 - 1 - b.0, a.1 - 1 - b.1);
            for &(x, y) in p {
                let found = (-2 * x as i64, -2 * y as i64);
                if found != expected {
                    out.push(Violation::Degree { from, to, expected, found });
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for from in 0..n {
            let mut acc: BTreeMap<usize, Poly> = BTreeMap::new();
            for (&(_, k), p1) in self.diff.range((from, 0)..=(from, usize::MAX)) {
                for (&(_, i), p2) in self.diff.range((k, 0)..=(k, usize::MAX)) {
                    let slot = acc.entry(i).or_default();
                    for m in poly_mul(p1, p2) {
                        if !slot.remove(&m) {
                            slot.insert(m);
                        }
                    }
                }
            }
            for (to, p) in acc {
                if !p.is_empty() {
                    out.push(Violation::SquareNonzero { from, to });
                }
            }
        }
        out
    }

    /// Pushes the complex forward along `F2[U,V] -> ring`.
    pub fn base_change(&self, ring: RingId) -> FreeComplex {
        let mut out = FreeComplex::new(ring, self.generators.clone());
        for (&(f, t), p) in &self.diff {
            let mut c = RingElem::zero();
            for &(a, b) in p {
                c.add_assign(&monomial_image(ring, a, b));
            }
            out.set_entry(f, t, c);
        }
        out
    }
}

fn power(x: &RingElem, k: u32) -> RingElem {
    (0..k).fold(RingElem::one(), |acc, _| elem_mul(&acc, x))
}

/// Image of `U^a V^b`. Over `X`: `U -> U_B + W_{T,0}`, `V -> V_T + W_{B,0}`.
/// Over `R`: `U -> U`, `V -> V`.
pub fn monomial_image(ring: RingId, a: u32, b: u32) -> RingElem {
    let mut u = RingElem::from(Monomial::U(Lattice::new(1, 0)));
    let mut v = RingElem::from(Monomial::V(Lattice::new(1, 0)));
    if ring == RingId::X {
        u.toggle(Monomial::V(Lattice::new(0, 1)));
        v.toggle(Monomial::U(Lattice::new(0, 1)));
    }
    elem_mul(&power(&u, a), &power(&v, b))
}
