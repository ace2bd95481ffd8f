//! Numerical invariants read off a standard representative.

use std::collections::BTreeMap;

use num_rational::Rational64;
use serde::{Serialize, Serializer};

use crate::complex::FreeComplex;
use crate::error::Result;
use crate::localeq::standardize_complex;
use crate::ring::{side_grading, Lattice, Monomial, RingId, Side, SignedParam};
use crate::standard::{gradings, is_symmetric, realize, shift_spec, ShiftMap, StandardSpec, Zigzag};

/// Signed counts of parameters by side and magnitude.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PhiTable {
    pub entries: BTreeMap<(Side, Lattice), i64>,
}

impl PhiTable {
    pub fn get(&self, side: Side, e: Lattice) -> i64 {
        self.entries.get(&(side, e)).copied().unwrap_or(0)
    }

    fn bump(&mut self, side: Side, e: Lattice, by: i64) {
        let slot = self.entries.entry((side, e)).or_insert(0);
        *slot += by;
        if *slot == 0 {
            self.entries.remove(&(side, e));
        }
    }

    pub fn add(&self, other: &PhiTable) -> PhiTable {
        let mut out = self.clone();
        for (&(s, e), &c) in &other.entries {
            out.bump(s, e, c);
        }
        out
    }

    pub fn negate(&self) -> PhiTable {
        PhiTable { entries: self.entries.iter().map(|(&k, &c)| (k, -c)).collect() }
    }

    pub fn side(&self, side: Side) -> impl Iterator<Item = (Lattice, i64)> + '_ {
        self.entries.iter().filter(move |((s, _), _)| *s == side).map(|(&(_, e), &c)| (e, c))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Serialize)]
struct PhiEntry {
    side: Side,
    e: [i64; 2],
    count: i64,
}

impl Serialize for PhiTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let list: Vec<PhiEntry> = self
            .entries
            .iter()
            .map(|(&(side, e), &count)| PhiEntry { side, e: [e.i, e.j], count })
            .collect();
        list.serialize(s)
    }
}

pub fn phi(spec: &StandardSpec) -> PhiTable {
    let mut t = PhiTable::default();
    for b in spec.params() {
        t.bump(b.side, b.exp, b.sign.value());
    }
    t
}

/// `sum (i - j) phi^U_(i,j)`.
pub fn tau(spec: &StandardSpec) -> i64 {
    phi(spec).side(Side::U).map(|(e, c)| (e.i - e.j) * c).sum()
}

/// Half the difference of the two gradings of `x_0`.
pub fn tau_from_gradings(spec: &StandardSpec) -> i64 {
    let g = gradings(spec)[0];
    (g.0 - g.1) / 2
}

/// `(is_zero, sign)`; the sign is `sgn(b_1)` when `|b_1|` has `j = 0`.
pub fn epsilon(spec: &StandardSpec) -> (bool, i64) {
    match spec.params().first() {
        None => (true, 0),
        Some(b) if b.exp.j > 0 => (true, 0),
        Some(b) => (false, b.sign.value()),
    }
}

/// `N = max |i - j|` over nonzero U entries, with genus bound `N/2` and
/// unknotting bound `N`.
pub fn big_n_and_bounds(spec: &StandardSpec) -> (i64, Rational64, i64) {
    let n = phi(spec).side(Side::U).map(|(e, _)| (e.i - e.j).abs()).max().unwrap_or(0);
    (n, Rational64::new(n, 2), n)
}

fn sign_sum(spec: &StandardSpec) -> i64 {
    spec.params().iter().map(|b| b.sign.value()).sum()
}

/// `(P_U, P_V)` from the closed forms in the signed counts.
pub fn pu_pv_closed_form(spec: &StandardSpec) -> (i64, i64) {
    let t = phi(spec);
    let sum = |k: usize| -> i64 {
        t.entries
            .iter()
            .map(|(&(side, e), &c)| {
                let g = side_grading(side, e);
                c * if k == 0 { g.0 } else { g.1 }
            })
            .sum()
    };
    let sg = sign_sum(spec);
    (sg + sum(0), -(sg + sum(1)))
}

/// `(gr1(x_n), gr2(x_0))` of the realized complex.
pub fn pu_pv(spec: &StandardSpec) -> (i64, i64) {
    let g = gradings(spec);
    (g[g.len() - 1].0, g[0].1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Obstructions {
    pub lspace: bool,
    pub seifert_pos: bool,
    pub seifert_neg: bool,
}

pub fn obstructions(spec: &StandardSpec) -> Obstructions {
    let t = phi(spec);
    let relevant: Vec<i64> = t.side(Side::U).filter(|(e, _)| e.j > 0).map(|(_, c)| c).collect();
    Obstructions {
        lspace: relevant.iter().any(|&c| c != 0),
        seifert_pos: relevant.iter().any(|&c| c < 0),
        seifert_neg: relevant.iter().any(|&c| c > 0),
    }
}

fn ser_ratio<S: Serializer>(r: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InvariantReport {
    pub spec: String,
    pub phi: PhiTable,
    pub tau: i64,
    /// Set when `tau` is evaluated on a spec that is not symmetric.
    pub tau_flagged: bool,
    pub epsilon_zero: bool,
    pub epsilon_sign: i64,
    pub epsilon_convention_dependent: bool,
    pub big_n: i64,
    #[serde(rename = "genusLB", serialize_with = "ser_ratio")]
    pub genus_lb: Rational64,
    #[serde(rename = "genusLBCeil")]
    pub genus_lb_ceil: i64,
    #[serde(rename = "unknottingLB")]
    pub unknotting_lb: i64,
    #[serde(rename = "pU")]
    pub p_u: i64,
    #[serde(rename = "pV")]
    pub p_v: i64,
    pub symmetric: bool,
    pub lspace_obstruction: bool,
    pub seifert_pos_obstruction: bool,
    pub seifert_neg_obstruction: bool,
}

pub fn report(spec: &StandardSpec) -> InvariantReport {
    let (eps_zero, eps_sign) = epsilon(spec);
    let (n, g, u) = big_n_and_bounds(spec);
    let (p_u, p_v) = pu_pv(spec);
    let ob = obstructions(spec);
    let symmetric = is_symmetric(spec);
    InvariantReport {
        spec: spec.to_string(),
        phi: phi(spec),
        tau: tau(spec),
        tau_flagged: !symmetric,
        epsilon_zero: eps_zero,
        epsilon_sign: eps_sign,
        epsilon_convention_dependent: !eps_zero,
        big_n: n,
        genus_lb: g,
        genus_lb_ceil: g.ceil().to_integer(),
        unknotting_lb: u,
        p_u,
        p_v,
        symmetric,
        lspace_obstruction: ob.lspace,
        seifert_pos_obstruction: ob.seifert_pos,
        seifert_neg_obstruction: ob.seifert_neg,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditivityReport {
    pub product: StandardSpec,
    pub phi_additive: bool,
    pub p_additive: bool,
    pub shift_compatible: bool,
}

impl AdditivityReport {
    pub fn holds(&self) -> bool {
        self.phi_additive && self.p_additive && self.shift_compatible
    }
}

fn product_spec(a: &StandardSpec, b: &StandardSpec) -> Result<StandardSpec> {
    let c: FreeComplex = realize(a).tensor(&realize(b))?;
    Ok(standardize_complex(&c)?.spec)
}

/// The U-side shift map used by [`additivity_report`]: threshold `|a_1|`
/// (or `U_B`), multiplier `U_B`.
pub fn sample_shift(a: &StandardSpec) -> ShiftMap {
    let threshold = a
        .params()
        .first()
        .map(|b| SignedParam { sign: crate::ring::Sign::Plus, ..*b })
        .unwrap_or_else(|| SignedParam::plus(Side::U, 1, 0));
    ShiftMap::new(Side::U, Some(threshold), Monomial::U(Lattice::new(1, 0))).expect("valid shift map")
}

pub fn additivity_report(a: &StandardSpec, b: &StandardSpec) -> Result<AdditivityReport> {
    let product = product_spec(a, b)?;
    let phi_additive = phi(&product) == phi(a).add(&phi(b));
    let (pa, pb, pc) = (pu_pv(a), pu_pv(b), pu_pv(&product));
    let p_additive = pc == (pa.0 + pb.0, pa.1 + pb.1);
    let m = sample_shift(a);
    let lhs = shift_spec(&product, Some(&m), None)?;
    let rhs = product_spec(&shift_spec(a, Some(&m), None)?, &shift_spec(b, Some(&m), None)?)?;
    Ok(AdditivityReport { product, phi_additive, p_additive, shift_compatible: lhs == rhs })
}

pub fn additivity_check(a: &StandardSpec, b: &StandardSpec) -> Result<bool> {
    Ok(additivity_report(a, b)?.holds())
}

/// All parameters of `spec` lie in the image of `R`.
pub fn is_r_spec(spec: &StandardSpec) -> bool {
    spec.params().iter().all(|b| RingId::R.admits(b.exp))
}
