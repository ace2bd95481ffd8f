//! Local maps, extant coefficients and standardization.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::complex::{is_knotlike, normalize, paired_basis, FreeComplex, PairedBasis};
use crate::error::{domain, Error, Result};
use crate::ring::{
    grading_basis, mono_mul, param_compare, side_element, Monomial, RingElem,
    Side, Sign, SignedParam,
};
use crate::standard::{dual_spec, realize, SemistandardSpec, StandardSpec, Zigzag};
use crate::verify::verify_certificate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum MapKind {
    Full,
    Short,
}

/// A module map `f` with `f(x_i) = sum matrix[(i, g)] * g`, preserving `gr1`
/// and shifting `gr2` by `gr2_shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalMapCert {
    pub source: String,
    pub target: String,
    pub gr2_shift: i64,
    pub matrix: BTreeMap<(usize, usize), RingElem>,
    pub kind: MapKind,
}

impl LocalMapCert {
    /// Image of source generator `i`.
    pub fn image(&self, i: usize) -> impl Iterator<Item = (usize, &RingElem)> {
        self.matrix.range((i, 0)..=(i, usize::MAX)).map(|(&(_, g), c)| (g, c))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtantSet {
    pub u_coeffs: BTreeSet<Monomial>,
    pub v_coeffs: BTreeSet<Monomial>,
}

impl ExtantSet {
    pub fn side(&self, side: Side) -> &BTreeSet<Monomial> {
        match side {
            Side::U => &self.u_coeffs,
            Side::V => &self.v_coeffs,
        }
    }
}

/// Fails unless `c` is reduced, knotlike and normalized.
fn require_normalized(c: &FreeComplex) -> Result<()> {
    if !c.is_reduced() {
        return domain("expected a reduced complex");
    }
    let info = is_knotlike(c)?;
    if !info.knotlike {
        return Err(Error::NotKnotlike("expected exactly one tower on each side".into()));
    }
    if info.shift != (0, 0) {
        return domain(format!("complex is not normalized; shift by {:?} first", info.shift));
    }
    Ok(())
}

fn extant_from_basis(c: &FreeComplex, pb: &PairedBasis) -> BTreeSet<Monomial> {
    let support: BTreeSet<_> = c.generators.iter().map(|g| g.gr).collect();
    let mut out = BTreeSet::new();
    for pair in &pb.pairs {
        let y = c.gr(pair.source);
        for g in &support {
            if let Some(k) = side_element(c.ring, pb.side, (g.0 - y.0, g.1 - y.1)) {
                for m in mono_mul(pair.order, k).monomials() {
                    if m != Monomial::One {
                        out.insert(m);
                    }
                }
            }
        }
    }
    out
}

pub fn extant_coefficients(c: &FreeComplex) -> Result<ExtantSet> {
    if !c.is_reduced() || !is_knotlike(c)?.knotlike {
        return domain("extant coefficients are defined for reduced knotlike complexes");
    }
    Ok(ExtantSet {
        u_coeffs: extant_from_basis(c, &paired_basis(c, Side::U)?),
        v_coeffs: extant_from_basis(c, &paired_basis(c, Side::V)?),
    })
}

mod f2 {
    /// Affine system over F2 on `nvars` unknowns, rows stored as bitsets.
    pub struct System {
        nvars: usize,
        words: usize,
        rows: Vec<(Vec<u64>, bool)>,
    }

    impl System {
        pub fn new(nvars: usize) -> Self {
            System { nvars, words: nvars.div_ceil(64).max(1), rows: Vec::new() }
        }

        /// Adds `sum vars = rhs`; repeated variables cancel.
        pub fn push(&mut self, vars: &[usize], rhs: bool) {
            let mut row = vec![0u64; self.words];
            for &v in vars {
                row[v / 64] ^= 1 << (v % 64);
            }
            if row.iter().any(|&w| w != 0) || rhs {
                self.rows.push((row, rhs));
            }
        }

        /// Reduced row echelon form; free variables set to zero.
        pub fn solve(mut self) -> Option<Vec<bool>> {
            let mut pivots = Vec::new();
            let mut r = 0;
            for col in 0..self.nvars {
                let (w, b) = (col / 64, 1u64 << (col % 64));
                let Some(p) = (r..self.rows.len()).find(|&k| self.rows[k].0[w] & b != 0) else {
                    continue;
                };
                self.rows.swap(r, p);
                let (pivot_row, pivot_rhs) = self.rows[r].clone();
                for k in 0..self.rows.len() {
                    if k != r && self.rows[k].0[w] & b != 0 {
                        for (x, y) in self.rows[k].0.iter_mut().zip(&pivot_row) {
                            *x ^= y;
                        }
                        self.rows[k].1 ^= pivot_rhs;
                    }
                }
                pivots.push(col);
                r += 1;
            }
            if self.rows[r..].iter().any(|(_, rhs)| *rhs) {
                return None;
            }
            let mut x = vec![false; self.nvars];
            for (k, &col) in pivots.iter().enumerate() {
                x[col] = self.rows[k].1;
            }
            Some(x)
        }
    }
}

/// A target complex with its V-paired basis computed once.
pub struct PreparedTarget {
    complex: FreeComplex,
    basis: PairedBasis,
    tower: usize,
    label: String,
}

impl PreparedTarget {
    pub fn new(c: &FreeComplex, label: impl Into<String>) -> Result<Self> {
        require_normalized(c)?;
        let basis = paired_basis(c, Side::V)?;
        let tower = basis.unpaired[0];
        Ok(PreparedTarget { complex: c.clone(), basis, tower, label: label.into() })
    }

    pub fn complex(&self) -> &FreeComplex {
        &self.complex
    }

    /// Solves for a (short) local map out of the zig-zag `source`.
    pub fn find<Z: Zigzag + ?Sized>(&self, source: &Z, kind: MapKind) -> Result<Option<LocalMapCert>> {
        if source.ring() != self.complex.ring {
            return domain("source and target live over different rings");
        }
        let src = realize(source);
        let tgt = &self.basis.complex;
        let t_gr = tgt.gr(self.tower);
        let x0 = src.gr(0);
        if t_gr.0 != x0.0 {
            return domain("target tower generator is not in gr1 = 0");
        }
        let shift = t_gr.1 - x0.1;

        let mut vars: Vec<(usize, usize, Monomial)> = Vec::new();
        let mut by_source: Vec<Vec<usize>> = vec![Vec::new(); src.len()];
        let mut index: HashMap<(usize, usize, Monomial), usize> = HashMap::new();
        for i in 0..src.len() {
            let xi = src.gr(i);
            for g in 0..tgt.len() {
                let gg = tgt.gr(g);
                for m in grading_basis(src.ring, (xi.0 - gg.0, xi.1 + shift - gg.1)) {
                    index.insert((i, g, m), vars.len());
                    by_source[i].push(vars.len());
                    vars.push((i, g, m));
                }
            }
        }

        let last = src.len() - 1;
        let kept_side = Side::at_position(source.len());
        let mut system = f2::System::new(vars.len());
        for i in 0..src.len() {
            let mut terms: HashMap<(usize, Monomial), Vec<usize>> = HashMap::new();
            for (k, d) in src.boundary(i) {
                for &v in &by_source[k] {
                    let (_, g, m) = vars[v];
                    for p in d.mul_mono(m).monomials() {
                        terms.entry((g, p)).or_default().push(v);
                    }
                }
            }
            for &v in &by_source[i] {
                let (_, g, m) = vars[v];
                for (h, d) in tgt.boundary(g) {
                    for p in d.mul_mono(m).monomials() {
                        terms.entry((h, p)).or_default().push(v);
                    }
                }
            }
            let restrict = kind == MapKind::Short && i == last;
            for ((_, p), vs) in terms {
                if restrict && p.side() != Some(kept_side) {
                    continue;
                }
                system.push(&vs, false);
            }
        }
        let Some(&anchor) = index.get(&(0, self.tower, Monomial::One)) else {
            return Ok(None);
        };
        system.push(&[anchor], true);

        let Some(solution) = system.solve() else {
            return Ok(None);
        };
        let mut matrix: BTreeMap<(usize, usize), RingElem> = BTreeMap::new();
        for (v, &(i, g, m)) in vars.iter().enumerate() {
            if !solution[v] {
                continue;
            }
            for (h, c) in self.basis.change[g].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let slot = matrix.entry((i, h)).or_default();
                slot.add_assign(&c.mul_mono(m));
            }
        }
        matrix.retain(|_, c| !c.is_zero());
        Ok(Some(LocalMapCert {
            source: source_label(source),
            target: self.label.clone(),
            gr2_shift: shift,
            matrix,
            kind,
        }))
    }
}

fn source_label<Z: Zigzag + ?Sized>(z: &Z) -> String {
    if z.is_empty() {
        return "C(0)".into();
    }
    let parts: Vec<String> = z.params().iter().map(|p| p.to_string()).collect();
    format!("C({})", parts.join(", "))
}

/// Searches for a local map (full) or short local map from a zig-zag into
/// a reduced, knotlike, normalized complex.
pub fn find_local_map<Z: Zigzag + ?Sized>(
    source: &Z,
    target: &FreeComplex,
    kind: MapKind,
) -> Result<Option<LocalMapCert>> {
    PreparedTarget::new(target, "target")?.find(source, kind)
}

#[derive(Clone, Debug)]
pub struct Standardization {
    pub spec: StandardSpec,
    /// Local map from the standard complex to the input.
    pub forward: LocalMapCert,
    /// Local map from the dual standard complex to the dual input.
    pub backward: LocalMapCert,
}

/// One candidate test of the greedy search. `b = None` asks whether the
/// even-length `prefix` itself maps to the target by a full local map.
pub fn prefix_admits(
    target: &PreparedTarget,
    prefix: &[SignedParam],
    b: Option<SignedParam>,
) -> Result<bool> {
    let ring = target.complex.ring;
    let mut params = prefix.to_vec();
    let Some(b) = b else {
        let spec = StandardSpec::new(ring, params)?;
        return Ok(target.find(&spec, MapKind::Full)?.is_some());
    };
    params.push(b);
    let found = if params.len() % 2 == 0 {
        target.find(&StandardSpec::new(ring, params)?, MapKind::Short)?
    } else {
        target.find(&SemistandardSpec::new(ring, params)?, MapKind::Short)?
    };
    Ok(found.is_some())
}

/// Candidates at 1-based step `k`, greatest first; `None` is the neutral
/// parameter and only appears at odd steps.
pub fn candidates(extant: &ExtantSet, k: usize) -> Vec<Option<SignedParam>> {
    let side = Side::at_position(k);
    let mut params: Vec<SignedParam> = extant
        .side(side)
        .iter()
        .flat_map(|m| {
            [Sign::Plus, Sign::Minus].map(|s| SignedParam { side, sign: s, exp: m.exp() })
        })
        .collect();
    params.sort_by(|a, b| param_compare(b, a).unwrap_or(Ordering::Equal));
    let mut out: Vec<Option<SignedParam>> = Vec::with_capacity(params.len() + 1);
    out.extend(params.iter().filter(|p| p.is_positive()).map(|&p| Some(p)));
    if k % 2 == 1 {
        out.push(None);
    }
    out.extend(params.iter().filter(|p| !p.is_positive()).map(|&p| Some(p)));
    out
}

/// The standard representative of a reduced, knotlike, normalized complex,
/// with local maps in both directions.
pub fn standardize(c: &FreeComplex) -> Result<Standardization> {
    let target = PreparedTarget::new(c, "input")?;
    let extant = extant_coefficients(c)?;
    let limit = 2 * c.len();
    let mut prefix: Vec<SignedParam> = Vec::new();
    loop {
        let k = prefix.len() + 1;
        if prefix.len() > limit {
            return Err(Error::Internal(format!(
                "standardization exceeded {limit} parameters without terminating"
            )));
        }
        let mut chosen = None;
        for cand in candidates(&extant, k) {
            if prefix_admits(&target, &prefix, cand)? {
                chosen = Some(cand);
                break;
            }
        }
        match chosen {
            Some(Some(b)) => prefix.push(b),
            Some(None) => break,
            None => {
                return Err(Error::Internal(format!("no candidate succeeded at step {k}")));
            }
        }
    }
    let spec = StandardSpec::new(c.ring, prefix)?;
    let forward = target
        .find(&spec, MapKind::Full)?
        .ok_or_else(|| Error::Internal(format!("no local map from {spec} to the input")))?;
    verify_certificate(&realize(&spec), c, &forward, false)
        .map_err(|e| Error::Internal(format!("forward certificate rejected: {e}")))?;
    let dual_c = c.dual();
    let dual_s = dual_spec(&spec);
    let backward = PreparedTarget::new(&dual_c, "dual input")?
        .find(&dual_s, MapKind::Full)?
        .ok_or_else(|| Error::Internal(format!("no local map from the input to {spec}")))?;
    verify_certificate(&realize(&dual_s), &dual_c, &backward, false)
        .map_err(|e| Error::Internal(format!("backward certificate rejected: {e}")))?;
    Ok(Standardization { spec, forward, backward })
}

/// Reduces and normalizes an arbitrary valid complex.
pub fn prepare(c: &FreeComplex) -> Result<FreeComplex> {
    c.check()?;
    normalize(&c.reduce())
}

/// Reduce, normalize, standardize.
pub fn standardize_complex(c: &FreeComplex) -> Result<Standardization> {
    standardize(&prepare(c)?)
}

pub fn is_locally_equivalent(c1: &FreeComplex, c2: &FreeComplex) -> Result<bool> {
    Ok(standardize_complex(c1)?.spec == standardize_complex(c2)?.spec)
}

pub fn order_compare_complexes(c1: &FreeComplex, c2: &FreeComplex) -> Result<Ordering> {
    let a = standardize_complex(c1)?.spec;
    let b = standardize_complex(c2)?.spec;
    crate::standard::lex_compare(&a, &b)
}
