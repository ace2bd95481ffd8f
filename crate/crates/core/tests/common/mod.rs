#![allow(dead_code)]

use std::collections::BTreeMap;

use gridlocal::localeq::{LocalMapCert, MapKind};
use gridlocal::ring::{elem_mul, Lattice, Monomial, RingElem, RingId, Side, Sign, SignedParam};
use gridlocal::standard::{realize, StandardSpec};
use gridlocal::verify::verify_certificate;
use gridlocal::FreeComplex;
use rand::rngs::StdRng;
use rand::Rng;

pub fn spec(s: &str) -> StandardSpec {
    s.parse().unwrap_or_else(|e| panic!("bad spec {s}: {e}"))
}

/// Every monomial of `ring` in bigrading `g`, found by scanning exponents
/// rather than solving for them.
pub fn monomials_in(ring: RingId, g: (i64, i64)) -> Vec<Monomial> {
    let mut out = Vec::new();
    if g == (0, 0) {
        out.push(Monomial::One);
    }
    for i in -12..=12 {
        for j in 0..=12 {
            let e = Lattice::new(i, j);
            if !e.in_region() || !ring.admits(e) {
                continue;
            }
            for m in [Monomial::U(e), Monomial::V(e)] {
                if m.grading() == g {
                    out.push(m);
                }
            }
        }
    }
    out
}

/// Exhaustive backtracking search for a local map `realize(source) -> target`,
/// accepted only if the independent checker passes it on the V side.
pub fn brute_force_local_map(source: &StandardSpec, target: &FreeComplex) -> Option<LocalMapCert> {
    let src = realize(source);
    let shift = target.gr(0).1 - src.gr(0).1;
    let n = src.len();
    let options: Vec<Vec<(usize, Monomial)>> = (0..n)
        .map(|i| {
            let xi = src.gr(i);
            let mut v = Vec::new();
            for g in 0..target.len() {
                let gg = target.gr(g);
                for m in monomials_in(target.ring, (xi.0 - gg.0, xi.1 + shift - gg.1)) {
                    v.push((g, m));
                }
            }
            assert!(v.len() <= 16, "search space too large for the oracle");
            v
        })
        .collect();

    let mut images: Vec<BTreeMap<usize, RingElem>> = vec![BTreeMap::new(); n];
    let mut found = None;
    search(&src, target, &options, shift, 0, &mut images, &mut found);
    found
}

fn image_of(opts: &[(usize, Monomial)], mask: u32) -> BTreeMap<usize, RingElem> {
    let mut out: BTreeMap<usize, RingElem> = BTreeMap::new();
    for (b, &(g, m)) in opts.iter().enumerate() {
        if mask >> b & 1 == 1 {
            out.entry(g).or_default().toggle(m);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn add(acc: &mut BTreeMap<usize, RingElem>, k: usize, c: &RingElem) {
    acc.entry(k).or_default().add_assign(c);
    acc.retain(|_, c| !c.is_zero());
}

fn identity_holds(src: &FreeComplex, tgt: &FreeComplex, images: &[BTreeMap<usize, RingElem>], j: usize) -> bool {
    let mut lhs = BTreeMap::new();
    for (k, d) in src.boundary(j) {
        for (g, c) in &images[k] {
            add(&mut lhs, *g, &elem_mul(d, c));
        }
    }
    let mut rhs = BTreeMap::new();
    for (g, c) in &images[j] {
        for (h, d) in tgt.boundary(*g) {
            add(&mut rhs, h, &elem_mul(d, c));
        }
    }
    lhs == rhs
}

fn search(
    src: &FreeComplex,
    tgt: &FreeComplex,
    options: &[Vec<(usize, Monomial)>],
    shift: i64,
    i: usize,
    images: &mut Vec<BTreeMap<usize, RingElem>>,
    found: &mut Option<LocalMapCert>,
) {
    if found.is_some() {
        return;
    }
    if i == src.len() {
        let mut matrix = BTreeMap::new();
        for (k, img) in images.iter().enumerate() {
            for (g, c) in img {
                matrix.insert((k, *g), c.clone());
            }
        }
        let cert = LocalMapCert {
            source: "oracle".into(),
            target: "oracle".into(),
            gr2_shift: shift,
            matrix,
            kind: MapKind::Full,
        };
        if verify_certificate(src, tgt, &cert, false).is_ok() {
            *found = Some(cert);
        }
        return;
    }
    for mask in 0..(1u32 << options[i].len()) {
        images[i] = image_of(&options[i], mask);
        let ready = |j: usize| j <= i && src.boundary(j).all(|(k, _)| k <= i);
        if (0..=i).filter(|&j| ready(j)).all(|j| identity_holds(src, tgt, images, j)) {
            search(src, tgt, options, shift, i + 1, images, found);
            if found.is_some() {
                return;
            }
        }
    }
    images[i].clear();
}

/// A random parameter on `side` with `|i|, |j| <= bound`.
pub fn random_param(rng: &mut StdRng, ring: RingId, side: Side, bound: i64) -> SignedParam {
    loop {
        let i = rng.gen_range(-bound..=bound);
        let j = if ring == RingId::R { 0 } else { rng.gen_range(0..=bound) };
        let e = Lattice::new(i, j);
        if e.in_region() && ring.admits(e) {
            let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
            return SignedParam::new(side, sign, e).unwrap();
        }
    }
}

/// A random standard spec with at most `max_len` parameters.
pub fn random_spec(rng: &mut StdRng, ring: RingId, max_len: usize, bound: i64) -> StandardSpec {
    let len = 2 * rng.gen_range(0..=max_len / 2);
    let params = (1..=len).map(|k| random_param(rng, ring, Side::at_position(k), bound)).collect();
    StandardSpec::new(ring, params).unwrap()
}

/// Small specs for order tests: every relative position of short
/// sequences, plus two of length four.
pub fn pool() -> Vec<StandardSpec> {
    [
        "C(0)",
        "C(-U[1,0], +V[1,0])",
        "C(+U[1,0], -V[1,0])",
        "C(-U[2,0], +V[2,0])",
        "C(+U[2,0], -V[2,0])",
        "C(-U[2,1], +V[2,1])",
        "C(+U[2,1], -V[2,1])",
        "C(-U[3,2], +V[3,2])",
        "C(-U[0,1], +V[0,1])",
        "C(+U[-1,1], -V[-1,1])",
        "C(-U[1,1], +V[1,1])",
        "C(+U[1,0], -V[2,0])",
        "C(-U[1,1], +V[1,0], -U[1,0], +V[1,1])",
        "C(+U[1,0], -V[1,1], +U[1,1], -V[1,0])",
    ]
    .iter()
    .map(|s| spec(s))
    .collect()
}

/// The Zhou and cable specs.
pub fn named_examples() -> Vec<StandardSpec> {
    let mut v: Vec<StandardSpec> = (2..=5).map(|n| spec(&format!("C(-U[{n},{}], +V[{n},{}])", n - 1, n - 1))).collect();
    v.push(spec("C(-U[1,1], +V[1,0], -U[1,0], +V[1,1])"));
    v
}

/// Rewrites `c` in the basis `e_a' = e_a + coeff * e_b`.
pub fn elementary_change(c: &mut FreeComplex, a: usize, b: usize, coeff: &RingElem) {
    let row_b: Vec<(usize, RingElem)> = c.boundary(b).map(|(t, e)| (t, e.clone())).collect();
    for (t, e) in row_b {
        c.add_entry(a, t, &elem_mul(coeff, &e));
    }
    let col_a: Vec<(usize, RingElem)> = (0..c.len()).filter_map(|x| c.entry(x, a).map(|e| (x, e.clone()))).collect();
    for (x, e) in col_a {
        c.add_entry(x, b, &elem_mul(&e, coeff));
    }
}

/// `c` plus an acyclic unit pair, hidden by random homogeneous changes of basis.
pub fn scramble(rng: &mut StdRng, c: &FreeComplex, steps: usize) -> FreeComplex {
    let anchor = c.gr(rng.gen_range(0..c.len()));
    let low = (anchor.0 + 2 * rng.gen_range(-1..=1), anchor.1 + 2 * rng.gen_range(-1..=1));
    let mut pair = FreeComplex::new(
        c.ring,
        vec![
            gridlocal::Generator::new("z", (low.0 + 1, low.1 + 1)),
            gridlocal::Generator::new("w", low),
        ],
    );
    pair.set_entry(0, 1, RingElem::one());
    let mut out = c.direct_sum(&pair).unwrap();
    let n = out.len();
    for _ in 0..steps {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a == b {
            continue;
        }
        let (ga, gb) = (out.gr(a), out.gr(b));
        let opts = monomials_in(out.ring, (ga.0 - gb.0, ga.1 - gb.1));
        if opts.is_empty() {
            continue;
        }
        let coeff = RingElem::from(opts[rng.gen_range(0..opts.len())]);
        elementary_change(&mut out, a, b, &coeff);
    }
    out
}
