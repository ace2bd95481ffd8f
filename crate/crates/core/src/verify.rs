//! Independent audit of local-map certificates.
//!
//! Chain-map identities are evaluated by direct multiplication. Locality is
//! tested through the localized complex: after inverting one side, each
//! bigrading of the chain group is an F2-vector space with one basis vector
//! per generator of matching parity, so tower questions become rank
//! computations on 0/1 matrices.

use std::collections::BTreeMap;

use crate::complex::FreeComplex;
use crate::localeq::{LocalMapCert, MapKind};
use crate::ring::{elem_mul, side_element, Grading, RingElem, Side};

type Vector = Vec<bool>;

fn rank(mut vs: Vec<Vector>) -> usize {
    let mut r = 0;
    let width = vs.first().map_or(0, Vec::len);
    for col in 0..width {
        let Some(p) = (r..vs.len()).find(|&k| vs[k][col]) else { continue };
        vs.swap(r, p);
        let pivot = vs[r].clone();
        for v in vs.iter_mut().skip(r + 1) {
            if v[col] {
                for (x, y) in v.iter_mut().zip(&pivot) {
                    *x ^= *y;
                }
            }
        }
        r += 1;
    }
    r
}

/// Basis of `{z : m z = 0}` for a row-major 0/1 matrix with `ncols` columns.
fn kernel(m: &[Vector], ncols: usize) -> Vec<Vector> {
    let mut rows: Vec<Vector> = m.to_vec();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&k| rows[k][col]) else { continue };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && row[col] {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= *y;
                }
            }
        }
        pivot_cols.push(col);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut z = vec![false; ncols];
            z[f] = true;
            for (k, &pc) in pivot_cols.iter().enumerate() {
                z[pc] = rows[k][f];
            }
            z
        })
        .collect()
}

/// Survives the quotient by the opposite ideal.
fn survives(c: &RingElem, side: Side) -> bool {
    c.scalar || !c.part(side).is_empty()
}

/// Checks that `vec`, an element of bigrading `g`, represents a generator of
/// the tower of `H(target / m_opposite)` modulo torsion.
fn tower_generator(target: &FreeComplex, vec: &BTreeMap<usize, RingElem>, side: Side, g: Grading) -> Result<(), String> {
    let n = target.len();
    let parity = |k: usize| target.gr(k).0.rem_euclid(2);
    let p0 = g.0.rem_euclid(2);
    let same: Vec<usize> = (0..n).filter(|&k| parity(k) == p0).collect();
    let other: Vec<usize> = (0..n).filter(|&k| parity(k) != p0).collect();
    let arrow = |from: usize, to: usize| target.entry(from, to).is_some_and(|c| survives(c, side));

    let v: Vector = same.iter().map(|h| vec.get(h).is_some_and(|c| survives(c, side))).collect();
    if !v.iter().any(|&b| b) {
        return Err("tower image vanishes modulo the opposite ideal".into());
    }
    for &k in &other {
        let hits = same.iter().zip(&v).filter(|&(&h, &bit)| bit && arrow(h, k)).count();
        if hits % 2 == 1 {
            return Err("tower image is not a cycle".into());
        }
    }
    // Columns of the localized boundary map into the chain group at `g`.
    let boundaries: Vec<Vector> = other.iter().map(|&k| same.iter().map(|&h| arrow(k, h)).collect()).collect();
    let base = rank(boundaries.clone());
    let mut with_v = boundaries.clone();
    with_v.push(v);
    if rank(with_v) == base {
        return Err("tower image is a boundary after localization".into());
    }

    // Nothing one step higher in the tower direction may survive.
    let up = match side {
        Side::U => (g.0 + 2, g.1),
        Side::V => (g.0, g.1 + 2),
    };
    let avail: Vec<usize> = same
        .iter()
        .copied()
        .filter(|&h| {
            let gh = target.gr(h);
            side_element(target.ring, side, (up.0 - gh.0, up.1 - gh.1)).is_some()
        })
        .collect();
    let d_avail: Vec<Vector> = other.iter().map(|&k| avail.iter().map(|&h| arrow(h, k)).collect()).collect();
    let mut all = boundaries;
    for z in kernel(&d_avail, avail.len()) {
        all.push(same.iter().map(|h| avail.iter().zip(&z).any(|(a, &bit)| bit && a == h)).collect());
    }
    if rank(all) != base {
        return Err("tower image is divisible in the tower".into());
    }
    Ok(())
}

fn add_into(acc: &mut BTreeMap<usize, RingElem>, k: usize, c: &RingElem) {
    let slot = acc.entry(k).or_default();
    slot.add_assign(c);
    if slot.is_zero() {
        acc.remove(&k);
    }
}

/// Audits `cert` as a map from `source` (a realized zig-zag on `x_0..x_n`)
/// to `target`. With `check_u_tower` the image of `x_n` is also required to
/// generate the U tower.
pub fn verify_certificate(
    source: &FreeComplex,
    target: &FreeComplex,
    cert: &LocalMapCert,
    check_u_tower: bool,
) -> Result<(), String> {
    let (ns, nt) = (source.len(), target.len());
    let s = cert.gr2_shift;
    let mut images: Vec<BTreeMap<usize, RingElem>> = vec![BTreeMap::new(); ns];
    for (&(i, g), c) in &cert.matrix {
        if i >= ns || g >= nt {
            return Err(format!("entry ({i}, {g}) is out of range"));
        }
        let (a, b) = (source.gr(i), target.gr(g));
        let want = (a.0 - b.0, a.1 + s - b.1);
        if c.grading() != Some(want) || !c.is_valid_in(target.ring) {
            return Err(format!("entry ({i}, {g}) = {c} does not have grading {want:?}"));
        }
        images[i].insert(g, c.clone());
    }

    let last = ns - 1;
    let kept = Side::at_position(last);
    for i in 0..ns {
        let mut lhs = BTreeMap::new();
        for (k, d) in source.boundary(i) {
            for (g, c) in &images[k] {
                add_into(&mut lhs, *g, &elem_mul(d, c));
            }
        }
        let mut rhs = BTreeMap::new();
        for (g, c) in &images[i] {
            for (h, d) in target.boundary(*g) {
                add_into(&mut rhs, h, &elem_mul(d, c));
            }
        }
        let ok = if cert.kind == MapKind::Short && i == last {
            let keys: std::collections::BTreeSet<usize> = lhs.keys().chain(rhs.keys()).copied().collect();
            keys.into_iter().all(|h| {
                let z = RingElem::zero();
                lhs.get(&h).unwrap_or(&z).project(kept) == rhs.get(&h).unwrap_or(&z).project(kept)
            })
        } else {
            lhs == rhs
        };
        if !ok {
            return Err(format!("chain-map identity fails at x{i}"));
        }
    }

    let g0 = (source.gr(0).0, source.gr(0).1 + s);
    tower_generator(target, &images[0], Side::V, g0).map_err(|e| format!("V side: {e}"))?;
    if check_u_tower {
        let gn = (source.gr(last).0, source.gr(last).1 + s);
        tower_generator(target, &images[last], Side::U, gn).map_err(|e| format!("U side: {e}"))?;
    }
    Ok(())
}
