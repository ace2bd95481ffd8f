//! Built-in complexes over `F2[U,V]`.

use std::collections::BTreeMap;

use crate::complex::{FuvComplex, Generator, Poly};
use crate::error::{domain, Result};

fn poly(terms: &[(u32, u32)]) -> Poly {
    terms.iter().copied().collect()
}

/// Generators `x0, x1, y` with `d x0 = U^(n-1) V^n y` and
/// `d x1 = U^n V^(n-1) y`.
pub fn zhou(n: u32) -> Result<FuvComplex> {
    if n < 2 {
        return domain("the family starts at n = 2");
    }
    let top = 2 * n as i64 - 1;
    let generators = vec![
        Generator::new("x0", (2, 0)),
        Generator::new("x1", (0, 2)),
        Generator::new("y", (top, top)),
    ];
    let mut diff = BTreeMap::new();
    diff.insert((0, 2), poly(&[(n - 1, n)]));
    diff.insert((1, 2), poly(&[(n, n - 1)]));
    Ok(FuvComplex { generators, diff })
}

/// Five-generator model `E, F, G, J, K` with `dF = UV E`,
/// `dG = U E + V J`, `dK = UV J`.
pub fn cable() -> FuvComplex {
    let generators = vec![
        Generator::new("E", (1, -1)),
        Generator::new("F", (0, -2)),
        Generator::new("G", (0, 0)),
        Generator::new("J", (-1, 1)),
        Generator::new("K", (-2, 0)),
    ];
    let mut diff = BTreeMap::new();
    diff.insert((1, 0), poly(&[(1, 1)]));
    diff.insert((2, 0), poly(&[(1, 0)]));
    diff.insert((2, 3), poly(&[(0, 1)]));
    diff.insert((4, 3), poly(&[(1, 1)]));
    FuvComplex { generators, diff }
}

/// Ambient shift under which [`cable`] is normalized.
pub const CABLE_D_Y: i64 = -2;
