//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use common::{brute_force_local_map, named_examples, pool, random_spec, scramble, spec};
use gridlocal::cli::{pipeline, run};
use gridlocal::complex::{monomial_image, quotient_homology};
use gridlocal::examples::{cable, zhou, CABLE_D_Y};
use gridlocal::invariants::{additivity_report, big_n_and_bounds, obstructions, phi, report, tau, tau_from_gradings, Obstructions};
use gridlocal::localeq::{find_local_map, standardize_complex, MapKind};
use gridlocal::ring::{elem_mul, lattice_compare, Lattice, RingId, Side};
use gridlocal::standard::{dual_spec, gradings, is_symmetric, lex_compare, realize, StandardSpec};
use gridlocal::verify::verify_certificate;
use num_rational::Rational64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, budget: Duration, what: &str) -> Result<(), String> {
    let e = t.elapsed();
    ensure(e < budget, || format!("{what} took {e:?}, budget {budget:?}"))
}

fn zhou_family() -> Check {
    let mut times = Vec::new();
    for n in 2..=5u32 {
        let t = Instant::now();
        let c = zhou(n).map_err(|e| e.to_string())?.base_change(RingId::X);
        ensure(c.validate().is_empty(), || format!("n={n}: base-changed complex is invalid"))?;
        let got = pipeline(&c.reduce(), 0).map_err(|e| format!("n={n}: {e}"))?.standardization.spec;
        let want = spec(&format!("C(-U[{n},{m}], +V[{n},{m}])", m = n - 1));
        ensure(got == want, || format!("n={n}: got {got}, want {want}"))?;
        let table = phi(&got);
        let e = Lattice::new(n as i64, n as i64 - 1);
        ensure(table.get(Side::U, e) == -1 && table.side(Side::U).count() == 1, || format!("n={n}: phi {table:?}"))?;
        let out = run(["gridlocal", "example", "zhou", "--n", &n.to_string(), "--emit", "spec"]);
        ensure(out.code == 0 && out.stdout.trim() == want.to_string(), || format!("n={n}: cli printed {:?}", out.stdout))?;
        within(t, Duration::from_secs(5), &format!("n={n}"))?;
        times.push(format!("{:.1?}", t.elapsed()));
    }
    Ok(format!("n=2..5 exact, times {}", times.join(" ")))
}

fn cable_reproduction() -> Check {
    let t = Instant::now();
    let fuv = cable();
    ensure(fuv.validate().is_empty(), || "FUV complex is invalid".into())?;
    let c = fuv.base_change(RingId::X);
    ensure(c.validate().is_empty(), || "base-changed complex is invalid".into())?;
    let reduced = c.reduce();
    ensure(reduced.len() == 5, || format!("reduced to {} generators", reduced.len()))?;
    let got = pipeline(&reduced, CABLE_D_Y).map_err(|e| e.to_string())?.standardization.spec;
    let want = spec("C(-U[1,1], +V[1,0], -U[1,0], +V[1,1])");
    ensure(got == want, || format!("got {got}"))?;
    within(t, Duration::from_secs(5), "cable")?;
    Ok(format!("{got}, 5 generators after reduction, {:.1?}", t.elapsed()))
}

fn zhou_gradings() -> Check {
    let g = gradings(&spec("C(-U[2,1], +V[2,1])"));
    ensure(g == vec![(0, 2), (3, 3), (2, 0)], || format!("got {g:?}"))?;
    Ok(format!("{g:?}"))
}

fn group_structure() -> Check {
    let t = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_0004);
    let pairs = 60;
    for _ in 0..pairs {
        let a = random_spec(&mut rng, RingId::X, 2, 2);
        let b = random_spec(&mut rng, RingId::X, 2, 2);
        let r = additivity_report(&a, &b).map_err(|e| format!("{a} x {b}: {e}"))?;
        ensure(r.phi_additive, || format!("{a} x {b}: phi not additive, product {}", r.product))?;
        ensure(r.p_additive, || format!("{a} x {b}: P_U/P_V not additive, product {}", r.product))?;
        ensure(r.shift_compatible, || format!("{a} x {b}: shift map does not commute with the product"))?;
        let ca = realize(&a);
        let inverse = standardize_complex(&ca.tensor(&ca.dual()).map_err(|e| e.to_string())?)
            .map_err(|e| format!("{a}: {e}"))?
            .spec;
        ensure(inverse == StandardSpec::trivial(RingId::X), || format!("{a} x dual: got {inverse}"))?;
    }
    within(t, Duration::from_secs(120), "group structure")?;
    Ok(format!("{pairs} random pairs, {:.1?}", t.elapsed()))
}

fn order_oracle() -> Check {
    let t = Instant::now();
    let specs = pool();
    let mut maps = 0;
    for a in &specs {
        for b in &specs {
            let target = realize(b);
            let le = lex_compare(a, b).map_err(|e| e.to_string())? != Ordering::Greater;
            let oracle = brute_force_local_map(a, &target);
            ensure(oracle.is_some() == le, || format!("{a} -> {b}: oracle {}, order {le}", oracle.is_some()))?;
            let solved = find_local_map(a, &target, MapKind::Full).map_err(|e| e.to_string())?;
            ensure(solved.is_some() == le, || format!("{a} -> {b}: solver disagrees"))?;
            for cert in oracle.iter().chain(&solved) {
                verify_certificate(&realize(a), &target, cert, false).map_err(|e| format!("{a} -> {b}: {e}"))?;
            }
            maps += usize::from(le);
        }
    }
    within(t, Duration::from_secs(60), "order")?;
    Ok(format!("{} specs, {} ordered pairs, {maps} maps certified, {:.1?}", specs.len(), specs.len().pow(2), t.elapsed()))
}

fn tau_consistency() -> Check {
    let mut checked = 0;
    for s in pool().iter().chain(&named_examples()) {
        if !is_symmetric(s) {
            continue;
        }
        ensure(tau(s) == tau_from_gradings(s), || format!("{s}: {} vs {}", tau(s), tau_from_gradings(s)))?;
        checked += 1;
    }
    for s in named_examples() {
        ensure(tau(&s) == -1, || format!("{s}: tau {}", tau(&s)))?;
    }
    Ok(format!("{checked} symmetric specs, Zhou and cable tau = -1"))
}

fn lattice_window() -> Vec<Lattice> {
    let mut v = Vec::new();
    for i in -4..=4 {
        for j in 0..=4 {
            let e = Lattice::new(i, j);
            if e.in_region() {
                v.push(e);
            }
        }
    }
    v
}

fn property_suite() -> Check {
    let t = Instant::now();
    let w = lattice_window();
    let cmp = |a: Lattice, b: Lattice| lattice_compare(a, b).unwrap();
    for &a in &w {
        for &b in &w {
            ensure(cmp(a, b) == cmp(b, a).reverse(), || format!("antisymmetry {a} {b}"))?;
            ensure((cmp(a, b) == Ordering::Equal) == (a == b), || format!("equality {a} {b}"))?;
            for &c in &w {
                if cmp(a, b) != Ordering::Greater && cmp(b, c) != Ordering::Greater {
                    ensure(cmp(a, c) != Ordering::Greater, || format!("transitivity {a} {b} {c}"))?;
                }
            }
        }
    }

    let mut rng = StdRng::seed_from_u64(0x5eed_0007);
    for _ in 0..40 {
        let base = realize(&random_spec(&mut rng, RingId::X, 4, 2));
        let mixed = scramble(&mut rng, &base, 12);
        ensure(mixed.validate().is_empty(), || "scrambled complex is invalid".into())?;
        let reduced = mixed.reduce();
        ensure(reduced.len() == base.len(), || "reduce left extra generators".into())?;
        for side in [Side::U, Side::V] {
            let (x, y) = (quotient_homology(&base, side), quotient_homology(&reduced, side));
            ensure(x.is_ok() && x == y, || format!("quotient homology changed on the {side:?} side"))?;
        }
    }

    for ring in [RingId::X, RingId::R] {
        for _ in 0..100 {
            let (a, b, c, d) = (rng.gen_range(0..5), rng.gen_range(0..5), rng.gen_range(0..5), rng.gen_range(0..5));
            let lhs = monomial_image(ring, a + c, b + d);
            let rhs = elem_mul(&monomial_image(ring, a, b), &monomial_image(ring, c, d));
            ensure(lhs == rhs, || format!("base change not multiplicative on U^{a}V^{b} * U^{c}V^{d} over {}", ring.tag()))?;
        }
    }

    for s in pool().iter().chain(&named_examples()) {
        let c = realize(s);
        let dd = c.dual().dual();
        ensure(dd.diff == c.diff && dd.generators.iter().zip(&c.generators).all(|(x, y)| x.gr == y.gr), || {
            format!("{s}: dual is not an involution")
        })?;
        ensure(dual_spec(&dual_spec(s)) == *s, || format!("{s}: dual_spec is not an involution"))?;
    }

    for s in named_examples() {
        ensure(is_symmetric(&s), || format!("{s} not symmetric"))?;
    }
    for s in named_examples().iter().take(4) {
        let o = obstructions(s);
        ensure(o == Obstructions { lspace: true, seifert_pos: true, seifert_neg: false }, || format!("{s}: {o:?}"))?;
    }

    let r_specs: Vec<StandardSpec> = (0..12).map(|_| random_spec(&mut rng, RingId::R, 4, 3)).collect();
    for a in &r_specs {
        let promoted = standardize_complex(&realize(a).promote_to_x()).map_err(|e| e.to_string())?.spec;
        ensure(promoted == a.promote_to_x(), || format!("{a}: promoted standardization {promoted}"))?;
        for b in &r_specs {
            let over_r = lex_compare(a, b).map_err(|e| e.to_string())?;
            let over_x = lex_compare(&a.promote_to_x(), &b.promote_to_x()).map_err(|e| e.to_string())?;
            ensure(over_r == over_x, || format!("{a} vs {b}: order changes under promotion"))?;
        }
    }

    within(t, Duration::from_secs(60), "property suite")?;
    Ok(format!("all properties hold, {:.1?}", t.elapsed()))
}

fn bounds() -> Check {
    for s in named_examples().iter().take(4) {
        let (n, g, u) = big_n_and_bounds(s);
        ensure((n, g, u) == (1, Rational64::new(1, 2), 1), || format!("{s}: N={n} genus={g} unknotting={u}"))?;
        let r = report(s);
        ensure(r.genus_lb.to_string() == "1/2" && r.unknotting_lb == 1, || format!("{s}: report {r:?}"))?;
    }
    Ok("Zhou n=2..5: N=1, genusLB=1/2, unknottingLB=1".into())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("zhou family reproduction", zhou_family),
        ("cable reproduction", cable_reproduction),
        ("zhou gradings", zhou_gradings),
        ("group structure", group_structure),
        ("order agrees with local maps", order_oracle),
        ("tau consistency", tau_consistency),
        ("property suite", property_suite),
        ("genus and unknotting bounds", bounds),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} [{name}]: PASS ({detail})", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} [{name}]: FAIL ({why})", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
