mod common;

use std::cmp::Ordering;

use common::{random_spec, scramble};
use gridlocal::examples::{cable, zhou, CABLE_D_Y};
use gridlocal::localeq::{
    candidates, extant_coefficients, prefix_admits, prepare, standardize_complex, PreparedTarget,
};
use gridlocal::ring::{compare_with_one, RingId};
use gridlocal::standard::{dual_spec, realize, StandardSpec, Zigzag};
use gridlocal::verify::verify_certificate;
use gridlocal::FreeComplex;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn product(seed: u64) -> FreeComplex {
    let mut rng = StdRng::seed_from_u64(seed);
    let a = random_spec(&mut rng, RingId::X, 4, 2);
    let b = random_spec(&mut rng, RingId::X, 2, 2);
    let c = realize(&a).tensor(&realize(&b)).unwrap();
    scramble(&mut rng, &c, 8)
}

fn built_in() -> Vec<FreeComplex> {
    let mut v: Vec<FreeComplex> = (2..=4).map(|n| zhou(n).unwrap().base_change(RingId::X)).collect();
    v.push(cable().base_change(RingId::X).shifted((-CABLE_D_Y, -CABLE_D_Y)));
    v
}

/// At every greedy step the successful candidates are exactly those at or
/// below the chosen one.
fn check_monotone(c: &FreeComplex) -> Result<(), String> {
    let c = prepare(c).map_err(|e| e.to_string())?;
    let spec = standardize_complex(&c).map_err(|e| e.to_string())?.spec;
    let target = PreparedTarget::new(&c, "c").map_err(|e| e.to_string())?;
    let extant = extant_coefficients(&c).map_err(|e| e.to_string())?;
    let params = spec.params();
    for k in 1..=params.len() + 1 {
        let prefix = &params[..k - 1];
        let chosen = params.get(k - 1);
        for cand in candidates(&extant, k) {
            let ok = prefix_admits(&target, prefix, cand).map_err(|e| e.to_string())?;
            let below = compare_with_one(cand.as_ref(), chosen).map_err(|e| e.to_string())? != Ordering::Greater;
            if ok != below {
                return Err(format!("{spec}, step {k}: candidate {cand:?} admitted={ok}, at or below chosen={below}"));
            }
        }
    }
    Ok(())
}

#[test]
fn products_with_duals_are_trivial_for_built_in_examples() {
    for c in built_in() {
        let t = c.tensor(&c.dual()).unwrap();
        assert_eq!(standardize_complex(&t).unwrap().spec, StandardSpec::trivial(RingId::X));
    }
}

#[test]
fn greedy_search_is_monotone_on_built_in_examples() {
    for c in built_in() {
        check_monotone(&c).unwrap();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn scrambling_does_not_change_the_class(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let s = random_spec(&mut rng, RingId::X, 4, 2);
        let mixed = scramble(&mut rng, &realize(&s), 12);
        prop_assert_eq!(standardize_complex(&mixed).unwrap().spec, s);
    }

    #[test]
    fn standardize_is_idempotent(seed in any::<u64>()) {
        let s = standardize_complex(&product(seed)).unwrap().spec;
        prop_assert_eq!(standardize_complex(&realize(&s)).unwrap().spec, s);
    }

    #[test]
    fn standardize_commutes_with_duality(seed in any::<u64>()) {
        let c = product(seed);
        let s = standardize_complex(&c).unwrap().spec;
        prop_assert_eq!(standardize_complex(&c.dual()).unwrap().spec, dual_spec(&s));
    }

    #[test]
    fn certificates_pass_the_checker(seed in any::<u64>()) {
        let c = prepare(&product(seed)).unwrap();
        let st = standardize_complex(&c).unwrap();
        prop_assert!(verify_certificate(&realize(&st.spec), &c, &st.forward, false).is_ok());
        let back = verify_certificate(&realize(&dual_spec(&st.spec)), &c.dual(), &st.backward, false);
        prop_assert!(back.is_ok());
    }

    #[test]
    fn greedy_search_is_monotone(seed in any::<u64>()) {
        prop_assert!(check_monotone(&product(seed)).is_ok(), "{:?}", check_monotone(&product(seed)));
    }

    #[test]
    fn promotion_from_r_preserves_the_class(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let s = random_spec(&mut rng, RingId::R, 4, 3);
        let over_r = standardize_complex(&realize(&s)).unwrap().spec;
        prop_assert_eq!(&over_r, &s);
        let over_x = standardize_complex(&realize(&s).promote_to_x()).unwrap().spec;
        prop_assert_eq!(over_x, s.promote_to_x());
    }
}
