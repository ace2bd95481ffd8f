mod common;

use std::cmp::Ordering;

use common::{random_param, random_spec};
use gridlocal::complex::{is_knotlike, normalize};
use gridlocal::ring::{RingId, Side};
use gridlocal::standard::{
    dual_spec, gradings, is_symmetric, lex_compare, read_standard, realize, reverse_spec, SemistandardSpec,
    StandardSpec, Zigzag,
};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn spec_from(seed: u64, ring: RingId) -> StandardSpec {
    random_spec(&mut StdRng::seed_from_u64(seed), ring, 6, 3)
}

fn ring() -> impl Strategy<Value = RingId> {
    prop_oneof![Just(RingId::X), Just(RingId::R)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn realizations_are_normalized_knotlike(seed in any::<u64>(), r in ring()) {
        let c = realize(&spec_from(seed, r));
        prop_assert!(c.validate().is_empty());
        prop_assert!(c.is_reduced());
        let info = is_knotlike(&c).unwrap();
        prop_assert!(info.knotlike);
        prop_assert_eq!(info.shift, (0, 0));
    }

    #[test]
    fn endpoint_gradings_sum_the_parameters(seed in any::<u64>(), r in ring()) {
        let s = spec_from(seed, r);
        let g = gradings(&s);
        let signs: i64 = s.params().iter().map(|b| b.sign.value()).sum();
        let g1: i64 = s.params().iter().map(|b| b.grading().0).sum();
        let g2: i64 = s.params().iter().map(|b| b.grading().1).sum();
        prop_assert_eq!(g[s.len()].0, signs + g1);
        prop_assert_eq!(-g[0].1, signs + g2);
        prop_assert_eq!(g[0].0, 0);
        prop_assert_eq!(g[s.len()].1, 0);
    }

    #[test]
    fn lex_order_is_total(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (a, b, c) = (spec_from(a, RingId::X), spec_from(b, RingId::X), spec_from(c, RingId::X));
        let ab = lex_compare(&a, &b).unwrap();
        prop_assert_eq!(ab, lex_compare(&b, &a).unwrap().reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        let bc = lex_compare(&b, &c).unwrap();
        if ab != Ordering::Greater && bc != Ordering::Greater {
            prop_assert_ne!(lex_compare(&a, &c).unwrap(), Ordering::Greater);
        }
    }

    #[test]
    fn dual_spec_realizes_the_dual(seed in any::<u64>()) {
        let s = spec_from(seed, RingId::X);
        let d = normalize(&realize(&s).dual()).unwrap();
        let r = realize(&dual_spec(&s));
        prop_assert_eq!(&d.diff, &r.diff);
        prop_assert!(d.generators.iter().zip(&r.generators).all(|(x, y)| x.gr == y.gr));
    }

    #[test]
    fn symmetry_is_preserved_by_duality(seed in any::<u64>()) {
        let s = spec_from(seed, RingId::X);
        prop_assert_eq!(is_symmetric(&s), is_symmetric(&dual_spec(&s)));
        prop_assert_eq!(is_symmetric(&s), reverse_spec(&s) == s);
    }

    #[test]
    fn parameters_are_read_back(seed in any::<u64>(), r in ring()) {
        let s = spec_from(seed, r);
        if !s.is_empty() {
            prop_assert_eq!(read_standard(&realize(&s)).unwrap(), s.clone());
        }
        prop_assert_eq!(s.to_string().parse::<StandardSpec>().unwrap(), s);
    }

    #[test]
    fn semistandard_start_at_origin(seed in any::<u64>(), len in 0usize..4) {
        let mut rng = StdRng::seed_from_u64(seed);
        let params = (1..=2 * len + 1).map(|k| random_param(&mut rng, RingId::X, Side::at_position(k), 3)).collect();
        let s = SemistandardSpec::new(RingId::X, params).unwrap();
        prop_assert_eq!(gradings(&s)[0], (0, 0));
        prop_assert!(realize(&s).validate().is_empty());
    }
}

#[test]
fn spec_construction_rejects_bad_input() {
    assert!("C(-U[2,1])".parse::<StandardSpec>().is_err());
    assert!("C(-V[2,1], +U[2,1])".parse::<StandardSpec>().is_err());
    assert!("R:C(-U[2,1], +V[2,1])".parse::<StandardSpec>().is_err());
    assert!("C(-U[0,0], +V[1,0])".parse::<StandardSpec>().is_err());
    assert_eq!("C(0)".parse::<StandardSpec>().unwrap(), StandardSpec::trivial(RingId::X));
}
