mod common;

use common::{barcode, parameter};
use proptest::prelude::*;
use thicket::barcode::{dualize, global_sections, global_sections_c, GradedBarcode};
use thicket::hom::{compose, thicken_morphism};
use thicket::scalar::Scalar;
use thicket::thicken::{convolution_ball, restriction, stalk_oracle, thicken};

/// Endpoints, midpoints between them, and two far points.
fn stalks_at(f: &GradedBarcode) -> Vec<Scalar> {
    let mut pts = f.finite_endpoints();
    let mids: Vec<_> = pts.windows(2).map(|w| w[0].midpoint(&w[1])).collect();
    pts.extend(mids);
    pts.extend([Scalar::int(-20), Scalar::int(20)]);
    pts
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn thickenings_compose_additively(f in barcode(6), a in parameter(-4, 4), b in parameter(-4, 4)) {
        prop_assert_eq!(thicken(&thicken(&f, &a), &b), thicken(&f, &(&a + &b)));
    }

    #[test]
    fn zero_thickening_is_the_identity(f in barcode(6)) {
        prop_assert_eq!(thicken(&f, &Scalar::zero()), f);
    }

    #[test]
    fn dual_swaps_the_sign(f in barcode(6), a in parameter(-4, 4)) {
        prop_assert_eq!(dualize(&thicken(&f, &a)), thicken(&dualize(&f), &(-&a)));
        prop_assert_eq!(dualize(&dualize(&f)), f);
    }

    #[test]
    fn sections_survive_positive_thickening(f in barcode(6), a in parameter(0, 4)) {
        let k = thicken(&f, &a);
        prop_assert_eq!(global_sections(&k), global_sections(&f));
        prop_assert_eq!(global_sections_c(&k), global_sections_c(&f));
    }

    #[test]
    fn ball_convolution_agrees(f in barcode(4), a in parameter(0, 3)) {
        prop_assert_eq!(convolution_ball(&f, &a), thicken(&f, &a));
    }

    #[test]
    fn stalks_match_the_oracle(f in barcode(4), a in parameter(-3, 3)) {
        let k = thicken(&f, &a);
        for t in stalks_at(&k) {
            prop_assert_eq!(stalk_oracle(&f, &a, &t), stalk_oracle(&k, &Scalar::zero(), &t));
        }
    }

    #[test]
    fn restrictions_compose(f in barcode(4), a in parameter(0, 2), s in parameter(0, 2), t in parameter(0, 2)) {
        let b = &a + &s;
        let c = &b + &t;
        let outer = compose(&restriction(&f, &b, &c).unwrap(), &restriction(&f, &a, &b).unwrap()).unwrap();
        prop_assert_eq!(outer, restriction(&f, &a, &c).unwrap());
    }

    #[test]
    fn thickening_carries_restrictions(f in barcode(4), a in parameter(0, 2), s in parameter(0, 2), c in parameter(0, 2)) {
        let b = &a + &s;
        let moved = thicken_morphism(&restriction(&f, &a, &b).unwrap(), &c);
        prop_assert_eq!(moved, restriction(&f, &(&a + &c), &(&b + &c)).unwrap());
    }
}
