mod common;

use common::{circle_sheaf, parameter};
use proptest::prelude::*;
use thicket::circle::{
    circle_global_sections, circle_stalk, circle_stalk_oracle, circle_thicken, decompose_cyclic, fourier_sato,
    sample_points, CyclicModel, Direction,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn transform_is_invertible(f in circle_sheaf(2, true)) {
        prop_assert_eq!(fourier_sato(&fourier_sato(&f, Direction::Forward), Direction::Inverse), f.clone());
        prop_assert_eq!(fourier_sato(&fourier_sato(&f, Direction::Inverse), Direction::Forward), f);
    }

    #[test]
    fn thickenings_compose_additively(f in circle_sheaf(3, true), a in parameter(-3, 3), b in parameter(-3, 3)) {
        prop_assert_eq!(circle_thicken(&circle_thicken(&f, &a), &b), circle_thicken(&f, &(&a + &b)));
    }

    #[test]
    fn bands_are_fixed(f in circle_sheaf(3, true), a in parameter(-3, 3)) {
        let k = circle_thicken(&f, &a);
        prop_assert_eq!(k.bands(), f.bands());
    }

    #[test]
    fn sections_survive_positive_thickening(f in circle_sheaf(2, true), a in parameter(0, 3)) {
        prop_assert_eq!(circle_global_sections(&circle_thicken(&f, &a)), circle_global_sections(&f));
    }

    #[test]
    fn stalks_match_the_oracle(f in circle_sheaf(2, true), a in parameter(-3, 3)) {
        let k = circle_thicken(&f, &a);
        for x in sample_points(&k) {
            prop_assert_eq!(circle_stalk_oracle(&f, &a, &x), circle_stalk(&k, &x));
        }
    }

    #[test]
    fn cyclic_models_decompose_back(f in circle_sheaf(2, true)) {
        let model = CyclicModel::of_sheaf(&f, &[]).unwrap();
        prop_assert_eq!(decompose_cyclic(&model).unwrap(), f);
    }
}
