//! The thickening seed on spiral sums, for the extension engine.

use super::{
    circle_compose, circle_restriction, circle_thicken, circle_thicken_morphism, CircleMorphism,
    CircleSheaf,
};
use crate::error::{Error, Result};
use crate::extend::{Fault, Mode, SeedFamily, ThickeningAction};
use crate::scalar::Scalar;

/// Acts on spiral sums only: `apply` refuses bands, so every object the
/// engine builds has an identity morphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CircleAction {
    pub fault: Fault,
}

impl ThickeningAction for CircleAction {
    type Object = CircleSheaf;
    type Morphism = CircleMorphism;

    fn apply(&self, a: &Scalar, x: &CircleSheaf) -> Result<CircleSheaf> {
        if x.has_bands() {
            return Err(Error::UnsupportedBands(format!("circle seed on {x}")));
        }
        Ok(circle_thicken(x, a))
    }

    fn restrict(&self, a: &Scalar, b: &Scalar, x: &CircleSheaf) -> Result<CircleMorphism> {
        let rho = circle_restriction(x, a, b)?;
        match self.fault {
            Fault::None => Ok(rho),
            Fault::ZeroRestriction => CircleMorphism::zero(rho.source().clone(), rho.target().clone()),
        }
    }

    fn apply_morphism(&self, a: &Scalar, m: &CircleMorphism) -> Result<CircleMorphism> {
        circle_thicken_morphism(m, a)
    }

    fn compose(&self, m1: &CircleMorphism, m2: &CircleMorphism) -> Result<CircleMorphism> {
        circle_compose(m1, m2)
    }

    fn identity(&self, x: &CircleSheaf) -> CircleMorphism {
        CircleMorphism::identity(x).expect("circle seed objects are spiral sums")
    }

    fn source(&self, m: &CircleMorphism) -> CircleSheaf {
        m.source().clone()
    }

    fn target(&self, m: &CircleMorphism) -> CircleSheaf {
        m.target().clone()
    }
}

/// The seed on the circle of circumference `c`, with step `α = C/8`.
pub fn circle_seed(c: &Scalar, mode: Mode, fault: Fault) -> Result<SeedFamily<CircleAction>> {
    SeedFamily::new(c / &Scalar::int(8), mode, CircleAction { fault })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barcode::Bar;
    use crate::circle::{circle_stalk, circle_stalk_oracle, default_circumference, sample_points};

    fn sheaf(bars: &[&str]) -> CircleSheaf {
        let bars = bars.iter().map(|s| Bar::new(s.parse().unwrap(), 0)).collect();
        CircleSheaf::spirals_only(default_circumference(), 2, bars).unwrap()
    }

    #[test]
    fn extension_matches_direct_thickening() {
        let seed = circle_seed(&default_circumference(), Mode::TwoSided, Fault::None).unwrap();
        let f = sheaf(&["[0,1]", "(1,3)", "[2,3)"]);
        for a in [Scalar::new(7, 3), Scalar::new(-5, 4), Scalar::int(2)] {
            let got = seed.extend_apply(&a, &f).unwrap();
            assert_eq!(got, circle_thicken(&f, &a), "a = {a}");
        }
    }

    #[test]
    fn lambda_independence_on_a_closed_arc() {
        let c = default_circumference();
        let seed = circle_seed(&c, Mode::NonNegative, Fault::None).unwrap();
        let f = sheaf(&["[0,1]"]);
        let a = &c / &Scalar::int(2);
        assert!(seed.lambda_independence(&a, &f).unwrap());
        let out = seed.extend_apply(&a, &f).unwrap();
        for x in sample_points(&out) {
            assert_eq!(circle_stalk(&out, &x), circle_stalk_oracle(&f, &a, &x));
        }
    }

    #[test]
    fn coherence_and_faults() {
        let c = default_circumference();
        let objects = [sheaf(&["[0,1]", "(1,3)"]), sheaf(&["[3,9/2)"])];
        let samples = [Scalar::zero(), Scalar::new(1, 4), Scalar::new(3, 4)];
        let good = circle_seed(&c, Mode::NonNegative, Fault::None).unwrap();
        assert!(good.coherence_check(&samples, &objects).passed());
        let bad = circle_seed(&c, Mode::NonNegative, Fault::ZeroRestriction).unwrap();
        assert!(!bad.coherence_check(&samples, &objects).passed());
    }
}
