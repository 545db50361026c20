//! Constructible sheaves on the circle `ℝ/Cℤ`.
//!
//! A sheaf is a sum of spirals, proper pushforwards `π_! k_I[-d]` of bounded
//! intervals along the covering `π: ℝ → ℝ/Cℤ`, and bands, local systems
//! given by a monodromy matrix. Spiral lifts are normalized so their left
//! endpoint lies in `[0, C)`; bands are merged to one per degree and kept in
//! Frobenius normal form, so two sheaves are isomorphic exactly when they
//! are equal.

mod cyclic;
mod distance;
mod morphism;
mod seed;

pub use cyclic::{decompose_cyclic, CyclicModel, CyclicRep};
pub use distance::{
    circle_critical_values, circle_distance, circle_finite_gate, circle_probe,
    circle_scan_bound, check_circle_interleaving, verify_circle_certificate, CircleCertificate,
};
pub use morphism::{
    circle_compose, circle_hom_tags, circle_restriction, circle_thicken_morphism, CircleMorphism,
};
pub use seed::{circle_seed, CircleAction};

use std::fmt;

use crate::barcode::{global_sections, is_prime, Bar, GradedBarcode, GradedDims};
use crate::error::{Error, Result};
use crate::linalg::{Fp, Mat};
use crate::poly::frobenius_form;
use crate::scalar::Scalar;
use crate::thicken::{stalk_oracle, thicken_bar};

/// Circumference used when none is given; the quarter turn is then 1.
pub fn default_circumference() -> Scalar {
    Scalar::int(4)
}

/// A local system `L[-degree]` with monodromy `T`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Band {
    pub degree: i64,
    pub monodromy: Mat,
}

impl Band {
    pub fn new(degree: i64, monodromy: Mat) -> Self {
        Band { degree, monodromy }
    }

    pub fn trivial(degree: i64, rank: usize) -> Self {
        Band::new(degree, Mat::identity(rank))
    }

    pub fn rank(&self) -> usize {
        self.monodromy.rows()
    }

    pub fn is_trivial(&self) -> bool {
        self.monodromy == Mat::identity(self.rank())
    }
}

impl fmt::Debug for Band {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "band(rank {}, degree {}, {:?})", self.rank(), self.degree, self.monodromy)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CircleSheaf {
    circumference: Scalar,
    spirals: GradedBarcode,
    bands: Vec<Band>,
}

/// Splits a lift as `normal + m·C` with the normal left endpoint in `[0, C)`.
fn normalize(bar: &Bar, c: &Scalar) -> (Bar, i64) {
    let left = bar
        .interval
        .left()
        .finite()
        .expect("spiral lifts are bounded");
    let m = (left / c).floor();
    let m = i64::try_from(m).expect("deck index fits in i64");
    let shift = -(c * &Scalar::int(m));
    (Bar::new(bar.interval.translate(&shift), bar.degree), m)
}

fn merge_bands(bands: Vec<Band>, p: u32) -> Vec<Band> {
    let f = Fp::new(p);
    let mut by_degree: std::collections::BTreeMap<i64, Mat> = Default::default();
    for b in bands {
        let acc = by_degree.remove(&b.degree).unwrap_or_else(|| Mat::zeros(0, 0));
        by_degree.insert(b.degree, acc.direct_sum(&b.monodromy));
    }
    by_degree
        .into_iter()
        .filter(|(_, t)| t.rows() > 0)
        .map(|(d, t)| Band::new(d, frobenius_form(&t, f)))
        .collect()
}

impl CircleSheaf {
    /// Validates and canonicalizes. Spiral lifts must be bounded and band
    /// monodromies invertible over `F_p`.
    pub fn new(circumference: Scalar, characteristic: u32, spirals: Vec<Bar>, bands: Vec<Band>) -> Result<Self> {
        if !circumference.is_positive() {
            return Err(Error::InvalidArgument(format!(
                "circumference must be positive, got {circumference}"
            )));
        }
        if !is_prime(characteristic) {
            return Err(Error::BadCharacteristic(characteristic));
        }
        if let Some(b) = spirals.iter().find(|b| !b.interval.is_bounded()) {
            return Err(Error::InvalidInterval(format!("spiral lift {b} is unbounded")));
        }
        let f = Fp::new(characteristic);
        for b in &bands {
            let t = &b.monodromy;
            if t.rows() == 0 || t.rows() != t.cols() {
                return Err(Error::InvalidArgument(format!("band monodromy must be square of rank ≥ 1: {b:?}")));
            }
            if t.inverse(f).is_none() {
                return Err(Error::InvalidArgument(format!("band monodromy is not invertible: {b:?}")));
            }
        }
        Ok(Self::assemble(circumference, characteristic, spirals, bands).0)
    }

    pub fn spirals_only(circumference: Scalar, characteristic: u32, spirals: Vec<Bar>) -> Result<Self> {
        Self::new(circumference, characteristic, spirals, Vec::new())
    }

    pub fn zero(circumference: Scalar, characteristic: u32) -> Result<Self> {
        Self::new(circumference, characteristic, Vec::new(), Vec::new())
    }

    /// The constant sheaf `k_{S¹}`.
    pub fn constant(circumference: Scalar, characteristic: u32) -> Result<Self> {
        Self::new(circumference, characteristic, Vec::new(), vec![Band::trivial(0, 1)])
    }

    /// Canonical form plus, for each input spiral, its position and the deck
    /// index `m` with `input = output + m·C`.
    fn assemble(circumference: Scalar, p: u32, spirals: Vec<Bar>, bands: Vec<Band>) -> (Self, Vec<usize>, Vec<i64>) {
        let (normal, shifts): (Vec<Bar>, Vec<i64>) =
            spirals.iter().map(|b| normalize(b, &circumference)).unzip();
        let (spirals, perm) = GradedBarcode::from_bars_tracked(normal, p);
        let sheaf = CircleSheaf {
            bands: merge_bands(bands, p),
            circumference,
            spirals,
        };
        (sheaf, perm, shifts)
    }

    pub fn circumference(&self) -> &Scalar {
        &self.circumference
    }

    pub fn characteristic(&self) -> u32 {
        self.spirals.characteristic()
    }

    pub fn spirals(&self) -> &[Bar] {
        self.spirals.bars()
    }

    pub fn bands(&self) -> &[Band] {
        &self.bands
    }

    pub fn has_bands(&self) -> bool {
        !self.bands.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.spirals.is_empty() && self.bands.is_empty()
    }

    /// Direct sum; both sides must live on the same circle.
    pub fn sum(&self, other: &CircleSheaf) -> Result<CircleSheaf> {
        self.same_circle(other)?;
        let mut spirals = self.spirals().to_vec();
        spirals.extend(other.spirals().iter().cloned());
        let mut bands = self.bands.clone();
        bands.extend(other.bands.iter().cloned());
        Ok(Self::assemble(self.circumference.clone(), self.characteristic(), spirals, bands).0)
    }

    pub(crate) fn same_circle(&self, other: &CircleSheaf) -> Result<()> {
        if self.characteristic() != other.characteristic() {
            return Err(Error::CharacteristicMismatch(self.characteristic(), other.characteristic()));
        }
        if self.circumference != other.circumference {
            return Err(Error::DomainMismatch(format!(
                "circumferences {} and {}",
                self.circumference, other.circumference
            )));
        }
        Ok(())
    }

    /// Every finite endpoint of the spiral lifts, reduced into `[0, C)`.
    pub fn endpoints_mod(&self) -> Vec<Scalar> {
        let mut pts: Vec<Scalar> = self
            .spirals
            .finite_endpoints()
            .iter()
            .map(|x| reduce(x, &self.circumference))
            .collect();
        pts.sort();
        pts.dedup();
        pts
    }
}

/// `x mod C` in `[0, C)`.
pub fn reduce(x: &Scalar, c: &Scalar) -> Scalar {
    let m = Scalar::from_bigint((x / c).floor());
    x - &(c * &m)
}

impl fmt::Display for CircleSheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S¹(C = {}) {}", self.circumference, self.spirals)?;
        for b in &self.bands {
            write!(f, " ⊕ {b:?}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CircleSheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Thickening with the position and deck index of each input spiral's image.
pub fn circle_thicken_tracked(f: &CircleSheaf, a: &Scalar) -> (CircleSheaf, Vec<usize>, Vec<i64>) {
    let lifts = f.spirals().iter().map(|b| thicken_bar(b, a)).collect();
    CircleSheaf::assemble(f.circumference.clone(), f.characteristic(), lifts, f.bands.clone())
}

/// `K_a F`. Spirals thicken through their lifts; bands are fixed.
pub fn circle_thicken(f: &CircleSheaf, a: &Scalar) -> CircleSheaf {
    circle_thicken_tracked(f, a).0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// The quarter-turn bi-thickening and its quasi-inverse.
pub fn fourier_sato(f: &CircleSheaf, direction: Direction) -> CircleSheaf {
    let q = &f.circumference / &Scalar::int(4);
    match direction {
        Direction::Forward => circle_thicken(f, &q),
        Direction::Inverse => circle_thicken(f, &-q),
    }
}

/// The lift translates `m` for which `[x - r, x + r] + mC` can meet `bar`.
fn deck_range(bar: &Bar, x: &Scalar, r: &Scalar, c: &Scalar) -> std::ops::RangeInclusive<i64> {
    let iv = &bar.interval;
    let lo = iv.left().finite().expect("bounded lift");
    let hi = iv.right().finite().expect("bounded lift");
    let from = ((lo - x) - r) / c;
    let to = ((hi - x) + r) / c;
    let from = i64::try_from(from.floor()).expect("deck index fits in i64");
    let to = i64::try_from(to.floor()).expect("deck index fits in i64") + 1;
    from..=to
}

/// Stalks of `K_a F` at `x`, read off `RΓ_c` of the ball around `x`. The
/// ball embeds in the circle for `|a| < C/2`; larger radii thicken first
/// and read the last seed step directly.
pub fn circle_stalk_oracle(f: &CircleSheaf, a: &Scalar, x: &Scalar) -> GradedDims {
    let c = &f.circumference;
    let half = c / &Scalar::int(2);
    if a.abs() >= half {
        let step = c / &Scalar::int(8);
        let step = if a.is_negative() { -step } else { step };
        return circle_stalk_oracle(&circle_thicken(f, &(a - &step)), &step, x);
    }
    let r = a.abs();
    let mut out = GradedDims::new();
    for bar in f.spirals() {
        let single = GradedBarcode::from_bars(vec![bar.clone()], f.characteristic());
        for m in deck_range(bar, x, &r, c) {
            let t = x + &(c * &Scalar::int(m));
            out.merge(&stalk_oracle(&single, a, &t));
        }
    }
    for b in &f.bands {
        out.add(b.degree, b.rank());
    }
    out
}

/// Stalk dimensions at `x`.
pub fn circle_stalk(f: &CircleSheaf, x: &Scalar) -> GradedDims {
    circle_stalk_oracle(f, &Scalar::zero(), x)
}

/// Points at which stalks of `F` and of its thickenings are worth sampling:
/// the reduced endpoints and the midpoints between consecutive ones.
pub fn sample_points(f: &CircleSheaf) -> Vec<Scalar> {
    let c = &f.circumference;
    let pts = f.endpoints_mod();
    if pts.is_empty() {
        return vec![Scalar::zero()];
    }
    let mut out = pts.clone();
    for (k, p) in pts.iter().enumerate() {
        let next = pts.get(k + 1).cloned().unwrap_or_else(|| &pts[0] + c);
        out.push(reduce(&p.midpoint(&next), c));
    }
    out.sort();
    out.dedup();
    out
}

/// `RΓ(S¹; F)`: a spiral contributes the sections of its lift, a band
/// `ker(T - 1)` and `coker(T - 1)` one degree up.
pub fn circle_global_sections(f: &CircleSheaf) -> GradedDims {
    let mut out = global_sections(&f.spirals);
    let fp = Fp::new(f.characteristic());
    for b in &f.bands {
        let fixed = b.monodromy.sub(&Mat::identity(b.rank()), fp);
        let rank = fixed.rank(fp);
        out.add(b.degree, b.rank() - rank);
        out.add(b.degree + 1, b.rank() - rank);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d)
    }

    fn arc(iv: &str, d: i64) -> Bar {
        Bar::new(iv.parse().unwrap(), d)
    }

    fn sheaf(bars: Vec<Bar>) -> CircleSheaf {
        CircleSheaf::spirals_only(default_circumference(), 2, bars).unwrap()
    }

    #[test]
    fn lifts_are_normalized() {
        let f = sheaf(vec![arc("[5,6]", 0), arc("(-1,1/2)", 1)]);
        assert_eq!(f.spirals()[0], arc("[1,2]", 0));
        assert_eq!(f.spirals()[1], arc("(3,9/2)", 1));
        assert!(CircleSheaf::spirals_only(default_circumference(), 2, vec![arc("[0,+inf)", 0)]).is_err());
        assert!(CircleSheaf::new(Scalar::zero(), 2, vec![], vec![]).is_err());
    }

    #[test]
    fn bands_are_merged_into_normal_form() {
        let swap = Mat::from_rows(2, 2, vec![0, 1, 1, 0]);
        let f = CircleSheaf::new(default_circumference(), 3, vec![], vec![Band::new(0, swap)]).unwrap();
        let diag = Mat::from_rows(2, 2, vec![1, 0, 0, 2]);
        let g = CircleSheaf::new(default_circumference(), 3, vec![], vec![Band::new(0, diag)]).unwrap();
        assert_eq!(f, g);
        let split = CircleSheaf::new(
            default_circumference(),
            3,
            vec![],
            vec![Band::new(0, Mat::identity(1)), Band::new(0, Mat::from_rows(1, 1, vec![2]))],
        )
        .unwrap();
        assert_eq!(split, f);
        let singular = Band::new(0, Mat::zeros(1, 1));
        assert!(CircleSheaf::new(default_circumference(), 3, vec![], vec![singular]).is_err());
    }

    #[test]
    fn thickening_examples() {
        let f = sheaf(vec![arc("[0,1]", 0)]);
        assert_eq!(circle_thicken(&f, &Scalar::half()), sheaf(vec![arc("[-1/2,3/2]", 0)]));
        let rot = sheaf(vec![arc("[1,2)", 0)]);
        assert_eq!(circle_thicken(&rot, &Scalar::half()), sheaf(vec![arc("[1/2,3/2)", 0)]));
        let k = CircleSheaf::constant(default_circumference(), 2).unwrap();
        for a in [s(1, 3), s(-7, 2), s(9, 1)] {
            assert_eq!(circle_thicken(&k, &a), k);
        }
    }

    #[test]
    fn fourier_sato_examples() {
        let f = sheaf(vec![arc("[0,1]", 0)]);
        let ff = fourier_sato(&f, Direction::Forward);
        assert_eq!(ff, sheaf(vec![arc("[-1,2]", 0)]));
        assert_eq!(fourier_sato(&ff, Direction::Inverse), f);
        let k = CircleSheaf::constant(default_circumference(), 5).unwrap();
        assert_eq!(fourier_sato(&k, Direction::Forward), k);
    }

    #[test]
    fn oracle_examples() {
        let f = sheaf(vec![arc("[0,1]", 0)]);
        assert_eq!(circle_stalk_oracle(&f, &s(1, 4), &s(1, 2)), GradedDims::single(0, 1));
        let band = Band::new(3, Mat::from_rows(2, 2, vec![1, 1, 0, 1]));
        let b = CircleSheaf::new(default_circumference(), 2, vec![], vec![band]).unwrap();
        for (a, x) in [(s(0, 1), s(0, 1)), (s(1, 3), s(7, 2)), (s(-1, 2), s(1, 1)), (s(5, 1), s(2, 1))] {
            assert_eq!(circle_stalk_oracle(&b, &a, &x), GradedDims::single(3, 2));
        }
        let z = CircleSheaf::zero(default_circumference(), 2).unwrap();
        assert!(circle_stalk_oracle(&z, &s(1, 2), &s(1, 1)).is_zero());
    }

    #[test]
    fn winding_spiral_has_rank_two_stalks() {
        let f = sheaf(vec![arc("[0,5]", 0)]);
        assert_eq!(circle_stalk(&f, &s(1, 2)), GradedDims::single(0, 2));
        assert_eq!(circle_stalk(&f, &s(3, 1)), GradedDims::single(0, 1));
        // Across the wrap: the ball around 0 meets the lift at 0 and at 4.
        assert_eq!(circle_stalk_oracle(&f, &s(1, 4), &Scalar::zero()), GradedDims::single(0, 2));
    }

    #[test]
    fn oracle_agrees_with_thickening() {
        let f = sheaf(vec![arc("[0,1]", 0), arc("(1,3)", 1), arc("[2,3)", 0), arc("{1}", 2), arc("(0,7/2]", 0)]);
        for a in [s(1, 2), s(-1, 2), s(1, 4), s(-1, 3), s(3, 1), s(-3, 1)] {
            let g = circle_thicken(&f, &a);
            let mut pts = sample_points(&g);
            pts.extend(sample_points(&f));
            for x in pts {
                assert_eq!(circle_stalk(&g, &x), circle_stalk_oracle(&f, &a, &x), "a = {a}, x = {x}");
            }
        }
    }

    #[test]
    fn sections() {
        let k = CircleSheaf::constant(default_circumference(), 2).unwrap();
        let mut h = GradedDims::single(0, 1);
        h.add(1, 1);
        assert_eq!(circle_global_sections(&k), h);
        let twist = Band::new(0, Mat::from_rows(1, 1, vec![2]));
        let m = CircleSheaf::new(default_circumference(), 3, vec![], vec![twist]).unwrap();
        assert!(circle_global_sections(&m).is_zero());
        let f = sheaf(vec![arc("(0,1)", 0), arc("[0,1)", 0)]);
        assert_eq!(circle_global_sections(&f), GradedDims::single(1, 1));
    }
}
