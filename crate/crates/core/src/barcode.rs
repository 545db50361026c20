//! Graded barcodes: the canonical form of a constructible complex on the line.
//!
//! Over a field every bounded complex of constructible sheaves on the real
//! line splits as a direct sum of shifted interval sheaves `k_I[-d]`.  A
//! [`Bar`] records one such summand, a [`GradedBarcode`] the whole multiset.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::interval::{EndpointKind, Interval, Shape};
use crate::scalar::ExtendedScalar;

/// The summand `k_I[-degree]`, whose stalks sit in cohomological degree `degree`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bar {
    pub degree: i64,
    pub interval: Interval,
}

impl Bar {
    pub fn new(interval: Interval, degree: i64) -> Self {
        Bar { degree, interval }
    }

    pub fn shape(&self) -> Shape {
        self.interval.shape()
    }
}

impl fmt::Display for Bar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.interval, self.degree)
    }
}

impl fmt::Debug for Bar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A bar given by raw endpoint data, not yet validated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawBar {
    pub left: ExtendedScalar,
    pub left_kind: EndpointKind,
    pub right: ExtendedScalar,
    pub right_kind: EndpointKind,
    pub degree: i64,
}

pub const DEFAULT_CHARACTERISTIC: u32 = 2;

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// A finite multiset of bars in canonical sorted order, together with the
/// characteristic of the coefficient field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedBarcode {
    bars: Vec<Bar>,
    characteristic: u32,
}

impl GradedBarcode {
    pub fn empty() -> Self {
        GradedBarcode {
            bars: Vec::new(),
            characteristic: DEFAULT_CHARACTERISTIC,
        }
    }

    pub fn new(bars: Vec<Bar>) -> Self {
        Self::from_bars(bars, DEFAULT_CHARACTERISTIC)
    }

    pub fn from_bars(bars: Vec<Bar>, characteristic: u32) -> Self {
        Self::from_bars_tracked(bars, characteristic).0
    }

    /// Sorts the bars and reports where each input bar ended up.
    ///
    /// The sort is stable, so equal bars keep their relative order; morphism
    /// blocks indexed by input position can be carried along through `perm`.
    pub fn from_bars_tracked(bars: Vec<Bar>, characteristic: u32) -> (Self, Vec<usize>) {
        let mut order: Vec<usize> = (0..bars.len()).collect();
        order.sort_by(|&i, &j| bars[i].cmp(&bars[j]));
        let mut perm = vec![0; bars.len()];
        for (new, &old) in order.iter().enumerate() {
            perm[old] = new;
        }
        let sorted = order.iter().map(|&i| bars[i].clone()).collect();
        (
            GradedBarcode {
                bars: sorted,
                characteristic,
            },
            perm,
        )
    }

    pub fn with_characteristic(mut self, p: u32) -> Self {
        self.characteristic = p;
        self
    }

    pub fn bars(&self) -> &[Bar] {
        &self.bars
    }

    pub fn len(&self) -> usize {
        self.bars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    /// Direct sum.
    pub fn sum(&self, other: &GradedBarcode) -> GradedBarcode {
        let mut bars = self.bars.clone();
        bars.extend(other.bars.iter().cloned());
        GradedBarcode::from_bars(bars, self.characteristic)
    }

    /// Degree shift `F[n]`.
    pub fn shift(&self, n: i64) -> GradedBarcode {
        let bars = self
            .bars
            .iter()
            .map(|b| Bar::new(b.interval.clone(), b.degree - n))
            .collect();
        GradedBarcode::from_bars(bars, self.characteristic)
    }

    pub fn finite_endpoints(&self) -> Vec<crate::scalar::Scalar> {
        let mut pts: Vec<_> = self
            .bars
            .iter()
            .flat_map(|b| b.interval.finite_endpoints().cloned())
            .collect();
        pts.sort();
        pts.dedup();
        pts
    }
}

impl fmt::Display for GradedBarcode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, b) in self.bars.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for GradedBarcode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Validate raw bars and put them into canonical order.
pub fn canonicalize(raw: &[RawBar], characteristic: u32) -> Result<GradedBarcode> {
    if !is_prime(characteristic) {
        return Err(Error::BadCharacteristic(characteristic));
    }
    let bars = raw
        .iter()
        .map(|r| {
            Interval::new(r.left.clone(), r.left_kind, r.right.clone(), r.right_kind)
                .map(|i| Bar::new(i, r.degree))
                .map_err(|e| Error::InvalidInterval(format!("bar in degree {}: {e}", r.degree)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GradedBarcode::from_bars(bars, characteristic))
}

/// Isomorphism test: equality of canonical forms.
pub fn iso_equal(f: &GradedBarcode, g: &GradedBarcode) -> Result<bool> {
    if f.characteristic != g.characteristic {
        return Err(Error::CharacteristicMismatch(
            f.characteristic,
            g.characteristic,
        ));
    }
    Ok(f.bars == g.bars)
}

/// Degree-wise dimensions of a graded vector space; zero entries are omitted.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct GradedDims(BTreeMap<i64, usize>);

impl GradedDims {
    pub fn new() -> Self {
        GradedDims(BTreeMap::new())
    }

    pub fn single(degree: i64, dim: usize) -> Self {
        let mut g = GradedDims::new();
        g.add(degree, dim);
        g
    }

    pub fn add(&mut self, degree: i64, dim: usize) {
        if dim > 0 {
            *self.0.entry(degree).or_insert(0) += dim;
        }
    }

    pub fn merge(&mut self, other: &GradedDims) {
        for (&d, &n) in &other.0 {
            self.add(d, n);
        }
    }

    pub fn get(&self, degree: i64) -> usize {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.0.iter().map(|(&d, &n)| (d, n))
    }

    pub fn shifted(&self, by: i64) -> GradedDims {
        GradedDims(self.0.iter().map(|(&d, &n)| (d + by, n)).collect())
    }
}

impl FromIterator<(i64, usize)> for GradedDims {
    fn from_iter<T: IntoIterator<Item = (i64, usize)>>(iter: T) -> Self {
        let mut g = GradedDims::new();
        for (d, n) in iter {
            g.add(d, n);
        }
        g
    }
}

impl fmt::Display for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (d, n)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}: {n}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Cohomological degree offset of `RΓ(ℝ; k_I)`, `None` when it vanishes.
pub fn sections_offset(shape: Shape) -> Option<i64> {
    match shape {
        Shape::Closed | Shape::ClosedRayRight | Shape::ClosedRayLeft | Shape::Line => Some(0),
        Shape::Open => Some(1),
        Shape::ClosedOpen | Shape::OpenClosed | Shape::OpenRayRight | Shape::OpenRayLeft => None,
    }
}

/// Cohomological degree offset of `RΓ_c(ℝ; k_I)`, `None` when it vanishes.
pub fn compact_sections_offset(shape: Shape) -> Option<i64> {
    match shape {
        Shape::Closed => Some(0),
        Shape::Open | Shape::OpenRayRight | Shape::OpenRayLeft | Shape::Line => Some(1),
        Shape::ClosedOpen | Shape::OpenClosed | Shape::ClosedRayRight | Shape::ClosedRayLeft => {
            None
        }
    }
}

/// `RΓ(ℝ; F)`.
pub fn global_sections(f: &GradedBarcode) -> GradedDims {
    f.bars
        .iter()
        .filter_map(|b| sections_offset(b.shape()).map(|o| (b.degree + o, 1)))
        .collect()
}

/// `RΓ_c(ℝ; F)`.
pub fn global_sections_c(f: &GradedBarcode) -> GradedDims {
    f.bars
        .iter()
        .filter_map(|b| compact_sections_offset(b.shape()).map(|o| (b.degree + o, 1)))
        .collect()
}

/// `RHom(-, k_ℝ)` applied to one bar.
pub fn dualize_bar(bar: &Bar) -> Bar {
    if bar.interval.is_singleton() {
        // Local cohomology of the line at a point sits in degree one.
        return Bar::new(bar.interval.clone(), 1 - bar.degree);
    }
    let flipped = bar
        .interval
        .flip_kinds()
        .expect("flipping a non-degenerate interval stays valid");
    Bar::new(flipped, -bar.degree)
}

/// `RHom(F, k_ℝ)`.
pub fn dualize(f: &GradedBarcode) -> GradedBarcode {
    GradedBarcode::from_bars(f.bars.iter().map(dualize_bar).collect(), f.characteristic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn q(n: i64) -> Scalar {
        Scalar::int(n)
    }

    fn bar(s: &str, d: i64) -> Bar {
        Bar::new(s.parse().unwrap(), d)
    }

    #[test]
    fn canonical_order_and_multiplicity() {
        let f = GradedBarcode::new(vec![bar("[0,1]", 1), bar("[0,1]", 0), bar("[0,1]", 0)]);
        assert_eq!(f.to_string(), "{[0,1]@0, [0,1]@0, [0,1]@1}");
        let again = GradedBarcode::new(f.bars().to_vec());
        assert_eq!(f, again);
    }

    #[test]
    fn canonicalize_rejects_empty_open_singleton() {
        let raw = RawBar {
            left: q(1).into(),
            left_kind: EndpointKind::Open,
            right: q(1).into(),
            right_kind: EndpointKind::Open,
            degree: 0,
        };
        let err = canonicalize(&[raw], 2).unwrap_err();
        assert!(matches!(err, Error::InvalidInterval(_)));
        assert!(canonicalize(&[], 4).is_err());
    }

    #[test]
    fn iso_equal_cases() {
        let a = GradedBarcode::new(vec![bar("[0,1]", 0)]);
        let b = GradedBarcode::new(vec![bar("(0,1)", 0)]);
        assert!(iso_equal(&a, &a).unwrap());
        assert!(!iso_equal(&a, &b).unwrap());
        assert!(iso_equal(&a.sum(&b), &b.sum(&a)).unwrap());
        assert!(iso_equal(&a, &a.clone().with_characteristic(3)).is_err());
    }

    #[test]
    fn sections_examples() {
        let closed = GradedBarcode::new(vec![bar("[0,1]", 0)]);
        let open = GradedBarcode::new(vec![bar("(0,1)", 0)]);
        let ray = GradedBarcode::new(vec![bar("[0,inf)", 0)]);
        let line = GradedBarcode::new(vec![bar("(-inf,inf)", 0)]);
        assert_eq!(global_sections(&closed), GradedDims::single(0, 1));
        assert_eq!(global_sections(&open), GradedDims::single(1, 1));
        assert!(global_sections(&GradedBarcode::empty()).is_zero());
        assert_eq!(global_sections_c(&closed), GradedDims::single(0, 1));
        assert!(global_sections_c(&ray).is_zero());
        assert_eq!(global_sections_c(&line), GradedDims::single(1, 1));
    }

    #[test]
    fn dualize_examples() {
        assert_eq!(dualize_bar(&bar("[0,1]", 0)), bar("(0,1)", 0));
        assert_eq!(dualize_bar(&bar("[0,1)", 0)), bar("(0,1]", 0));
        assert_eq!(dualize_bar(&bar("[2,2]", 1)), bar("[2,2]", 0));
        assert_eq!(dualize_bar(&bar("[0,inf)", 3)), bar("(0,inf)", -3));
    }
}
