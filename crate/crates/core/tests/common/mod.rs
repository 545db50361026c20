//! Shared proptest strategies. Endpoints live on the quarter grid so that
//! degenerate coincidences are frequent.
#![allow(dead_code)]

use proptest::prelude::*;
use thicket::barcode::{Bar, GradedBarcode};
use thicket::circle::{Band, CircleSheaf};
use thicket::interval::{EndpointKind, Interval};
use thicket::linalg::Mat;
use thicket::pl::{Extension, PLMap};
use thicket::scalar::{ExtendedScalar, Scalar};

pub fn quarter(lo: i64, hi: i64) -> impl Strategy<Value = Scalar> {
    (4 * lo..=4 * hi).prop_map(|n| Scalar::new(n, 4))
}

fn kind() -> impl Strategy<Value = EndpointKind> {
    prop_oneof![Just(EndpointKind::Closed), Just(EndpointKind::Open)]
}

pub fn bounded_interval(lo: i64, hi: i64) -> impl Strategy<Value = Interval> {
    (quarter(lo, hi), 0..=4 * (hi - lo), kind(), kind()).prop_map(|(l, len, lk, rk)| {
        let r = &l + &Scalar::new(len, 4);
        let (lk, rk) = if len == 0 { (EndpointKind::Closed, EndpointKind::Closed) } else { (lk, rk) };
        Interval::new(ExtendedScalar::Finite(l), lk, ExtendedScalar::Finite(r), rk).expect("valid")
    })
}

pub fn interval(lo: i64, hi: i64) -> impl Strategy<Value = Interval> {
    prop_oneof![
        6 => bounded_interval(lo, hi),
        1 => (quarter(lo, hi), kind()).prop_map(|(b, k)| Interval::ray_right(b, k)),
        1 => (quarter(lo, hi), kind()).prop_map(|(e, k)| Interval::ray_left(e, k)),
        1 => Just(Interval::line()),
    ]
}

pub fn bar(lo: i64, hi: i64) -> impl Strategy<Value = Bar> {
    (interval(lo, hi), -1i64..=1).prop_map(|(i, d)| Bar::new(i, d))
}

pub fn barcode(max_bars: usize) -> impl Strategy<Value = GradedBarcode> {
    prop::collection::vec(bar(-3, 3), 0..=max_bars).prop_map(GradedBarcode::new)
}

pub fn bounded_barcode(max_bars: usize) -> impl Strategy<Value = GradedBarcode> {
    prop::collection::vec((bounded_interval(0, 4), 0i64..=1).prop_map(|(i, d)| Bar::new(i, d)), 0..=max_bars)
        .prop_map(GradedBarcode::new)
}

/// Thickening parameter on the quarter grid in `[lo, hi]`.
pub fn parameter(lo: i64, hi: i64) -> impl Strategy<Value = Scalar> {
    quarter(lo, hi)
}

/// A PL map on ℝ with affine ends of nonzero slope, hence proper on every
/// bar.
pub fn proper_map(max_points: usize) -> impl Strategy<Value = PLMap> {
    (
        quarter(-2, 2),
        prop::collection::vec((1i64..=8, -8i64..=8), 1..=max_points),
        prop_oneof![Just(-1i64), Just(1)],
        prop_oneof![Just(-1i64), Just(1)],
    )
        .prop_map(|(x0, steps, ls, rs)| {
            let mut points = vec![(x0.clone(), Scalar::zero())];
            for (dx, dy) in steps {
                let (x, y) = points.last().cloned().expect("nonempty");
                points.push((&x + &Scalar::new(dx, 4), &y + &Scalar::new(dy, 4)));
            }
            // Nonzero outer slopes: replace the outer pieces where flat.
            let n = points.len();
            if points[1].1 == points[0].1 {
                points[0].1 = &points[1].1 - &Scalar::new(ls, 4);
            }
            if points[n - 1].1 == points[n - 2].1 {
                points[n - 1].1 = &points[n - 2].1 + &Scalar::new(rs, 4);
            }
            PLMap::new(points, Extension::Affine, Extension::Affine, None).expect("increasing breakpoints")
        })
}

pub fn circumference() -> Scalar {
    Scalar::int(4)
}

pub fn circle_sheaf(p: u32, with_bands: bool) -> impl Strategy<Value = CircleSheaf> {
    let spirals = prop::collection::vec((bounded_interval(0, 6), -1i64..=1).prop_map(|(i, d)| Bar::new(i, d)), 0..=3);
    let bands = prop::collection::vec(
        (0i64..=1, 1usize..=2, prop::collection::vec(0..p, 4)).prop_map(move |(d, n, e)| {
            // Unipotent-or-scalar monodromy stays invertible over F_p.
            let mut m = Mat::identity(n);
            if n == 2 {
                m = Mat::from_rows(2, 2, vec![1, e[0], 0, 1]);
            } else if e[1] != 0 {
                m = Mat::from_rows(1, 1, vec![e[1]]);
            }
            Band::new(d, m)
        }),
        0..=if with_bands { 2 } else { 0 },
    );
    (spirals, bands).prop_map(move |(s, b)| CircleSheaf::new(circumference(), p, s, b).expect("valid sheaf"))
}
