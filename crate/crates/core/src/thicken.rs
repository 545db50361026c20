//! The thickening functors on the line and their restriction morphisms.
//!
//! For `a > 0` the functor convolves with the closed ball of radius `a`;
//! for `a < 0` with the open ball of radius `-a`, shifted by one. On a bar
//! a closed endpoint moves outward and an open endpoint inward (reversed for
//! negative `a`). When two open endpoints would cross the bar becomes a
//! closed interval one degree up; when two closed endpoints would cross it
//! becomes an open interval one degree down.

use std::collections::BTreeMap;

use crate::barcode::{compact_sections_offset, Bar, GradedBarcode, GradedDims};
use crate::barcode::{global_sections, global_sections_c};
use crate::error::{Error, Result};
use crate::hom::Morphism;
use crate::interval::{EndpointKind, Interval, Shape};
use crate::model::LineModel;
use crate::scalar::{ExtendedScalar, Scalar};
use crate::tables::{self, Regime};

fn moved(e: &ExtendedScalar, by: &Scalar) -> ExtendedScalar {
    e.shift(by)
}

/// Thickening of a single bar.
pub fn thicken_bar(bar: &Bar, a: &Scalar) -> Bar {
    if a.is_zero() {
        return bar.clone();
    }
    let iv = &bar.interval;
    let (lk, rk) = (iv.left_kind(), iv.right_kind());
    // Outward for closed endpoints when a > 0, inward otherwise.
    let step = |kind: EndpointKind| match kind {
        EndpointKind::Closed => a.clone(),
        EndpointKind::Open => -a,
    };
    let left = moved(iv.left(), &-step(lk));
    let right = moved(iv.right(), &step(rk));
    if let Ok(out) = Interval::new(left.clone(), lk, right.clone(), rk) {
        return Bar::new(out, bar.degree);
    }
    // The endpoints crossed: `left > right`, or they met with an open kind.
    let (l, r) = (
        left.finite().expect("crossing endpoints are finite").clone(),
        right.finite().expect("crossing endpoints are finite").clone(),
    );
    if a.is_positive() {
        debug_assert_eq!((lk, rk), (EndpointKind::Open, EndpointKind::Open));
        let out = Interval::closed(r, l).expect("collapsed open bar is a closed interval");
        Bar::new(out, bar.degree + 1)
    } else {
        debug_assert_eq!((lk, rk), (EndpointKind::Closed, EndpointKind::Closed));
        let out = Interval::open(r, l).expect("collapsed closed bar is an open interval");
        Bar::new(out, bar.degree - 1)
    }
}

/// Thickening together with the position of each input bar's image.
pub fn thicken_tracked(f: &GradedBarcode, a: &Scalar) -> (GradedBarcode, Vec<usize>) {
    let bars = f.bars().iter().map(|b| thicken_bar(b, a)).collect();
    GradedBarcode::from_bars_tracked(bars, f.characteristic())
}

pub fn thicken(f: &GradedBarcode, a: &Scalar) -> GradedBarcode {
    thicken_tracked(f, a).0
}

/// Stalk dimensions of the thickening at `t`, evaluated directly as
/// compactly supported cohomology of the ball around `t` intersected with
/// each bar. For negative `a` the ball is open and the result shifts by one.
pub fn stalk_oracle(f: &GradedBarcode, a: &Scalar, t: &Scalar) -> GradedDims {
    let c = a.abs();
    let (kind, shift) = if a.is_negative() {
        (EndpointKind::Open, -1)
    } else {
        (EndpointKind::Closed, 0)
    };
    let Ok(ball) = Interval::bounded(t - &c, kind, t + &c, kind) else {
        return GradedDims::new();
    };
    let mut out = GradedDims::new();
    for bar in f.bars() {
        if let Some(meet) = ball.intersect(&bar.interval) {
            if let Some(off) = compact_sections_offset(meet.shape()) {
                out.add(bar.degree + off + shift, 1);
            }
        }
    }
    out
}

/// Thickening by `a ≥ 0` computed as convolution with the closed ball:
/// stalks are read off the fibres of the sum map on a stratification by
/// the critical points `endpoint ± a`, and each bar is reassembled from
/// its stalk pattern.
pub fn convolution_ball(f: &GradedBarcode, a: &Scalar) -> GradedBarcode {
    assert!(!a.is_negative(), "convolution_ball needs a ≥ 0");
    let bars = f
        .bars()
        .iter()
        .map(|bar| {
            let single = GradedBarcode::from_bars(vec![bar.clone()], f.characteristic());
            let pts: Vec<Scalar> = bar
                .interval
                .finite_endpoints()
                .flat_map(|p| [p - a, p + a])
                .collect();
            let model = LineModel::new(pts);
            let stalks: Vec<GradedDims> = (0..model.vertices())
                .map(|v| stalk_oracle(&single, a, &model.sample(v)))
                .collect();
            reassemble(&model, &stalks)
        })
        .collect();
    GradedBarcode::from_bars(bars, f.characteristic())
}

/// The single bar whose stalks on the strata of `model` are `stalks`.
fn reassemble(model: &LineModel, stalks: &[GradedDims]) -> Bar {
    let support: Vec<usize> = (0..stalks.len()).filter(|&v| !stalks[v].is_zero()).collect();
    let (&lo, &hi) = (support.first().unwrap(), support.last().unwrap());
    assert_eq!(support.len(), hi - lo + 1, "stalks of a bar form an interval");
    let (degree, _) = stalks[lo].iter().next().unwrap();
    for s in &stalks[lo..=hi] {
        assert_eq!(s, &GradedDims::single(degree, 1), "one-dimensional stalks");
    }
    let pts = model.points();
    let (left, lk) = if lo % 2 == 1 {
        (ExtendedScalar::Finite(pts[lo / 2].clone()), EndpointKind::Closed)
    } else if lo == 0 {
        (ExtendedScalar::NegInf, EndpointKind::Open)
    } else {
        (ExtendedScalar::Finite(pts[lo / 2 - 1].clone()), EndpointKind::Open)
    };
    let (right, rk) = if hi % 2 == 1 {
        (ExtendedScalar::Finite(pts[hi / 2].clone()), EndpointKind::Closed)
    } else if hi / 2 == pts.len() {
        (ExtendedScalar::PosInf, EndpointKind::Open)
    } else {
        (ExtendedScalar::Finite(pts[hi / 2].clone()), EndpointKind::Open)
    };
    Bar::new(
        Interval::new(left, lk, right, rk).expect("reassembled support is an interval"),
        degree,
    )
}

/// Where the restriction parameter falls relative to the bar's length.
pub fn regime(interval: &Interval, c: &Scalar) -> Regime {
    match interval.length() {
        None => Regime::Unbounded,
        Some(len) => match c.cmp(&len) {
            std::cmp::Ordering::Less => Regime::Shorter,
            std::cmp::Ordering::Equal => Regime::Equal,
            std::cmp::Ordering::Greater => Regime::Longer,
        },
    }
}

/// Coefficient of `ρ_{0,c}: K_c(k_I) → k_I` on the canonical generator.
pub fn restriction_coefficient(bar: &Bar, c: &Scalar) -> u32 {
    if c.is_zero() {
        return 1;
    }
    tables::rho_coefficient(bar.shape(), regime(&bar.interval, c))
}

/// The canonical morphism `ρ_{a,b}: K_b F → K_a F` for `a ≤ b`, computed as
/// `ρ_{0,b-a}` on `K_a F`.
pub fn restriction(f: &GradedBarcode, a: &Scalar, b: &Scalar) -> Result<Morphism> {
    if a > b {
        return Err(Error::BadRestriction {
            a: a.to_string(),
            b: b.to_string(),
        });
    }
    let c = b - a;
    let (ka, pa) = thicken_tracked(f, a);
    let (kb, pb) = thicken_tracked(f, b);
    let p = f.characteristic();
    let mut blocks = BTreeMap::new();
    for k in 0..f.len() {
        let image = &ka.bars()[pa[k]];
        let v = restriction_coefficient(image, &c) % p;
        if v != 0 {
            blocks.insert((pb[k], pa[k]), v);
        }
    }
    Ok(Morphism::from_clean(kb, ka, blocks))
}

/// Oracle for one row of the restriction table: the map is nonzero when it
/// is visible on some stalk (a compact ball intersection containing the
/// point) or on global sections with either support; it must then span a
/// nonzero Hom space.
pub fn derive_restriction_coefficient(bar: &Bar, c: &Scalar) -> Result<u32> {
    let iv = &bar.interval;
    let mut pts: Vec<Scalar> = Vec::new();
    for p in iv.finite_endpoints() {
        pts.extend([p - c, p.clone(), p + c]);
    }
    let model = LineModel::new(pts);
    let stalk_visible = (0..model.vertices()).any(|v| {
        let t = model.sample(v);
        iv.contains(&t)
            && Interval::closed(&t - c, &t + c)
                .ok()
                .and_then(|ball| ball.intersect(iv))
                .is_some_and(|m| m.shape() == Shape::Closed)
    });
    let single = GradedBarcode::new(vec![bar.clone()]);
    let sections_visible =
        !global_sections(&single).is_zero() || !global_sections_c(&single).is_zero();
    let nonzero = stalk_visible || sections_visible;
    let source = thicken_bar(bar, c);
    let dim = crate::hom::hom_dim(&source, bar).dim;
    if nonzero && dim == 0 {
        return Err(Error::Internal(format!(
            "nonzero restriction on {bar} with c = {c} but Hom vanishes"
        )));
    }
    Ok(u32::from(nonzero))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bc(bars: &[(&str, i64)]) -> GradedBarcode {
        GradedBarcode::new(
            bars.iter()
                .map(|(s, d)| Bar::new(s.parse().unwrap(), *d))
                .collect(),
        )
    }

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d)
    }

    #[test]
    fn rule_examples() {
        assert_eq!(thicken(&bc(&[("[0,2]", 0)]), &q(1, 1)), bc(&[("[-1,3]", 0)]));
        assert_eq!(thicken(&bc(&[("(0,4)", 0)]), &q(2, 1)), bc(&[("[2,2]", 1)]));
        assert_eq!(thicken(&bc(&[("[0,1]", 0)]), &q(-1, 1)), bc(&[("(0,1)", -1)]));
        assert_eq!(thicken(&bc(&[("[0,2)", 0)]), &q(1, 1)), bc(&[("[-1,1)", 0)]));
        let f = bc(&[("(0,3)", 1), ("[1,inf)", 0)]);
        assert_eq!(thicken(&f, &Scalar::zero()), f);
    }

    #[test]
    fn stalk_oracle_examples() {
        let f = bc(&[("(0,4)", 0)]);
        assert_eq!(stalk_oracle(&f, &q(1, 1), &q(2, 1)), GradedDims::single(0, 1));
        assert_eq!(stalk_oracle(&f, &q(2, 1), &q(2, 1)), GradedDims::single(1, 1));
        let g = bc(&[("[0,1]", 0)]);
        assert!(stalk_oracle(&g, &q(1, 1), &q(5, 1)).is_zero());
    }

    #[test]
    fn convolution_examples() {
        let f = bc(&[("[0,2]", 0)]);
        assert_eq!(convolution_ball(&f, &q(1, 1)), bc(&[("[-1,3]", 0)]));
        assert_eq!(convolution_ball(&f, &Scalar::zero()), f);
        assert_eq!(
            convolution_ball(&bc(&[("(0,4)", 0)]), &q(2, 1)),
            bc(&[("[2,2]", 1)])
        );
    }

    #[test]
    fn restriction_examples() {
        let f = bc(&[("[0,2]", 0)]);
        let id = restriction(&f, &q(1, 2), &q(1, 2)).unwrap();
        assert_eq!(id, Morphism::identity(&thicken(&f, &q(1, 2))));
        let r = restriction(&f, &Scalar::zero(), &q(1, 1)).unwrap();
        assert_eq!(r.get(0, 0), 1);
        let o = bc(&[("(0,4)", 0)]);
        let r = restriction(&o, &Scalar::zero(), &q(2, 1)).unwrap();
        assert_eq!(r.source(), &bc(&[("[2,2]", 1)]));
        assert_eq!(r.get(0, 0), 1);
        assert!(restriction(&f, &q(1, 1), &Scalar::zero()).is_err());
    }

    #[test]
    fn half_open_restriction_vanishes_past_its_length() {
        let f = bc(&[("[0,1)", 0)]);
        assert_eq!(restriction(&f, &Scalar::zero(), &q(1, 2)).unwrap().get(0, 0), 1);
        assert!(restriction(&f, &Scalar::zero(), &q(1, 1)).unwrap().is_zero());
    }
}
