//! Seeded random inputs for the invariant suites. Case `i` of a corpus with
//! seed `s` draws from stream `i` of a ChaCha generator keyed by `s`, so a
//! case is reproducible on its own and cases may be generated in any order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::barcode::{Bar, GradedBarcode};
use crate::circle::{Band, CircleSheaf};
use crate::interval::{EndpointKind, Interval};
use crate::linalg::{Fp, Mat};
use crate::pl::{Extension, PLMap};
use crate::scalar::{ExtendedScalar, Scalar};

/// Parameters of a random barcode.
#[derive(Clone, Debug)]
pub struct BarcodeShape {
    /// Inclusive range for the number of bars.
    pub bars: (usize, usize),
    /// Finite endpoints are multiples of `1/denominator` in this range.
    pub span: (i64, i64),
    pub denominator: i64,
    pub degrees: (i64, i64),
    /// Probability that a given endpoint is infinite.
    pub unbounded: f64,
    pub characteristic: u32,
}

impl Default for BarcodeShape {
    fn default() -> Self {
        BarcodeShape {
            bars: (0, 6),
            span: (-4, 4),
            denominator: 4,
            degrees: (-1, 1),
            unbounded: 0.15,
            characteristic: 2,
        }
    }
}

impl BarcodeShape {
    pub fn small() -> Self {
        BarcodeShape {
            bars: (1, 3),
            span: (0, 4),
            denominator: 2,
            degrees: (0, 1),
            unbounded: 0.0,
            ..Default::default()
        }
    }

    pub fn bounded(mut self) -> Self {
        self.unbounded = 0.0;
        self
    }

    pub fn bars(mut self, lo: usize, hi: usize) -> Self {
        self.bars = (lo, hi);
        self
    }
}

pub struct Corpus {
    rng: ChaCha8Rng,
}

impl Corpus {
    pub fn new(seed: u64, case: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(case);
        Corpus { rng }
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn integer(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// A multiple of `1/den` in `[lo, hi]`.
    pub fn rational(&mut self, lo: i64, hi: i64, den: i64) -> Scalar {
        Scalar::new(self.rng.gen_range(lo * den..=hi * den), den)
    }

    /// A rational in `[lo, hi]` with a denominator drawn from `{1,2,3,4,6,8}`.
    pub fn parameter(&mut self, lo: i64, hi: i64) -> Scalar {
        let den = [1, 2, 3, 4, 6, 8][self.index(6)];
        self.rational(lo, hi, den)
    }

    pub fn kind(&mut self) -> EndpointKind {
        if self.chance(0.5) {
            EndpointKind::Closed
        } else {
            EndpointKind::Open
        }
    }

    pub fn interval(&mut self, s: &BarcodeShape) -> Interval {
        let (lo, hi) = s.span;
        let mut a = self.rational(lo, hi, s.denominator);
        let mut b = self.rational(lo, hi, s.denominator);
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        let left_inf = s.unbounded > 0.0 && self.chance(s.unbounded);
        let right_inf = s.unbounded > 0.0 && self.chance(s.unbounded);
        if !left_inf && !right_inf && a == b {
            return Interval::point(a);
        }
        let (l, lk) = if left_inf {
            (ExtendedScalar::NegInf, EndpointKind::Open)
        } else {
            (ExtendedScalar::Finite(a), self.kind())
        };
        let (r, rk) = if right_inf {
            (ExtendedScalar::PosInf, EndpointKind::Open)
        } else {
            (ExtendedScalar::Finite(b), self.kind())
        };
        Interval::new(l, lk, r, rk).expect("ordered endpoints with open infinite ends")
    }

    pub fn bar(&mut self, s: &BarcodeShape) -> Bar {
        let d = self.integer(s.degrees.0, s.degrees.1);
        Bar::new(self.interval(s), d)
    }

    pub fn barcode(&mut self, s: &BarcodeShape) -> GradedBarcode {
        let n = self.rng.gen_range(s.bars.0..=s.bars.1);
        let bars = (0..n).map(|_| self.bar(s)).collect();
        GradedBarcode::from_bars(bars, s.characteristic)
    }

    /// Moves every finite endpoint of `f` by at most `by`, keeping kinds and
    /// never collapsing a bar.
    pub fn jiggle(&mut self, f: &GradedBarcode, by: &Scalar, den: i64) -> GradedBarcode {
        let steps = (by * &Scalar::int(den)).floor();
        let steps: i64 = steps.try_into().unwrap_or(0);
        let bars = f
            .bars()
            .iter()
            .map(|b| {
                let iv = &b.interval;
                if iv.left() == iv.right() {
                    return b.clone();
                }
                let mut shift = |e: &ExtendedScalar| match e {
                    ExtendedScalar::Finite(x) => {
                        ExtendedScalar::Finite(x + &Scalar::new(self.integer(-steps, steps), den))
                    }
                    other => other.clone(),
                };
                let (l, r) = (shift(iv.left()), shift(iv.right()));
                let moved = match (l < r, l == r) {
                    (true, _) => Interval::new(l, iv.left_kind(), r, iv.right_kind()).unwrap_or_else(|_| iv.clone()),
                    (_, true) => Interval::point(l.finite().expect("finite when equal").clone()),
                    _ => iv.clone(),
                };
                Bar::new(moved, b.degree)
            })
            .collect();
        GradedBarcode::from_bars(bars, f.characteristic())
    }

    /// A random invertible `n × n` matrix over `F_p`.
    pub fn invertible(&mut self, n: usize, p: u32) -> Mat {
        loop {
            let data = (0..n * n).map(|_| self.rng.gen_range(0..p)).collect();
            let m = Mat::from_rows(n, n, data);
            if m.inverse(Fp::new(p)).is_some() {
                return m;
            }
        }
    }

    /// A circle sheaf of circumference `c` with bounded lifts of length at
    /// most `max_len`, and with probability `band_chance` some bands.
    pub fn circle_sheaf(&mut self, c: &Scalar, p: u32, spirals: (usize, usize), max_len: i64, band_chance: f64) -> CircleSheaf {
        let n = self.rng.gen_range(spirals.0..=spirals.1);
        let lifts = (0..n)
            .map(|_| {
                let start = self.rational(0, 4, 4) * c.clone() / Scalar::int(4);
                let len = self.rational(0, max_len, 4);
                let end = &start + &len;
                let iv = if len.is_zero() {
                    Interval::point(start)
                } else {
                    let (lk, rk) = (self.kind(), self.kind());
                    Interval::bounded(start, lk, end, rk).expect("positive length")
                };
                Bar::new(iv, self.integer(-1, 1))
            })
            .collect();
        let mut bands = Vec::new();
        if self.chance(band_chance) {
            for _ in 0..self.integer(1, 2) {
                let rank = self.integer(1, 2) as usize;
                let t = self.invertible(rank, p);
                bands.push(Band::new(self.integer(-1, 1), t));
            }
        }
        CircleSheaf::new(c.clone(), p, lifts, bands).expect("generated sheaves are valid")
    }

    /// A PL map with `2..=max_points` breakpoints in `[-3, 3]`, affine
    /// extensions and non-constant end pieces, so it is proper on every bar.
    pub fn pl_map(&mut self, max_points: usize) -> PLMap {
        let n = self.rng.gen_range(2..=max_points.max(2));
        let mut xs: Vec<Scalar> = Vec::new();
        while xs.len() < n {
            let x = self.rational(-3, 3, 2);
            if !xs.contains(&x) {
                xs.push(x);
            }
        }
        xs.sort();
        let mut ys: Vec<Scalar> = (0..n).map(|_| self.rational(-3, 3, 2)).collect();
        for (a, b) in [(0, 1), (n - 1, n - 2)] {
            if ys[a] == ys[b] {
                ys[a] = &ys[a] + &Scalar::one();
            }
        }
        PLMap::new(xs.into_iter().zip(ys).collect(), Extension::Affine, Extension::Affine, None)
            .expect("increasing breakpoints")
    }

    /// `f` with every value moved by at most `by`; the two outermost points
    /// on each side move together so the end slopes are kept.
    pub fn perturb(&mut self, f: &PLMap, by: i64, den: i64) -> PLMap {
        let pts = f.breakpoints();
        let n = pts.len();
        let mut offs: Vec<Scalar> = (0..n).map(|_| self.rational(-by, by, den)).collect();
        offs[1] = offs[0].clone();
        offs[n - 1] = offs[n - 2].clone();
        if n == 3 {
            offs[2] = offs[0].clone();
        }
        let (l, r) = f.extensions();
        let moved = pts.into_iter().zip(offs).map(|((x, y), o)| (x, y + o)).collect();
        PLMap::new(moved, l, r, f.domain().cloned()).expect("same breakpoints")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cases_are_reproducible_and_distinct() {
        let s = BarcodeShape::default();
        let a = Corpus::new(7, 3).barcode(&s);
        assert_eq!(a, Corpus::new(7, 3).barcode(&s));
        let others: Vec<_> = (0..8).map(|i| Corpus::new(7, i).barcode(&s)).collect();
        assert!(others.iter().any(|b| b != &a));
    }

    #[test]
    fn perturbation_keeps_end_slopes() {
        for case in 0..50 {
            let mut c = Corpus::new(1, case);
            let f = c.pl_map(4);
            let g = c.perturb(&f, 2, 4);
            let d = crate::pl::sup_distance(&f, &g).unwrap();
            assert!(d <= ExtendedScalar::Finite(Scalar::int(2)), "{f:?} {g:?}");
        }
    }
}
