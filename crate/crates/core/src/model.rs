//! The finite poset model of constructible sheaves on the line.
//!
//! A finite set of points `p_0 < … < p_{n-1}` stratifies the line into the
//! points and `n + 1` open gaps. Vertex `2i + 1` is the point `p_i`; vertex
//! `2i` is the gap to its left and vertex `2n` the last gap. Sheaves
//! constructible for this stratification are representations of the quiver
//! with arrows from each point to its two neighbouring gaps (restriction from
//! a small neighbourhood of the point to the nearby gap).

use std::collections::BTreeMap;

use crate::barcode::{Bar, GradedBarcode, GradedDims};
use crate::interval::Interval;
use crate::linalg::{Fp, Mat};
use crate::quiver::{hom_ext_dims, Quiver, Rep};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineModel {
    points: Vec<Scalar>,
    quiver: Quiver,
}

/// A stratum of a model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stratum {
    Point(Scalar),
    /// Open gap between the given neighbours (`None` at infinity).
    Gap(Option<Scalar>, Option<Scalar>),
}

impl LineModel {
    pub fn new(mut points: Vec<Scalar>) -> Self {
        points.sort();
        points.dedup();
        let n = points.len();
        let mut arrows = Vec::with_capacity(2 * n);
        for i in 0..n {
            arrows.push((2 * i + 1, 2 * i));
            arrows.push((2 * i + 1, 2 * i + 2));
        }
        LineModel {
            points,
            quiver: Quiver {
                vertices: 2 * n + 1,
                arrows,
            },
        }
    }

    /// Coarsest model refining every finite endpoint of the given intervals.
    pub fn for_intervals<'a>(intervals: impl IntoIterator<Item = &'a Interval>) -> Self {
        LineModel::new(
            intervals
                .into_iter()
                .flat_map(|i| i.finite_endpoints().cloned())
                .collect(),
        )
    }

    pub fn for_barcodes(barcodes: &[&GradedBarcode]) -> Self {
        LineModel::for_intervals(
            barcodes
                .iter()
                .flat_map(|b| b.bars().iter().map(|bar| &bar.interval)),
        )
    }

    pub fn points(&self) -> &[Scalar] {
        &self.points
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn vertices(&self) -> usize {
        self.quiver.vertices
    }

    pub fn stratum(&self, v: usize) -> Stratum {
        if v % 2 == 1 {
            Stratum::Point(self.points[v / 2].clone())
        } else {
            let i = v / 2;
            let left = i.checked_sub(1).map(|k| self.points[k].clone());
            let right = self.points.get(i).cloned();
            Stratum::Gap(left, right)
        }
    }

    /// A point lying in stratum `v`.
    pub fn sample(&self, v: usize) -> Scalar {
        match self.stratum(v) {
            Stratum::Point(p) => p,
            Stratum::Gap(Some(l), Some(r)) => l.midpoint(&r),
            Stratum::Gap(Some(l), None) => l + Scalar::one(),
            Stratum::Gap(None, Some(r)) => r - Scalar::one(),
            Stratum::Gap(None, None) => Scalar::zero(),
        }
    }

    /// Vertex of the stratum containing `x`.
    pub fn locate(&self, x: &Scalar) -> usize {
        match self.points.binary_search(x) {
            Ok(i) => 2 * i + 1,
            Err(i) => 2 * i,
        }
    }

    /// Whether every finite endpoint of `interval` is a point of the model.
    pub fn refines(&self, interval: &Interval) -> bool {
        interval
            .finite_endpoints()
            .all(|p| self.points.binary_search(p).is_ok())
    }

    /// Indicator representation `k_I` (requires `self.refines(I)`).
    pub fn interval_rep(&self, interval: &Interval) -> Rep {
        debug_assert!(self.refines(interval));
        let dims: Vec<usize> = (0..self.vertices())
            .map(|v| usize::from(interval.contains(&self.sample(v))))
            .collect();
        self.indicator(dims)
    }

    /// The constant sheaf `k_ℝ`.
    pub fn constant_rep(&self) -> Rep {
        self.indicator(vec![1; self.vertices()])
    }

    fn indicator(&self, dims: Vec<usize>) -> Rep {
        let maps = self
            .quiver
            .arrows
            .iter()
            .map(|&(s, t)| {
                if dims[s] == 1 && dims[t] == 1 {
                    Mat::identity(1)
                } else {
                    Mat::zeros(dims[t], dims[s])
                }
            })
            .collect();
        Rep { dims, maps }
    }

    /// Cohomology sheaves of a barcode, one representation per degree.
    pub fn barcode_reps(&self, f: &GradedBarcode) -> BTreeMap<i64, Rep> {
        let mut out: BTreeMap<i64, Rep> = BTreeMap::new();
        for bar in f.bars() {
            let r = self.interval_rep(&bar.interval);
            match out.remove(&bar.degree) {
                Some(prev) => {
                    out.insert(bar.degree, prev.direct_sum(&r));
                }
                None => {
                    out.insert(bar.degree, r);
                }
            }
        }
        out
    }

    /// The interval of the line covered by the strata `i..=j`.
    pub fn span(&self, i: usize, j: usize) -> Interval {
        use crate::interval::EndpointKind::{Closed, Open};
        use crate::scalar::ExtendedScalar::{Finite, NegInf, PosInf};
        let (left, lk) = if i % 2 == 1 {
            (Finite(self.points[i / 2].clone()), Closed)
        } else if i == 0 {
            (NegInf, Open)
        } else {
            (Finite(self.points[i / 2 - 1].clone()), Open)
        };
        let (right, rk) = if j % 2 == 1 {
            (Finite(self.points[j / 2].clone()), Closed)
        } else if j / 2 == self.points.len() {
            (PosInf, Open)
        } else {
            (Finite(self.points[j / 2].clone()), Open)
        };
        Interval::new(left, lk, right, rk).expect("a run of strata is an interval")
    }

    /// Interval decomposition of one cohomology sheaf.
    pub fn decompose(&self, rep: &Rep, degree: i64, f: Fp) -> Vec<Bar> {
        crate::quiver::zigzag_intervals(&self.quiver, rep, f)
            .into_iter()
            .flat_map(|(i, j, m)| std::iter::repeat(Bar::new(self.span(i, j), degree)).take(m))
            .collect()
    }

    /// Stalk dimensions of a barcode at `x`.
    pub fn stalk(f: &GradedBarcode, x: &Scalar) -> GradedDims {
        f.bars()
            .iter()
            .filter(|b| b.interval.contains(x))
            .map(|b| (b.degree, 1))
            .collect()
    }
}

/// `RHom` between two complexes given by their cohomology representations,
/// using that the category of representations is hereditary:
/// `H^n RHom(M, N) = ⊕_{d₁,d₂} Ext^{n + d₁ − d₂}(H^{d₁}M, H^{d₂}N)`.
pub fn rhom_reps(
    q: &Quiver,
    m: &BTreeMap<i64, Rep>,
    n: &BTreeMap<i64, Rep>,
    field: Fp,
) -> GradedDims {
    let mut out = GradedDims::new();
    for (&d1, rm) in m {
        for (&d2, rn) in n {
            let (h0, h1) = hom_ext_dims(q, rm, rn, field);
            out.add(d2 - d1, h0);
            out.add(d2 - d1 + 1, h1);
        }
    }
    out
}

/// `RHom(F, G)` by linear algebra in the coarsest common model.
pub fn poset_oracle_rhom(f: &GradedBarcode, g: &GradedBarcode) -> GradedDims {
    let model = LineModel::for_barcodes(&[f, g]);
    let field = Fp::new(f.characteristic());
    rhom_reps(
        model.quiver(),
        &model.barcode_reps(f),
        &model.barcode_reps(g),
        field,
    )
}

/// `RΓ(ℝ; F) = RHom(k_ℝ, F)` in the model.
pub fn model_sections(f: &GradedBarcode) -> GradedDims {
    let model = LineModel::for_barcodes(&[f]);
    let field = Fp::new(f.characteristic());
    let k = BTreeMap::from([(0, model.constant_rep())]);
    rhom_reps(model.quiver(), &k, &model.barcode_reps(f), field)
}

/// `RΓ_c(ℝ; F)`, via `H^j_c(F)^∨ ≅ H^{-j} RHom(F, k_ℝ[1])`.
pub fn model_sections_c(f: &GradedBarcode) -> GradedDims {
    let model = LineModel::for_barcodes(&[f]);
    let field = Fp::new(f.characteristic());
    let k = BTreeMap::from([(-1, model.constant_rep())]);
    let dual = rhom_reps(model.quiver(), &model.barcode_reps(f), &k, field);
    dual.iter().map(|(n, dim)| (-n, dim)).collect()
}

/// Stalk of `RHom(F, k_ℝ)` at every stratum, computed on open stars.
pub fn model_dual_stalks(bar: &Bar, characteristic: u32) -> Vec<GradedDims> {
    let model = LineModel::for_intervals([&bar.interval]);
    let field = Fp::new(characteristic);
    let full = model.interval_rep(&bar.interval);
    (0..model.vertices())
        .map(|v| {
            // Open star of a point: the point and both gaps; of a gap: itself.
            let verts: Vec<usize> = if v % 2 == 1 {
                vec![v - 1, v, v + 1]
            } else {
                vec![v]
            };
            let (sub_q, sub_f) = restrict(model.quiver(), &full, &verts);
            let k = Rep {
                dims: vec![1; verts.len()],
                maps: sub_q.arrows.iter().map(|_| Mat::identity(1)).collect(),
            };
            let (h0, h1) = hom_ext_dims(&sub_q, &sub_f, &k, field);
            let mut g = GradedDims::new();
            g.add(-bar.degree, h0);
            g.add(-bar.degree + 1, h1);
            g
        })
        .collect()
}

/// Full subquiver on `verts` and the restricted representation.
pub fn restrict(q: &Quiver, rep: &Rep, verts: &[usize]) -> (Quiver, Rep) {
    let index: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut arrows = Vec::new();
    let mut maps = Vec::new();
    for (a, &(s, t)) in q.arrows.iter().enumerate() {
        if let (Some(&s2), Some(&t2)) = (index.get(&s), index.get(&t)) {
            arrows.push((s2, t2));
            maps.push(rep.maps[a].clone());
        }
    }
    (
        Quiver {
            vertices: verts.len(),
            arrows,
        },
        Rep {
            dims: verts.iter().map(|&v| rep.dims[v]).collect(),
            maps,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barcode::{global_sections, global_sections_c};

    fn bc(bars: &[(&str, i64)]) -> GradedBarcode {
        GradedBarcode::new(
            bars.iter()
                .map(|(s, d)| Bar::new(s.parse().unwrap(), *d))
                .collect(),
        )
    }

    #[test]
    fn rhom_examples() {
        let a = bc(&[("[0,1]", 0)]);
        assert_eq!(poset_oracle_rhom(&a, &a), GradedDims::single(0, 1));
        let o = bc(&[("(0,1)", 0)]);
        let p = bc(&[("[1/2,1/2]", 0)]);
        assert_eq!(poset_oracle_rhom(&o, &p), GradedDims::single(0, 1));
        assert!(poset_oracle_rhom(&GradedBarcode::empty(), &p).is_zero());
    }

    #[test]
    fn sections_match_closed_form_tables() {
        for s in [
            "[0,1]", "(0,1)", "[0,1)", "(0,1]", "[0,inf)", "(0,inf)", "(-inf,0]", "(-inf,0)",
            "(-inf,inf)", "[0,0]",
        ] {
            let f = bc(&[(s, 2)]);
            assert_eq!(model_sections(&f), global_sections(&f), "RΓ {s}");
            assert_eq!(model_sections_c(&f), global_sections_c(&f), "RΓ_c {s}");
        }
    }

    #[test]
    fn decomposition_recovers_barcodes() {
        let f = bc(&[("[0,1]", 0), ("(0,2)", 0), ("(-inf,1]", 0), ("{2}", 0), ("(1,inf)", 0)]);
        let m = LineModel::for_barcodes(&[&f]);
        let reps = m.barcode_reps(&f);
        let got = GradedBarcode::new(m.decompose(&reps[&0], 0, Fp::new(2)));
        assert_eq!(got, f);
    }
}
