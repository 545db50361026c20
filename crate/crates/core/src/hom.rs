//! Morphisms between barcodes.
//!
//! Between two shifted interval sheaves the derived Hom space has dimension
//! at most one. A [`Morphism`] stores one field scalar per pair of bars,
//! the coefficient of that space's canonical generator. Generators and the
//! structure constants of their composition are computed once in the poset
//! model and cached.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use crate::barcode::{Bar, GradedBarcode};
use crate::error::{Error, Result};
use crate::interval::{EndpointKind, Interval};
use crate::linalg::{Fp, Mat};
use crate::model::LineModel;
use crate::quiver::{delta, Rep};
use crate::scalar::{ExtendedScalar, Scalar};
use crate::tables;
use crate::thicken::thicken_tracked;

/// Endpoint code of a rank-compressed interval: `0` is `-∞`, `255` is `+∞`,
/// otherwise one more than the rank among the finite endpoints involved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalCode {
    pub left: u8,
    pub left_open: bool,
    pub right: u8,
    pub right_open: bool,
}

const NEG_INF: u8 = 0;
const POS_INF: u8 = 255;

/// Replace every finite endpoint by its rank among all finite endpoints of
/// `intervals`. Hom dimensions and composition constants depend only on
/// this combinatorial pattern.
pub fn pattern(intervals: &[&Interval]) -> Vec<IntervalCode> {
    let mut pts: Vec<&Scalar> = intervals
        .iter()
        .flat_map(|i| i.finite_endpoints())
        .collect();
    pts.sort();
    pts.dedup();
    assert!(pts.len() < 254, "too many endpoints for a pattern");
    let code = |e: &ExtendedScalar| match e {
        ExtendedScalar::NegInf => NEG_INF,
        ExtendedScalar::PosInf => POS_INF,
        ExtendedScalar::Finite(s) => pts.binary_search(&s).expect("endpoint present") as u8 + 1,
    };
    intervals
        .iter()
        .map(|i| IntervalCode {
            left: code(i.left()),
            left_open: i.left_kind() == EndpointKind::Open,
            right: code(i.right()),
            right_open: i.right_kind() == EndpointKind::Open,
        })
        .collect()
}

impl IntervalCode {
    /// Representative interval with endpoints at the integer ranks.
    pub fn representative(&self) -> Interval {
        let end = |c: u8| match c {
            NEG_INF => ExtendedScalar::NegInf,
            POS_INF => ExtendedScalar::PosInf,
            r => ExtendedScalar::Finite(Scalar::int(r as i64 - 1)),
        };
        let kind = |open: bool| {
            if open {
                EndpointKind::Open
            } else {
                EndpointKind::Closed
            }
        };
        Interval::new(
            end(self.left),
            kind(self.left_open),
            end(self.right),
            kind(self.right_open),
        )
        .expect("codes come from valid intervals")
    }
}

/// `(dim Hom, dim Ext¹)` between two interval sheaves, computed in the
/// model. This is the oracle behind the frozen table.
pub fn model_hom_ext(i: &Interval, j: &Interval, characteristic: u32) -> (usize, usize) {
    let model = LineModel::for_intervals([i, j]);
    let f = Fp::new(characteristic);
    crate::quiver::hom_ext_dims(
        model.quiver(),
        &model.interval_rep(i),
        &model.interval_rep(j),
        f,
    )
}

fn hom_ext_lookup(i: &Interval, j: &Interval) -> (usize, usize) {
    let codes = pattern(&[i, j]);
    match tables::hom_entry(codes[0], codes[1]) {
        Some(e) => e,
        None => model_hom_ext(i, j, 2),
    }
}

/// A derived Hom space between two shifted interval sheaves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpace {
    pub source: Bar,
    pub target: Bar,
    pub dim: usize,
    /// Degree of the Ext group realizing this space: `Hom(k_I[-d₁], k_J[-d₂]) = Ext^{d₁-d₂}(k_I, k_J)`.
    pub ext_index: i64,
}

pub fn hom_dim(b1: &Bar, b2: &Bar) -> HomSpace {
    let ext_index = b1.degree - b2.degree;
    let dim = match ext_index {
        0 => hom_ext_lookup(&b1.interval, &b2.interval).0,
        1 => hom_ext_lookup(&b1.interval, &b2.interval).1,
        _ => 0,
    };
    HomSpace {
        source: b1.clone(),
        target: b2.clone(),
        dim,
        ext_index,
    }
}

pub fn hom_nonzero(b1: &Bar, b2: &Bar) -> bool {
    hom_dim(b1, b2).dim > 0
}

/// Canonical generators and composition in a model refining three intervals.
struct TripleModel {
    model: LineModel,
    reps: [Rep; 3],
    f: Fp,
}

/// A class in `Hom` (vertex components) or `Ext¹` (arrow components).
enum Class {
    Hom(Vec<u32>),
    Ext(Vec<u32>),
}

impl TripleModel {
    fn new(intervals: [&Interval; 3], p: u32) -> Self {
        let model = LineModel::for_intervals(intervals);
        let reps = intervals.map(|i| model.interval_rep(i));
        TripleModel {
            model,
            reps,
            f: Fp::new(p),
        }
    }

    /// Hom component at vertex `v` of a class between `m` and `n`, as an
    /// element of the 0/1-dimensional space `Hom(M_v, N_v)`.
    fn hom_generator(&self, m: usize, n: usize) -> Option<Vec<u32>> {
        let (rm, rn) = (&self.reps[m], &self.reps[n]);
        let d = delta(self.model.quiver(), rm, rn, self.f);
        let ker = d.matrix.kernel(self.f);
        match ker.len() {
            0 => None,
            1 => {
                let mut v = ker.into_iter().next().unwrap();
                let lead = *v.iter().find(|&&x| x != 0).unwrap();
                let inv = self.f.inv(lead);
                for x in v.iter_mut() {
                    *x = self.f.mul(*x, inv);
                }
                Some(self.expand_vertices(&v, m, n))
            }
            k => panic!("Hom space of dimension {k} between interval sheaves"),
        }
    }

    /// Vertex vector indexed by all vertices (zero where either stalk vanishes).
    fn expand_vertices(&self, v: &[u32], m: usize, n: usize) -> Vec<u32> {
        let mut out = vec![0; self.model.vertices()];
        let mut k = 0;
        for (x, slot) in out.iter_mut().enumerate() {
            if self.reps[m].dims[x] == 1 && self.reps[n].dims[x] == 1 {
                *slot = v[k];
                k += 1;
            }
        }
        out
    }

    fn arrow_support(&self, m: usize, n: usize) -> Vec<usize> {
        self.model
            .quiver()
            .arrows
            .iter()
            .enumerate()
            .filter(|(_, &(s, t))| self.reps[m].dims[s] == 1 && self.reps[n].dims[t] == 1)
            .map(|(a, _)| a)
            .collect()
    }

    /// The `δ` matrix in arrow coordinates restricted to the support.
    fn delta_matrix(&self, m: usize, n: usize) -> Mat {
        delta(self.model.quiver(), &self.reps[m], &self.reps[n], self.f).matrix
    }

    /// `+1` on arrows pointing right, `-1` on arrows pointing left. Every
    /// relation in `im δ` pairs two arrows of opposite orientation at a
    /// shared point or gap, or kills one arrow outright, so a one-dimensional
    /// `Ext¹` is spanned by any surviving `orientation(α)·e_α` and all of
    /// them define the same class.
    fn orientation(&self, a: usize) -> u32 {
        let (s, t) = self.model.quiver().arrows[a];
        if t > s {
            1
        } else {
            self.f.neg(1)
        }
    }

    /// The canonical `Ext¹` generator: `orientation(α)·e_α` for the first
    /// arrow leaving an endpoint of either interval whose class survives.
    fn ext_generator(&self, m: usize, n: usize, endpoints: &[Scalar]) -> Option<Vec<u32>> {
        let support = self.arrow_support(m, n);
        let dm = self.delta_matrix(m, n);
        let base = if dm.cols() == 0 { 0 } else { dm.rank(self.f) };
        if base == support.len() {
            return None;
        }
        for (k, &a) in support.iter().enumerate() {
            let (s, _) = self.model.quiver().arrows[a];
            let point = self.model.sample(s);
            if endpoints.binary_search(&point).is_err() {
                continue;
            }
            let mut e = vec![0; support.len()];
            e[k] = 1;
            let with = dm.hcat(&Mat::from_columns(support.len(), &[e]));
            if with.rank(self.f) > base {
                let mut out = vec![0; self.model.quiver().arrows.len()];
                out[a] = self.orientation(a);
                return Some(out);
            }
        }
        panic!("nonzero Ext¹ without an endpoint generator")
    }

    fn endpoints(&self, m: usize, n: usize, intervals: &[&Interval; 3]) -> Vec<Scalar> {
        let mut pts: Vec<Scalar> = intervals[m]
            .finite_endpoints()
            .chain(intervals[n].finite_endpoints())
            .cloned()
            .collect();
        pts.sort();
        pts.dedup();
        pts
    }

    fn generator(&self, m: usize, n: usize, ext: bool, intervals: &[&Interval; 3]) -> Option<Class> {
        if ext {
            self.ext_generator(m, n, &self.endpoints(m, n, intervals))
                .map(Class::Ext)
        } else {
            self.hom_generator(m, n).map(Class::Hom)
        }
    }

    /// Coefficient of `w` on the generator of the `(m, n)` space.
    fn coordinate(&self, w: Class, m: usize, n: usize, intervals: &[&Interval; 3]) -> u32 {
        let f = self.f;
        match w {
            Class::Hom(w) => match self.hom_generator(m, n) {
                None => {
                    assert!(w.iter().all(|&x| x == 0), "composite in a zero Hom space");
                    0
                }
                Some(g) => {
                    let k = g.iter().position(|&x| x != 0).unwrap();
                    let c = f.mul(w[k], f.inv(g[k]));
                    assert!(
                        w.iter().zip(&g).all(|(&a, &b)| a == f.mul(c, b)),
                        "composite is not a multiple of the generator"
                    );
                    c
                }
            },
            Class::Ext(w) => {
                let support = self.arrow_support(m, n);
                let wv: Vec<u32> = support.iter().map(|&a| w[a]).collect();
                let dm = self.delta_matrix(m, n);
                match self.ext_generator(m, n, &self.endpoints(m, n, intervals)) {
                    None => 0,
                    Some(g) => {
                        let gv: Vec<u32> = support.iter().map(|&a| g[a]).collect();
                        let sys = dm.hcat(&Mat::from_columns(support.len(), &[gv]));
                        let x = sys.solve(&wv, f).expect("Ext¹ class outside the span");
                        *x.last().unwrap()
                    }
                }
            }
        }
    }

    /// `c` with `gen(1,2) ∘ gen(0,1) = c · gen(0,2)`.
    fn constant(&self, j1: bool, j2: bool, intervals: &[&Interval; 3]) -> u32 {
        let f = self.f;
        let (Some(g01), Some(g12)) = (
            self.generator(0, 1, j1, intervals),
            self.generator(1, 2, j2, intervals),
        ) else {
            return 0;
        };
        let arrows = &self.model.quiver().arrows;
        let composite = match (g01, g12) {
            (Class::Hom(a), Class::Hom(b)) => {
                Class::Hom(a.iter().zip(&b).map(|(&x, &y)| f.mul(x, y)).collect())
            }
            (Class::Hom(a), Class::Ext(b)) => Class::Ext(
                arrows
                    .iter()
                    .enumerate()
                    .map(|(k, &(s, _))| f.mul(b[k], a[s]))
                    .collect(),
            ),
            (Class::Ext(a), Class::Hom(b)) => Class::Ext(
                arrows
                    .iter()
                    .enumerate()
                    .map(|(k, &(_, t))| f.mul(b[t], a[k]))
                    .collect(),
            ),
            (Class::Ext(_), Class::Ext(_)) => return 0,
        };
        self.coordinate(composite, 0, 2, intervals)
    }
}

type ConstantKey = ([IntervalCode; 3], bool, bool, u32);

fn constant_cache() -> &'static Mutex<HashMap<ConstantKey, u32>> {
    static CACHE: OnceLock<Mutex<HashMap<ConstantKey, u32>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Structure constant `c` with `gen(b, c) ∘ gen(a, b) = c · gen(a, c)`;
/// zero unless both factors are nonzero Hom spaces.
pub fn structure_constant(a: &Bar, b: &Bar, c: &Bar, p: u32) -> u32 {
    let (j1, j2) = (a.degree - b.degree, b.degree - c.degree);
    if !(0..=1).contains(&j1) || !(0..=1).contains(&j2) || j1 + j2 > 1 {
        return 0;
    }
    if !hom_nonzero(a, b) || !hom_nonzero(b, c) {
        return 0;
    }
    let codes = pattern(&[&a.interval, &b.interval, &c.interval]);
    let key: ConstantKey = ([codes[0], codes[1], codes[2]], j1 == 1, j2 == 1, p);
    if let Some(&v) = constant_cache().lock().unwrap().get(&key) {
        return v;
    }
    let reps = [
        codes[0].representative(),
        codes[1].representative(),
        codes[2].representative(),
    ];
    let intervals = [&reps[0], &reps[1], &reps[2]];
    let v = TripleModel::new(intervals, p).constant(j1 == 1, j2 == 1, &intervals);
    constant_cache().lock().unwrap().insert(key, v);
    v
}

/// A morphism of barcodes: coefficients on canonical generators, indexed by
/// `(source bar, target bar)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    source: GradedBarcode,
    target: GradedBarcode,
    blocks: BTreeMap<(usize, usize), u32>,
}

impl Morphism {
    /// Builds a morphism, dropping zero blocks and rejecting blocks on pairs
    /// with vanishing Hom space.
    pub fn new(
        source: GradedBarcode,
        target: GradedBarcode,
        blocks: BTreeMap<(usize, usize), u32>,
    ) -> Result<Self> {
        let p = source.characteristic();
        if p != target.characteristic() {
            return Err(Error::CharacteristicMismatch(p, target.characteristic()));
        }
        let mut clean = BTreeMap::new();
        for ((i, j), v) in blocks {
            let v = v % p;
            if v == 0 {
                continue;
            }
            let (Some(bi), Some(bj)) = (source.bars().get(i), target.bars().get(j)) else {
                return Err(Error::ShapeMismatch(format!("block ({i}, {j}) out of range")));
            };
            if !hom_nonzero(bi, bj) {
                return Err(Error::ShapeMismatch(format!(
                    "block ({i}, {j}) on the zero Hom space {bi} → {bj}"
                )));
            }
            clean.insert((i, j), v);
        }
        Ok(Morphism {
            source,
            target,
            blocks: clean,
        })
    }

    pub(crate) fn from_clean(
        source: GradedBarcode,
        target: GradedBarcode,
        blocks: BTreeMap<(usize, usize), u32>,
    ) -> Self {
        Morphism {
            source,
            target,
            blocks,
        }
    }

    pub fn zero(source: GradedBarcode, target: GradedBarcode) -> Self {
        Morphism {
            source,
            target,
            blocks: BTreeMap::new(),
        }
    }

    pub fn identity(f: &GradedBarcode) -> Self {
        Morphism {
            source: f.clone(),
            target: f.clone(),
            blocks: (0..f.len()).map(|i| ((i, i), 1)).collect(),
        }
    }

    pub fn source(&self) -> &GradedBarcode {
        &self.source
    }

    pub fn target(&self) -> &GradedBarcode {
        &self.target
    }

    pub fn blocks(&self) -> &BTreeMap<(usize, usize), u32> {
        &self.blocks
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.blocks.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn characteristic(&self) -> u32 {
        self.source.characteristic()
    }
}

impl std::fmt::Debug for Morphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} → {} {:?}", self.source, self.target, self.blocks)
    }
}

/// Composite in diagrammatic order: first `m1`, then `m2`.
pub fn compose(m1: &Morphism, m2: &Morphism) -> Result<Morphism> {
    if m1.target != m2.source {
        return Err(Error::ShapeMismatch(format!(
            "target {} differs from source {}",
            m1.target, m2.source
        )));
    }
    let p = m1.characteristic();
    let f = Fp::new(p);
    let mut by_middle: BTreeMap<usize, Vec<(usize, u32)>> = BTreeMap::new();
    for (&(j, k), &v) in &m2.blocks {
        by_middle.entry(j).or_default().push((k, v));
    }
    let mut out: BTreeMap<(usize, usize), u32> = BTreeMap::new();
    for (&(i, j), &u) in &m1.blocks {
        let Some(row) = by_middle.get(&j) else {
            continue;
        };
        for &(k, v) in row {
            let c = structure_constant(
                &m1.source.bars()[i],
                &m1.target.bars()[j],
                &m2.target.bars()[k],
                p,
            );
            if c == 0 {
                continue;
            }
            let e = out.entry((i, k)).or_insert(0);
            *e = f.add(*e, f.mul(c, f.mul(u, v)));
        }
    }
    out.retain(|_, v| *v != 0);
    Ok(Morphism::from_clean(
        m1.source.clone(),
        m2.target.clone(),
        out,
    ))
}

/// Image of a morphism under the thickening functor.
///
/// Thickening is an equivalence and every Hom space has dimension at most
/// one, so each generator goes to the generator between the image bars.
pub fn thicken_morphism(m: &Morphism, a: &Scalar) -> Morphism {
    let (src, ps) = thicken_tracked(&m.source, a);
    let (tgt, pt) = thicken_tracked(&m.target, a);
    let blocks = m
        .blocks
        .iter()
        .map(|(&(i, j), &v)| ((ps[i], pt[j]), v))
        .collect();
    Morphism::from_clean(src, tgt, blocks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bar(s: &str, d: i64) -> Bar {
        Bar::new(s.parse().unwrap(), d)
    }

    #[test]
    fn hom_dim_examples() {
        assert_eq!(hom_dim(&bar("[0,1]", 0), &bar("[2,3]", 0)).dim, 0);
        for b in [bar("[0,1]", 0), bar("(0,1)", 3), bar("(-inf,2]", 1)] {
            assert_eq!(hom_dim(&b, &b).dim, 1);
        }
        // Restriction to a closed subinterval that is open in the target.
        assert_eq!(hom_dim(&bar("[-1,4]", 0), &bar("[0,3]", 0)).dim, 1);
        // The overlap [1,2] is not open in [1,3].
        assert_eq!(hom_dim(&bar("[0,2]", 0), &bar("[1,3]", 0)).dim, 0);
        assert_eq!(hom_dim(&bar("[2,2]", 1), &bar("(0,4)", 0)).dim, 1);
        assert_eq!(hom_dim(&bar("(0,4)", 0), &bar("[2,2]", 0)).dim, 1);
    }

    #[test]
    fn identity_is_unit() {
        let f = GradedBarcode::new(vec![bar("[0,1]", 0), bar("(0,2)", 1)]);
        let id = Morphism::identity(&f);
        assert_eq!(compose(&id, &id).unwrap(), id);
    }

    #[test]
    fn composite_through_disjoint_bar_is_zero() {
        let a = GradedBarcode::new(vec![bar("[0,1]", 0)]);
        let b = GradedBarcode::new(vec![bar("[5,6]", 0)]);
        let m1 = Morphism::zero(a.clone(), b.clone());
        let m2 = Morphism::zero(b, a);
        assert!(compose(&m1, &m2).unwrap().is_zero());
    }

    #[test]
    fn compose_checks_shapes() {
        let a = GradedBarcode::new(vec![bar("[0,1]", 0)]);
        let b = GradedBarcode::new(vec![bar("[5,6]", 0)]);
        let m1 = Morphism::identity(&a);
        let m2 = Morphism::identity(&b);
        assert!(matches!(compose(&m1, &m2), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn blocks_on_zero_spaces_are_rejected() {
        let a = GradedBarcode::new(vec![bar("[0,1]", 0)]);
        let b = GradedBarcode::new(vec![bar("[5,6]", 0)]);
        assert!(Morphism::new(a, b, BTreeMap::from([((0, 0), 1)])).is_err());
    }
}
