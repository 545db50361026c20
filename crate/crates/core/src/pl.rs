//! Piecewise-linear maps of the line, proper pushforward of barcodes along
//! them, and the stability and Lipschitz experiments.
//!
//! `f_! k_I` is computed on a stratification of the source refined so that
//! every open segment maps either to a single value or homeomorphically onto
//! an open gap between target critical values. With `f` proper on `I`,
//! base change gives stalks `RΓ_c(f⁻¹(y) ∩ I)`: a gap sees one point per
//! segment above it, a point `y` sees one summand per connected component
//! `K` of `f⁻¹(y)` through `RΓ_c(K ∩ I)`. Degree-one stalks live only at
//! points, so `H¹` is a sum of skyscrapers and only `H⁰` needs its
//! generization maps and a zigzag decomposition.

use std::time::Instant;

use crate::barcode::{compact_sections_offset, Bar, GradedBarcode, GradedDims};
use crate::error::{Error, Result};
use crate::interleave::{check_interleaving, verify_certificate, Budget, Certificate, Strategy};
use crate::interval::Interval;
use crate::linalg::{Fp, Mat};
use crate::model::LineModel;
use crate::quiver::Rep;
use crate::scalar::{ExtendedScalar, Scalar};

/// Behaviour beyond the outermost breakpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extension {
    Constant,
    /// Continue the slope of the outermost piece.
    Affine,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLMap {
    xs: Vec<Scalar>,
    ys: Vec<Scalar>,
    left: Extension,
    right: Extension,
    domain: Option<Interval>,
}

/// A maximal open piece on which the map is affine: `f(x) = y0 + slope (x - x0)`.
#[derive(Clone, Debug)]
struct Piece {
    lo: ExtendedScalar,
    hi: ExtendedScalar,
    x0: Scalar,
    y0: Scalar,
    slope: Scalar,
}

impl Piece {
    fn at(&self, x: &Scalar) -> Scalar {
        &self.y0 + &(&self.slope * &(x - &self.x0))
    }

    fn closure_contains(&self, x: &Scalar) -> bool {
        let x = ExtendedScalar::Finite(x.clone());
        self.lo <= x && x <= self.hi
    }

    fn as_interval(&self) -> Interval {
        use crate::interval::EndpointKind::Open;
        Interval::new(self.lo.clone(), Open, self.hi.clone(), Open).expect("pieces are non-empty")
    }
}

impl PLMap {
    /// Breakpoints `(x_i, f(x_i))` with strictly increasing `x_i`.
    pub fn new(points: Vec<(Scalar, Scalar)>, left: Extension, right: Extension, domain: Option<Interval>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidArgument("a PL map needs at least one breakpoint".into()));
        }
        if points.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidArgument("breakpoints must be strictly increasing".into()));
        }
        let (xs, ys) = points.into_iter().unzip();
        Ok(PLMap {
            xs,
            ys,
            left,
            right,
            domain,
        })
    }

    pub fn affine(slope: Scalar, intercept: Scalar) -> Self {
        let pts = vec![(Scalar::zero(), intercept.clone()), (Scalar::one(), intercept + slope)];
        PLMap::new(pts, Extension::Affine, Extension::Affine, None).expect("two increasing breakpoints")
    }

    pub fn identity() -> Self {
        PLMap::affine(Scalar::one(), Scalar::zero())
    }

    pub fn constant(c: Scalar) -> Self {
        PLMap::new(vec![(Scalar::zero(), c)], Extension::Constant, Extension::Constant, None)
            .expect("one breakpoint")
    }

    pub fn with_domain(mut self, domain: Interval) -> Self {
        self.domain = Some(domain);
        self
    }

    pub fn breakpoints(&self) -> Vec<(Scalar, Scalar)> {
        self.xs.iter().cloned().zip(self.ys.iter().cloned()).collect()
    }

    pub fn extensions(&self) -> (Extension, Extension) {
        (self.left, self.right)
    }

    pub fn domain(&self) -> Option<&Interval> {
        self.domain.as_ref()
    }

    fn domain_or_line(&self) -> Interval {
        self.domain.clone().unwrap_or_else(Interval::line)
    }

    /// Slope beyond the outermost breakpoint on one side.
    fn end_slope(&self, right: bool) -> Scalar {
        let n = self.xs.len();
        let ext = if right { self.right } else { self.left };
        if ext == Extension::Constant || n < 2 {
            return Scalar::zero();
        }
        let (a, b) = if right { (n - 2, n - 1) } else { (0, 1) };
        (&self.ys[b] - &self.ys[a]) / (&self.xs[b] - &self.xs[a])
    }

    fn pieces(&self) -> Vec<Piece> {
        use ExtendedScalar::{Finite, NegInf, PosInf};
        let n = self.xs.len();
        let mut out = vec![Piece {
            lo: NegInf,
            hi: Finite(self.xs[0].clone()),
            x0: self.xs[0].clone(),
            y0: self.ys[0].clone(),
            slope: self.end_slope(false),
        }];
        for i in 0..n - 1 {
            out.push(Piece {
                lo: Finite(self.xs[i].clone()),
                hi: Finite(self.xs[i + 1].clone()),
                x0: self.xs[i].clone(),
                y0: self.ys[i].clone(),
                slope: (&self.ys[i + 1] - &self.ys[i]) / (&self.xs[i + 1] - &self.xs[i]),
            });
        }
        out.push(Piece {
            lo: Finite(self.xs[n - 1].clone()),
            hi: PosInf,
            x0: self.xs[n - 1].clone(),
            y0: self.ys[n - 1].clone(),
            slope: self.end_slope(true),
        });
        out
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let pieces = self.pieces();
        let p = pieces
            .iter()
            .find(|p| p.closure_contains(x))
            .expect("pieces cover the line");
        p.at(x)
    }

    /// Solutions of `f(x) = y`: isolated points and closed constant pieces.
    fn fiber(&self, y: &Scalar) -> Vec<(ExtendedScalar, ExtendedScalar)> {
        let mut parts: Vec<(ExtendedScalar, ExtendedScalar)> = Vec::new();
        for p in self.pieces() {
            if p.slope.is_zero() {
                if &p.y0 == y {
                    parts.push((p.lo.clone(), p.hi.clone()));
                }
                continue;
            }
            let x = &p.x0 + &((y - &p.y0) / &p.slope);
            if p.closure_contains(&x) {
                let e = ExtendedScalar::Finite(x);
                parts.push((e.clone(), e));
            }
        }
        parts.sort();
        let mut merged: Vec<(ExtendedScalar, ExtendedScalar)> = Vec::new();
        for (lo, hi) in parts {
            match merged.last_mut() {
                Some(last) if lo <= last.1 => {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                }
                _ => merged.push((lo, hi)),
            }
        }
        merged
    }

    /// The map `x ↦ g(f(x))`.
    pub fn then(&self, g: &PLMap) -> Result<PLMap> {
        if g.domain.is_some() {
            return Err(Error::DomainMismatch("the outer map of a composite must be defined on ℝ".into()));
        }
        let mut xs = self.xs.clone();
        for y in &g.xs {
            for (lo, hi) in self.fiber(y) {
                xs.extend(lo.finite().cloned());
                xs.extend(hi.finite().cloned());
            }
        }
        xs.sort();
        xs.dedup();
        // Outer points make the end pieces carry the true end slopes.
        let first = &xs[0] - &Scalar::one();
        let last = &xs[xs.len() - 1] + &Scalar::one();
        xs.insert(0, first);
        xs.push(last);
        let points = xs.into_iter().map(|x| {
            let y = g.eval(&self.eval(&x));
            (x, y)
        });
        PLMap::new(points.collect(), Extension::Affine, Extension::Affine, self.domain.clone())
    }
}

impl std::fmt::Display for PLMap {
    /// `pl(x:y, …; left, right)` with `; domain I` when restricted.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = |e: Extension| match e {
            Extension::Constant => "constant",
            Extension::Affine => "affine",
        };
        write!(f, "pl(")?;
        for (i, (x, y)) in self.xs.iter().zip(&self.ys).enumerate() {
            write!(f, "{}{x}:{y}", if i > 0 { " " } else { "" })?;
        }
        write!(f, "; {}, {}", name(self.left), name(self.right))?;
        if let Some(d) = &self.domain {
            write!(f, "; domain {d}")?;
        }
        write!(f, ")")
    }
}

/// `sup_x |f(x) − g(x)|` over the common domain.
pub fn sup_distance(f: &PLMap, g: &PLMap) -> Result<ExtendedScalar> {
    if f.domain != g.domain {
        return Err(Error::DomainMismatch(format!(
            "domains {:?} and {:?}",
            f.domain, g.domain
        )));
    }
    let d = f.domain_or_line();
    for (right, end) in [(false, d.left()), (true, d.right())] {
        if !end.is_finite() && f.end_slope(right) != g.end_slope(right) {
            return Ok(ExtendedScalar::PosInf);
        }
    }
    let mut pts: Vec<Scalar> = f.xs.iter().chain(&g.xs).filter(|x| d.contains(x)).cloned().collect();
    pts.extend(d.finite_endpoints().cloned());
    let best = pts
        .iter()
        .map(|x| (f.eval(x) - g.eval(x)).abs())
        .max()
        .unwrap_or_else(Scalar::zero);
    Ok(ExtendedScalar::Finite(best))
}

/// Largest absolute slope over the pieces meeting the domain.
pub fn lipschitz_constant(f: &PLMap) -> Scalar {
    let d = f.domain_or_line();
    f.pieces()
        .iter()
        .filter(|p| p.as_interval().intersect(&d).is_some())
        .map(|p| p.slope.abs())
        .max()
        .unwrap_or_else(Scalar::zero)
}

fn check_bar(f: &PLMap, bar: &Bar) -> Result<()> {
    let iv = &bar.interval;
    if iv.intersect(&f.domain_or_line()).as_ref() != Some(iv) {
        return Err(Error::DomainMismatch(format!("bar {bar} leaves the domain of the map")));
    }
    for (right, end) in [(false, iv.left()), (true, iv.right())] {
        if !end.is_finite() && f.end_slope(right).is_zero() {
            return Err(Error::NotProper(format!(
                "bar {bar} is unbounded where the map is eventually constant"
            )));
        }
    }
    Ok(())
}

/// A source segment between consecutive source points (`None` outside).
struct Segment {
    left: Option<usize>,
    right: Option<usize>,
    inside: bool,
    /// Target gap vertex, or `None` when the map is constant on it.
    gap: Option<usize>,
}

fn push_bar(f: &PLMap, bar: &Bar) -> Result<Vec<Bar>> {
    check_bar(f, bar)?;
    let iv = &bar.interval;
    let in_closure = |x: &Scalar| {
        let e = ExtendedScalar::Finite(x.clone());
        iv.left() <= &e && &e <= iv.right()
    };
    let mut src: Vec<Scalar> = f.xs.iter().filter(|x| in_closure(x)).cloned().collect();
    src.extend(iv.finite_endpoints().cloned());
    let mut ys: Vec<Scalar> = src.iter().map(|x| f.eval(x)).collect();
    ys.sort();
    ys.dedup();
    for y in &ys {
        for (lo, hi) in f.fiber(y) {
            src.extend(lo.finite().filter(|x| in_closure(x)).cloned());
            src.extend(hi.finite().filter(|x| in_closure(x)).cloned());
        }
    }
    src.sort();
    src.dedup();
    let target = LineModel::new(ys.clone());
    let m = src.len();
    let values: Vec<Scalar> = src.iter().map(|x| f.eval(x)).collect();

    let mut segments = Vec::new();
    let mut bounds: Vec<(Option<usize>, Option<usize>)> = Vec::new();
    if !iv.left().is_finite() {
        bounds.push((None, Some(0)));
    }
    bounds.extend((0..m.saturating_sub(1)).map(|i| (Some(i), Some(i + 1))));
    if !iv.right().is_finite() {
        bounds.push((Some(m - 1), None));
    }
    for (l, r) in bounds {
        let sample = match (l, r) {
            (Some(l), Some(r)) => src[l].midpoint(&src[r]),
            (Some(l), None) => &src[l] + &Scalar::one(),
            (None, Some(r)) => &src[r] - &Scalar::one(),
            (None, None) => unreachable!("source points are never empty"),
        };
        let constant = matches!((l, r), (Some(l), Some(r)) if values[l] == values[r]);
        let gap = (!constant).then(|| target.locate(&f.eval(&sample)));
        debug_assert!(gap.map_or(true, |v| v % 2 == 0));
        segments.push(Segment {
            left: l,
            right: r,
            inside: iv.contains(&sample),
            gap,
        });
    }

    // Components over each target point: maximal runs of source points
    // joined by constant segments.
    let mut component_of = vec![usize::MAX; m];
    let mut components: Vec<(usize, usize)> = Vec::new();
    for i in 0..m {
        let joined = i > 0
            && segments
                .iter()
                .any(|s| s.left == Some(i - 1) && s.right == Some(i) && s.gap.is_none());
        if joined {
            component_of[i] = components.len() - 1;
            components.last_mut().expect("run in progress").1 = i;
        } else {
            component_of[i] = components.len();
            components.push((i, i));
        }
    }
    let verts = target.vertices();
    let mut h0_basis: Vec<Vec<usize>> = vec![Vec::new(); verts];
    let mut h1 = Vec::new();
    let mut h0_index = vec![None; components.len()];
    for (c, &(a, b)) in components.iter().enumerate() {
        let k = Interval::closed(src[a].clone(), src[b].clone()).expect("ordered component");
        let Some(meet) = k.intersect(iv) else {
            continue;
        };
        let v = target.locate(&values[a]);
        match compact_sections_offset(meet.shape()) {
            Some(0) => {
                h0_index[c] = Some(h0_basis[v].len());
                h0_basis[v].push(c);
            }
            Some(1) => h1.push(values[a].clone()),
            _ => {}
        }
    }
    let mut gap_basis: Vec<Vec<usize>> = vec![Vec::new(); verts];
    let mut gap_index = vec![None; segments.len()];
    for (s, seg) in segments.iter().enumerate() {
        if let (Some(v), true) = (seg.gap, seg.inside) {
            gap_index[s] = Some(gap_basis[v].len());
            gap_basis[v].push(s);
        }
    }
    let dims: Vec<usize> = (0..verts).map(|v| h0_basis[v].len() + gap_basis[v].len()).collect();
    let maps = target
        .quiver()
        .arrows
        .iter()
        .map(|&(pt, gap)| {
            let y = &ys[pt / 2];
            let mut mat = Mat::zeros(dims[gap], dims[pt]);
            for &s in &gap_basis[gap] {
                let seg = &segments[s];
                let end = [seg.left, seg.right].into_iter().flatten().find(|&i| &values[i] == y);
                if let Some(col) = end.and_then(|i| h0_index[component_of[i]]) {
                    mat.set(gap_index[s].expect("inside segment"), col, 1);
                }
            }
            mat
        })
        .collect();
    let rep = Rep { dims, maps };
    debug_assert!(rep.is_consistent(target.quiver()));
    let p = Fp::new(2);
    let mut out = target.decompose(&rep, bar.degree, p);
    out.extend(h1.into_iter().map(|y| Bar::new(Interval::point(y), bar.degree + 1)));
    Ok(out)
}

/// `f_! F` for `f` proper on the support of `F`.
pub fn pushforward_shriek(f: &PLMap, x: &GradedBarcode) -> Result<GradedBarcode> {
    let mut bars = Vec::new();
    for bar in x.bars() {
        bars.extend(push_bar(f, bar)?);
    }
    Ok(GradedBarcode::from_bars(bars, x.characteristic()))
}

/// Stalk of `f_! F` at `y` straight from the fibre: `RΓ_c(f⁻¹(y) ∩ I)` per bar.
pub fn pushforward_stalk_oracle(f: &PLMap, x: &GradedBarcode, y: &Scalar) -> GradedDims {
    use crate::interval::EndpointKind::Closed;
    let mut out = GradedDims::new();
    for (lo, hi) in f.fiber(y) {
        let k = Interval::new(lo, Closed, hi, Closed).expect("fibre component");
        for bar in x.bars() {
            if let Some(meet) = k.intersect(&bar.interval) {
                if let Some(off) = compact_sections_offset(meet.shape()) {
                    out.add(bar.degree + off, 1);
                }
            }
        }
    }
    out
}

/// Points at which to compare stalks: every image of a breakpoint or bar
/// endpoint, a point between consecutive ones, and points outside them.
pub fn pushforward_sample_points(f: &PLMap, x: &GradedBarcode) -> Vec<Scalar> {
    let mut ys: Vec<Scalar> = f.xs.iter().chain(x.finite_endpoints().iter()).map(|t| f.eval(t)).collect();
    ys.sort();
    ys.dedup();
    let mut out = ys.clone();
    for w in ys.windows(2) {
        out.push(w[0].midpoint(&w[1]));
    }
    if let (Some(lo), Some(hi)) = (ys.first(), ys.last()) {
        out.push(lo - &Scalar::one());
        out.push(hi + &Scalar::one());
    }
    out
}

/// Both pushforward oracles: stalks against the fibres at every sample
/// point, and `RΓ_c` preserved.
pub fn validate_pushforward(f: &PLMap, x: &GradedBarcode, pushed: &GradedBarcode) -> bool {
    let stalks = pushforward_sample_points(f, x)
        .iter()
        .all(|y| LineModel::stalk(pushed, y) == pushforward_stalk_oracle(f, x, y));
    stalks && crate::barcode::global_sections_c(pushed) == crate::barcode::global_sections_c(x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentReport {
    pub experiment: String,
    pub inputs: Vec<(String, String)>,
    pub bounds: Vec<(String, ExtendedScalar)>,
    pub certificate: Option<Certificate>,
    pub verdict: Verdict,
    pub note: String,
    pub micros: u128,
}

/// Matching, then exhaustive search; a proven absence is `Ok(None)` and a
/// budget overrun is `Err(Capacity)`.
fn find_certificate(f: &GradedBarcode, g: &GradedBarcode, a: &Scalar, budget: Budget) -> Result<Option<Certificate>> {
    if let Some(c) = check_interleaving(f, g, a, Strategy::Matching, budget)? {
        return Ok(Some(c));
    }
    check_interleaving(f, g, a, Strategy::Exhaustive, budget)
}

fn settle(found: Result<Option<Certificate>>, report: &mut ExperimentReport) -> Result<()> {
    match found {
        Ok(Some(c)) => {
            report.certificate = Some(c);
            report.verdict = Verdict::Pass;
        }
        Ok(None) => {
            report.verdict = Verdict::Fail;
            report.note = "exhaustive search proves no certificate exists".into();
        }
        Err(Error::Capacity { needed, cap }) => {
            report.verdict = Verdict::Inconclusive;
            report.note = format!("search needs {needed} unknowns, budget is {cap}");
        }
        Err(e) => return Err(e),
    }
    Ok(())
}

/// Searches for an interleaving of `f_! F` and `g_! F` at `sup |f − g|`.
pub fn stability_experiment(f: &PLMap, g: &PLMap, x: &GradedBarcode, budget: Budget) -> Result<ExperimentReport> {
    let start = Instant::now();
    let a = sup_distance(f, g)?;
    let (pf, pg) = (pushforward_shriek(f, x)?, pushforward_shriek(g, x)?);
    let mut report = ExperimentReport {
        experiment: "stability".into(),
        inputs: vec![
            ("F".into(), x.to_string()),
            ("f_!F".into(), pf.to_string()),
            ("g_!F".into(), pg.to_string()),
        ],
        bounds: vec![("sup_distance".into(), a.clone())],
        certificate: None,
        verdict: Verdict::Pass,
        note: String::new(),
        micros: 0,
    };
    match a.finite() {
        None => report.note = "maps are at infinite distance; nothing to certify".into(),
        Some(a) => settle(find_certificate(&pf, &pg, a, budget), &mut report)?,
    }
    report.micros = start.elapsed().as_micros();
    Ok(report)
}

/// Given an `a`-interleaving of `F1` and `F2` (searched when not supplied),
/// searches for a `δa`-interleaving of the pushforwards, `δ` the Lipschitz
/// constant of `f`.
pub fn lipschitz_experiment(
    f: &PLMap,
    x1: &GradedBarcode,
    x2: &GradedBarcode,
    a: &Scalar,
    supplied: Option<&Certificate>,
    budget: Budget,
) -> Result<ExperimentReport> {
    let start = Instant::now();
    let delta = lipschitz_constant(f);
    let target = &delta * a;
    let (p1, p2) = (pushforward_shriek(f, x1)?, pushforward_shriek(f, x2)?);
    let mut report = ExperimentReport {
        experiment: "lipschitz".into(),
        inputs: vec![
            ("F1".into(), x1.to_string()),
            ("F2".into(), x2.to_string()),
            ("f_!F1".into(), p1.to_string()),
            ("f_!F2".into(), p2.to_string()),
        ],
        bounds: vec![
            ("a".into(), ExtendedScalar::Finite(a.clone())),
            ("delta".into(), ExtendedScalar::Finite(delta.clone())),
            ("delta*a".into(), ExtendedScalar::Finite(target.clone())),
        ],
        certificate: None,
        verdict: Verdict::Pass,
        note: String::new(),
        micros: 0,
    };
    let premise = match supplied {
        Some(c) if c.a == *a => verify_certificate(x1, x2, c).map(|ok| ok.then_some(())),
        Some(c) => Err(Error::InvalidArgument(format!("supplied certificate is at {}, not {a}", c.a))),
        None => find_certificate(x1, x2, a, budget).map(|c| c.map(|_| ())),
    };
    match premise {
        Ok(Some(())) => settle(find_certificate(&p1, &p2, &target, budget), &mut report)?,
        Ok(None) => {
            report.verdict = Verdict::Inconclusive;
            report.note = format!("no {a}-interleaving of the inputs to transport");
        }
        Err(Error::Capacity { .. }) => {
            report.verdict = Verdict::Inconclusive;
            report.note = "input interleaving undecided within budget".into();
        }
        Err(e) => return Err(e),
    }
    report.micros = start.elapsed().as_micros();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d)
    }

    fn bc(bars: &[(&str, i64)]) -> GradedBarcode {
        GradedBarcode::new(bars.iter().map(|(s, d)| Bar::new(s.parse().unwrap(), *d)).collect())
    }

    fn abs() -> PLMap {
        PLMap::new(
            vec![(q(-1, 1), q(1, 1)), (q(0, 1), q(0, 1)), (q(1, 1), q(1, 1))],
            Extension::Affine,
            Extension::Affine,
            None,
        )
        .unwrap()
    }

    fn shifted(f: &PLMap, c: Scalar) -> PLMap {
        let pts = f.breakpoints().into_iter().map(|(x, y)| (x, y + &c)).collect();
        let (l, r) = f.extensions();
        PLMap::new(pts, l, r, f.domain().cloned()).unwrap()
    }

    #[test]
    fn sup_distance_examples() {
        let f = abs();
        assert_eq!(sup_distance(&f, &f).unwrap(), ExtendedScalar::Finite(q(0, 1)));
        let dom: Interval = "[-1,1]".parse().unwrap();
        let (a, b) = (abs().with_domain(dom.clone()), shifted(&abs(), q(1, 8)).with_domain(dom));
        assert_eq!(sup_distance(&a, &b).unwrap(), ExtendedScalar::Finite(q(1, 8)));
        let two = PLMap::affine(q(2, 1), q(0, 1));
        assert_eq!(sup_distance(&PLMap::identity(), &two).unwrap(), ExtendedScalar::PosInf);
        assert!(matches!(sup_distance(&a, &abs()), Err(Error::DomainMismatch(_))));
    }

    #[test]
    fn lipschitz_examples() {
        assert_eq!(lipschitz_constant(&PLMap::identity()), q(1, 1));
        assert_eq!(lipschitz_constant(&PLMap::affine(q(1, 2), q(3, 1))), q(1, 2));
        assert_eq!(lipschitz_constant(&abs()), q(1, 1));
    }

    #[test]
    fn pushforward_examples() {
        let f = bc(&[("[0,1]", 0), ("(1,3)", 1), ("[2,inf)", 0)]);
        assert_eq!(pushforward_shriek(&PLMap::identity(), &f).unwrap(), f);
        let line = bc(&[("(-inf,inf)", 0)]);
        let got = pushforward_shriek(&abs(), &line).unwrap();
        assert_eq!(got, bc(&[("[0,inf)", 0), ("(0,inf)", 0)]));
        let c = PLMap::constant(q(5, 2));
        assert_eq!(pushforward_shriek(&c, &bc(&[("[0,1]", 0)])).unwrap(), bc(&[("{5/2}", 0)]));
        assert_eq!(pushforward_shriek(&c, &bc(&[("(0,1)", 0)])).unwrap(), bc(&[("{5/2}", 1)]));
        assert!(pushforward_shriek(&c, &bc(&[("[0,1)", 0)])).unwrap().is_empty());
        assert!(matches!(pushforward_shriek(&c, &line), Err(Error::NotProper(_))));
    }

    #[test]
    fn folding_a_closed_bar() {
        let f = bc(&[("[-2,1]", 0), ("(-1,2)", 0), ("[-1,1)", 2)]);
        let out = pushforward_shriek(&abs(), &f).unwrap();
        assert!(validate_pushforward(&abs(), &f, &out), "{out}");
        // [−2,1] folds to [0,2] ⊕ (0,1]; (−1,2) folds to [0,1) ⊕ (0,2).
        let folded = bc(&[("[0,2]", 0), ("(0,1]", 0), ("[0,1)", 0), ("(0,2)", 0), ("[0,1)", 2), ("(0,1]", 2)]);
        assert_eq!(out, folded);
    }

    #[test]
    fn composites() {
        let g = PLMap::new(
            vec![(q(0, 1), q(1, 1)), (q(1, 1), q(0, 1)), (q(3, 1), q(2, 1))],
            Extension::Affine,
            Extension::Affine,
            None,
        )
        .unwrap();
        let gf = abs().then(&g).unwrap();
        for x in [q(-3, 1), q(-1, 2), q(0, 1), q(2, 1), q(7, 1)] {
            assert_eq!(gf.eval(&x), g.eval(&abs().eval(&x)));
        }
        let f = bc(&[("[-2,1]", 0), ("(-1,3)", 1), ("{1/2}", 0)]);
        let direct = pushforward_shriek(&gf, &f).unwrap();
        let stepwise = pushforward_shriek(&g, &pushforward_shriek(&abs(), &f).unwrap()).unwrap();
        assert_eq!(direct, stepwise);
    }

    #[test]
    fn stability_examples() {
        let budget = Budget::default();
        let f = bc(&[("[-1,1]", 0)]);
        let r = stability_experiment(&abs(), &abs(), &f, budget).unwrap();
        assert_eq!((r.verdict, r.bounds[0].1.clone()), (Verdict::Pass, ExtendedScalar::Finite(q(0, 1))));
        let dom: Interval = "[-1,1]".parse().unwrap();
        let (a, b) = (abs().with_domain(dom.clone()), shifted(&abs(), q(1, 8)).with_domain(dom));
        let r = stability_experiment(&a, &b, &f, budget).unwrap();
        assert_eq!((r.verdict, r.bounds[0].1.clone()), (Verdict::Pass, ExtendedScalar::Finite(q(1, 8))));
        let pt = bc(&[("{0}", 0)]);
        let r = stability_experiment(&PLMap::identity(), &PLMap::affine(q(1, 1), q(5, 1)), &pt, budget).unwrap();
        assert_eq!((r.verdict, r.bounds[0].1.clone()), (Verdict::Pass, ExtendedScalar::Finite(q(5, 1))));
    }

    #[test]
    fn lipschitz_examples_pass() {
        let budget = Budget::default();
        let (x1, x2) = (bc(&[("[0,2]", 0)]), bc(&[("{1}", 0)]));
        let half = PLMap::affine(q(1, 2), q(0, 1));
        let r = lipschitz_experiment(&half, &x1, &x2, &q(1, 1), None, budget).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.inputs[2].1, bc(&[("[0,1]", 0)]).to_string());
        assert_eq!(r.inputs[3].1, bc(&[("{1/2}", 0)]).to_string());
        assert_eq!(r.certificate.as_ref().unwrap().a, q(1, 2));
        let (y1, y2) = (bc(&[("[-2,2]", 0)]), bc(&[("{0}", 0)]));
        let r = lipschitz_experiment(&abs(), &y1, &y2, &q(2, 1), None, budget).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        let id = lipschitz_experiment(&PLMap::identity(), &x1, &x2, &q(1, 1), None, budget).unwrap();
        assert_eq!(id.verdict, Verdict::Pass);
    }
}
