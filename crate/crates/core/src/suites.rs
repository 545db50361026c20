//! Named invariant suites over seeded corpora. Each suite is a fixed number
//! of independent cases; a case produces one report row and depends only on
//! the seed and its index.

use std::time::Instant;

use crate::barcode::{dualize, global_sections, global_sections_c, Bar, GradedBarcode};
use crate::circle::{
    circle_distance, circle_scan_bound, circle_thicken, default_circumference, fourier_sato, CircleSheaf, Direction,
};
use crate::corpus::{BarcodeShape, Corpus};
use crate::error::{Error, Result};
use crate::extend::{line_seed, Diagram, Fault, Mode};
use crate::interleave::{
    check_interleaving, critical_values, distance, finite_gate, scan_points, verify_certificate, Budget, DistanceBounds,
    Gate, Strategy,
};
use crate::interval::{Interval, Shape};
use crate::model::LineModel;
use crate::pl::{lipschitz_experiment, pushforward_shriek, stability_experiment, validate_pushforward, PLMap, Verdict};
use crate::scalar::{ExtendedScalar, Scalar};
use crate::thicken::{convolution_ball, stalk_oracle, thicken};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub inputs: String,
    pub lower: String,
    pub upper: String,
    pub exact: String,
    pub verdict: Verdict,
    pub micros: u128,
}

impl Row {
    fn check(inputs: String, ok: bool) -> Row {
        Row {
            inputs,
            lower: String::new(),
            upper: String::new(),
            exact: String::new(),
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            micros: 0,
        }
    }

    fn with_bounds<W>(mut self, d: &DistanceBounds<W>) -> Row {
        self.lower = d.lower.to_string();
        self.upper = d.upper.to_string();
        self.exact = d.exact.to_string();
        self
    }

    fn inconclusive(inputs: String) -> Row {
        Row {
            verdict: Verdict::Inconclusive,
            ..Row::check(inputs, true)
        }
    }
}

pub struct Suite {
    pub name: &'static str,
    pub about: &'static str,
    pub cases: usize,
    run: fn(&mut Corpus, usize) -> Result<Row>,
}

impl Suite {
    /// Runs case `i`; an error is reported as a failing row.
    pub fn run_case(&self, seed: u64, i: usize) -> Row {
        let start = Instant::now();
        let mut corpus = Corpus::new(seed, i as u64);
        let mut row = (self.run)(&mut corpus, i).unwrap_or_else(|e| Row::check(format!("error: {e}"), false));
        row.micros = start.elapsed().as_micros();
        row
    }

    pub fn run_all(&self, seed: u64) -> Vec<Row> {
        (0..self.cases).map(|i| self.run_case(seed, i)).collect()
    }
}

pub fn suite(name: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.name == name)
}

pub const DEFAULT_SEED: u64 = 20_240_601;

pub static SUITES: &[Suite] = &[
    Suite { name: "semigroup", about: "K_b K_a F = K_{a+b} F", cases: 500, run: semigroup },
    Suite { name: "sections", about: "RΓ and RΓ_c of K_a F for a ≥ 0", cases: 500, run: sections },
    Suite { name: "duality", about: "D K_a F = K_{-a} D F", cases: 500, run: duality },
    Suite { name: "convolution", about: "ball convolution equals the rules", cases: 200, run: convolution },
    Suite { name: "rules", about: "every rule row against the stalk oracle", cases: RULE_SHAPES * RULE_PARAMS.len(), run: rules },
    Suite { name: "skyscraper", about: "distance of k_[0,2] and k_{1}", cases: 1, run: skyscraper },
    Suite { name: "gate", about: "different RΓ gives infinite exact distance", cases: 200, run: gate },
    Suite { name: "gate-exhaustive", about: "no certificate anywhere on the scan", cases: 30, run: gate_exhaustive },
    Suite { name: "oracle", about: "matching never contradicts exhaustive search", cases: ORACLE_CASES, run: oracle },
    Suite { name: "oracle-singles", about: "matching against exhaustive search on every pair of grid bars", cases: SINGLE_SOURCES * SINGLE_TARGETS, run: oracle_singles },
    Suite { name: "extend", about: "extended seed equals thickening", cases: 400, run: extend },
    Suite { name: "coherence", about: "seed coherence diagrams", cases: 21, run: coherence },
    Suite { name: "lambda", about: "extension independent of the step", cases: 100, run: lambda },
    Suite { name: "fs-roundtrip", about: "inverse transform undoes the transform", cases: 200, run: fs_roundtrip },
    Suite { name: "fs-isometry", about: "distance preserved by the transform", cases: 50, run: fs_isometry },
    Suite { name: "fs-object", about: "K_{-a} K_b = K_{b-a} on the circle", cases: 100, run: fs_object },
    Suite { name: "bands", about: "local systems fixed by thickening", cases: 100, run: bands },
    Suite { name: "rigidity", about: "finite distance to k_R needs a line bar", cases: 200, run: rigidity },
    Suite { name: "stability", about: "certificate at the sup distance of two maps", cases: 100, run: stability },
    Suite { name: "lipschitz", about: "certificate at δa for pushed inputs", cases: 100, run: lipschitz },
    Suite { name: "symmetry", about: "distance is symmetric", cases: 200, run: symmetry },
    Suite { name: "triangle", about: "triangle inequality on exact triples", cases: 50, run: triangle },
    Suite { name: "pushforward", about: "pushforward against the fibre oracle", cases: 200, run: pushforward },
];

fn semigroup(c: &mut Corpus, _: usize) -> Result<Row> {
    let f = c.barcode(&BarcodeShape::default());
    let (a, b) = (c.parameter(-4, 4), c.parameter(-4, 4));
    let ok = thicken(&thicken(&f, &a), &b) == thicken(&f, &(&a + &b));
    Ok(Row::check(format!("F={f} a={a} b={b}"), ok))
}

fn sections(c: &mut Corpus, _: usize) -> Result<Row> {
    let f = c.barcode(&BarcodeShape::default());
    let a = c.parameter(0, 4);
    let k = thicken(&f, &a);
    let ok = global_sections(&k) == global_sections(&f) && global_sections_c(&k) == global_sections_c(&f);
    Ok(Row::check(format!("F={f} a={a}"), ok))
}

fn duality(c: &mut Corpus, _: usize) -> Result<Row> {
    let f = c.barcode(&BarcodeShape::default());
    let a = c.parameter(-4, 4);
    let ok = dualize(&thicken(&f, &a)) == thicken(&dualize(&f), &-a.clone());
    Ok(Row::check(format!("F={f} a={a}"), ok))
}

fn convolution(c: &mut Corpus, _: usize) -> Result<Row> {
    let f = c.barcode(&BarcodeShape::default());
    let a = c.parameter(0, 4);
    Ok(Row::check(format!("F={f} a={a}"), convolution_ball(&f, &a) == thicken(&f, &a)))
}

const RULE_SHAPES: usize = 9;
/// Against bars of length 2: every shorter / equal / longer regime, both signs.
const RULE_PARAMS: [(i64, i64); 10] = [(-3, 1), (-2, 1), (-1, 1), (-1, 2), (-1, 4), (1, 4), (1, 2), (1, 1), (2, 1), (3, 1)];

fn rules(_: &mut Corpus, i: usize) -> Result<Row> {
    let shape: Shape = Shape::ALL[i / RULE_PARAMS.len()];
    let (n, d) = RULE_PARAMS[i % RULE_PARAMS.len()];
    let a = Scalar::new(n, d);
    let bar = Bar::new(crate::tables::representative(shape), 0);
    let f = GradedBarcode::new(vec![bar.clone()]);
    let k = thicken(&f, &a);
    let mut pts: Vec<Scalar> = f.finite_endpoints();
    pts.extend(k.finite_endpoints());
    pts.sort();
    pts.dedup();
    let eps = Scalar::new(1, 16);
    let mut probes: Vec<Scalar> = pts.iter().flat_map(|p| [p - &eps, p.clone(), p + &eps]).collect();
    probes.extend(pts.windows(2).map(|w| w[0].midpoint(&w[1])));
    probes.push(Scalar::int(-10));
    probes.push(Scalar::int(10));
    let bad: Vec<String> = probes
        .iter()
        .filter(|t| LineModel::stalk(&k, t) != stalk_oracle(&f, &a, t))
        .map(|t| t.to_string())
        .collect();
    Ok(Row::check(format!("bar={bar} a={a} disagree_at=[{}]", bad.join(" ")), bad.is_empty()))
}

fn skyscraper(_: &mut Corpus, _: usize) -> Result<Row> {
    let f = GradedBarcode::new(vec![Bar::new(Interval::closed(Scalar::zero(), Scalar::int(2))?, 0)]);
    let g = GradedBarcode::new(vec![Bar::new(Interval::point(Scalar::one()), 0)]);
    let d = distance(&f, &g, Budget::default())?;
    let one = ExtendedScalar::Finite(Scalar::one());
    let verified = match &d.witness {
        Some(w) => w.a == Scalar::one() && verify_certificate(&f, &g, w)?,
        None => false,
    };
    let ok = d.summary() == (one.clone(), one, true) && verified;
    Ok(Row::check(format!("F={f} G={g} certificate_verified={verified}"), ok).with_bounds(&d))
}

/// A pair with different global sections, resampled until one is found.
fn gate_pair(c: &mut Corpus, shape: &BarcodeShape) -> (GradedBarcode, GradedBarcode) {
    loop {
        let (f, g) = (c.barcode(shape), c.barcode(shape));
        if global_sections(&f) != global_sections(&g) {
            return (f, g);
        }
    }
}

fn gate(c: &mut Corpus, _: usize) -> Result<Row> {
    let (f, g) = gate_pair(c, &BarcodeShape::default());
    let d = distance(&f, &g, Budget::default())?;
    let ok = d.summary() == (ExtendedScalar::PosInf, ExtendedScalar::PosInf, true);
    Ok(Row::check(format!("F={f} G={g}"), ok).with_bounds(&d))
}

fn gate_exhaustive(c: &mut Corpus, _: usize) -> Result<Row> {
    let shape = BarcodeShape::small().bars(1, 2);
    let (f, g) = gate_pair(c, &shape);
    assert_eq!(finite_gate(&f, &g), Gate::Infinite);
    let probes = scan_points(&critical_values(&f, &g));
    let mut found = Vec::new();
    for p in &probes {
        match check_interleaving(&f, &g, &p.a, Strategy::Exhaustive, Budget::default()) {
            Ok(Some(_)) => found.push(p.a.to_string()),
            Ok(None) => {}
            Err(Error::Capacity { .. }) => {
                return Ok(Row::inconclusive(format!("F={f} G={g} capacity at a={}", p.a)));
            }
            Err(e) => return Err(e),
        }
    }
    let inputs = format!("F={f} G={g} probes={} certified_at=[{}]", probes.len(), found.join(" "));
    Ok(Row::check(inputs, found.is_empty()))
}

pub const ORACLE_CASES: usize = 1000;

fn oracle(c: &mut Corpus, _: usize) -> Result<Row> {
    let shape = BarcodeShape::small().bars(0, 3);
    let f = c.barcode(&shape);
    let g = if c.chance(0.5) { c.jiggle(&f, &Scalar::one(), 2) } else { c.barcode(&shape) };
    oracle_pair(&f, &g)
}

/// Every interval with endpoints in `{0, …, 4}`, in a fixed order.
fn grid_intervals() -> Vec<Interval> {
    use crate::interval::EndpointKind::{Closed, Open};
    let mut out = Vec::new();
    for l in 0..=4 {
        out.push(Interval::point(Scalar::int(l)));
        for r in l + 1..=4 {
            for (lk, rk) in [(Closed, Closed), (Closed, Open), (Open, Closed), (Open, Open)] {
                out.push(Interval::bounded(Scalar::int(l), lk, Scalar::int(r), rk).expect("l < r"));
            }
        }
    }
    out
}

const SINGLE_SOURCES: usize = 45;
const SINGLE_TARGETS: usize = 2 * SINGLE_SOURCES;

/// Source bars in degree 0, target bars in degree 0 or 1.
fn oracle_singles(_: &mut Corpus, i: usize) -> Result<Row> {
    let grid = grid_intervals();
    debug_assert_eq!(grid.len(), SINGLE_SOURCES);
    let (s, t) = (i / SINGLE_TARGETS, i % SINGLE_TARGETS);
    let f = GradedBarcode::new(vec![Bar::new(grid[s].clone(), 0)]);
    let g = GradedBarcode::new(vec![Bar::new(grid[t % SINGLE_SOURCES].clone(), (t / SINGLE_SOURCES) as i64)]);
    oracle_pair(&f, &g)
}

/// Matching against exhaustive search on one pair over its whole scan.
fn oracle_pair(f: &GradedBarcode, g: &GradedBarcode) -> Result<Row> {
    let (f, g) = (f.clone(), g.clone());
    let (mut contradictions, mut misses, mut undecided, mut probes) = (0, 0, 0, 0);
    for p in scan_points(&critical_values(&f, &g)) {
        probes += 1;
        let m = check_interleaving(&f, &g, &p.a, Strategy::Matching, Budget::default())?;
        if let Some(cert) = &m {
            if !verify_certificate(&f, &g, cert)? {
                contradictions += 1;
            }
        }
        match check_interleaving(&f, &g, &p.a, Strategy::Exhaustive, Budget::default()) {
            Ok(Some(_)) if m.is_none() => misses += 1,
            Ok(None) if m.is_some() => contradictions += 1,
            Ok(_) => {}
            Err(Error::Capacity { .. }) => undecided += 1,
            Err(e) => return Err(e),
        }
    }
    let inputs = format!(
        "F={f} G={g} probes={probes} contradictions={contradictions} matching_misses={misses} undecided={undecided}"
    );
    Ok(Row::check(inputs, contradictions == 0))
}

const EXTEND_PARAMS: [(i64, i64); 4] = [(0, 1), (3, 4), (5, 2), (-5, 2)];

fn extend(c: &mut Corpus, i: usize) -> Result<Row> {
    let (n, d) = EXTEND_PARAMS[i % EXTEND_PARAMS.len()];
    let a = Scalar::new(n, d);
    let f = c.barcode(&BarcodeShape::default());
    let s = line_seed(Scalar::one(), Mode::TwoSided, Fault::None)?;
    Ok(Row::check(format!("F={f} a={a}"), s.extend_apply(&a, &f)? == thicken(&f, &a)))
}

/// Cases `0..20` check every diagram on a random object; the last case
/// confirms a broken seed is caught.
fn coherence(c: &mut Corpus, i: usize) -> Result<Row> {
    let samples: Vec<Scalar> = [0, 1, 2, 3, 4].iter().map(|&k| Scalar::new(k, 4)).collect();
    let f = c.barcode(&BarcodeShape::default().bars(1, 3));
    if i == 20 {
        let bad = line_seed(Scalar::one(), Mode::TwoSided, Fault::ZeroRestriction)?.coherence_check(&samples, &[f.clone()]);
        return Ok(Row::check(format!("F={f} fault=zero-restriction detected={}", !bad.passed()), bad.failed(Diagram::Naturality)));
    }
    let report = line_seed(Scalar::one(), Mode::TwoSided, Fault::None)?.coherence_check(&samples, &[f.clone()]);
    Ok(Row::check(format!("F={f} diagrams={} failures={}", report.checked, report.failures.len()), report.passed()))
}

fn lambda(c: &mut Corpus, _: usize) -> Result<Row> {
    let f = c.barcode(&BarcodeShape::default());
    let a = c.parameter(-4, 4);
    let s = line_seed(Scalar::one(), Mode::TwoSided, Fault::None)?;
    Ok(Row::check(format!("F={f} a={a}"), s.lambda_independence(&a, &f)?))
}

fn circle_input(c: &mut Corpus, bands: f64) -> CircleSheaf {
    let p = [2, 3, 5][c.index(3)];
    c.circle_sheaf(&default_circumference(), p, (0, 3), 6, bands)
}

fn fs_roundtrip(c: &mut Corpus, _: usize) -> Result<Row> {
    let f = circle_input(c, 0.3);
    let there = fourier_sato(&fourier_sato(&f, Direction::Forward), Direction::Inverse);
    let back = fourier_sato(&fourier_sato(&f, Direction::Inverse), Direction::Forward);
    Ok(Row::check(format!("F={f}"), there == f && back == f))
}

fn fs_isometry(c: &mut Corpus, _: usize) -> Result<Row> {
    let cc = default_circumference();
    let f = c.circle_sheaf(&cc, 2, (1, 2), 3, 0.0);
    let g = if c.chance(0.7) {
        let lifts = GradedBarcode::from_bars(f.spirals().to_vec(), 2);
        let moved = c.jiggle(&lifts, &Scalar::half(), 4);
        CircleSheaf::spirals_only(cc.clone(), 2, moved.bars().to_vec())?
    } else {
        c.circle_sheaf(&cc, 2, (1, 2), 3, 0.0)
    };
    let (ff, fg) = (fourier_sato(&f, Direction::Forward), fourier_sato(&g, Direction::Forward));
    let bound = circle_scan_bound(&f, &g).max(circle_scan_bound(&ff, &fg));
    let before = circle_distance(&f, &g, Budget::default(), Some(bound.clone()))?;
    let after = circle_distance(&ff, &fg, Budget::default(), Some(bound))?;
    let inputs = format!("F={f} G={g} transformed=({} {} {})", after.lower, after.upper, after.exact);
    Ok(Row::check(inputs, before.summary() == after.summary()).with_bounds(&before))
}

fn fs_object(c: &mut Corpus, _: usize) -> Result<Row> {
    let f = circle_input(c, 0.3);
    let (mut a, mut b) = (c.rational(1, 8, 8) / Scalar::int(8), c.rational(1, 8, 8) / Scalar::int(8));
    a = a.max(Scalar::new(1, 64));
    b = b.max(Scalar::new(1, 64));
    if a > b {
        std::mem::swap(&mut a, &mut b);
    }
    let lhs = circle_thicken(&circle_thicken(&f, &b), &-a.clone());
    Ok(Row::check(format!("F={f} a={a} b={b}"), lhs == circle_thicken(&f, &(&b - &a))))
}

fn bands(c: &mut Corpus, _: usize) -> Result<Row> {
    let p = [2, 3, 5][c.index(3)];
    let cc = default_circumference();
    let spirals = if c.chance(0.5) { (0, 0) } else { (1, 2) };
    let f = c.circle_sheaf(&cc, p, spirals, 6, 1.0);
    let a = c.parameter(-4, 4);
    let k = circle_thicken(&f, &a);
    let ok = k.bands() == f.bands() && (f.spirals().is_empty() <= (k == f));
    Ok(Row::check(format!("F={f} a={a}"), ok))
}

fn rigidity(c: &mut Corpus, _: usize) -> Result<Row> {
    let line = GradedBarcode::new(vec![Bar::new(Interval::line(), 0)]);
    let mut bars = Vec::new();
    if c.chance(0.5) {
        bars.push(Bar::new(Interval::line(), 0));
    }
    let shape = BarcodeShape::small().bars(0, 2);
    for _ in 0..c.integer(0, 2) {
        // Half-open bars are invisible to the gate, so they keep some pairs finite.
        let b = c.bar(&shape);
        let (l, r) = (b.interval.left().clone(), b.interval.right().clone());
        let iv = if l < r && c.chance(0.7) { Interval::new(l, crate::interval::EndpointKind::Closed, r, crate::interval::EndpointKind::Open)? } else { b.interval.clone() };
        bars.push(Bar::new(iv, b.degree));
    }
    if c.chance(0.2) {
        bars.push(Bar::new(Interval::line(), 1));
    }
    let g = GradedBarcode::from_bars(bars, 2);
    let d = distance(&line, &g, Budget::default())?;
    let has_line = g.bars().iter().any(|b| b.degree == 0 && b.interval == Interval::line());
    let finite = d.upper.is_finite();
    Ok(Row::check(format!("G={g} finite={finite}"), !finite || has_line).with_bounds(&d))
}

fn absolute() -> PLMap {
    let pts = [(-1, 1), (0, 0), (1, 1)].iter().map(|&(x, y)| (Scalar::int(x), Scalar::int(y))).collect();
    PLMap::new(pts, crate::pl::Extension::Affine, crate::pl::Extension::Affine, None).expect("valid breakpoints")
}

fn report_row(inputs: String, r: &crate::pl::ExperimentReport) -> Row {
    let bound = r.bounds.last().map(|(_, v)| v.to_string()).unwrap_or_default();
    Row {
        inputs: format!("{inputs} {}", r.note).trim_end().to_string(),
        lower: bound.clone(),
        upper: bound,
        exact: String::new(),
        verdict: r.verdict,
        micros: 0,
    }
}

fn stability(c: &mut Corpus, i: usize) -> Result<Row> {
    let (f, g, x) = if i == 0 {
        let dom = Interval::closed(Scalar::int(-1), Scalar::one())?;
        let shifted = PLMap::new(
            absolute().breakpoints().into_iter().map(|(x, y)| (x, y + Scalar::new(1, 8))).collect(),
            crate::pl::Extension::Affine,
            crate::pl::Extension::Affine,
            None,
        )?;
        let x = GradedBarcode::new(vec![Bar::new(dom.clone(), 0)]);
        (absolute().with_domain(dom.clone()), shifted.with_domain(dom), x)
    } else {
        let f = c.pl_map(4);
        let g = c.perturb(&f, 2, 4);
        (f, g, c.barcode(&BarcodeShape::default().bars(1, 2)))
    };
    let r = stability_experiment(&f, &g, &x, Budget::default())?;
    Ok(report_row(format!("f={f} g={g} F={x}"), &r))
}

fn lipschitz(c: &mut Corpus, i: usize) -> Result<Row> {
    if i == 0 {
        let half = PLMap::affine(Scalar::half(), Scalar::zero());
        let x1 = GradedBarcode::new(vec![Bar::new(Interval::closed(Scalar::zero(), Scalar::int(2))?, 0)]);
        let x2 = GradedBarcode::new(vec![Bar::new(Interval::point(Scalar::one()), 0)]);
        let r = lipschitz_experiment(&half, &x1, &x2, &Scalar::one(), None, Budget::default())?;
        return Ok(report_row(format!("f=x/2 F1={x1} F2={x2} a=1"), &r));
    }
    let f = c.pl_map(4);
    for _ in 0..20 {
        let x1 = c.barcode(&BarcodeShape::default().bars(1, 2));
        let x2 = c.jiggle(&x1, &Scalar::half(), 4);
        let d = distance(&x1, &x2, Budget::default())?;
        let Some(cert) = d.witness else { continue };
        let r = lipschitz_experiment(&f, &x1, &x2, &cert.a, Some(&cert), Budget::default())?;
        return Ok(report_row(format!("f={f} F1={x1} F2={x2} a={}", cert.a), &r));
    }
    Ok(Row::inconclusive(format!("f={f} no input pair with a certificate")))
}

fn symmetry(c: &mut Corpus, _: usize) -> Result<Row> {
    let shape = BarcodeShape::default().bars(0, 3);
    let f = c.barcode(&shape);
    let g = if c.chance(0.5) { c.jiggle(&f, &Scalar::one(), 4) } else { c.barcode(&shape) };
    let (d1, d2) = (distance(&f, &g, Budget::default())?, distance(&g, &f, Budget::default())?);
    Ok(Row::check(format!("F={f} G={g}"), d1.summary() == d2.summary()).with_bounds(&d1))
}

fn triangle(c: &mut Corpus, _: usize) -> Result<Row> {
    let shape = BarcodeShape::default().bars(1, 3);
    for _ in 0..20 {
        let f = c.barcode(&shape);
        let g = c.jiggle(&f, &Scalar::one(), 4);
        let h = c.jiggle(&f, &Scalar::one(), 4);
        let fg = distance(&f, &g, Budget::default())?;
        let gh = distance(&g, &h, Budget::default())?;
        let fh = distance(&f, &h, Budget::default())?;
        let all = [&fg, &gh, &fh];
        if !all.iter().all(|d| d.exact && d.upper.is_finite()) {
            continue;
        }
        let sum = fg.upper.finite().expect("finite") + gh.upper.finite().expect("finite");
        let ok = fh.upper <= ExtendedScalar::Finite(sum);
        return Ok(Row::check(format!("F={f} G={g} H={h} d(F,G)={} d(G,H)={} d(F,H)={}", fg.upper, gh.upper, fh.upper), ok).with_bounds(&fh));
    }
    Ok(Row::inconclusive("no exact triple within 20 draws".into()))
}

fn pushforward(c: &mut Corpus, i: usize) -> Result<Row> {
    if i == 0 {
        let line = GradedBarcode::new(vec![Bar::new(Interval::line(), 0)]);
        let got = pushforward_shriek(&absolute(), &line)?;
        let want = GradedBarcode::new(vec![
            Bar::new("[0,inf)".parse().expect("literal"), 0),
            Bar::new("(0,inf)".parse().expect("literal"), 0),
        ]);
        let ok = got == want && validate_pushforward(&absolute(), &line, &got);
        return Ok(Row::check(format!("f=|x| F={line} pushed={got}"), ok));
    }
    let f = c.pl_map(4);
    let x = c.barcode(&BarcodeShape::default().bars(1, 3));
    let pushed = pushforward_shriek(&f, &x)?;
    let ok = global_sections_c(&pushed) == global_sections_c(&x) && validate_pushforward(&f, &x, &pushed);
    Ok(Row::check(format!("f={f} F={x} pushed={pushed}"), ok))
}
