//! The `thicket/1` document format.
//!
//! A document is line oriented: a version header, a `field` line, a `space`
//! line, then one payload block closed by `end`. Blank lines and lines
//! starting with `#` are ignored. Every value is written with exact rational
//! literals, and every payload is re-validated on load, so
//! `parse(serialize(d)) == d` and nothing invalid survives parsing.
//!
//! ```text
//! thicket/1
//! field 2
//! space line
//! barcode
//! bar [0,1] 0
//! bar (1/2,inf) 1
//! end
//! ```
//!
//! Circle sheaves use `space circle <C>`, a `sheaf` block with `spiral`
//! lines for lifts and `band <degree> <rank> <entries…>` lines for local
//! systems (monodromy row major). PL maps use a `map` block with `left` and
//! `right` extension lines, an optional `domain`, and `point <x> <y>` lines.
//! Reports use `report <experiment>` and carry their certificate as the two
//! morphisms `f.*` and `g.*`. A `seed` block fixes the seed family used by
//! the extension engine: `alpha <step>` and `mode non-negative|two-sided`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::barcode::{is_prime, Bar, GradedBarcode};
use crate::circle::{Band, CircleSheaf};
use crate::extend::Mode;
use crate::error::ParseError;
use crate::hom::Morphism;
use crate::interleave::{verify_certificate, Certificate};
use crate::interval::Interval;
use crate::linalg::Mat;
use crate::pl::{ExperimentReport, Extension, PLMap, Verdict};
use crate::scalar::{ExtendedScalar, Scalar};

pub const VERSION: &str = "thicket/1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Space {
    Line,
    Circle(Scalar),
}

#[derive(Clone, Debug)]
pub enum Payload {
    Barcode(GradedBarcode),
    Circle(CircleSheaf),
    Map(PLMap),
    Report(ExperimentReport),
    Seed(SeedSpec),
}

/// A seed family: step length and parameter range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedSpec {
    pub alpha: Scalar,
    pub mode: Mode,
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::NonNegative => "non-negative",
        Mode::TwoSided => "two-sided",
    }
}

#[derive(Clone, Debug)]
pub struct Document {
    pub characteristic: u32,
    pub space: Space,
    pub payload: Payload,
}

impl PartialEq for Document {
    fn eq(&self, other: &Self) -> bool {
        self.characteristic == other.characteristic
            && self.space == other.space
            && match (&self.payload, &other.payload) {
                (Payload::Barcode(a), Payload::Barcode(b)) => a == b,
                (Payload::Circle(a), Payload::Circle(b)) => a == b,
                (Payload::Map(a), Payload::Map(b)) => a == b,
                (Payload::Report(a), Payload::Report(b)) => report_eq(a, b),
                (Payload::Seed(a), Payload::Seed(b)) => a == b,
                _ => false,
            }
    }
}

fn report_eq(a: &ExperimentReport, b: &ExperimentReport) -> bool {
    a.experiment == b.experiment
        && a.inputs == b.inputs
        && a.bounds == b.bounds
        && a.certificate == b.certificate
        && a.verdict == b.verdict
        && a.note == b.note
        && a.micros == b.micros
}

impl Document {
    pub fn barcode(f: GradedBarcode) -> Self {
        Document {
            characteristic: f.characteristic(),
            space: Space::Line,
            payload: Payload::Barcode(f),
        }
    }

    pub fn circle(f: CircleSheaf) -> Self {
        Document {
            characteristic: f.characteristic(),
            space: Space::Circle(f.circumference().clone()),
            payload: Payload::Circle(f),
        }
    }

    pub fn map(f: PLMap) -> Self {
        Document {
            characteristic: crate::barcode::DEFAULT_CHARACTERISTIC,
            space: Space::Line,
            payload: Payload::Map(f),
        }
    }

    pub fn report(r: ExperimentReport, characteristic: u32) -> Self {
        Document {
            characteristic,
            space: Space::Line,
            payload: Payload::Report(r),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.payload {
            Payload::Barcode(_) => "barcode",
            Payload::Circle(_) => "sheaf",
            Payload::Map(_) => "map",
            Payload::Report(_) => "report",
            Payload::Seed(_) => "seed",
        }
    }
}

fn ext_name(e: Extension) -> &'static str {
    match e {
        Extension::Constant => "constant",
        Extension::Affine => "affine",
    }
}

fn bar_list(f: &GradedBarcode) -> String {
    f.bars().iter().map(|b| format!(" {b}")).collect()
}

fn write_morphism(out: &mut String, name: &str, m: &Morphism) {
    writeln!(out, "{name}.source{}", bar_list(m.source())).unwrap();
    writeln!(out, "{name}.target{}", bar_list(m.target())).unwrap();
    for (&(i, j), v) in m.blocks() {
        writeln!(out, "{name}.block {i} {j} {v}").unwrap();
    }
}

pub fn serialize(doc: &Document) -> String {
    let mut out = String::new();
    writeln!(out, "{VERSION}").unwrap();
    writeln!(out, "field {}", doc.characteristic).unwrap();
    match &doc.space {
        Space::Line => writeln!(out, "space line").unwrap(),
        Space::Circle(c) => writeln!(out, "space circle {c}").unwrap(),
    }
    writeln!(out, "{}", match &doc.payload {
        Payload::Report(r) => format!("report {}", r.experiment),
        _ => doc.kind().to_string(),
    })
    .unwrap();
    match &doc.payload {
        Payload::Barcode(f) => {
            for b in f.bars() {
                writeln!(out, "bar {} {}", b.interval, b.degree).unwrap();
            }
        }
        Payload::Circle(f) => {
            for b in f.spirals() {
                writeln!(out, "spiral {} {}", b.interval, b.degree).unwrap();
            }
            for band in f.bands() {
                let entries: String = band.monodromy.data().iter().map(|v| format!(" {v}")).collect();
                writeln!(out, "band {} {}{entries}", band.degree, band.rank()).unwrap();
            }
        }
        Payload::Map(m) => {
            let (l, r) = m.extensions();
            writeln!(out, "left {}", ext_name(l)).unwrap();
            writeln!(out, "right {}", ext_name(r)).unwrap();
            if let Some(d) = m.domain() {
                writeln!(out, "domain {d}").unwrap();
            }
            for (x, y) in m.breakpoints() {
                writeln!(out, "point {x} {y}").unwrap();
            }
        }
        Payload::Seed(seed) => {
            writeln!(out, "alpha {}", seed.alpha).unwrap();
            writeln!(out, "mode {}", mode_name(seed.mode)).unwrap();
        }
        Payload::Report(r) => {
            writeln!(out, "verdict {}", r.verdict.name()).unwrap();
            for (k, v) in &r.inputs {
                writeln!(out, "input {k} {v}").unwrap();
            }
            for (k, v) in &r.bounds {
                writeln!(out, "bound {k} {v}").unwrap();
            }
            if !r.note.is_empty() {
                writeln!(out, "note {}", r.note).unwrap();
            }
            writeln!(out, "micros {}", r.micros).unwrap();
            if let Some(c) = &r.certificate {
                writeln!(out, "certificate {}", c.a).unwrap();
                write_morphism(&mut out, "f", &c.f);
                write_morphism(&mut out, "g", &c.g);
            }
        }
    }
    writeln!(out, "end").unwrap();
    out
}

/// One significant line, with the 1-based column of every token.
struct Line<'a> {
    no: usize,
    raw: &'a str,
    toks: Vec<(usize, &'a str)>,
}

impl<'a> Line<'a> {
    fn new(no: usize, raw: &'a str) -> Self {
        let mut toks = Vec::new();
        let mut start = None;
        for (i, ch) in raw.char_indices().chain(std::iter::once((raw.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (true, Some(s)) => {
                    toks.push((s + 1, &raw[s..i]));
                    start = None;
                }
                (false, None) => start = Some(i),
                _ => {}
            }
        }
        Line { no, raw, toks }
    }

    fn key(&self) -> &'a str {
        self.toks[0].1
    }

    fn col(&self, i: usize) -> usize {
        self.toks.get(i).map_or(self.raw.len() + 1, |t| t.0)
    }

    fn syntax(&self, i: usize, msg: impl Into<String>) -> ParseError {
        ParseError::syntax(self.no, self.col(i), msg)
    }

    fn semantic(&self, msg: impl std::fmt::Display) -> ParseError {
        ParseError::semantic(self.no, msg.to_string())
    }

    fn arity(&self, n: usize) -> Result<(), ParseError> {
        match self.toks.len().cmp(&(n + 1)) {
            std::cmp::Ordering::Equal => Ok(()),
            std::cmp::Ordering::Less => Err(self.syntax(self.toks.len(), format!("`{}` takes {n} argument(s)", self.key()))),
            std::cmp::Ordering::Greater => Err(self.syntax(n + 1, "unexpected trailing token")),
        }
    }

    fn tok(&self, i: usize) -> Result<&'a str, ParseError> {
        self.toks
            .get(i)
            .map(|t| t.1)
            .ok_or_else(|| self.syntax(i, format!("`{}` is missing an argument", self.key())))
    }

    fn value<T: std::str::FromStr<Err = ParseError>>(&self, i: usize) -> Result<T, ParseError> {
        self.tok(i)?.parse().map_err(|e: ParseError| e.at(self.no, self.col(i)))
    }

    fn int<T: std::str::FromStr>(&self, i: usize) -> Result<T, ParseError> {
        let t = self.tok(i)?;
        t.parse().map_err(|_| self.syntax(i, format!("expected an integer, found `{t}`")))
    }

    /// Everything after token `i`, verbatim.
    fn rest(&self, i: usize) -> &'a str {
        self.toks.get(i).map_or("", |t| &self.raw[t.0 - 1..])
    }
}

fn bar_token(line: &Line, i: usize) -> Result<Bar, ParseError> {
    let t = line.tok(i)?;
    let (iv, deg) = t
        .rsplit_once('@')
        .ok_or_else(|| line.syntax(i, format!("expected `<interval>@<degree>`, found `{t}`")))?;
    let interval: Interval = iv.parse().map_err(|e: ParseError| e.at(line.no, line.col(i)))?;
    let degree = deg
        .parse()
        .map_err(|_| line.syntax(i, format!("bad degree in `{t}`")))?;
    Ok(Bar::new(interval, degree))
}

fn bar_line(line: &Line) -> Result<Bar, ParseError> {
    line.arity(2)?;
    Ok(Bar::new(line.value(1)?, line.int(2)?))
}

pub fn parse(text: &str) -> Result<Document, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, raw)| Line::new(i + 1, raw))
        .filter(|l| !l.toks.is_empty() && !l.key().starts_with('#'));
    let eof = |what: &str| ParseError::syntax(text.lines().count() + 1, 1, format!("unexpected end of document, expected {what}"));
    let header = lines.next().ok_or_else(|| eof("a version header"))?;
    if header.raw.trim() != VERSION {
        return Err(ParseError::Version(header.raw.trim().to_string()));
    }
    let field = lines.next().ok_or_else(|| eof("`field`"))?;
    if field.key() != "field" {
        return Err(field.syntax(0, "expected `field <p>`"));
    }
    field.arity(1)?;
    let p: u32 = field.int(1)?;
    if !is_prime(p) {
        return Err(field.semantic(format!("field characteristic {p} is not prime")));
    }
    let space_line = lines.next().ok_or_else(|| eof("`space`"))?;
    let space = match (space_line.key(), space_line.tok(1)?) {
        ("space", "line") => {
            space_line.arity(1)?;
            Space::Line
        }
        ("space", "circle") => {
            space_line.arity(2)?;
            let c: Scalar = space_line.value(2)?;
            if !c.is_positive() {
                return Err(space_line.semantic(format!("circumference {c} must be positive")));
            }
            Space::Circle(c)
        }
        ("space", other) => return Err(space_line.syntax(1, format!("unknown space `{other}`"))),
        _ => return Err(space_line.syntax(0, "expected `space line` or `space circle <C>`")),
    };
    let head = lines.next().ok_or_else(|| eof("a payload"))?;
    let mut body = Vec::new();
    let mut closed = false;
    for l in lines.by_ref() {
        if l.key() == "end" {
            l.arity(0)?;
            closed = true;
            break;
        }
        body.push(l);
    }
    if !closed {
        return Err(eof("`end`"));
    }
    if let Some(extra) = lines.next() {
        return Err(extra.syntax(0, "content after `end`"));
    }
    let payload = match (head.key(), &space) {
        ("barcode", Space::Line) => {
            head.arity(0)?;
            Payload::Barcode(parse_barcode(&body, p)?)
        }
        ("sheaf", Space::Circle(c)) => {
            head.arity(0)?;
            Payload::Circle(parse_sheaf(&head, &body, c, p)?)
        }
        ("map", Space::Line) => {
            head.arity(0)?;
            Payload::Map(parse_map(&head, &body)?)
        }
        ("report", Space::Line) => {
            head.arity(1)?;
            Payload::Report(parse_report(&head, &body, p)?)
        }
        ("seed", _) => {
            head.arity(0)?;
            Payload::Seed(parse_seed(&head, &body)?)
        }
        ("barcode" | "sheaf" | "map" | "report", _) => {
            return Err(head.semantic(format!("a `{}` payload does not live on this space", head.key())))
        }
        (other, _) => return Err(head.syntax(0, format!("unknown payload `{other}`"))),
    };
    Ok(Document {
        characteristic: p,
        space,
        payload,
    })
}

fn unknown(l: &Line, block: &str) -> ParseError {
    l.syntax(0, format!("unknown key `{}` in a {block} block", l.key()))
}

fn parse_barcode(body: &[Line], p: u32) -> Result<GradedBarcode, ParseError> {
    let mut bars = Vec::new();
    for l in body {
        match l.key() {
            "bar" => bars.push(bar_line(l)?),
            _ => return Err(unknown(l, "barcode")),
        }
    }
    Ok(GradedBarcode::from_bars(bars, p))
}

fn parse_sheaf(head: &Line, body: &[Line], c: &Scalar, p: u32) -> Result<CircleSheaf, ParseError> {
    let (mut spirals, mut bands) = (Vec::new(), Vec::new());
    for l in body {
        match l.key() {
            "spiral" => spirals.push(bar_line(l)?),
            "band" => {
                let degree = l.int(1)?;
                let n: usize = l.int(2)?;
                l.arity(2 + n * n)?;
                let entries = (0..n * n).map(|k| l.int::<u32>(3 + k)).collect::<Result<Vec<_>, _>>()?;
                if let Some(k) = entries.iter().position(|&v| v >= p) {
                    return Err(l.syntax(3 + k, format!("entry not reduced mod {p}")));
                }
                bands.push(Band::new(degree, Mat::from_rows(n, n, entries)));
            }
            _ => return Err(unknown(l, "sheaf")),
        }
    }
    CircleSheaf::new(c.clone(), p, spirals, bands).map_err(|e| head.semantic(e))
}

fn parse_map(head: &Line, body: &[Line]) -> Result<PLMap, ParseError> {
    let (mut left, mut right, mut domain, mut points) = (None, None, None, Vec::new());
    let ext = |l: &Line| -> Result<Extension, ParseError> {
        l.arity(1)?;
        match l.tok(1)? {
            "constant" => Ok(Extension::Constant),
            "affine" => Ok(Extension::Affine),
            t => Err(l.syntax(1, format!("expected `constant` or `affine`, found `{t}`"))),
        }
    };
    for l in body {
        match l.key() {
            "left" => left = Some(ext(l)?),
            "right" => right = Some(ext(l)?),
            "domain" => {
                l.arity(1)?;
                domain = Some(l.value::<Interval>(1)?);
            }
            "point" => {
                l.arity(2)?;
                points.push((l.value::<Scalar>(1)?, l.value::<Scalar>(2)?));
            }
            _ => return Err(unknown(l, "map")),
        }
    }
    let missing = |side: &str| head.semantic(format!("map block lacks a `{side}` extension line"));
    let (left, right) = (left.ok_or_else(|| missing("left"))?, right.ok_or_else(|| missing("right"))?);
    PLMap::new(points, left, right, domain).map_err(|e| head.semantic(e))
}

fn parse_seed(head: &Line, body: &[Line]) -> Result<SeedSpec, ParseError> {
    let (mut alpha, mut mode) = (None, None);
    for l in body {
        l.arity(1)?;
        match l.key() {
            "alpha" => {
                let a: Scalar = l.value(1)?;
                if !a.is_positive() {
                    return Err(l.semantic(format!("seed step {a} must be positive")));
                }
                alpha = Some(a);
            }
            "mode" => {
                mode = Some(match l.tok(1)? {
                    "non-negative" => Mode::NonNegative,
                    "two-sided" => Mode::TwoSided,
                    t => return Err(l.syntax(1, format!("unknown mode `{t}`"))),
                })
            }
            _ => return Err(unknown(l, "seed")),
        }
    }
    Ok(SeedSpec {
        alpha: alpha.ok_or_else(|| head.semantic("seed block lacks `alpha`"))?,
        mode: mode.unwrap_or(Mode::TwoSided),
    })
}

#[derive(Default)]
struct MorphismParts {
    source: Option<Vec<Bar>>,
    target: Option<Vec<Bar>>,
    blocks: BTreeMap<(usize, usize), u32>,
}

impl MorphismParts {
    fn build(self, head: &Line, name: &str, p: u32) -> Result<Morphism, ParseError> {
        let missing = |what: &str| head.semantic(format!("certificate lacks `{name}.{what}`"));
        let source = GradedBarcode::from_bars(self.source.ok_or_else(|| missing("source"))?, p);
        let target = GradedBarcode::from_bars(self.target.ok_or_else(|| missing("target"))?, p);
        Morphism::new(source, target, self.blocks).map_err(|e| head.semantic(e))
    }
}

fn parse_report(head: &Line, body: &[Line], p: u32) -> Result<ExperimentReport, ParseError> {
    let mut verdict = None;
    let (mut inputs, mut bounds, mut note, mut micros) = (Vec::new(), Vec::new(), String::new(), None);
    let mut cert_a: Option<(Scalar, &Line)> = None;
    let mut parts = [MorphismParts::default(), MorphismParts::default()];
    for l in body {
        let key = l.key();
        if let Some((which, field)) = key.split_once('.') {
            let idx = match which {
                "f" => 0,
                "g" => 1,
                _ => return Err(unknown(l, "report")),
            };
            let m = &mut parts[idx];
            match field {
                "source" | "target" => {
                    let bars = (1..l.toks.len()).map(|i| bar_token(l, i)).collect::<Result<Vec<_>, _>>()?;
                    *(if field == "source" { &mut m.source } else { &mut m.target }) = Some(bars);
                }
                "block" => {
                    l.arity(3)?;
                    m.blocks.insert((l.int(1)?, l.int(2)?), l.int(3)?);
                }
                _ => return Err(unknown(l, "report")),
            }
            continue;
        }
        match key {
            "verdict" => {
                l.arity(1)?;
                verdict = Some(match l.tok(1)? {
                    "pass" => Verdict::Pass,
                    "fail" => Verdict::Fail,
                    "inconclusive" => Verdict::Inconclusive,
                    t => return Err(l.syntax(1, format!("unknown verdict `{t}`"))),
                });
            }
            "input" => inputs.push((l.tok(1)?.to_string(), l.rest(2).to_string())),
            "bound" => {
                l.arity(2)?;
                bounds.push((l.tok(1)?.to_string(), l.value::<ExtendedScalar>(2)?));
            }
            "note" => note = l.rest(1).to_string(),
            "micros" => {
                l.arity(1)?;
                micros = Some(l.int(1)?);
            }
            "certificate" => {
                l.arity(1)?;
                cert_a = Some((l.value(1)?, l));
            }
            _ => return Err(unknown(l, "report")),
        }
    }
    let certificate = match cert_a {
        None => None,
        Some((a, at)) => {
            let [pf, pg] = parts;
            let cert = Certificate {
                a,
                f: pf.build(at, "f", p)?,
                g: pg.build(at, "g", p)?,
            };
            let (src, dst) = (cert.g.target().clone(), cert.f.target().clone());
            match verify_certificate(&src, &dst, &cert) {
                Ok(true) => Some(cert),
                Ok(false) => return Err(at.semantic("certificate fails the interleaving identities")),
                Err(e) => return Err(at.semantic(e)),
            }
        }
    };
    Ok(ExperimentReport {
        experiment: head.tok(1)?.to_string(),
        inputs,
        bounds,
        certificate,
        verdict: verdict.ok_or_else(|| head.semantic("report lacks a `verdict` line"))?,
        note,
        micros: micros.ok_or_else(|| head.semantic("report lacks a `micros` line"))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interleave::Budget;

    fn bc(bars: &[(&str, i64)]) -> GradedBarcode {
        GradedBarcode::new(bars.iter().map(|(s, d)| Bar::new(s.parse().unwrap(), *d)).collect())
    }

    fn round_trip(doc: &Document) {
        let text = serialize(doc);
        let back = parse(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
        assert_eq!(&back, doc, "{text}");
        assert_eq!(serialize(&back), text);
    }

    #[test]
    fn unit_interval_round_trips() {
        let doc = Document::barcode(bc(&[("[0,1]", 0)]));
        assert_eq!(serialize(&doc), "thicket/1\nfield 2\nspace line\nbarcode\nbar [0,1] 0\nend\n");
        round_trip(&doc);
        round_trip(&Document::barcode(GradedBarcode::empty()));
    }

    #[test]
    fn every_payload_round_trips() {
        round_trip(&Document::barcode(bc(&[("(-inf,1/3]", -2), ("{5}", 1), ("(0,inf)", 0)])));
        let band = Band::new(1, Mat::from_rows(2, 2, vec![0, 1, 1, 1]));
        let f = CircleSheaf::new(Scalar::int(4), 3, vec![Bar::new("[0,5)".parse().unwrap(), 0)], vec![band]).unwrap();
        round_trip(&Document::circle(f));
        let m = PLMap::new(
            vec![(Scalar::int(-1), Scalar::new(1, 2)), (Scalar::int(2), Scalar::int(0))],
            Extension::Constant,
            Extension::Affine,
            Some("[-1,inf)".parse().unwrap()),
        )
        .unwrap();
        round_trip(&Document::map(m));
        let half = PLMap::affine(Scalar::half(), Scalar::zero());
        let r = crate::pl::lipschitz_experiment(&half, &bc(&[("[0,2]", 0)]), &bc(&[("{1}", 0)]), &Scalar::one(), None, Budget::default()).unwrap();
        assert!(r.certificate.is_some());
        round_trip(&Document::report(r, 2));
        round_trip(&Document {
            characteristic: 2,
            space: Space::Circle(Scalar::int(4)),
            payload: Payload::Seed(SeedSpec {
                alpha: Scalar::half(),
                mode: Mode::NonNegative,
            }),
        });
    }

    #[test]
    fn errors_are_positioned() {
        let bad = "thicket/1\nfield 2\nspace line\nbarcode\nbar [2,1] 0\nend\n";
        assert!(matches!(parse(bad), Err(ParseError::Semantic { line: 5, .. })));
        let bad = "thicket/1\nfield 2\nspace line\nbarcode\nbar [0,x] 0\nend\n";
        assert!(matches!(parse(bad), Err(ParseError::Syntax { line: 5, column: 5, .. })));
        assert!(matches!(parse("thicket/9\n"), Err(ParseError::Version(v)) if v == "thicket/9"));
        let bad = "thicket/1\nfield 4\n";
        assert!(matches!(parse(bad), Err(ParseError::Semantic { line: 2, .. })));
        let bad = "thicket/1\nfield 2\nspace line\nbarcode\nbar [0,1] 0\n";
        assert!(matches!(parse(bad), Err(ParseError::Syntax { line: 6, .. })));
        let bad = "thicket/1\nfield 2\nspace circle 4\nsheaf\nband 0 1 0\nend\n";
        assert!(matches!(parse(bad), Err(ParseError::Semantic { line: 4, .. })));
    }

    #[test]
    fn tampered_certificates_are_rejected() {
        let half = PLMap::affine(Scalar::half(), Scalar::zero());
        let r = crate::pl::lipschitz_experiment(&half, &bc(&[("[0,2]", 0)]), &bc(&[("{1}", 0)]), &Scalar::one(), None, Budget::default()).unwrap();
        let text = serialize(&Document::report(r, 2));
        let tampered: String = text.lines().filter(|l| !l.starts_with("g.block")).map(|l| format!("{l}\n")).collect();
        assert!(matches!(parse(&tampered), Err(ParseError::Semantic { .. })));
    }
}
