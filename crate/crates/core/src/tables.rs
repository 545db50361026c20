//! Frozen data tables and their regeneration from the poset model.
//!
//! `hom_table.txt` lists `dim Hom` and `dim Ext¹` for every combinatorial
//! pattern of two intervals; `rho_table.txt` lists the coefficient of the
//! restriction `ρ_{0,c}` per bar shape and position of `c` relative to the
//! bar's length. Both are plain text with a version header.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::OnceLock;

use crate::barcode::Bar;
use crate::error::{Error, Result};
use crate::hom::{model_hom_ext, pattern, IntervalCode};
use crate::interval::{EndpointKind, Interval, Shape};
use crate::scalar::{ExtendedScalar, Scalar};

pub const HOM_TABLE_FILE: &str = "hom_table.txt";
pub const RHO_TABLE_FILE: &str = "rho_table.txt";
const HOM_HEADER: &str = "# thicket hom table v1";
const RHO_HEADER: &str = "# thicket restriction table v1";

static HOM_TABLE_TEXT: &str = include_str!("../data/hom_table.txt");
static RHO_TABLE_TEXT: &str = include_str!("../data/rho_table.txt");

/// Position of a restriction parameter `c` relative to a bar's length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regime {
    Shorter,
    Equal,
    Longer,
    Unbounded,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Shorter => "shorter",
            Regime::Equal => "equal",
            Regime::Longer => "longer",
            Regime::Unbounded => "unbounded",
        }
    }

    fn parse(s: &str) -> Option<Regime> {
        [
            Regime::Shorter,
            Regime::Equal,
            Regime::Longer,
            Regime::Unbounded,
        ]
        .into_iter()
        .find(|r| r.name() == s)
    }
}

pub fn shape_name(shape: Shape) -> &'static str {
    match shape {
        Shape::Closed => "closed",
        Shape::Open => "open",
        Shape::ClosedOpen => "closed-open",
        Shape::OpenClosed => "open-closed",
        Shape::ClosedRayRight => "closed-ray-right",
        Shape::OpenRayRight => "open-ray-right",
        Shape::ClosedRayLeft => "closed-ray-left",
        Shape::OpenRayLeft => "open-ray-left",
        Shape::Line => "line",
    }
}

fn parse_shape(s: &str) -> Option<Shape> {
    Shape::ALL.into_iter().find(|&sh| shape_name(sh) == s)
}

type HomKey = (IntervalCode, IntervalCode);

fn parse_hom_table(text: &str) -> Result<HashMap<HomKey, (usize, usize)>> {
    let mut lines = text.lines();
    if lines.next() != Some(HOM_HEADER) {
        return Err(Error::Internal("hom table: bad version header".into()));
    }
    let mut out = HashMap::new();
    for (n, line) in lines.enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || Error::Internal(format!("hom table line {}: `{line}`", n + 2));
        let tok: Vec<&str> = line.split_whitespace().collect();
        if tok.len() != 4 {
            return Err(bad());
        }
        let i: Interval = tok[0].parse().map_err(|_| bad())?;
        let j: Interval = tok[1].parse().map_err(|_| bad())?;
        let h0: usize = tok[2].parse().map_err(|_| bad())?;
        let h1: usize = tok[3].parse().map_err(|_| bad())?;
        let codes = pattern(&[&i, &j]);
        out.insert((codes[0], codes[1]), (h0, h1));
    }
    Ok(out)
}

fn hom_table() -> &'static HashMap<HomKey, (usize, usize)> {
    static TABLE: OnceLock<HashMap<HomKey, (usize, usize)>> = OnceLock::new();
    TABLE.get_or_init(|| parse_hom_table(HOM_TABLE_TEXT).expect("embedded hom table is valid"))
}

pub fn hom_entry(i: IntervalCode, j: IntervalCode) -> Option<(usize, usize)> {
    hom_table().get(&(i, j)).copied()
}

pub fn hom_table_len() -> usize {
    hom_table().len()
}

/// Every interval whose finite endpoints lie in `{0, 1, 2, 3}`.
pub fn grid_intervals() -> Vec<Interval> {
    use EndpointKind::{Closed, Open};
    let mut ends: Vec<ExtendedScalar> = vec![ExtendedScalar::NegInf];
    ends.extend((0..4).map(|k| ExtendedScalar::Finite(Scalar::int(k))));
    ends.push(ExtendedScalar::PosInf);
    let mut out = Vec::new();
    for l in &ends {
        for r in &ends {
            for lk in [Closed, Open] {
                for rk in [Closed, Open] {
                    if let Ok(i) = Interval::new(l.clone(), lk, r.clone(), rk) {
                        out.push(i);
                    }
                }
            }
        }
    }
    out
}

/// Recompute the hom table from the poset model. Pairs over the grid
/// realize every pattern of at most four finite endpoints.
pub fn generate_hom_table() -> Result<String> {
    let grid = grid_intervals();
    let mut rows: Vec<(HomKey, String)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for i in &grid {
        for j in &grid {
            let codes = pattern(&[i, j]);
            let key = (codes[0], codes[1]);
            if !seen.insert(key) {
                continue;
            }
            let (h0, h1) = model_hom_ext(i, j, 2);
            for p in [3, 5] {
                if model_hom_ext(i, j, p) != (h0, h1) {
                    return Err(Error::Internal(format!(
                        "Hom between {i} and {j} depends on the characteristic"
                    )));
                }
            }
            if h0 > 1 || h1 > 1 {
                return Err(Error::Internal(format!(
                    "Hom between {i} and {j} has dimension ({h0}, {h1})"
                )));
            }
            let (ri, rj) = (codes[0].representative(), codes[1].representative());
            rows.push((key, format!("{ri} {rj} {h0} {h1}")));
        }
    }
    rows.sort();
    let mut text = String::new();
    writeln!(text, "{HOM_HEADER}").unwrap();
    writeln!(text, "# source target hom ext1 (endpoints are ranks)").unwrap();
    for (_, r) in rows {
        writeln!(text, "{r}").unwrap();
    }
    Ok(text)
}

fn parse_rho_table(text: &str) -> Result<HashMap<(Shape, Regime), u32>> {
    let mut lines = text.lines();
    if lines.next() != Some(RHO_HEADER) {
        return Err(Error::Internal("restriction table: bad version header".into()));
    }
    let mut out = HashMap::new();
    for (n, line) in lines.enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || Error::Internal(format!("restriction table line {}: `{line}`", n + 2));
        let tok: Vec<&str> = line.split_whitespace().collect();
        if tok.len() != 3 {
            return Err(bad());
        }
        let shape = parse_shape(tok[0]).ok_or_else(bad)?;
        let regime = Regime::parse(tok[1]).ok_or_else(bad)?;
        let v: u32 = tok[2].parse().map_err(|_| bad())?;
        out.insert((shape, regime), v);
    }
    Ok(out)
}

fn rho_table() -> &'static HashMap<(Shape, Regime), u32> {
    static TABLE: OnceLock<HashMap<(Shape, Regime), u32>> = OnceLock::new();
    TABLE.get_or_init(|| {
        parse_rho_table(RHO_TABLE_TEXT).expect("embedded restriction table is valid")
    })
}

pub fn rho_coefficient(shape: Shape, regime: Regime) -> u32 {
    *rho_table()
        .get(&(shape, regime))
        .unwrap_or_else(|| panic!("no restriction row for {shape:?} {regime:?}"))
}

/// Representative bar of a shape, of length 2 when bounded.
pub fn representative(shape: Shape) -> Interval {
    use EndpointKind::{Closed, Open};
    let (z, two) = (Scalar::zero(), Scalar::int(2));
    match shape {
        Shape::Closed => Interval::closed(z, two),
        Shape::Open => Interval::open(z, two),
        Shape::ClosedOpen => Interval::closed_open(z, two),
        Shape::OpenClosed => Interval::open_closed(z, two),
        Shape::ClosedRayRight => Ok(Interval::ray_right(z, Closed)),
        Shape::OpenRayRight => Ok(Interval::ray_right(z, Open)),
        Shape::ClosedRayLeft => Ok(Interval::ray_left(z, Closed)),
        Shape::OpenRayLeft => Ok(Interval::ray_left(z, Open)),
        Shape::Line => Ok(Interval::line()),
    }
    .expect("representatives are valid")
}

/// The `(shape, regime, c)` rows of the restriction table with the
/// parameter used to probe each one on the representative bar.
pub fn rho_rows() -> Vec<(Shape, Regime, Scalar)> {
    let mut rows = Vec::new();
    for shape in Shape::ALL {
        if shape.is_bounded() {
            rows.push((shape, Regime::Shorter, Scalar::one()));
            rows.push((shape, Regime::Equal, Scalar::int(2)));
            rows.push((shape, Regime::Longer, Scalar::int(3)));
        } else {
            rows.push((shape, Regime::Unbounded, Scalar::one()));
        }
    }
    rows
}

pub fn generate_rho_table() -> Result<String> {
    let mut text = String::new();
    writeln!(text, "{RHO_HEADER}").unwrap();
    writeln!(text, "# shape regime coefficient").unwrap();
    for (shape, regime, c) in rho_rows() {
        let bar = Bar::new(representative(shape), 0);
        let v = crate::thicken::derive_restriction_coefficient(&bar, &c)?;
        writeln!(text, "{} {} {v}", shape_name(shape), regime.name()).unwrap();
    }
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_has_all_shapes() {
        let grid = grid_intervals();
        for s in Shape::ALL {
            assert!(grid.iter().any(|i| i.shape() == s));
        }
    }

    /// Set `THICKET_BLESS=1` to rewrite the frozen files from the model.
    #[test]
    fn frozen_tables_match_model() {
        let hom = generate_hom_table().unwrap();
        let rho = generate_rho_table().unwrap();
        if std::env::var_os("THICKET_BLESS").is_some() {
            let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
            std::fs::write(dir.join(HOM_TABLE_FILE), &hom).unwrap();
            std::fs::write(dir.join(RHO_TABLE_FILE), &rho).unwrap();
            return;
        }
        assert_eq!(hom, HOM_TABLE_TEXT);
        assert_eq!(rho, RHO_TABLE_TEXT);
    }

    #[test]
    fn singleton_restriction_uses_the_longer_row() {
        let bar = Bar::new(Interval::point(Scalar::zero()), 0);
        for c in [Scalar::half(), Scalar::int(2)] {
            assert_eq!(
                crate::thicken::derive_restriction_coefficient(&bar, &c).unwrap(),
                rho_coefficient(Shape::Closed, Regime::Longer)
            );
        }
    }
}
