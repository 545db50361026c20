//! Intervals of the real line with closed or open endpoints.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseError, Result};
use crate::scalar::{ExtendedScalar, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EndpointKind {
    Closed,
    Open,
}

impl EndpointKind {
    pub fn flip(self) -> Self {
        match self {
            EndpointKind::Closed => EndpointKind::Open,
            EndpointKind::Open => EndpointKind::Closed,
        }
    }
}

/// The nine topological shapes an interval can take.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Shape {
    /// `[b, e]` including singletons.
    Closed,
    /// `(b, e)`
    Open,
    /// `[b, e)`
    ClosedOpen,
    /// `(b, e]`
    OpenClosed,
    /// `[b, ∞)`
    ClosedRayRight,
    /// `(b, ∞)`
    OpenRayRight,
    /// `(-∞, e]`
    ClosedRayLeft,
    /// `(-∞, e)`
    OpenRayLeft,
    /// `(-∞, ∞)`
    Line,
}

impl Shape {
    pub const ALL: [Shape; 9] = [
        Shape::Closed,
        Shape::Open,
        Shape::ClosedOpen,
        Shape::OpenClosed,
        Shape::ClosedRayRight,
        Shape::OpenRayRight,
        Shape::ClosedRayLeft,
        Shape::OpenRayLeft,
        Shape::Line,
    ];

    pub fn is_bounded(self) -> bool {
        matches!(
            self,
            Shape::Closed | Shape::Open | Shape::ClosedOpen | Shape::OpenClosed
        )
    }
}

/// A nonempty connected subset of the real line.
///
/// Infinite endpoints are always open and a degenerate interval is the closed
/// singleton `[p, p]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    left: ExtendedScalar,
    left_kind: EndpointKind,
    right: ExtendedScalar,
    right_kind: EndpointKind,
}

impl Interval {
    pub fn new(
        left: ExtendedScalar,
        left_kind: EndpointKind,
        right: ExtendedScalar,
        right_kind: EndpointKind,
    ) -> Result<Self> {
        let candidate = Interval {
            left,
            left_kind,
            right,
            right_kind,
        };
        let bad = |why: &str| Err(Error::InvalidInterval(format!("{candidate}: {why}")));
        if !candidate.left.is_finite() && candidate.left_kind == EndpointKind::Closed
            || !candidate.right.is_finite() && candidate.right_kind == EndpointKind::Closed
        {
            return bad("infinite endpoints must be open");
        }
        if candidate.left > candidate.right {
            return bad("left endpoint exceeds right endpoint");
        }
        if candidate.left == candidate.right
            && (candidate.left_kind, candidate.right_kind)
                != (EndpointKind::Closed, EndpointKind::Closed)
        {
            return bad("empty interval");
        }
        Ok(candidate)
    }

    /// Bounded interval with the given kinds.
    pub fn bounded(
        left: Scalar,
        left_kind: EndpointKind,
        right: Scalar,
        right_kind: EndpointKind,
    ) -> Result<Self> {
        Interval::new(left.into(), left_kind, right.into(), right_kind)
    }

    pub fn closed(l: Scalar, r: Scalar) -> Result<Self> {
        Interval::bounded(l, EndpointKind::Closed, r, EndpointKind::Closed)
    }

    pub fn open(l: Scalar, r: Scalar) -> Result<Self> {
        Interval::bounded(l, EndpointKind::Open, r, EndpointKind::Open)
    }

    pub fn closed_open(l: Scalar, r: Scalar) -> Result<Self> {
        Interval::bounded(l, EndpointKind::Closed, r, EndpointKind::Open)
    }

    pub fn open_closed(l: Scalar, r: Scalar) -> Result<Self> {
        Interval::bounded(l, EndpointKind::Open, r, EndpointKind::Closed)
    }

    pub fn point(p: Scalar) -> Self {
        Interval::closed(p.clone(), p).expect("singleton is valid")
    }

    pub fn line() -> Self {
        Interval {
            left: ExtendedScalar::NegInf,
            left_kind: EndpointKind::Open,
            right: ExtendedScalar::PosInf,
            right_kind: EndpointKind::Open,
        }
    }

    /// `[b, ∞)` or `(b, ∞)`.
    pub fn ray_right(b: Scalar, kind: EndpointKind) -> Self {
        Interval::new(b.into(), kind, ExtendedScalar::PosInf, EndpointKind::Open)
            .expect("ray is valid")
    }

    /// `(-∞, e]` or `(-∞, e)`.
    pub fn ray_left(e: Scalar, kind: EndpointKind) -> Self {
        Interval::new(ExtendedScalar::NegInf, EndpointKind::Open, e.into(), kind)
            .expect("ray is valid")
    }

    pub fn left(&self) -> &ExtendedScalar {
        &self.left
    }

    pub fn right(&self) -> &ExtendedScalar {
        &self.right
    }

    pub fn left_kind(&self) -> EndpointKind {
        self.left_kind
    }

    pub fn right_kind(&self) -> EndpointKind {
        self.right_kind
    }

    pub fn shape(&self) -> Shape {
        use EndpointKind::*;
        match (&self.left, &self.right) {
            (ExtendedScalar::Finite(_), ExtendedScalar::Finite(_)) => {
                match (self.left_kind, self.right_kind) {
                    (Closed, Closed) => Shape::Closed,
                    (Open, Open) => Shape::Open,
                    (Closed, Open) => Shape::ClosedOpen,
                    (Open, Closed) => Shape::OpenClosed,
                }
            }
            (ExtendedScalar::Finite(_), _) => match self.left_kind {
                Closed => Shape::ClosedRayRight,
                Open => Shape::OpenRayRight,
            },
            (_, ExtendedScalar::Finite(_)) => match self.right_kind {
                Closed => Shape::ClosedRayLeft,
                Open => Shape::OpenRayLeft,
            },
            _ => Shape::Line,
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.left.is_finite() && self.right.is_finite()
    }

    pub fn is_singleton(&self) -> bool {
        self.left == self.right
    }

    /// Length of a bounded interval.
    pub fn length(&self) -> Option<Scalar> {
        match (&self.left, &self.right) {
            (ExtendedScalar::Finite(l), ExtendedScalar::Finite(r)) => Some(r - l),
            _ => None,
        }
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        let left_ok = match &self.left {
            ExtendedScalar::NegInf => true,
            ExtendedScalar::Finite(l) => match self.left_kind {
                EndpointKind::Closed => l <= x,
                EndpointKind::Open => l < x,
            },
            ExtendedScalar::PosInf => false,
        };
        let right_ok = match &self.right {
            ExtendedScalar::PosInf => true,
            ExtendedScalar::Finite(r) => match self.right_kind {
                EndpointKind::Closed => x <= r,
                EndpointKind::Open => x < r,
            },
            ExtendedScalar::NegInf => false,
        };
        left_ok && right_ok
    }

    /// Intersection with another interval, `None` when empty.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (left, left_kind) = match self.left.cmp(&other.left) {
            std::cmp::Ordering::Greater => (self.left.clone(), self.left_kind),
            std::cmp::Ordering::Less => (other.left.clone(), other.left_kind),
            std::cmp::Ordering::Equal => (self.left.clone(), self.left_kind.max(other.left_kind)),
        };
        let (right, right_kind) = match self.right.cmp(&other.right) {
            std::cmp::Ordering::Less => (self.right.clone(), self.right_kind),
            std::cmp::Ordering::Greater => (other.right.clone(), other.right_kind),
            std::cmp::Ordering::Equal => {
                (self.right.clone(), self.right_kind.max(other.right_kind))
            }
        };
        Interval::new(left, left_kind, right, right_kind).ok()
    }

    /// Finite endpoints, left first.
    pub fn finite_endpoints(&self) -> impl Iterator<Item = &Scalar> {
        self.left.finite().into_iter().chain(self.right.finite())
    }

    /// Translate by `by`.
    pub fn translate(&self, by: &Scalar) -> Interval {
        Interval {
            left: self.left.shift(by),
            left_kind: self.left_kind,
            right: self.right.shift(by),
            right_kind: self.right_kind,
        }
    }

    /// Mirror image under `x ↦ -x`.
    pub fn reflect(&self) -> Interval {
        Interval {
            left: self.right.negate(),
            left_kind: self.right_kind,
            right: self.left.negate(),
            right_kind: self.left_kind,
        }
    }

    /// Flip the kind of every finite endpoint.
    pub fn flip_kinds(&self) -> Result<Interval> {
        let flip = |e: &ExtendedScalar, k: EndpointKind| {
            if e.is_finite() {
                k.flip()
            } else {
                k
            }
        };
        Interval::new(
            self.left.clone(),
            flip(&self.left, self.left_kind),
            self.right.clone(),
            flip(&self.right, self.right_kind),
        )
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = match self.left_kind {
            EndpointKind::Closed => '[',
            EndpointKind::Open => '(',
        };
        let r = match self.right_kind {
            EndpointKind::Closed => ']',
            EndpointKind::Open => ')',
        };
        write!(f, "{l}{},{}{r}", self.left, self.right)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Interval {
    type Err = ParseError;

    /// Parses `[a,b]`, `(a,b)`, `[a,b)`, `(a,b]` and `{p}`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        let syntax = |col: usize, msg: &str| ParseError::syntax(0, col, msg.to_string());
        if let Some(inner) = s.strip_prefix('{').and_then(|t| t.strip_suffix('}')) {
            let p: Scalar = inner.parse()?;
            return Ok(Interval::point(p));
        }
        let mut chars = s.chars();
        let left_kind = match chars.next() {
            Some('[') => EndpointKind::Closed,
            Some('(') => EndpointKind::Open,
            _ => return Err(syntax(1, "expected `[` or `(`")),
        };
        let right_kind = match s.chars().last() {
            Some(']') => EndpointKind::Closed,
            Some(')') => EndpointKind::Open,
            _ => return Err(syntax(s.len(), "expected `]` or `)`")),
        };
        let body = &s[1..s.len() - 1];
        let (l, r) = body
            .split_once(',')
            .ok_or_else(|| syntax(2, "expected `,` between endpoints"))?;
        let left: ExtendedScalar = l.parse()?;
        let right: ExtendedScalar = r.parse()?;
        Interval::new(left, left_kind, right, right_kind)
            .map_err(|e| ParseError::semantic(0, e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Scalar::int(n)
    }

    #[test]
    fn rejects_empty_and_bad_infinite() {
        assert!(Interval::open(q(1), q(1)).is_err());
        assert!(Interval::closed_open(q(1), q(1)).is_err());
        assert!(Interval::closed(q(2), q(1)).is_err());
        assert!(Interval::new(
            ExtendedScalar::NegInf,
            EndpointKind::Closed,
            q(0).into(),
            EndpointKind::Open
        )
        .is_err());
        assert!(Interval::closed(q(1), q(1)).is_ok());
    }

    #[test]
    fn shapes() {
        assert_eq!(Interval::point(q(0)).shape(), Shape::Closed);
        assert_eq!(Interval::line().shape(), Shape::Line);
        assert_eq!(
            Interval::ray_left(q(0), EndpointKind::Open).shape(),
            Shape::OpenRayLeft
        );
    }

    #[test]
    fn parse_and_display() {
        for lit in ["[0,1]", "(0,1/2]", "(-inf,3)", "[2,inf)", "(-inf,inf)", "[2,2]"] {
            let i: Interval = lit.parse().unwrap();
            assert_eq!(i.to_string(), lit);
        }
        assert_eq!("{3}".parse::<Interval>().unwrap(), Interval::point(q(3)));
        assert!("(1,1)".parse::<Interval>().is_err());
    }

    #[test]
    fn intersection_kinds() {
        let a = Interval::closed(q(0), q(2)).unwrap();
        let b = Interval::open(q(1), q(3)).unwrap();
        assert_eq!(a.intersect(&b).unwrap().to_string(), "(1,2]");
        let c = Interval::open(q(2), q(3)).unwrap();
        assert!(a.intersect(&c).is_none());
        let d = Interval::closed(q(2), q(5)).unwrap();
        assert_eq!(a.intersect(&d).unwrap(), Interval::point(q(2)));
    }
}
