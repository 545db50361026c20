//! Exact rational scalars and their extension by `±∞`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ParseError;

/// An arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// Nearest `f64`, for drawing only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn half() -> Self {
        Scalar::new(1, 2)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar(BigRational::from_integer(n))
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Mean of two scalars.
    pub fn midpoint(&self, other: &Scalar) -> Scalar {
        (self + other) / Scalar::int(2)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((self.0).$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                Scalar((self.0).$method(&rhs.0))
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $tr<&'b Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'b Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0.clone())
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = ParseError;

    /// Accepts `p`, `-p` and `p/q` with integer `p`, nonzero `q`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseError::syntax(0, 0, format!("invalid rational literal `{s}`"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(Scalar(BigRational::new(num, den)))
    }
}

/// A scalar or one of the two infinite symbols.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ExtendedScalar {
    NegInf,
    Finite(Scalar),
    PosInf,
}

impl ExtendedScalar {
    pub fn finite(&self) -> Option<&Scalar> {
        match self {
            ExtendedScalar::Finite(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedScalar::Finite(_))
    }

    fn rank(&self) -> u8 {
        match self {
            ExtendedScalar::NegInf => 0,
            ExtendedScalar::Finite(_) => 1,
            ExtendedScalar::PosInf => 2,
        }
    }

    /// Translation; infinities are fixed.
    pub fn shift(&self, by: &Scalar) -> ExtendedScalar {
        match self {
            ExtendedScalar::Finite(s) => ExtendedScalar::Finite(s + by),
            other => other.clone(),
        }
    }

    pub fn negate(&self) -> ExtendedScalar {
        match self {
            ExtendedScalar::NegInf => ExtendedScalar::PosInf,
            ExtendedScalar::PosInf => ExtendedScalar::NegInf,
            ExtendedScalar::Finite(s) => ExtendedScalar::Finite(-s),
        }
    }
}

impl From<Scalar> for ExtendedScalar {
    fn from(s: Scalar) -> Self {
        ExtendedScalar::Finite(s)
    }
}

impl PartialOrd for ExtendedScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtendedScalar::Finite(a), ExtendedScalar::Finite(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl fmt::Display for ExtendedScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedScalar::NegInf => write!(f, "-inf"),
            ExtendedScalar::PosInf => write!(f, "inf"),
            ExtendedScalar::Finite(s) => write!(f, "{s}"),
        }
    }
}

impl fmt::Debug for ExtendedScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExtendedScalar {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "-inf" => Ok(ExtendedScalar::NegInf),
            "inf" | "+inf" => Ok(ExtendedScalar::PosInf),
            other => other.parse().map(ExtendedScalar::Finite),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_form() {
        let s = Scalar::new(6, -4);
        assert_eq!(s.to_string(), "-3/2");
        assert_eq!(s.denom(), &BigInt::from(2));
    }

    #[test]
    fn parse_round_trip() {
        for lit in ["0", "-7", "5/3", "-1/8"] {
            let s: Scalar = lit.parse().unwrap();
            assert_eq!(s.to_string(), lit);
        }
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
    }

    #[test]
    fn extended_order_is_total() {
        let a = ExtendedScalar::NegInf;
        let b = ExtendedScalar::Finite(Scalar::int(-1000));
        let c = ExtendedScalar::Finite(Scalar::new(1, 3));
        let d = ExtendedScalar::PosInf;
        assert!(a < b && b < c && c < d);
        assert_eq!(d.negate(), a);
    }
}
