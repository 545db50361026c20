//! Exact thickening functors, interleaving distances and pushforwards for
//! constructible sheaves on the real line and the circle.

pub mod barcode;
pub mod circle;
pub mod corpus;
pub mod error;
pub mod extend;
pub mod hom;
pub mod interleave;
pub mod interval;
pub mod io;
pub mod linalg;
pub mod model;
pub mod pl;
pub mod plot;
pub mod poly;
pub mod quiver;
pub mod scalar;
pub mod search;
pub mod suites;
pub mod tables;
pub mod thicken;

pub use barcode::{Bar, GradedBarcode, GradedDims};
pub use error::{Error, ParseError, Result};
pub use interval::{EndpointKind, Interval, Shape};
pub use scalar::{ExtendedScalar, Scalar};
