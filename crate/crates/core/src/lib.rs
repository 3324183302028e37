//! Exact tools for hyperbolic polynomials and their hyperbolicity cones.
//!
//! The polynomial layer ([`MultiPoly`], [`UniPoly`], [`realroots`]) is
//! generic over a [`Scalar`]; the geometric layers work over [`Rational`]
//! so that every "no" verdict and every sign they report is a certificate.

pub mod error;
pub mod hyperbolicity;
pub mod interval;
pub mod multipoly;
pub mod parse;
pub mod planecurve;
pub mod point;
pub mod realroots;
pub mod rng;
pub mod scalar;
pub mod sections;
pub mod union_find;
pub mod unipoly;

pub use error::{Error, Result};
pub use interval::Enclosure;
pub use multipoly::{Monomial, MultiPoly};
pub use parse::parse_poly;
pub use point::Point;
pub use scalar::{Rational, Scalar};
pub use unipoly::UniPoly;

/// Exact multivariate polynomial.
pub type MultiPolyQ = MultiPoly<Rational>;
/// Exact univariate polynomial.
pub type UniPolyQ = UniPoly<Rational>;
/// Exact point or direction.
pub type PointQ = Point<Rational>;
/// Floating-point polynomial, for plotting.
pub type MultiPolyF = MultiPoly<f64>;
