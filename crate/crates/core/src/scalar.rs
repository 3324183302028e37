//! Scalar types the polynomial layer is generic over.
//!
//! Everything that has to produce a certificate runs over [`Rational`]. The
//! `f64` instance exists for plotting and quick numeric cross-checks; sign
//! decisions made over `f64` carry no guarantee.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision exact rational, always stored in lowest terms.
pub type Rational = BigRational;

/// An ordered field the polynomial code can compute in.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// A strictly positive factor `s` such that `s * coeffs` is in a canonical
    /// "primitive" form. For rationals this clears denominators and strips
    /// the integer content; for floats it scales the largest entry to 1.
    fn primitive_factor(coeffs: &[Self]) -> Self;

    /// `true` when arithmetic is exact, so zero tests are decisive.
    fn is_exact() -> bool;

    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("every scalar represents small integers")
    }

    fn approx(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Sign as -1, 0 or 1.
    fn sign_i8(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }
}

impl Scalar for Rational {
    fn primitive_factor(coeffs: &[Self]) -> Self {
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for c in coeffs.iter().filter(|c| !c.is_zero()) {
            den_lcm = den_lcm.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
        }
        if num_gcd.is_zero() {
            return Rational::one();
        }
        Rational::new(den_lcm, num_gcd)
    }

    fn is_exact() -> bool {
        true
    }
}

impl Scalar for f64 {
    fn primitive_factor(coeffs: &[Self]) -> Self {
        let max = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        if max == 0.0 || !max.is_finite() {
            1.0
        } else {
            1.0 / max
        }
    }

    fn is_exact() -> bool {
        false
    }
}

/// Shorthand for building rationals in code and tests.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats a rational as `p` or `p/q`.
pub fn rational_string(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p` or `p/q` into a rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => text.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Rational approximation of a finite float with denominator `2^bits`.
pub fn dyadic_approx(x: f64, bits: u32) -> Rational {
    let scale = (1u64 << bits) as f64;
    let n = (x * scale).round();
    Rational::new(BigInt::from_f64(n).unwrap_or_default(), BigInt::from(1u64 << bits))
}
