//! Dense univariate polynomials over a [`Scalar`] field.

use std::fmt;

use num_traits::Zero;

use crate::interval::Enclosure;
use crate::scalar::{rational_string, Rational, Scalar};

/// `coeffs[i]` is the coefficient of `t^i`; the leading entry is nonzero, and
/// the zero polynomial has no coefficients at all.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> UniPoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| T::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `a*t + b`
    pub fn linear(a: T, b: T) -> Self {
        Self::new(vec![b, a])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, t: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    /// Horner evaluation over an enclosure of `t`.
    pub fn eval_enclosure(&self, t: &Enclosure<T>) -> Enclosure<T> {
        self.coeffs.iter().rev().fold(Enclosure::point(T::zero()), |acc, c| {
            acc.mul(t).add(&Enclosure::point(c.clone()))
        })
    }

    pub fn sign_at(&self, t: &T) -> i8 {
        self.eval(t).sign_i8()
    }

    /// Sign as `t -> +inf`.
    pub fn sign_at_pos_inf(&self) -> i8 {
        self.leading().map_or(0, |c| c.sign_i8())
    }

    /// Sign as `t -> -inf`.
    pub fn sign_at_neg_inf(&self) -> i8 {
        match self.degree() {
            None => 0,
            Some(d) => {
                let s = self.sign_at_pos_inf();
                if d % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(T::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * T::from_int(i as i64))
                .collect(),
        )
    }

    /// Euclidean division over the field: `self = q*d + r` with `deg r < deg d`.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![T::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = rem[top].clone() / lead.clone();
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    let k = top - dd + j;
                    rem[k] = rem[k].clone() - c.clone() * dc.clone();
                }
            }
            quot[top - dd] = c;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Scaled by a positive factor into primitive form (see [`Scalar::primitive_factor`]).
    pub fn primitive(&self) -> Self {
        let f = T::primitive_factor(&self.coeffs);
        self.scale(&f)
    }

    /// Primitive form with a positive leading coefficient.
    pub fn normalized(&self) -> Self {
        let p = self.primitive();
        if p.sign_at_pos_inf() < 0 {
            p.neg()
        } else {
            p
        }
    }

    /// Greatest common divisor, normalized; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.normalized(), other.normalized());
        while !b.is_zero() {
            let r = a.rem(&b).normalized();
            a = b;
            b = r;
        }
        a
    }

    /// Resultant over the field; zero iff a common root exists.
    pub fn resultant(&self, other: &Self) -> T {
        let (Some(m), Some(n)) = (self.degree(), other.degree()) else {
            return T::zero();
        };
        if n == 0 {
            return pow_scalar(&other.coeffs[0], m);
        }
        let r = self.rem(other);
        let Some(k) = r.degree() else {
            return T::zero();
        };
        let lead = pow_scalar(&other.coeffs[n], m - k);
        let sign = if m * n % 2 == 1 { -T::one() } else { T::one() };
        sign * lead * other.resultant(&r)
    }

    /// `(-1)^(n(n-1)/2) * res(u, u') / lc(u)`; zero for constants.
    pub fn discriminant(&self) -> T {
        let Some(n) = self.degree().filter(|&n| n >= 1) else {
            return T::zero();
        };
        let r = self.resultant(&self.derivative()) / self.coeffs[n].clone();
        if (n * (n - 1) / 2) % 2 == 1 {
            -r
        } else {
            r
        }
    }

    /// The polynomial of degree below `xs.len()` through the points
    /// `(xs[i], ys[i])`; the `xs` must be distinct.
    pub fn interpolate(xs: &[T], ys: &[T]) -> Self {
        assert_eq!(xs.len(), ys.len(), "one value per node");
        let mut dd = ys.to_vec();
        for j in 1..xs.len() {
            for i in (j..xs.len()).rev() {
                dd[i] = (dd[i].clone() - dd[i - 1].clone()) / (xs[i].clone() - xs[i - j].clone());
            }
        }
        let mut out = Self::zero();
        for i in (0..xs.len()).rev() {
            out = out
                .mul(&Self::linear(T::one(), -xs[i].clone()))
                .add(&Self::constant(dd[i].clone()));
        }
        out
    }

    /// `t -> t + s`
    pub fn shift(&self, s: &T) -> Self {
        let lin = Self::linear(T::one(), s.clone());
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc.mul(&lin).add(&Self::constant(c.clone())))
    }

    /// `t -> lambda * t`
    pub fn scale_var(&self, lambda: &T) -> Self {
        let mut pw = T::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.clone() * pw.clone());
            pw = pw * lambda.clone();
        }
        Self::new(out)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> UniPoly<U> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }
}

impl fmt::Display for UniPoly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::from_int(0);
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = mag == Rational::from_int(1);
            match i {
                0 => write!(f, "{}", rational_string(&mag))?,
                _ => {
                    if !unit {
                        write!(f, "{}*", rational_string(&mag))?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn pow_scalar<T: Scalar>(x: &T, k: usize) -> T {
    (0..k).fold(T::one(), |acc, _| acc * x.clone())
}
