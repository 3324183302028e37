//! Sparse multivariate polynomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::interval::Enclosure;
use crate::point::{rank, Point};
use crate::scalar::{rational_string, Rational, Scalar};
use crate::unipoly::UniPoly;

/// Exponent vector. Ordered graded-lexicographically: total degree first,
/// then lexicographically with `x1 > x2 > ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in `nvars` variables with no stored zero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly<T> {
    nvars: usize,
    terms: BTreeMap<Monomial, T>,
}

impl<T: Scalar> MultiPoly<T> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: T) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    /// The variable `x_{index+1}` (0-based index).
    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(Monomial(e), T::one());
        p
    }

    /// Linear form `sum_i coeffs[i] * x_i`.
    pub fn linear_form(coeffs: &[T]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(Monomial(e), c.clone());
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, T)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length must equal nvars");
            p.add_term(Monomial(e), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing = existing.clone() + c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &T)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exponents: &[u32]) -> T {
        self.terms
            .get(&Monomial(exponents.to_vec()))
            .cloned()
            .unwrap_or_else(T::zero)
    }

    /// Maximal total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// The common total degree of all terms.
    pub fn homogeneous_degree(&self) -> Result<usize> {
        let mut iter = self.terms.keys();
        let first = iter.next().ok_or(Error::ZeroPolynomial)?;
        let d = first.total_degree();
        if let Some(other) = iter.find(|m| m.total_degree() != d) {
            return Err(Error::NotHomogeneous {
                first: first.0.clone(),
                second: other.0.clone(),
            });
        }
        Ok(d as usize)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.clone() * s.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.nvars, T::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if n != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: n,
            });
        }
        Ok(())
    }

    pub fn evaluate(&self, x: &Point<T>) -> Result<T> {
        self.check_dim(x.dim())?;
        let max_deg = self.total_degree().unwrap_or(0) as usize;
        let powers: Vec<Vec<T>> = x
            .coords()
            .iter()
            .map(|xi| {
                let mut v = Vec::with_capacity(max_deg + 1);
                let mut acc = T::one();
                for _ in 0..=max_deg {
                    v.push(acc.clone());
                    acc = acc * xi.clone();
                }
                v
            })
            .collect();
        let mut sum = T::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term * powers[i][e as usize].clone();
                }
            }
            sum = sum + term;
        }
        Ok(sum)
    }

    /// Interval evaluation over a box.
    pub fn eval_enclosure(&self, x: &[Enclosure<T>]) -> Result<Enclosure<T>> {
        self.check_dim(x.len())?;
        let mut sum = Enclosure::point(T::zero());
        for (m, c) in &self.terms {
            let mut term = Enclosure::point(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&x[i].powi(e));
                }
            }
            sum = sum.add(&term);
        }
        Ok(sum)
    }

    /// Partial derivative with respect to the variable at `index` (0-based).
    pub fn partial(&self, index: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[index];
            if e == 0 {
                continue;
            }
            let mut m2 = m.0.clone();
            m2[index] -= 1;
            out.add_term(Monomial(m2), c.clone() * T::from_int(e as i64));
        }
        out
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars).map(|i| self.partial(i)).collect()
    }

    /// The univariate polynomial `t -> h(t*e + v)`, exact.
    ///
    /// For homogeneous `h` of degree `d` the coefficient of `t^d` is `h(e)`.
    pub fn restrict_line(&self, e: &Point<T>, v: &Point<T>) -> Result<UniPoly<T>> {
        self.check_dim(e.dim())?;
        self.check_dim(v.dim())?;
        if !self.is_zero() {
            self.homogeneous_degree()?;
        }
        Ok(self.restrict_line_unchecked(e, v))
    }

    /// As [`restrict_line`](Self::restrict_line) without the homogeneity check.
    pub fn restrict_line_unchecked(&self, e: &Point<T>, v: &Point<T>) -> UniPoly<T> {
        let max_deg = self.total_degree().unwrap_or(0) as usize;
        let powers: Vec<Vec<UniPoly<T>>> = (0..self.nvars)
            .map(|i| {
                let lin = UniPoly::linear(e[i].clone(), v[i].clone());
                let mut v = Vec::with_capacity(max_deg + 1);
                let mut acc = UniPoly::constant(T::one());
                for _ in 0..=max_deg {
                    v.push(acc.clone());
                    acc = acc.mul(&lin);
                }
                v
            })
            .collect();
        let mut sum = UniPoly::zero();
        for (m, c) in &self.terms {
            let mut term = UniPoly::constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&powers[i][e as usize]);
                }
            }
            sum = sum.add(&term);
        }
        sum
    }

    /// Substitutes `x_i -> forms[i]`; all forms share one variable count.
    pub fn compose(&self, forms: &[MultiPoly<T>]) -> Result<Self> {
        self.check_dim(forms.len())?;
        let target = forms.first().map_or(0, |f| f.nvars);
        let max_deg = self.total_degree().unwrap_or(0);
        let powers: Vec<Vec<MultiPoly<T>>> = forms
            .iter()
            .map(|f| {
                let mut v = Vec::new();
                let mut acc = MultiPoly::constant(target, T::one());
                for _ in 0..=max_deg {
                    v.push(acc.clone());
                    acc = acc.mul(f);
                }
                v
            })
            .collect();
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&powers[i][e as usize]);
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> MultiPoly<U> {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }
}

impl MultiPoly<Rational> {
    /// `g(s, t, u) = h(s*a + t*b + u*c)` for linearly independent `a, b, c`.
    pub fn restrict_plane(&self, a: &Point<Rational>, b: &Point<Rational>, c: &Point<Rational>) -> Result<Self> {
        for p in [a, b, c] {
            self.check_dim(p.dim())?;
        }
        self.homogeneous_degree()?;
        if rank(&[a.clone(), b.clone(), c.clone()]) < 3 {
            return Err(Error::DependentVectors);
        }
        let forms: Vec<MultiPoly<Rational>> = (0..self.nvars)
            .map(|i| MultiPoly::linear_form(&[a[i].clone(), b[i].clone(), c[i].clone()]))
            .collect();
        let g = self.compose(&forms)?;
        if g.is_zero() {
            return Err(Error::DegenerateRestriction);
        }
        Ok(g)
    }

    pub fn to_f64(&self) -> MultiPoly<f64> {
        self.map(|c| c.approx())
    }
}

impl fmt::Display for MultiPoly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let one = Rational::from_int(1);
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &Rational::from_int(0);
            let mag = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let factors: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            format!("x{}", i + 1)
                        } else {
                            format!("x{}^{}", i + 1, e)
                        }
                    })
                    .collect();
            if factors.is_empty() {
                write!(f, "{}", rational_string(&mag))?;
            } else {
                if mag != one {
                    write!(f, "{}*", rational_string(&mag))?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}
