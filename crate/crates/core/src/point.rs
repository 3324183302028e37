use std::fmt;
use std::ops::{Index, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::scalar::{rational_string, Rational, Scalar};

/// A point or direction in `R^n`. Projective use is up to nonzero scaling.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point<T>(pub Vec<T>);

impl<T: Scalar> Point<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Point(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| T::from_int(c)).collect())
    }

    pub fn zeros(n: usize) -> Self {
        Point(vec![T::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut p = Self::zeros(n);
        p.0[i] = T::one();
        p
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        Point(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Point(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        )
    }

    pub fn scale(&self, s: &T) -> Self {
        Point(self.0.iter().map(|a| a.clone() * s.clone()).collect())
    }

    /// `s * self + other`
    pub fn axpy(&self, s: &T, other: &Self) -> Self {
        Point(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.clone() * s.clone() + b.clone())
                .collect(),
        )
    }

    pub fn dot(&self, other: &Self) -> T {
        self.0
            .iter()
            .zip(&other.0)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    /// Exact test for `self` and `other` spanning at most a line.
    pub fn is_parallel(&self, other: &Self) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                let minor = self.0[i].clone() * other.0[j].clone() - self.0[j].clone() * other.0[i].clone();
                if !minor.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|c| c.approx()).collect()
    }

    pub fn cross(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), 3);
        let (a, b) = (&self.0, &other.0);
        Point(vec![
            a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
            a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
            a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
        ])
    }
}

impl Point<Rational> {
    /// Scales to coprime integer coordinates, keeping the direction.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let f = Rational::primitive_factor(&self.0);
        self.scale(&f)
    }

    /// Integer coordinates divided by their gcd.
    pub fn from_bigints(coords: Vec<BigInt>) -> Self {
        let g = coords.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let coords = if g.is_zero() {
            coords
        } else {
            coords.into_iter().map(|c| c / &g).collect()
        };
        Point(coords.into_iter().map(Rational::from_integer).collect())
    }

    pub fn abs_max_index(&self) -> usize {
        let mut best = 0;
        for i in 1..self.dim() {
            if self.0[i].abs() > self.0[best].abs() {
                best = i;
            }
        }
        best
    }
}

impl<T: Scalar> Neg for &Point<T> {
    type Output = Point<T>;
    fn neg(self) -> Point<T> {
        Point(self.0.iter().map(|a| -a.clone()).collect())
    }
}

impl<T: Scalar> Neg for Point<T> {
    type Output = Point<T>;
    fn neg(self) -> Point<T> {
        -&self
    }
}

impl<T> Index<usize> for Point<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl fmt::Display for Point<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(rational_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Exact rank of a list of vectors of equal length.
pub fn rank(vectors: &[Point<Rational>]) -> usize {
    let mut rows: Vec<Vec<Rational>> = vectors.iter().map(|v| v.0.clone()).collect();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let f = &rows[r][col] / &pivot_row[col];
            for c in col..ncols {
                let delta = &f * &pivot_row[c];
                rows[r][c] -= delta;
            }
        }
        rank += 1;
    }
    rank
}

/// Determinant of three vectors in `R^3`.
pub fn det3<T: Scalar>(a: &Point<T>, b: &Point<T>, c: &Point<T>) -> T {
    a.dot(&b.cross(c))
}
