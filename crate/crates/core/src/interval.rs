//! Closed-interval enclosures for certified sign evaluation.
//!
//! With exact scalars the endpoints are exact, so an enclosure that excludes
//! zero is a proof of the sign of every value it encloses.

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Enclosure<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Scalar> Enclosure<T> {
    pub fn new(lo: T, hi: T) -> Self {
        debug_assert!(lo <= hi);
        Enclosure { lo, hi }
    }

    pub fn point(x: T) -> Self {
        Enclosure { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> T {
        self.hi.clone() - self.lo.clone()
    }

    pub fn mid(&self) -> T {
        (self.lo.clone() + self.hi.clone()) / T::from_int(2)
    }

    pub fn contains(&self, x: &T) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&T::zero())
    }

    /// Certified sign: `Some(±1)` when zero is excluded, `Some(0)` for the
    /// degenerate enclosure `[0, 0]`, otherwise `None`.
    pub fn sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Enclosure {
            lo: self.lo.clone() + o.lo.clone(),
            hi: self.hi.clone() + o.hi.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Enclosure {
            lo: self.lo.clone() - o.hi.clone(),
            hi: self.hi.clone() - o.lo.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        Enclosure {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        let a = self.lo.clone() * s.clone();
        let b = self.hi.clone() * s.clone();
        if a <= b {
            Enclosure { lo: a, hi: b }
        } else {
            Enclosure { lo: b, hi: a }
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let products = [
            self.lo.clone() * o.lo.clone(),
            self.lo.clone() * o.hi.clone(),
            self.hi.clone() * o.lo.clone(),
            self.hi.clone() * o.hi.clone(),
        ];
        let mut lo = products[0].clone();
        let mut hi = products[0].clone();
        for p in &products[1..] {
            if p < &lo {
                lo = p.clone();
            }
            if p > &hi {
                hi = p.clone();
            }
        }
        Enclosure { lo, hi }
    }

    /// Integer power; even powers of a zero-straddling enclosure start at 0.
    pub fn powi(&self, k: u32) -> Self {
        if k == 0 {
            return Enclosure::point(T::one());
        }
        let mut a = T::one();
        let mut b = T::one();
        for _ in 0..k {
            a = a * self.lo.clone();
            b = b * self.hi.clone();
        }
        if k % 2 == 1 || self.lo.is_positive() || self.lo.is_zero() {
            Enclosure { lo: a, hi: b }
        } else if self.hi.is_negative() || self.hi.is_zero() {
            Enclosure { lo: b, hi: a }
        } else {
            let hi = if a > b { a } else { b };
            Enclosure { lo: T::zero(), hi }
        }
    }

    /// Division; `None` when the divisor straddles zero.
    pub fn div(&self, o: &Self) -> Option<Self> {
        if o.contains_zero() {
            return None;
        }
        let inv = Enclosure {
            lo: T::one() / o.hi.clone(),
            hi: T::one() / o.lo.clone(),
        };
        Some(self.mul(&inv))
    }

    pub fn bisect(&self) -> (Self, Self) {
        let m = self.mid();
        (
            Enclosure::new(self.lo.clone(), m.clone()),
            Enclosure::new(m, self.hi.clone()),
        )
    }
}
