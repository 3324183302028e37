//! Real-root counting and isolation with Sturm chains.
//!
//! Counting works on the square-free part, so every count is a count of
//! *distinct* roots. A finite interval endpoint that happens to be a root is
//! deflated out exactly (divide by `t - a`) and added back when the endpoint
//! is closed, so callers never need to pick non-root endpoints.

use crate::error::{Error, Result};
use crate::interval::Enclosure;
use crate::scalar::Scalar;
use crate::unipoly::UniPoly;

/// Default isolation width, `2^-32`.
pub fn default_width<T: Scalar>() -> T {
    T::one() / T::from_f64(4294967296.0).expect("2^32 is representable")
}

#[derive(Clone, Debug, PartialEq)]
pub enum Bound<T> {
    NegInf,
    Finite(T),
    PosInf,
}

/// A real interval, each finite end open or closed.
#[derive(Clone, Debug, PartialEq)]
pub struct Interval<T> {
    pub lo: Bound<T>,
    pub hi: Bound<T>,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl<T: Scalar> Interval<T> {
    pub fn real_line() -> Self {
        Interval {
            lo: Bound::NegInf,
            hi: Bound::PosInf,
            lo_closed: false,
            hi_closed: false,
        }
    }

    pub fn open(lo: T, hi: T) -> Self {
        assert!(lo < hi, "interval endpoints must satisfy lo < hi");
        Interval {
            lo: Bound::Finite(lo),
            hi: Bound::Finite(hi),
            lo_closed: false,
            hi_closed: false,
        }
    }

    pub fn closed(lo: T, hi: T) -> Self {
        Interval {
            lo_closed: true,
            hi_closed: true,
            ..Self::open(lo, hi)
        }
    }

    /// `(a, +inf)`
    pub fn above(a: T) -> Self {
        Interval {
            lo: Bound::Finite(a),
            hi: Bound::PosInf,
            lo_closed: false,
            hi_closed: false,
        }
    }

    /// `(-inf, a)`
    pub fn below(a: T) -> Self {
        Interval {
            lo: Bound::NegInf,
            hi: Bound::Finite(a),
            lo_closed: false,
            hi_closed: false,
        }
    }

    pub fn with_closed(mut self, lo_closed: bool, hi_closed: bool) -> Self {
        self.lo_closed = lo_closed;
        self.hi_closed = hi_closed;
        self
    }
}

/// Signed remainder sequence `u, u', -rem(u, u'), ...`, each entry scaled by
/// a positive constant into primitive form.
#[derive(Clone, Debug)]
pub struct SturmChain<T> {
    polys: Vec<UniPoly<T>>,
}

impl<T: Scalar> SturmChain<T> {
    pub fn new(u: &UniPoly<T>) -> Self {
        let mut polys = Vec::new();
        if u.is_zero() {
            return SturmChain { polys };
        }
        polys.push(u.primitive());
        let d = u.derivative();
        if d.is_zero() {
            return SturmChain { polys };
        }
        polys.push(d.primitive());
        loop {
            let n = polys.len();
            let r = polys[n - 2].rem(&polys[n - 1]);
            if r.is_zero() {
                break;
            }
            polys.push(r.neg().primitive());
        }
        SturmChain { polys }
    }

    pub fn polys(&self) -> &[UniPoly<T>] {
        &self.polys
    }

    fn variations(signs: impl Iterator<Item = i8>) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, t: &T) -> usize {
        Self::variations(self.polys.iter().map(|p| p.sign_at(t)))
    }

    pub fn variations_at_bound(&self, b: &Bound<T>) -> usize {
        match b {
            Bound::NegInf => Self::variations(self.polys.iter().map(UniPoly::sign_at_neg_inf)),
            Bound::PosInf => Self::variations(self.polys.iter().map(UniPoly::sign_at_pos_inf)),
            Bound::Finite(t) => self.variations_at(t),
        }
    }

    /// Distinct roots in `(lo, hi)` for endpoints that are not roots.
    pub fn count_between(&self, lo: &Bound<T>, hi: &Bound<T>) -> usize {
        self.variations_at_bound(lo)
            .saturating_sub(self.variations_at_bound(hi))
    }
}

/// `1 + max |a_i| / |a_d|`; every root lies strictly inside `(-B, B)`.
pub fn cauchy_bound<T: Scalar>(u: &UniPoly<T>) -> T {
    let lead = u.leading().expect("nonzero polynomial").abs();
    let n = u.coeffs().len();
    let max = u.coeffs()[..n - 1].iter().fold(T::zero(), |m, c| {
        let r = c.abs() / lead.clone();
        if r > m {
            r
        } else {
            m
        }
    });
    T::one() + max
}

pub fn squarefree_part<T: Scalar>(u: &UniPoly<T>) -> Result<UniPoly<T>> {
    if u.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = u.gcd(&u.derivative());
    Ok(u.div_rem(&g).0.normalized())
}

/// Yun's algorithm: `u = c * prod_k f_k^k` with the `f_k` square-free and
/// pairwise coprime. Returns the nonconstant `(f_k, k)`.
pub fn squarefree_decomposition<T: Scalar>(u: &UniPoly<T>) -> Result<Vec<(UniPoly<T>, usize)>> {
    if u.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    let du = u.derivative();
    let a0 = u.gcd(&du);
    let mut b = u.div_rem(&a0).0;
    let mut c = du.div_rem(&a0).0;
    let mut d = c.sub(&b.derivative());
    let mut k = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.normalized(), k));
        }
        b = b.div_rem(&a).0;
        c = d.div_rem(&a).0;
        d = c.sub(&b.derivative());
        k += 1;
    }
    Ok(out)
}

/// Divides out `(t - a)` when `a` is a root; reports whether it was.
fn deflate<T: Scalar>(s: &UniPoly<T>, a: &T) -> (UniPoly<T>, bool) {
    if s.eval(a).is_zero() {
        let lin = UniPoly::linear(T::one(), -a.clone());
        (s.div_rem(&lin).0, true)
    } else {
        (s.clone(), false)
    }
}

/// Number of distinct real roots of `u` in `interval`.
pub fn count_real_roots<T: Scalar>(u: &UniPoly<T>, interval: &Interval<T>) -> Result<usize> {
    let mut s = squarefree_part(u)?;
    let mut extra = 0;
    if let Bound::Finite(a) = &interval.lo {
        let (r, hit) = deflate(&s, a);
        s = r;
        if hit && interval.lo_closed {
            extra += 1;
        }
    }
    if let Bound::Finite(b) = &interval.hi {
        let (r, hit) = deflate(&s, b);
        s = r;
        if hit && interval.hi_closed {
            extra += 1;
        }
    }
    let chain = SturmChain::new(&s);
    Ok(chain.count_between(&interval.lo, &interval.hi) + extra)
}

/// Whether every root of `u` is real.
pub fn is_real_rooted<T: Scalar>(u: &UniPoly<T>) -> Result<bool> {
    let s = squarefree_part(u)?;
    let d = s.degree().unwrap_or(0);
    let chain = SturmChain::new(&s);
    Ok(chain.count_between(&Bound::NegInf, &Bound::PosInf) == d)
}

/// For a real-rooted `u`: whether every root is strictly positive.
pub fn all_roots_positive<T: Scalar>(u: &UniPoly<T>) -> Result<bool> {
    if !is_real_rooted(u)? {
        return Err(Error::NotRealRooted);
    }
    if u.eval(&T::zero()).is_zero() {
        return Ok(false);
    }
    Ok(count_real_roots(u, &Interval::below(T::zero()))? == 0)
}

/// A real root isolated in the open interval `(lo, hi)`.
#[derive(Clone, Debug, PartialEq)]
pub struct IsolatedRoot<T> {
    pub lo: T,
    pub hi: T,
    /// Signs of the square-free part at `lo` and `hi`.
    pub sign_left: i8,
    pub sign_right: i8,
    pub multiplicity: usize,
    /// Set when the root was hit exactly during bisection.
    pub exact: Option<T>,
}

impl<T: Scalar> IsolatedRoot<T> {
    pub fn interval(&self) -> Interval<T> {
        Interval::open(self.lo.clone(), self.hi.clone())
    }

    pub fn enclosure(&self) -> Enclosure<T> {
        match &self.exact {
            Some(x) => Enclosure::point(x.clone()),
            None => Enclosure::new(self.lo.clone(), self.hi.clone()),
        }
    }

    pub fn width(&self) -> T {
        self.hi.clone() - self.lo.clone()
    }

    pub fn midpoint(&self) -> T {
        match &self.exact {
            Some(x) => x.clone(),
            None => (self.lo.clone() + self.hi.clone()) / T::from_int(2),
        }
    }

    /// Halves the isolating interval using the square-free part `s`.
    /// Returns `false` once the root is known exactly.
    pub fn bisect(&mut self, s: &UniPoly<T>) -> bool {
        if self.exact.is_some() {
            return false;
        }
        let m = (self.lo.clone() + self.hi.clone()) / T::from_int(2);
        let sm = s.sign_at(&m);
        if sm == 0 {
            let (lo, hi) = exact_bracket(s, &m, &self.lo, &self.hi);
            let quarter = self.width() / T::from_int(4);
            let (lo, hi) = shrink_around(s, &m, lo, hi, &quarter);
            self.sign_left = s.sign_at(&lo);
            self.sign_right = s.sign_at(&hi);
            self.lo = lo;
            self.hi = hi;
            self.exact = Some(m);
            return false;
        }
        if sm == self.sign_left {
            self.lo = m;
            self.sign_left = sm;
        } else {
            self.hi = m;
            self.sign_right = sm;
        }
        true
    }

    /// Bisects until the width is at most `width` (or the root is exact).
    pub fn refine_to(&mut self, s: &UniPoly<T>, width: &T) {
        while &self.width() > width && self.bisect(s) {}
        if let Some(x) = self.exact.clone() {
            if &self.width() > width {
                let half = width.clone() / T::from_int(2);
                let (lo, hi) = shrink_around(s, &x, self.lo.clone(), self.hi.clone(), &half);
                self.sign_left = s.sign_at(&lo);
                self.sign_right = s.sign_at(&hi);
                self.lo = lo;
                self.hi = hi;
            }
        }
    }
}

/// A small interval around the exact root `m` containing no other root of
/// `s`, with non-root endpoints inside `(lo, hi)`.
fn exact_bracket<T: Scalar>(s: &UniPoly<T>, m: &T, lo: &T, hi: &T) -> (T, T) {
    let two = T::from_int(2);
    let mut delta = {
        let a = m.clone() - lo.clone();
        let b = hi.clone() - m.clone();
        (if a < b { a } else { b }) / two.clone()
    };
    let chain = SturmChain::new(s);
    loop {
        let a = m.clone() - delta.clone();
        let b = m.clone() + delta.clone();
        if !s.eval(&a).is_zero()
            && !s.eval(&b).is_zero()
            && chain.count_between(&Bound::Finite(a.clone()), &Bound::Finite(b.clone())) == 1
        {
            return (a, b);
        }
        delta = delta / two.clone();
    }
}

/// Isolates every distinct real root of `u` in an interval of width at most
/// `width`, sorted ascending, with multiplicities.
pub fn isolate_roots<T: Scalar>(u: &UniPoly<T>, width: &T) -> Result<Vec<IsolatedRoot<T>>> {
    let s = squarefree_part(u)?;
    if s.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let factors = squarefree_decomposition(u)?;
    let chain = SturmChain::new(&s);
    let two = T::from_int(2);
    let b = cauchy_bound(&s);
    let mut lo0 = -b.clone();
    let mut hi0 = b;
    while s.eval(&lo0).is_zero() {
        lo0 = lo0 * two.clone();
    }
    while s.eval(&hi0).is_zero() {
        hi0 = hi0 * two.clone();
    }

    let mut found: Vec<IsolatedRoot<T>> = Vec::new();
    let mut stack = vec![(lo0, hi0)];
    while let Some((a, b)) = stack.pop() {
        let n = chain.count_between(&Bound::Finite(a.clone()), &Bound::Finite(b.clone()));
        if n == 0 {
            continue;
        }
        if n == 1 {
            let mut root = IsolatedRoot {
                sign_left: s.sign_at(&a),
                sign_right: s.sign_at(&b),
                lo: a,
                hi: b,
                multiplicity: 1,
                exact: None,
            };
            root.refine_to(&s, width);
            found.push(root);
            continue;
        }
        let m = (a.clone() + b.clone()) / two.clone();
        if s.eval(&m).is_zero() {
            let (l, r) = exact_bracket(&s, &m, &a, &b);
            let half = width.clone() / two.clone();
            let (l2, r2) = shrink_around(&s, &m, l.clone(), r.clone(), &half);
            found.push(IsolatedRoot {
                sign_left: s.sign_at(&l2),
                sign_right: s.sign_at(&r2),
                lo: l2,
                hi: r2,
                multiplicity: 1,
                exact: Some(m),
            });
            stack.push((a, l));
            stack.push((r, b));
        } else {
            stack.push((a, m.clone()));
            stack.push((m, b));
        }
    }
    found.sort_by(|x, y| x.lo.partial_cmp(&y.lo).expect("ordered scalars"));

    for root in &mut found {
        for (f, k) in &factors {
            let probe = Interval::open(root.lo.clone(), root.hi.clone());
            if count_real_roots(f, &probe)? > 0 {
                root.multiplicity = *k;
                break;
            }
        }
    }
    Ok(found)
}

/// Pulls the endpoints of a bracket around exact root `m` to within `half`
/// of it, keeping them non-roots.
fn shrink_around<T: Scalar>(s: &UniPoly<T>, m: &T, mut l: T, mut r: T, half: &T) -> (T, T) {
    let two = T::from_int(2);
    while m.clone() - l.clone() > *half {
        let cand = (l.clone() + m.clone()) / two.clone();
        if s.eval(&cand).is_zero() {
            break;
        }
        l = cand;
    }
    while r.clone() - m.clone() > *half {
        let cand = (r.clone() + m.clone()) / two.clone();
        if s.eval(&cand).is_zero() {
            break;
        }
        r = cand;
    }
    (l, r)
}

/// Sign of `g` at the root isolated by `root` (a root of square-free `s`).
///
/// Zero is decided exactly through `gcd(s, g)`; a nonzero sign is certified
/// by interval evaluation, bisecting at most `max_depth` times.
pub fn sign_at_root<T: Scalar>(
    s: &UniPoly<T>,
    root: &mut IsolatedRoot<T>,
    g: &UniPoly<T>,
    max_depth: usize,
) -> Result<i8> {
    if g.is_zero() {
        return Ok(0);
    }
    if let Some(x) = &root.exact {
        return Ok(g.sign_at(x));
    }
    let common = s.gcd(g);
    if common.degree().unwrap_or(0) > 0
        && count_real_roots(&common, &Interval::open(root.lo.clone(), root.hi.clone()))? > 0
    {
        return Ok(0);
    }
    for _ in 0..=max_depth {
        if let Some(sign) = g.eval_enclosure(&root.enclosure()).sign() {
            return Ok(sign);
        }
        if !root.bisect(s) {
            let x = root.exact.clone().expect("bisect stops only on an exact root");
            return Ok(g.sign_at(&x));
        }
    }
    Err(Error::UnresolvableSign)
}
