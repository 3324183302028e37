//! Real points of plane curves, their tangents, and the orientations that
//! central projections induce on them.
//!
//! Curve points are never rounded: each one is an isolated root of the
//! restriction of `C` to a rational line `t -> t*base + dir`, and every sign
//! reported about it is decided exactly or certified by interval evaluation.

mod avoidance;
mod orientation;
mod walkthrough;

pub use avoidance::{tangent_avoidance_check, AvoidanceReport, MultipleRoot};
pub use orientation::{
    orientation_consistency, orientation_sign, ConsistencyReport, ConsistencyVerdict, Exclusions, OrientationSample,
};
pub use walkthrough::{demonstrate_obstruction, Expectation, WalkthroughOutcome, WalkthroughReport};

use std::fmt;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::interval::Enclosure;
use crate::point::Point;
use crate::realroots::{
    count_real_roots, default_width, is_real_rooted, isolate_roots, sign_at_root, squarefree_part, IsolatedRoot,
};
use crate::scalar::{dyadic_approx, Rational, Scalar};
use crate::{MultiPoly, MultiPolyQ, PointQ, UniPolyQ};

pub const DEFAULT_ANGLES: usize = 360;
/// Bisection budget for interval certification.
pub const MAX_REFINEMENT: usize = 64;
const DIRECTION_BITS: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Smoothness {
    CertifiedSmooth,
    CertifiedSingular,
    Inconclusive,
}

impl Smoothness {
    pub fn tag(self) -> &'static str {
        match self {
            Smoothness::CertifiedSmooth => "smooth",
            Smoothness::CertifiedSingular => "singular",
            Smoothness::Inconclusive => "inconclusive",
        }
    }
}

/// Projective line `a*x1 + b*x2 + c*x3 = 0` in canonical form: primitive
/// integer coefficients, first nonzero one positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Line2 {
    coeffs: [Rational; 3],
}

impl Line2 {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        Self::from_normal(&Point(vec![a, b, c]))
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::from_normal(&Point::from_ints(&[a, b, c]))
    }

    /// The line with coefficient vector `n`.
    pub fn from_normal(n: &PointQ) -> Result<Self> {
        if n.dim() != 3 {
            return Err(Error::DimensionMismatch {
                expected: 3,
                found: n.dim(),
            });
        }
        if n.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut p = n.primitive();
        if p.0.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
            p = -p;
        }
        let [a, b, c]: [Rational; 3] = p.0.try_into().expect("three coordinates");
        Ok(Line2 { coeffs: [a, b, c] })
    }

    /// The line through two distinct projective points.
    pub fn through(a: &PointQ, b: &PointQ) -> Result<Self> {
        Self::from_normal(&a.cross(b)).map_err(|_| Error::DependentVectors)
    }

    pub fn coeffs(&self) -> &[Rational; 3] {
        &self.coeffs
    }

    pub fn normal(&self) -> PointQ {
        Point(self.coeffs.to_vec())
    }

    pub fn eval(&self, x: &PointQ) -> Rational {
        self.normal().dot(x)
    }

    pub fn contains(&self, x: &PointQ) -> bool {
        self.eval(x).is_zero()
    }

    /// `t -> L(t*base + dir)`.
    pub fn along(&self, base: &PointQ, dir: &PointQ) -> UniPolyQ {
        UniPolyQ::linear(self.eval(base), self.eval(dir))
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [
            self.coeffs[0].approx(),
            self.coeffs[1].approx(),
            self.coeffs[2].approx(),
        ]
    }
}

impl fmt::Display for Line2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = 0", MultiPoly::linear_form(&self.coeffs))
    }
}

/// Affine coordinates used in chart `j` (the points with `x_j = 1`), in the
/// cyclic order that makes `(a, b, j)` positively oriented.
pub fn chart_axes(j: usize) -> (usize, usize) {
    ((j + 1) % 3, (j + 2) % 3)
}

/// Ovals traced by a sweep: branch `k` continues as branch `d - 1 - k` after
/// half a turn, so branches pair up into classes.
pub fn branch_class(branch: usize, degree: usize) -> usize {
    branch.min(degree.saturating_sub(1).saturating_sub(branch))
}

/// A real point `t*base + dir` of the curve, `t` an isolated root of the
/// restriction.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvePoint {
    pub theta_index: usize,
    /// Number of intersections (with multiplicity) below this one on its line.
    pub branch: usize,
    pub multiplicity: usize,
    pub base: PointQ,
    pub dir: PointQ,
    pub root: IsolatedRoot<Rational>,
    /// Square-free part of the restriction; `root` isolates one of its roots.
    pub carrier: UniPolyQ,
    /// Coordinate that is nonzero at the point.
    pub chart: usize,
    pub smoothness: Smoothness,
}

impl CurvePoint {
    pub fn smooth(&self) -> bool {
        self.smoothness == Smoothness::CertifiedSmooth
    }

    pub fn exact_point(&self) -> Option<PointQ> {
        self.root.exact.as_ref().map(|t| self.base.axpy(t, &self.dir))
    }

    /// Coordinate enclosures of the representative `t*base + dir`.
    pub fn point_enclosure(&self) -> Vec<Enclosure<Rational>> {
        let t = self.root.enclosure();
        (0..self.base.dim())
            .map(|i| {
                Enclosure::point(self.base[i].clone())
                    .mul(&t)
                    .add(&Enclosure::point(self.dir[i].clone()))
            })
            .collect()
    }

    /// Affine coordinates in the point's chart, when the box is narrow
    /// enough to divide.
    pub fn locus(&self) -> Option<[Enclosure<Rational>; 2]> {
        let x = self.point_enclosure();
        let (a, b) = chart_axes(self.chart);
        Some([x[a].div(&x[self.chart])?, x[b].div(&x[self.chart])?])
    }

    pub fn approx(&self) -> [f64; 3] {
        let t = self.root.midpoint();
        let p = self.base.axpy(&t, &self.dir);
        [p[0].approx(), p[1].approx(), p[2].approx()]
    }

    /// Point in the affine chart `x_j = 1`, if it is finite there.
    pub fn affine_approx(&self, j: usize) -> Option<(f64, f64)> {
        let p = self.approx();
        let (a, b) = chart_axes(j);
        (p[j].abs() > 1e-12).then(|| (p[a] / p[j], p[b] / p[j]))
    }

    /// `t -> g(t*base + dir)`.
    pub fn along(&self, g: &MultiPolyQ) -> UniPolyQ {
        g.restrict_line_unchecked(&self.base, &self.dir)
    }

    /// Sign at the point of a polynomial in the line parameter.
    pub fn sign_of(&self, g: &UniPolyQ) -> Result<i8> {
        let mut root = self.root.clone();
        sign_at_root(&self.carrier, &mut root, g, MAX_REFINEMENT)
    }

    pub fn refine_to(&mut self, width: &Rational) {
        self.root.refine_to(&self.carrier, width);
    }
}

fn require_plane(c: &MultiPolyQ) -> Result<usize> {
    if c.nvars() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: c.nvars(),
        });
    }
    c.homogeneous_degree()
}

/// Exact singular test through the gcd of the carrier with the partials
/// along the line, then interval confirmation that the gradient is nonzero.
fn classify(carrier: &UniPolyQ, root: &mut IsolatedRoot<Rational>, partials: &[UniPolyQ]) -> Result<Smoothness> {
    if let Some(t) = &root.exact {
        return Ok(if partials.iter().all(|g| g.eval(t).is_zero()) {
            Smoothness::CertifiedSingular
        } else {
            Smoothness::CertifiedSmooth
        });
    }
    let common = partials.iter().fold(carrier.clone(), |acc, g| acc.gcd(g));
    if common.degree().unwrap_or(0) > 0 && count_real_roots(&common, &root.interval())? > 0 {
        return Ok(Smoothness::CertifiedSingular);
    }
    for _ in 0..=MAX_REFINEMENT {
        let enc = root.enclosure();
        if partials
            .iter()
            .any(|g| matches!(g.eval_enclosure(&enc).sign(), Some(s) if s != 0))
        {
            return Ok(Smoothness::CertifiedSmooth);
        }
        if !root.bisect(carrier) {
            return Ok(Smoothness::CertifiedSmooth);
        }
    }
    Ok(Smoothness::Inconclusive)
}

/// All real intersections of `C` with the line `t -> t*base + dir`.
pub fn points_on_line(c: &MultiPolyQ, base: &PointQ, dir: &PointQ, theta_index: usize) -> Result<Vec<CurvePoint>> {
    require_plane(c)?;
    if c.evaluate(base)?.is_zero() {
        return Err(Error::NotApplicable(format!("the curve passes through {base}")));
    }
    let u = c.restrict_line(base, dir)?;
    if !is_real_rooted(&u)? {
        return Err(Error::InvalidDirection {
            base: base.clone(),
            witness: dir.clone(),
        });
    }
    let carrier = squarefree_part(&u)?;
    let partials: Vec<UniPolyQ> = c
        .gradient()
        .iter()
        .map(|g| g.restrict_line_unchecked(base, dir))
        .collect();
    let preferred = base.abs_max_index();
    let mut out = Vec::new();
    let mut branch = 0;
    for mut root in isolate_roots(&u, &default_width())? {
        let mut chart = preferred;
        for j in [preferred, (preferred + 1) % 3, (preferred + 2) % 3] {
            let xj = UniPolyQ::linear(base[j].clone(), dir[j].clone());
            if sign_at_root(&carrier, &mut root, &xj, MAX_REFINEMENT)? != 0 {
                chart = j;
                break;
            }
        }
        let smoothness = classify(&carrier, &mut root, &partials)?;
        let multiplicity = root.multiplicity;
        out.push(CurvePoint {
            theta_index,
            branch,
            multiplicity,
            base: base.clone(),
            dir: dir.clone(),
            root,
            carrier: carrier.clone(),
            chart,
            smoothness,
        });
        branch += multiplicity;
    }
    Ok(out)
}

/// Direction of the sweep line at angle `theta`, in the plane `x_j = 0`
/// for the chart `j` of the sweep center.
pub fn sweep_direction(e0: &PointQ, theta: f64) -> PointQ {
    let j = e0.abs_max_index();
    let (a, b) = chart_axes(j);
    let mut v = Point::zeros(3);
    v.0[a] = dyadic_approx(theta.cos(), DIRECTION_BITS);
    v.0[b] = dyadic_approx(theta.sin(), DIRECTION_BITS);
    v
}

/// Sweeps the pencil of lines through `e0`; angle `i` is
/// `pi * (i + offset) / n_angles`.
pub fn sample_real_points(c: &MultiPolyQ, e0: &PointQ, n_angles: usize) -> Result<Vec<CurvePoint>> {
    sample_real_points_offset(c, e0, n_angles, 0.5)
}

pub fn sample_real_points_offset(c: &MultiPolyQ, e0: &PointQ, n_angles: usize, offset: f64) -> Result<Vec<CurvePoint>> {
    require_plane(c)?;
    if e0.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: e0.dim(),
        });
    }
    let per_angle: Vec<Result<Vec<CurvePoint>>> = (0..n_angles)
        .into_par_iter()
        .map(|i| {
            let theta = std::f64::consts::PI * (i as f64 + offset) / n_angles as f64;
            points_on_line(c, e0, &sweep_direction(e0, theta), i)
        })
        .collect();
    let mut out = Vec::new();
    for pts in per_angle {
        out.extend(pts?);
    }
    Ok(out)
}

/// Sign of `grad C(p) . y` with `p` scaled to `p_chart = 1`: the tangent
/// line at `p` as a linear functional, with a fixed normalization.
pub fn tangent_sign(c: &MultiPolyQ, p: &CurvePoint, y: &PointQ) -> Result<i8> {
    let d = c.homogeneous_degree()?;
    let directional = c
        .gradient()
        .iter()
        .zip(&y.0)
        .fold(MultiPoly::zero(3), |acc, (g, yi)| acc.add(&g.scale(yi)));
    let s = p.sign_of(&p.along(&directional))?;
    let xj = UniPolyQ::linear(p.base[p.chart].clone(), p.dir[p.chart].clone());
    let sj = p.sign_of(&xj)?;
    Ok(if d % 2 == 0 { s * sj } else { s })
}

#[derive(Clone, Debug, PartialEq)]
pub struct TangentLine {
    pub line: Line2,
    /// The line is the exact tangent (the point is known exactly).
    pub exact: bool,
    /// Enclosure of `grad C` at the representative `t*base + dir`.
    pub gradient: Vec<Enclosure<Rational>>,
}

/// Tangent at a smooth point. For points known only by an isolating
/// interval the line is the gradient at a rational point of the refined
/// interval, and its coefficient signs agree with the certified gradient
/// enclosure.
pub fn tangent_line(c: &MultiPolyQ, p: &CurvePoint) -> Result<TangentLine> {
    require_plane(c)?;
    if !p.smooth() {
        return Err(Error::SingularPoint);
    }
    let grad = c.gradient();
    if let Some(x) = p.exact_point() {
        let g: Vec<Rational> = grad.iter().map(|g| g.evaluate(&x)).collect::<Result<_>>()?;
        let line = Line2::from_normal(&Point(g.clone())).map_err(|_| Error::SingularPoint)?;
        return Ok(TangentLine {
            line,
            exact: true,
            gradient: g.into_iter().map(Enclosure::point).collect(),
        });
    }
    let partials: Vec<UniPolyQ> = grad.iter().map(|g| p.along(g)).collect();
    let mut root = p.root.clone();
    let mut width = root.width() / Rational::from_int(2);
    for _ in 0..=MAX_REFINEMENT {
        root.refine_to(&p.carrier, &width);
        if let Some(t) = root.exact.clone() {
            let x = p.base.axpy(&t, &p.dir);
            let g: Vec<Rational> = grad.iter().map(|g| g.evaluate(&x)).collect::<Result<_>>()?;
            return Ok(TangentLine {
                line: Line2::from_normal(&Point(g.clone())).map_err(|_| Error::SingularPoint)?,
                exact: true,
                gradient: g.into_iter().map(Enclosure::point).collect(),
            });
        }
        let enc = root.enclosure();
        let boxes: Vec<Enclosure<Rational>> = partials.iter().map(|g| g.eval_enclosure(&enc)).collect();
        let mid = p.base.axpy(&root.midpoint(), &p.dir);
        let g: Vec<Rational> = grad.iter().map(|g| g.evaluate(&mid)).collect::<Result<_>>()?;
        if let Ok(line) = Line2::from_normal(&Point(g.clone())) {
            if signs_agree(&boxes, &g) {
                return Ok(TangentLine {
                    line,
                    exact: false,
                    gradient: boxes,
                });
            }
        }
        width /= Rational::from_int(2);
    }
    Err(Error::SingularPoint)
}

/// Every certified-nonzero gradient component has the sign of the sampled
/// gradient, and at least one is certified.
fn signs_agree(boxes: &[Enclosure<Rational>], g: &[Rational]) -> bool {
    let mut certified = false;
    for (b, v) in boxes.iter().zip(g) {
        match b.sign() {
            Some(s) if s != 0 => {
                certified = true;
                if s != v.sign_i8() {
                    return false;
                }
            }
            _ => {}
        }
    }
    certified
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_poly;
    use crate::scalar::qi;

    fn pt(c: &[i64]) -> PointQ {
        Point::from_ints(c)
    }

    fn circle() -> MultiPolyQ {
        parse_poly("x1^2 + x2^2 - x3^2", 3).unwrap()
    }

    fn quartic() -> MultiPolyQ {
        parse_poly("(x1^2+x2^2-2*x3^2)*(2*x1^2-x2^2-x3^2)", 3).unwrap()
    }

    #[test]
    fn line_canonical_form() {
        let l = Line2::new(qi(-2), qi(0), qi(4)).unwrap();
        assert_eq!(l, Line2::from_ints(1, 0, -2).unwrap());
        assert_eq!(l.to_string(), "x1 - 2*x3 = 0");
        assert!(Line2::from_ints(0, 0, 0).is_err());
        let through = Line2::through(&pt(&[1, 0, 1]), &pt(&[0, 1, 1])).unwrap();
        assert!(through.contains(&pt(&[1, 0, 1])) && through.contains(&pt(&[0, 1, 1])));
    }

    #[test]
    fn circle_has_two_branches_per_angle() {
        let pts = sample_real_points(&circle(), &pt(&[0, 0, 1]), 36).unwrap();
        assert_eq!(pts.len(), 72);
        for i in 0..36 {
            let branches: Vec<usize> = pts.iter().filter(|p| p.theta_index == i).map(|p| p.branch).collect();
            assert_eq!(branches, vec![0, 1]);
        }
        assert!(pts.iter().all(CurvePoint::smooth));
        for p in &pts {
            let [a, b] = p.locus().unwrap();
            // x^2 + y^2 = 1 in the chart x3 = 1
            let r = a.mul(&a).add(&b.mul(&b));
            assert!(r.contains(&qi(1)));
        }
    }

    #[test]
    fn quartic_has_four_branches() {
        let pts = sample_real_points(&quartic(), &pt(&[1, 0, 1]), 30).unwrap();
        for i in 0..30 {
            let n: usize = pts.iter().filter(|p| p.theta_index == i).map(|p| p.multiplicity).sum();
            assert_eq!(n, 4);
        }
    }

    #[test]
    fn empty_real_locus_is_invalid_direction() {
        let c = parse_poly("x1^2 + x2^2 + x3^2", 3).unwrap();
        assert!(matches!(
            sample_real_points(&c, &pt(&[1, 2, 3]), 8),
            Err(Error::InvalidDirection { .. })
        ));
    }

    #[test]
    fn tangent_examples() {
        // circle at (1,0,1): roots of 1 - t^2 are hit exactly
        let pts = points_on_line(&circle(), &pt(&[0, 0, 1]), &pt(&[1, 0, 0]), 0).unwrap();
        let p = pts.iter().find(|p| p.exact_point() == Some(pt(&[1, 0, 1]))).unwrap();
        let t = tangent_line(&circle(), p).unwrap();
        assert!(t.exact);
        assert_eq!(t.line, Line2::from_ints(1, 0, -1).unwrap());

        let lorentz = parse_poly("x1^2 - x2^2 - x3^2", 3).unwrap();
        let pts = points_on_line(&lorentz, &pt(&[1, 0, 0]), &pt(&[5, 4, 3]), 0).unwrap();
        let p = pts.iter().find(|p| p.exact_point() == Some(pt(&[5, 4, 3]))).unwrap();
        assert_eq!(
            tangent_line(&lorentz, p).unwrap().line,
            Line2::from_ints(5, -4, -3).unwrap()
        );
    }

    #[test]
    fn inexact_tangent_is_certified() {
        // roots of 2 - t^2 on the circle line through (0,0,1) towards (1,1,0)/...
        let pts = points_on_line(&circle(), &pt(&[0, 0, 1]), &pt(&[1, 1, 0]), 0).unwrap();
        for p in &pts {
            assert!(p.exact_point().is_none());
            let t = tangent_line(&circle(), p).unwrap();
            assert!(!t.exact);
            // tangent at (1, 1, ±sqrt 2) is x1 + x2 ∓ sqrt(2) x3 = 0
            let [a, b, c] = t.line.coeffs().clone();
            assert_eq!(a, b);
            let ratio = c.approx() / a.approx();
            assert!((ratio.abs() - 2f64.sqrt()).abs() < 1e-6);
            assert_eq!(ratio < 0.0, p.root.midpoint().is_positive());
        }
    }

    #[test]
    fn singular_point_of_quartic() {
        let q = quartic();
        // the line through (1,0,1) and (1,1,1) meets the curve only in the
        // double points (1,1,1) and (-1,1,-1)
        let pts = points_on_line(&q, &pt(&[1, 0, 1]), &pt(&[1, 1, 1]), 0).unwrap();
        assert_eq!(pts.len(), 2);
        for p in &pts {
            assert_eq!(p.smoothness, Smoothness::CertifiedSingular);
            assert_eq!(p.multiplicity, 2);
            assert_eq!(tangent_line(&q, p), Err(Error::SingularPoint));
        }
    }

    #[test]
    fn branch_classes() {
        assert_eq!((0..4).map(|k| branch_class(k, 4)).collect::<Vec<_>>(), vec![0, 1, 1, 0]);
        assert_eq!((0..3).map(|k| branch_class(k, 3)).collect::<Vec<_>>(), vec![0, 1, 0]);
    }

    #[test]
    fn tangent_functional_is_chart_consistent() {
        let pts = sample_real_points(&circle(), &pt(&[0, 0, 1]), 12).unwrap();
        for p in &pts {
            // the center is inside, so the tangent never passes through it
            assert_ne!(tangent_sign(&circle(), p, &pt(&[0, 0, 1])).unwrap(), 0);
            // the point itself lies on its tangent
            if let Some(x) = p.exact_point() {
                assert_eq!(tangent_sign(&circle(), p, &x).unwrap(), 0);
            }
        }
    }
}
