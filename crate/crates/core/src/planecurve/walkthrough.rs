//! Step-by-step construction showing why two hyperbolicity regions of a
//! plane curve force two points with opposite orientation comparisons.
//!
//! `p1` bounds the cone of `e1` and has tangent `T1`; the line `G` through
//! `e1` and (a point near) `e2` leaves the cone of `e2` at `p2` with tangent
//! `T2` separating `e1` from it. Projecting onto `T1`, the orientations from
//! `e1` and `e2` agree at `p1` and disagree at `p2`. The orientation lemma
//! forbids this on an irreducible curve.

use super::orientation::sign_with_screen;
use super::{points_on_line, require_plane, tangent_line, tangent_sign, CurvePoint, Line2, TangentLine};
use crate::error::{Error, Result};
use crate::hyperbolicity::in_cone;
use crate::realroots::squarefree_part;
use crate::rng::{int_vector, int_vector_avoiding, stream_rng};
use crate::scalar::Rational;
use crate::{MultiPolyQ, PointQ};

const RETRIES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WalkthroughOutcome {
    Completed,
    /// `e2` is in the cone of `e1`.
    SameComponent,
    /// `-e2` is in the cone of `e1`: the same projective region.
    NegationPair,
    /// A certified step contradicted its expectation; see the list.
    Stopped,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expectation {
    pub step: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WalkthroughReport {
    pub outcome: WalkthroughOutcome,
    pub e1: PointQ,
    pub e2: PointQ,
    pub p1: Option<CurvePoint>,
    pub t1: Option<TangentLine>,
    /// The point of the cone of `e2` that `G` passes through.
    pub g_anchor: Option<PointQ>,
    pub g: Option<Line2>,
    pub p2: Option<CurvePoint>,
    pub t2: Option<TangentLine>,
    /// `sigma(p1, e1), sigma(p1, e2), sigma(p2, e1), sigma(p2, e2)` with screen `T1`.
    pub signs: Option<[i8; 4]>,
    pub expectations: Vec<Expectation>,
}

impl WalkthroughReport {
    fn new(e1: &PointQ, e2: &PointQ, outcome: WalkthroughOutcome) -> Self {
        WalkthroughReport {
            outcome,
            e1: e1.clone(),
            e2: e2.clone(),
            p1: None,
            t1: None,
            g_anchor: None,
            g: None,
            p2: None,
            t2: None,
            signs: None,
            expectations: Vec::new(),
        }
    }

    fn expect(&mut self, step: &str, holds: bool) -> bool {
        self.expectations.push(Expectation {
            step: step.to_string(),
            holds,
        });
        if !holds {
            self.outcome = WalkthroughOutcome::Stopped;
        }
        holds
    }

    /// First expectation that failed.
    pub fn failed_step(&self) -> Option<&str> {
        self.expectations.iter().find(|e| !e.holds).map(|e| e.step.as_str())
    }
}

fn point_at(p: &CurvePoint, t: &Rational) -> PointQ {
    p.base.axpy(t, &p.dir)
}

pub fn demonstrate_obstruction(c: &MultiPolyQ, e1: &PointQ, e2: &PointQ, seed: u64) -> Result<WalkthroughReport> {
    let d = require_plane(c)?;
    if in_cone(c, e1, e2)? {
        return Ok(WalkthroughReport::new(e1, e2, WalkthroughOutcome::SameComponent));
    }
    if in_cone(c, e1, &-e2)? {
        return Ok(WalkthroughReport::new(e1, e2, WalkthroughOutcome::NegationPair));
    }
    let mut report = WalkthroughReport::new(e1, e2, WalkthroughOutcome::Completed);
    let mut rng = stream_rng(seed, 0);

    // p1: the last intersection of a line t*e1 + v, where the line enters the cone of e1
    let mut p1 = None;
    for attempt in 0..RETRIES {
        let v = int_vector_avoiding(&mut rng, e1, 10);
        let pts = points_on_line(c, e1, &v, attempt)?;
        if let Some(last) = pts.last() {
            if last.multiplicity == 1 && last.smooth() {
                p1 = Some(last.clone());
                break;
            }
        }
    }
    let p1 = p1.ok_or_else(|| Error::ConstructionFailure("no smooth boundary point p1".into()))?;
    let bounds = in_cone(c, e1, &point_at(&p1, &p1.root.hi))? && !in_cone(c, e1, &point_at(&p1, &p1.root.lo))?;
    report.t1 = Some(tangent_line(c, &p1)?);
    report.p1 = Some(p1.clone());
    if !report.expect("p1 lies on the boundary of the cone of e1", bounds) {
        return Ok(report);
    }
    let t1 = |y: &PointQ| tangent_sign(c, &p1, y);
    let (t1e1, t1e2) = (t1(e1)?, t1(e2)?);
    if !report.expect("e1 and e2 avoid the tangent T1", t1e1 != 0 && t1e2 != 0) {
        return Ok(report);
    }

    // G through e1 and a point of the cone of e2, meeting C transversally
    let mut anchor = None;
    for attempt in 0..RETRIES {
        let cand = if attempt == 0 {
            e2.clone()
        } else {
            e2.scale(&Rational::from_integer(64.into()))
                .add(&int_vector(&mut rng, 3, 1))
        };
        if attempt > 0 && !in_cone(c, e2, &cand)? {
            continue;
        }
        let u = c.restrict_line(&cand, e1)?;
        if squarefree_part(&u)?.degree() == Some(d) && t1(&cand)? != 0 {
            anchor = Some(cand);
            break;
        }
    }
    let anchor = anchor.ok_or_else(|| Error::ConstructionFailure("no transversal line G".into()))?;
    report.g = Some(Line2::through(e1, &anchor)?);
    report.g_anchor = Some(anchor.clone());

    // On G, s -> s*anchor + e1 meets T1 at s0 = -T1(e1)/T1(anchor); the
    // boundary point of the cone of e2 on the side of e1 (s = 0) facing
    // away from s0 is p2.
    let pts = points_on_line(c, &anchor, e1, 0)?;
    let s0_negative = -t1e1 * t1(&anchor)? < 0;
    let p2 = if s0_negative { pts.last() } else { pts.first() }
        .cloned()
        .ok_or_else(|| Error::ConstructionFailure("G misses the curve".into()))?;
    let bounds = if s0_negative {
        in_cone(c, &anchor, &point_at(&p2, &p2.root.hi))? && !in_cone(c, &anchor, &point_at(&p2, &p2.root.lo))?
    } else {
        in_cone(c, &anchor, &-point_at(&p2, &p2.root.lo))? && !in_cone(c, &anchor, &-point_at(&p2, &p2.root.hi))?
    };
    report.p2 = Some(p2.clone());
    if !report.expect("p2 lies on the boundary of the cone of e2", bounds && p2.smooth()) {
        return Ok(report);
    }
    report.t2 = Some(tangent_line(c, &p2)?);
    let t2 = |y: &PointQ| tangent_sign(c, &p2, y);
    let separated = t1e1 * t2(e1)? != t1e2 * t2(e2)? && t2(e1)? != 0 && t2(e2)? != 0;
    if !report.expect("T1 and T2 separate e1 from e2", separated) {
        return Ok(report);
    }

    let sigma = |p: &CurvePoint, e: &PointQ, screen: i8| sign_with_screen(c, p, e, screen, 1);
    let signs = [
        sigma(&p1, e1, t1e1)?,
        sigma(&p1, e2, t1e2)?,
        sigma(&p2, e1, t1e1)?,
        sigma(&p2, e2, t1e2)?,
    ];
    report.signs = Some(signs);
    report.expect("same orientation at p1", signs[0] == signs[1]);
    report.expect("different orientations at p2", signs[2] != signs[3]);
    // the lemma: on an irreducible curve the products agree everywhere
    let lemma = signs[0] * signs[1] == signs[2] * signs[3];
    report.expectations.push(Expectation {
        step: "orientation products agree at p1 and p2".into(),
        holds: lemma,
    });
    Ok(report)
}
