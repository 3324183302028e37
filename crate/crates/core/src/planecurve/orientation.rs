//! Orientation of the real curve induced by the projection from a point.
//!
//! Projecting from `e` onto a screen line `L`, the point `x` goes to
//! `y = L(e)*x - L(x)*e`. Moving `x` along the tangent direction `x'` moves
//! `y` in the direction given by the sign of `det(y, y', l)`, and
//! `det(y, y', l) = L(e) * |l|^2 * det(e, x, x')`. With `x` scaled into its
//! chart and `x'` the chart rotation of the gradient, `det(e, x, x')` is
//! `-grad C(x) . e` by Euler's identity.

use rand::Rng;
use rayon::prelude::*;

use super::{require_plane, sample_real_points_offset, tangent_sign, CurvePoint, Line2, Smoothness};
use crate::error::{Error, Result};
use crate::rng::{int_vector, stream_rng};
use crate::scalar::Scalar;
use crate::{MultiPolyQ, PointQ};

/// Sign of the motion of the projection from `e` onto `l` when `p` moves
/// along its tangent direction; `tau_choice` picks the direction.
pub fn orientation_sign(c: &MultiPolyQ, p: &CurvePoint, e: &PointQ, l: &Line2, tau_choice: i8) -> Result<i8> {
    let screen = l.eval(e).sign_i8();
    if screen == 0 {
        return Err(Error::DegenerateScreen(format!("{e} lies on {l}")));
    }
    if p.sign_of(&l.along(&p.base, &p.dir))? == 0 {
        return Err(Error::DegenerateScreen(format!("the curve point lies on {l}")));
    }
    sign_with_screen(c, p, e, screen, tau_choice)
}

/// The same sign with the screen given only through `sign(L(e))`; the
/// formula stays valid when `p` lies on the screen.
pub(crate) fn sign_with_screen(c: &MultiPolyQ, p: &CurvePoint, e: &PointQ, screen: i8, tau_choice: i8) -> Result<i8> {
    if tau_choice != 1 && tau_choice != -1 {
        return Err(Error::NotApplicable(format!("tau choice {tau_choice} is not a sign")));
    }
    match p.smoothness {
        Smoothness::CertifiedSmooth => {}
        Smoothness::CertifiedSingular => return Err(Error::SingularPoint),
        Smoothness::Inconclusive => return Err(Error::UnresolvableSign),
    }
    let t = tangent_sign(c, p, e)?;
    if t == 0 {
        return Err(Error::RamifiedConfiguration);
    }
    Ok(-screen * t * tau_choice)
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrientationSample {
    pub point: CurvePoint,
    pub sign1: i8,
    pub sign2: i8,
    pub product: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConsistencyVerdict {
    Constant {
        product: i8,
    },
    /// `(theta_index, branch)` of one point with each product.
    NonConstant {
        positive: (usize, usize),
        negative: (usize, usize),
    },
}

/// Points left out of the comparison, by reason.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Exclusions {
    pub singular: usize,
    pub inconclusive: usize,
    pub ramified: usize,
    pub on_screen: usize,
}

impl Exclusions {
    pub fn total(&self) -> usize {
        self.singular + self.inconclusive + self.ramified + self.on_screen
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConsistencyReport {
    pub screen: Line2,
    pub n_angles: usize,
    pub points_examined: usize,
    pub samples: Vec<OrientationSample>,
    pub excluded: Exclusions,
    pub verdict: ConsistencyVerdict,
}

impl ConsistencyReport {
    /// Share of examined points that entered the comparison.
    pub fn certified_fraction(&self) -> f64 {
        if self.points_examined == 0 {
            0.0
        } else {
            self.samples.len() as f64 / self.points_examined as f64
        }
    }
}

enum Outcome {
    Sample(OrientationSample),
    Excluded(Error),
}

/// Compares the orientations induced by projecting from `e1` and from `e2`
/// at about `n_points` curve points swept from `e1`.
pub fn orientation_consistency(
    c: &MultiPolyQ,
    e1: &PointQ,
    e2: &PointQ,
    n_points: usize,
    seed: u64,
) -> Result<ConsistencyReport> {
    let d = require_plane(c)?;
    for e in [e1, e2] {
        if e.dim() != 3 {
            return Err(Error::DimensionMismatch {
                expected: 3,
                found: e.dim(),
            });
        }
        if c.evaluate(e)?.sign_i8() == 0 {
            return Err(Error::NotApplicable(format!("the curve passes through {e}")));
        }
    }
    let mut rng = stream_rng(seed, 0);
    let screen = loop {
        let n = int_vector(&mut rng, 3, 10);
        if let Ok(l) = Line2::from_normal(&n) {
            if !l.contains(e1) && !l.contains(e2) {
                break l;
            }
        }
    };
    let offset: f64 = rng.random_range(0.0..1.0);
    let n_angles = n_points.div_ceil(d.max(1)) + 1;
    let points = sample_real_points_offset(c, e1, n_angles, offset)?;

    let outcomes: Vec<Result<Outcome>> = points
        .par_iter()
        .map(|p| {
            let signs =
                orientation_sign(c, p, e1, &screen, 1).and_then(|s1| Ok((s1, orientation_sign(c, p, e2, &screen, 1)?)));
            match signs {
                Ok((sign1, sign2)) => Ok(Outcome::Sample(OrientationSample {
                    point: p.clone(),
                    sign1,
                    sign2,
                    product: sign1 * sign2,
                })),
                Err(
                    err @ (Error::SingularPoint
                    | Error::UnresolvableSign
                    | Error::RamifiedConfiguration
                    | Error::DegenerateScreen(_)),
                ) => Ok(Outcome::Excluded(err)),
                Err(err) => Err(err),
            }
        })
        .collect();

    let mut samples = Vec::new();
    let mut excluded = Exclusions::default();
    for o in outcomes {
        match o? {
            Outcome::Sample(s) => samples.push(s),
            Outcome::Excluded(Error::SingularPoint) => excluded.singular += 1,
            Outcome::Excluded(Error::UnresolvableSign) => excluded.inconclusive += 1,
            Outcome::Excluded(Error::RamifiedConfiguration) => excluded.ramified += 1,
            Outcome::Excluded(_) => excluded.on_screen += 1,
        }
    }
    if samples.is_empty() {
        return Err(Error::InsufficientSmoothSamples { sampled: points.len() });
    }
    let find = |sign: i8| {
        samples
            .iter()
            .find(|s| s.product == sign)
            .map(|s| (s.point.theta_index, s.point.branch))
    };
    let verdict = match (find(1), find(-1)) {
        (Some(positive), Some(negative)) => ConsistencyVerdict::NonConstant { positive, negative },
        (Some(_), None) => ConsistencyVerdict::Constant { product: 1 },
        _ => ConsistencyVerdict::Constant { product: -1 },
    };
    Ok(ConsistencyReport {
        screen,
        n_angles,
        points_examined: points.len(),
        samples,
        excluded,
        verdict,
    })
}
