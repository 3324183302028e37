//! Hyperbolicity along lines, cone membership and the components of the
//! hyperbolicity locus.
//!
//! `h` is hyperbolic with respect to `e` when `h(e) != 0` and `t -> h(t*e + v)`
//! is real-rooted for every `v`. A sampled line with non-real roots is a
//! certificate that `e` is *not* a hyperbolic direction. The universal
//! statement is only certified on the exact paths: binary forms, ternary
//! forms without repeated factors, quadrics and forms of degree at most one.

mod components;
mod quadratic;
mod ternary;

pub use components::{count_components, count_components_with, Component, ComponentParams, ComponentReport};
pub use quadratic::{check_hyperbolic_quadratic, quadratic_inertia, Inertia};
pub use ternary::check_hyperbolic_exact_ternary;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::point::Point;
use crate::realroots::{all_roots_positive, is_real_rooted};
use crate::rng::{int_vector_avoiding, stream_rng};
use crate::{MultiPolyQ, PointQ};

pub const DEFAULT_TRIALS: usize = 64;
pub const DEFAULT_SPHERE_SAMPLES: usize = 256;
/// Coordinates of random line directions are drawn from `[-10, 10]`.
pub const DIRECTION_BOUND: i64 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExactMethod {
    /// Binary form: one line through `e` decides every line.
    Bivariate,
    /// Quadratic form: Lorentz inertia via congruence diagonalization.
    Quadratic,
    /// Degree at most one: every restriction is trivially real-rooted.
    Linear,
    /// Ternary form: one line per gap of the pencil discriminant.
    Ternary,
}

impl ExactMethod {
    pub fn tag(self) -> &'static str {
        match self {
            ExactMethod::Bivariate => "bivariate",
            ExactMethod::Quadratic => "quadratic",
            ExactMethod::Linear => "linear",
            ExactMethod::Ternary => "ternary",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum VerdictKind {
    /// `restrict_line(h, e, witness)` has non-real roots.
    CertifiedNot {
        witness: PointQ,
    },
    /// No witness among `trials` random lines.
    ProbablyHyperbolic {
        trials: usize,
    },
    CertifiedHyperbolic {
        method: ExactMethod,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct HypVerdict {
    pub kind: VerdictKind,
    pub notes: String,
}

impl HypVerdict {
    /// Hyperbolic, certified or probable.
    pub fn accepts(&self) -> bool {
        !matches!(self.kind, VerdictKind::CertifiedNot { .. })
    }

    pub fn is_certified(&self) -> bool {
        !matches!(self.kind, VerdictKind::ProbablyHyperbolic { .. })
    }

    pub fn witness(&self) -> Option<&PointQ> {
        match &self.kind {
            VerdictKind::CertifiedNot { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn kind_tag(&self) -> &'static str {
        match self.kind {
            VerdictKind::CertifiedNot { .. } => "CertifiedNot",
            VerdictKind::ProbablyHyperbolic { .. } => "ProbablyHyperbolic",
            VerdictKind::CertifiedHyperbolic { .. } => "CertifiedHyperbolic",
        }
    }
}

/// Checks the shared preconditions and returns the degree of `h`.
fn prepare(h: &MultiPolyQ, e: &PointQ) -> Result<usize> {
    if e.dim() != h.nvars() {
        return Err(Error::DimensionMismatch {
            expected: h.nvars(),
            found: e.dim(),
        });
    }
    let d = h.homogeneous_degree()?;
    if h.evaluate(e)?.is_zero() {
        return Err(Error::NotApplicable(format!("h vanishes at e = {e}")));
    }
    Ok(d)
}

/// Whether the line `t*e + v` meets `h = 0` in real points only.
pub fn line_is_real_rooted(h: &MultiPolyQ, e: &PointQ, v: &PointQ) -> Result<bool> {
    let u = h.restrict_line(e, v)?;
    is_real_rooted(&u)
}

/// Randomized hyperbolicity test with automatic exact fast paths.
pub fn check_hyperbolic(h: &MultiPolyQ, e: &PointQ, trials: usize, seed: u64) -> Result<HypVerdict> {
    let d = prepare(h, e)?;
    if d <= 1 {
        return Ok(HypVerdict {
            kind: VerdictKind::CertifiedHyperbolic {
                method: ExactMethod::Linear,
            },
            notes: format!("degree {d}: every restriction is real-rooted"),
        });
    }
    if h.nvars() == 2 {
        return check_hyperbolic_exact_bivariate(h, e);
    }
    if d == 2 {
        return check_hyperbolic_quadratic(h, e);
    }
    if h.nvars() == 3 {
        if let Some(v) = check_hyperbolic_exact_ternary(h, e)? {
            return Ok(v);
        }
    }
    check_hyperbolic_sampled(h, e, trials.max(1), seed)
}

/// The randomized test alone, without the exact dispatch.
pub fn check_hyperbolic_sampled(h: &MultiPolyQ, e: &PointQ, trials: usize, seed: u64) -> Result<HypVerdict> {
    prepare(h, e)?;
    let mut rng = stream_rng(seed, 0);
    for i in 0..trials {
        let v = int_vector_avoiding(&mut rng, e, DIRECTION_BOUND);
        if !line_is_real_rooted(h, e, &v)? {
            return Ok(HypVerdict {
                kind: VerdictKind::CertifiedNot { witness: v },
                notes: format!("non-real roots on trial {}", i + 1),
            });
        }
    }
    Ok(HypVerdict {
        kind: VerdictKind::ProbablyHyperbolic { trials },
        notes: format!("{trials} random lines real-rooted (seed {seed})"),
    })
}

/// Exact test for binary forms.
pub fn check_hyperbolic_exact_bivariate(h: &MultiPolyQ, e: &PointQ) -> Result<HypVerdict> {
    if h.nvars() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: h.nvars(),
        });
    }
    prepare(h, e)?;
    // any v = a*e + b*w; for b != 0 the roots are those of h(t*e + w), shifted and scaled
    let w = if e[0].is_zero() {
        Point::from_ints(&[1, 0])
    } else {
        Point::from_ints(&[0, 1])
    };
    if line_is_real_rooted(h, e, &w)? {
        Ok(HypVerdict {
            kind: VerdictKind::CertifiedHyperbolic {
                method: ExactMethod::Bivariate,
            },
            notes: format!("h(t*e + {w}) is real-rooted"),
        })
    } else {
        Ok(HypVerdict {
            kind: VerdictKind::CertifiedNot { witness: w },
            notes: "binary form with non-real roots".into(),
        })
    }
}

/// Whether `x` lies in the open hyperbolicity cone containing `e`: every
/// root of `t -> h(t*e - x)` is strictly positive.
pub fn in_cone(h: &MultiPolyQ, e: &PointQ, x: &PointQ) -> Result<bool> {
    prepare(h, e)?;
    let minus_x = -x;
    let u = h.restrict_line(e, &minus_x)?;
    match all_roots_positive(&u) {
        Err(Error::NotRealRooted) => Err(Error::InvalidDirection {
            base: e.clone(),
            witness: minus_x,
        }),
        other => other,
    }
}

/// Two hyperbolic directions share a component iff each is in the other's
/// cone; the two tests must agree.
pub fn same_component(h: &MultiPolyQ, e1: &PointQ, e2: &PointQ) -> Result<bool> {
    let forward = in_cone(h, e1, e2)?;
    let backward = in_cone(h, e2, e1)?;
    if forward != backward {
        return Err(Error::InternalInconsistency(format!(
            "in_cone({e1}, {e2}) = {forward} but in_cone({e2}, {e1}) = {backward}"
        )));
    }
    Ok(forward)
}

/// `x` in the cone of `e` or of `-e`.
pub fn same_projective_region(h: &MultiPolyQ, e: &PointQ, x: &PointQ) -> Result<bool> {
    Ok(in_cone(h, e, x)? || in_cone(h, e, &-x)?)
}

/// Zero-vector guard for callers assembling directions by hand.
pub fn nonzero(p: &PointQ) -> bool {
    p.0.iter().any(|c| !c.is_zero())
}
