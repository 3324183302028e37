//! Plane sections through cone representatives and the one-pair check.
//!
//! Restricting `h` to a plane spanned by `a, b, c` gives a ternary form `g`
//! with `g(x, y, z) = h(x*a + y*b + z*c)`; the images of `a` and `b` are
//! `(1,0,0)` and `(0,1,0)`.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hyperbolicity::{
    check_hyperbolic, count_components, count_components_with, in_cone, same_component, ComponentParams,
    ComponentReport, HypVerdict, DEFAULT_TRIALS,
};
use crate::point::{rank, Point};
use crate::realroots::squarefree_part;
use crate::rng::{derive_seed, int_vector, stream_rng};
use crate::{MultiPolyQ, PointQ};

/// Retry budget for drawing a usable plane.
pub const PLANE_RETRIES: usize = 16;
/// Coordinates of the free basis vector are drawn from `[-5, 5]`.
pub const PLANE_BOUND: i64 = 5;
/// Planes examined for a violation candidate.
pub const CANDIDATE_SECTIONS: usize = 3;

#[derive(Clone, Debug, PartialEq)]
pub struct PlaneBasis {
    pub a: PointQ,
    pub b: PointQ,
    pub c: PointQ,
}

impl PlaneBasis {
    pub fn new(a: PointQ, b: PointQ, c: PointQ) -> Result<Self> {
        for p in [&b, &c] {
            if p.dim() != a.dim() {
                return Err(Error::DimensionMismatch {
                    expected: a.dim(),
                    found: p.dim(),
                });
            }
        }
        if rank(&[a.clone(), b.clone(), c.clone()]) < 3 {
            return Err(Error::DependentVectors);
        }
        Ok(PlaneBasis { a, b, c })
    }

    /// The point `x*a + y*b + z*c`.
    pub fn to_ambient(&self, coords: &PointQ) -> PointQ {
        self.a
            .scale(&coords[0])
            .add(&self.b.scale(&coords[1]))
            .add(&self.c.scale(&coords[2]))
    }

    pub fn restrict(&self, h: &MultiPolyQ) -> Result<MultiPolyQ> {
        h.restrict_plane(&self.a, &self.b, &self.c)
    }
}

/// A plane through `e1` and `e2` whose section has full degree and no
/// repeated factor (screened on one random line).
pub fn random_plane_through(h: &MultiPolyQ, e1: &PointQ, e2: &PointQ, seed: u64) -> Result<PlaneBasis> {
    let n = h.nvars();
    for e in [e1, e2] {
        if e.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: e.dim(),
            });
        }
    }
    if rank(&[e1.clone(), e2.clone()]) < 2 {
        return Err(Error::DependentVectors);
    }
    let d = h.homogeneous_degree()?;
    let mut rng = stream_rng(seed, 0);
    for _ in 0..PLANE_RETRIES {
        let c = int_vector(&mut rng, n, PLANE_BOUND);
        let Ok(basis) = PlaneBasis::new(e1.clone(), e2.clone(), c) else {
            continue;
        };
        let g = match basis.restrict(h) {
            Ok(g) => g,
            Err(Error::DegenerateRestriction) => continue,
            Err(e) => return Err(e),
        };
        let base = int_vector(&mut rng, 3, PLANE_BOUND);
        let dir = int_vector(&mut rng, 3, PLANE_BOUND);
        if g.evaluate(&base)?.is_zero() {
            continue;
        }
        let u = g.restrict_line(&base, &dir)?;
        if squarefree_part(&u)?.degree() == Some(d) {
            return Ok(basis);
        }
    }
    Err(Error::DegenerateSectionFamily { retries: PLANE_RETRIES })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SectionReport {
    pub basis: PlaneBasis,
    pub section: MultiPolyQ,
    pub components: ComponentReport,
    /// Verdicts for the images `(1,0,0)` and `(0,1,0)` of `a` and `b`.
    pub image_verdicts: [HypVerdict; 2],
    /// Section components holding the two images.
    pub image_components: [Option<usize>; 2],
}

impl SectionReport {
    /// The images lie in different section components.
    pub fn separates_images(&self) -> bool {
        matches!(self.image_components, [Some(x), Some(y)] if x != y)
    }
}

pub fn section_component_count(
    h: &MultiPolyQ,
    basis: &PlaneBasis,
    sphere_samples: usize,
    seed: u64,
) -> Result<SectionReport> {
    let g = basis.restrict(h)?;
    let images = [Point::from_ints(&[1, 0, 0]), Point::from_ints(&[0, 1, 0])];
    let image_verdicts = [
        check_hyperbolic(&g, &images[0], DEFAULT_TRIALS, derive_seed(seed, u64::MAX))?,
        check_hyperbolic(&g, &images[1], DEFAULT_TRIALS, derive_seed(seed, u64::MAX - 1))?,
    ];
    let components = count_components_with(
        &g,
        &ComponentParams {
            sphere_samples,
            trials: DEFAULT_TRIALS,
            seed,
            forced: images.to_vec(),
        },
    )?;
    let image_components = [components.component_of(&images[0]), components.component_of(&images[1])];
    Ok(SectionReport {
        basis: basis.clone(),
        section: g,
        components,
        image_verdicts,
        image_components,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    DeclaredTrue,
    DeclaredFalse,
    Unknown,
}

impl Irreducibility {
    pub fn tag(self) -> &'static str {
        match self {
            Irreducibility::DeclaredTrue => "declared_true",
            Irreducibility::DeclaredFalse => "declared_false",
            Irreducibility::Unknown => "unknown",
        }
    }
}

impl FromStr for Irreducibility {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "declared_true" => Ok(Irreducibility::DeclaredTrue),
            "declared_false" => Ok(Irreducibility::DeclaredFalse),
            "unknown" => Ok(Irreducibility::Unknown),
            other => Err(Error::NotApplicable(format!("unknown irreducibility flag {other:?}"))),
        }
    }
}

impl fmt::Display for Irreducibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerdictClass {
    ConsistentWithTheorem,
    /// Several pairs on a polynomial declared irreducible: a corpus or
    /// implementation error to review, never a refutation.
    ViolationCandidate,
    NotApplicable(String),
}

impl VerdictClass {
    pub fn tag(&self) -> &'static str {
        match self {
            VerdictClass::ConsistentWithTheorem => "ConsistentWithTheorem",
            VerdictClass::ViolationCandidate => "ViolationCandidate",
            VerdictClass::NotApplicable(_) => "NotApplicable",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TheoremVerdict {
    pub id: String,
    pub irreducible: Irreducibility,
    pub ambient: ComponentReport,
    pub ambient_pairs: usize,
    pub section_reports: Vec<SectionReport>,
    pub verdict: VerdictClass,
}

/// Representatives of two components in different negation pairs.
pub fn distinct_pair_representatives(report: &ComponentReport) -> Option<(PointQ, PointQ)> {
    let first = 0;
    let other = (1..report.components.len()).find(|&k| k != report.pair_map[first])?;
    Some((
        report.components[first].representative.clone(),
        report.components[other].representative.clone(),
    ))
}

pub fn verify_unique_pair(
    id: &str,
    h: &MultiPolyQ,
    irreducible: Irreducibility,
    sphere_samples: usize,
    seed: u64,
) -> Result<TheoremVerdict> {
    let ambient = count_components(h, sphere_samples, seed, DEFAULT_TRIALS)?;
    let ambient_pairs = ambient.pairs;
    let mut out = TheoremVerdict {
        id: id.to_string(),
        irreducible,
        ambient,
        ambient_pairs,
        section_reports: Vec::new(),
        verdict: VerdictClass::ConsistentWithTheorem,
    };
    if ambient_pairs <= 1 {
        return Ok(out);
    }
    if irreducible != Irreducibility::DeclaredTrue {
        let why = match irreducible {
            Irreducibility::DeclaredFalse => "declared reducible",
            _ => "irreducibility unknown",
        };
        out.verdict = VerdictClass::NotApplicable(format!("{why}; {ambient_pairs} pairs"));
        return Ok(out);
    }
    if h.nvars() <= 2 {
        out.verdict = VerdictClass::NotApplicable(format!("binary form; {ambient_pairs} pairs"));
        return Ok(out);
    }
    let (r1, r2) = distinct_pair_representatives(&out.ambient)
        .ok_or_else(|| Error::InternalInconsistency("fewer than two pairs to compare".into()))?;
    if same_component(h, &r1, &r2)? || same_component(h, &r1, &-&r2)? || !in_cone(h, &r1, &r1)? {
        return Err(Error::InternalInconsistency(format!(
            "representatives {r1} and {r2} re-certify as one pair"
        )));
    }
    out.section_reports = (0..CANDIDATE_SECTIONS)
        .into_par_iter()
        .map(|i| {
            let s = derive_seed(seed, i as u64 + 1);
            let basis = random_plane_through(h, &r1, &r2, s)?;
            section_component_count(h, &basis, sphere_samples, s)
        })
        .collect::<Vec<Result<_>>>()
        .into_iter()
        .collect::<Result<_>>()?;
    out.verdict = VerdictClass::ViolationCandidate;
    Ok(out)
}
