//! Lines through a hyperbolic center never touch the curve at a smooth
//! real point; every multiple intersection must be a singular point.

use std::collections::HashSet;

use rayon::prelude::*;

use super::{points_on_line, require_plane, Line2, Smoothness};
use crate::error::Result;
use crate::point::Point;
use crate::rng::{int_vector, stream_rng};
use crate::{MultiPolyQ, PointQ};

#[derive(Clone, Debug, PartialEq)]
pub struct MultipleRoot {
    /// The line is `t -> t*e + line_dir`.
    pub line_dir: PointQ,
    pub multiplicity: usize,
    pub attribution: Smoothness,
    pub approx: [f64; 3],
}

#[derive(Clone, Debug, PartialEq)]
pub struct AvoidanceReport {
    pub lines_checked: usize,
    pub multiple_roots: Vec<MultipleRoot>,
    /// No multiple root sits at a certified smooth point.
    pub pass: bool,
}

impl AvoidanceReport {
    pub fn count(&self, attribution: Smoothness) -> usize {
        self.multiple_roots
            .iter()
            .filter(|m| m.attribution == attribution)
            .count()
    }
}

/// Checks `lines` lines through `e`: first the lines towards the points
/// with coordinates in `{-1, 0, 1}` (which pass through many special
/// points), then random ones.
pub fn tangent_avoidance_check(c: &MultiPolyQ, e: &PointQ, lines: usize, seed: u64) -> Result<AvoidanceReport> {
    require_plane(c)?;
    let mut seen = HashSet::new();
    let mut dirs = Vec::with_capacity(lines);
    let mut consider = |v: PointQ, dirs: &mut Vec<PointQ>| {
        if let Ok(line) = Line2::through(e, &v) {
            if seen.insert(line) {
                dirs.push(v);
            }
        }
    };
    'low: for a in -1..=1 {
        for b in -1..=1 {
            for c3 in -1..=1 {
                if dirs.len() >= lines {
                    break 'low;
                }
                consider(Point::from_ints(&[a, b, c3]), &mut dirs);
            }
        }
    }
    let mut rng = stream_rng(seed, 0);
    let mut attempts = 0;
    while dirs.len() < lines && attempts < 100 * lines.max(1) {
        attempts += 1;
        consider(int_vector(&mut rng, 3, 10), &mut dirs);
    }

    let per_line: Vec<Result<Vec<MultipleRoot>>> = dirs
        .par_iter()
        .enumerate()
        .map(|(i, v)| {
            Ok(points_on_line(c, e, v, i)?
                .into_iter()
                .filter(|p| p.multiplicity >= 2)
                .map(|p| MultipleRoot {
                    line_dir: v.clone(),
                    multiplicity: p.multiplicity,
                    attribution: p.smoothness,
                    approx: p.approx(),
                })
                .collect())
        })
        .collect();
    let mut multiple_roots = Vec::new();
    for r in per_line {
        multiple_roots.extend(r?);
    }
    let pass = !multiple_roots
        .iter()
        .any(|m| m.attribution == Smoothness::CertifiedSmooth);
    Ok(AvoidanceReport {
        lines_checked: dirs.len(),
        multiple_roots,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_poly;

    fn pt(c: &[i64]) -> PointQ {
        Point::from_ints(c)
    }

    #[test]
    fn circle_from_center_has_no_multiple_roots() {
        let c = parse_poly("x1^2 + x2^2 - x3^2", 3).unwrap();
        let r = tangent_avoidance_check(&c, &pt(&[0, 0, 1]), 32, 1).unwrap();
        assert_eq!(r.lines_checked, 32);
        assert!(r.pass);
        assert!(r.multiple_roots.is_empty());
    }

    #[test]
    fn lorentz_passes() {
        let c = parse_poly("x1^2 - x2^2 - x3^2", 3).unwrap();
        let r = tangent_avoidance_check(&c, &pt(&[1, 0, 0]), 64, 5).unwrap();
        assert!(r.pass);
    }

    #[test]
    fn quartic_multiple_roots_are_singular() {
        let c = parse_poly("(x1^2+x2^2-2*x3^2)*(2*x1^2-x2^2-x3^2)", 3).unwrap();
        let r = tangent_avoidance_check(&c, &pt(&[1, 0, 1]), 64, 5).unwrap();
        assert!(r.pass);
        assert!(r.count(Smoothness::CertifiedSingular) >= 1);
        assert!(r
            .multiple_roots
            .iter()
            .any(|m| m.line_dir == pt(&[1, 1, 1]) || m.line_dir == pt(&[-1, -1, -1])));
    }

    #[test]
    fn non_hyperbolic_center_is_rejected() {
        let c = parse_poly("x1^2 + x2^2 - x3^2", 3).unwrap();
        let r = tangent_avoidance_check(&c, &pt(&[1, 1, 1]), 13, 0);
        // (1,1,1) is outside, so some lines miss the circle entirely
        assert!(r.is_err());
    }
}
