//! Sampling the hyperbolicity locus and grouping it into cones.

use std::collections::HashMap;

use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::{
    check_hyperbolic, check_hyperbolic_exact_ternary, check_hyperbolic_sampled, same_component, HypVerdict,
    VerdictKind, DEFAULT_SPHERE_SAMPLES, DEFAULT_TRIALS,
};
use crate::error::{Error, Result};
use crate::point::Point;
use crate::rng::{derive_seed, stream_rng};
use crate::scalar::Rational;
use crate::union_find::UnionFind;
use crate::{MultiPolyQ, PointQ};

/// Sample directions are Gaussian vectors scaled to this length, then
/// rounded to the integer lattice.
const LATTICE_RADIUS: f64 = 24.0;

#[derive(Clone, Debug)]
pub struct ComponentParams {
    pub sphere_samples: usize,
    pub trials: usize,
    pub seed: u64,
    /// Directions sampled in addition to the random ones, with their negations.
    pub forced: Vec<PointQ>,
}

impl Default for ComponentParams {
    fn default() -> Self {
        ComponentParams {
            sphere_samples: DEFAULT_SPHERE_SAMPLES,
            trials: DEFAULT_TRIALS,
            seed: 0,
            forced: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    pub representative: PointQ,
    /// Indices into [`ComponentReport::hyperbolic_samples`].
    pub members: Vec<usize>,
    /// Every member verdict came from an exact path.
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComponentReport {
    /// Sample points drawn, counting both signs.
    pub sample_count: usize,
    pub hyperbolic_samples: Vec<PointQ>,
    pub components: Vec<Component>,
    /// `pair_map[i]` is the component holding the negatives of component `i`.
    pub pair_map: Vec<usize>,
    pub pairs: usize,
    /// Samples on `h = 0`.
    pub zero_samples: usize,
    /// Samples certified non-hyperbolic.
    pub rejected_samples: usize,
}

impl ComponentReport {
    /// Component containing `x`, if `x` was sampled and hyperbolic.
    pub fn component_of(&self, x: &PointQ) -> Option<usize> {
        let i = self.hyperbolic_samples.iter().position(|s| s == x)?;
        self.components.iter().position(|c| c.members.contains(&i))
    }
}

pub fn count_components(
    h: &MultiPolyQ,
    sphere_samples: usize,
    seed: u64,
    trials_per_sample: usize,
) -> Result<ComponentReport> {
    count_components_with(
        h,
        &ComponentParams {
            sphere_samples,
            trials: trials_per_sample,
            seed,
            forced: Vec::new(),
        },
    )
}

/// Primitive integer vector with the first nonzero coordinate positive.
fn projective_key(x: &PointQ) -> PointQ {
    let p = x.primitive();
    match p.0.iter().find(|c| !c.is_zero()) {
        Some(c) if c < &Rational::zero() => -&p,
        _ => p,
    }
}

fn lattice_direction(n: usize, seed: u64, stream: u64) -> PointQ {
    let mut rng = stream_rng(seed, stream);
    loop {
        let g: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let v: Vec<i64> = g.iter().map(|x| (x / norm * LATTICE_RADIUS).round() as i64).collect();
        if v.iter().any(|&c| c != 0) {
            return Point::from_ints(&v);
        }
    }
}

struct PairSample {
    point: PointQ,
    verdict: HypVerdict,
}

pub fn count_components_with(h: &MultiPolyQ, params: &ComponentParams) -> Result<ComponentReport> {
    let n = h.nvars();
    if n < 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: n });
    }
    let degree = h.homogeneous_degree()?;
    // the exact ternary test is costly, so it only runs on representatives
    let ternary = n == 3 && degree >= 3;

    let mut directions: Vec<PointQ> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let forced = params.forced.iter().map(|f| {
        if f.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: f.dim(),
            });
        }
        Ok(f.clone())
    });
    let random = (0..params.sphere_samples.div_ceil(2)).map(|i| Ok(lattice_direction(n, params.seed, i as u64)));
    for d in forced
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .chain(random.collect::<Result<Vec<_>>>()?)
    {
        if d.is_zero() {
            continue;
        }
        let key = projective_key(&d);
        if seen.insert(key.clone()) {
            directions.push(key);
        }
    }
    let sample_count = 2 * directions.len();

    let mut zero_samples = 0;
    let mut candidates = Vec::new();
    for d in directions {
        if h.evaluate(&d)?.is_zero() {
            zero_samples += 2;
        } else {
            candidates.push(d);
        }
    }
    let checked: Vec<Result<PairSample>> = candidates
        .into_par_iter()
        .enumerate()
        .map(|(i, point)| {
            let seed = derive_seed(params.seed, i as u64);
            let verdict = if ternary {
                check_hyperbolic_sampled(h, &point, params.trials, seed)?
            } else {
                check_hyperbolic(h, &point, params.trials, seed)?
            };
            Ok(PairSample { point, verdict })
        })
        .collect();
    let mut pairs: Vec<PairSample> = Vec::new();
    let mut rejected_samples = 0;
    for c in checked {
        let c = c?;
        if c.verdict.accepts() {
            pairs.push(c);
        } else {
            rejected_samples += 2;
        }
    }

    // A probable verdict can be wrong; the exact cone tests then expose it and
    // the pair is dropped before clustering again.
    let mut exact = HashMap::new();
    loop {
        match cluster(h, &pairs, params, ternary.then_some(&mut exact)) {
            Ok(report) => {
                let mut report = report;
                report.sample_count = sample_count;
                report.zero_samples = zero_samples;
                report.rejected_samples += rejected_samples;
                return Ok(report);
            }
            Err(Error::InvalidDirection { base, .. }) => {
                let key = projective_key(&base);
                let before = pairs.len();
                pairs.retain(|p| p.point != key);
                if pairs.len() == before {
                    return Err(Error::InternalInconsistency(format!(
                        "direction {base} rejected but not sampled"
                    )));
                }
                rejected_samples += 2;
            }
            Err(e) => return Err(e),
        }
    }
}

/// Exact ternary verdict for a would-be representative, cached by projective
/// class: `Some(true)` certified, `None` undecided (repeated factor).
fn certify_rep(h: &MultiPolyQ, x: &PointQ, cache: &mut HashMap<PointQ, Option<bool>>) -> Result<Option<bool>> {
    let key = projective_key(x);
    if let Some(&v) = cache.get(&key) {
        return Ok(v);
    }
    let v = match check_hyperbolic_exact_ternary(h, x)? {
        None => None,
        Some(HypVerdict {
            kind: VerdictKind::CertifiedNot { witness },
            ..
        }) => {
            cache.insert(key, Some(false));
            return Err(Error::InvalidDirection {
                base: x.clone(),
                witness,
            });
        }
        Some(_) => Some(true),
    };
    cache.insert(key, v);
    Ok(v)
}

fn cluster(
    h: &MultiPolyQ,
    pairs: &[PairSample],
    params: &ComponentParams,
    mut exact: Option<&mut HashMap<PointQ, Option<bool>>>,
) -> Result<ComponentReport> {
    if pairs.is_empty() {
        return Err(Error::NotFoundAtThisResolution {
            samples: params.sphere_samples,
        });
    }
    let mut points = Vec::with_capacity(2 * pairs.len());
    let mut certified = Vec::with_capacity(2 * pairs.len());
    for p in pairs {
        points.push(p.point.clone());
        points.push(-&p.point);
        certified.push(p.verdict.is_certified());
        certified.push(p.verdict.is_certified());
    }

    // a sample exposed as non-hyperbolic is dropped with its negation; only
    // a probable representative seen earlier forces a fresh start
    let mut dropped = vec![false; points.len()];
    let mut drops = 0;
    let mut reps: Vec<usize> = Vec::new();
    let mut uf = UnionFind::new(points.len());
    for (i, x) in points.iter().enumerate() {
        if dropped[i] {
            continue;
        }
        let step = (|| -> Result<Vec<usize>> {
            let matches: Vec<usize> = reps
                .iter()
                .map(|&r| same_component(h, &points[r], x).map(|same| same.then_some(r)))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .collect();
            if matches.is_empty() {
                if let Some(cache) = exact.as_deref_mut() {
                    certified[i] = certify_rep(h, x, cache)? == Some(true);
                }
            }
            Ok(matches)
        })();
        let matches = match step {
            Err(Error::InvalidDirection { base, .. }) if i % 2 == 0 && &base == x => {
                dropped[i] = true;
                dropped[i + 1] = true;
                drops += 2;
                continue;
            }
            other => other?,
        };
        if matches.is_empty() {
            reps.push(i);
        } else if exact.is_some() {
            certified[i] = matches.iter().all(|&r| certified[r]);
        }
        for r in matches {
            uf.union(r, i);
        }
    }
    if drops == points.len() {
        return Err(Error::NotFoundAtThisResolution {
            samples: params.sphere_samples,
        });
    }

    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in (0..points.len()).filter(|&i| !dropped[i]) {
        groups.entry(uf.find(i)).or_default().push(i);
    }
    let mut comps: Vec<(PointQ, Vec<usize>)> = groups
        .into_values()
        .map(|members| {
            let rep = members
                .iter()
                .map(|&m| &points[m])
                .min_by(|a, b| height(a).cmp(&height(b)).then_with(|| b.cmp(a)))
                .cloned()
                .expect("nonempty group");
            Ok((simplify(h, rep)?, members))
        })
        .collect::<Result<_>>()?;
    // the chosen representative must see every member of its group
    for (rep, members) in &comps {
        for &m in members {
            if !super::in_cone(h, rep, &points[m])? {
                return Err(Error::InternalInconsistency(format!(
                    "{} not in the cone of representative {rep}",
                    points[m]
                )));
            }
        }
    }
    comps.sort_by(|a, b| height(&a.0).cmp(&height(&b.0)).then_with(|| b.0.cmp(&a.0)));

    // canonical sample order: by component, then by point
    let mut hyperbolic_samples = Vec::with_capacity(points.len());
    let mut components = Vec::with_capacity(comps.len());
    for (rep, mut members) in comps {
        members.sort_by(|&a, &b| points[a].cmp(&points[b]));
        let mut idx = Vec::with_capacity(members.len());
        for &m in &members {
            idx.push(hyperbolic_samples.len());
            hyperbolic_samples.push(points[m].clone());
        }
        components.push(Component {
            representative: rep,
            members: idx,
            certified: members.iter().all(|&m| certified[m]),
        });
    }

    let mut pair_map = Vec::with_capacity(components.len());
    for (c, comp) in components.iter().enumerate() {
        let neg = -&comp.representative;
        let mut partners = Vec::new();
        for (k, other) in components.iter().enumerate() {
            if super::in_cone(h, &other.representative, &neg)? {
                partners.push(k);
            }
        }
        let [partner] = partners[..] else {
            return Err(Error::InternalInconsistency(format!(
                "{neg} lies in {} sampled cones",
                partners.len()
            )));
        };
        if partner == c {
            return Err(Error::InternalInconsistency(format!(
                "component of {} contains its negation",
                comp.representative
            )));
        }
        pair_map.push(partner);
    }
    for (c, &p) in pair_map.iter().enumerate() {
        if pair_map[p] != c {
            return Err(Error::InternalInconsistency(
                "negation pairing is not a matching".into(),
            ));
        }
    }
    let pairs = components.len() / 2;
    Ok(ComponentReport {
        sample_count: 0,
        hyperbolic_samples,
        components,
        pair_map,
        pairs,
        zero_samples: 0,
        rejected_samples: drops,
    })
}

/// The lowest-height point `round(rep / k)` still inside the cone of `rep`.
fn simplify(h: &MultiPolyQ, rep: PointQ) -> Result<PointQ> {
    let mut best = rep.clone();
    for k in 2..=height(&rep).to_u64().unwrap_or(1).max(1) {
        let k = Rational::from_integer(k.into());
        let cand = Point(rep.0.iter().map(|c| (c / &k).round()).collect());
        if height(&cand) < height(&best) && !cand.is_zero() && super::in_cone(h, &rep, &cand)? {
            best = cand;
        }
    }
    Ok(best)
}

/// Sum of absolute coordinates, as an ordering key for "simple" points.
fn height(x: &PointQ) -> Rational {
    x.0.iter().fold(Rational::zero(), |acc, c| acc + c.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolicity::in_cone;
    use crate::parse_poly;

    fn pt(c: &[i64]) -> PointQ {
        Point::from_ints(c)
    }

    fn assert_invariants(h: &MultiPolyQ, r: &ComponentReport) {
        assert_eq!(r.components.len() % 2, 0);
        assert_eq!(r.pairs * 2, r.components.len());
        for (c, comp) in r.components.iter().enumerate() {
            assert_eq!(r.pair_map[r.pair_map[c]], c);
            for &m in &comp.members {
                assert!(in_cone(h, &comp.representative, &r.hyperbolic_samples[m]).unwrap());
                let neg = -&r.hyperbolic_samples[m];
                assert_eq!(r.component_of(&neg), Some(r.pair_map[c]));
            }
        }
    }

    #[test]
    fn lorentz_has_one_pair() {
        let h = parse_poly("x1^2 - x2^2 - x3^2", 3).unwrap();
        let r = count_components(&h, 256, 7, 64).unwrap();
        assert_eq!(r.components.len(), 2);
        assert_eq!(r.pairs, 1);
        assert!(r.components.iter().all(|c| c.certified));
        assert_invariants(&h, &r);
    }

    #[test]
    fn quartic_has_two_pairs() {
        let h = parse_poly("(x1^2+x2^2-2*x3^2)*(2*x1^2-x2^2-x3^2)", 3).unwrap();
        let r = count_components(&h, 256, 11, 64).unwrap();
        assert_eq!(r.components.len(), 4);
        assert_eq!(r.pairs, 2);
        assert_invariants(&h, &r);
        for e in [[1, 0, 1], [1, 0, -1], [-1, 0, 1], [-1, 0, -1]] {
            let e = pt(&e);
            let hits = r
                .components
                .iter()
                .filter(|c| in_cone(&h, &e, &c.representative).unwrap())
                .count();
            assert_eq!(hits, 1, "{e}");
        }
    }

    #[test]
    fn octants() {
        let h = parse_poly("x1*x2*x3", 3).unwrap();
        let r = count_components(&h, 256, 3, 16).unwrap();
        assert_eq!(r.components.len(), 8);
        assert_eq!(r.pairs, 4);
        assert_invariants(&h, &r);
        // each representative is in a distinct open octant
        let mut signs: Vec<Vec<bool>> = r
            .components
            .iter()
            .map(|c| c.representative.0.iter().map(|x| x > &Rational::zero()).collect())
            .collect();
        signs.sort();
        signs.dedup();
        assert_eq!(signs.len(), 8);
    }

    #[test]
    fn sphere_has_no_hyperbolic_sample() {
        let h = parse_poly("x1^2 + x2^2 + x3^2", 3).unwrap();
        assert!(matches!(
            count_components(&h, 32, 1, 8),
            Err(Error::NotFoundAtThisResolution { samples: 32 })
        ));
    }

    #[test]
    fn forced_samples_are_included() {
        let h = parse_poly("x1^2 - x2^2 - x3^2", 3).unwrap();
        let params = ComponentParams {
            sphere_samples: 8,
            trials: 8,
            seed: 2,
            forced: vec![pt(&[3, 1, 0])],
        };
        let r = count_components_with(&h, &params).unwrap();
        assert!(r.component_of(&pt(&[3, 1, 0])).is_some());
        assert!(r.component_of(&pt(&[-3, -1, 0])).is_some());
    }

    #[test]
    fn reports_are_reproducible() {
        let h = parse_poly("(x1^2+x2^2-2*x3^2)*(2*x1^2-x2^2-x3^2)", 3).unwrap();
        let a = count_components(&h, 64, 5, 16).unwrap();
        let b = count_components(&h, 64, 5, 16).unwrap();
        assert_eq!(a, b);
    }
}
