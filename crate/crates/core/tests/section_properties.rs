use hypcone::hyperbolicity::{count_components, in_cone};
use hypcone::rng::{int_vector, stream_rng};
use hypcone::sections::{random_plane_through, section_component_count, PlaneBasis};
use hypcone::{parse_poly, MultiPolyQ, Point, PointQ, Rational, Scalar};
use rand::Rng;

fn poly(s: &str, n: usize) -> MultiPolyQ {
    parse_poly(s, n).unwrap()
}

fn pt(c: &[i64]) -> PointQ {
    Point::from_ints(c)
}

/// `(e1, e2, ambient components they span)` for representatives of one or two cones.
fn representative_pairs(h: &MultiPolyQ, seed: u64) -> Vec<(PointQ, PointQ, usize)> {
    let r = count_components(h, 128, seed, 64).unwrap();
    let first = &r.components[0].representative;
    let mut out = Vec::new();
    // a second member of the first cone, independent of the representative
    let same = r.components[0]
        .members
        .iter()
        .map(|&m| &r.hyperbolic_samples[m])
        .find(|x| !x.is_parallel(first));
    if let Some(x) = same {
        out.push((first.clone(), x.clone(), 1));
    }
    if let Some(k) = (1..r.components.len()).find(|&k| k != r.pair_map[0]) {
        out.push((first.clone(), r.components[k].representative.clone(), 2));
    }
    out
}

#[test]
fn sections_keep_distinct_cones_apart() {
    let corpus = [
        ("x1^2 - x2^2 - x3^2", 3),
        ("(x1^2+x2^2-2*x3^2)*(2*x1^2-x2^2-x3^2)", 3),
        ("x1*x2*x3", 3),
        ("x1^2 - x2^2 - x3^2 - x4^2", 4),
        ("x1*x2*x3 + x1*x2*x4 + x1*x3*x4 + x2*x3*x4", 4),
    ];
    for (src, n) in corpus {
        let h = poly(src, n);
        for (e1, e2, spanned) in representative_pairs(&h, 5) {
            for plane in 0..3 {
                let basis = random_plane_through(&h, &e1, &e2, plane).unwrap();
                let r = section_component_count(&h, &basis, 64, plane).unwrap();
                let [a, b] = r.image_components;
                let (a, b) = (a.expect("image of e1 sampled"), b.expect("image of e2 sampled"));
                let occupied = if a == b { 1 } else { 2 };
                assert_eq!(occupied, spanned, "{src}: {e1} {e2} plane {plane}");
            }
        }
    }
}

#[test]
fn cone_membership_transports_to_sections() {
    let h = poly("x1^2 - x2^2 - x3^2 - x4^2", 4);
    let e1 = pt(&[1, 0, 0, 0]);
    let e2 = pt(&[2, 1, 0, 0]);
    let mut rng = stream_rng(12, 0);
    for plane in 0..3 {
        let basis = random_plane_through(&h, &e1, &e2, plane).unwrap();
        let g = basis.restrict(&h).unwrap();
        let mut transported = 0;
        while transported < 20 {
            let coords = int_vector(&mut rng, 3, 6);
            let x = basis.to_ambient(&coords);
            if x.is_zero() || h.evaluate(&x).unwrap() == Rational::from_int(0) {
                continue;
            }
            let ambient = in_cone(&h, &e1, &x).unwrap();
            if ambient {
                assert!(in_cone(&g, &pt(&[1, 0, 0]), &coords).unwrap());
            }
            transported += 1;
        }
    }
}

#[test]
fn more_samples_never_lose_components() {
    let h = poly("(x1^2+x2^2-2*x3^2)*(2*x1^2-x2^2-x3^2)", 3);
    let id = PlaneBasis::new(pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[0, 0, 1])).unwrap();
    let mut last = 0;
    for samples in [32, 64, 128, 256] {
        let count = section_component_count(&h, &id, samples, 4).map_or(0, |r| r.components.components.len());
        assert!(count >= last, "{samples} samples: {count} < {last}");
        last = count;
    }
    assert_eq!(last, 4);
}

#[test]
fn lorentz_sections_have_full_degree() {
    let h = poly("x1^2 - x2^2 - x3^2 - x4^2", 4);
    let mut rng = stream_rng(3, 0);
    for _ in 0..5 {
        let seed = rng.random();
        let basis = random_plane_through(&h, &pt(&[1, 0, 0, 0]), &pt(&[2, 1, 0, 0]), seed).unwrap();
        let g = basis.restrict(&h).unwrap();
        assert_eq!(g.homogeneous_degree().unwrap(), 2);
        assert_eq!(g.evaluate(&pt(&[1, 0, 0])).unwrap(), Rational::from_int(1));
        assert_eq!(g.evaluate(&pt(&[0, 1, 0])).unwrap(), Rational::from_int(3));
    }
}
