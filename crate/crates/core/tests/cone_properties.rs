use hypcone::hyperbolicity::{
    check_hyperbolic, check_hyperbolic_quadratic, check_hyperbolic_sampled, count_components, in_cone,
    line_is_real_rooted,
};
use hypcone::rng::{int_vector, stream_rng};
use hypcone::{parse_poly, MultiPolyQ, Point, PointQ, Rational, Scalar};
use rand::Rng;

const LORENTZ3: &str = "x1^2 - x2^2 - x3^2";
const QUARTIC: &str = "(x1^2+x2^2-2*x3^2)*(2*x1^2-x2^2-x3^2)";
const OCTANTS: &str = "x1*x2*x3";
const ESYM2: &str = "x1*x2 + x1*x3 + x2*x3";
const LORENTZ4: &str = "x1^2 - x2^2 - x3^2 - x4^2";

fn poly(s: &str) -> MultiPolyQ {
    let n = if s.contains("x4") { 4 } else { 3 };
    parse_poly(s, n).unwrap()
}

fn midpoint(x: &PointQ, y: &PointQ) -> PointQ {
    x.add(y).scale(&Rational::new(1.into(), 2.into()))
}

#[test]
fn verdicts_ignore_sign_and_scale() {
    let mut rng = stream_rng(5, 0);
    for src in [LORENTZ3, QUARTIC, OCTANTS, LORENTZ4, "x1^3 - 3*x1*x2^2"] {
        let h = if src.contains("x3") || src.contains("x4") {
            poly(src)
        } else {
            parse_poly(src, 2).unwrap()
        };
        let n = h.nvars();
        let lam = Rational::new((-3).into(), 2.into());
        let scaled_h = h.scale(&Rational::from_int(7));
        for _ in 0..12 {
            let e = int_vector(&mut rng, n, 6);
            if h.evaluate(&e).unwrap() == Rational::from_int(0) {
                continue;
            }
            let seed = rng.random();
            let base = check_hyperbolic(&h, &e, 64, seed).unwrap();
            for (hh, ee) in [(&h, -&e), (&h, e.scale(&lam)), (&scaled_h, e.clone())] {
                let other = check_hyperbolic(hh, &ee, 64, seed).unwrap();
                assert_eq!(other.kind_tag(), base.kind_tag(), "{src} at {e}");
            }
        }
    }
}

#[test]
fn witnesses_re_verify() {
    let mut rng = stream_rng(6, 0);
    for src in [QUARTIC, "x1^2 + x2^2 + x3^2", ESYM2, "x1^4 - x2^4 - x3^4 - x4^4"] {
        let h = poly(src);
        for _ in 0..20 {
            let e = int_vector(&mut rng, h.nvars(), 8);
            let Ok(v) = check_hyperbolic(&h, &e, 32, 1) else {
                continue;
            };
            if let Some(w) = v.witness() {
                assert!(!line_is_real_rooted(&h, &e, w).unwrap(), "{src}: {e} / {w}");
            }
        }
    }
}

#[test]
fn cones_are_convex_and_membership_is_symmetric() {
    for src in [LORENTZ3, QUARTIC, OCTANTS, ESYM2, LORENTZ4] {
        let h = poly(src);
        let report = count_components(&h, 96, 3, 64).unwrap();
        let mut rng = stream_rng(7, 0);
        for comp in &report.components {
            let members: Vec<&PointQ> = comp.members.iter().map(|&m| &report.hyperbolic_samples[m]).collect();
            for _ in 0..25 {
                let x = members[rng.random_range(0..members.len())];
                let y = members[rng.random_range(0..members.len())];
                assert!(in_cone(&h, &comp.representative, &midpoint(x, y)).unwrap(), "{src}");
            }
        }
        let samples = &report.hyperbolic_samples[..report.hyperbolic_samples.len().min(24)];
        for a in samples {
            for b in samples {
                assert_eq!(in_cone(&h, a, b).unwrap(), in_cone(&h, b, a).unwrap(), "{src}: {a} {b}");
            }
        }
    }
}

#[test]
fn components_come_in_negation_pairs() {
    for src in [LORENTZ3, QUARTIC, OCTANTS, ESYM2] {
        let h = poly(src);
        let r = count_components(&h, 128, 9, 64).unwrap();
        assert_eq!(r.components.len() % 2, 0);
        assert_eq!(r.pairs * 2, r.components.len());
        for (c, comp) in r.components.iter().enumerate() {
            let partner = &r.components[r.pair_map[c]];
            assert_eq!(r.pair_map[r.pair_map[c]], c);
            let negated: Vec<PointQ> = comp.members.iter().map(|&m| -&r.hyperbolic_samples[m]).collect();
            let mut theirs: Vec<PointQ> = partner
                .members
                .iter()
                .map(|&m| r.hyperbolic_samples[m].clone())
                .collect();
            let mut ours = negated.clone();
            ours.sort();
            theirs.sort();
            assert_eq!(ours, theirs, "{src}");
            for m in &comp.members {
                assert!(in_cone(&h, &comp.representative, &r.hyperbolic_samples[*m]).unwrap());
            }
        }
    }
}

#[test]
fn quadratic_path_agrees_with_sampling() {
    let mut rng = stream_rng(8, 0);
    let mut checked = 0;
    while checked < 50 {
        let n = rng.random_range(3..=4);
        let mut terms = Vec::new();
        for i in 0..n {
            for j in i..n {
                let mut m = vec![0u32; n];
                m[i] += 1;
                m[j] += 1;
                let c = Rational::new(rng.random_range(-5i64..=5).into(), rng.random_range(1i64..=3).into());
                terms.push((m, c));
            }
        }
        let h = MultiPolyQ::from_terms(n, terms);
        let e = int_vector(&mut rng, n, 5);
        if h.homogeneous_degree().ok() != Some(2) || h.evaluate(&e).unwrap() == Rational::from_int(0) {
            continue;
        }
        let exact = check_hyperbolic_quadratic(&h, &e).unwrap();
        let sampled = check_hyperbolic_sampled(&h, &e, 256, checked).unwrap();
        assert_eq!(exact.accepts(), sampled.accepts(), "{h} at {e}");
        checked += 1;
    }
}

#[test]
fn quartic_representatives_are_the_expected_cones() {
    let h = poly(QUARTIC);
    let r = count_components(&h, 256, 11, 64).unwrap();
    let reps: Vec<PointQ> = r.components.iter().map(|c| c.representative.clone()).collect();
    for e in [[1, 0, 1], [1, 0, -1], [-1, 0, 1], [-1, 0, -1]] {
        assert!(reps.contains(&Point::from_ints(&e)), "{reps:?}");
    }
}
