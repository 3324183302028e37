//! Identities every homogeneous polynomial satisfies.

use hypcone::{parse_poly, MultiPolyQ, Point, PointQ, Rational, Scalar};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=5).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn point(n: usize) -> impl Strategy<Value = PointQ> {
    prop::collection::vec(rational(), n).prop_map(Point)
}

/// A homogeneous polynomial in 3 variables of degree 1..=4.
fn homogeneous() -> impl Strategy<Value = MultiPolyQ> {
    (1u32..=4)
        .prop_flat_map(|d| {
            let monomials: Vec<Vec<u32>> = (0..=d)
                .flat_map(|a| (0..=d - a).map(move |b| vec![a, b, d - a - b]))
                .collect();
            let k = monomials.len();
            (Just(monomials), prop::collection::vec(-5i64..=5, k))
        })
        .prop_map(|(monomials, coeffs)| {
            MultiPolyQ::from_terms(
                3,
                monomials
                    .into_iter()
                    .zip(coeffs)
                    .map(|(m, c)| (m, Rational::from_int(c))),
            )
        })
        .prop_filter("nonzero", |h| !h.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn euler_identity(h in homogeneous(), x in point(3)) {
        let d = h.homogeneous_degree().unwrap();
        let lhs = h
            .gradient()
            .iter()
            .zip(x.coords())
            .map(|(g, xi)| g.evaluate(&x).unwrap() * xi)
            .fold(Rational::from_int(0), |a, b| a + b);
        prop_assert_eq!(lhs, h.evaluate(&x).unwrap() * Rational::from_int(d as i64));
    }

    #[test]
    fn shift_covariance(h in homogeneous(), e in point(3), v in point(3), s in rational()) {
        let moved = e.axpy(&s, &v);
        let lhs = h.restrict_line(&e, &moved).unwrap();
        let rhs = h.restrict_line(&e, &v).unwrap().shift(&s);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn leading_coefficient_is_value_at_e(h in homogeneous(), e in point(3), v in point(3)) {
        let u = h.restrict_line(&e, &v).unwrap();
        let he = h.evaluate(&e).unwrap();
        let d = h.homogeneous_degree().unwrap();
        prop_assert_eq!(u.coeff(d), he);
    }

    #[test]
    fn scaling_the_base(h in homogeneous(), e in point(3), v in point(3), l in rational()) {
        prop_assume!(l != Rational::from_int(0));
        let lhs = h.restrict_line(&e.scale(&l), &v).unwrap();
        let rhs = h.restrict_line(&e, &v).unwrap().scale_var(&l);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn print_parse_round_trip(h in homogeneous()) {
        let text = h.to_string();
        prop_assert_eq!(parse_poly(&text, 3).unwrap(), h);
    }
}

#[test]
fn quartic_gradient_vanishes_at_the_crossing() {
    let p = parse_poly("(x1^2+x2^2-2*x3^2)*(2*x1^2-x2^2-x3^2)", 3).unwrap();
    let x = Point::from_ints(&[1, 1, 1]);
    for g in p.gradient() {
        assert_eq!(g.evaluate(&x).unwrap(), Rational::from_int(0));
    }
}
