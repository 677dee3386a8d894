use hodge_core::algebra::{qrat_to_series, rat, GaussianRational, LambdaSeries, QRat, TauPoly, XPoly};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = BigRational> {
    (-9i64..10, 1i64..7).prop_map(|(n, d)| rat(n, d))
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (small_rat(), small_rat()).prop_map(|(re, im)| GaussianRational::new(re, im))
}

fn nonzero_gaussian() -> impl Strategy<Value = GaussianRational> {
    gaussian().prop_filter("nonzero", |c| !Zero::is_zero(c))
}

fn tau_poly() -> impl Strategy<Value = TauPoly> {
    prop::collection::vec((-2i32..3, gaussian()), 0..4).prop_map(TauPoly::from_terms)
}

fn xpoly() -> impl Strategy<Value = XPoly> {
    prop::collection::vec((-3i32..4, small_rat()), 0..4).prop_map(XPoly::from_terms)
}

fn qrat() -> impl Strategy<Value = QRat> {
    (xpoly(), xpoly().prop_filter("nonzero", |p| !p.is_zero())).prop_map(|(n, d)| QRat::new(n, d))
}

fn series_from(start: std::ops::Range<i32>) -> impl Strategy<Value = LambdaSeries> {
    (start, prop::collection::vec(tau_poly(), 0..5), 3i32..7)
        .prop_map(|(s, coeffs, len)| LambdaSeries::from_coeffs(s, coeffs, s + len))
}

fn series() -> impl Strategy<Value = LambdaSeries> {
    series_from(-2..2)
}

/// Series whose leading coefficient is a single `τ`-monomial, so it is invertible.
fn unit_series() -> impl Strategy<Value = LambdaSeries> {
    (-2i32..2, nonzero_gaussian(), -2i32..3, prop::collection::vec(tau_poly(), 0..4), 3i32..7).prop_map(
        |(s, lead, e, mut rest, len)| {
            rest.insert(0, TauPoly::monomial(lead, e));
            LambdaSeries::from_coeffs(s, rest, s + len)
        },
    )
}

fn same(a: &LambdaSeries, b: &LambdaSeries) -> bool {
    a.first_difference(b).is_none()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gaussian_ring(a in gaussian(), b in gaussian(), c in gaussian()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if let Some(inv) = a.inv() {
            prop_assert_eq!(&a * &inv, GaussianRational::one());
        }
    }

    #[test]
    fn tau_poly_ring(a in tau_poly(), b in tau_poly(), c in tau_poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
    }

    #[test]
    fn tau_poly_substitutions(a in tau_poly(), b in tau_poly(), t in small_rat().prop_filter("nonzero", |t| !Zero::is_zero(t))) {
        prop_assert_eq!(a.invert_tau().invert_tau(), a.clone());
        prop_assert_eq!((&a * &b).invert_tau(), &a.invert_tau() * &b.invert_tau());
        prop_assert_eq!((&a * &b).eval(&t), &a.eval(&t) * &b.eval(&t));
        prop_assert_eq!(a.invert_tau().eval(&t), a.eval(&t.recip()));
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).div_exact(&b), Some(a.clone()));
        }
    }

    #[test]
    fn qrat_field(a in qrat(), b in qrat(), c in qrat()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if let Some(inv) = b.inv() {
            prop_assert_eq!(&(&a * &b) * &inv, a.clone());
        }
    }

    #[test]
    fn series_ring(a in series(), b in series(), c in series()) {
        prop_assert!(same(&(&(&a * &b) * &c), &(&a * &(&b * &c))));
        prop_assert!(same(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c))));
        prop_assert!(same(&(&a * &b), &(&b * &a)));
    }

    #[test]
    fn series_division_undoes_multiplication(a in series(), b in unit_series()) {
        let q = (&a * &b).div(&b).unwrap();
        prop_assert!(same(&q, &a));
        let one = &b * &b.inv().unwrap();
        prop_assert!(same(&one, &LambdaSeries::one(one.order())));
    }

    #[test]
    fn exp_turns_sums_into_products(a in series_from(1..3), b in series_from(1..3)) {
        let lhs = (&a + &b).exp().unwrap();
        let rhs = &a.exp().unwrap() * &b.exp().unwrap();
        prop_assert!(same(&lhs, &rhs));
    }

    #[test]
    fn expansion_is_a_ring_homomorphism(f in qrat(), g in qrat()) {
        let n = 5;
        let (sf, sg) = (qrat_to_series(&f, n).unwrap(), qrat_to_series(&g, n).unwrap());
        let prod = qrat_to_series(&(&f * &g), n).unwrap();
        prop_assert!(same(&prod, &(&sf * &sg)));
        let sum = qrat_to_series(&(&f + &g), n).unwrap();
        prop_assert!(same(&sum, &(&sf + &sg)));
    }
}

#[test]
fn expansion_of_quantum_integer() {
    // [1] = x − 1/x = 2i sin(λ/2) = iλ − iλ³/24 + …
    let s = qrat_to_series(&QRat::from_poly(hodge_core::algebra::quantum(1)), 3).unwrap();
    assert_eq!(s.coeff(1), TauPoly::constant(GaussianRational::imag(rat(1, 1))));
    assert_eq!(s.coeff(2), TauPoly::zero());
    assert_eq!(s.coeff(3), TauPoly::constant(GaussianRational::imag(rat(-1, 24))));
}
