use hodge_cli::json;
use hodge_core::algebra::{GaussianRational, LambdaSeries, TauPoly};
use hodge_core::Partition;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = BigRational> {
    (-50i64..50, 1i64..20).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (rational(), rational()).prop_map(|(re, im)| GaussianRational::new(re, im))
}

fn tau_poly() -> impl Strategy<Value = TauPoly> {
    prop::collection::vec((-4i32..5, gaussian()), 0..5).prop_map(TauPoly::from_terms)
}

fn series() -> impl Strategy<Value = LambdaSeries> {
    (-3i32..3, prop::collection::vec(tau_poly(), 0..6), -1i32..8)
        .prop_map(|(start, coeffs, order)| LambdaSeries::from_coeffs(start, coeffs, order))
}

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..6, 0..6).prop_map(Partition::from_unsorted)
}

proptest! {
    #[test]
    fn rational_round_trip(r in rational()) {
        prop_assert_eq!(json::parse_rational(&json::rational(&r)).unwrap(), r);
    }

    #[test]
    fn gaussian_round_trip(c in gaussian()) {
        prop_assert_eq!(json::parse_gaussian(&json::gaussian(&c)).unwrap(), c);
    }

    #[test]
    fn tau_poly_round_trip(p in tau_poly()) {
        prop_assert_eq!(json::parse_tau_poly(&json::tau_poly(&p)).unwrap(), p);
    }

    #[test]
    fn series_round_trip(s in series()) {
        let text = json::series(&s).to_string();
        let back = json::parse_series(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(&back, &s);
        // serializing is a function of the value alone
        prop_assert_eq!(json::series(&back).to_string(), text);
    }

    #[test]
    fn partition_round_trip(p in partition()) {
        prop_assert_eq!(json::parse_partition(&json::partition(&p)).unwrap(), p);
    }
}
