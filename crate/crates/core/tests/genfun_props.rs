use hodge_core::algebra::{rat, GaussianRational, LambdaSeries, TauPoly};
use hodge_core::genfun::{connect, connect_entry, disconnect, GenMap, PairMap, PartitionMap};
use hodge_core::partitions::enumerate_up_to;
use hodge_core::{Error, Partition};
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = TauPoly> {
    prop::collection::vec((-1i32..2, -5i64..6, -5i64..6), 0..3).prop_map(|terms| {
        TauPoly::from_terms(terms.into_iter().map(|(e, re, im)| (e, GaussianRational::new(rat(re, 2), rat(im, 3)))))
    })
}

fn lambda_series() -> impl Strategy<Value = LambdaSeries> {
    (-1i32..2, prop::collection::vec(coeff(), 1..4)).prop_map(|(s, c)| LambdaSeries::from_coeffs(s, c, 4))
}

fn partition_map() -> impl Strategy<Value = PartitionMap> {
    let keys = enumerate_up_to(4, false);
    prop::collection::vec(prop::option::of(lambda_series()), keys.len()).prop_map(move |vals| {
        let mut m = GenMap::new(4);
        for (k, v) in keys.iter().zip(vals) {
            if let Some(v) = v {
                m.insert(k.clone(), v);
            }
        }
        m
    })
}

fn pair_map() -> impl Strategy<Value = PairMap> {
    let mut keys = Vec::new();
    for a in enumerate_up_to(2, true) {
        for b in enumerate_up_to(2, true) {
            if a.size() + b.size() > 0 && a.size() + b.size() <= 3 {
                keys.push((a.clone(), b));
            }
        }
    }
    prop::collection::vec(prop::option::of(lambda_series()), keys.len()).prop_map(move |vals| {
        let mut m = GenMap::new(3);
        for (k, v) in keys.iter().zip(vals) {
            if let Some(v) = v {
                m.insert(k.clone(), v);
            }
        }
        m
    })
}

fn agree<K: hodge_core::genfun::Monomial>(a: &GenMap<K>, b: &GenMap<K>) -> bool {
    let zero = LambdaSeries::zero(4);
    a.entries.keys().chain(b.entries.keys()).all(|k| {
        let x = a.get(k).unwrap_or(&zero);
        let y = b.get(k).unwrap_or(&zero);
        x.first_difference(y).is_none()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn connect_inverts_disconnect(a in partition_map()) {
        let b = disconnect(&a).unwrap();
        prop_assert!(agree(&connect(&b).unwrap(), &a));
        for k in a.entries.keys() {
            let single = connect_entry(&b, k).unwrap();
            prop_assert!(single.first_difference(a.get(k).unwrap()).is_none());
        }
    }

    #[test]
    fn connect_inverts_disconnect_for_pairs(a in pair_map()) {
        let b = disconnect(&a).unwrap();
        prop_assert!(agree(&connect(&b).unwrap(), &a));
    }
}

#[test]
fn exponential_of_one_monomial() {
    // exp(a·p_2) has coefficient a^k/k! at p_2^k
    let a = LambdaSeries::from_coeffs(1, vec![TauPoly::tau(), TauPoly::one()], 6);
    let mut m = GenMap::new(6);
    m.insert(Partition::row(2), a.clone());
    let b = disconnect(&m).unwrap();
    let mut power = LambdaSeries::one(6);
    let mut fact = 1i64;
    for k in 0..=3usize {
        if k > 0 {
            power = &power * &a;
            fact *= k as i64;
        }
        let key = Partition::from_unsorted(vec![2; k]);
        assert!(b.get(&key).unwrap().first_difference(&power.scale_rat(&rat(1, fact))).is_none(), "k = {k}");
    }
    assert!(b.get(&Partition::row(1)).is_none_or(LambdaSeries::is_zero));
}

#[test]
fn bad_inputs_rejected() {
    let mut m = GenMap::new(2);
    m.insert(Partition::empty(), LambdaSeries::one(3));
    assert_eq!(disconnect(&m), Err(Error::EmptyKeyPresent));
    let mut b = GenMap::new(2);
    b.insert(Partition::empty(), LambdaSeries::zero(3));
    assert_eq!(connect(&b), Err(Error::BadConstantTerm));
}
