use std::collections::HashSet;

use hodge_core::partitions::{enumerate, enumerate_up_to};
use hodge_core::Partition;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Partition counts by Euler's pentagonal recurrence.
fn partition_numbers(n: usize) -> Vec<i64> {
    let mut p = vec![0i64; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut k = 1i64;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            p[m] += sign * p[m - g1];
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= m {
                p[m] += sign * p[m - g2];
            }
            k += 1;
        }
    }
    p
}

#[test]
fn enumeration_counts_and_validity() {
    let p = partition_numbers(12);
    for (n, &count) in p.iter().enumerate() {
        let parts = enumerate(n);
        assert_eq!(parts.len() as i64, count, "p({n})");
        let distinct: HashSet<_> = parts.iter().collect();
        assert_eq!(distinct.len(), parts.len());
        for mu in &parts {
            assert_eq!(mu.size(), n);
            assert!(mu.parts().windows(2).all(|w| w[0] >= w[1]));
            assert!(mu.parts().iter().all(|&x| x > 0));
            assert_eq!(Partition::new(mu.parts().to_vec()).as_ref(), Ok(mu));
        }
    }
    let total: i64 = p.iter().take(6).sum();
    assert_eq!(enumerate_up_to(5, true).len() as i64, total);
    assert_eq!(enumerate_up_to(5, false).len() as i64, total - 1);
}

#[test]
fn kappa_even_and_antisymmetric() {
    for n in 0..=12 {
        for mu in enumerate(n) {
            assert_eq!(mu.kappa() % 2, 0, "{mu:?}");
            assert_eq!(mu.conjugate().kappa(), -mu.kappa(), "{mu:?}");
            assert_eq!(mu.kappa(), 2 * mu.content_sum());
        }
    }
}

#[test]
fn class_equation() {
    for n in 0..=10 {
        let total: BigRational = enumerate(n).iter().map(|mu| BigRational::new(factorial(n), BigInt::from(mu.z()))).sum();
        assert_eq!(total, BigRational::from_integer(factorial(n)), "n = {n}");
    }
}

#[test]
fn parse_and_display() {
    let mu: Partition = "5,5,4,1,1,1".parse().unwrap();
    assert_eq!(mu.to_string(), "5,5,4,1,1,1");
    assert_eq!("-".parse::<Partition>().unwrap(), Partition::empty());
    assert!("3,0".parse::<Partition>().is_err());
    assert!("2,3".parse::<Partition>().is_err());
    assert_eq!(mu.z(), 2 * 5 * 5 * 4 * 6);
}

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..7, 0..7).prop_map(Partition::from_unsorted)
}

proptest! {
    #[test]
    fn conjugation(mu in partition()) {
        let c = mu.conjugate();
        prop_assert_eq!(c.conjugate(), mu.clone());
        prop_assert_eq!(c.size(), mu.size());
        prop_assert_eq!(c.len(), mu.parts().first().copied().unwrap_or(0));
        let mut h = mu.hook_lengths();
        let mut hc = c.hook_lengths();
        h.sort_unstable();
        hc.sort_unstable();
        prop_assert_eq!(h, hc);
    }

    #[test]
    fn union_and_subdiagrams(a in partition(), b in partition()) {
        let u = a.union(&b);
        prop_assert_eq!(u.size(), a.size() + b.size());
        prop_assert_eq!(u.len(), a.len() + b.len());
        for eta in a.subdiagrams() {
            prop_assert!(a.contains(&eta));
        }
        prop_assert!(a.subdiagrams().contains(&Partition::empty()));
        prop_assert!(a.subdiagrams().contains(&a));
    }

    #[test]
    fn centralizer_order(mu in partition()) {
        let prod: u64 = mu.parts().iter().map(|&p| p as u64).product();
        prop_assert_eq!(mu.z(), mu.aut_order() * prod);
        prop_assert_eq!(mu.sign(), if (mu.size() - mu.len()) % 2 == 0 { 1 } else { -1 });
    }
}
