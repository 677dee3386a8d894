use hodge_core::algebra::{quantum, GaussianRational, QRat, XPoly};
use hodge_core::one_partition::w_series;
use hodge_core::partitions::{enumerate, enumerate_up_to};
use hodge_core::qschur::{h_by_summation, h_principal, skew_schur_principal, w_one, w_two};
use hodge_core::Partition;
use num_rational::BigRational;
use num_traits::Zero;

/// `x^{κ/2} / ∏_{boxes} [h(□)]`, the hook-content form of `W_μ`.
fn w_by_hooks(mu: &Partition) -> QRat {
    let den = mu.hook_lengths().iter().fold(XPoly::one(), |acc, &h| &acc * &quantum(h as i32));
    QRat::new(XPoly::x_pow((mu.kappa() / 2) as i32), den)
}

#[test]
fn w_one_matches_hook_formula() {
    for mu in enumerate_up_to(9, true) {
        assert_eq!(w_one(&mu), w_by_hooks(&mu), "{mu:?}");
    }
}

#[test]
fn w_two_symmetric_and_reduces() {
    for total in 0..=8 {
        for a in 0..=total {
            for mu in enumerate(a) {
                for nu in enumerate(total - a) {
                    assert_eq!(w_two(&mu, &nu), w_two(&nu, &mu), "{mu:?} {nu:?}");
                }
            }
        }
        for mu in enumerate(total) {
            assert_eq!(w_two(&mu, &Partition::empty()), w_one(&mu));
        }
    }
    // W_{(1),(1)} = 1 + 1/[1]²
    let one = Partition::row(1);
    let q1 = QRat::from_poly(quantum(1));
    assert_eq!(w_two(&one, &one), &QRat::one() + &(&q1 * &q1).inv().unwrap());
}

#[test]
fn single_skew_reproduces_w_one() {
    for mu in enumerate_up_to(7, true) {
        let sign = if mu.size() % 2 == 0 { 1 } else { -1 };
        let pre = QRat::x_pow(mu.kappa() as i32).scale(&BigRational::from_integer(sign.into()));
        assert_eq!(&pre * &skew_schur_principal(&mu, &Partition::empty()), w_one(&mu), "{mu:?}");
    }
}

#[test]
fn skew_outside_containment_vanishes() {
    let mu: Partition = "2,1".parse().unwrap();
    assert!(skew_schur_principal(&mu, &Partition::row(3)).is_zero());
    assert!(skew_schur_principal(&mu, &mu).is_one());
}

#[test]
fn complete_homogeneous_counts_odd_multisets() {
    for k in 0..=6 {
        let counts = h_by_summation(k, 40);
        let series = h_principal(k as i32).x_series(40);
        for (e, c) in &series {
            assert!(*e >= 0, "h_{k} has x^{e}");
            assert_eq!(*c, BigRational::from_integer(counts[*e as usize].into()), "h_{k} [x^{e}]");
        }
        for (m, &c) in counts.iter().enumerate() {
            if c != 0 {
                assert!(series.iter().any(|(e, _)| *e == m as i32), "h_{k} missing x^{m}");
            }
        }
    }
    assert!(h_principal(-1).is_zero());
}

#[test]
fn w_expansion_leading_term() {
    for mu in enumerate_up_to(8, false) {
        let s = w_series(&mu, 2 - mu.size() as i32).unwrap();
        let n = mu.size() as i32;
        assert_eq!(s.valuation(), Some(-n), "{mu:?}");
        let lead = s.leading().unwrap();
        assert_eq!(lead.term_count(), 1);
        let c = &lead.coeff(0) * &GaussianRational::i_pow(n as i64);
        assert!(c.is_real() && !c.is_zero(), "{mu:?}");
        // 1/∏h · λ^{-n} · i^{-n}
        let hooks: usize = mu.hook_lengths().iter().product();
        assert_eq!(c.re, BigRational::new(1.into(), hooks.into()));
    }
}
