use hodge_core::algebra::{GaussianRational, LambdaSeries, TauPoly};
use hodge_core::hurwitz::{brute_force_double, double_hurwitz, phi, BruteForceBounds};
use hodge_core::one_partition::{r_bullet, r_connected_family};
use hodge_core::partitions::{enumerate, enumerate_up_to};
use hodge_core::two_partition::{r2_bullet, r2_connected_family};
use hodge_core::Partition;

fn odd_or_even(s: &LambdaSeries, parity: i32) -> bool {
    s.terms().all(|(k, _)| (k - parity).rem_euclid(2) == 0)
}

#[test]
fn connected_one_partition_shape() {
    let order = 8;
    let fam = r_connected_family(5, order).unwrap();
    for mu in enumerate_up_to(5, false) {
        let r = fam.get(&mu).unwrap();
        let l = mu.len() as i32;
        let n = mu.size() as i32;
        assert!(odd_or_even(r, l), "{mu:?} parity");
        assert_eq!(r.valuation(), Some(l - 2), "{mu:?} valuation");
        let rot = GaussianRational::i_pow((n + l) as i64);
        for (k, c) in r.terms() {
            let g = (k - l + 2) / 2;
            assert_eq!(c.valuation(), Some(l - 1), "{mu:?} g={g} lowest τ power");
            let top = c.degree().unwrap();
            // H_{g,(1)} = 0 for g ≥ 1, so the top coefficient drops out there
            if n == 1 {
                assert!(top <= 2 * g - 2 + n + l);
            } else {
                assert_eq!(top, 2 * g - 2 + n + l, "{mu:?} g={g} top τ power");
            }
            assert!(c.terms().all(|(_, a)| (a * &rot).is_real()), "{mu:?} g={g} phase");
        }
    }
}

#[test]
fn single_box_is_tau_free() {
    let r = r_bullet(&Partition::row(1), 9).unwrap();
    for (_, c) in r.terms() {
        assert_eq!(c.degree(), Some(0));
    }
    // i/[1] = 1/(2 sin(λ/2))
    assert_eq!(r.coeff(-1), TauPoly::one());
    assert_eq!(r.coeff(1).coeff(0).re, num_rational::BigRational::new(1.into(), 24.into()));
}

#[test]
fn phi_symmetric_with_parity() {
    for d in 1..=4 {
        let parts = enumerate(d);
        for nu in &parts {
            for mu in &parts {
                let a = phi(nu, mu, 8).unwrap();
                assert_eq!(a, phi(mu, nu, 8).unwrap());
                // κ_{η'} = −κ_η, so only the λ^k with k ≡ ℓ(ν)+ℓ(μ) mod 2 survive
                let parity = (nu.len() + mu.len()) as i32;
                assert!(odd_or_even(&a, parity), "{nu:?} {mu:?}");
            }
        }
    }
}

#[test]
fn double_hurwitz_agrees_with_enumeration() {
    let bounds = BruteForceBounds::default();
    for d in 1..=4 {
        for nu in enumerate(d) {
            for mu in enumerate(d) {
                let base = nu.len() as i64 + mu.len() as i64;
                for r in 0..=4i64 {
                    let chi = base - r;
                    assert_eq!(
                        double_hurwitz(chi, &nu, &mu).unwrap(),
                        brute_force_double(chi, &nu, &mu, bounds).unwrap(),
                        "χ={chi} {nu:?} {mu:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn connected_pair_shape() {
    let order = 6;
    let fam = r2_connected_family(4, order).unwrap();
    for ((plus, minus), r) in &fam.entries {
        let n = (plus.len() + minus.len()) as i32;
        assert!(odd_or_even(r, n), "{plus:?} {minus:?}");
        assert!(r.valuation().unwrap() >= n - 2, "{plus:?} {minus:?}");
        assert!(!r.coeff(n - 2).is_zero());
    }
}

#[test]
fn pair_series_with_empty_slot() {
    for mu in enumerate_up_to(4, false) {
        let n = mu.size() as i64;
        let one = r_bullet(&mu, 5).unwrap();
        let pair = r2_bullet(&mu, &Partition::empty(), 5).unwrap().scale_gauss(&GaussianRational::i_pow(n));
        assert!(one.first_difference(&pair).is_none(), "{mu:?}");
        let swapped = r2_bullet(&Partition::empty(), &mu, 5).unwrap();
        let inverted = pair.scale_gauss(&GaussianRational::i_pow(-n)).map_coeffs(TauPoly::invert_tau);
        assert!(swapped.first_difference(&inverted).is_none(), "{mu:?}");
    }
}
