//! `W_μ(q)`, principal specializations of (skew) Schur functions and `W_{μν}(q)`,
//! as exact rational functions of `x = q^{1/2}`.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{OnceLock, RwLock};

use num_rational::BigRational;
use num_traits::One;

use crate::algebra::{quantum, QRat, XPoly};
use crate::partitions::{enumerate, Partition};
use crate::report::Report;

struct Cache<K, V>(OnceLock<RwLock<HashMap<K, V>>>);

impl<K: Hash + Eq, V: Clone> Cache<K, V> {
    const fn new() -> Self {
        Cache(OnceLock::new())
    }

    fn get_or(&self, key: K, f: impl FnOnce() -> V) -> V {
        let map = self.0.get_or_init(Default::default);
        if let Some(v) = map.read().unwrap().get(&key) {
            return v.clone();
        }
        let v = f();
        map.write().unwrap().entry(key).or_insert(v).clone()
    }
}

/// `[m] = x^m − x^{−m}` as a rational function.
pub fn quantum_integer(m: i32) -> QRat {
    QRat::from_poly(quantum(m))
}

/// `W_μ(q) = q^{κ_μ/4} ∏_{i<j} [μᵢ−μⱼ+j−i]/[j−i] ∏ᵢ ∏_{v=1}^{μᵢ} 1/[v−i+ℓ]`.
pub fn w_one(mu: &Partition) -> QRat {
    static CACHE: Cache<Partition, QRat> = Cache::new();
    CACHE.get_or(mu.clone(), || {
        let l = mu.len() as i32;
        let parts: Vec<i32> = mu.parts().iter().map(|&p| p as i32).collect();
        let mut num = XPoly::x_pow((mu.kappa() / 2) as i32);
        let mut den = XPoly::one();
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                let d = (j - i) as i32;
                num = &num * &quantum(parts[i] - parts[j] + d);
                den = &den * &quantum(d);
            }
        }
        for (i, &p) in parts.iter().enumerate() {
            let i = i as i32 + 1;
            for v in 1..=p {
                den = &den * &quantum(v - i + l);
            }
        }
        QRat::new(num, den)
    })
}

/// `h_k(q^{−ρ}) = (−1)^k x^{k(1−k)/2} / ∏_{i=1}^k [i]`, the complete homogeneous
/// symmetric function at `x, x³, x⁵, …`; zero for negative `k`.
pub fn h_principal(k: i32) -> QRat {
    if k < 0 {
        return QRat::zero();
    }
    static CACHE: Cache<i32, QRat> = Cache::new();
    CACHE.get_or(k, || {
        let sign = if k % 2 == 0 { BigRational::one() } else { -BigRational::one() };
        let num = XPoly::monomial(sign, k * (1 - k) / 2);
        let den = (1..=k).fold(XPoly::one(), |acc, i| &acc * &quantum(i));
        QRat::new(num, den)
    })
}

/// `s_{μ/η}(q^{−ρ})` by the Jacobi–Trudi determinant `det(h_{μᵢ−ηⱼ−i+j})`.
pub fn skew_schur_principal(mu: &Partition, eta: &Partition) -> QRat {
    if !mu.contains(eta) {
        return QRat::zero();
    }
    static CACHE: Cache<(Partition, Partition), QRat> = Cache::new();
    CACHE.get_or((mu.clone(), eta.clone()), || {
        let n = mu.len();
        let m: Vec<Vec<QRat>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| h_principal(mu.part(i) as i32 - eta.part(j) as i32 - i as i32 + j as i32))
                    .collect()
            })
            .collect();
        determinant(m)
    })
}

/// Determinant by Gaussian elimination over the field of rational functions.
pub(crate) fn determinant(mut m: Vec<Vec<QRat>>) -> QRat {
    let n = m.len();
    let mut det = QRat::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return QRat::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det = &det * &p;
        let p_inv = p.inv().unwrap();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &p_inv;
            let (top, rest) = m.split_at_mut(r);
            for (dst, src) in rest[0].iter_mut().zip(&top[col]).skip(col) {
                *dst = &*dst - &(&f * src);
            }
        }
    }
    det
}

/// `W_{μν}(q) = (−1)^{|μ|+|ν|} q^{(κ_μ+κ_ν)/2} Σ_η s_{μ/η}(q^{−ρ}) s_{ν/η}(q^{−ρ})`.
pub fn w_two(mu: &Partition, nu: &Partition) -> QRat {
    static CACHE: Cache<(Partition, Partition), QRat> = Cache::new();
    CACHE.get_or((mu.clone(), nu.clone()), || {
        let (small, big) = if mu.size() <= nu.size() { (mu, nu) } else { (nu, mu) };
        let mut sum = QRat::zero();
        for eta in small.subdiagrams() {
            if !big.contains(&eta) {
                continue;
            }
            let t = &skew_schur_principal(mu, &eta) * &skew_schur_principal(nu, &eta);
            sum = &sum + &t;
        }
        let sign = if (mu.size() + nu.size()).is_multiple_of(2) { 1 } else { -1 };
        let pre = XPoly::monomial(BigRational::from_integer(sign.into()), (mu.kappa() + nu.kappa()) as i32);
        &sum * &QRat::from_poly(pre)
    })
}

/// Number of multisets of `k` odd positive integers with sum `m`, for `m ≤ upto`,
/// by direct enumeration: the `x^m` coefficient of `h_k(x, x³, x⁵, …)`.
pub fn h_by_summation(k: usize, upto: usize) -> Vec<u64> {
    fn walk(left: usize, min_odd: usize, sum: usize, upto: usize, counts: &mut [u64]) {
        if left == 0 {
            counts[sum] += 1;
            return;
        }
        let mut a = min_odd;
        while sum + a * left <= upto {
            walk(left - 1, a, sum + a, upto, counts);
            a += 2;
        }
    }
    let mut counts = vec![0; upto + 1];
    walk(k, 1, 0, upto, &mut counts);
    counts
}

/// Symmetry of `W_{μν}`, `W_{μ,∅} = W_μ` for `|μ|+|ν| ≤ max_total`, and the closed
/// form of `h_k(q^{−ρ})` against [`h_by_summation`] through `x^{x_order}` for `k ≤ max_k`.
pub fn verify_w_layer(max_total: usize, max_k: usize, x_order: usize) -> Report {
    let mut report = Report::new("w layer");
    for total in 0..=max_total {
        for a in 0..=total {
            for mu in enumerate(a) {
                for nu in enumerate(total - a) {
                    if mu > nu {
                        continue;
                    }
                    let (x, y) = (w_two(&mu, &nu), w_two(&nu, &mu));
                    report.check(x == y, format!("W({mu:?}, {nu:?}) symmetric"), &x, &y);
                }
            }
        }
        for mu in enumerate(total) {
            let (x, y) = (w_one(&mu), w_two(&mu, &Partition::empty()));
            report.check(x == y, format!("W({mu:?}, ()) = W{mu:?}"), &x, &y);
        }
    }
    for k in 0..=max_k {
        let counts = h_by_summation(k, x_order);
        let series: HashMap<i32, BigRational> = h_principal(k as i32).x_series(x_order as i32).into_iter().collect();
        for (m, &c) in counts.iter().enumerate() {
            let expected = BigRational::from_integer(c.into());
            let actual = series.get(&(m as i32)).cloned().unwrap_or_default();
            report.check(actual == expected, format!("h_{k} [x^{m}]"), &expected, &actual);
        }
        let below = series.keys().filter(|&&e| e < 0).count();
        report.check(below == 0, format!("h_{k} no negative powers"), 0, below);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn q(m: i32) -> QRat {
        quantum_integer(m)
    }

    #[test]
    fn w_one_small() {
        assert_eq!(w_one(&Partition::empty()), QRat::one());
        assert_eq!(w_one(&p("1")), q(1).inv().unwrap());
        assert_eq!(w_one(&p("2")), &QRat::x_pow(1) / &(&q(1) * &q(2)));
        assert_eq!(w_one(&p("1,1")), &QRat::x_pow(-1) / &(&q(1) * &q(2)));
    }

    #[test]
    fn h_small() {
        assert_eq!(h_principal(0), QRat::one());
        assert_eq!(h_principal(1), -q(1).inv().unwrap());
        assert_eq!(h_principal(2), &QRat::x_pow(-1) / &(&q(1) * &q(2)));
        // -1/[1] = x/(1 - x²)
        let geo = QRat::new(XPoly::x_pow(1), XPoly::from_terms([(0, int(1)), (2, int(-1))]));
        assert_eq!(h_principal(1), geo);
    }

    #[test]
    fn skew_small() {
        for mu in [p("2,1"), p("3"), Partition::empty()] {
            assert_eq!(skew_schur_principal(&mu, &mu), QRat::one());
        }
        assert_eq!(skew_schur_principal(&p("1"), &Partition::empty()), h_principal(1));
        assert_eq!(skew_schur_principal(&p("2"), &p("1")), h_principal(1));
        assert!(skew_schur_principal(&p("1"), &p("2")).is_zero());
    }

    #[test]
    fn odd_part_counts() {
        // x²: {1,1}; x⁴: {1,3}; x⁶: {1,5},{3,3}
        assert_eq!(h_by_summation(2, 6), vec![0, 0, 1, 0, 1, 0, 2]);
        assert_eq!(h_by_summation(0, 2), vec![1, 0, 0]);
    }

    #[test]
    fn w_layer_small() {
        assert!(verify_w_layer(4, 3, 12).passed());
    }

    #[test]
    fn w_two_small() {
        assert_eq!(w_two(&Partition::empty(), &Partition::empty()), QRat::one());
        assert_eq!(w_two(&p("1"), &Partition::empty()), w_one(&p("1")));
        let inv_sq = q(1).inv().unwrap().pow(2);
        assert_eq!(w_two(&p("1"), &p("1")), &QRat::one() + &inv_sq);
    }
}
