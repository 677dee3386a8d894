//! The pair series `R•_{μ⁺,μ⁻}(λ;τ)` built from `W_{ν⁺ν⁻}(q)`, its connected
//! version, the genus-0 closed form and the structural checks.

use std::collections::{BTreeMap, HashMap};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::{qrat_to_series, GaussianRational, LambdaSeries, TauPoly};
use crate::characters::character_table;
use crate::error::Error;
use crate::genfun::{connect, connect_entry, Monomial, PairMap};
use crate::hurwitz::phi;
use crate::one_partition::{b_g_closed_form, exp_tau_lambda, gauss, r_bullet, rat};
use crate::partitions::{enumerate, enumerate_up_to, Partition};
use crate::qschur::w_two;
use crate::report::Report;

pub type Pair = (Partition, Partition);

type PairCache = RwLock<HashMap<(Pair, i32), LambdaSeries>>;

fn cached(cache: &'static OnceLock<PairCache>, key: (Pair, i32), f: impl FnOnce() -> Result<LambdaSeries, Error>) -> Result<LambdaSeries, Error> {
    let map = cache.get_or_init(Default::default);
    if let Some(v) = map.read().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let v = f()?;
    map.write().unwrap().insert(key, v.clone());
    Ok(v)
}

fn pair_key(plus: &Partition, minus: &Partition) -> String {
    format!("({plus:?}, {minus:?})")
}

/// All pairs `(μ⁺, μ⁻)` with `|μ⁺|+|μ⁻| ≤ max_size`, by total size.
pub fn pairs_up_to(max_size: usize, include_empty: bool) -> Vec<Pair> {
    let mut out = Vec::new();
    for total in 0..=max_size {
        for a in 0..=total {
            for plus in enumerate(a) {
                for minus in enumerate(total - a) {
                    if include_empty || total > 0 {
                        out.push((plus.clone(), minus));
                    }
                }
            }
        }
    }
    out
}

/// `λ`-expansion of `W_{ν⁺ν⁻}(q)` through `λ^order`.
pub fn w_two_series(plus: &Partition, minus: &Partition, order: i32) -> Result<LambdaSeries, Error> {
    static CACHE: OnceLock<PairCache> = OnceLock::new();
    cached(&CACHE, ((plus.clone(), minus.clone()), order), || qrat_to_series(&w_two(plus, minus), order))
}

/// `R•_{μ⁺,μ⁻} = Σ χ_{ν⁺}(C_{μ⁺})/z_{μ⁺} · χ_{ν⁻}(C_{μ⁻})/z_{μ⁻} · e^{i(κ_{ν⁺}τ+κ_{ν⁻}τ⁻¹)λ/2} W_{ν⁺ν⁻}(q)`
/// through `λ^order`.
pub fn r2_bullet(plus: &Partition, minus: &Partition, order: i32) -> Result<LambdaSeries, Error> {
    static CACHE: OnceLock<PairCache> = OnceLock::new();
    cached(&CACHE, ((plus.clone(), minus.clone()), order), || {
        let n = (plus.size() + minus.size()) as i32;
        if n == 0 {
            return Ok(LambdaSeries::one(order));
        }
        let tp = character_table(plus.size());
        let tm = character_table(minus.size());
        let cp = tp.index_of(plus).unwrap();
        let cm = tm.index_of(minus).unwrap();
        let mut terms = Vec::new();
        for (rp, np) in tp.partitions.iter().enumerate() {
            for (rm, nm) in tm.partitions.iter().enumerate() {
                let chi = tp.values[rp][cp] * tm.values[rm][cm];
                if chi != 0 {
                    terms.push((np, nm, chi));
                }
            }
        }
        let weighted = terms
            .par_iter()
            .map(|&(np, nm, chi)| {
                let w = w_two_series(np, nm, order)?.scale_rat(&BigRational::from_integer(chi.into()));
                Ok(((np.kappa(), nm.kappa()), w))
            })
            .collect::<Result<Vec<_>, Error>>()?;
        let mut by_kappa: BTreeMap<(i64, i64), LambdaSeries> = BTreeMap::new();
        for (k, w) in weighted {
            let acc = match by_kappa.remove(&k) {
                None => w,
                Some(s) => &s + &w,
            };
            by_kappa.insert(k, acc);
        }
        let mut total = LambdaSeries::zero(order);
        for ((kp, km), w) in by_kappa {
            let ep = exp_tau_lambda(&GaussianRational::imag(rat(kp, 2)), 1, order + n);
            let em = exp_tau_lambda(&GaussianRational::imag(rat(km, 2)), -1, order + n);
            total = &total + &(&(&ep * &em) * &w);
        }
        let z = BigInt::from(plus.z()) * BigInt::from(minus.z());
        Ok(total.scale_rat(&BigRational::new(BigInt::one(), z)).truncate(order))
    })
}

/// `{(ν⁺,ν⁻) ↦ R•_{ν⁺,ν⁻}}` for `|ν⁺|+|ν⁻| ≤ max_size`, with `(∅,∅) ↦ 1`.
pub fn r2_bullet_family(max_size: usize, order: i32) -> Result<PairMap, Error> {
    let keys = pairs_up_to(max_size, true);
    let vals = keys.par_iter().map(|(p, m)| r2_bullet(p, m, order)).collect::<Result<Vec<_>, _>>()?;
    let mut map = PairMap::new(max_size);
    for (k, v) in keys.into_iter().zip(vals) {
        map.insert(k, v);
    }
    Ok(map)
}

/// Connected `R_{μ⁺,μ⁻}`: the `p⁺_{μ⁺}p⁻_{μ⁻}` coefficient of `log R•` through `λ^order`.
pub fn r2_connected(plus: &Partition, minus: &Partition, order: i32) -> Result<LambdaSeries, Error> {
    if plus.is_empty() && minus.is_empty() {
        return Err(Error::BothEmpty);
    }
    let key = (plus.clone(), minus.clone());
    let mut margin = key.degree() as i32;
    loop {
        let mut family = PairMap::new(key.degree());
        family.insert(Pair::unit(), LambdaSeries::one(order + margin));
        for (d, _) in key.divisors() {
            let v = r2_bullet(&d.0, &d.1, order + margin)?;
            family.insert(d, v);
        }
        let r = connect_entry(&family, &key)?;
        if r.order() >= order {
            return Ok(r.truncate(order));
        }
        margin += 2;
    }
}

/// Connected `R_{μ⁺,μ⁻}` for every nonempty pair with `|μ⁺|+|μ⁻| ≤ max_size`.
pub fn r2_connected_family(max_size: usize, order: i32) -> Result<PairMap, Error> {
    let mut margin = max_size as i32;
    loop {
        let conn = connect(&r2_bullet_family(max_size, order + margin)?)?;
        if conn.entries.values().all(|s| s.order() >= order) {
            let mut out = PairMap::new(max_size);
            for (k, v) in conn.entries {
                out.insert(k, v.truncate(order));
            }
            return Ok(out);
        }
        margin += 2;
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn linear(c0: i64, c1: i64, tau_exp: i32) -> TauPoly {
    TauPoly::from_terms([(0, gauss(rat(c0, 1))), (tau_exp, gauss(rat(c1, 1)))])
}

/// Genus-0 value of the pair Hodge integral as a Laurent polynomial in `τ`:
/// `−i^{ℓ⁺+ℓ⁻}/(|Aut μ⁺||Aut μ⁻|) (τ(τ+1))^{ℓ⁺+ℓ⁻−1} ∏(μᵢ⁺τ+a)/(μᵢ⁺−1)! ∏(μⱼ⁻/τ+a)/(μⱼ⁻−1)!
/// · τ^{−2ℓ⁻} (|μ⁺|+|μ⁻|/τ)^{ℓ⁺+ℓ⁻−3}`.
pub fn g0_two_oracle(plus: &Partition, minus: &Partition) -> Result<TauPoly, Error> {
    if plus.is_empty() && minus.is_empty() {
        return Err(Error::BothEmpty);
    }
    let n = (plus.len() + minus.len()) as i32;
    let mut p = linear(1, 1, 1).shift(1).pow(n as u32 - 1); // (τ(τ+1))^{n−1}
    for &m in plus.parts() {
        for a in 1..m {
            p = &p * &linear(a as i64, m as i64, 1);
        }
        p = p.scale_rat(&BigRational::new(BigInt::one(), factorial(m - 1)));
    }
    for &m in minus.parts() {
        for a in 1..m {
            p = &p * &linear(a as i64, m as i64, -1);
        }
        p = p.scale_rat(&BigRational::new(BigInt::one(), factorial(m - 1)));
    }
    p = p.shift(-2 * minus.len() as i32);
    // |μ⁺| + |μ⁻|/τ = (|μ⁺|τ + |μ⁻|)/τ
    let (sp, sm) = (plus.size() as i64, minus.size() as i64);
    let weight = linear(sm, sp, 1).shift(-1);
    let e = n - 3;
    if e >= 0 {
        p = &p * &weight.pow(e as u32);
    } else if weight.is_unit() {
        p = &p * &weight.unit_inverse().unwrap().pow(e.unsigned_abs());
    } else {
        // only n = 2 with both sides nonempty; the product carries the factor
        p = p.div_exact(&weight).expect("genus-0 pair prefactor divisible by the weight");
    }
    let scalar = BigRational::new(BigInt::one(), BigInt::from(plus.aut_order()) * BigInt::from(minus.aut_order()));
    Ok(p.scale_rat(&scalar).scale(&-GaussianRational::i_pow(n as i64)))
}

/// `i^{|μ|}·R•_{μ,∅} = R•_μ` for `|μ| ≤ max_size`.
pub fn verify_reduction(max_size: usize, order: i32) -> Result<Report, Error> {
    let mut report = Report::new("two-partition reduction");
    let parts = enumerate_up_to(max_size, true);
    let rows = parts
        .par_iter()
        .map(|mu| {
            let lhs = r2_bullet(mu, &Partition::empty(), order)?.scale_gauss(&GaussianRational::i_pow(mu.size() as i64));
            Ok((lhs, r_bullet(mu, order)?))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    for (mu, (lhs, rhs)) in parts.iter().zip(rows) {
        report.check_series(format!("{mu:?}"), &rhs, &lhs, order);
    }
    Ok(report)
}

/// `R•_{μ⁻,μ⁺}(λ;τ) = R•_{μ⁺,μ⁻}(λ;τ⁻¹)` for `|μ⁺|+|μ⁻| ≤ max_size`.
pub fn verify_slot_symmetry(max_size: usize, order: i32) -> Result<Report, Error> {
    let mut report = Report::new("two-partition slot symmetry");
    for (plus, minus) in pairs_up_to(max_size, true) {
        let swapped = r2_bullet(&minus, &plus, order)?;
        let inverted = r2_bullet(&plus, &minus, order)?.map_coeffs(TauPoly::invert_tau);
        report.check_series(pair_key(&plus, &minus), &inverted, &swapped, order);
    }
    Ok(report)
}

/// `R•_{μ⁺,μ⁻}(λ;τ) = Σ R•_{ν⁺,ν⁻}(λ;τ₀) z_{ν⁺}Φ•_{ν⁺,μ⁺}(iλ(τ−τ₀)) z_{ν⁻}Φ•_{ν⁻,μ⁻}(iλ(τ⁻¹−τ₀⁻¹))`
/// for nonempty pairs with `|μ⁺|+|μ⁻| ≤ max_size`.
pub fn verify_convolution2(max_size: usize, order: i32, tau0: &BigRational) -> Result<Report, Error> {
    if tau0.is_zero() {
        return Err(Error::ZeroTau0);
    }
    let mut report = Report::new(format!("two-partition convolution tau0={tau0}"));
    let i = GaussianRational::i();
    let c_plus = TauPoly::from_terms([(1, i.clone()), (0, (-&i).scale(tau0))]);
    let c_minus = TauPoly::from_terms([(-1, i.clone()), (0, (-&i).scale(&tau0.recip()))]);
    let pairs = pairs_up_to(max_size, false);
    let rows = pairs
        .par_iter()
        .map(|(plus, minus)| -> Result<_, Error> {
            let n = (plus.size() + minus.size()) as i32;
            let lhs = r2_bullet(plus, minus, order)?;
            let mut rhs = LambdaSeries::zero(order);
            for nu_p in enumerate(plus.size()) {
                let ph_p = phi(&nu_p, plus, order + n)?.rescale(&c_plus)?.scale_rat(&rat(nu_p.z() as i64, 1));
                for nu_m in enumerate(minus.size()) {
                    let ph_m = phi(&nu_m, minus, order + n)?.rescale(&c_minus)?.scale_rat(&rat(nu_m.z() as i64, 1));
                    let at0 = r2_bullet(&nu_p, &nu_m, order)?.eval_tau(tau0);
                    rhs = &rhs + &(&at0 * &(&ph_p * &ph_m));
                }
            }
            Ok((lhs, rhs))
        })
        .collect::<Result<Vec<_>, _>>()?;
    for ((plus, minus), (lhs, rhs)) in pairs.iter().zip(rows) {
        report.check_series(pair_key(plus, minus), &rhs, &lhs, order);
    }
    Ok(report)
}

/// Connected pair series at `τ = −1`.
///
/// With `ℓ⁺+ℓ⁻ ≥ 2` every coefficient above `λ^{ℓ⁺+ℓ⁻−2}` vanishes and the
/// bottom one equals the genus-0 closed form at `τ = −1`. For `((d),∅)` and
/// `(∅,(d))` the series is odd, with `[λ^{2g−1}] = d^{2g} b_g · [λ^{−1}]` for `g ≤ 3`.
pub fn check_tau_minus_one(max_size: usize, order: i32) -> Result<Report, Error> {
    let mut report = Report::new("two-partition tau = -1");
    let minus_one = -BigRational::one();
    let fam = r2_connected_family(max_size, order)?;
    for ((plus, minus), r) in &fam.entries {
        let key = pair_key(plus, minus);
        let at = r.eval_tau(&minus_one);
        let n = (plus.len() + minus.len()) as i32;
        if n >= 2 {
            let bottom = n - 2;
            if bottom <= order {
                let g0 = TauPoly::constant(g0_two_oracle(plus, minus)?.eval(&minus_one));
                report.check_tau(key.clone(), Some(bottom), &g0, &at.coeff(bottom));
            }
            let expected = LambdaSeries::monomial(at.coeff(bottom), bottom, order);
            report.check_series(key, &expected, &at, order);
            continue;
        }
        let d = (plus.size() + minus.size()) as i64;
        for k in (0..=order).step_by(2) {
            report.check_tau(key.clone(), Some(k), &TauPoly::zero(), &at.coeff(k));
        }
        let base = at.coeff(-1);
        for g in 1..=3usize {
            let k = 2 * g as i32 - 1;
            if k > order {
                report.skip(format!("{key} g={g}"), "insufficient order");
                continue;
            }
            let factor = b_g_closed_form(g) * num_traits::pow(BigRational::from_integer(d.into()), 2 * g);
            report.check_tau(key.clone(), Some(k), &base.scale_rat(&factor), &at.coeff(k));
        }
    }
    Ok(report)
}

/// `[λ^{ℓ⁺+ℓ⁻−2}] R_{μ⁺,μ⁻} = G_{0,μ⁺,μ⁻}(τ)` with nothing below, for `|μ⁺|+|μ⁻| ≤ max_size`.
pub fn verify_genus0_two(max_size: usize, order: i32) -> Result<Report, Error> {
    let mut report = Report::new("two-partition genus 0");
    let fam = r2_connected_family(max_size, order.max(0))?;
    for ((plus, minus), r) in &fam.entries {
        let key = pair_key(plus, minus);
        let k = (plus.len() + minus.len()) as i32 - 2;
        if order < k {
            report.skip(key, "insufficient order");
            continue;
        }
        let v = r.valuation().unwrap_or(i32::MAX);
        report.check(v >= k, format!("{key} valuation"), format!("≥ {k}"), v);
        report.check_tau(key, Some(k), &g0_two_oracle(plus, minus)?, &r.coeff(k));
    }
    Ok(report)
}
