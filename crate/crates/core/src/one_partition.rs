//! The character-sum series `R•_μ(λ;τ)`, its connected version, closed-form
//! limits (genus 0, `τ = 0`, `λ_g`, ELSV) and the structural equations.

use std::collections::{BTreeMap, HashMap};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::algebra::{qrat_to_series, GaussianRational, LambdaSeries, TauPoly};
use crate::characters::character_table;
use crate::error::Error;
use crate::genfun::{connect, connect_entry, cutjoin_apply, Monomial, PartitionMap};
use crate::hurwitz::{connected_single, phi};
use crate::partitions::{enumerate, enumerate_up_to, Partition};
use crate::qschur::{quantum_integer, w_one};
use crate::report::Report;

type SeriesCache = RwLock<HashMap<(Partition, i32), LambdaSeries>>;

fn cached(cache: &'static OnceLock<SeriesCache>, key: (Partition, i32), f: impl FnOnce() -> Result<LambdaSeries, Error>) -> Result<LambdaSeries, Error> {
    let map = cache.get_or_init(Default::default);
    if let Some(v) = map.read().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let v = f()?;
    map.write().unwrap().insert(key, v.clone());
    Ok(v)
}

pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn gauss(r: BigRational) -> GaussianRational {
    GaussianRational::real(r)
}

/// `λ`-expansion of `W_ν(q)` through `λ^order`.
pub fn w_series(nu: &Partition, order: i32) -> Result<LambdaSeries, Error> {
    static CACHE: OnceLock<SeriesCache> = OnceLock::new();
    cached(&CACHE, (nu.clone(), order), || qrat_to_series(&w_one(nu), order))
}

/// `exp(c·τλ)` through `λ^order`.
pub(crate) fn exp_tau_lambda(c: &GaussianRational, tau_exp: i32, order: i32) -> LambdaSeries {
    let n = (order + 1).max(0) as usize;
    let mut coeffs = Vec::with_capacity(n);
    let mut term = GaussianRational::one();
    for k in 0..n {
        if k > 0 {
            term = (&term * c).scale(&rat(1, k as i64));
        }
        coeffs.push(TauPoly::monomial(term.clone(), tau_exp * k as i32));
    }
    LambdaSeries::from_coeffs(0, coeffs, order)
}

/// `R•_μ(λ;τ) = Σ_{|ν|=|μ|} χ_ν(C_μ)/z_μ · e^{iτκ_ν λ/2} · i^{|μ|} W_ν(q)` through `λ^order`.
pub fn r_bullet(mu: &Partition, order: i32) -> Result<LambdaSeries, Error> {
    static CACHE: OnceLock<SeriesCache> = OnceLock::new();
    cached(&CACHE, (mu.clone(), order), || {
        let n = mu.size();
        if n == 0 {
            return Ok(LambdaSeries::one(order));
        }
        let table = character_table(n);
        let col = table.index_of(mu).unwrap();
        let pre = GaussianRational::i_pow(n as i64).scale(&rat(1, mu.z() as i64));
        // terms sharing κ_ν share the exponential factor
        let mut by_kappa: BTreeMap<i64, LambdaSeries> = BTreeMap::new();
        for (row, nu) in table.partitions.iter().enumerate() {
            let chi = table.values[row][col];
            if chi == 0 {
                continue;
            }
            let w = w_series(nu, order)?.scale_rat(&BigRational::from_integer(chi.into()));
            let k = nu.kappa();
            let acc = match by_kappa.remove(&k) {
                None => w,
                Some(s) => &s + &w,
            };
            by_kappa.insert(k, acc);
        }
        let mut total = LambdaSeries::zero(order);
        for (k, w) in by_kappa {
            let e = exp_tau_lambda(&GaussianRational::imag(rat(k, 2)), 1, order + n as i32);
            total = &total + &(&e * &w);
        }
        Ok(total.scale_gauss(&pre).truncate(order))
    })
}

/// `{ν ↦ R•_ν}` for `|ν| ≤ max_size`, with `∅ ↦ 1`.
pub fn r_bullet_family(max_size: usize, order: i32) -> Result<PartitionMap, Error> {
    let parts = enumerate_up_to(max_size, true);
    let vals = parts.par_iter().map(|nu| r_bullet(nu, order)).collect::<Result<Vec<_>, _>>()?;
    let mut map = PartitionMap::new(max_size);
    for (nu, v) in parts.into_iter().zip(vals) {
        map.insert(nu, v);
    }
    Ok(map)
}

/// Connected `R_μ`: the `p_μ` coefficient of `log R•` through `λ^order`.
pub fn r_connected(mu: &Partition, order: i32) -> Result<LambdaSeries, Error> {
    if mu.is_empty() {
        return Err(Error::EmptyPartition);
    }
    let mut margin = mu.len() as i32;
    loop {
        let mut family = PartitionMap::new(mu.size());
        family.insert(Partition::empty(), LambdaSeries::one(order + margin));
        for (d, _) in mu.divisors() {
            family.insert(d.clone(), r_bullet(&d, order + margin)?);
        }
        let r = connect_entry(&family, mu)?;
        if r.order() >= order {
            return Ok(r.truncate(order));
        }
        margin += 2;
    }
}

/// Connected `R_μ` for every `1 ≤ |μ| ≤ max_size`, each through `λ^order`.
pub fn r_connected_family(max_size: usize, order: i32) -> Result<PartitionMap, Error> {
    let mut margin = max_size as i32;
    loop {
        let conn = connect(&r_bullet_family(max_size, order + margin)?)?;
        if conn.entries.values().all(|s| s.order() >= order) {
            let mut out = PartitionMap::new(max_size);
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

fn rat_pow(base: &BigRational, e: i64) -> BigRational {
    let p = num_traits::pow(base.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

/// Genus-0 value `G_{0,μ}(τ) = −i^{|μ|+ℓ}(τ(τ+1))^{ℓ−1}/|Aut μ| · ∏ᵢ∏_{a=1}^{μᵢ−1}(μᵢτ+a)/(μᵢ−1)! · |μ|^{ℓ−3}`.
pub fn g0_oracle(mu: &Partition) -> Result<TauPoly, Error> {
    if mu.is_empty() {
        return Err(Error::EmptyPartition);
    }
    let l = mu.len();
    let size = mu.size() as i64;
    let g = |r: BigRational| GaussianRational::real(r);
    let tau_tau1 = TauPoly::from_terms([(1, g(rat(1, 1))), (2, g(rat(1, 1)))]);
    let mut p = tau_tau1.pow(l as u32 - 1);
    for &m in mu.parts() {
        for a in 1..m {
            p = &p * &TauPoly::from_terms([(0, g(rat(a as i64, 1))), (1, g(rat(m as i64, 1)))]);
        }
        p = p.scale_rat(&BigRational::new(BigInt::one(), factorial(m - 1)));
    }
    let scalar = rat_pow(&rat(size, 1), l as i64 - 3) / BigInt::from(mu.aut_order());
    let pre = -GaussianRational::i_pow((mu.size() + l) as i64);
    Ok(p.scale_rat(&scalar).scale(&pre))
}

/// `[λ^{ℓ(μ)−2}] R_μ = G_{0,μ}` for `1 ≤ |μ| ≤ max_size`; lower coefficients must vanish.
pub fn verify_genus0(max_size: usize, order: i32) -> Result<Report, Error> {
    let mut report = Report::new("mv genus 0");
    let fam = r_connected_family(max_size, order.max(0))?;
    for mu in enumerate_up_to(max_size, false) {
        let k = mu.len() as i32 - 2;
        let key = format!("{mu:?}");
        if order < k {
            report.skip(key, "insufficient order");
            continue;
        }
        let r = fam.get(&mu).unwrap();
        let v = r.valuation().unwrap_or(i32::MAX);
        report.check(v >= k, format!("{key} valuation"), format!("≥ {k}"), v);
        report.check_tau(key, Some(k), &g0_oracle(&mu)?, &r.coeff(k));
    }
    Ok(report)
}

/// Bernoulli numbers `B_0..=B_n` (`B_1 = −1/2`).
pub fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        if m == 0 {
            b.push(BigRational::one());
            continue;
        }
        let mut s = BigRational::zero();
        let mut binom = BigInt::one(); // C(m+1, k)
        for (k, bk) in b.iter().enumerate() {
            s += bk * &binom;
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-s / BigInt::from(m + 1));
    }
    b
}

/// `b_g = (2^{2g−1}−1)/2^{2g−1} · |B_{2g}|/(2g)!`, with `b_0 = 1`.
pub fn b_g_closed_form(g: usize) -> BigRational {
    if g == 0 {
        return BigRational::one();
    }
    let b = bernoulli_numbers(2 * g).pop().unwrap().abs();
    let p = BigInt::one() << (2 * g - 1);
    BigRational::new(&p - 1, p) * b / factorial(2 * g)
}

/// `(b_g from [λ^{2g−1}] R_{(1)}, b_g from Bernoulli numbers)` for `g ≤ max_g`.
pub fn extract_bg(max_g: usize) -> Result<Vec<(BigRational, BigRational)>, Error> {
    let r = r_connected(&Partition::row(1), 2 * max_g as i32 - 1)?;
    Ok((0..=max_g)
        .map(|g| (r.coeff(2 * g as i32 - 1).coeff(0).re, b_g_closed_form(g)))
        .collect())
}

/// [`extract_bg`] as a report.
pub fn verify_bg(max_g: usize) -> Result<Report, Error> {
    let mut report = Report::new("b_g agreement");
    for (g, (extracted, closed)) in extract_bg(max_g)?.into_iter().enumerate() {
        report.check(extracted == closed, format!("b_{g}"), &closed, &extracted);
    }
    Ok(report)
}

/// `∫_{M̄_{g,n}} ψ₁^{k₁}⋯ψₙ^{kₙ} λ_g = (2g+n−3 choose k)·b_g`; zero unless `Σk = 2g+n−3`.
pub fn lambda_g_integral(g: usize, ks: &[usize]) -> BigRational {
    let total: usize = ks.iter().sum();
    if total as i64 != 2 * g as i64 + ks.len() as i64 - 3 {
        return BigRational::zero();
    }
    let denom = ks.iter().fold(BigInt::one(), |acc, &k| acc * factorial(k));
    BigRational::new(factorial(total), denom) * b_g_closed_form(g)
}

fn compositions(total: usize, n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, n - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// The three sides of the `λ_g` limit for one partition, as series in `λ`.
#[derive(Clone, Debug)]
pub struct LambdaGComparison {
    /// `Σ_g λ^{2g}·[τ^{ℓ−1}][λ^{2g−2+ℓ}]R_μ` with the prefactor `−i^{|μ|+ℓ}/|Aut μ|` removed.
    pub extracted: LambdaSeries,
    /// `|μ|^{n−3}(|μ|λ/2)/sin(|μ|λ/2)`.
    pub sine_ratio: LambdaSeries,
    /// `Σ_g λ^{2g} Σ_k ∫ψ^kλ_g ∏μᵢ^{kᵢ}` from [`lambda_g_integral`].
    pub from_integrals: LambdaSeries,
}

/// Lowest-τ part of `R_μ` against the `λ_g` closed forms, through `λ^order` of `R_μ`.
pub fn extract_lambda_g(mu: &Partition, order: i32) -> Result<LambdaGComparison, Error> {
    if mu.is_empty() {
        return Err(Error::EmptyPartition);
    }
    let n = mu.len() as i32;
    let size = mu.size() as i64;
    let e_order = order - n + 2;
    let r = r_connected(mu, order)?;
    let pre = (-GaussianRational::i_pow(size + n as i64)).scale(&rat(1, mu.aut_order() as i64));
    let pre_inv = pre.inv().unwrap();
    let mut extracted = Vec::new();
    let mut from_integrals = Vec::new();
    for k in 0..=e_order.max(-1) {
        if k % 2 == 1 {
            extracted.push(TauPoly::zero());
            from_integrals.push(TauPoly::zero());
            continue;
        }
        let g = (k / 2) as usize;
        let c = r.coeff(k + n - 2).coeff(n - 1);
        extracted.push(TauPoly::constant(&c * &pre_inv));
        let dim = 2 * g as i64 + n as i64 - 3;
        let v = if dim < 0 {
            // unstable cases: the value making the closed form hold uniformly
            rat_pow(&rat(size, 1), n as i64 - 3)
        } else {
            let mut s = BigRational::zero();
            for ks in compositions(dim as usize, n as usize) {
                let mono = mu.parts().iter().zip(&ks).fold(BigRational::one(), |acc, (&m, &k)| {
                    acc * rat_pow(&rat(m as i64, 1), k as i64)
                });
                s += lambda_g_integral(g, &ks) * mono;
            }
            s
        };
        from_integrals.push(TauPoly::constant(gauss(v)));
    }
    // (mλ/2)/sin(mλ/2) = i·m·λ/[m]
    let inv_q = quantum_integer(size as i32).inv().unwrap();
    let sine_ratio = qrat_to_series(&inv_q, e_order - 1)?
        .shift(1)
        .scale_gauss(&GaussianRational::imag(rat_pow(&rat(size, 1), n as i64 - 2)));
    Ok(LambdaGComparison {
        extracted: LambdaSeries::from_coeffs(0, extracted, e_order),
        sine_ratio,
        from_integrals: LambdaSeries::from_coeffs(0, from_integrals, e_order),
    })
}

pub fn verify_lambda_g(max_size: usize, order: i32) -> Result<Report, Error> {
    let mut report = Report::new("lambda_g limit");
    let parts = enumerate_up_to(max_size, false);
    let comps = parts.par_iter().map(|mu| extract_lambda_g(mu, order)).collect::<Result<Vec<_>, _>>()?;
    for (mu, c) in parts.iter().zip(comps) {
        let upto = c.extracted.order();
        report.check_series(format!("{mu:?} extracted"), &c.sine_ratio, &c.extracted, upto);
        report.check_series(format!("{mu:?} integrals"), &c.sine_ratio, &c.from_integrals, upto);
    }
    let single = lambda_g_integral(1, &[0]);
    report.check(single == rat(1, 24), "∫_{M̄_{1,1}} λ₁", rat(1, 24), &single);
    Ok(report)
}

/// `(top-τ coefficient of [λ^{2g−2+ℓ}]R_μ divided by −(−1)^g i^{|μ|+ℓ}, H_{g,μ}/(2g−2+|μ|+ℓ)!)`.
///
/// The `(−1)^g` is the leading `τ`-coefficient of `Λ∨_g(−τ−1)Λ∨_g(τ)`.
pub fn extract_elsv(g: usize, mu: &Partition) -> Result<(GaussianRational, BigRational), Error> {
    if mu.is_empty() {
        return Err(Error::EmptyPartition);
    }
    let l = mu.len();
    let k = (2 * g + l) as i32 - 2;
    let top = (2 * g + mu.size() + l) as i32 - 2;
    let r = r_connected(mu, k)?;
    let coeff = r.coeff(k);
    let sign = if g.is_multiple_of(2) { -1 } else { 1 };
    let pre = GaussianRational::i_pow((mu.size() + l) as i64).scale(&rat(sign, 1));
    let lhs = &coeff.coeff(top) * &pre.inv().unwrap();
    let rhs = connected_single(g, mu)? / factorial(top as usize);
    Ok((lhs, rhs))
}

pub fn verify_elsv(max_size: usize, max_g: usize) -> Result<Report, Error> {
    let mut report = Report::new("elsv limit");
    for mu in enumerate_up_to(max_size, false) {
        for g in 0..=max_g {
            let (lhs, rhs) = extract_elsv(g, &mu)?;
            report.check(lhs == gauss(rhs.clone()), format!("{mu:?} g={g}"), &rhs, &lhs);
        }
    }
    Ok(report)
}

/// `R_μ(λ;0) = 0` for `ℓ(μ) ≥ 2`, `R_{(d)}(λ;0) = −i^{d+1}/(2d sin(dλ/2))`, and
/// agreement of that closed form with `−i^{d+1}/(λd²) Σ b_g (λd)^{2g}`.
pub fn verify_tau0(max_size: usize, order: i32) -> Result<Report, Error> {
    let mut report = Report::new("mv tau = 0");
    let fam = r_connected_family(max_size, order)?;
    let zero = BigRational::zero();
    for mu in enumerate_up_to(max_size, false) {
        let at0 = fam.get(&mu).unwrap().eval_tau(&zero);
        let key = format!("{mu:?}");
        if mu.len() >= 2 {
            report.check_series(key, &LambdaSeries::zero(order), &at0, order);
            continue;
        }
        let d = mu.size() as i64;
        // 1/(2 sin(dλ/2)) = i/[d]
        let sine_form = qrat_to_series(&quantum_integer(d as i32).inv().unwrap(), order)?
            .scale_gauss(&(-GaussianRational::i_pow(d + 2)).scale(&rat(1, d)));
        report.check_series(key.clone(), &sine_form, &at0, order);
        let mut coeffs = Vec::new();
        for k in -1..=order {
            if k % 2 == 0 {
                coeffs.push(TauPoly::zero());
                continue;
            }
            let g = ((k + 1) / 2) as usize;
            let v = b_g_closed_form(g) * rat_pow(&rat(d, 1), 2 * g as i64 - 2);
            coeffs.push(TauPoly::constant((-GaussianRational::i_pow(d + 1)).scale(&v)));
        }
        let bernoulli_form = LambdaSeries::from_coeffs(-1, coeffs, order);
        report.check_series(format!("{key} bernoulli form"), &sine_form, &bernoulli_form, order);
    }
    Ok(report)
}

/// `∂R/∂τ` against the cut-and-join right-hand side, entrywise through `λ^order`.
pub fn verify_cutjoin(max_size: usize, order: i32) -> Result<Report, Error> {
    let mut report = Report::new("cut-and-join");
    let fam = r_connected_family(max_size, order + 2)?;
    let rhs = cutjoin_apply(&fam);
    let zero = LambdaSeries::zero(order + 2);
    for (mu, r) in &fam.entries {
        let lhs = r.tau_derivative();
        report.check_series(format!("{mu:?}"), rhs.get(mu).unwrap_or(&zero), &lhs, order);
    }
    Ok(report)
}

/// `R•_μ(λ;τ) = Σ_ν R•_ν(λ;0) z_ν Φ•_{ν,μ}(iλτ)` for `1 ≤ |μ| ≤ max_size`.
pub fn verify_convolution(max_size: usize, order: i32) -> Result<Report, Error> {
    let mut report = Report::new("mv convolution");
    let i_tau = TauPoly::monomial(GaussianRational::i(), 1);
    let zero = BigRational::zero();
    for mu in enumerate_up_to(max_size, false) {
        let n = mu.size() as i32;
        let lhs = r_bullet(&mu, order)?;
        let mut rhs = LambdaSeries::zero(order);
        for nu in enumerate(mu.size()) {
            let at0 = r_bullet(&nu, order)?.eval_tau(&zero);
            let ph = phi(&nu, &mu, order + n)?.rescale(&i_tau)?.scale_rat(&rat(nu.z() as i64, 1));
            rhs = &rhs + &(&at0 * &ph);
        }
        report.check_series(format!("{mu:?}"), &rhs, &lhs, order);
    }
    Ok(report)
}
