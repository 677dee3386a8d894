//! Double Hurwitz numbers from the Burnside character formula, with a
//! brute-force factorization count as an independent oracle.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::{GaussianRational, LambdaSeries, TauPoly};
use crate::characters::character_table;
use crate::error::Error;
use crate::genfun::{connect_entry, Monomial, PartitionMap};
use crate::partitions::{enumerate, Partition};
use crate::report::Report;

/// Limits on the exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BruteForceBounds {
    pub max_degree: usize,
    pub max_r: usize,
}

impl Default for BruteForceBounds {
    fn default() -> Self {
        BruteForceBounds { max_degree: 5, max_r: 5 }
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `Φ•_{ν,μ}(λ) = Σ_η χ_η(C_ν)χ_η(C_μ)/(z_ν z_μ) · e^{κ_η λ/2}` through `λ^order`.
pub fn phi(nu: &Partition, mu: &Partition, order: i32) -> Result<LambdaSeries, Error> {
    phi_coeffs(nu, mu, order).map(|c| {
        let coeffs = c.into_iter().map(|r| TauPoly::constant(GaussianRational::real(r))).collect();
        LambdaSeries::from_coeffs(0, coeffs, order)
    })
}

fn phi_coeffs(nu: &Partition, mu: &Partition, order: i32) -> Result<Vec<BigRational>, Error> {
    if nu.size() != mu.size() {
        return Err(Error::SizeMismatch(nu.size(), mu.size()));
    }
    let n = (order + 1).max(0) as usize;
    let table = character_table(nu.size());
    let (a, b) = (table.index_of(nu).unwrap(), table.index_of(mu).unwrap());
    let zz = BigRational::from_integer(BigInt::from(nu.z()) * BigInt::from(mu.z()));
    let mut out = vec![BigRational::zero(); n];
    for (r, eta) in table.partitions.iter().enumerate() {
        let w = table.values[r][a] * table.values[r][b];
        if w == 0 {
            continue;
        }
        let half_kappa = BigRational::from_integer(BigInt::from(eta.kappa() / 2));
        let mut term = BigRational::from_integer(BigInt::from(w)) / &zz;
        for (k, slot) in out.iter_mut().enumerate() {
            if k > 0 {
                term = term * &half_kappa / BigInt::from(k);
            }
            *slot += &term;
        }
    }
    Ok(out)
}

fn branch_count(chi: i64, nu: &Partition, mu: &Partition) -> Result<usize, Error> {
    let r = -chi + nu.len() as i64 + mu.len() as i64;
    if r < 0 {
        return Err(Error::NegativeR(r));
    }
    Ok(r as usize)
}

/// `H•_{χ,ν,μ} = r!·[λ^r] Φ•_{ν,μ}` with `r = −χ + ℓ(ν) + ℓ(μ)`.
pub fn double_hurwitz(chi: i64, nu: &Partition, mu: &Partition) -> Result<BigRational, Error> {
    let r = branch_count(chi, nu, mu)?;
    let c = phi_coeffs(nu, mu, r as i32)?;
    Ok(&c[r] * factorial(r))
}

fn cycle_type(p: &[usize]) -> Partition {
    let mut seen = vec![false; p.len()];
    let mut parts = Vec::new();
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        parts.push(len);
    }
    Partition::from_unsorted(parts)
}

/// A permutation of `{0..d}` with cycle type `nu`, cycles on consecutive points.
fn representative(nu: &Partition) -> Vec<usize> {
    let mut p = Vec::with_capacity(nu.size());
    let mut start = 0;
    for &c in nu.parts() {
        for k in 0..c {
            p.push(start + (k + 1) % c);
        }
        start += c;
    }
    p
}

fn transpositions(d: usize) -> Vec<(usize, usize)> {
    (0..d).flat_map(|a| (a + 1..d).map(move |b| (a, b))).collect()
}

/// Component label of each point: the smallest point it is connected to.
fn merge_components(labels: &mut [usize], a: usize, b: usize) {
    let (la, lb) = (labels[a], labels[b]);
    if la == lb {
        return;
    }
    let (keep, drop) = (la.min(lb), la.max(lb));
    for l in labels.iter_mut() {
        if *l == drop {
            *l = keep;
        }
    }
}

/// Number of `(t₁,…,t_r)` with `α·t₁⋯t_r` of type `mu`, optionally requiring
/// `⟨α, t₁,…,t_r⟩` to act transitively.
///
/// Every tuple is counted; tuples are grouped by the state of their prefix
/// (partial product, orbit partition) so equal states are extended once.
fn count_tuples(alpha: &[usize], r: usize, mu: &Partition, connected: bool) -> u64 {
    let d = alpha.len();
    let ts = transpositions(d);
    let mut labels: Vec<usize> = (0..d).collect();
    if connected {
        for (i, &j) in alpha.iter().enumerate() {
            merge_components(&mut labels, i, j);
        }
    }
    let mut states: HashMap<(Vec<usize>, Vec<usize>), u64> = HashMap::new();
    states.insert((alpha.to_vec(), labels), 1);
    for _ in 0..r {
        let next: HashMap<(Vec<usize>, Vec<usize>), u64> = states
            .par_iter()
            .fold(HashMap::new, |mut acc: HashMap<(Vec<usize>, Vec<usize>), u64>, ((p, l), &n)| {
                for &(a, b) in &ts {
                    let mut p = p.clone();
                    p.swap(a, b);
                    let mut l = l.clone();
                    if connected {
                        merge_components(&mut l, a, b);
                    }
                    *acc.entry((p, l)).or_default() += n;
                }
                acc
            })
            .reduce(HashMap::new, |mut x, y| {
                for (k, v) in y {
                    *x.entry(k).or_default() += v;
                }
                x
            });
        states = next;
    }
    states
        .into_iter()
        .filter(|((p, l), _)| cycle_type(p) == *mu && (!connected || l.iter().all(|&x| x == 0)))
        .map(|(_, n)| n)
        .sum()
}

fn check_bounds(d: usize, r: usize, bounds: BruteForceBounds) -> Result<(), Error> {
    if d > bounds.max_degree || r > bounds.max_r {
        return Err(Error::TooLarge(format!(
            "d = {d}, r = {r} exceeds d ≤ {}, r ≤ {}",
            bounds.max_degree, bounds.max_r
        )));
    }
    Ok(())
}

/// `(1/d!)·#{(α, t₁,…,t_r) : α ∈ C_ν, α·t₁⋯t_r ∈ C_μ}` by exhaustive enumeration.
///
/// One representative `α` is enumerated and weighted by the class size `d!/z_ν`.
pub fn brute_force_double(chi: i64, nu: &Partition, mu: &Partition, bounds: BruteForceBounds) -> Result<BigRational, Error> {
    if nu.size() != mu.size() {
        return Err(Error::SizeMismatch(nu.size(), mu.size()));
    }
    let r = branch_count(chi, nu, mu)?;
    check_bounds(nu.size(), r, bounds)?;
    let n = count_tuples(&representative(nu), r, mu, false);
    Ok(BigRational::new(BigInt::from(n), BigInt::from(nu.z())))
}

/// Connected single Hurwitz number `H_{g,μ}`, from the disconnected Burnside
/// family `{Φ•_{(1^d),σ}}` by the `log` transform in the p-variables.
pub fn connected_single(g: usize, mu: &Partition) -> Result<BigRational, Error> {
    if mu.is_empty() {
        return Err(Error::EmptyPartition);
    }
    let r = 2 * g + mu.size() + mu.len() - 2;
    let mut family = PartitionMap::new(mu.size());
    family.insert(Partition::empty(), LambdaSeries::one(r as i32));
    for (sigma, _) in mu.divisors() {
        family.insert(sigma.clone(), phi(&Partition::ones(sigma.size()), &sigma, r as i32)?);
    }
    let conn = connect_entry(&family, mu)?;
    Ok(conn.coeff(r as i32).coeff(0).re * factorial(r))
}

/// `H_{g,μ}` by enumerating transitive factorizations `t₁⋯t_r ∈ C_μ`.
pub fn brute_force_connected_single(g: usize, mu: &Partition, bounds: BruteForceBounds) -> Result<BigRational, Error> {
    if mu.is_empty() {
        return Err(Error::EmptyPartition);
    }
    let d = mu.size();
    let r = 2 * g + d + mu.len() - 2;
    check_bounds(d, r, bounds)?;
    let identity: Vec<usize> = (0..d).collect();
    let n = count_tuples(&identity, r, mu, true);
    Ok(BigRational::new(BigInt::from(n), factorial(d)))
}

/// Burnside values against brute-force counts: connected single numbers for
/// `1 ≤ |μ| ≤ max_degree`, `g ≤ max_g`, and disconnected double numbers for every
/// `|ν| = |μ| ≤ max_degree` and `r ≤ bounds.max_r`. Cases outside `bounds` are skipped.
pub fn verify_hurwitz_grid(max_degree: usize, max_g: usize, bounds: BruteForceBounds) -> Result<Report, Error> {
    let mut report = Report::new("hurwitz grid");
    for d in 1..=max_degree {
        let parts = enumerate(d);
        for mu in &parts {
            for g in 0..=max_g {
                let key = format!("H_{{{g},{mu:?}}}");
                match brute_force_connected_single(g, mu, bounds) {
                    Ok(brute) => {
                        let burnside = connected_single(g, mu)?;
                        report.check(burnside == brute, key, &brute, &burnside);
                    }
                    Err(Error::TooLarge(why)) => report.skip(key, why),
                    Err(e) => return Err(e),
                }
            }
            for nu in &parts {
                for r in 0..=bounds.max_r {
                    let chi = (nu.len() + mu.len()) as i64 - r as i64;
                    let brute = brute_force_double(chi, nu, mu, bounds)?;
                    let burnside = double_hurwitz(chi, nu, mu)?;
                    report.check(burnside == brute, format!("H•_{{{chi},{nu:?},{mu:?}}}"), &brute, &burnside);
                }
            }
        }
    }
    Ok(report)
}

fn binomial(n: usize, k: usize) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `Σ_σ Φ•_{ν,σ}(λ₁) z_σ Φ•_{σ,μ}(λ₂) = Φ•_{ν,μ}(λ₁+λ₂)` coefficientwise, plus `Φ•_{ν,μ}(0) = δ_{νμ}/z_ν`.
pub fn verify_phi_composition(d: usize, order: i32) -> Result<Report, Error> {
    let mut report = Report::new(format!("phi composition d={d}"));
    let parts = enumerate(d);
    let mut coeffs = Vec::with_capacity(parts.len());
    for nu in &parts {
        let row = parts.iter().map(|mu| phi_coeffs(nu, mu, order)).collect::<Result<Vec<_>, _>>()?;
        coeffs.push(row);
    }
    let n = (order + 1).max(0) as usize;
    for (i, nu) in parts.iter().enumerate() {
        for (j, mu) in parts.iter().enumerate() {
            let key = format!("({nu:?}, {mu:?})");
            if n > 0 {
                let expected = if i == j {
                    BigRational::new(BigInt::one(), BigInt::from(nu.z()))
                } else {
                    BigRational::zero()
                };
                report.check(coeffs[i][j][0] == expected, format!("{key} at λ=0"), &expected, &coeffs[i][j][0]);
            }
            for a in 0..n {
                for b in 0..n - a {
                    let mut lhs = BigRational::zero();
                    for (k, sigma) in parts.iter().enumerate() {
                        lhs += &coeffs[i][k][a] * &coeffs[k][j][b] * BigInt::from(sigma.z());
                    }
                    let rhs = &coeffs[i][j][a + b] * binomial(a + b, a);
                    report.check(lhs == rhs, format!("{key} [λ₁^{a} λ₂^{b}]"), &rhs, &lhs);
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn phi_small() {
        let one = phi(&p("1"), &p("1"), 6).unwrap();
        assert!(one.agrees_through(&LambdaSeries::one(6), 6));
        // cosh(λ)/2
        let c = phi_coeffs(&p("2"), &p("2"), 4).unwrap();
        assert_eq!(c, vec![rat(1, 2), rat(0, 1), rat(1, 4), rat(0, 1), rat(1, 48)]);
    }

    #[test]
    fn burnside_values() {
        assert_eq!(double_hurwitz(2, &p("1"), &p("1")).unwrap(), rat(1, 1));
        assert_eq!(double_hurwitz(0, &p("2"), &p("2")).unwrap(), rat(1, 2));
        assert_eq!(double_hurwitz(1, &p("2"), &p("2")).unwrap(), rat(0, 1));
        assert_eq!(double_hurwitz(5, &p("2"), &p("2")), Err(Error::NegativeR(-3)));
    }

    #[test]
    fn brute_force_values() {
        let b = BruteForceBounds::default();
        assert_eq!(brute_force_double(2, &p("1"), &p("1"), b).unwrap(), rat(1, 1));
        assert_eq!(brute_force_double(0, &p("2"), &p("2"), b).unwrap(), rat(1, 2));
        assert_eq!(brute_force_double(2, &p("1,1"), &p("1,1"), b).unwrap(), rat(1, 2));
        assert!(matches!(brute_force_double(0, &p("6"), &p("6"), b), Err(Error::TooLarge(_))));
    }

    #[test]
    fn connected_single_anchors() {
        assert_eq!(connected_single(0, &p("1")).unwrap(), rat(1, 1));
        assert_eq!(connected_single(0, &p("2")).unwrap(), rat(1, 2));
        assert_eq!(connected_single(0, &p("1,1")).unwrap(), rat(1, 2));
        let b = BruteForceBounds::default();
        assert_eq!(brute_force_connected_single(0, &p("1,1"), b).unwrap(), rat(1, 2));
    }

    #[test]
    fn grid_small() {
        let r = verify_hurwitz_grid(3, 1, BruteForceBounds::default()).unwrap();
        assert!(r.passed());
        assert!(!r.skipped.is_empty());
    }

    #[test]
    fn composition_small() {
        assert!(verify_phi_composition(2, 6).unwrap().passed());
    }
}
