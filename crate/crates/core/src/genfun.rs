//! Partition-indexed generating functions in the power-sum variables `p_k`.
//!
//! A map `{μ ↦ F_μ}` stands for `Σ F_μ p_μ` with `p_μ = p_{μ₁}⋯p_{μℓ}`, so
//! multiplying monomials merges partitions. Pair keys `(μ⁺, μ⁻)` index
//! monomials in two independent sets of variables.

use std::collections::{BTreeMap, BTreeSet};
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use crate::algebra::{GaussianRational, LambdaSeries, TauPoly};
use crate::error::Error;
use crate::partitions::Partition;

/// A monomial in commuting variables, graded by a positive degree.
pub trait Monomial: Clone + Ord + Hash + Send + Sync {
    fn unit() -> Self;
    fn degree(&self) -> usize;
    fn merge(&self, other: &Self) -> Self;
    /// Every factorization `self = a·b` with `a ≠ 1`, each distinct `a` once.
    fn divisors(&self) -> Vec<(Self, Self)>;

    fn is_unit(&self) -> bool {
        self.degree() == 0
    }
}

fn sub_multisets(mu: &Partition) -> Vec<(Partition, Partition)> {
    let mult = mu.multiplicities();
    let mut out = Vec::new();
    let mut counts = vec![0usize; mult.len()];
    loop {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (&(p, m), &c) in mult.iter().zip(&counts) {
            a.extend(std::iter::repeat_n(p, c));
            b.extend(std::iter::repeat_n(p, m - c));
        }
        out.push((Partition::from_unsorted(a), Partition::from_unsorted(b)));
        // odometer
        let mut i = 0;
        loop {
            if i == mult.len() {
                return out;
            }
            if counts[i] < mult[i].1 {
                counts[i] += 1;
                break;
            }
            counts[i] = 0;
            i += 1;
        }
    }
}

impl Monomial for Partition {
    fn unit() -> Self {
        Partition::empty()
    }

    fn degree(&self) -> usize {
        self.size()
    }

    fn merge(&self, other: &Self) -> Self {
        self.union(other)
    }

    fn divisors(&self) -> Vec<(Self, Self)> {
        sub_multisets(self).into_iter().filter(|(a, _)| !a.is_empty()).collect()
    }
}

impl Monomial for (Partition, Partition) {
    fn unit() -> Self {
        (Partition::empty(), Partition::empty())
    }

    fn degree(&self) -> usize {
        self.0.size() + self.1.size()
    }

    fn merge(&self, other: &Self) -> Self {
        (self.0.union(&other.0), self.1.union(&other.1))
    }

    fn divisors(&self) -> Vec<(Self, Self)> {
        let plus = sub_multisets(&self.0);
        let minus = sub_multisets(&self.1);
        let mut out = Vec::new();
        for (a, b) in &plus {
            for (c, d) in &minus {
                if a.is_empty() && c.is_empty() {
                    continue;
                }
                out.push(((a.clone(), c.clone()), (b.clone(), d.clone())));
            }
        }
        out
    }
}

/// Finite family `{key ↦ series}` with keys of degree at most `max_size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenMap<K: Monomial> {
    pub max_size: usize,
    pub entries: BTreeMap<K, LambdaSeries>,
}

pub type PartitionMap = GenMap<Partition>;
pub type PairMap = GenMap<(Partition, Partition)>;

impl<K: Monomial> GenMap<K> {
    pub fn new(max_size: usize) -> Self {
        GenMap { max_size, entries: BTreeMap::new() }
    }

    /// Insert, ignoring keys beyond `max_size`.
    pub fn insert(&mut self, key: K, value: LambdaSeries) {
        if key.degree() <= self.max_size {
            self.entries.insert(key, value);
        }
    }

    pub fn get(&self, key: &K) -> Option<&LambdaSeries> {
        self.entries.get(key)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn max_order(&self) -> i32 {
        self.entries.values().map(LambdaSeries::order).max().unwrap_or(0)
    }

    /// Keys reachable by merging existing nonunit keys, up to `max_size`, in order.
    fn closure(&self) -> Vec<K> {
        let base: Vec<K> = self.entries.keys().filter(|k| !k.is_unit()).cloned().collect();
        let mut seen: BTreeSet<K> = base.iter().cloned().collect();
        let mut frontier = base.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for f in &frontier {
                for b in &base {
                    let m = f.merge(b);
                    if m.degree() <= self.max_size && seen.insert(m.clone()) {
                        next.push(m);
                    }
                }
            }
            frontier = next;
        }
        seen.into_iter().collect()
    }
}

fn by_degree<K: Monomial>(keys: Vec<K>) -> BTreeMap<usize, Vec<K>> {
    let mut levels: BTreeMap<usize, Vec<K>> = BTreeMap::new();
    for k in keys {
        levels.entry(k.degree()).or_default().push(k);
    }
    levels
}

fn inv_int(n: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(n))
}

/// `exp` in the p-variables: the coefficients of `exp(Σ A_μ p_μ)`.
///
/// Computed degree by degree from `deg(μ)·B_μ = Σ_{a | μ} deg(a)·A_a·B_{μ/a}`,
/// which is the Euler operator applied to `B = exp(A)`.
pub fn disconnect<K: Monomial>(a: &GenMap<K>) -> Result<GenMap<K>, Error> {
    if a.entries.keys().any(Monomial::is_unit) {
        return Err(Error::EmptyKeyPresent);
    }
    let base_order = a.entries.values().map(LambdaSeries::order).min().unwrap_or(0);
    let mut b = GenMap::new(a.max_size);
    b.entries.insert(K::unit(), LambdaSeries::one(base_order));
    for (deg, keys) in by_degree(a.closure()) {
        let vals: Vec<(K, LambdaSeries)> = keys
            .into_par_iter()
            .map(|mu| {
                let mut acc: Option<LambdaSeries> = None;
                for (d, rest) in mu.divisors() {
                    let (Some(ad), Some(br)) = (a.entries.get(&d), b.entries.get(&rest)) else {
                        continue;
                    };
                    let t = (ad * br).scale_rat(&BigRational::from_integer(d.degree().into()));
                    acc = Some(match acc {
                        None => t,
                        Some(s) => &s + &t,
                    });
                }
                let v = acc.map(|s| s.scale_rat(&inv_int(deg))).unwrap_or_else(|| LambdaSeries::zero(base_order));
                (mu, v)
            })
            .collect();
        b.entries.extend(vals);
    }
    Ok(b)
}

fn check_unit_constant<K: Monomial>(b: &GenMap<K>) -> Result<(), Error> {
    match b.entries.get(&K::unit()) {
        Some(c) if c.first_difference(&LambdaSeries::one(c.order())).is_none() => Ok(()),
        _ => Err(Error::BadConstantTerm),
    }
}

/// Connected coefficients on a divisor-closed key set, degree by degree from
/// `A_μ = B_μ − (1/deg μ) Σ_{a | μ, a ≠ μ} deg(a)·A_a·B_{μ/a}`.
fn log_over<K: Monomial>(b: &GenMap<K>, keys: Vec<K>) -> BTreeMap<K, LambdaSeries> {
    let zero = LambdaSeries::zero(b.max_order());
    let mut a: BTreeMap<K, LambdaSeries> = BTreeMap::new();
    for (deg, keys) in by_degree(keys) {
        let vals: Vec<(K, LambdaSeries)> = keys
            .into_par_iter()
            .map(|mu| {
                let mut acc: Option<LambdaSeries> = None;
                for (d, rest) in mu.divisors() {
                    if rest.is_unit() {
                        continue;
                    }
                    let (Some(ad), Some(br)) = (a.get(&d), b.entries.get(&rest)) else {
                        continue;
                    };
                    let t = (ad * br).scale_rat(&BigRational::from_integer(d.degree().into()));
                    acc = Some(match acc {
                        None => t,
                        Some(s) => &s + &t,
                    });
                }
                let bm = b.entries.get(&mu).unwrap_or(&zero);
                let v = match acc {
                    None => bm.clone(),
                    Some(s) => bm - &s.scale_rat(&inv_int(deg)),
                };
                (mu, v)
            })
            .collect();
        a.extend(vals);
    }
    a
}

/// `log` in the p-variables; inverse of [`disconnect`].
pub fn connect<K: Monomial>(b: &GenMap<K>) -> Result<GenMap<K>, Error> {
    check_unit_constant(b)?;
    let entries = log_over(b, b.closure());
    Ok(GenMap { max_size: b.max_size, entries })
}

/// The single coefficient at `key` of `log B`; only divisors of `key` are touched.
pub fn connect_entry<K: Monomial>(b: &GenMap<K>, key: &K) -> Result<LambdaSeries, Error> {
    check_unit_constant(b)?;
    if key.is_unit() {
        return Err(Error::EmptyKeyPresent);
    }
    let keys = key.divisors().into_iter().map(|(d, _)| d).collect();
    Ok(log_over(b, keys).remove(key).unwrap())
}

fn accumulate(out: &mut BTreeMap<Partition, LambdaSeries>, key: Partition, value: LambdaSeries) {
    let v = match out.remove(&key) {
        None => value,
        Some(s) => &s + &value,
    };
    out.insert(key, v);
}

/// Right-hand side of the cut-and-join equation
/// `(iλ/2) Σ_{i,j} [(i+j) p_i p_j ∂F/∂p_{i+j} + ij p_{i+j}(∂F/∂p_i ∂F/∂p_j + ∂²F/∂p_i∂p_j)]`,
/// truncated to `|μ| ≤ max_size`.
pub fn cutjoin_apply(f: &PartitionMap) -> PartitionMap {
    let mut out: BTreeMap<Partition, LambdaSeries> = BTreeMap::new();
    let rat = |n: usize| BigRational::from_integer(BigInt::from(n));
    for (nu, fv) in &f.entries {
        for (k, m) in nu.multiplicities() {
            // cut a part k = i + j
            let rest = nu.remove_part(k).unwrap();
            for i in 1..k {
                let key = rest.union(&Partition::from_unsorted(vec![i, k - i]));
                accumulate(&mut out, key, fv.scale_rat(&rat(k * m)));
            }
        }
        // join two parts
        let mult = nu.multiplicities();
        for &(i, mi) in &mult {
            for &(j, mj) in &mult {
                let ways = if i == j { mi * (mi - 1) } else { mi * mj };
                if ways == 0 {
                    continue;
                }
                let rest = nu.remove_part(i).unwrap().remove_part(j).unwrap();
                let key = rest.union(&Partition::row(i + j));
                accumulate(&mut out, key, fv.scale_rat(&rat(i * j * ways)));
            }
        }
    }
    // quadratic term ∂F/∂p_i · ∂F/∂p_j
    for (n1, f1) in &f.entries {
        for (n2, f2) in &f.entries {
            if n1.size() + n2.size() > f.max_size {
                continue;
            }
            let prod = f1 * f2;
            for (i, mi) in n1.multiplicities() {
                for (j, mj) in n2.multiplicities() {
                    let key = n1
                        .remove_part(i)
                        .unwrap()
                        .union(&n2.remove_part(j).unwrap())
                        .union(&Partition::row(i + j));
                    accumulate(&mut out, key, prod.scale_rat(&rat(i * j * mi * mj)));
                }
            }
        }
    }
    let half_i_lambda = TauPoly::constant(GaussianRational::imag(inv_int(2)));
    let mut result = PartitionMap::new(f.max_size);
    for (k, v) in out {
        if k.size() <= f.max_size {
            let v = v.scale(&half_i_lambda).shift(1);
            result.insert(k, v);
        }
    }
    result
}
