//! Irreducible characters of symmetric groups by the Murnaghan–Nakayama rule.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::partitions::{enumerate, Partition};
use crate::report::Report;

type Memo = RwLock<HashMap<(Partition, Partition), i64>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// `χ_ν(C_μ)`, memoized on (remaining shape, remaining class).
pub fn chi(nu: &Partition, mu: &Partition) -> Result<i64, Error> {
    check_sizes(nu, mu)?;
    Ok(chi_memo(nu, mu))
}

/// Same value as [`chi`] without touching the shared cache.
pub fn chi_uncached(nu: &Partition, mu: &Partition) -> Result<i64, Error> {
    check_sizes(nu, mu)?;
    Ok(mn(nu, mu.parts(), &mut |s, rest| chi_uncached(s, &Partition::from_unsorted(rest.to_vec())).unwrap()))
}

fn check_sizes(nu: &Partition, mu: &Partition) -> Result<(), Error> {
    if nu.size() != mu.size() {
        return Err(Error::SizeMismatch(nu.size(), mu.size()));
    }
    Ok(())
}

fn chi_memo(nu: &Partition, mu: &Partition) -> i64 {
    if mu.is_empty() {
        return 1;
    }
    let key = (nu.clone(), mu.clone());
    if let Some(&v) = memo().read().unwrap().get(&key) {
        return v;
    }
    let v = mn(nu, mu.parts(), &mut |s, rest| chi_memo(s, &Partition::from_unsorted(rest.to_vec())));
    memo().write().unwrap().insert(key, v);
    v
}

/// One Murnaghan–Nakayama step: strip the largest class part as a border
/// strip in every possible way, recursing on the remaining class.
fn mn(nu: &Partition, class: &[usize], rec: &mut dyn FnMut(&Partition, &[usize]) -> i64) -> i64 {
    let Some((&k, rest)) = class.split_first() else {
        return if nu.is_empty() { 1 } else { 0 };
    };
    let l = nu.len();
    // beta numbers ν_i + (ℓ − 1 − i), strictly decreasing
    let beta: Vec<usize> = nu.parts().iter().enumerate().map(|(i, &p)| p + l - 1 - i).collect();
    let mut total = 0i64;
    for (idx, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let target = b - k;
        let between = beta.iter().filter(|&&c| c > target && c < b).count();
        let mut nb = beta.clone();
        nb[idx] = target;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let n = nb.len();
        let shape = Partition::from_unsorted(nb.iter().enumerate().map(|(i, &c)| c - (n - 1 - i)).collect());
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * rec(&shape, rest);
    }
    total
}

/// Full table for one `n`: rows are irreducibles `ν`, columns classes `μ`, both in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    pub n: usize,
    pub partitions: Vec<Partition>,
    pub values: Vec<Vec<i64>>,
    index: HashMap<Partition, usize>,
}

impl CharacterTable {
    fn build(n: usize) -> Self {
        let partitions = enumerate(n);
        let values = partitions.iter().map(|nu| partitions.iter().map(|mu| chi_memo(nu, mu)).collect()).collect();
        let index = partitions.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        CharacterTable { n, partitions, values, index }
    }

    pub fn get(&self, nu: &Partition, mu: &Partition) -> Option<i64> {
        Some(self.values[*self.index.get(nu)?][*self.index.get(mu)?])
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }
}

/// Cached table for `S_n`.
pub fn character_table(n: usize) -> Arc<CharacterTable> {
    static TABLES: OnceLock<RwLock<HashMap<usize, Arc<CharacterTable>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(Default::default);
    if let Some(t) = tables.read().unwrap().get(&n) {
        return t.clone();
    }
    let t = Arc::new(CharacterTable::build(n));
    tables.write().unwrap().entry(n).or_insert(t).clone()
}

/// Check `Σ_σ χ_ν(C_σ)χ_ρ(C_σ)/z_σ = δ_{νρ}` for every pair of irreducibles of `S_n`.
pub fn verify_orthogonality(n: usize) -> Report {
    let mut report = Report::new(format!("orthogonality n={n}"));
    let t = character_table(n);
    let inv_z: Vec<BigRational> = t
        .partitions
        .iter()
        .map(|s| BigRational::new(BigInt::one(), BigInt::from(s.z())))
        .collect();
    for (a, nu) in t.partitions.iter().enumerate() {
        for (b, rho) in t.partitions.iter().enumerate().skip(a) {
            let mut s = BigRational::zero();
            for (c, w) in inv_z.iter().enumerate() {
                s += w * BigInt::from(t.values[a][c] * t.values[b][c]);
            }
            let expected = if a == b { BigRational::one() } else { BigRational::zero() };
            report.check(s == expected, format!("({nu:?}, {rho:?})"), &expected, &s);
        }
    }
    report
}

/// `χ_ν(C_{1^n}) = n!/∏ hooks` for every `ν ⊢ n`.
pub fn verify_hook_dimension(n: usize) -> Report {
    let mut report = Report::new(format!("hook dimension n={n}"));
    let t = character_table(n);
    let identity = Partition::ones(n);
    let n_fact = (1..=n).fold(BigInt::one(), |acc, k| acc * k);
    for nu in &t.partitions {
        let hooks = nu.hook_lengths().iter().fold(BigInt::one(), |acc, &h| acc * h);
        let expected = BigRational::new(n_fact.clone(), hooks);
        let actual = BigRational::from_integer(t.get(nu, &identity).unwrap().into());
        report.check(actual == expected, format!("{nu:?}"), &expected, &actual);
    }
    report
}
