//! Integer partitions and their statistics.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// A weakly decreasing sequence of positive integers.
///
/// Ordered by size first, then reverse lexicographically, so `(3) < (2,1) < (1,1,1)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Validates that `parts` is weakly decreasing and positive.
    pub fn new(parts: Vec<usize>) -> Result<Self, Error> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    /// Sorts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// `(1^n)`.
    pub fn ones(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    /// `(n)`, or the empty partition for `n = 0`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-based), or 0 past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// `(part, multiplicity)` pairs, largest part first.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// `|Aut(μ)| = ∏ m_k!`.
    pub fn aut_order(&self) -> u64 {
        self.multiplicities().iter().map(|&(_, m)| factorial(m)).product()
    }

    /// Centralizer order `z_μ = |Aut(μ)|·∏μᵢ`.
    pub fn z(&self) -> u64 {
        self.aut_order() * self.parts.iter().map(|&p| p as u64).product::<u64>()
    }

    /// `κ_μ = |μ| + Σᵢ (μᵢ² − 2iμᵢ)`, always even.
    pub fn kappa(&self) -> i64 {
        let mut k = self.size() as i64;
        for (i, &p) in self.parts.iter().enumerate() {
            let (i, p) = ((i + 1) as i64, p as i64);
            k += p * p - 2 * i * p;
        }
        k
    }

    /// Sum of contents `j − i` over the cells of the diagram.
    pub fn content_sum(&self) -> i64 {
        let mut s = 0i64;
        for (i, &p) in self.parts.iter().enumerate() {
            for j in 0..p {
                s += j as i64 - i as i64;
            }
        }
        s
    }

    /// Sign of a permutation of cycle type μ.
    pub fn sign(&self) -> i64 {
        if (self.size() - self.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn conjugate(&self) -> Self {
        let width = self.part(0);
        let parts = (0..width).map(|j| self.parts.iter().take_while(|&&p| p > j).count()).collect();
        Partition { parts }
    }

    /// Hook length of every cell, row by row.
    pub fn hook_lengths(&self) -> Vec<usize> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.size());
        for (i, &p) in self.parts.iter().enumerate() {
            for j in 0..p {
                out.push(p - j + conj.parts[j] - i - 1);
            }
        }
        out
    }

    /// Cellwise containment `other ⊆ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    /// Multiset union of parts (the product `p_μ·p_ν = p_{μ∪ν}`).
    pub fn union(&self, other: &Partition) -> Self {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// Remove one copy of part `k`, if present.
    pub fn remove_part(&self, k: usize) -> Option<Self> {
        let pos = self.parts.iter().position(|&p| p == k)?;
        let mut parts = self.parts.clone();
        parts.remove(pos);
        Some(Partition { parts })
    }

    /// Number of copies of `k` among the parts.
    pub fn multiplicity(&self, k: usize) -> usize {
        self.parts.iter().filter(|&&p| p == k).count()
    }

    /// All partitions `η ⊆ self`, in canonical order.
    pub fn subdiagrams(&self) -> Vec<Partition> {
        fn rec(mu: &[usize], i: usize, bound: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            out.push(Partition { parts: cur.clone() });
            if i >= mu.len() {
                return;
            }
            for p in 1..=bound.min(mu[i]) {
                cur.push(p);
                rec(mu, i + 1, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(&self.parts, 0, usize::MAX, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size().cmp(&other.size()).then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All partitions of `n` in reverse lexicographic order.
pub fn enumerate(n: usize) -> Vec<Partition> {
    fn rec(rem: usize, bound: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rem.min(bound)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions of size `1..=n` (or `0..=n` with `include_empty`), canonical order.
pub fn enumerate_up_to(n: usize, include_empty: bool) -> Vec<Partition> {
    let start = if include_empty { 0 } else { 1 };
    (start..=n).flat_map(enumerate).collect()
}

impl FromStr for Partition {
    type Err = Error;

    /// `"5,5,4,1,1,1"`, or `"-"` for the empty partition.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s == "-" || s.is_empty() {
            return Ok(Self::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::InvalidPartition(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "-");
        }
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}
