//! Partition function and free energy of local `P²` from the triple sum
//! `Σ (−1)^{Σ|μⁱ|} e^{−Σ|μⁱ|t} q^{Σκ_{μⁱ}/2} W_{μ¹μ²}W_{μ²μ³}W_{μ³μ¹}`.
//!
//! The Kähler parameter enters only as a grading: entry `d` is the
//! coefficient of `e^{−dt}`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use rayon::prelude::*;

use crate::algebra::{qrat_to_series, GaussianRational, LambdaSeries, TauPoly};
use crate::error::Error;
use crate::genfun::{connect, PartitionMap};
use crate::one_partition::{exp_tau_lambda, rat};
use crate::partitions::{enumerate, Partition};
use crate::qschur::quantum_integer;
use crate::report::Report;
use crate::two_partition::w_two_series;

/// Degree-graded family of `τ`-free series; entry `d` multiplies `e^{−dt}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalCYSeries {
    pub max_degree: usize,
    pub per_degree: Vec<LambdaSeries>,
}

impl LocalCYSeries {
    pub fn degree(&self, d: usize) -> Option<&LambdaSeries> {
        self.per_degree.get(d)
    }
}

fn triples(d: usize) -> Vec<[Partition; 3]> {
    let mut out = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            for m1 in enumerate(a) {
                for m2 in enumerate(b) {
                    for m3 in enumerate(d - a - b) {
                        out.push([m1.clone(), m2.clone(), m3]);
                    }
                }
            }
        }
    }
    out
}

fn z_degree(d: usize, order: i32) -> Result<LambdaSeries, Error> {
    if d == 0 {
        return Ok(LambdaSeries::one(order));
    }
    // each W has valuation ≥ −(|μ|+|ν|), so the product loses at most 2d orders
    let w_order = order + 2 * d as i32;
    let terms = triples(d)
        .par_iter()
        .map(|[a, b, c]| {
            let w = &(&w_two_series(a, b, w_order)? * &w_two_series(b, c, w_order)?) * &w_two_series(c, a, w_order)?;
            Ok((a.kappa() + b.kappa() + c.kappa(), w))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let mut by_kappa: BTreeMap<i64, LambdaSeries> = BTreeMap::new();
    for (k, w) in terms {
        let acc = match by_kappa.remove(&k) {
            None => w,
            Some(s) => &s + &w,
        };
        by_kappa.insert(k, acc);
    }
    let mut total = LambdaSeries::zero(order);
    for (k, w) in by_kappa {
        // q^{κ/2} = e^{iκλ/2}
        let framing = exp_tau_lambda(&GaussianRational::imag(rat(k, 2)), 0, w_order);
        total = &total + &(&framing * &w);
    }
    let sign = if d.is_multiple_of(2) { 1 } else { -1 };
    Ok(total.scale_rat(&rat(sign, 1)).truncate(order))
}

/// `Z_d` for `d ≤ max_degree`, each through `λ^order`.
pub fn z_local_p2(max_degree: usize, order: i32) -> Result<LocalCYSeries, Error> {
    let per_degree = (0..=max_degree).map(|d| z_degree(d, order)).collect::<Result<Vec<_>, _>>()?;
    Ok(LocalCYSeries { max_degree, per_degree })
}

/// Degree-graded logarithm `F = log Z`; the degree-0 entry of the result is zero.
pub fn free_energy(z: &LocalCYSeries) -> Result<LocalCYSeries, Error> {
    let mut map = PartitionMap::new(z.max_degree);
    for (d, s) in z.per_degree.iter().enumerate() {
        map.insert(Partition::ones(d), s.clone());
    }
    let conn = connect(&map)?;
    let order = z.per_degree.first().map_or(0, LambdaSeries::order);
    let per_degree = (0..=z.max_degree)
        .map(|d| conn.get(&Partition::ones(d)).cloned().unwrap_or_else(|| LambdaSeries::zero(order)))
        .collect();
    Ok(LocalCYSeries { max_degree: z.max_degree, per_degree })
}

/// `F_d` for `d ≤ max_degree`, each known through at least `λ^order`.
pub fn free_energy_local_p2(max_degree: usize, order: i32) -> Result<LocalCYSeries, Error> {
    let mut margin = 2 * max_degree as i32;
    loop {
        let f = free_energy(&z_local_p2(max_degree, order + margin)?)?;
        if f.per_degree.iter().skip(1).all(|s| s.order() >= order) {
            let per_degree = f.per_degree.iter().map(|s| s.truncate(order)).collect();
            return Ok(LocalCYSeries { max_degree, per_degree });
        }
        margin += 2;
    }
}

/// `N_{g,d} = [λ^{2g−2}] F_d`, which must be a real rational.
pub fn gw_invariants(f: &LocalCYSeries, g: usize, d: usize) -> Result<BigRational, Error> {
    if d == 0 || d > f.max_degree {
        return Err(Error::OutOfRange(format!("degree {d} outside 1..={}", f.max_degree)));
    }
    let s = &f.per_degree[d];
    let k = 2 * g as i32 - 2;
    if k > s.order() {
        return Err(Error::OutOfRange(format!("λ^{k} beyond order {}", s.order())));
    }
    let c = s.coeff(k);
    if c.valuation().is_some_and(|v| v != 0) || c.term_count() > 1 {
        return Err(Error::OutOfRange(format!("N_{{{g},{d}}} has τ-dependence")));
    }
    let v = c.coeff(0);
    if !v.is_real() {
        return Err(Error::OutOfRange(format!("N_{{{g},{d}}} = {v} is not real")));
    }
    Ok(v.re)
}

/// Closed form of `F₁`, leading invariants, and evenness, reality and
/// valuation of every `F_d` for `1 ≤ d ≤ max_degree`.
pub fn verify_local_p2(max_degree: usize, order: i32) -> Result<Report, Error> {
    let mut report = Report::new("local P2");
    let f = free_energy_local_p2(max_degree.max(1), order)?;
    // 3/(4 sin²(λ/2)) = −3/[1]²
    let closed = qrat_to_series(&quantum_integer(1).pow(2).inv().unwrap(), order)?.scale_rat(&rat(-3, 1));
    report.check_series("F_1 closed form", &closed, &f.per_degree[1], order);
    for (g, expected) in [(0, rat(3, 1)), (1, rat(1, 4)), (2, rat(1, 80))] {
        if 2 * g as i32 - 2 > order {
            report.skip(format!("N_{{{g},1}}"), "insufficient order");
            continue;
        }
        let n = gw_invariants(&f, g, 1)?;
        report.check(n == expected, format!("N_{{{g},1}}"), &expected, &n);
    }
    for d in 1..=max_degree {
        let s = &f.per_degree[d];
        let key = format!("F_{d}");
        let v = s.valuation().unwrap_or(i32::MAX);
        report.check(v >= -2, format!("{key} valuation"), "≥ -2", v);
        for (k, c) in s.terms() {
            // odd powers vanish; even ones are real constants
            let expected = if k % 2 != 0 {
                TauPoly::zero()
            } else {
                TauPoly::constant(GaussianRational::real(c.coeff(0).re))
            };
            report.check_tau(key.clone(), Some(k), &expected, c);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_zero_and_one() {
        let z = z_local_p2(1, 4).unwrap();
        assert_eq!(z.per_degree[0], LambdaSeries::one(4));
        let closed = qrat_to_series(&quantum_integer(1).pow(2).inv().unwrap(), 4).unwrap().scale_rat(&rat(-3, 1));
        assert_eq!(z.per_degree[1], closed);
    }

    #[test]
    fn triple_counts() {
        assert_eq!(triples(0).len(), 1);
        assert_eq!(triples(1).len(), 3);
        // 3·p(2) single placements + 3 ordered splits of two boxes
        assert_eq!(triples(2).len(), 9);
    }

    #[test]
    fn log_low_degrees() {
        let z = z_local_p2(2, 6).unwrap();
        let f = free_energy(&z).unwrap();
        assert_eq!(f.per_degree[1], z.per_degree[1]);
        let z1 = &z.per_degree[1];
        let expect = &z.per_degree[2] - &(z1 * z1).scale_rat(&rat(1, 2));
        assert!(f.per_degree[2].agrees_through(&expect, f.per_degree[2].order()));
    }

    #[test]
    fn bad_constant_term() {
        let mut z = z_local_p2(1, 2).unwrap();
        z.per_degree[0] = LambdaSeries::zero(2);
        assert_eq!(free_energy(&z), Err(Error::BadConstantTerm));
    }

    #[test]
    fn invariants_degree_one() {
        let f = free_energy_local_p2(1, 4).unwrap();
        assert_eq!(gw_invariants(&f, 0, 1).unwrap(), rat(3, 1));
        assert_eq!(gw_invariants(&f, 1, 1).unwrap(), rat(1, 4));
        assert_eq!(gw_invariants(&f, 2, 1).unwrap(), rat(1, 80));
        assert!(matches!(gw_invariants(&f, 0, 2), Err(Error::OutOfRange(_))));
        assert!(matches!(gw_invariants(&f, 0, 0), Err(Error::OutOfRange(_))));
        assert!(matches!(gw_invariants(&f, 9, 1), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn small_suite_passes() {
        assert!(verify_local_p2(2, 4).unwrap().passed());
    }
}
