//! Truncated Laurent series in `λ` with [`TauPoly`] coefficients.
//!
//! Every series carries the last exponent it is known through (`order`,
//! inclusive). Binary operations return the largest order that both operands
//! actually determine, so results never claim precision they do not have.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::gaussian::GaussianRational;
use super::qrat::QRat;
use super::taupoly::TauPoly;
use super::xpoly::XPoly;
use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LambdaSeries {
    valuation: i32,
    order: i32,
    // exponents valuation.. ; first entry nonzero, trailing zeros trimmed
    coeffs: Vec<TauPoly>,
}

impl LambdaSeries {
    pub fn zero(order: i32) -> Self {
        LambdaSeries { valuation: 0, order, coeffs: Vec::new() }
    }

    pub fn one(order: i32) -> Self {
        Self::constant(TauPoly::one(), order)
    }

    pub fn constant(c: TauPoly, order: i32) -> Self {
        Self::monomial(c, 0, order)
    }

    /// `c·λ^exp`, known through `order`.
    pub fn monomial(c: TauPoly, exp: i32, order: i32) -> Self {
        Self::from_coeffs(exp, vec![c], order)
    }

    /// Series with coefficient `coeffs[k]` at `λ^(start + k)`; entries past `order` are dropped.
    pub fn from_coeffs(start: i32, coeffs: Vec<TauPoly>, order: i32) -> Self {
        let mut s = LambdaSeries { valuation: start, order, coeffs };
        let keep = (order - start + 1).max(0) as usize;
        s.coeffs.truncate(keep);
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.valuation = 0;
            return;
        }
        self.coeffs.drain(..lead);
        self.valuation += lead as i32;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exponent of the leading nonzero coefficient.
    pub fn valuation(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.valuation)
    }

    /// Valuation, or `order + 1` for a series that is zero to known precision.
    fn effective_valuation(&self) -> i32 {
        if self.is_zero() {
            self.order + 1
        } else {
            self.valuation
        }
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    pub fn leading(&self) -> Option<&TauPoly> {
        self.coeffs.first()
    }

    /// Coefficient of `λ^k`. Panics if `k` lies beyond the known order.
    pub fn coeff(&self, k: i32) -> TauPoly {
        assert!(k <= self.order, "coefficient λ^{k} requested beyond known order {}", self.order);
        let idx = k - self.valuation;
        if self.is_zero() || idx < 0 || idx as usize >= self.coeffs.len() {
            TauPoly::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Nonzero coefficients with their `λ`-exponents.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &TauPoly)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.valuation + k as i32, c))
    }

    /// Raw coefficient vector starting at the valuation.
    pub fn raw_coeffs(&self) -> &[TauPoly] {
        &self.coeffs
    }

    /// Forget everything beyond `order` (no-op if already coarser).
    pub fn truncate(&self, order: i32) -> Self {
        if order >= self.order {
            return self.clone();
        }
        Self::from_coeffs(self.valuation, self.coeffs.clone(), order)
    }

    /// Multiply by `λ^k`.
    pub fn shift(&self, k: i32) -> Self {
        LambdaSeries {
            valuation: if self.is_zero() { 0 } else { self.valuation + k },
            order: self.order + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &TauPoly) -> Self {
        if c.is_zero() {
            return Self::zero(self.order);
        }
        let coeffs = self.coeffs.iter().map(|x| x * c).collect();
        Self::from_coeffs(self.valuation, coeffs, self.order)
    }

    pub fn scale_gauss(&self, c: &GaussianRational) -> Self {
        let coeffs = self.coeffs.iter().map(|x| x.scale(c)).collect();
        Self::from_coeffs(self.valuation, coeffs, self.order)
    }

    pub fn scale_rat(&self, r: &BigRational) -> Self {
        let coeffs = self.coeffs.iter().map(|x| x.scale_rat(r)).collect();
        Self::from_coeffs(self.valuation, coeffs, self.order)
    }

    pub fn map_coeffs<F: Fn(&TauPoly) -> TauPoly>(&self, f: F) -> Self {
        let coeffs = self.coeffs.iter().map(f).collect();
        Self::from_coeffs(self.valuation, coeffs, self.order)
    }

    /// Coefficientwise `∂/∂τ`.
    pub fn tau_derivative(&self) -> Self {
        self.map_coeffs(TauPoly::derivative)
    }

    /// Substitute a rational value for `τ` in every coefficient.
    pub fn eval_tau(&self, tau: &BigRational) -> Self {
        self.map_coeffs(|c| TauPoly::constant(c.eval(tau)))
    }

    /// `f(c·λ)`: the coefficient of `λ^k` picks up `c^k`.
    pub fn rescale(&self, c: &TauPoly) -> Result<Self, Error> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let inv = if self.valuation < 0 {
            Some(c.unit_inverse().ok_or(Error::NonUnitLeadingCoefficient)?)
        } else {
            None
        };
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, f)| {
                let e = self.valuation + k as i32;
                let p = match &inv {
                    Some(i) if e < 0 => i.pow(e.unsigned_abs()),
                    _ => c.pow(e.max(0) as u32),
                };
                f * &p
            })
            .collect();
        Ok(Self::from_coeffs(self.valuation, coeffs, self.order))
    }

    /// Multiplicative inverse; the leading coefficient must be a single `τ`-monomial.
    pub fn inv(&self) -> Result<Self, Error> {
        let lead = self.leading().ok_or(Error::DivisionByZeroSeries)?;
        let u_inv = lead.unit_inverse().ok_or(Error::NonUnitLeadingCoefficient)?;
        let v = self.valuation;
        let rel = self.order - v; // relative precision
        let n = (rel + 1).max(0) as usize;
        let mut w: Vec<TauPoly> = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                w.push(u_inv.clone());
                continue;
            }
            let mut acc = TauPoly::zero();
            for j in 1..=k.min(self.coeffs.len() - 1) {
                if self.coeffs[j].is_zero() || w[k - j].is_zero() {
                    continue;
                }
                acc = &acc + &(&self.coeffs[j] * &w[k - j]);
            }
            w.push(-&(&acc * &u_inv));
        }
        Ok(Self::from_coeffs(-v, w, self.order - 2 * v))
    }

    pub fn div(&self, b: &LambdaSeries) -> Result<Self, Error> {
        Ok(self * &b.inv()?)
    }

    /// `exp(a)` for a series supported on positive exponents.
    pub fn exp(&self) -> Result<Self, Error> {
        if !self.is_zero() && self.valuation < 1 {
            return Err(Error::NonPositiveValuation);
        }
        if self.order < 0 {
            return Err(Error::NonPositiveValuation);
        }
        let n = self.order as usize;
        let a = |k: usize| -> TauPoly {
            let idx = k as i32 - self.valuation;
            if self.is_zero() || idx < 0 || idx as usize >= self.coeffs.len() {
                TauPoly::zero()
            } else {
                self.coeffs[idx as usize].clone()
            }
        };
        let mut e: Vec<TauPoly> = vec![TauPoly::one()];
        for m in 1..=n {
            let mut acc = TauPoly::zero();
            for k in 1..=m {
                let ak = a(k);
                if ak.is_zero() || e[m - k].is_zero() {
                    continue;
                }
                acc = &acc + &(&ak * &e[m - k]).scale_rat(&BigRational::from_integer(BigInt::from(k)));
            }
            e.push(acc.scale_rat(&BigRational::new(BigInt::one(), BigInt::from(m))));
        }
        Ok(Self::from_coeffs(0, e, self.order))
    }

    /// First coefficient (λ-exponent, τ-exponent) where the two series differ,
    /// compared through the smaller of their orders.
    pub fn first_difference(&self, other: &LambdaSeries) -> Option<(i32, i32)> {
        let upto = self.order.min(other.order);
        let lo = self.effective_valuation().min(other.effective_valuation());
        for k in lo..=upto {
            let (a, b) = (self.coeff(k), other.coeff(k));
            if a != b {
                let d = &a - &b;
                return Some((k, d.valuation().unwrap()));
            }
        }
        None
    }

    /// Exact agreement through `λ^upto`; false if either side is not known that far.
    pub fn agrees_through(&self, other: &LambdaSeries, upto: i32) -> bool {
        self.order >= upto && other.order >= upto && self.truncate(upto).first_difference(&other.truncate(upto)).is_none()
    }
}

impl<'a> Add<&'a LambdaSeries> for &'a LambdaSeries {
    type Output = LambdaSeries;
    fn add(self, o: &LambdaSeries) -> LambdaSeries {
        let order = self.order.min(o.order);
        if self.is_zero() {
            return o.truncate(order).with_order(order);
        }
        if o.is_zero() {
            return self.truncate(order).with_order(order);
        }
        let lo = self.valuation.min(o.valuation);
        let hi = order;
        if hi < lo {
            return LambdaSeries::zero(order);
        }
        let mut coeffs = vec![TauPoly::zero(); (hi - lo + 1) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            let e = self.valuation + k as i32;
            if e <= hi {
                coeffs[(e - lo) as usize] = &coeffs[(e - lo) as usize] + c;
            }
        }
        for (k, c) in o.coeffs.iter().enumerate() {
            let e = o.valuation + k as i32;
            if e <= hi {
                coeffs[(e - lo) as usize] = &coeffs[(e - lo) as usize] + c;
            }
        }
        LambdaSeries::from_coeffs(lo, coeffs, order)
    }
}

impl LambdaSeries {
    fn with_order(mut self, order: i32) -> Self {
        self.order = order;
        self
    }
}

impl<'a> Sub<&'a LambdaSeries> for &'a LambdaSeries {
    type Output = LambdaSeries;
    fn sub(self, o: &LambdaSeries) -> LambdaSeries {
        self + &(-o)
    }
}

impl<'a> Mul<&'a LambdaSeries> for &'a LambdaSeries {
    type Output = LambdaSeries;
    fn mul(self, o: &LambdaSeries) -> LambdaSeries {
        let order = (self.order + o.effective_valuation()).min(o.order + self.effective_valuation());
        if self.is_zero() || o.is_zero() {
            return LambdaSeries::zero(order);
        }
        let lo = self.valuation + o.valuation;
        if order < lo {
            return LambdaSeries::zero(order);
        }
        let n = (order - lo + 1) as usize;
        let mut coeffs = vec![TauPoly::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= n {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        LambdaSeries::from_coeffs(lo, coeffs, order)
    }
}

impl Neg for &LambdaSeries {
    type Output = LambdaSeries;
    fn neg(self) -> LambdaSeries {
        LambdaSeries {
            valuation: self.valuation,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for LambdaSeries {
    type Output = LambdaSeries;
    fn neg(self) -> LambdaSeries {
        -&self
    }
}

impl Add for LambdaSeries {
    type Output = LambdaSeries;
    fn add(self, o: LambdaSeries) -> LambdaSeries {
        &self + &o
    }
}

impl Sub for LambdaSeries {
    type Output = LambdaSeries;
    fn sub(self, o: LambdaSeries) -> LambdaSeries {
        &self - &o
    }
}

impl Mul for LambdaSeries {
    type Output = LambdaSeries;
    fn mul(self, o: LambdaSeries) -> LambdaSeries {
        &self * &o
    }
}

impl fmt::Display for LambdaSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "[{}]·λ^{}", c, e)?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(λ^{})", self.order + 1)
    }
}

impl fmt::Debug for LambdaSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Coefficients of `p(e^{iλ/2})` at `λ^0..=λ^upto`.
///
/// `Σ c_k e^{ikλ/2} = Σ_n λ^n (i/2)^n / n! · Σ c_k k^n`.
fn xpoly_at_exp(p: &XPoly, upto: i32) -> Vec<TauPoly> {
    let mut out = Vec::new();
    if upto < 0 {
        return out;
    }
    let terms: Vec<(BigRational, BigRational)> =
        p.terms().map(|(e, c)| (BigRational::from_integer(BigInt::from(e)), c.clone())).collect();
    let mut powers: Vec<BigRational> = terms.iter().map(|_| BigRational::one()).collect();
    let mut factor = GaussianRational::one(); // (i/2)^n / n!
    let half_i = GaussianRational::imag(BigRational::new(BigInt::one(), BigInt::from(2)));
    for n in 0..=upto {
        if n > 0 {
            for (pw, (k, _)) in powers.iter_mut().zip(&terms) {
                *pw *= k;
            }
            factor = (&factor * &half_i).scale(&BigRational::new(BigInt::one(), BigInt::from(n)));
        }
        let s: BigRational = powers.iter().zip(&terms).map(|(pw, (_, c))| pw * c).sum();
        out.push(TauPoly::constant(factor.scale(&s)));
    }
    out
}

/// Laurent expansion of `f(x)` at `x = e^{iλ/2}` (so `q = e^{iλ}`), through `λ^order`.
pub fn qrat_to_series(f: &QRat, order: i32) -> Result<LambdaSeries, Error> {
    if f.is_zero() {
        return Ok(LambdaSeries::zero(order));
    }
    let vn = f.numerator().multiplicity_at_one() as i32;
    let vd = f.denominator().multiplicity_at_one() as i32;
    let num_order = order + vd;
    let den_order = order + 2 * vd - vn;
    let num = LambdaSeries::from_coeffs(0, xpoly_at_exp(f.numerator(), num_order), num_order);
    let den = LambdaSeries::from_coeffs(0, xpoly_at_exp(f.denominator(), den_order), den_order);
    let q = num.div(&den)?;
    debug_assert!(q.order() >= order);
    Ok(q.truncate(order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gaussian::rat;
    use crate::algebra::xpoly::quantum;

    fn c(n: i64, d: i64) -> TauPoly {
        TauPoly::constant(GaussianRational::real(rat(n, d)))
    }
    fn ci(n: i64, d: i64) -> TauPoly {
        TauPoly::constant(GaussianRational::imag(rat(n, d)))
    }
    fn lam(k: i32, order: i32) -> LambdaSeries {
        LambdaSeries::monomial(TauPoly::one(), k, order)
    }

    #[test]
    fn inverse_monomials_multiply_to_one() {
        let p = &lam(-1, 10) * &lam(1, 10);
        assert!(p.agrees_through(&LambdaSeries::one(8), 8));
        assert_eq!(p.valuation(), Some(0));
    }

    #[test]
    fn difference_of_squares() {
        let a = &LambdaSeries::one(6) + &lam(1, 6);
        let b = &LambdaSeries::one(6) - &lam(1, 6);
        let expect = &LambdaSeries::one(6) - &lam(2, 6);
        assert!((&a * &b).agrees_through(&expect, 6));
    }

    #[test]
    fn square_of_quantum_one() {
        // [1] = 2i sin(λ/2) = iλ - iλ³/24 + ...; [1]² = -λ² + λ⁴/12 - ...
        let s = qrat_to_series(&QRat::from_poly(quantum(1)), 5).unwrap();
        assert_eq!(s.coeff(1), ci(1, 1));
        assert_eq!(s.coeff(3), ci(-1, 24));
        let sq = &s * &s;
        assert!(sq.order() >= 4);
        assert_eq!(sq.coeff(2), c(-1, 1));
        assert_eq!(sq.coeff(3), TauPoly::zero());
        assert_eq!(sq.coeff(4), c(1, 12));
    }

    #[test]
    fn geometric_series() {
        let one_minus = &LambdaSeries::one(5) - &lam(1, 5);
        let g = LambdaSeries::one(5).div(&one_minus).unwrap();
        for k in 0..=5 {
            assert_eq!(g.coeff(k), TauPoly::one());
        }
    }

    #[test]
    fn cosecant_expansion() {
        // 1/(2i sin(λ/2)) = -iλ^-1 - iλ/24 - 7iλ³/5760 ...
        let s = qrat_to_series(&QRat::from_poly(quantum(1)).inv().unwrap(), 3).unwrap();
        assert_eq!(s.valuation(), Some(-1));
        assert_eq!(s.coeff(-1), ci(-1, 1));
        assert_eq!(s.coeff(0), TauPoly::zero());
        assert_eq!(s.coeff(1), ci(-1, 24));
        assert_eq!(s.coeff(3), ci(-7, 5760));
    }

    #[test]
    fn unit_tau_leading_division() {
        // 1/(τλ + λ²) = τ⁻¹λ⁻¹ - τ⁻² + τ⁻³λ - ...
        let t = TauPoly::tau();
        let d = &LambdaSeries::monomial(t, 1, 6) + &lam(2, 6);
        let q = LambdaSeries::one(6).div(&d).unwrap();
        let g = |n| GaussianRational::from_int(n);
        assert_eq!(q.coeff(-1), TauPoly::monomial(g(1), -1));
        assert_eq!(q.coeff(0), TauPoly::monomial(g(-1), -2));
        assert_eq!(q.coeff(1), TauPoly::monomial(g(1), -3));
        assert_eq!(q.coeff(2), TauPoly::monomial(g(-1), -4));
    }

    #[test]
    fn non_unit_leading_is_rejected() {
        let lead = TauPoly::from_terms([(0, GaussianRational::one()), (1, GaussianRational::one())]);
        let d = LambdaSeries::monomial(lead, 0, 4);
        assert!(matches!(LambdaSeries::one(4).div(&d), Err(Error::NonUnitLeadingCoefficient)));
    }

    #[test]
    fn exp_of_i_tau_lambda() {
        let c = TauPoly::monomial(GaussianRational::i(), 1);
        let e = LambdaSeries::monomial(c.clone(), 1, 6).exp().unwrap();
        let mut fact = 1i64;
        for k in 0..=6 {
            if k > 0 {
                fact *= k as i64;
            }
            assert_eq!(e.coeff(k), c.pow(k as u32).scale_rat(&rat(1, fact)));
        }
        assert_eq!(LambdaSeries::zero(4).exp().unwrap(), LambdaSeries::one(4));
        assert!(matches!(LambdaSeries::one(4).exp(), Err(Error::NonPositiveValuation)));
    }

    #[test]
    fn exp_inverse_property() {
        let a = lam(1, 8).exp().unwrap();
        let b = (-lam(1, 8)).exp().unwrap();
        assert!((&a * &b).agrees_through(&LambdaSeries::one(8), 8));
    }

    #[test]
    fn x_squared_is_e_to_i_lambda() {
        let s = qrat_to_series(&QRat::x_pow(2), 3).unwrap();
        assert_eq!(s.coeff(0), c(1, 1));
        assert_eq!(s.coeff(1), ci(1, 1));
        assert_eq!(s.coeff(2), c(-1, 2));
        assert_eq!(s.coeff(3), ci(-1, 6));
    }

    #[test]
    fn rescale_by_tau() {
        // f(λ) = 1 + λ + λ², f(iτλ) = 1 + iτλ - τ²λ²
        let f = &(&LambdaSeries::one(2) + &lam(1, 2)) + &lam(2, 2);
        let c = TauPoly::monomial(GaussianRational::i(), 1);
        let r = f.rescale(&c).unwrap();
        assert_eq!(r.coeff(1), c);
        assert_eq!(r.coeff(2), TauPoly::monomial(GaussianRational::from_int(-1), 2));
    }

    #[test]
    fn zero_series_order_tracking() {
        let z = LambdaSeries::zero(3);
        let p = &z * &lam(-2, 10);
        assert_eq!(p.order(), 1);
        assert!(p.is_zero());
    }
}
