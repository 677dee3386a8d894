use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gaussian::GaussianRational;

/// Laurent polynomial in `τ` over the Gaussian rationals.
///
/// Stored densely from the lowest to the highest nonzero exponent; the zero
/// polynomial has no coefficients. Both ends of `coeffs` are nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TauPoly {
    low: i32,
    coeffs: Vec<GaussianRational>,
}

impl TauPoly {
    pub fn zero() -> Self {
        TauPoly { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: GaussianRational, exp: i32) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        TauPoly { low: exp, coeffs: vec![c] }
    }

    /// `τ` itself.
    pub fn tau() -> Self {
        Self::monomial(GaussianRational::one(), 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, GaussianRational)>>(terms: I) -> Self {
        let mut acc = Self::zero();
        for (e, c) in terms {
            acc = &acc + &Self::monomial(c, e);
        }
        acc
    }

    fn normalized(mut low: i32, mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead);
        low += lead as i32;
        TauPoly { low, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// A single nonzero term; these are exactly the units of the ring.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Lowest exponent with nonzero coefficient.
    pub fn valuation(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Highest exponent with nonzero coefficient.
    pub fn degree(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    pub fn coeff(&self, exp: i32) -> GaussianRational {
        let k = exp - self.low;
        if k < 0 || k as usize >= self.coeffs.len() {
            GaussianRational::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &GaussianRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i32, c))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        TauPoly { low: self.low, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn scale_rat(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        TauPoly { low: self.low, coeffs: self.coeffs.iter().map(|x| x.scale(r)).collect() }
    }

    /// Multiply by `τ^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        TauPoly { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    /// Substitute `τ⁻¹` for `τ`.
    pub fn invert_tau(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let high = self.low + self.coeffs.len() as i32 - 1;
        TauPoly { low: -high, coeffs: self.coeffs.iter().rev().cloned().collect() }
    }

    /// Inverse of a unit (single-term) polynomial.
    pub fn unit_inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let c = self.coeffs[0].inv()?;
        Some(Self::monomial(c, -self.low))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Formal derivative `d/dτ`.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.scale(&BigRational::from_integer((self.low + k as i32).into())))
            .collect();
        Self::normalized(self.low - 1, coeffs)
    }

    /// Substitute a nonzero rational value for `τ`.
    pub fn eval(&self, tau: &BigRational) -> GaussianRational {
        assert!(!tau.is_zero() || self.low >= 0, "evaluating a τ-pole at τ = 0");
        let mut acc = GaussianRational::zero();
        // Horner from the top, then multiply by τ^low.
        for c in self.coeffs.iter().rev() {
            acc = acc.scale(tau);
            acc += c;
        }
        let p = pow_signed(tau, self.low);
        acc.scale(&p)
    }

    /// Evaluate with `τ = 0`; only meaningful when no negative powers occur.
    pub fn at_zero(&self) -> GaussianRational {
        assert!(self.is_zero() || self.low >= 0, "τ-pole at τ = 0");
        self.coeff(0)
    }

    /// Exact division by a nonzero polynomial; `None` if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &TauPoly) -> Option<TauPoly> {
        let dlow = divisor.valuation()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        // Work with ordinary polynomials: strip the low powers and shift back.
        let d: Vec<GaussianRational> = divisor.coeffs.clone();
        let mut rem: Vec<GaussianRational> = self.coeffs.clone();
        let dn = d.len();
        if rem.len() < dn {
            return None;
        }
        let lead_inv = d[dn - 1].inv()?;
        let mut quot = vec![GaussianRational::zero(); rem.len() - dn + 1];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dn - 1] * &lead_inv;
            if !q.is_zero() {
                for (j, dj) in d.iter().enumerate() {
                    let t = &q * dj;
                    rem[k + j] -= &t;
                }
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::normalized(self.low - dlow, quot))
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_real())
    }
}

fn pow_signed(x: &BigRational, e: i32) -> BigRational {
    let p = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

impl<'a> Add<&'a TauPoly> for &'a TauPoly {
    type Output = TauPoly;
    fn add(self, o: &TauPoly) -> TauPoly {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let low = self.low.min(o.low);
        let high = self.degree().unwrap().max(o.degree().unwrap());
        let mut coeffs = vec![GaussianRational::zero(); (high - low + 1) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + k] += c;
        }
        for (k, c) in o.coeffs.iter().enumerate() {
            coeffs[(o.low - low) as usize + k] += c;
        }
        TauPoly::normalized(low, coeffs)
    }
}

impl<'a> Sub<&'a TauPoly> for &'a TauPoly {
    type Output = TauPoly;
    fn sub(self, o: &TauPoly) -> TauPoly {
        self + &(-o)
    }
}

impl<'a> Mul<&'a TauPoly> for &'a TauPoly {
    type Output = TauPoly;
    fn mul(self, o: &TauPoly) -> TauPoly {
        if self.is_zero() || o.is_zero() {
            return TauPoly::zero();
        }
        let mut coeffs = vec![GaussianRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += &(a * b);
            }
        }
        TauPoly::normalized(self.low + o.low, coeffs)
    }
}

impl Neg for &TauPoly {
    type Output = TauPoly;
    fn neg(self) -> TauPoly {
        TauPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for TauPoly {
    type Output = TauPoly;
    fn neg(self) -> TauPoly {
        -&self
    }
}

impl Add for TauPoly {
    type Output = TauPoly;
    fn add(self, o: TauPoly) -> TauPoly {
        &self + &o
    }
}

impl Sub for TauPoly {
    type Output = TauPoly;
    fn sub(self, o: TauPoly) -> TauPoly {
        &self - &o
    }
}

impl Mul for TauPoly {
    type Output = TauPoly;
    fn mul(self, o: TauPoly) -> TauPoly {
        &self * &o
    }
}

impl From<GaussianRational> for TauPoly {
    fn from(c: GaussianRational) -> Self {
        TauPoly::constant(c)
    }
}

impl fmt::Display for TauPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "{}·τ", c)?,
                _ => write!(f, "{}·τ^{}", c, e)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TauPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gaussian::{int, rat};

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = TauPoly::from_terms([(2, g(1)), (-1, g(3)), (2, g(-1))]);
        assert_eq!(p, TauPoly::monomial(g(3), -1));
        assert_eq!(p.term_count(), 1);
    }

    #[test]
    fn derivative_of_laurent_terms() {
        // d/dτ (τ^-2 + 3τ) = -2τ^-3 + 3
        let p = TauPoly::from_terms([(-2, g(1)), (1, g(3))]);
        let d = TauPoly::from_terms([(-3, g(-2)), (0, g(3))]);
        assert_eq!(p.derivative(), d);
        assert!(TauPoly::one().derivative().is_zero());
    }

    #[test]
    fn eval_at_minus_one() {
        // τ(τ+1) vanishes at -1
        let p = &TauPoly::tau() * &(&TauPoly::tau() + &TauPoly::one());
        assert!(p.eval(&int(-1)).is_zero());
        let q = TauPoly::from_terms([(-1, g(2)), (1, g(1))]);
        assert_eq!(q.eval(&rat(1, 2)), GaussianRational::real(rat(9, 2)));
    }

    #[test]
    fn exact_division() {
        let a = &TauPoly::from_terms([(0, g(1)), (1, g(2))]) * &TauPoly::from_terms([(-1, g(3)), (1, g(1))]);
        let q = a.div_exact(&TauPoly::from_terms([(0, g(1)), (1, g(2))])).unwrap();
        assert_eq!(q, TauPoly::from_terms([(-1, g(3)), (1, g(1))]));
        assert!(TauPoly::tau().div_exact(&TauPoly::from_terms([(0, g(1)), (1, g(1))])).is_none());
    }

    #[test]
    fn unit_inverse() {
        let u = TauPoly::monomial(GaussianRational::i(), 3);
        assert!((&u * &u.unit_inverse().unwrap()).is_one());
        assert!(TauPoly::from_terms([(0, g(1)), (1, g(1))]).unit_inverse().is_none());
    }
}
