//! Laurent polynomials in `x = q^{1/2}` with rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gaussian::int;

/// `Σ coeffs[k]·x^(low + k)`, both ends nonzero; zero has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct XPoly {
    low: i32,
    coeffs: Vec<BigRational>,
}

impl XPoly {
    pub fn zero() -> Self {
        XPoly { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(BigRational::one(), 0)
    }

    pub fn monomial(c: BigRational, exp: i32) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        XPoly { low: exp, coeffs: vec![c] }
    }

    /// Monomial `x^exp` with coefficient one.
    pub fn x_pow(exp: i32) -> Self {
        Self::monomial(BigRational::one(), exp)
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, BigRational)>>(terms: I) -> Self {
        let mut acc = Self::zero();
        for (e, c) in terms {
            acc = &acc + &Self::monomial(c, e);
        }
        acc
    }

    fn normalized(mut low: i32, mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead);
        low += lead as i32;
        XPoly { low, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn valuation(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn degree(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    /// Exponent span `degree - valuation`, the degree once `x^low` is factored out.
    pub fn width(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, exp: i32) -> BigRational {
        let k = exp - self.low;
        if k < 0 || k as usize >= self.coeffs.len() {
            BigRational::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i32, c))
    }

    pub(crate) fn dense(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        XPoly { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    /// Drop the `x^low` factor, leaving an ordinary polynomial with nonzero constant term.
    pub fn strip_low(&self) -> (i32, XPoly) {
        if self.is_zero() {
            return (0, Self::zero());
        }
        (self.low, XPoly { low: 0, coeffs: self.coeffs.clone() })
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        XPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// Make the top coefficient 1.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&l.recip()),
        }
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

    /// Polynomial division of ordinary polynomials (`low == 0` on both sides).
    pub(crate) fn div_rem(&self, d: &XPoly) -> (XPoly, XPoly) {
        debug_assert!(self.is_zero() || self.low == 0);
        debug_assert!(d.low == 0 && !d.is_zero());
        let dn = d.coeffs.len();
        if self.coeffs.len() < dn {
            return (XPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let lead_inv = d.coeffs[dn - 1].recip();
        let mut quot = vec![BigRational::zero(); rem.len() - dn + 1];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dn - 1] * &lead_inv;
            if !q.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &q * dj;
                }
            }
            quot[k] = q;
        }
        rem.truncate(dn - 1);
        (XPoly::normalized(0, quot), XPoly::normalized(0, rem))
    }

    /// Monic gcd of two ordinary polynomials.
    pub(crate) fn gcd(a: &XPoly, b: &XPoly) -> XPoly {
        let (mut a, mut b) = (a.strip_low().1, b.strip_low().1);
        if a.coeffs.len() < b.coeffs.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            // a could have picked up a zero constant term only if both did,
            // which cannot happen for inputs with nonzero constant terms.
            let (_, r) = a.div_rem(&b);
            let r = r.strip_low().1.monic();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Order of vanishing at `x = 1`.
    pub fn multiplicity_at_one(&self) -> u32 {
        if self.is_zero() {
            return u32::MAX;
        }
        let mut p = self.coeffs.clone();
        let mut m = 0;
        loop {
            let s: BigRational = p.iter().sum();
            if !s.is_zero() {
                return m;
            }
            // synthetic division by (x - 1)
            let n = p.len();
            let mut q = vec![BigRational::zero(); n - 1];
            let mut acc = BigRational::zero();
            for k in (1..n).rev() {
                acc += &p[k];
                q[k - 1] = acc.clone();
            }
            p = q;
            m += 1;
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        let p = num_traits::pow(x.clone(), self.low.unsigned_abs() as usize);
        if self.low < 0 {
            acc / p
        } else {
            acc * p
        }
    }
}

/// Quantum integer `[m] = x^m - x^{-m}`.
pub fn quantum(m: i32) -> XPoly {
    XPoly::from_terms([(m, int(1)), (-m, int(-1))])
}

impl<'a> Add<&'a XPoly> for &'a XPoly {
    type Output = XPoly;
    fn add(self, o: &XPoly) -> XPoly {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let low = self.low.min(o.low);
        let high = self.degree().unwrap().max(o.degree().unwrap());
        let mut coeffs = vec![BigRational::zero(); (high - low + 1) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + k] += c;
        }
        for (k, c) in o.coeffs.iter().enumerate() {
            coeffs[(o.low - low) as usize + k] += c;
        }
        XPoly::normalized(low, coeffs)
    }
}

impl<'a> Sub<&'a XPoly> for &'a XPoly {
    type Output = XPoly;
    fn sub(self, o: &XPoly) -> XPoly {
        self + &(-o)
    }
}

impl<'a> Mul<&'a XPoly> for &'a XPoly {
    type Output = XPoly;
    fn mul(self, o: &XPoly) -> XPoly {
        if self.is_zero() || o.is_zero() {
            return XPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        XPoly::normalized(self.low + o.low, coeffs)
    }
}

impl Neg for &XPoly {
    type Output = XPoly;
    fn neg(self) -> XPoly {
        XPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || e == 0;
            if show_coeff {
                write!(f, "{}", mag)?;
            }
            match (e, show_coeff) {
                (0, _) => {}
                (1, true) => write!(f, "*x")?,
                (1, false) => write!(f, "x")?,
                (_, true) => write!(f, "*x^{}", e)?,
                (_, false) => write!(f, "x^{}", e)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantum_integer_antisymmetry() {
        assert_eq!(quantum(-3), -&quantum(3));
        assert!(quantum(0).is_zero());
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        // (x^4 - 1) and (x^6 - 1) share x^2 - 1
        let a = XPoly::from_terms([(4, int(1)), (0, int(-1))]);
        let b = XPoly::from_terms([(6, int(1)), (0, int(-1))]);
        assert_eq!(XPoly::gcd(&a, &b), XPoly::from_terms([(2, int(1)), (0, int(-1))]));
    }

    #[test]
    fn multiplicity_at_one() {
        let q = quantum(2);
        assert_eq!(q.multiplicity_at_one(), 1);
        assert_eq!((&q * &quantum(3)).multiplicity_at_one(), 2);
        assert_eq!(XPoly::x_pow(5).multiplicity_at_one(), 0);
    }

    #[test]
    fn display() {
        assert_eq!(quantum(1).to_string(), "x - x^-1");
    }
}
