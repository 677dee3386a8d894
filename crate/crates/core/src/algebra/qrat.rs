use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::xpoly::XPoly;

/// Exact rational function in `x = q^{1/2}`.
///
/// Canonical form: the denominator is an ordinary monic polynomial with
/// nonzero constant term, every power of `x` lives in the numerator, and the
/// two share no common factor. Structural equality is therefore value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QRat {
    num: XPoly,
    den: XPoly,
}

impl QRat {
    pub fn zero() -> Self {
        QRat { num: XPoly::zero(), den: XPoly::one() }
    }

    pub fn one() -> Self {
        QRat { num: XPoly::one(), den: XPoly::one() }
    }

    pub fn from_poly(p: XPoly) -> Self {
        QRat { num: p, den: XPoly::one() }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::from_poly(XPoly::monomial(r, 0))
    }

    pub fn x_pow(e: i32) -> Self {
        Self::from_poly(XPoly::x_pow(e))
    }

    /// Build `num/den` and bring it to canonical form.
    pub fn new(num: XPoly, den: XPoly) -> Self {
        assert!(!den.is_zero(), "QRat with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let (nshift, n) = num.strip_low();
        let (dshift, d) = den.strip_low();
        let g = XPoly::gcd(&n, &d);
        let (n, d) = if g.width() > 0 { (n.div_rem(&g).0, d.div_rem(&g).0) } else { (n, d) };
        let lead = d.leading().unwrap().clone();
        let inv = lead.recip();
        QRat { num: n.scale(&inv).shift(nshift - dshift), den: d.scale(&inv) }
    }

    pub fn numerator(&self) -> &XPoly {
        &self.num
    }

    pub fn denominator(&self) -> &XPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self == &Self::one()
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::new(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        QRat { num: self.num.scale(r), den: self.den.clone() }
    }

    pub fn shift(&self, k: i32) -> Self {
        QRat { num: self.num.shift(k), den: self.den.clone() }
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

    /// Equality by cross-multiplication; agrees with `==` on canonical values.
    pub fn cross_eq(&self, other: &QRat) -> bool {
        (&self.num * &other.den) == (&other.num * &self.den)
    }

    /// Expansion as a Laurent series in `x` around `x = 0`, through `x^order`.
    pub fn x_series(&self, order: i32) -> Vec<(i32, BigRational)> {
        // den has nonzero constant term, so 1/den is an ordinary power series
        let low = self.num.valuation().unwrap_or(0);
        let n = (order - low + 1).max(0) as usize;
        let d = self.den.dense();
        let d0_inv = d[0].recip();
        let mut inv = vec![BigRational::zero(); n];
        for k in 0..n {
            let mut acc = if k == 0 { BigRational::one() } else { BigRational::zero() };
            for j in 1..=k.min(d.len() - 1) {
                acc -= &d[j] * &inv[k - j];
            }
            inv[k] = acc * &d0_inv;
        }
        let num = self.num.dense();
        let mut out = Vec::new();
        for k in 0..n {
            let mut acc = BigRational::zero();
            for (j, c) in num.iter().enumerate().take(k + 1) {
                acc += c * &inv[k - j];
            }
            if !acc.is_zero() {
                out.push((low + k as i32, acc));
            }
        }
        out
    }
}

impl<'a> Add<&'a QRat> for &'a QRat {
    type Output = QRat;
    fn add(self, o: &QRat) -> QRat {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return QRat::new(&self.num + &o.num, self.den.clone());
        }
        let g = XPoly::gcd(&self.den, &o.den);
        let (a, b) = (self.den.div_rem(&g).0, o.den.div_rem(&g).0);
        let num = &(&self.num * &b) + &(&o.num * &a);
        QRat::new(num, &(&a * &b) * &g)
    }
}

impl<'a> Sub<&'a QRat> for &'a QRat {
    type Output = QRat;
    fn sub(self, o: &QRat) -> QRat {
        self + &(-o)
    }
}

impl<'a> Mul<&'a QRat> for &'a QRat {
    type Output = QRat;
    fn mul(self, o: &QRat) -> QRat {
        if self.is_zero() || o.is_zero() {
            return QRat::zero();
        }
        // cancel crosswise first; each side is already reduced
        let (s1, n1) = self.num.strip_low();
        let (s2, n2) = o.num.strip_low();
        let g1 = XPoly::gcd(&n1, &o.den);
        let g2 = XPoly::gcd(&n2, &self.den);
        let n1 = n1.div_rem(&g1).0;
        let d2 = o.den.div_rem(&g1).0;
        let n2 = n2.div_rem(&g2).0;
        let d1 = self.den.div_rem(&g2).0;
        let num = (&n1 * &n2).shift(s1 + s2);
        let den = &d1 * &d2;
        let lead = den.leading().unwrap().recip();
        QRat { num: num.scale(&lead), den: den.scale(&lead) }
    }
}

impl<'a> Div<&'a QRat> for &'a QRat {
    type Output = QRat;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &QRat) -> QRat {
        self * &o.inv().expect("division by zero QRat")
    }
}

impl Neg for &QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        -&self
    }
}

impl Add for QRat {
    type Output = QRat;
    fn add(self, o: QRat) -> QRat {
        &self + &o
    }
}

impl Sub for QRat {
    type Output = QRat;
    fn sub(self, o: QRat) -> QRat {
        &self - &o
    }
}

impl Mul for QRat {
    type Output = QRat;
    fn mul(self, o: QRat) -> QRat {
        &self * &o
    }
}

impl Div for QRat {
    type Output = QRat;
    fn div(self, o: QRat) -> QRat {
        &self / &o
    }
}

impl From<XPoly> for QRat {
    fn from(p: XPoly) -> Self {
        QRat::from_poly(p)
    }
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == XPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
