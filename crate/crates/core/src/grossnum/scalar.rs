use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use super::poly::GrossPolynomial;
use super::rational::{self, Rational};
use super::{literal, GrossError, Magnitude};

/// Exact quotient of two grossone polynomials.
///
/// The denominator is never zero and its leading coefficient is 1. Common
/// ①-power factors are removed, and a denominator that divides the numerator
/// is folded away so that plain numerals are stored over 1.
#[derive(Clone, Debug)]
pub struct GrossScalar {
    num: GrossPolynomial,
    den: GrossPolynomial,
}

impl GrossScalar {
    pub fn from_polynomial(num: GrossPolynomial) -> Self {
        Self { num, den: GrossPolynomial::one() }
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from_polynomial(GrossPolynomial::constant(r))
    }

    pub fn from_integer(v: i64) -> Self {
        Self::from_rational(rational::int(v))
    }

    /// ① itself.
    pub fn grossone() -> Self {
        Self::grossone_pow(rational::int(1))
    }

    /// `①^p` for a finite rational gross-power.
    pub fn grossone_pow(power: Rational) -> Self {
        Self::from_polynomial(GrossPolynomial::monomial(Rational::one(), power))
    }

    /// `c·①^p`.
    pub fn term(coefficient: Rational, power: Rational) -> Self {
        Self::from_polynomial(GrossPolynomial::monomial(coefficient, power))
    }

    /// `①^p` where `p` is itself a gross-scalar. Only finite rational powers
    /// are representable, so ①-valued exponents are rejected.
    pub fn grossone_pow_scalar(power: &GrossScalar) -> Result<Self, GrossError> {
        match power.to_rational() {
            Some(p) => Ok(Self::grossone_pow(p)),
            None => Err(GrossError::NonFinitePower(power.to_string())),
        }
    }

    /// Shortest-decimal exact image of a float.
    pub fn from_f64(x: f64) -> Option<Self> {
        rational::from_f64_shortest(x).map(Self::from_rational)
    }

    pub fn from_parts(num: GrossPolynomial, den: GrossPolynomial) -> Result<Self, GrossError> {
        if den.is_zero() {
            return Err(GrossError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: GrossPolynomial, den: GrossPolynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return Self { num, den };
        }
        let lead = den.leading().expect("nonzero denominator");
        if den.is_monomial() {
            let inv = lead.coefficient.recip();
            let shift = -&lead.power;
            return Self::from_polynomial(num.mul_term(&inv, &shift));
        }
        if let Some(q) = num.div_exact(&den) {
            return Self::from_polynomial(q);
        }
        let inv = lead.coefficient.recip();
        let low_num = &num.lowest().expect("nonzero").power;
        let low_den = &den.lowest().expect("nonzero").power;
        let shift = -(low_num.min(low_den).clone());
        Self { num: num.mul_term(&inv, &shift), den: den.mul_term(&inv, &shift) }
    }

    pub fn numerator(&self) -> &GrossPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &GrossPolynomial {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value as a plain rational when it is a finite constant.
    pub fn to_rational(&self) -> Option<Rational> {
        if !self.is_polynomial() {
            return None;
        }
        match self.num.terms() {
            [] => Some(Rational::zero()),
            [t] if t.power.is_zero() => Some(t.coefficient.clone()),
            _ => None,
        }
    }

    pub fn signum(&self) -> Ordering {
        self.num.signum()
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Leading gross-power of the numerator minus that of the denominator.
    pub fn leading_power(&self) -> Option<Rational> {
        let n = self.num.leading()?;
        let d = self.den.leading().expect("nonzero denominator");
        Some(&n.power - &d.power)
    }

    pub fn classify(&self) -> Magnitude {
        match self.leading_power() {
            None => Magnitude::Zero,
            Some(p) if p.is_positive() => Magnitude::Infinite,
            Some(p) if p.is_zero() => Magnitude::Finite,
            Some(_) => Magnitude::Infinitesimal,
        }
    }

    /// Coefficient of ①⁰ in the polynomial expansion.
    pub fn finite_part(&self) -> Result<Rational, GrossError> {
        if !self.is_polynomial() {
            return Err(GrossError::NotPolynomial(self.to_string()));
        }
        Ok(self.num.coefficient_of(&Rational::zero()))
    }

    pub fn recip(&self) -> Result<Self, GrossError> {
        Self::one().checked_div(self)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, GrossError> {
        if rhs.is_zero() {
            return Err(GrossError::DivisionByZero);
        }
        Ok(Self::reduce(self.num.mul(&rhs.den), self.den.mul(&rhs.num)))
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, exp: i64) -> Result<Self, GrossError> {
        let base = if exp < 0 { self.recip()? } else { self.clone() };
        let mut acc = Self::one();
        let mut sq = base;
        let mut e = exp.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Float approximation of the leading finite value. Infinite scalars map
    /// to ±inf and infinitesimals to 0.
    pub fn to_f64_finite(&self) -> f64 {
        match self.classify() {
            Magnitude::Zero | Magnitude::Infinitesimal => 0.0,
            Magnitude::Infinite => {
                if self.is_negative() {
                    f64::NEG_INFINITY
                } else {
                    f64::INFINITY
                }
            }
            Magnitude::Finite => {
                let n = self.num.leading().expect("nonzero");
                let d = self.den.leading().expect("nonzero");
                rational::to_f64(&(&n.coefficient / &d.coefficient))
            }
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl Zero for GrossScalar {
    fn zero() -> Self {
        Self::from_polynomial(GrossPolynomial::zero())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for GrossScalar {
    fn one() -> Self {
        Self::from_polynomial(GrossPolynomial::one())
    }
}

impl From<Rational> for GrossScalar {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for GrossScalar {
    fn from(v: i64) -> Self {
        Self::from_integer(v)
    }
}

impl PartialEq for GrossScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.den.is_one() && other.den.is_one() {
            return self.num == other.num;
        }
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for GrossScalar {}

impl PartialOrd for GrossScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GrossScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.den.is_one() && other.den.is_one() {
            return self.num.sub(&other.num).signum();
        }
        // both denominators have a positive leading coefficient
        self.num.mul(&other.den).sub(&other.num.mul(&self.den)).signum()
    }
}

impl Add for &GrossScalar {
    type Output = GrossScalar;

    fn add(self, rhs: &GrossScalar) -> GrossScalar {
        if self.den.is_one() && rhs.den.is_one() {
            return GrossScalar::from_polynomial(self.num.add(&rhs.num));
        }
        if self.den == rhs.den {
            return GrossScalar::reduce(self.num.add(&rhs.num), self.den.clone());
        }
        GrossScalar::reduce(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl Sub for &GrossScalar {
    type Output = GrossScalar;

    fn sub(self, rhs: &GrossScalar) -> GrossScalar {
        self + &(-rhs)
    }
}

impl Mul for &GrossScalar {
    type Output = GrossScalar;

    fn mul(self, rhs: &GrossScalar) -> GrossScalar {
        if self.den.is_one() && rhs.den.is_one() {
            return GrossScalar::from_polynomial(self.num.mul(&rhs.num));
        }
        GrossScalar::reduce(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl Div for &GrossScalar {
    type Output = GrossScalar;

    /// Panics on division by zero, like the rational types it wraps; use
    /// [`GrossScalar::checked_div`] for a fallible version.
    fn div(self, rhs: &GrossScalar) -> GrossScalar {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &GrossScalar {
    type Output = GrossScalar;

    fn neg(self) -> GrossScalar {
        GrossScalar { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for GrossScalar {
    type Output = GrossScalar;

    fn neg(self) -> GrossScalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for GrossScalar {
            type Output = GrossScalar;
            fn $m(self, rhs: GrossScalar) -> GrossScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&GrossScalar> for GrossScalar {
            type Output = GrossScalar;
            fn $m(self, rhs: &GrossScalar) -> GrossScalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<GrossScalar> for &GrossScalar {
            type Output = GrossScalar;
            fn $m(self, rhs: GrossScalar) -> GrossScalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&GrossScalar> for GrossScalar {
    fn add_assign(&mut self, rhs: &GrossScalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&GrossScalar> for GrossScalar {
    fn sub_assign(&mut self, rhs: &GrossScalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&GrossScalar> for GrossScalar {
    fn mul_assign(&mut self, rhs: &GrossScalar) {
        *self = &*self * rhs;
    }
}

impl Sum for GrossScalar {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a GrossScalar> for GrossScalar {
    fn sum<I: Iterator<Item = &'a GrossScalar>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for GrossScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&literal::format_scalar(self))
    }
}

impl FromStr for GrossScalar {
    type Err = GrossError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        literal::parse(s)
    }
}
