use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use super::rational::Rational;

/// A single `c·①^p` term: gross-digit `c` and gross-power `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GrossTerm {
    pub coefficient: Rational,
    pub power: Rational,
}

/// Finite sum of gross terms, kept with strictly descending powers and no
/// zero coefficients. The empty polynomial is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GrossPolynomial {
    terms: Vec<GrossTerm>,
}

impl GrossPolynomial {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, Rational::zero())
    }

    pub fn monomial(coefficient: Rational, power: Rational) -> Self {
        if coefficient.is_zero() {
            return Self::zero();
        }
        Self { terms: vec![GrossTerm { coefficient, power }] }
    }

    /// Canonical form of a raw `(coefficient, power)` list: equal powers merged,
    /// zero coefficients dropped, sorted by descending power.
    pub fn normalize<I>(raw: I) -> Self
    where
        I: IntoIterator<Item = (Rational, Rational)>,
    {
        let mut by_power: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (c, p) in raw {
            *by_power.entry(p).or_insert_with(Rational::zero) += c;
        }
        let terms = by_power
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(power, coefficient)| GrossTerm { coefficient, power })
            .collect();
        Self { terms }
    }

    pub fn terms(&self) -> &[GrossTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        matches!(self.terms.as_slice(), [t] if t.power.is_zero() && t.coefficient.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading(&self) -> Option<&GrossTerm> {
        self.terms.first()
    }

    pub fn lowest(&self) -> Option<&GrossTerm> {
        self.terms.last()
    }

    pub fn signum(&self) -> Ordering {
        match self.leading() {
            None => Ordering::Equal,
            Some(t) if t.coefficient.is_positive() => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }

    pub fn coefficient_of(&self, power: &Rational) -> Rational {
        self.terms
            .iter()
            .find(|t| &t.power == power)
            .map(|t| t.coefficient.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        // merge of two descending lists
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match a.power.cmp(&b.power) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a.coefficient + &b.coefficient;
                    if !c.is_zero() {
                        out.push(GrossTerm { coefficient: c, power: a.power.clone() });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Self { terms: out }
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| GrossTerm { coefficient: -&t.coefficient, power: t.power.clone() })
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.is_monomial() {
            let t = &other.terms[0];
            return self.mul_term(&t.coefficient, &t.power);
        }
        if self.is_monomial() {
            let t = &self.terms[0];
            return other.mul_term(&t.coefficient, &t.power);
        }
        Self::normalize(self.terms.iter().flat_map(|a| {
            other
                .terms
                .iter()
                .map(move |b| (&a.coefficient * &b.coefficient, &a.power + &b.power))
        }))
    }

    /// Multiplies by `c·①^p`; ordering is preserved so no re-sort is needed.
    pub fn mul_term(&self, c: &Rational, p: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| GrossTerm { coefficient: &t.coefficient * c, power: &t.power + p })
                .collect(),
        }
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    ///
    /// Long division on the leading term. A quotient term can never have a
    /// power below `lowest(self) - lowest(divisor)`, which bounds the loop.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let lead = divisor.leading()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        if divisor.is_monomial() {
            let inv = lead.coefficient.recip();
            return Some(self.mul_term(&inv, &-&lead.power));
        }
        let floor = &self.lowest()?.power - &divisor.lowest()?.power;
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some(top) = rem.leading() {
            let p = &top.power - &lead.power;
            if p < floor {
                return None;
            }
            let c = &top.coefficient / &lead.coefficient;
            rem = rem.sub(&divisor.mul_term(&c, &p));
            quotient.push((c, p));
        }
        Some(Self::normalize(quotient))
    }
}
