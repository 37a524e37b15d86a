//! Payoff values and linear forms over the payoff symbols.

use std::fmt;
use std::ops::{Add, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::grossnum::GrossScalar;
use crate::linalg::Vec4;
use crate::strategy::State;

/// Payoff symbols in the order of the payoff vector `Q = [R, S, T, P]`,
/// which lines up with the states CC, CD, DC, DD.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PayoffSymbol {
    R,
    S,
    T,
    P,
}

impl PayoffSymbol {
    pub const Q_ORDER: [PayoffSymbol; 4] = [PayoffSymbol::R, PayoffSymbol::S, PayoffSymbol::T, PayoffSymbol::P];
    /// Order of the fundamental law, largest first.
    pub const LAW_ORDER: [PayoffSymbol; 4] = [PayoffSymbol::T, PayoffSymbol::R, PayoffSymbol::P, PayoffSymbol::S];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn for_state(state: State) -> Self {
        Self::Q_ORDER[state.index()]
    }

    pub fn name(self) -> &'static str {
        match self {
            PayoffSymbol::R => "R",
            PayoffSymbol::S => "S",
            PayoffSymbol::T => "T",
            PayoffSymbol::P => "P",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::Q_ORDER.into_iter().find(|s| s.name() == name)
    }
}

impl fmt::Display for PayoffSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PayoffError {
    #[error("fundamental law T > R > P > S violated: {0}")]
    FundamentalLaw(String),
    #[error("payoff {0} is symbolic")]
    Symbolic(PayoffSymbol),
}

/// Payoff assignment where each of T, R, P, S is either a value or left free.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Payoffs {
    values: [Option<GrossScalar>; 4],
}

impl Payoffs {
    pub fn symbolic() -> Self {
        Self::default()
    }

    pub fn concrete(t: GrossScalar, r: GrossScalar, p: GrossScalar, s: GrossScalar) -> Self {
        Self { values: [Some(r), Some(s), Some(t), Some(p)] }
    }

    pub fn with(mut self, symbol: PayoffSymbol, value: GrossScalar) -> Self {
        self.values[symbol.index()] = Some(value);
        self
    }

    pub fn set(&mut self, symbol: PayoffSymbol, value: Option<GrossScalar>) {
        self.values[symbol.index()] = value;
    }

    pub fn get(&self, symbol: PayoffSymbol) -> Option<&GrossScalar> {
        self.values[symbol.index()].as_ref()
    }

    pub fn value(&self, symbol: PayoffSymbol) -> Result<&GrossScalar, PayoffError> {
        self.get(symbol).ok_or(PayoffError::Symbolic(symbol))
    }

    pub fn is_concrete(&self) -> bool {
        self.values.iter().all(Option::is_some)
    }

    /// Checks every adjacent pair of T > R > P > S whose two values are known.
    pub fn check_fundamental_law(&self) -> Result<(), PayoffError> {
        let order = PayoffSymbol::LAW_ORDER;
        for pair in order.windows(2) {
            if let (Some(hi), Some(lo)) = (self.get(pair[0]), self.get(pair[1])) {
                if hi <= lo {
                    return Err(PayoffError::FundamentalLaw(format!(
                        "{} = {hi} is not above {} = {lo}",
                        pair[0], pair[1]
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `c + Σ a_X·X` over the payoff symbols, with gross-scalar coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    pub constant: GrossScalar,
    /// Indexed in `Q` order (R, S, T, P).
    pub coeffs: [GrossScalar; 4],
}

impl LinearForm {
    pub fn zero() -> Self {
        Self { constant: GrossScalar::zero(), coeffs: std::array::from_fn(|_| GrossScalar::zero()) }
    }

    pub fn constant(c: GrossScalar) -> Self {
        Self { constant: c, ..Self::zero() }
    }

    pub fn symbol(symbol: PayoffSymbol) -> Self {
        Self::term(GrossScalar::one(), symbol)
    }

    pub fn term(coefficient: GrossScalar, symbol: PayoffSymbol) -> Self {
        let mut f = Self::zero();
        f.coeffs[symbol.index()] = coefficient;
        f
    }

    /// `v·Qᵀ` for a vector of per-state weights.
    pub fn from_vector(v: &Vec4<GrossScalar>) -> Self {
        Self { constant: GrossScalar::zero(), coeffs: v.0.clone() }
    }

    pub fn coefficient(&self, symbol: PayoffSymbol) -> &GrossScalar {
        &self.coeffs[symbol.index()]
    }

    pub fn scale(&self, k: &GrossScalar) -> Self {
        Self { constant: &self.constant * k, coeffs: std::array::from_fn(|i| &self.coeffs[i] * k) }
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coeffs.iter().all(Zero::is_zero)
    }

    /// Replaces every symbol that has a value in `payoffs`.
    pub fn substitute(&self, payoffs: &Payoffs) -> Self {
        let mut out = self.clone();
        for sym in PayoffSymbol::Q_ORDER {
            if let Some(v) = payoffs.get(sym) {
                let c = std::mem::replace(&mut out.coeffs[sym.index()], GrossScalar::zero());
                out.constant += &(&c * v);
            }
        }
        out
    }

    /// The value when no symbol has a nonzero coefficient.
    pub fn as_scalar(&self) -> Option<GrossScalar> {
        self.coeffs.iter().all(Zero::is_zero).then(|| self.constant.clone())
    }

    pub fn evaluate(&self, payoffs: &Payoffs) -> Option<GrossScalar> {
        self.substitute(payoffs).as_scalar()
    }
}

impl Add for &LinearForm {
    type Output = LinearForm;

    fn add(self, rhs: &LinearForm) -> LinearForm {
        LinearForm {
            constant: &self.constant + &rhs.constant,
            coeffs: std::array::from_fn(|i| &self.coeffs[i] + &rhs.coeffs[i]),
        }
    }
}

impl Sub for &LinearForm {
    type Output = LinearForm;

    fn sub(self, rhs: &LinearForm) -> LinearForm {
        LinearForm {
            constant: &self.constant - &rhs.constant,
            coeffs: std::array::from_fn(|i| &self.coeffs[i] - &rhs.coeffs[i]),
        }
    }
}

impl Add for LinearForm {
    type Output = LinearForm;

    fn add(self, rhs: LinearForm) -> LinearForm {
        &self + &rhs
    }
}

/// Renders `coefficient·name`, parenthesizing compound coefficients.
pub(crate) fn render_terms(terms: &[(String, GrossScalar)]) -> String {
    let mut out = String::new();
    for (name, c) in terms {
        if c.is_zero() {
            continue;
        }
        let lit = c.to_string();
        let simple = c.is_polynomial() && c.numerator().terms().len() == 1 && !lit.contains('g');
        let body = if name.is_empty() {
            lit.trim_start_matches('-').to_string()
        } else if c.abs().is_one() {
            name.clone()
        } else if simple {
            format!("{}{name}", lit.trim_start_matches('-'))
        } else {
            format!("({lit}){name}")
        };
        let negative = simple && c.is_negative() || name.is_empty() && c.is_negative();
        match (out.is_empty(), negative) {
            (true, true) => out.push('-'),
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
            (true, false) => {}
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(String, GrossScalar)> = PayoffSymbol::LAW_ORDER
            .iter()
            .map(|s| (s.name().to_string(), self.coefficient(*s).clone()))
            .collect();
        terms.push((String::new(), self.constant.clone()));
        f.write_str(&render_terms(&terms))
    }
}
