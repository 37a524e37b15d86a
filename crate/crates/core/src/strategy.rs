//! Memory-one strategies and the four joint states of a round.

use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::grossnum::rational::{self, Rational};

/// Outcome of one round, seen from the first player's side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum State {
    CC,
    CD,
    DC,
    DD,
}

impl State {
    pub const ALL: [State; 4] = [State::CC, State::CD, State::DC, State::DD];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_moves(own_cooperates: bool, other_cooperates: bool) -> Self {
        match (own_cooperates, other_cooperates) {
            (true, true) => State::CC,
            (true, false) => State::CD,
            (false, true) => State::DC,
            (false, false) => State::DD,
        }
    }

    /// The same round seen by the opponent.
    pub fn mirror(self) -> Self {
        match self {
            State::CD => State::DC,
            State::DC => State::CD,
            s => s,
        }
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("strategy parameter {index} = {value} is outside [0, 1]")]
    OutOfRange { index: usize, value: String },
    #[error("malformed strategy parameter '{0}'")]
    Malformed(String),
}

/// `(y, p1, p2, p3, p4)`: cooperation probability on the first round and
/// after CC, CD, DC, DD respectively (own move first).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Strategy {
    params: [Rational; 5],
}

impl Strategy {
    pub fn new(params: [Rational; 5]) -> Result<Self, StrategyError> {
        for (index, p) in params.iter().enumerate() {
            if p.is_negative() || p > &Rational::one() {
                return Err(StrategyError::OutOfRange { index, value: rational::format_rational(p) });
            }
        }
        Ok(Self { params })
    }

    /// Parses each parameter as a decimal or `p/q` rational.
    pub fn parse<S: AsRef<str>>(params: &[S; 5]) -> Result<Self, StrategyError> {
        let mut out: [Rational; 5] = std::array::from_fn(|_| Rational::zero());
        for (slot, text) in out.iter_mut().zip(params) {
            *slot = rational::parse_rational(text.as_ref())
                .ok_or_else(|| StrategyError::Malformed(text.as_ref().to_string()))?;
        }
        Self::new(out)
    }

    pub fn from_bits(bits: [u8; 5]) -> Self {
        Self { params: bits.map(|b| rational::int(i64::from(b != 0))) }
    }

    /// Du: always defect.
    pub fn always_defect() -> Self {
        Self::from_bits([0, 0, 0, 0, 0])
    }

    /// Grim trigger.
    pub fn trigger() -> Self {
        Self::from_bits([1, 1, 0, 0, 0])
    }

    pub fn tit_for_tat() -> Self {
        Self::from_bits([1, 1, 0, 1, 0])
    }

    pub fn suspicious_tit_for_tat() -> Self {
        Self::from_bits([0, 1, 0, 1, 0])
    }

    /// All 32 strategies with parameters in {0, 1}.
    pub fn all_deterministic() -> Vec<Self> {
        (0u8..32).map(|m| Self::from_bits(std::array::from_fn(|i| (m >> (4 - i)) & 1))).collect()
    }

    pub fn params(&self) -> &[Rational; 5] {
        &self.params
    }

    pub fn first_move(&self) -> &Rational {
        &self.params[0]
    }

    /// Cooperation probability after `state` (seen from this player's side).
    pub fn after(&self, state: State) -> &Rational {
        &self.params[1 + state.index()]
    }

    pub fn is_deterministic(&self) -> bool {
        self.params.iter().all(|p| p.is_zero() || p.is_one())
    }

    pub fn to_f64(&self) -> [f64; 5] {
        std::array::from_fn(|i| rational::to_f64(&self.params[i]))
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.params.iter().map(rational::format_rational).collect();
        write!(f, "S({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_range() {
        assert!(Strategy::parse(&["0.8", "0.75", "0.2", "0.4", "0.05"]).is_ok());
        assert!(matches!(
            Strategy::parse(&["1.2", "0", "0", "0", "0"]),
            Err(StrategyError::OutOfRange { index: 0, .. })
        ));
        assert!(matches!(
            Strategy::parse(&["0", "-0.1", "0", "0", "0"]),
            Err(StrategyError::OutOfRange { index: 1, .. })
        ));
        assert!(matches!(Strategy::parse(&["x", "0", "0", "0", "0"]), Err(StrategyError::Malformed(_))));
    }

    #[test]
    fn deterministic_enumeration() {
        let all = Strategy::all_deterministic();
        assert_eq!(all.len(), 32);
        assert!(all.iter().all(Strategy::is_deterministic));
        assert!(all.contains(&Strategy::tit_for_tat()));
        assert!(!Strategy::parse(&["0.5", "1", "1", "1", "1"]).unwrap().is_deterministic());
    }

    #[test]
    fn mirror_swaps_mixed_states() {
        assert_eq!(State::CD.mirror(), State::DC);
        assert_eq!(State::CC.mirror(), State::CC);
        assert_eq!(State::from_moves(false, true), State::DC);
    }
}
