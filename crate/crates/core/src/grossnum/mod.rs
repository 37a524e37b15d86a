//! Grossone numerals with exact rational gross-digits and gross-powers.
//!
//! A [`GrossScalar`] is a quotient of two finite sums `Σ c·①^p`. Scalars form
//! an ordered field: the order compares the leading term of the
//! cross-multiplied difference, so ① exceeds every finite rational and ①⁻¹
//! is positive but below every positive finite rational.
//!
//! ①-valued gross-powers such as `43.6·①^(4.56①)` are not representable and
//! are rejected with [`GrossError::NonFinitePower`].

mod literal;
mod poly;
pub mod rational;
mod scalar;

pub use literal::{format_polynomial, parse};
pub use poly::{GrossPolynomial, GrossTerm};
pub use rational::Rational;
pub use scalar::GrossScalar;

use thiserror::Error;

/// Coarse size class of a scalar relative to ①.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Magnitude {
    Zero,
    Infinitesimal,
    Finite,
    Infinite,
}

impl std::fmt::Display for Magnitude {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Magnitude::Zero => "zero",
            Magnitude::Infinitesimal => "infinitesimal",
            Magnitude::Finite => "finite",
            Magnitude::Infinite => "infinite",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrossError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is a quotient, not a polynomial")]
    NotPolynomial(String),
    #[error("gross-power {0} is not a finite rational")]
    NonFinitePower(String),
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
}
