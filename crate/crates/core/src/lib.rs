//! Exact grossone arithmetic and Prisoner's Dilemma tournament analysis.
//!
//! [`grossnum`] provides the number type, [`linalg`] the small Markov-chain
//! kernels, [`det`] and [`stoch`] the deterministic and stochastic tournament
//! engines, and [`solver`] the payoff-interval solver for the master's model.

pub mod det;
pub mod grossnum;
pub mod interval;
pub mod linalg;
pub mod payoff;
pub mod solver;
pub mod stoch;
pub mod strategy;

pub use grossnum::{GrossError, GrossScalar, Magnitude, Rational};
pub use interval::{OpenInterval, RankGroup};
pub use payoff::{LinearForm, PayoffSymbol, Payoffs};
pub use strategy::{State, Strategy};
