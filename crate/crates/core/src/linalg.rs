//! 4-state vector and matrix kernels, generic over the scalar type so the
//! same code runs on `f64`, exact rationals and gross-scalars.

use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::grossnum::{rational, GrossScalar, Rational};

/// Arithmetic needed by the kernels plus a way in from exact rationals.
pub trait Scalar: Clone + PartialEq + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> {
    fn from_rational(r: &Rational) -> Self;
}

impl Scalar for f64 {
    fn from_rational(r: &Rational) -> Self {
        rational::to_f64(r)
    }
}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

impl Scalar for GrossScalar {
    fn from_rational(r: &Rational) -> Self {
        GrossScalar::from_rational(r.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vec4<S>(pub [S; 4]);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat4<S>(pub [[S; 4]; 4]);

impl<S: Scalar> Vec4<S> {
    pub fn zero() -> Self {
        Vec4(std::array::from_fn(|_| S::zero()))
    }

    pub fn sum(&self) -> S {
        self.0.iter().cloned().fold(S::zero(), |a, b| a + b)
    }

    pub fn add(&self, other: &Self) -> Self {
        Vec4(std::array::from_fn(|i| self.0[i].clone() + other.0[i].clone()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Vec4(std::array::from_fn(|i| self.0[i].clone() - other.0[i].clone()))
    }

    pub fn scale(&self, k: &S) -> Self {
        Vec4(std::array::from_fn(|i| self.0[i].clone() * k.clone()))
    }

    /// Exchanges the CD and DC entries, i.e. views the same joint state from
    /// the other player's side.
    pub fn swap_roles(&self) -> Self {
        let [a, b, c, d] = self.0.clone();
        Vec4([a, c, b, d])
    }
}

impl<S> Vec4<S> {
    pub fn map<T>(&self, f: impl Fn(&S) -> T) -> Vec4<T> {
        Vec4(std::array::from_fn(|i| f(&self.0[i])))
    }
}

impl<S: Scalar> Mat4<S> {
    pub fn identity() -> Self {
        Mat4(std::array::from_fn(|i| std::array::from_fn(|j| if i == j { S::one() } else { S::zero() })))
    }

    pub fn row(&self, i: usize) -> Vec4<S> {
        Vec4(self.0[i].clone())
    }

    pub fn row_sums(&self) -> [S; 4] {
        std::array::from_fn(|i| self.row(i).sum())
    }
}

impl<S> Mat4<S> {
    pub fn map<T>(&self, f: impl Fn(&S) -> T) -> Mat4<T> {
        Mat4(std::array::from_fn(|i| std::array::from_fn(|j| f(&self.0[i][j]))))
    }
}

pub fn dot<S: Scalar>(u: &Vec4<S>, v: &Vec4<S>) -> S {
    (0..4).fold(S::zero(), |acc, i| acc + u.0[i].clone() * v.0[i].clone())
}

/// Row vector times matrix.
pub fn vec_mat<S: Scalar>(v: &Vec4<S>, a: &Mat4<S>) -> Vec4<S> {
    Vec4(std::array::from_fn(|j| {
        (0..4).fold(S::zero(), |acc, i| acc + v.0[i].clone() * a.0[i][j].clone())
    }))
}

pub fn mat_mul<S: Scalar>(a: &Mat4<S>, b: &Mat4<S>) -> Mat4<S> {
    Mat4(std::array::from_fn(|i| vec_mat(&a.row(i), b).0))
}

/// `a^k` by square-and-multiply.
pub fn mat_pow<S: Scalar>(a: &Mat4<S>, mut k: u64) -> Mat4<S> {
    let mut acc = Mat4::identity();
    let mut base = a.clone();
    while k > 0 {
        if k & 1 == 1 {
            acc = mat_mul(&acc, &base);
        }
        k >>= 1;
        if k > 0 {
            base = mat_mul(&base, &base);
        }
    }
    acc
}

pub fn max_abs_diff(a: &Mat4<f64>, b: &Mat4<f64>) -> f64 {
    a.0.iter()
        .flatten()
        .zip(b.0.iter().flatten())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationarityParams {
    pub epsilon: f64,
    pub n_max: usize,
}

impl Default for StationarityParams {
    fn default() -> Self {
        Self { epsilon: 1e-15, n_max: 10_000 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Stationarity {
    pub n_tilde: usize,
    pub matrix: Mat4<f64>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("transition matrix not stationary within {epsilon:e} after {n_max} steps")]
    NotConverged { epsilon: f64, n_max: usize },
}

/// Smallest `ñ ≤ n_max` with `max |A^ñ − A^(ñ+1)| < ε`, along with `A^ñ`.
///
/// Periodic or reducible chains simply fail to converge.
pub fn find_stationarity(a: &Mat4<f64>, params: &StationarityParams) -> Result<Stationarity, LinalgError> {
    let mut current = a.clone();
    for n in 1..=params.n_max {
        let next = mat_mul(&current, a);
        if max_abs_diff(&current, &next) < params.epsilon {
            return Ok(Stationarity { n_tilde: n, matrix: current });
        }
        current = next;
    }
    Err(LinalgError::NotConverged { epsilon: params.epsilon, n_max: params.n_max })
}
