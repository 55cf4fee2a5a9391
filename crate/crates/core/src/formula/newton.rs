//! Forward differences and polynomials in the binomial basis.

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use super::poly::binomial;
use super::serde_big;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FitError {
    #[error("no data points")]
    Empty,
    #[error("n values must be consecutive: {prev} is followed by {next}")]
    NotConsecutive { prev: i64, next: i64 },
    #[error("differences never become constant over {points} points")]
    NoStableOrder { points: usize },
}

/// `p(n) = sum_m coeffs[m] * C(n - anchor, m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NewtonPoly {
    pub anchor: i64,
    #[serde(with = "serde_big::vec")]
    pub coeffs: Vec<BigInt>,
}

impl NewtonPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, n: i64) -> BigInt {
        self.coeffs.iter().enumerate().map(|(m, c)| c * binomial(n - self.anchor, m)).sum()
    }
}

/// Fits the lowest-degree polynomial whose forward differences settle.
///
/// Degree `d` is accepted when the `d`-th differences are all equal and
/// there are at least two of them, so at least `d + 2` points are needed:
/// with `d + 1` points any data would look like a degree-`d` polynomial.
/// An all-zero sequence fits the zero polynomial of degree 0.
pub fn fit_newton(values: &[(i64, BigInt)]) -> Result<NewtonPoly, FitError> {
    let (anchor, _) = values.first().ok_or(FitError::Empty)?;
    for w in values.windows(2) {
        if w[1].0 != w[0].0 + 1 {
            return Err(FitError::NotConsecutive { prev: w[0].0, next: w[1].0 });
        }
    }
    let mut row: Vec<BigInt> = values.iter().map(|(_, v)| v.clone()).collect();
    let mut coeffs = Vec::new();
    while row.len() >= 2 {
        coeffs.push(row[0].clone());
        if row.iter().all(|v| *v == row[0]) {
            return Ok(NewtonPoly { anchor: *anchor, coeffs });
        }
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    Err(FitError::NoStableOrder { points: values.len() })
}

/// Successive forward-difference rows, starting with the values themselves.
pub fn difference_table(values: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut rows = vec![values.to_vec()];
    while rows.last().is_some_and(|r| r.len() > 1) {
        let next = rows.last().unwrap().windows(2).map(|w| &w[1] - &w[0]).collect();
        rows.push(next);
    }
    rows
}
