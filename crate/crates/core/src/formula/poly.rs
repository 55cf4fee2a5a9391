//! Exact polynomials over the integers, optionally divided by one integer.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Coefficients in ascending order of degree, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// Builds from coefficients written highest degree first, as in
    /// `2 n^4 - 15 n^3 + ...`.
    pub fn from_descending(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().rev().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        IntPoly::new(vec![BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return IntPoly::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (a, x) in self.coeffs.iter().enumerate() {
            for (b, y) in other.coeffs.iter().enumerate() {
                out[a + b] += x * y;
            }
        }
        IntPoly::new(out)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match d {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => {}
                _ => write!(f, "{mag} ")?,
            }
            match d {
                0 => {}
                1 => f.write_str("n")?,
                _ => write!(f, "n^{d}")?,
            }
        }
        Ok(())
    }
}

/// `num / den` with `den > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoly {
    pub num: IntPoly,
    pub den: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inexact {
    pub numerator: BigInt,
    pub denominator: BigInt,
}

impl RationalPoly {
    pub fn new(num: IntPoly, den: i64) -> Self {
        assert!(den > 0, "denominator must be positive");
        RationalPoly { num, den: BigInt::from(den) }
    }

    pub fn degree(&self) -> Option<usize> {
        self.num.degree()
    }

    /// Exact value at `n`; fails if the denominator does not divide.
    pub fn eval(&self, n: i64) -> Result<BigInt, Inexact> {
        let numerator = self.num.eval(&BigInt::from(n));
        if (&numerator % &self.den).is_zero() {
            Ok(numerator / &self.den)
        } else {
            Err(Inexact { numerator, denominator: self.den.clone() })
        }
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / {}", self.num, self.den)
        }
    }
}

/// Binomial coefficient `C(x, m)` for any integer `x`, via the falling
/// factorial, so negative `x` follow the polynomial rather than being zero.
pub fn binomial(x: i64, m: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in 0..m as i64 {
        num *= BigInt::from(x - t);
        den *= BigInt::from(t + 1);
    }
    num / den
}
