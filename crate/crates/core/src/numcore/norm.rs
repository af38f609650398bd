use std::fmt;
use std::str::FromStr;

use crate::error::{GeoError, Result};

/// Exponent of a Minkowski norm: a finite `q >= 1` or the Chebyshev limit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub const ONE: Exponent = Exponent::Finite(1.0);
    pub const TWO: Exponent = Exponent::Finite(2.0);

    pub fn finite(q: f64) -> Result<Self> {
        if q.is_finite() && q >= 1.0 {
            Ok(Exponent::Finite(q))
        } else if q == f64::INFINITY {
            Ok(Exponent::Infinity)
        } else {
            Err(GeoError::InvalidExponent(q))
        }
    }

    pub fn validate(self) -> Result<Self> {
        match self {
            Exponent::Finite(q) => Exponent::finite(q),
            Exponent::Infinity => Ok(self),
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinity)
    }

    /// Norm of a sequence of absolute differences.
    pub fn norm<I: IntoIterator<Item = f64>>(self, values: I) -> f64 {
        match self {
            Exponent::Infinity => values.into_iter().fold(0.0, |acc, x| acc.max(x.abs())),
            Exponent::Finite(q) if q == 1.0 => values.into_iter().map(f64::abs).sum(),
            Exponent::Finite(q) if q == 2.0 => {
                values.into_iter().map(|x| x * x).sum::<f64>().sqrt()
            }
            Exponent::Finite(q) => values
                .into_iter()
                .map(|x| x.abs().powf(q))
                .sum::<f64>()
                .powf(1.0 / q),
        }
    }

    /// `count^(1/q)`, equal to 1 for the Chebyshev norm.
    pub fn root(self, count: f64) -> f64 {
        match self {
            Exponent::Infinity => 1.0,
            Exponent::Finite(q) => count.powf(1.0 / q),
        }
    }
}

impl Default for Exponent {
    fn default() -> Self {
        Exponent::Infinity
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(q) => write!(f, "{q}"),
            Exponent::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = GeoError;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "inf" | "infinity" | "+inf" | "∞" => Ok(Exponent::Infinity),
            _ => {
                let q: f64 = t
                    .parse()
                    .map_err(|_| GeoError::OutOfRange(format!("cannot parse exponent '{s}'")))?;
                Exponent::finite(q)
            }
        }
    }
}

/// Minkowski distance between two equal-length vectors.
pub fn minkowski(u: &[f64], v: &[f64], q: Exponent) -> Result<f64> {
    if u.len() != v.len() {
        return Err(GeoError::DimensionMismatch { expected: u.len(), found: v.len() });
    }
    let q = q.validate()?;
    Ok(minkowski_unchecked(u, v, q))
}

pub(crate) fn minkowski_unchecked(u: &[f64], v: &[f64], q: Exponent) -> f64 {
    q.norm(u.iter().zip(v).map(|(a, b)| a - b))
}

pub(crate) fn euclid(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
}
