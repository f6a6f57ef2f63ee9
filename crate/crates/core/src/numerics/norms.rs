use std::fmt;
use std::str::FromStr;

use super::matrix::ComplexMatrix;
use super::svd::singular_values;
use crate::error::{Error, Result};

/// Induced operator norm.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum Norm {
    One,
    #[default]
    Two,
    Inf,
}

impl Norm {
    /// `p ∈ {1, 2, ∞}`.
    pub fn from_p(p: f64) -> Result<Self> {
        match p {
            1.0 => Ok(Norm::One),
            2.0 => Ok(Norm::Two),
            x if x == f64::INFINITY => Ok(Norm::Inf),
            _ => Err(Error::Domain(format!("unsupported operator norm p = {p}; use 1, 2 or inf"))),
        }
    }
}

impl FromStr for Norm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "1" => Ok(Norm::One),
            "2" => Ok(Norm::Two),
            "inf" | "infinity" => Ok(Norm::Inf),
            other => Err(Error::Domain(format!("unsupported operator norm {other:?}; use 1, 2 or inf"))),
        }
    }
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Norm::One => "1",
            Norm::Two => "2",
            Norm::Inf => "inf",
        })
    }
}

/// Max column sum, largest singular value, or max row sum.
pub fn opnorm(a: &ComplexMatrix, p: Norm) -> f64 {
    match p {
        Norm::One => (0..a.cols()).map(|j| (0..a.rows()).map(|i| a[(i, j)].norm()).sum::<f64>()).fold(0.0, f64::max),
        Norm::Two => singular_values(a).first().copied().unwrap_or(0.0),
        Norm::Inf => (0..a.rows()).map(|i| (0..a.cols()).map(|j| a[(i, j)].norm()).sum::<f64>()).fold(0.0, f64::max),
    }
}
