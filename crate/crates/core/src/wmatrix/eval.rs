//! Numeric evaluation, the domain test, and polynomial extension.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::WMatrix;
use crate::error::{Error, Result};
use crate::field::{eval_complex, GaussianRational, Poly, RatFunc};
use crate::numerics::ComplexMatrix;

/// A denominator is considered zero at `λ₀` when `|q(λ₀)|` is at most this.
pub const DOMAIN_TOL: f64 = 1e-12;

fn abs_scale(coeffs: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

/// True when `|p(z)| ≤ DOMAIN_TOL`.
///
/// A float evaluation screens out the clear cases; anything close is
/// re-evaluated exactly at the binary value of `z`.
pub fn vanishes_at(p: &Poly, z: Complex64) -> bool {
    vanishes_with(p, &p.to_complex(), z)
}

fn vanishes_with(exact: &Poly, coeffs: &[Complex64], z: Complex64) -> bool {
    if exact.is_zero() {
        return true;
    }
    let approx = eval_complex(coeffs, z).norm();
    if approx.is_finite() && approx > DOMAIN_TOL + 1e-6 * abs_scale(coeffs, z).max(1e-6) {
        return false;
    }
    match GaussianRational::from_complex64(z) {
        Some(x) => exact.eval(&x).to_complex64().norm() <= DOMAIN_TOL,
        None => false,
    }
}

/// An entry with its coefficients pre-converted to floats.
#[derive(Clone, Debug)]
struct CompiledEntry {
    num: Vec<Complex64>,
    den: Vec<Complex64>,
    den_exact: Poly,
    constant_den: bool,
}

impl CompiledEntry {
    fn new(w: &RatFunc) -> Self {
        Self {
            num: w.num().to_complex(),
            den: w.den().to_complex(),
            den_exact: w.den().clone(),
            constant_den: w.den().is_constant(),
        }
    }

    fn has_pole(&self, z: Complex64) -> bool {
        !self.constant_den && vanishes_with(&self.den_exact, &self.den, z)
    }

    fn value(&self, z: Complex64) -> Complex64 {
        let n = eval_complex(&self.num, z);
        if self.constant_den {
            n / self.den[0]
        } else {
            n / eval_complex(&self.den, z)
        }
    }
}

/// A matrix of rational functions prepared for repeated numeric evaluation.
#[derive(Clone, Debug)]
pub struct CompiledMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<CompiledEntry>,
}

impl CompiledMatrix {
    pub fn new(m: &super::RatMatrix) -> Self {
        Self { rows: m.rows(), cols: m.cols(), entries: m.entries().iter().map(CompiledEntry::new).collect() }
    }

    /// First entry (1-based) with a pole at `z`, if any.
    pub fn first_pole(&self, z: Complex64) -> Option<(usize, usize)> {
        self.entries.iter().position(|e| e.has_pole(z)).map(|k| (k / self.cols + 1, k % self.cols + 1))
    }

    pub fn in_domain(&self, z: Complex64) -> bool {
        self.first_pole(z).is_none()
    }

    pub fn eval(&self, z: Complex64) -> Result<ComplexMatrix> {
        if let Some((row, col)) = self.first_pole(z) {
            return Err(Error::Pole { row, col, at: z });
        }
        Ok(self.eval_unchecked(z))
    }

    /// Evaluation without the pole test; callers must know `z` is in the domain.
    pub fn eval_unchecked(&self, z: Complex64) -> ComplexMatrix {
        ComplexMatrix::from_vec(self.rows, self.cols, self.entries.iter().map(|e| e.value(z)).collect())
    }
}

/// True when no entry of `m` has a pole at `z`.
pub fn in_domain(m: &WMatrix, z: Complex64) -> bool {
    m.as_rat_matrix().entries().iter().all(|w| w.den().is_constant() || !vanishes_at(w.den(), z))
}

/// `M(λ₀)`. Fails with a pole error naming the first offending entry.
pub fn eval_at(m: &WMatrix, z: Complex64) -> Result<ComplexMatrix> {
    CompiledMatrix::new(m.as_rat_matrix()).eval(z)
}

/// `(M(λ) − λI)v` formed symbolically, cancelled, then evaluated at `λ₀`.
///
/// This is defined at some points outside the domain of `M`, where the
/// poles of individual entries cancel in the product.
pub fn shifted_matvec(m: &WMatrix, v: &[Complex64], z: Complex64) -> Result<Vec<Complex64>> {
    let n = m.dim();
    if v.len() != n {
        return Err(Error::Domain(format!("vector has length {}, expected {n}", v.len())));
    }
    let exact: Vec<RatFunc> = v
        .iter()
        .map(|&x| {
            GaussianRational::from_complex64(x)
                .map(RatFunc::constant)
                .ok_or_else(|| Error::Domain("vector entries must be finite".into()))
        })
        .collect::<Result<_>>()?;
    let shifted = m.as_rat_matrix().minus_lambda();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = RatFunc::zero();
        for (j, x) in exact.iter().enumerate() {
            let a = shifted.get(i, j);
            if !a.is_zero() && !x.is_zero() {
                acc = &acc + &(a * x);
            }
        }
        if !acc.den().is_constant() && vanishes_at(acc.den(), z) {
            return Err(Error::Pole { row: i + 1, col: 0, at: z });
        }
        out.push(acc.eval_complex(z));
    }
    Ok(out)
}

/// Square matrix of polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    n: usize,
    data: Vec<Poly>,
}

impl PolyMatrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// 0-based entry access.
    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn to_complex(&self) -> Vec<Vec<Complex64>> {
        self.data.iter().map(Poly::to_complex).collect()
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|p| p.display_with("l").to_string()).collect();
            writeln!(f, "[{}]", row.join("; "))?;
        }
        Ok(())
    }
}

/// Clears denominators row by row: with `L_i` the product of the row's
/// denominators, off-diagonal entries become `L_i M_ij` and diagonal entries
/// `L_i (M_ii − λ) + λ`.
pub fn polynomial_extension(m: &WMatrix) -> PolyMatrix {
    let n = m.dim();
    let lambda = Poly::lambda();
    let multipliers: Vec<Poly> = (0..n).map(|i| (0..n).fold(Poly::one(), |acc, j| &acc * m.get(i, j).den())).collect();
    PolyMatrix::from_fn(n, |i, j| {
        let w = m.get(i, j);
        let l = &multipliers[i];
        let cleared = &l.exact_div(w.den()).expect("denominator divides the row product") * w.num();
        if i == j {
            &(&cleared - &(l * &lambda)) + &lambda
        } else {
            cleared
        }
    })
}
