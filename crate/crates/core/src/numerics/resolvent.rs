//! Resolvent norms and pseudospectral witnesses.

use std::sync::OnceLock;

use num_complex::Complex64;
use num_traits::Zero;

use super::matrix::ComplexMatrix;
use super::norms::{opnorm, Norm};
use super::svd::svd;
use crate::error::{Error, Result};
use crate::field::{RatFunc, DEFAULT_DEGREE_CAP};
use crate::wmatrix::{char_ratfunc, eval_at, inverse, vanishes_at, CompiledMatrix, WMatrix};

/// `σ_min` at or below this fraction of the Frobenius norm counts as zero.
pub const SINGULAR_CUTOFF: f64 = 1e-14;

fn is_singular(a: &ComplexMatrix, sigma_min: f64) -> bool {
    sigma_min <= SINGULAR_CUTOFF * a.frobenius_norm()
}

/// `‖A^{-1}‖_p`, or `+∞` when `A` is numerically singular.
fn inverse_norm(a: &ComplexMatrix, p: Norm) -> f64 {
    let s = svd(a);
    if is_singular(a, s.sigma_min()) {
        return f64::INFINITY;
    }
    match p {
        Norm::Two => 1.0 / s.sigma_min(),
        _ => a.try_inverse().map_or(f64::INFINITY, |inv| opnorm(&inv, p)),
    }
}

/// Evaluates `M(λ) − λI` and its resolvent at many points.
///
/// Symbolic data needed only off the domain is computed on first use and
/// shared between threads.
pub struct Evaluator<'a> {
    m: &'a WMatrix,
    compiled: CompiledMatrix,
    char_fn: OnceLock<Result<RatFunc>>,
    resolvent: OnceLock<Result<CompiledMatrix>>,
}

impl<'a> Evaluator<'a> {
    pub fn new(m: &'a WMatrix) -> Self {
        Self {
            m,
            compiled: CompiledMatrix::new(m.as_rat_matrix()),
            char_fn: OnceLock::new(),
            resolvent: OnceLock::new(),
        }
    }

    pub fn matrix(&self) -> &WMatrix {
        self.m
    }

    pub fn in_domain(&self, z: Complex64) -> bool {
        self.compiled.in_domain(z)
    }

    /// `M(λ₀) − λ₀ I`.
    pub fn shifted(&self, z: Complex64) -> Result<ComplexMatrix> {
        Ok(self.compiled.eval(z)?.shift(z))
    }

    /// `det(M − λI)`, computed once.
    pub fn char_ratfunc(&self) -> Result<&RatFunc> {
        self.char_fn.get_or_init(|| char_ratfunc(self.m)).as_ref().map_err(Clone::clone)
    }

    /// True when `λ₀` is a root of the numerator of `det(M − λI)`.
    pub fn in_spectrum(&self, z: Complex64) -> Result<bool> {
        let p = self.char_ratfunc()?.num();
        Ok(p.is_zero() || vanishes_at(&p.monic(), z))
    }

    /// True when `λ₀` is a root of the denominator of `det(M − λI)`.
    pub fn in_inverse_spectrum(&self, z: Complex64) -> Result<bool> {
        let q = self.char_ratfunc()?.den();
        Ok(!q.is_constant() && vanishes_at(q, z))
    }

    fn symbolic_resolvent(&self) -> Result<&CompiledMatrix> {
        self.resolvent
            .get_or_init(|| {
                let r = inverse(&self.m.as_rat_matrix().minus_lambda(), DEFAULT_DEGREE_CAP)?;
                Ok(CompiledMatrix::new(&r))
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// `‖(M(λ₀) − λ₀I)^{-1}‖_p`; `+∞` on the spectrum.
    pub fn resolvent_norm(&self, z: Complex64, p: Norm) -> Result<f64> {
        if self.in_domain(z) {
            return Ok(inverse_norm(&self.compiled.eval_unchecked(z).shift(z), p));
        }
        if self.in_spectrum(z)? {
            return Ok(f64::INFINITY);
        }
        let r = self.symbolic_resolvent()?.eval(z)?;
        Ok(opnorm(&r, p))
    }

    /// `‖M(λ₀) − λ₀I‖_p`, or `None` when `λ₀` is outside the domain.
    pub fn shifted_norm(&self, z: Complex64, p: Norm) -> Option<f64> {
        self.in_domain(z).then(|| opnorm(&self.compiled.eval_unchecked(z).shift(z), p))
    }
}

/// `‖(M(λ₀) − λ₀I)^{-1}‖_p`.
///
/// Inside the domain this is computed from `M(λ₀)`; at eigenvalues it is
/// `+∞`. Outside the domain the symbolic resolvent is evaluated after
/// cancellation, and a pole that survives is reported as an error.
pub fn resolvent_norm(m: &WMatrix, z: Complex64, p: Norm) -> Result<f64> {
    Evaluator::new(m).resolvent_norm(z, p)
}

/// Smallest singular triple of `M(λ₀) − λ₀I` and the rank-one perturbation
/// that makes `λ₀` an exact eigenvalue.
#[derive(Clone, Debug)]
pub struct PseudoWitness {
    pub lambda: Complex64,
    pub sigma_min: f64,
    pub right_vector: Vec<Complex64>,
    pub left_vector: Vec<Complex64>,
    pub perturbation: ComplexMatrix,
}

impl PseudoWitness {
    pub fn from_shifted(lambda: Complex64, a: &ComplexMatrix) -> Self {
        let s = svd(a);
        let k = s.sigma.len() - 1;
        let right_vector = s.v.column(k);
        let left_vector = s.u.column(k);
        let sigma_min = s.sigma[k];
        let perturbation = ComplexMatrix::outer(&left_vector, &right_vector).scale(Complex64::new(-sigma_min, 0.0));
        Self { lambda, sigma_min, right_vector, left_vector, perturbation }
    }
}

/// Witness at `λ₀ ∈ dom(M)`.
pub fn pseudo_witness(m: &WMatrix, z: Complex64) -> Result<PseudoWitness> {
    if m.dim() == 0 {
        return Err(Error::Domain("empty matrix".into()));
    }
    let a = eval_at(m, z)?.shift(z);
    Ok(PseudoWitness::from_shifted(z, &a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Poly;
    use crate::numerics::vec_norm;

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::reduce(Poly::from_ints(n), Poly::from_ints(d)).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn reduced_one_by_one() {
        let m = WMatrix::from_rows(vec![vec![rf(&[1], &[0, 1])]]).unwrap();
        assert_eq!(resolvent_norm(&m, c(0.0, 0.0), Norm::Two).unwrap(), 0.0);
        let z = c(0.3, 0.8);
        let want = (z / (1.0 - z * z)).norm();
        assert!((resolvent_norm(&m, z, Norm::Two).unwrap() - want).abs() < 1e-12 * want);
        assert_eq!(resolvent_norm(&m, c(1.0, 0.0), Norm::Two).unwrap(), f64::INFINITY);
    }

    #[test]
    fn golden_ratio_example() {
        let m =
            WMatrix::from_rows(vec![vec![rf(&[1], &[-1, 1]), RatFunc::zero()], vec![RatFunc::zero(), RatFunc::zero()]])
                .unwrap();
        assert!((resolvent_norm(&m, c(1.0, 0.0), Norm::Two).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(resolvent_norm(&m, c(0.0, 0.0), Norm::Two).unwrap(), f64::INFINITY);
        let w = pseudo_witness(&m, c(0.0, 0.0)).unwrap();
        assert_eq!(w.sigma_min, 0.0);
        assert!((w.right_vector[0].norm()) < 1e-15 && (w.right_vector[1].norm() - 1.0).abs() < 1e-15);
        assert!(pseudo_witness(&m, c(1.0, 0.0)).is_err());
    }

    #[test]
    fn block_example_closed_form() {
        let m = WMatrix::from_int_rows(&[&[1, 1, 0, 0], &[1, 1, 0, 0], &[0, 0, 1, 1], &[0, 0, 1, 1]]).unwrap();
        let z = c(1.0, 1.0);
        let got = resolvent_norm(&m, z, Norm::Two).unwrap();
        assert!((got - 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn witness_invariants() {
        let m = WMatrix::from_int_rows(&[&[1, 2, 0], &[0, -1, 3], &[4, 0, 2]]).unwrap();
        let z = c(0.4, -0.7);
        let w = pseudo_witness(&m, z).unwrap();
        let a = crate::wmatrix::eval_at(&m, z).unwrap().shift(z);
        assert!((vec_norm(&w.right_vector) - 1.0).abs() < 1e-12);
        assert!((vec_norm(&a.mul_vec(&w.right_vector)) - w.sigma_min).abs() < 1e-9 * w.sigma_min);
        assert!((opnorm(&w.perturbation, Norm::Two) - w.sigma_min).abs() < 1e-9 * w.sigma_min);
        let perturbed = &a + &w.perturbation;
        assert!(vec_norm(&perturbed.mul_vec(&w.right_vector)) < 1e-8 * w.sigma_min.max(1.0));
    }
}
