//! Exact arithmetic over the field of rational functions in λ with
//! Gaussian-rational coefficients.

mod gaussian;
mod poly;
mod ratfunc;

pub use gaussian::GaussianRational;
pub use poly::{eval_complex, poly_gcd, poly_squarefree_factor, Poly};
pub use ratfunc::RatFunc;

/// Default cap on the degree of any intermediate numerator or denominator.
pub const DEFAULT_DEGREE_CAP: usize = 512;

/// Raises a resource error if `w` exceeds `cap`.
pub fn check_degree(w: &RatFunc, cap: usize) -> crate::Result<()> {
    let degree = w.max_degree();
    if degree > cap {
        return Err(crate::Error::Resource { degree, cap });
    }
    Ok(())
}
