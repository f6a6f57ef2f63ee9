//! Floating-point kernels: polynomial roots, SVD, operator norms, resolvents.

mod matrix;
mod norms;
mod resolvent;
mod roots;
mod svd;

pub use matrix::{vec_norm, ComplexMatrix};
pub use norms::{opnorm, Norm};
pub use resolvent::{pseudo_witness, resolvent_norm, Evaluator, PseudoWitness, SINGULAR_CUTOFF};
pub use roots::roots_numeric;
pub use svd::{singular_values, svd, Svd};
