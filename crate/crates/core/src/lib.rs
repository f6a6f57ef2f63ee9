//! Isospectral reduction of matrices whose entries are rational functions of
//! a spectral parameter λ.

pub mod error;
pub mod field;
pub mod io;
pub mod massspring;
pub mod numerics;
pub mod reduction;
pub mod regions;
pub mod wmatrix;

pub use error::{Error, Result};
pub use field::{GaussianRational, Poly, RatFunc};
pub use wmatrix::{IndexSet, RatMatrix, RootMultiset, WMatrix};
