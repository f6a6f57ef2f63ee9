//! Matrices over the rational function field.
//!
//! Index sets are 1-based at the API boundary, matching the usual
//! `N = {1, …, n}` labelling; everything internal is 0-based.

mod eval;
mod linalg;
mod spectrum;

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Poly, RatFunc};

pub use eval::{
    eval_at, in_domain, polynomial_extension, shifted_matvec, vanishes_at, CompiledMatrix, PolyMatrix, DOMAIN_TOL,
};
pub use linalg::{
    char_ratfunc, char_ratfunc_capped, det, det_bareiss, det_cofactor, det_elimination, inverse, inverse_adjugate,
    inverse_elimination, spectral_inverse, spectral_inverse_capped,
};
pub use spectrum::{inverse_spectrum, roots_of, spectrum, RootMultiset, ROOT_MATCH_TOL};

/// Sorted, duplicate-free set of 1-based indices.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    /// Sorts and deduplicates. Index 0 is rejected.
    pub fn new(indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut v: Vec<usize> = indices.into_iter().collect();
        if v.contains(&0) {
            return Err(Error::Domain("index sets are 1-based; 0 is not a valid index".into()));
        }
        v.sort_unstable();
        v.dedup();
        Ok(Self(v))
    }

    /// `{1, …, n}`.
    pub fn full(n: usize) -> Self {
        Self((1..=n).collect())
    }

    /// Parses a comma-separated list such as `"1,2,4"`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = Vec::new();
        for (k, part) in text.split(',').enumerate() {
            let part = part.trim();
            let idx = part.parse::<usize>().map_err(|_| Error::Parse {
                line: 1,
                column: k + 1,
                message: format!("invalid index {part:?}"),
            })?;
            out.push(idx);
        }
        Self::new(out)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn is_subset_of(&self, other: &IndexSet) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }

    /// Fails unless every index lies in `1..=n`.
    pub fn check_bounds(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&max) if max > n => Err(Error::Domain(format!("index {max} out of range for dimension {n}"))),
            _ => Ok(()),
        }
    }

    pub fn to_zero_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i - 1).collect()
    }

    /// `{1, …, n} − self`.
    pub fn complement(&self, n: usize) -> IndexSet {
        IndexSet((1..=n).filter(|&i| !self.contains(i)).collect())
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Dense rectangular matrix of rational functions, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<RatFunc>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<RatFunc>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Domain(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![RatFunc::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = RatFunc::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RatFunc) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// 0-based entry access.
    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, w: RatFunc) {
        self.data[i * self.cols + j] = w;
    }

    pub fn entries(&self) -> &[RatFunc] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[RatFunc] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Block with the given 0-based rows and columns.
    pub fn block(&self, rows: &[usize], cols: &[usize]) -> RatMatrix {
        RatMatrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Adds `w` to every diagonal entry.
    pub fn shift_diagonal(&self, w: &RatFunc) -> RatMatrix {
        let mut out = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let v = self.get(i, i) + w;
            out.set(i, i, v);
        }
        out
    }

    /// `self − λI`.
    pub fn minus_lambda(&self) -> RatMatrix {
        self.shift_diagonal(&(-RatFunc::lambda()))
    }

    /// `self + λI`.
    pub fn plus_lambda(&self) -> RatMatrix {
        self.shift_diagonal(&RatFunc::lambda())
    }

    pub fn max_degree(&self) -> usize {
        self.data.iter().map(RatFunc::max_degree).max().unwrap_or(0)
    }
}

impl<'a> Mul<&'a RatMatrix> for &'a RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        RatMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = RatFunc::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                let b = rhs.get(k, j);
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        })
    }
}

impl<'a> Add<&'a RatMatrix> for &'a RatMatrix {
    type Output = RatMatrix;
    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch");
        RatMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + rhs.get(i, j))
    }
}

impl<'a> Sub<&'a RatMatrix> for &'a RatMatrix {
    type Output = RatMatrix;
    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch");
        RatMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - rhs.get(i, j))
    }
}

/// Square matrix over the rational function field, written `M(λ)`.
///
/// Caches whether every entry has non-positive degree, the class of matrices
/// that can be reduced over any index set.
#[derive(Clone, Debug)]
pub struct WMatrix {
    inner: RatMatrix,
    in_w_pi: bool,
}

impl PartialEq for WMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

impl Eq for WMatrix {}

impl WMatrix {
    pub fn from_rat_matrix(inner: RatMatrix) -> Result<Self> {
        if !inner.is_square() {
            return Err(Error::Domain(format!("matrix must be square, got {}x{}", inner.rows, inner.cols)));
        }
        let in_w_pi = inner.data.iter().all(RatFunc::is_w_pi);
        Ok(Self { inner, in_w_pi })
    }

    pub fn from_rows(rows: Vec<Vec<RatFunc>>) -> Result<Self> {
        let n = rows.len();
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::Domain(format!("row {} has {} entries, expected {n}", i + 1, r.len())));
        }
        Self::from_rat_matrix(RatMatrix::new(n, n, rows.into_iter().flatten().collect())?)
    }

    /// Constant matrix with integer entries.
    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| RatFunc::from_int(x)).collect()).collect())
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize, usize) -> RatFunc) -> Self {
        Self::from_rat_matrix(RatMatrix::from_fn(n, n, f)).expect("square by construction")
    }

    pub fn identity(n: usize) -> Self {
        Self::from_rat_matrix(RatMatrix::identity(n)).expect("square")
    }

    pub fn dim(&self) -> usize {
        self.inner.rows
    }

    /// 0-based entry access.
    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        self.inner.get(i, j)
    }

    pub fn as_rat_matrix(&self) -> &RatMatrix {
        &self.inner
    }

    pub fn into_rat_matrix(self) -> RatMatrix {
        self.inner
    }

    /// True when every entry has non-positive degree.
    pub fn is_w_pi(&self) -> bool {
        self.in_w_pi
    }

    /// True when no entry depends on λ.
    pub fn is_constant(&self) -> bool {
        self.inner.data.iter().all(RatFunc::is_constant)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Submatrix with 1-based row and column index sets.
    pub fn submatrix(&self, rows: &IndexSet, cols: &IndexSet) -> Result<RatMatrix> {
        rows.check_bounds(self.dim())?;
        cols.check_bounds(self.dim())?;
        Ok(self.inner.block(&rows.to_zero_based(), &cols.to_zero_based()))
    }

    /// Principal submatrix `M_SS`.
    pub fn principal(&self, set: &IndexSet) -> Result<WMatrix> {
        WMatrix::from_rat_matrix(self.submatrix(set, set)?)
    }
}

impl fmt::Display for WMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim() {
            let row: Vec<String> = self.inner.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join("; "))?;
        }
        Ok(())
    }
}

/// Polynomial matrices only arise from polynomial extension, so a square
/// polynomial matrix can be lifted back for reuse of the rational routines.
impl From<&PolyMatrix> for WMatrix {
    fn from(p: &PolyMatrix) -> Self {
        WMatrix::from_fn(p.dim(), |i, j| RatFunc::from_poly(p.get(i, j).clone()))
    }
}

#[allow(dead_code)]
fn _assert_send_sync() {
    fn check<T: Send + Sync>() {}
    check::<WMatrix>();
    check::<Poly>();
}
