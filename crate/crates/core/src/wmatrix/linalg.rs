//! Exact determinants and inverses over the rational function field.

use num_traits::{One, Zero};

use super::{RatMatrix, WMatrix};
use crate::error::{Error, Result};
use crate::field::{check_degree, poly_gcd, Poly, RatFunc, DEFAULT_DEGREE_CAP};

/// Pivot cost: smaller means cheaper to divide by.
fn pivot_cost(w: &RatFunc) -> usize {
    w.num().deg0() + w.den().deg0()
}

/// Index of the cheapest nonzero entry in column `col` at or below `from`.
fn choose_pivot(a: &[Vec<RatFunc>], col: usize, from: usize) -> Option<usize> {
    (from..a.len()).filter(|&r| !a[r][col].is_zero()).min_by_key(|&r| pivot_cost(&a[r][col]))
}

fn to_rows(m: &RatMatrix) -> Vec<Vec<RatFunc>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn require_square(m: &RatMatrix) -> Result<usize> {
    if !m.is_square() {
        return Err(Error::Domain(format!("{}x{} matrix is not square", m.rows(), m.cols())));
    }
    Ok(m.rows())
}

/// Determinant by fraction-field Gaussian elimination, pivoting on the
/// lowest-degree nonzero entry of each column.
pub fn det_elimination(m: &RatMatrix, cap: usize) -> Result<RatFunc> {
    let n = require_square(m)?;
    let mut a = to_rows(m);
    let mut det = RatFunc::one();
    for k in 0..n {
        let Some(p) = choose_pivot(&a, k, k) else {
            return Ok(RatFunc::zero());
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        let pivot_inv = a[k][k].inv().expect("nonzero pivot");
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = &a[i][k] * &pivot_inv;
            for j in k + 1..n {
                if a[k][j].is_zero() {
                    continue;
                }
                let v = &a[i][j] - &(&factor * &a[k][j]);
                check_degree(&v, cap)?;
                a[i][j] = v;
            }
            a[i][k] = RatFunc::zero();
        }
        det = &det * &a[k][k];
        check_degree(&det, cap)?;
    }
    Ok(det)
}

/// Determinant by clearing each row's denominators and running
/// fraction-free (Bareiss) elimination on the polynomial matrix. Only the
/// final quotient is reduced.
pub fn det_bareiss(m: &RatMatrix, cap: usize) -> Result<RatFunc> {
    let n = require_square(m)?;
    let mut scale = Poly::one();
    let mut a: Vec<Vec<Poly>> = Vec::with_capacity(n);
    for i in 0..n {
        let row = m.row(i);
        let mut l = Poly::one();
        for w in row {
            if !w.den().is_constant() {
                let g = poly_gcd(&l, w.den())?;
                l = &l * &w.den().exact_div(&g)?;
            }
        }
        a.push(row.iter().map(|w| Ok(&l.exact_div(w.den())? * w.num())).collect::<Result<Vec<_>>>()?);
        scale = &scale * &l;
    }
    let mut negate = false;
    let mut prev = Poly::one();
    for k in 0..n {
        let Some(p) = (k..n).filter(|&r| !a[r][k].is_zero()).min_by_key(|&r| a[r][k].deg0()) else {
            return Ok(RatFunc::zero());
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                let v = v.exact_div(&prev)?;
                if v.deg0() > cap {
                    return Err(Error::Resource { degree: v.deg0(), cap });
                }
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let d = if negate { -&a[n - 1][n - 1] } else { a[n - 1][n - 1].clone() };
    let out = RatFunc::reduce(d, scale)?;
    check_degree(&out, cap)?;
    Ok(out)
}

/// Determinant by Laplace expansion along the first row. Exponential in `n`;
/// intended for small matrices and as an independent check.
pub fn det_cofactor(m: &RatMatrix) -> Result<RatFunc> {
    let n = require_square(m)?;
    let idx: Vec<usize> = (0..n).collect();
    Ok(cofactor_rec(m, &idx, &idx))
}

fn cofactor_rec(m: &RatMatrix, rows: &[usize], cols: &[usize]) -> RatFunc {
    match rows.len() {
        0 => RatFunc::one(),
        1 => m.get(rows[0], cols[0]).clone(),
        2 => {
            &(m.get(rows[0], cols[0]) * m.get(rows[1], cols[1])) - &(m.get(rows[0], cols[1]) * m.get(rows[1], cols[0]))
        }
        _ => {
            let mut acc = RatFunc::zero();
            for (k, &c) in cols.iter().enumerate() {
                let a = m.get(rows[0], c);
                if a.is_zero() {
                    continue;
                }
                let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let minor = cofactor_rec(m, &rows[1..], &sub_cols);
                let term = a * &minor;
                acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// Determinant: cofactor expansion for `n ≤ 4`, fraction-free elimination
/// otherwise.
pub fn det(m: &RatMatrix, cap: usize) -> Result<RatFunc> {
    let n = require_square(m)?;
    if n <= 4 {
        let d = det_cofactor(m)?;
        check_degree(&d, cap)?;
        Ok(d)
    } else {
        det_bareiss(m, cap)
    }
}

/// `det(M(λ) − λI)` as a reduced rational function.
pub fn char_ratfunc(m: &WMatrix) -> Result<RatFunc> {
    char_ratfunc_capped(m, DEFAULT_DEGREE_CAP)
}

pub fn char_ratfunc_capped(m: &WMatrix, cap: usize) -> Result<RatFunc> {
    det(&m.as_rat_matrix().minus_lambda(), cap)
}

/// Gauss–Jordan inversion against the identity. A column without a nonzero
/// pivot proves the determinant is identically zero.
pub fn inverse_elimination(m: &RatMatrix, cap: usize) -> Result<RatMatrix> {
    let n = require_square(m)?;
    let mut a = to_rows(m);
    let mut b = to_rows(&RatMatrix::identity(n));
    for k in 0..n {
        let p =
            choose_pivot(&a, k, k).ok_or_else(|| Error::Singular(format!("no nonzero pivot in column {}", k + 1)))?;
        a.swap(p, k);
        b.swap(p, k);
        let pivot_inv = a[k][k].inv().expect("nonzero pivot");
        for j in 0..n {
            if !a[k][j].is_zero() {
                a[k][j] = &a[k][j] * &pivot_inv;
            }
            if !b[k][j].is_zero() {
                b[k][j] = &b[k][j] * &pivot_inv;
            }
        }
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let factor = a[i][k].clone();
            for j in 0..n {
                if !a[k][j].is_zero() {
                    let v = &a[i][j] - &(&factor * &a[k][j]);
                    check_degree(&v, cap)?;
                    a[i][j] = v;
                }
                if !b[k][j].is_zero() {
                    let v = &b[i][j] - &(&factor * &b[k][j]);
                    check_degree(&v, cap)?;
                    b[i][j] = v;
                }
            }
        }
    }
    RatMatrix::new(n, n, b.into_iter().flatten().collect())
}

/// Inverse as adjugate over determinant.
pub fn inverse_adjugate(m: &RatMatrix, cap: usize) -> Result<RatMatrix> {
    let n = require_square(m)?;
    let d = det_cofactor(m)?;
    let d_inv = d.inv().ok_or_else(|| Error::Singular("determinant vanishes identically".into()))?;
    let mut out = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            // adj(M)_{ij} = (−1)^{i+j} det(M with row j and column i removed)
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let minor = cofactor_rec(m, &rows, &cols);
            let signed = if (i + j) % 2 == 0 { minor } else { -minor };
            let v = &signed * &d_inv;
            check_degree(&v, cap)?;
            out.set(i, j, v);
        }
    }
    Ok(out)
}

/// Exact inverse: adjugate for `n ≤ 3`, Gauss–Jordan otherwise.
pub fn inverse(m: &RatMatrix, cap: usize) -> Result<RatMatrix> {
    if require_square(m)? <= 3 {
        inverse_adjugate(m, cap)
    } else {
        inverse_elimination(m, cap)
    }
}

/// `S(M) = (M − λI)^{-1} + λI`, which swaps spectrum and inverse spectrum.
pub fn spectral_inverse(m: &WMatrix) -> Result<WMatrix> {
    spectral_inverse_capped(m, DEFAULT_DEGREE_CAP)
}

pub fn spectral_inverse_capped(m: &WMatrix, cap: usize) -> Result<WMatrix> {
    let resolvent = inverse(&m.as_rat_matrix().minus_lambda(), cap).map_err(|e| match e {
        Error::Singular(_) => Error::Singular("M − λI is not invertible; no spectral inverse".into()),
        other => other,
    })?;
    WMatrix::from_rat_matrix(resolvent.plus_lambda())
}
