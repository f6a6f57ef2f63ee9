//! One-sided Jacobi (Hestenes) SVD for small dense complex matrices.

use num_complex::Complex64;

use super::matrix::{vec_norm, ComplexMatrix};

const MAX_SWEEPS: usize = 80;
/// Columns are treated as orthogonal once `|a_p^H a_q| ≤ TOL·‖a_p‖‖a_q‖`.
const ORTHO_TOL: f64 = 1e-15;

/// Thin SVD `A = U Σ V*` with singular values in descending order.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub sigma: Vec<f64>,
    pub v: ComplexMatrix,
}

impl Svd {
    pub fn sigma_min(&self) -> f64 {
        self.sigma.last().copied().unwrap_or(0.0)
    }

    pub fn sigma_max(&self) -> f64 {
        self.sigma.first().copied().unwrap_or(0.0)
    }

    /// `U Σ V*`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let k = self.sigma.len();
        let us = ComplexMatrix::from_fn(self.u.rows(), k, |i, j| self.u[(i, j)] * self.sigma[j]);
        &us * &self.v.adjoint()
    }
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Rotates columns `p` and `q` of the column-major store `cols` so that they
/// become orthogonal, applying the same rotation to `v`.
fn rotate(cols: &mut [Vec<Complex64>], v: &mut [Vec<Complex64>], p: usize, q: usize) -> bool {
    let alpha: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
    let beta: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
    let gamma = dot(&cols[p], &cols[q]);
    let g = gamma.norm();
    if g == 0.0 || g <= ORTHO_TOL * (alpha * beta).sqrt() {
        return false;
    }
    let phase = gamma / g;
    let zeta = (beta - alpha) / (2.0 * g);
    let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = c * t;
    let e_neg = phase.conj();
    for store in [cols, v] {
        let (lo, hi) = store.split_at_mut(q);
        let (ap, aq) = (&mut lo[p], &mut hi[0]);
        for (x, y) in ap.iter_mut().zip(aq.iter_mut()) {
            let (xp, yq) = (*x, *y);
            *x = xp * c - e_neg * yq * s;
            *y = phase * xp * s + yq * c;
        }
    }
    true
}

/// Extends the orthonormal columns in `basis` by one unit vector orthogonal
/// to all of them (Gram–Schmidt over the standard basis).
fn orthogonal_completion(basis: &[Vec<Complex64>], m: usize) -> Vec<Complex64> {
    for k in 0..m {
        let mut e = vec![Complex64::new(0.0, 0.0); m];
        e[k] = Complex64::new(1.0, 0.0);
        for _ in 0..2 {
            for b in basis {
                let proj = dot(b, &e);
                for (x, y) in e.iter_mut().zip(b) {
                    *x -= proj * y;
                }
            }
        }
        let n = vec_norm(&e);
        if n > 0.5 {
            return e.into_iter().map(|x| x / n).collect();
        }
    }
    unreachable!("fewer than m orthonormal vectors always admit a completion")
}

fn svd_tall(a: &ComplexMatrix) -> Svd {
    let (m, n) = (a.rows(), a.cols());
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<Complex64>> = (0..n)
        .map(|j| {
            let mut e = vec![Complex64::new(0.0, 0.0); n];
            e[j] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                rotated |= rotate(&mut cols, &mut v, p, q);
            }
        }
        if !rotated {
            break;
        }
    }
    let mut order: Vec<(f64, usize)> = cols.iter().map(|c| vec_norm(c)).zip(0..).collect();
    // Stable on ties so the output is deterministic.
    order.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.cmp(&y.1)));

    let mut u_cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let mut sigma = Vec::with_capacity(n);
    let mut v_cols = Vec::with_capacity(n);
    for &(s, j) in &order {
        let u = if s > 0.0 { cols[j].iter().map(|z| z / s).collect() } else { orthogonal_completion(&u_cols, m) };
        u_cols.push(u);
        sigma.push(s);
        v_cols.push(v[j].clone());
    }
    Svd {
        u: ComplexMatrix::from_fn(m, n, |i, j| u_cols[j][i]),
        sigma,
        v: ComplexMatrix::from_fn(n, n, |i, j| v_cols[j][i]),
    }
}

/// Thin SVD of any finite matrix.
pub fn svd(a: &ComplexMatrix) -> Svd {
    if a.rows() >= a.cols() {
        svd_tall(a)
    } else {
        let t = svd_tall(&a.adjoint());
        Svd { u: t.v, sigma: t.sigma, v: t.u }
    }
}

/// Singular values in descending order.
pub fn singular_values(a: &ComplexMatrix) -> Vec<f64> {
    svd(a).sigma
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_examples() {
        assert_eq!(singular_values(&ComplexMatrix::identity(3)), vec![1.0, 1.0, 1.0]);
        let d = ComplexMatrix::from_real_rows(&[&[3.0, 0.0], &[0.0, 1e-3]]);
        assert_eq!(singular_values(&d), vec![3.0, 1e-3]);
        let e = ComplexMatrix::from_real_rows(&[&[-1.0, 0.0], &[0.0, 0.0]]);
        assert_eq!(singular_values(&e), vec![1.0, 0.0]);
    }

    #[test]
    fn complex_reconstruction() {
        let a = ComplexMatrix::from_fn(4, 4, |i, j| {
            Complex64::new(((i * 7 + j * 3) % 5) as f64 - 2.0, ((i + 2 * j) % 3) as f64 - 1.0)
        });
        let s = svd(&a);
        let err = (&a - &s.reconstruct()).frobenius_norm();
        assert!(err < 1e-12 * s.sigma_max(), "{err}");
        let utu = &s.u.adjoint() * &s.u;
        assert!((&utu - &ComplexMatrix::identity(4)).frobenius_norm() < 1e-12);
    }

    #[test]
    fn wide_and_rank_deficient() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]]);
        let s = svd(&a);
        assert!((s.sigma[0] - 14f64.sqrt() * 5f64.sqrt()).abs() < 1e-12);
        assert!(s.sigma[1] < 1e-12);
        assert!((&a - &s.reconstruct()).frobenius_norm() < 1e-12);
    }
}
