//! Simultaneous root finding for square-free polynomials (Aberth–Ehrlich).

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{eval_complex, Poly};

pub const MAX_SWEEPS: usize = 200;
/// Stop once every correction is below this, relative to `max(1, |z|)`.
pub const CORRECTION_TOL: f64 = 1e-14;
/// Accepted residual `|p(z)| / Σ|a_k| max(1,|z|)^k`.
pub const RESIDUAL_TOL: f64 = 1e-9;

/// All `deg(p)` complex roots of a square-free polynomial.
///
/// Callers factor first (see [`crate::field::poly_squarefree_factor`]);
/// repeated roots slow Aberth iteration to linear convergence.
pub fn roots_numeric(p: &Poly) -> Result<Vec<Complex64>> {
    let degree = p.degree().ok_or_else(|| Error::Domain("roots of the zero polynomial".into()))?;
    let coeffs = p.to_complex();
    if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::Numeric("polynomial coefficients overflow f64".into()));
    }
    match degree {
        0 => Ok(Vec::new()),
        1 => Ok(vec![-coeffs[0] / coeffs[1]]),
        _ => aberth(&coeffs),
    }
}

fn derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect()
}

/// Cauchy bound: the positive root of `|a_n| x^n − Σ_{k<n} |a_k| x^k`.
/// Every root of `p` lies within it, and unlike `1 + max|a_k/a_n|` it does
/// not blow up when the coefficients are large compared to the leading one.
fn cauchy_radius(coeffs: &[Complex64]) -> f64 {
    let n = coeffs.len() - 1;
    let abs: Vec<f64> = coeffs.iter().map(|c| c.norm()).collect();
    // Σ_{k<n} |a_k| x^{k−n} − |a_n| is decreasing in x; bisect on a log scale.
    let excess = |x: f64| {
        let mut acc = 0.0;
        let inv = 1.0 / x;
        for a in &abs[..n] {
            acc = (acc + a) * inv;
        }
        acc - abs[n]
    };
    let mut hi = 1.0 + abs[..n].iter().map(|a| a / abs[n]).fold(0.0, f64::max);
    let mut lo = hi;
    while excess(lo) < 0.0 && lo > 1e-300 {
        lo *= 0.5;
    }
    if excess(lo) < 0.0 {
        return hi;
    }
    for _ in 0..100 {
        let mid = (lo * hi).sqrt();
        if excess(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-12 * hi {
            break;
        }
    }
    hi
}

/// Initial guesses on a circle whose radius is the Cauchy bound, with an
/// angular offset so that real-coefficient inputs do not start symmetric.
fn initial_guesses(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let radius = cauchy_radius(coeffs);
    (0..n)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect()
}

fn backward_residual(coeffs: &[Complex64], z: Complex64) -> f64 {
    let value = eval_complex(coeffs, z).norm();
    let abs: Vec<Complex64> = coeffs.iter().map(|c| Complex64::new(c.norm(), 0.0)).collect();
    let scale = eval_complex(&abs, Complex64::new(z.norm().max(1.0), 0.0)).re;
    if scale == 0.0 {
        0.0
    } else {
        value / scale
    }
}

fn aberth(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let dcoeffs = derivative(coeffs);
    let mut z = initial_guesses(coeffs);
    let n = z.len();
    for _ in 0..MAX_SWEEPS {
        let mut converged = true;
        for k in 0..n {
            let pz = eval_complex(coeffs, z[k]);
            if pz.is_zero() {
                continue;
            }
            let ratio = pz / eval_complex(&dcoeffs, z[k]);
            let repulsion: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !(w.re.is_finite() && w.im.is_finite()) {
                // Derivative vanished at a guess; nudge and try again.
                let nudge = Complex64::new(1e-3, 1e-3) * (1.0 + z[k].norm());
                z[k] += nudge;
                converged = false;
                continue;
            }
            z[k] -= w;
            if w.norm() > CORRECTION_TOL * z[k].norm().max(1.0) {
                converged = false;
            }
        }
        if converged {
            break;
        }
    }
    let worst = z.iter().map(|&r| backward_residual(coeffs, r)).fold(0.0, f64::max);
    if worst > RESIDUAL_TOL {
        return Err(Error::Numeric(format!(
            "Aberth iteration did not converge in {MAX_SWEEPS} sweeps (worst residual {worst:e})"
        )));
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn quadratic_examples() {
        let r = sorted(roots_numeric(&Poly::from_ints(&[-1, 0, 1])).unwrap());
        assert!(close(r[0], Complex64::new(-1.0, 0.0)) && close(r[1], Complex64::new(1.0, 0.0)));
        let r = sorted(roots_numeric(&Poly::from_ints(&[-1, -1, 1])).unwrap());
        let s5 = 5f64.sqrt();
        assert!(close(r[0], Complex64::new((1.0 - s5) / 2.0, 0.0)));
        assert!(close(r[1], Complex64::new((1.0 + s5) / 2.0, 0.0)));
    }

    #[test]
    fn spring_numerator() {
        // λ(λ−2)(λ²−4λ+2) has roots 0, 2−√2, 2, 2+√2
        let p = &(&Poly::from_ints(&[0, 1]) * &Poly::from_ints(&[-2, 1])) * &Poly::from_ints(&[2, -4, 1]);
        let r = sorted(roots_numeric(&p).unwrap());
        let s2 = 2f64.sqrt();
        for (got, want) in r.iter().zip([0.0, 2.0 - s2, 2.0, 2.0 + s2]) {
            assert!((got - Complex64::new(want, 0.0)).norm() < 1e-12, "{got} vs {want}");
        }
    }

    #[test]
    fn zero_poly_is_rejected() {
        assert!(roots_numeric(&Poly::zero()).is_err());
        assert!(roots_numeric(&Poly::from_ints(&[3])).unwrap().is_empty());
    }

    #[test]
    fn roots_of_unity_high_degree() {
        let mut c = vec![0i64; 25];
        c[0] = -1;
        c[24] = 1;
        let r = roots_numeric(&Poly::from_ints(&c)).unwrap();
        assert_eq!(r.len(), 24);
        for z in r {
            assert!((z.norm() - 1.0).abs() < 1e-12);
            assert!((z.powi(24) - 1.0).norm() < 1e-10);
        }
    }

    #[test]
    fn large_coefficients_small_roots() {
        // Degree 29 with coefficients up to ~4e5 but all roots within |z| < 3.3.
        let c: [(i64, i64); 30] = [
            (8192, -8192),
            (18432, 6144),
            (-13568, 66304),
            (-124672, -76288),
            (70720, -22528),
            (36688, 29728),
            (4048, -159704),
            (351392, 19684),
            (-69016, 425046),
            (-443929, -10183),
            (143289, -364601),
            (181170, 157886),
            (-323324, 156770),
            (-117298, -290120),
            (262468, -145000),
            (161759, 148271),
            (-53899, 129235),
            (-105567, -2008),
            (-27858, -64027),
            (38668, -25449),
            (20479, 20605),
            (-9826, 12963),
            (-7040, -3949),
            (1306, -3450),
            (1409, 222),
            (13, 470),
            (-137, 39),
            (-17, -24),
            (5, -4),
            (1, 0),
        ];
        let p = Poly::new(c.iter().map(|&(a, b)| crate::field::GaussianRational::from_ints(a, b)).collect());
        let r = roots_numeric(&p).unwrap();
        assert_eq!(r.len(), 29);
        assert!(r.iter().all(|z| z.norm() < 3.3));
        let coeffs = p.to_complex();
        assert!(r.iter().all(|&z| backward_residual(&coeffs, z) < 1e-12));
    }

    #[test]
    fn cauchy_radius_is_tight() {
        // x² − 3x + 2 has roots 1, 2; the Cauchy polynomial x² − 3x − 2 has root (3+√17)/2.
        let r = cauchy_radius(&Poly::from_ints(&[2, -3, 1]).to_complex());
        assert!((r - (3.0 + 17f64.sqrt()) / 2.0).abs() < 1e-10);
    }
}
