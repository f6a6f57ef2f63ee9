//! Randomized suites with fixed seeds. Each returns a one-line summary or a
//! description of the first failing case.

use isored::numerics::{opnorm, pseudo_witness, resolvent_norm, singular_values, Evaluator, Norm};
use isored::reduction::{isospectral_reduce, predicted_reduced_spectra, sequential_reduce};
use isored::regions::{pseudoresonance_raster, pseudospectrum_raster, GridSpec};
use isored::wmatrix::{char_ratfunc, eval_at, inverse_spectrum, spectral_inverse, spectrum, ROOT_MATCH_TOL};
use isored::RatFunc;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::Rng;

use crate::common::*;

pub type Outcome = Result<String, String>;

pub const CASES: usize = 200;
pub const WITNESS_POINTS: usize = 500;

fn leading(w: &RatFunc) -> isored::GaussianRational {
    w.num().leading().unwrap() / w.den().leading().unwrap()
}

/// Degree behaviour of sums, products, quotients and `w − λ`.
pub fn degree_laws() -> Outcome {
    let mut r = rng(0xDE61);
    let mut cancelling = 0;
    for case in 0..CASES {
        let k = r.gen_range(2..=4);
        let mut ws: Vec<RatFunc> =
            (0..k).map(|_| if r.gen_bool(0.15) { RatFunc::zero() } else { ratfunc(&mut r, 3) }).collect();
        if case % 4 == 0 && !ws[0].is_zero() {
            // A term whose leading part cancels the first one.
            let lower = &ws[0] * &rf(&[1], &[-3, 1]);
            ws.push(&(-&ws[0]) + &lower);
        }
        let nonzero: Vec<&RatFunc> = ws.iter().filter(|w| !w.is_zero()).collect();

        let sum = ws.iter().fold(RatFunc::zero(), |acc, w| &acc + w);
        if let Some(top) = nonzero.iter().map(|w| w.pi_degree()).max() {
            let lead = nonzero
                .iter()
                .filter(|w| w.pi_degree() == top)
                .fold(isored::GaussianRational::from_int(0), |acc, w| &acc + &leading(w));
            if lead != isored::GaussianRational::from_int(0) {
                if sum.pi_degree() != top {
                    return Err(format!("case {case}: degree of sum {} != {top}", sum.pi_degree()));
                }
            } else {
                cancelling += 1;
                if sum.pi_degree() > top {
                    return Err(format!("case {case}: degree of cancelling sum exceeds {top}"));
                }
            }
        }

        let prod = ws.iter().fold(RatFunc::one(), |acc, w| &acc * w);
        let want = if nonzero.len() == ws.len() { ws.iter().map(RatFunc::pi_degree).sum() } else { 0 };
        if prod.pi_degree() != want {
            return Err(format!("case {case}: degree of product {} != {want}", prod.pi_degree()));
        }

        let (a, b) = (&ws[0], &ws[1]);
        if !b.is_zero() {
            let q = a / b;
            let want = if a.is_zero() { 0 } else { a.pi_degree() - b.pi_degree() };
            if q.pi_degree() != want {
                return Err(format!("case {case}: degree of quotient {} != {want}", q.pi_degree()));
            }
        }

        let w = wpi_entry(&mut r);
        if (&w - &RatFunc::lambda()).pi_degree() != 1 {
            return Err(format!("case {case}: {w} − λ does not have degree 1"));
        }
    }
    Ok(format!("{CASES} cases ({cancelling} with cancelling leading terms)"))
}

/// Spectrum and inverse spectrum of a reduction against the predicted
/// multisets, plus the determinant quotient identity checked exactly.
pub fn reduction_spectra() -> Outcome {
    let mut r = rng(0x5BEC);
    for case in 0..CASES {
        let n = r.gen_range(2..=6);
        let m = wpi_matrix(&mut r, n);
        let b = proper_subset(&mut r, n);
        let red = isospectral_reduce(&m, &b).map_err(|e| format!("case {case}: {e}"))?;
        let (s, si) = predicted_reduced_spectra(&m, &b).map_err(|e| format!("case {case}: {e} for M =\n{m}"))?;
        let got_s = spectrum(&red).map_err(|e| format!("case {case}: {e} for R(M; {b}) with M =\n{m}"))?;
        let got_si = inverse_spectrum(&red).map_err(|e| format!("case {case}: {e} for R(M; {b}) with M =\n{m}"))?;
        if !got_s.approx_eq(&s, ROOT_MATCH_TOL) || !got_si.approx_eq(&si, ROOT_MATCH_TOL) {
            return Err(format!("case {case}: n={n} B={b}: spectrum {got_s} vs {s}, inverse {got_si} vs {si}"));
        }
        let i = b.complement(n);
        let quotient = &char_ratfunc(&m).unwrap() / &char_ratfunc(&m.principal(&i).unwrap()).unwrap();
        if char_ratfunc(&red).unwrap() != quotient {
            return Err(format!("case {case}: det(R − λI) differs from the determinant quotient"));
        }
    }
    Ok(format!("{CASES} matrices up to 6×6"))
}

/// A chain of reductions equals the direct reduction over its last set.
pub fn chains() -> Outcome {
    let mut r = rng(0xC4A1);
    for case in 0..CASES {
        let n = r.gen_range(3..=6);
        let m = wpi_matrix(&mut r, n);
        let c = chain(&mut r, n);
        let seq = sequential_reduce(&m, &c).map_err(|e| format!("case {case}: {e}"))?;
        let direct = isospectral_reduce(&m, c.last().unwrap()).map_err(|e| format!("case {case}: {e}"))?;
        if seq != direct {
            let sets: Vec<String> = c.iter().map(|s| s.to_string()).collect();
            return Err(format!("case {case}: chain {} differs from direct reduction", sets.join(" ⊃ ")));
        }
    }
    Ok(format!("{CASES} chains"))
}

/// Reductions of proper-class matrices stay in the proper class.
pub fn closure() -> Outcome {
    let mut r = rng(0xC105);
    for case in 0..CASES {
        let n = r.gen_range(2..=6);
        let m = wpi_matrix(&mut r, n);
        let red = isospectral_reduce(&m, &proper_subset(&mut r, n)).map_err(|e| format!("case {case}: {e}"))?;
        if !red.is_w_pi() {
            return Err(format!("case {case}: reduction left the class:\n{red}"));
        }
    }
    Ok(format!("{CASES} reductions"))
}

/// `S(S(M)) = M` and `det(S − λI)·det(M − λI) = 1`.
pub fn spectral_inverse_involution() -> Outcome {
    let mut r = rng(0x5050);
    for case in 0..CASES {
        let n = r.gen_range(1..=4);
        let m = wpi_matrix(&mut r, n);
        let s = spectral_inverse(&m).map_err(|e| format!("case {case}: {e}"))?;
        let ss = spectral_inverse(&s).map_err(|e| format!("case {case}: {e}"))?;
        if ss != m {
            return Err(format!("case {case}: S(S(M)) != M for\n{m}"));
        }
        if &char_ratfunc(&s).unwrap() * &char_ratfunc(&m).unwrap() != RatFunc::one() {
            return Err(format!("case {case}: characteristic functions are not reciprocal"));
        }
    }
    Ok(format!("{CASES} matrices"))
}

fn random_window(r: &mut impl Rng) -> GridSpec {
    let (cx, cy) = (r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0));
    let (w, h) = (r.gen_range(0.5..4.0), r.gen_range(0.5..4.0));
    GridSpec::new((cx - w, cx + w), (cy - h, cy + h), 6, 5).unwrap()
}

/// Pseudoresonance values of `M` equal pseudospectrum values of `S(M)`,
/// and both equal `1/σ_min(S(M)(λ) − λI)`.
pub fn resonance_duality() -> Outcome {
    let mut r = rng(0x7E08);
    let mut points = 0;
    for case in 0..CASES {
        let n = r.gen_range(1..=4);
        let m = wpi_matrix(&mut r, n);
        let s = spectral_inverse(&m).unwrap();
        let spec = random_window(&mut r);
        let pr = pseudoresonance_raster(&m, spec, Norm::Two).map_err(|e| format!("case {case}: {e}"))?;
        let ps = pseudospectrum_raster(&s, spec, Norm::Two).map_err(|e| format!("case {case}: {e}"))?;
        let ev = Evaluator::new(&s);
        for k in 0..spec.len() {
            if pr.flags[k] || ps.flags[k] {
                continue;
            }
            let z = spec.point_at(k);
            if !close(pr.values[k], ps.values[k], 1e-9) {
                return Err(format!(
                    "case {case}: at {z}: ‖M − λI‖ = {} but ‖(S − λI)^-1‖ = {}",
                    pr.values[k], ps.values[k]
                ));
            }
            if let Ok(a) = ev.shifted(z) {
                let smin = *singular_values(&a).last().unwrap();
                if !close(pr.values[k], 1.0 / smin, 1e-9) {
                    return Err(format!(
                        "case {case}: at {z}: ‖M − λI‖ = {} but 1/σ_min = {}",
                        pr.values[k],
                        1.0 / smin
                    ));
                }
            }
            points += 1;
        }
    }
    Ok(format!("{CASES} matrices, {points} grid points"))
}

/// Small residual vectors exist exactly where the resolvent is large, and
/// the rank-one witness turns the point into an eigenvalue.
pub fn witnesses() -> Outcome {
    let mut r = rng(0xA9B0);
    let mut members = 0;
    for case in 0..WITNESS_POINTS {
        let n = r.gen_range(1..=4);
        let m = wpi_matrix(&mut r, n);
        let spec = random_window(&mut r);
        let z = spec.point(r.gen_range(0..spec.nx), r.gen_range(0..spec.ny));
        let eps = 10f64.powf(r.gen_range(-1.5..0.5));
        let Ok(w) = pseudo_witness(&m, z) else { continue };
        let value = resolvent_norm(&m, z, Norm::Two).map_err(|e| format!("case {case}: {e}"))?;
        // Skip points sitting on the boundary to rounding accuracy.
        if close(w.sigma_min, eps, 1e-9) {
            continue;
        }
        let by_residual = w.sigma_min < eps;
        let by_resolvent = value > 1.0 / eps;
        if by_residual != by_resolvent {
            return Err(format!(
                "case {case}: at {z}, σ_min = {} but resolvent norm = {value}, ε = {eps}",
                w.sigma_min
            ));
        }
        if by_residual {
            members += 1;
            let e_norm = opnorm(&w.perturbation, Norm::Two);
            if !(e_norm < eps) {
                return Err(format!("case {case}: perturbation norm {e_norm} ≥ ε = {eps}"));
            }
            let perturbed = &eval_at(&m, z).unwrap().shift(z) + &w.perturbation;
            let residual = isored::numerics::vec_norm(&perturbed.mul_vec(&w.right_vector));
            if residual > 1e-8 {
                return Err(format!("case {case}: perturbed residual {residual} at {z}"));
            }
        }
    }
    Ok(format!("{WITNESS_POINTS} points, {members} members with valid witnesses"))
}

/// `1/‖M(λ) − λI‖ ≤ ‖(M(λ) − λI)^{-1}‖` at every grid point in the domain.
pub fn norm_inequality() -> Outcome {
    let mut r = rng(0x2525);
    let mut points = 0;
    for case in 0..CASES {
        let n = r.gen_range(1..=4);
        let m = wpi_matrix(&mut r, n);
        let spec = random_window(&mut r);
        let p = [Norm::One, Norm::Two, Norm::Inf][case % 3];
        let ev = Evaluator::new(&m);
        for k in 0..spec.len() {
            let z: Complex64 = spec.point_at(k);
            let Some(fwd) = ev.shifted_norm(z, p) else { continue };
            let inv = ev.resolvent_norm(z, p).map_err(|e| format!("case {case}: {e}"))?;
            if 1.0 / fwd > inv * (1.0 + 1e-12) {
                return Err(format!("case {case}: at {z} with {p}-norm, 1/{fwd} > {inv}"));
            }
            points += 1;
        }
    }
    Ok(format!("{CASES} matrices, {points} grid points"))
}

pub fn all() -> Vec<(&'static str, fn() -> Outcome)> {
    vec![
        ("degree laws", degree_laws),
        ("reduced spectra", reduction_spectra),
        ("reduction chains", chains),
        ("class closure", closure),
        ("spectral inverse involution", spectral_inverse_involution),
        ("resonance duality", resonance_duality),
        ("witness equivalence", witnesses),
        ("norm inequality", norm_inequality),
    ]
}
