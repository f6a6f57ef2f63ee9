//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use isored::{GaussianRational, IndexSet, Poly, RatFunc, WMatrix};
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rf(num: &[i64], den: &[i64]) -> RatFunc {
    RatFunc::reduce(Poly::from_ints(num), Poly::from_ints(den)).unwrap()
}

pub fn set(v: &[usize]) -> IndexSet {
    IndexSet::new(v.iter().copied()).unwrap()
}

/// Small Gaussian integer, real three times out of four.
pub fn gauss(r: &mut impl Rng, bound: i64) -> GaussianRational {
    let re = r.gen_range(-bound..=bound);
    let im = if r.gen_bool(0.25) { r.gen_range(-bound..=bound) } else { 0 };
    GaussianRational::from_ints(re, im)
}

pub fn nonzero_gauss(r: &mut impl Rng, bound: i64) -> GaussianRational {
    loop {
        let g = gauss(r, bound);
        if g != GaussianRational::from_int(0) {
            return g;
        }
    }
}

/// Polynomial of exact degree `deg`.
pub fn poly(r: &mut impl Rng, deg: usize, bound: i64) -> Poly {
    let mut c: Vec<GaussianRational> = (0..deg).map(|_| gauss(r, bound)).collect();
    c.push(nonzero_gauss(r, bound));
    Poly::new(c)
}

/// Arbitrary nonzero rational function with numerator and denominator
/// degrees up to `max_deg`.
pub fn ratfunc(r: &mut impl Rng, max_deg: usize) -> RatFunc {
    let (dp, dq) = (r.gen_range(0..=max_deg), r.gen_range(0..=max_deg));
    let p = poly(r, dp, 3);
    let q = poly(r, dq, 3);
    RatFunc::reduce(p, q).unwrap()
}

/// Poles drawn from a small set so that repeated roots across entries
/// are common.
const POLES: [(i64, i64); 6] = [(-2, 0), (-1, 0), (0, 0), (1, 0), (2, 0), (0, 1)];

fn pole_poly(r: &mut impl Rng, deg: usize) -> Poly {
    let mut q = Poly::constant(GaussianRational::from_int(1));
    for _ in 0..deg {
        let (a, b) = *POLES.choose(r).unwrap();
        q = &q * &Poly::linear_root(GaussianRational::from_ints(a, b));
    }
    q
}

/// Entry of a random matrix in the proper class: zero, a constant, or a
/// fraction whose numerator degree does not exceed its denominator degree.
pub fn wpi_entry(r: &mut impl Rng) -> RatFunc {
    match r.gen_range(0..20) {
        0..=9 => RatFunc::from_int(0),
        10..=14 => RatFunc::constant(nonzero_gauss(r, 2)),
        _ => {
            let dq = if r.gen_bool(0.8) { 1 } else { 2 };
            let dp = r.gen_range(0..=dq);
            RatFunc::reduce(poly(r, dp, 2), pole_poly(r, dq)).unwrap()
        }
    }
}

pub fn wpi_matrix(r: &mut impl Rng, n: usize) -> WMatrix {
    WMatrix::from_fn(n, |_, _| wpi_entry(r))
}

/// Random proper nonempty subset of `1..=n`.
pub fn proper_subset(r: &mut impl Rng, n: usize) -> IndexSet {
    let k = r.gen_range(1..n);
    let mut all: Vec<usize> = (1..=n).collect();
    all.shuffle(r);
    IndexSet::new(all.into_iter().take(k)).unwrap()
}

/// Strictly nested chain `B1 ⊃ B2 ⊃ ... ⊃ Bm` of proper subsets of `1..=n`.
pub fn chain(r: &mut impl Rng, n: usize) -> Vec<IndexSet> {
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(r);
    let mut sizes: Vec<usize> = (1..n).collect();
    sizes.shuffle(r);
    let mut sizes: Vec<usize> = sizes.into_iter().take(r.gen_range(2..=3).min(n - 1)).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes.into_iter().map(|k| IndexSet::new(order[..k].iter().copied()).unwrap()).collect()
}

pub fn complex_in(r: &mut impl Rng, (a, b): (f64, f64), (c, d): (f64, f64)) -> Complex64 {
    Complex64::new(r.gen_range(a..b), r.gen_range(c..d))
}

/// Relative agreement, with both infinities counted as equal.
pub fn close(a: f64, b: f64, rel: f64) -> bool {
    if a.is_infinite() || b.is_infinite() {
        return a == b;
    }
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}
