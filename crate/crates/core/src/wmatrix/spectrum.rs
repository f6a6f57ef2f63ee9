//! Spectra and inverse spectra as multisets of numeric roots.

use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;

use super::{char_ratfunc, WMatrix};
use crate::error::{Error, Result};
use crate::field::{poly_squarefree_factor, Poly};
use crate::numerics::roots_numeric;

/// Two roots closer than this are treated as the same point.
pub const ROOT_MATCH_TOL: f64 = 1e-9;

/// Roots with multiplicities. Multiplicities are exact; root coordinates are
/// floating point.
#[derive(Clone, Debug, Default)]
pub struct RootMultiset {
    entries: Vec<(Complex64, usize)>,
}

impl RootMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds from (root, multiplicity) pairs, merging roots within tolerance.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Complex64, usize)>) -> Self {
        let mut out = Self::new();
        for (r, m) in pairs {
            out.insert(r, m);
        }
        out.sort();
        out
    }

    /// Each root listed once per occurrence.
    pub fn from_roots(roots: impl IntoIterator<Item = Complex64>) -> Self {
        Self::from_pairs(roots.into_iter().map(|r| (r, 1)))
    }

    fn find(&self, r: Complex64, tol: f64) -> Option<usize> {
        self.entries.iter().position(|(x, _)| (x - r).norm() <= tol)
    }

    fn insert(&mut self, r: Complex64, m: usize) {
        if m == 0 {
            return;
        }
        match self.find(r, ROOT_MATCH_TOL) {
            Some(k) => self.entries[k].1 += m,
            None => self.entries.push((r, m)),
        }
    }

    fn sort(&mut self) {
        self.entries.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
    }

    pub fn pairs(&self) -> &[(Complex64, usize)] {
        &self.entries
    }

    /// Every root repeated by its multiplicity.
    pub fn expanded(&self) -> Vec<Complex64> {
        self.entries.iter().flat_map(|&(r, m)| std::iter::repeat_n(r, m)).collect()
    }

    /// Sum of multiplicities.
    pub fn total(&self) -> usize {
        self.entries.iter().map(|e| e.1).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn multiplicity(&self, r: Complex64) -> usize {
        self.find(r, ROOT_MATCH_TOL).map_or(0, |k| self.entries[k].1)
    }

    pub fn contains(&self, r: Complex64) -> bool {
        self.multiplicity(r) > 0
    }

    /// Multiplicities add.
    pub fn union(&self, other: &Self) -> Self {
        Self::from_pairs(self.entries.iter().chain(&other.entries).copied())
    }

    /// Multiplicities subtract; roots whose count drops to zero or below vanish.
    pub fn difference(&self, other: &Self) -> Self {
        let pairs = self.entries.iter().map(|&(r, m)| (r, m.saturating_sub(other.multiplicity(r))));
        Self::from_pairs(pairs)
    }

    /// Same roots with the same multiplicities, matching within `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if self.total() != other.total() {
            return false;
        }
        let mut remaining: Vec<(Complex64, usize)> = other.entries.clone();
        for &(r, m) in &self.entries {
            let mut need = m;
            for slot in remaining.iter_mut() {
                if need == 0 {
                    break;
                }
                if slot.1 > 0 && (slot.0 - r).norm() <= tol {
                    let take = need.min(slot.1);
                    slot.1 -= take;
                    need -= take;
                }
            }
            if need > 0 {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for RootMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(r, m)| {
                let z = if r.im == 0.0 { format!("{}", r.re) } else { format!("{}{:+}i", r.re, r.im) };
                if *m == 1 {
                    z
                } else {
                    format!("{z} (x{m})")
                }
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Roots of `p` with exact multiplicities from square-free factorization.
pub fn roots_of(p: &Poly) -> Result<RootMultiset> {
    if p.is_zero() {
        return Err(Error::Domain("roots of the zero polynomial".into()));
    }
    let mut pairs = Vec::new();
    for (factor, mult) in poly_squarefree_factor(p)? {
        for r in roots_numeric(&factor)? {
            pairs.push((r, mult));
        }
    }
    // Distinct factors have disjoint roots, so no merging should occur;
    // keep the pairs as they are to preserve the exact multiplicities.
    let mut out = RootMultiset { entries: pairs };
    out.sort();
    Ok(out)
}

fn char_parts(m: &WMatrix) -> Result<crate::field::RatFunc> {
    let c = char_ratfunc(m)?;
    if c.is_zero() {
        return Err(Error::Domain("det(M − λI) vanishes identically; the spectrum is all of ℂ".into()));
    }
    Ok(c)
}

/// Roots of the numerator of `det(M − λI)`.
pub fn spectrum(m: &WMatrix) -> Result<RootMultiset> {
    roots_of(char_parts(m)?.num())
}

/// Roots of the denominator of `det(M − λI)`.
pub fn inverse_spectrum(m: &WMatrix) -> Result<RootMultiset> {
    roots_of(char_parts(m)?.den())
}
