//! Rasterized spectral regions: Gershgorin-type regions, pseudospectra and
//! pseudoresonances on a rectangular grid, and inclusion checks between them.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::eval_complex;
use crate::numerics::{Evaluator, Norm};
use crate::wmatrix::{polynomial_extension, spectral_inverse, PolyMatrix, WMatrix};

/// Points per axis when none is given.
pub const DEFAULT_RESOLUTION: usize = 200;

/// Gershgorin masks are stored in a `u64`.
pub const MAX_GERSHGORIN_ROWS: usize = 64;

/// Rectangular grid with inclusive endpoints. Point `(i, j)` has real part
/// indexed by `i` and imaginary part by `j`; storage is row-major in `j`.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct GridSpec {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    pub fn new(re: (f64, f64), im: (f64, f64), nx: usize, ny: usize) -> Result<Self> {
        let spec = Self { re_min: re.0, re_max: re.1, im_min: im.0, im_max: im.1, nx, ny };
        spec.validate()?;
        Ok(spec)
    }

    /// Square `res × res` grid.
    pub fn square(re: (f64, f64), im: (f64, f64), res: usize) -> Result<Self> {
        Self::new(re, im, res, res)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.re_min, self.re_max, self.im_min, self.im_max].iter().all(|x| x.is_finite());
        if !finite {
            return Err(Error::Domain("grid bounds must be finite".into()));
        }
        if self.nx == 0 || self.ny == 0 {
            return Err(Error::Domain("grid needs at least one point per axis".into()));
        }
        if (self.nx > 1 && self.re_min >= self.re_max) || (self.ny > 1 && self.im_min >= self.im_max) {
            return Err(Error::Domain(format!(
                "empty window [{}, {}] x [{}, {}]",
                self.re_min, self.re_max, self.im_min, self.im_max
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn coord(min: f64, max: f64, k: usize, n: usize) -> f64 {
        if n == 1 {
            min
        } else if k == n - 1 {
            max
        } else {
            min + k as f64 * (max - min) / (n - 1) as f64
        }
    }

    pub fn point(&self, i: usize, j: usize) -> Complex64 {
        Complex64::new(
            Self::coord(self.re_min, self.re_max, i, self.nx),
            Self::coord(self.im_min, self.im_max, j, self.ny),
        )
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    /// Point at storage index `k`.
    pub fn point_at(&self, k: usize) -> Complex64 {
        self.point(k % self.nx, k / self.nx)
    }

    /// Grid index nearest to `z`, or `None` if `z` lies outside the window.
    pub fn nearest(&self, z: Complex64) -> Option<(usize, usize)> {
        let snap = |x: f64, min: f64, max: f64, n: usize| -> Option<usize> {
            if x < min || x > max {
                return None;
            }
            if n == 1 {
                return Some(0);
            }
            Some((((x - min) / (max - min)) * (n - 1) as f64).round() as usize)
        };
        Some((snap(z.re, self.re_min, self.re_max, self.nx)?, snap(z.im, self.im_min, self.im_max, self.ny)?))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum RasterKind {
    Pseudospectrum,
    Pseudoresonance,
    Gershgorin,
}

impl fmt::Display for RasterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RasterKind::Pseudospectrum => "pseudospectrum",
            RasterKind::Pseudoresonance => "pseudoresonance",
            RasterKind::Gershgorin => "gershgorin",
        })
    }
}

impl FromStr for RasterKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pseudospectrum" | "pseudospec" => Ok(RasterKind::Pseudospectrum),
            "pseudoresonance" | "pseudores" => Ok(RasterKind::Pseudoresonance),
            "gershgorin" | "gersh" => Ok(RasterKind::Gershgorin),
            other => Err(Error::Domain(format!("unknown raster kind {other:?}"))),
        }
    }
}

/// Values on a grid. Norm rasters store raw norms (`+∞` allowed);
/// Gershgorin rasters store one membership bit per row region.
#[derive(Clone, PartialEq, Debug)]
pub struct RegionRaster {
    pub spec: GridSpec,
    pub kind: RasterKind,
    /// Raw norm per point; for Gershgorin rasters, the mask as a float.
    pub values: Vec<f64>,
    /// Per-row membership bits; empty unless `kind` is Gershgorin.
    pub masks: Vec<u64>,
    /// Points where a pole survived symbolic cancellation.
    pub flags: Vec<bool>,
    /// Number of row regions (Gershgorin) or matrix dimension.
    pub rows: usize,
}

impl RegionRaster {
    /// Norm raster from raw values and flags.
    pub fn from_values(
        spec: GridSpec,
        kind: RasterKind,
        values: Vec<f64>,
        flags: Vec<bool>,
        rows: usize,
    ) -> Result<Self> {
        if values.len() != spec.len() || flags.len() != spec.len() {
            return Err(Error::Domain("raster size does not match its grid".into()));
        }
        let masks =
            if kind == RasterKind::Gershgorin { values.iter().map(|&v| v as u64).collect() } else { Vec::new() };
        Ok(Self { spec, kind, values, masks, flags, rows })
    }

    fn from_masks(spec: GridSpec, masks: Vec<u64>, rows: usize) -> Self {
        Self {
            spec,
            kind: RasterKind::Gershgorin,
            values: masks.iter().map(|&m| m as f64).collect(),
            flags: vec![false; masks.len()],
            masks,
            rows,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[self.spec.index(i, j)]
    }

    /// Membership of point `k`: any row bit for Gershgorin rasters,
    /// `value > 1/ε` otherwise.
    pub fn is_member(&self, k: usize, eps: f64) -> bool {
        match self.kind {
            RasterKind::Gershgorin => self.masks[k] != 0,
            _ => self.values[k] > 1.0 / eps,
        }
    }

    pub fn member_count(&self, eps: f64) -> usize {
        (0..self.len()).filter(|&k| !self.flags[k] && self.is_member(k, eps)).count()
    }

    pub fn flagged_count(&self) -> usize {
        self.flags.iter().filter(|&&f| f).count()
    }
}

/// Row `i` is a member when `|λ − M̄_ii(λ)| ≤ Σ_{j≠i} |M̄_ij(λ)|`.
pub fn gershgorin_member(mbar: &PolyMatrix, z: Complex64) -> u64 {
    gershgorin_member_compiled(&mbar.to_complex(), mbar.dim(), z)
}

fn gershgorin_member_compiled(coeffs: &[Vec<Complex64>], n: usize, z: Complex64) -> u64 {
    row_margins_compiled(coeffs, n, z)
        .iter()
        .enumerate()
        .filter(|(_, &m)| m >= 0.0)
        .fold(0u64, |mask, (i, _)| mask | (1 << i))
}

/// `Σ_{j≠i} |M̄_ij(λ)| − |λ − M̄_ii(λ)|` per row; row `i` contains `λ` when
/// its margin is non-negative.
pub fn row_margins(mbar: &PolyMatrix, z: Complex64) -> Vec<f64> {
    row_margins_compiled(&mbar.to_complex(), mbar.dim(), z)
}

fn row_margins_compiled(coeffs: &[Vec<Complex64>], n: usize, z: Complex64) -> Vec<f64> {
    (0..n)
        .map(|i| {
            let radius: f64 = (0..n).filter(|&j| j != i).map(|j| eval_complex(&coeffs[i * n + j], z).norm()).sum();
            radius - (z - eval_complex(&coeffs[i * n + i], z)).norm()
        })
        .collect()
}

/// Gershgorin-type region of `M`, or of `S(M)` when `use_spectral_inverse`
/// is set (which then encloses the inverse spectrum of `M`).
pub fn gershgorin_raster(m: &WMatrix, spec: GridSpec, use_spectral_inverse: bool) -> Result<RegionRaster> {
    spec.validate()?;
    if m.dim() > MAX_GERSHGORIN_ROWS {
        return Err(Error::Domain(format!("Gershgorin rasters support at most {MAX_GERSHGORIN_ROWS} rows")));
    }
    let target = if use_spectral_inverse { spectral_inverse(m)? } else { m.clone() };
    let mbar = polynomial_extension(&target);
    let n = mbar.dim();
    let coeffs = mbar.to_complex();
    let masks: Vec<u64> =
        (0..spec.len()).into_par_iter().map(|k| gershgorin_member_compiled(&coeffs, n, spec.point_at(k))).collect();
    Ok(RegionRaster::from_masks(spec, masks, n))
}

fn collect_norms(
    spec: GridSpec,
    kind: RasterKind,
    rows: usize,
    f: impl Fn(Complex64) -> Result<(f64, bool)> + Sync,
) -> Result<RegionRaster> {
    spec.validate()?;
    let cells: Vec<(f64, bool)> =
        (0..spec.len()).into_par_iter().map(|k| f(spec.point_at(k))).collect::<Result<_>>()?;
    let (values, flags) = cells.into_iter().unzip();
    RegionRaster::from_values(spec, kind, values, flags, rows)
}

/// `‖(M(λ) − λI)^{-1}‖_p` on the grid. Points where a pole survives
/// cancellation are flagged and carry `+∞`.
pub fn pseudospectrum_raster(m: &WMatrix, spec: GridSpec, p: Norm) -> Result<RegionRaster> {
    let ev = Evaluator::new(m);
    collect_norms(spec, RasterKind::Pseudospectrum, m.dim(), |z| match ev.resolvent_norm(z, p) {
        Ok(v) => Ok((v, false)),
        Err(Error::Pole { .. }) => Ok((f64::INFINITY, true)),
        Err(e) => Err(e),
    })
}

/// `‖M(λ) − λI‖_p` on the grid. Outside the domain the value is `+∞`;
/// points that are not resonances there are flagged.
pub fn pseudoresonance_raster(m: &WMatrix, spec: GridSpec, p: Norm) -> Result<RegionRaster> {
    let ev = Evaluator::new(m);
    collect_norms(spec, RasterKind::Pseudoresonance, m.dim(), |z| match ev.shifted_norm(z, p) {
        Some(v) => Ok((v, false)),
        None => Ok((f64::INFINITY, !ev.in_inverse_spectrum(z)?)),
    })
}

/// Outcome of a raster inclusion check.
#[derive(Clone, Debug, Default)]
pub struct InclusionReport {
    /// Grid points in the inner set but not the outer one.
    pub violations: Vec<Complex64>,
    /// Points compared.
    pub checked: usize,
    /// Points skipped because either raster flagged them.
    pub skipped: usize,
}

impl InclusionReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_compatible(a: &RegionRaster, b: &RegionRaster) -> Result<()> {
    if a.spec != b.spec {
        return Err(Error::Domain("rasters are on different grids".into()));
    }
    if a.len() != a.spec.len() || b.len() != b.spec.len() {
        return Err(Error::Domain("raster size does not match its grid".into()));
    }
    Ok(())
}

/// Grid points where `inner` is a member at `ε` but `outer` is not.
/// Flagged points are skipped and counted.
pub fn check_inclusion(inner: &RegionRaster, outer: &RegionRaster, eps: f64) -> Result<InclusionReport> {
    check_compatible(inner, outer)?;
    if inner.kind != outer.kind {
        return Err(Error::Domain(format!("cannot compare a {} raster with a {} raster", inner.kind, outer.kind)));
    }
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {eps}")));
    }
    let mut report = InclusionReport::default();
    for k in 0..inner.len() {
        if inner.flags[k] || outer.flags[k] {
            report.skipped += 1;
            continue;
        }
        report.checked += 1;
        if inner.is_member(k, eps) && !outer.is_member(k, eps) {
            report.violations.push(inner.spec.point_at(k));
        }
    }
    Ok(report)
}

/// Checks that every point outside the `1/ε`-pseudospectrum is an
/// `ε`-pseudoresonance: `‖(M−λI)^{-1}‖ ≤ ε` must force `‖M−λI‖ ≥ 1/ε`.
/// A relative slack of `1e-12` absorbs rounding at the boundary.
pub fn check_complement(pseudospec: &RegionRaster, pseudores: &RegionRaster, eps: f64) -> Result<InclusionReport> {
    check_compatible(pseudospec, pseudores)?;
    if pseudospec.kind != RasterKind::Pseudospectrum || pseudores.kind != RasterKind::Pseudoresonance {
        return Err(Error::Domain("expected a pseudospectrum and a pseudoresonance raster".into()));
    }
    let mut report = InclusionReport::default();
    for k in 0..pseudospec.len() {
        if pseudospec.flags[k] || pseudores.flags[k] {
            report.skipped += 1;
            continue;
        }
        report.checked += 1;
        let outside = pseudospec.values[k] <= eps;
        if outside && pseudores.values[k] < (1.0 / eps) * (1.0 - 1e-12) {
            report.violations.push(pseudospec.spec.point_at(k));
        }
    }
    Ok(report)
}
