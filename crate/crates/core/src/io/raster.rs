//! Raster export as CSV or 8-bit binary PGM.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::regions::{GridSpec, RasterKind, RegionRaster};

pub const CSV_HEADER: &str = "re,im,value,flag";

/// The default contour tolerances `1, 10^{-1/2}, 10^{-1}`.
pub const DEFAULT_LEVELS: [f64; 3] = [1.0, 0.316_227_766_016_837_94, 0.1];

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RasterFormat {
    Csv,
    Pgm,
}

/// Log₁₀ window mapped onto grey levels 0..=255.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct PgmWindow {
    pub lo: f64,
    pub hi: f64,
}

impl PgmWindow {
    /// Window spanning the thresholds `1/ε` of the given tolerances.
    pub fn from_levels(levels: &[f64]) -> Result<Self> {
        if levels.is_empty() || levels.iter().any(|&e| !(e > 0.0) || !e.is_finite()) {
            return Err(Error::Domain("levels must be positive and finite".into()));
        }
        let max = levels.iter().copied().fold(f64::MIN, f64::max);
        let min = levels.iter().copied().fold(f64::MAX, f64::min);
        let lo = (1.0 / max).log10();
        let hi = (1.0 / min).log10();
        Ok(if hi > lo { Self { lo, hi } } else { Self { lo: lo - 0.5, hi: lo + 0.5 } })
    }
}

impl Default for PgmWindow {
    fn default() -> Self {
        Self::from_levels(&DEFAULT_LEVELS).expect("valid default levels")
    }
}

fn fmt_f64(out: &mut String, x: f64) {
    if x == f64::INFINITY {
        out.push_str("inf");
    } else if x == f64::NEG_INFINITY {
        out.push_str("-inf");
    } else {
        out.push_str(ryu::Buffer::new().format(x));
    }
}

/// One line per grid point, imaginary part outer and real part inner.
pub fn raster_to_csv(r: &RegionRaster) -> String {
    let mut out = String::with_capacity(32 * r.len());
    out.push_str(CSV_HEADER);
    out.push('\n');
    for k in 0..r.len() {
        let z = r.spec.point_at(k);
        fmt_f64(&mut out, z.re);
        out.push(',');
        fmt_f64(&mut out, z.im);
        out.push(',');
        if r.kind == RasterKind::Gershgorin {
            let _ = write!(out, "{}", r.masks[k]);
        } else {
            fmt_f64(&mut out, r.values[k]);
        }
        out.push(',');
        out.push(if r.flags[k] { '1' } else { '0' });
        out.push('\n');
    }
    out
}

fn pixel(r: &RegionRaster, k: usize, window: PgmWindow) -> u8 {
    if r.kind == RasterKind::Gershgorin {
        let rows = r.rows.max(1) as f64;
        return (255.0 * r.masks[k].count_ones() as f64 / rows).round().clamp(0.0, 255.0) as u8;
    }
    let v = r.values[k];
    if v == f64::INFINITY {
        return 255;
    }
    if !(v > 0.0) {
        return 0;
    }
    let t = (v.log10() - window.lo) / (window.hi - window.lo);
    (t * 255.0).round().clamp(0.0, 255.0) as u8
}

/// Binary P5 image; the top row is the largest imaginary part.
pub fn raster_to_pgm(r: &RegionRaster, window: PgmWindow) -> Vec<u8> {
    let (nx, ny) = (r.spec.nx, r.spec.ny);
    let mut out = Vec::with_capacity(64 + nx * ny);
    let comment = if r.kind == RasterKind::Gershgorin {
        format!("# {} rows={} pixel=255*count/rows", r.kind, r.rows)
    } else {
        let mut lo = String::new();
        let mut hi = String::new();
        fmt_f64(&mut lo, window.lo);
        fmt_f64(&mut hi, window.hi);
        format!("# {} log10 window [{lo}, {hi}]", r.kind)
    };
    out.extend_from_slice(format!("P5\n{comment}\n{nx} {ny}\n255\n").as_bytes());
    for j in (0..ny).rev() {
        for i in 0..nx {
            out.push(pixel(r, r.spec.index(i, j), window));
        }
    }
    out
}

pub fn write_raster(r: &RegionRaster, path: impl AsRef<Path>, format: RasterFormat, window: PgmWindow) -> Result<()> {
    match format {
        RasterFormat::Csv => std::fs::write(path, raster_to_csv(r))?,
        RasterFormat::Pgm => std::fs::write(path, raster_to_pgm(r, window))?,
    }
    Ok(())
}

fn parse_f64(field: &str, line: usize, column: usize) -> Result<f64> {
    match field {
        "inf" => Ok(f64::INFINITY),
        "-inf" => Ok(f64::NEG_INFINITY),
        s => s.parse::<f64>().map_err(|_| Error::Parse { line, column, message: format!("invalid number {s:?}") }),
    }
}

/// Reads a CSV raster back. The grid is recovered from the coordinates,
/// and the caller supplies the kind since the file does not record it.
pub fn raster_from_csv(text: &str, kind: RasterKind) -> Result<RegionRaster> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, h)) if h.trim() == CSV_HEADER => {}
        _ => return Err(Error::Parse { line: 1, column: 1, message: format!("expected header {CSV_HEADER:?}") }),
    }
    let mut pts = Vec::new();
    let mut values = Vec::new();
    let mut flags = Vec::new();
    for (k, line) in lines {
        let lineno = k + 1;
        let fields: Vec<&str> = line.trim().split(',').collect();
        if fields.len() != 4 {
            return Err(Error::Parse { line: lineno, column: 1, message: "expected 4 fields".into() });
        }
        let re = parse_f64(fields[0], lineno, 1)?;
        let im = parse_f64(fields[1], lineno, 2)?;
        values.push(parse_f64(fields[2], lineno, 3)?);
        flags.push(match fields[3] {
            "0" => false,
            "1" => true,
            _ => return Err(Error::Parse { line: lineno, column: 4, message: "flag must be 0 or 1".into() }),
        });
        pts.push((re, im));
    }
    if pts.is_empty() {
        return Err(Error::Parse { line: 2, column: 1, message: "raster has no points".into() });
    }
    let nx = pts.iter().take_while(|p| p.1 == pts[0].1).count();
    if pts.len() % nx != 0 {
        return Err(Error::Domain("points do not form a rectangular grid".into()));
    }
    let ny = pts.len() / nx;
    let spec = GridSpec::new((pts[0].0, pts[nx - 1].0), (pts[0].1, pts[pts.len() - 1].1), nx, ny)?;
    for (k, &(re, im)) in pts.iter().enumerate() {
        let z = spec.point_at(k);
        if z.re != re || z.im != im {
            return Err(Error::Domain(format!("point {} ({re}, {im}) is off the reconstructed grid", k + 1)));
        }
    }
    let rows = if kind == RasterKind::Gershgorin {
        values.iter().map(|&v| 64 - (v as u64).leading_zeros() as usize).max().unwrap_or(0)
    } else {
        0
    };
    RegionRaster::from_values(spec, kind, values, flags, rows)
}

pub fn read_raster_csv(path: impl AsRef<Path>, kind: RasterKind) -> Result<RegionRaster> {
    raster_from_csv(&std::fs::read_to_string(path)?, kind)
}
