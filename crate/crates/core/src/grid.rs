//! Discretized amplitude-cell counting.
//!
//! The complex amplitude plane is tiled into squares of side `d`. A cell
//! counts as traced by the circle of radius `r` (centered at the grid
//! origin) when its center lies within half a cell of the circle,
//! `|dist(center) - r| <= d/2`; the traced cells tile an annulus of width
//! `d`, so averaged over a small range of radii the count converges to
//! `2 pi r / d`. Per-coefficient counts multiply into the number of cells
//! representing phase-equivalent superpositions, which is proportional to
//! the product of the moduli.

use crate::error::{Error, Result};
use crate::state::RadialProfile;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Square tiling of the amplitude plane with side `d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    d: f64,
}

/// Cells larger than this leave the fine-grained regime.
pub const MAX_CELL_SIDE: f64 = 0.1;

impl GridSpec {
    pub fn new(d: f64) -> Result<Self> {
        if !(d > 0.0 && d <= MAX_CELL_SIDE) {
            return Err(Error::InvalidCellSize(d));
        }
        Ok(Self { d })
    }

    pub fn cell_side(&self) -> f64 {
        self.d
    }
}

/// The membership predicate shared by the windowed counter and any
/// brute-force scan: cell `(i, j)` covers
/// `[i d, (i+1) d) x [j d, (j+1) d)` and is traced when its center lies
/// within `d/2` of the circle of radius `r`.
pub fn cell_is_traced(i: i64, j: i64, r: f64, grid: &GridSpec) -> bool {
    let d = grid.d;
    let cx = (i as f64 + 0.5) * d;
    let cy = (j as f64 + 0.5) * d;
    let dist_sq = cx * cx + cy * cy;
    let lo = r - 0.5 * d;
    let hi = r + 0.5 * d;
    lo * lo <= dist_sq && dist_sq <= hi * hi
}

/// Exact number of traced cells for one circle, enumerating only the
/// columns and rows near the annulus.
pub fn count_circle_cells(r: f64, grid: &GridSpec) -> Result<u64> {
    if r <= grid.d {
        return Err(Error::RadiusBelowCell { r, d: grid.d });
    }
    let d = grid.d;
    let hi = r + 0.5 * d;
    let lo = r - 0.5 * d;
    let hi_sq = hi * hi;
    let lo_sq = lo * lo;

    let i_max = (hi / d - 0.5).ceil() as i64 + 1;
    let i_min = -i_max - 1;
    let mut count = 0u64;
    for i in i_min..=i_max {
        let cx = (i as f64 + 0.5) * d;
        let cx_sq = cx * cx;
        if cx_sq > hi_sq {
            continue;
        }
        let y_hi = (hi_sq - cx_sq).sqrt();
        let y_lo = (lo_sq - cx_sq).max(0.0).sqrt();
        // Candidate rows for cy >= 0, with one cell of slack on each side;
        // the predicate decides exactly. Rows with cy < 0 mirror those
        // with cy > 0 cell for cell, so the column total is twice the
        // upper count.
        let j_lo = ((y_lo / d - 0.5).floor() as i64 - 1).max(0);
        let j_hi = (y_hi / d - 0.5).ceil() as i64 + 1;
        let mut upper = 0u64;
        for j in j_lo..=j_hi {
            if cell_is_traced(i, j, r, grid) {
                upper += 1;
            }
        }
        count += 2 * upper;
    }
    Ok(count)
}

/// Average traced-cell count over deterministic stratified radii in
/// `[r_lo, r_hi]`; converges to `2 pi rbar / d` at the interval midpoint.
pub fn mean_circle_cells(
    r_lo: f64,
    r_hi: f64,
    samples: u64,
    grid: &GridSpec,
) -> Result<f64> {
    if !(grid.d < r_lo && r_lo < r_hi) {
        return Err(Error::InvalidRadiusRange {
            r_lo,
            r_hi,
            d: grid.d,
        });
    }
    if samples == 0 {
        return Err(Error::NoTrials);
    }
    let step = (r_hi - r_lo) / samples as f64;
    let count_at = |s: u64| -> u64 {
        let r = r_lo + (s as f64 + 0.5) * step;
        count_circle_cells(r, grid).expect("radii stay above the cell side")
    };
    #[cfg(feature = "parallel")]
    let total: u64 = (0..samples).into_par_iter().map(count_at).sum();
    #[cfg(not(feature = "parallel"))]
    let total: u64 = (0..samples).map(count_at).sum();
    Ok(total as f64 / samples as f64)
}

/// Cell count for a whole profile, with the matching closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivCellCount {
    /// Product over coefficients of the per-circle traced-cell counts.
    pub cell_count: f64,
    /// The asymptotic law `(2 pi / d)^n prod r_k`.
    pub closed_form: f64,
}

/// Number of `2n`-dimensional cells representing superpositions
/// phase-equivalent to `profile`: the product of the per-circle counts.
pub fn count_equiv_cells(profile: &RadialProfile, grid: &GridSpec) -> Result<EquivCellCount> {
    let mut cell_count = 1.0;
    for &r in profile.radii() {
        cell_count *= count_circle_cells(r, grid)? as f64;
    }
    let n = profile.dim() as i32;
    let closed_form = (2.0 * std::f64::consts::PI / grid.d).powi(n) * profile.product();
    Ok(EquivCellCount {
        cell_count,
        closed_form,
    })
}

/// Radius-averaged variant of [`count_equiv_cells`]: each per-circle count
/// is averaged over `[r_k - half_width, r_k + half_width]`, which washes
/// out the lattice fluctuation of single radii.
pub fn mean_equiv_cells(
    profile: &RadialProfile,
    grid: &GridSpec,
    half_width: f64,
    samples: u64,
) -> Result<f64> {
    let mut product = 1.0;
    for &r in profile.radii() {
        product *= mean_circle_cells(r - half_width, r + half_width, samples, grid)?;
    }
    Ok(product)
}
