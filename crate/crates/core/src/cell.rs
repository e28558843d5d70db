//! The three-metaline unit cell: geometry resolution, cascaded cell
//! transmission, and the (mu_in, mu_out) transmission map.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::constants::{
    DEFAULT_APERTURE, DEFAULT_METALINE_WIDTH, DEFAULT_MU_MAX, DEFAULT_MU_MIN, DEFAULT_PERIOD,
    DEFAULT_STACK_DEPTH,
};
use crate::error::{Error, Result};
use crate::graphene::{plasmon_mode, GrapheneState};
use crate::scattering::{
    cascade, discontinuity_coefficients, matching_matrix, propagation_matrix, s_params,
    InterfaceScattering,
};

/// Geometry of one transverse unit cell of the stacked metalines.
///
/// Longitudinally the cell is the five-segment stack
/// `bg | outer(d) | spacer(s) | inner(d) | spacer(s) | outer(d) | bg`
/// embedded in the background sheet; `depth` is always `3 d + 2 s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitCellGeometry {
    /// Metaline segment width d, m.
    pub metaline_width: f64,
    /// Spacer length s between the stacks, m (quarter guided wavelength of
    /// the background when derived rather than overridden).
    pub spacing: f64,
    /// Background (spacer and outside) chemical potential, eV.
    pub mu_bg_ev: f64,
    /// Stack depth D = 3 d + 2 s, m.
    pub depth: f64,
    /// Nominal depth the geometry was asked to realize, m.
    pub nominal_depth: f64,
    /// True when `depth` matches `nominal_depth` to 1e-12 m.
    pub depth_matches_nominal: bool,
    /// Transverse cell period, m.
    pub period: f64,
    /// Device aperture W, m.
    pub aperture: f64,
}

impl UnitCellGeometry {
    /// Number of transverse cells across the aperture.
    pub fn n_cells(&self) -> usize {
        (self.aperture / self.period).round() as usize
    }

    /// Transverse centre of cell `j`, m.
    pub fn cell_center(&self, j: usize) -> f64 {
        crate::pipeline::sample_position(j, self.n_cells(), self.aperture)
    }
}

/// Optional overrides for [`resolve_geometry`]; `None` fields take the
/// device defaults (and the background potential is then derived from the
/// nominal depth through the quarter-wave spacing rule).
#[derive(Debug, Clone, Copy, Default)]
pub struct GeometryOverrides {
    pub mu_bg_ev: Option<f64>,
    pub spacing: Option<f64>,
    pub metaline_width: Option<f64>,
    pub nominal_depth: Option<f64>,
    pub period: Option<f64>,
    pub aperture: Option<f64>,
}

/// Resolves the unit-cell geometry at the given frequency.
///
/// The spacer is a quarter of the background guided wavelength. With no
/// overrides the background potential is the derived quantity: it is
/// root-found so that `3 d + 2 s` equals the nominal depth. An explicit
/// `mu_bg_ev` instead fixes the spacer from the dispersion, and the result
/// reports whether the implied depth still matches the nominal one. An
/// explicit `spacing` wins over both.
pub fn resolve_geometry(
    omega: f64,
    state: &GrapheneState,
    overrides: &GeometryOverrides,
) -> Result<UnitCellGeometry> {
    let d = overrides.metaline_width.unwrap_or(DEFAULT_METALINE_WIDTH);
    let nominal_depth = overrides.nominal_depth.unwrap_or(DEFAULT_STACK_DEPTH);
    let period = overrides.period.unwrap_or(DEFAULT_PERIOD);
    let aperture = overrides.aperture.unwrap_or(DEFAULT_APERTURE);
    if !(d > 0.0 && nominal_depth > 0.0 && period > 0.0 && aperture > 0.0) {
        return Err(Error::Geometry("all lengths must be positive".into()));
    }
    let n_cells = aperture / period;
    if (n_cells - n_cells.round()).abs() > 1e-9 * n_cells {
        return Err(Error::Geometry(format!(
            "aperture/period = {n_cells} is not an integer cell count"
        )));
    }

    let quarter_wave = |mu: f64| -> Result<f64> {
        Ok(0.25 * plasmon_mode(omega, &state.with_mu(mu))?.guided_wavelength)
    };

    let (spacing, mu_bg_ev) = match (overrides.spacing, overrides.mu_bg_ev) {
        (Some(s), Some(mu)) => (s, mu),
        (Some(s), None) => {
            let mu = crate::graphene::chemical_potential_for_wavenumber(
                2.0 * std::f64::consts::PI / (4.0 * s),
                omega,
                (DEFAULT_MU_MIN, DEFAULT_MU_MAX),
                state,
            )?;
            (s, mu)
        }
        (None, Some(mu)) => (quarter_wave(mu)?, mu),
        (None, None) => {
            let s = 0.5 * (nominal_depth - 3.0 * d);
            if s <= 0.0 {
                return Err(Error::Geometry(format!(
                    "nominal depth {nominal_depth} m leaves no room for spacers"
                )));
            }
            let mu = crate::graphene::chemical_potential_for_wavenumber(
                2.0 * std::f64::consts::PI / (4.0 * s),
                omega,
                (DEFAULT_MU_MIN, DEFAULT_MU_MAX),
                state,
            )?;
            (s, mu)
        }
    };

    let depth = 3.0 * d + 2.0 * spacing;
    Ok(UnitCellGeometry {
        metaline_width: d,
        spacing,
        mu_bg_ev,
        depth,
        nominal_depth,
        depth_matches_nominal: (depth - nominal_depth).abs() <= 1e-12,
        period,
        aperture,
    })
}

/// Per-potential quantities reused across cells of a sweep.
#[derive(Debug, Clone, Copy)]
struct SegmentParts {
    k: Complex64,
    /// Interface coefficients seen from the background side.
    from_bg: InterfaceScattering,
}

impl SegmentParts {
    fn new(omega: f64, state: &GrapheneState, k_bg: Complex64, mu: f64) -> Result<Self> {
        let k = plasmon_mode(omega, &state.with_mu(mu))?.wavenumber;
        Ok(SegmentParts {
            k,
            from_bg: discontinuity_coefficients(k_bg, k)?,
        })
    }
}

fn cell_s21_from_parts(
    inner: &SegmentParts,
    outer: &SegmentParts,
    k_bg: Complex64,
    geom: &UnitCellGeometry,
) -> Result<Complex64> {
    let d = geom.metaline_width;
    let s = geom.spacing;
    let enter_outer = matching_matrix(&outer.from_bg)?;
    let exit_outer = matching_matrix(&outer.from_bg.reversed())?;
    let enter_inner = matching_matrix(&inner.from_bg)?;
    let exit_inner = matching_matrix(&inner.from_bg.reversed())?;
    let in_outer = propagation_matrix(outer.k, d)?;
    let in_inner = propagation_matrix(inner.k, d)?;
    let in_spacer = propagation_matrix(k_bg, s)?;

    let total = cascade(&[
        enter_outer,
        in_outer,
        exit_outer,
        in_spacer,
        enter_inner,
        in_inner,
        exit_inner,
        in_spacer,
        enter_outer,
        in_outer,
        exit_outer,
    ])?;
    Ok(s_params(&total)?.s21)
}

/// Complex transmission of one unit cell with inner potential `mu_in_ev` and
/// both (identical) outer potentials `mu_out_ev`, between background leads.
pub fn cell_s21(
    mu_in_ev: f64,
    mu_out_ev: f64,
    geom: &UnitCellGeometry,
    omega: f64,
    state: &GrapheneState,
) -> Result<Complex64> {
    let k_bg = plasmon_mode(omega, &state.with_mu(geom.mu_bg_ev))?.wavenumber;
    let inner = SegmentParts::new(omega, state, k_bg, mu_in_ev)?;
    let outer = SegmentParts::new(omega, state, k_bg, mu_out_ev)?;
    cell_s21_from_parts(&inner, &outer, k_bg, geom)
}

/// Rectangular sweep grid, the same axis for mu_in and mu_out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub mu_min_ev: f64,
    pub mu_max_ev: f64,
    pub n: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            mu_min_ev: DEFAULT_MU_MIN,
            mu_max_ev: DEFAULT_MU_MAX,
            n: 201,
        }
    }
}

impl GridSpec {
    pub fn values(&self) -> Vec<f64> {
        let step = (self.mu_max_ev - self.mu_min_ev) / (self.n - 1) as f64;
        (0..self.n).map(|i| self.mu_min_ev + i as f64 * step).collect()
    }
}

/// Dense map of cell transmission over the (mu_in, mu_out) plane.
#[derive(Debug, Clone, PartialEq)]
pub struct TransmissionMap {
    /// Inner-metaline grid, eV, ascending.
    pub mu_in: Vec<f64>,
    /// Outer-metaline grid, eV, ascending.
    pub mu_out: Vec<f64>,
    /// Row-major entries: `s21[i * mu_out.len() + j]` for `(mu_in[i], mu_out[j])`.
    pub s21: Vec<Complex64>,
}

impl TransmissionMap {
    pub fn at(&self, i_in: usize, i_out: usize) -> Complex64 {
        self.s21[i_in * self.mu_out.len() + i_out]
    }

    /// Grid indices of the entry closest to `target` in complex distance;
    /// ties resolve to the lowest linear index.
    pub fn nearest(&self, target: Complex64) -> (usize, usize) {
        let mut best = (0usize, f64::INFINITY);
        for (idx, s) in self.s21.iter().enumerate() {
            let d = (s - target).norm();
            if d < best.1 {
                best = (idx, d);
            }
        }
        (best.0 / self.mu_out.len(), best.0 % self.mu_out.len())
    }

    /// Span of the unwrapped transmission phase over the map, radians.
    ///
    /// The first column is unwrapped along mu_in, then each row along mu_out;
    /// the landscape is smooth enough for row-wise unwrapping to be
    /// consistent.
    pub fn unwrapped_phase_span(&self) -> f64 {
        let n_in = self.mu_in.len();
        let n_out = self.mu_out.len();
        let unwrap = |prev: f64, raw: f64| {
            let mut delta = (raw - prev) % (2.0 * std::f64::consts::PI);
            if delta > std::f64::consts::PI {
                delta -= 2.0 * std::f64::consts::PI;
            } else if delta < -std::f64::consts::PI {
                delta += 2.0 * std::f64::consts::PI;
            }
            prev + delta
        };
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        let mut col_anchor = self.at(0, 0).arg();
        for i in 0..n_in {
            col_anchor = if i == 0 {
                col_anchor
            } else {
                unwrap(col_anchor, self.at(i, 0).arg())
            };
            let mut phase = col_anchor;
            for j in 0..n_out {
                phase = if j == 0 {
                    phase
                } else {
                    unwrap(phase, self.at(i, j).arg())
                };
                lo = lo.min(phase);
                hi = hi.max(phase);
            }
        }
        hi - lo
    }

    /// Smallest and largest |S21| over the map.
    pub fn amplitude_range(&self) -> (f64, f64) {
        self.s21.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), s| {
            let a = s.norm();
            (lo.min(a), hi.max(a))
        })
    }
}

/// Sweeps the cell transmission over `grid x grid`. Deterministic ordering;
/// rows are computed in parallel.
pub fn sweep_map(
    grid: &GridSpec,
    geom: &UnitCellGeometry,
    omega: f64,
    state: &GrapheneState,
) -> Result<TransmissionMap> {
    if grid.n < 2 {
        return Err(Error::Domain("sweep grid needs at least 2 points".into()));
    }
    if !(grid.mu_min_ev < grid.mu_max_ev) {
        return Err(Error::Domain("sweep bounds must be increasing".into()));
    }
    let mus = grid.values();
    let k_bg = plasmon_mode(omega, &state.with_mu(geom.mu_bg_ev))?.wavenumber;
    let parts: Vec<SegmentParts> = mus
        .par_iter()
        .map(|&mu| SegmentParts::new(omega, state, k_bg, mu))
        .collect::<Result<_>>()?;

    let n = grid.n;
    let s21: Vec<Complex64> = (0..n * n)
        .into_par_iter()
        .map(|idx| cell_s21_from_parts(&parts[idx / n], &parts[idx % n], k_bg, geom))
        .collect::<Result<_>>()?;

    Ok(TransmissionMap {
        mu_in: mus.clone(),
        mu_out: mus,
        s21,
    })
}
