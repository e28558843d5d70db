//! Inverse design: sampling target transfer functions at cell centres and
//! picking per-cell chemical potentials whose transmission realizes them.

use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

use crate::cell::{cell_s21, TransmissionMap, UnitCellGeometry};
use crate::error::{Error, Result};
use crate::graphene::GrapheneState;

/// Residual above which a target is declared unreachable.
pub const COVERAGE_THRESHOLD: f64 = 0.1;
/// Cells with |H| below this are excluded from phase statistics.
pub const PHASE_AMPLITUDE_FLOOR: f64 = 0.02;

/// The mathematical operator a transfer profile realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    /// First spatial derivative: H(x) = i x / (W/2).
    Diff1,
    /// Second spatial derivative: H(x) = -(x / (W/2))^2.
    Diff2,
    /// Second-order integrator with a unity plateau |x| < h and
    /// h^2 (i x)^{-2} outside.
    Int2,
}

impl OperatorKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            OperatorKind::Diff1 => "diff1",
            OperatorKind::Diff2 => "diff2",
            OperatorKind::Int2 => "int2",
        }
    }
}

impl std::str::FromStr for OperatorKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "diff1" => Ok(OperatorKind::Diff1),
            "diff2" => Ok(OperatorKind::Diff2),
            "int2" => Ok(OperatorKind::Int2),
            other => Err(format!("unknown operator '{other}'")),
        }
    }
}

/// Target transfer function over the aperture, normalized to unit peak
/// magnitude (passive realization).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferFunctionSpec {
    pub kind: OperatorKind,
    /// Aperture W, m.
    pub aperture: f64,
    /// Integrator plateau half-width h, m (used by `Int2` only).
    pub plateau: f64,
}

impl TransferFunctionSpec {
    pub fn new(kind: OperatorKind, aperture: f64) -> Self {
        TransferFunctionSpec {
            kind,
            aperture,
            plateau: aperture / 12.0,
        }
    }

    /// Target value at transverse position `x`.
    pub fn eval(&self, x: f64) -> Complex64 {
        let half = 0.5 * self.aperture;
        match self.kind {
            OperatorKind::Diff1 => Complex64::new(0.0, x / half),
            OperatorKind::Diff2 => Complex64::new(-(x / half) * (x / half), 0.0),
            OperatorKind::Int2 => {
                if x.abs() < self.plateau {
                    Complex64::new(1.0, 0.0)
                } else {
                    // h^2 (i x)^{-2}: magnitude continuous at |x| = h.
                    Complex64::new(-(self.plateau / x) * (self.plateau / x), 0.0)
                }
            }
        }
    }
}

/// Samples the target at the `n_cells` cell centres
/// x_j = -W/2 + (j + 1/2) W / n_cells.
pub fn sample_target(spec: &TransferFunctionSpec, n_cells: usize) -> Vec<Complex64> {
    (0..n_cells)
        .map(|j| spec.eval(crate::pipeline::sample_position(j, n_cells, spec.aperture)))
        .collect()
}

/// One designed cell: chosen potentials, achieved transmission, target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellDesign {
    pub cell_index: usize,
    /// Cell-centre transverse position, m.
    pub x: f64,
    pub mu_in_ev: f64,
    pub mu_out_ev: f64,
    /// Normalized target sample H(x).
    pub target: Complex64,
    /// Raw cell transmission of the chosen potentials.
    pub achieved: Complex64,
    /// Complex distance between the achieved transmission and the target the
    /// matcher was given (including any common reference factor).
    pub residual: f64,
}

/// Benchmark deviations a realized profile is judged against (amplitude and
/// phase standard deviations of the reference full-wave design); used only
/// to weigh the two statistics against each other during calibration.
pub const REFERENCE_AMP_DEV: f64 = 0.04;
pub const REFERENCE_PHASE_DEV_DEG: f64 = 6.0;

/// Synthesizes the cell-by-cell design realizing `spec` over the aperture.
///
/// A transfer profile is physically defined up to one complex factor common
/// to every cell (the pipeline fits that factor back out before any error
/// metric, and the deviation statistics are shape-relative). The achievable
/// (amplitude, phase) set of a cell is far from the full unit disk, so the
/// design calibrates that global factor against the map: candidate factors
/// beta e^{i phi} are ranked by the summed complex matching distance, the
/// best few are fully synthesized, and the design with the smallest weighted
/// deviation statistics wins. The stored `target` stays the normalized H
/// sample.
pub fn synthesize(
    spec: &TransferFunctionSpec,
    map: &TransmissionMap,
    geom: &UnitCellGeometry,
    omega: f64,
    state: &GrapheneState,
) -> Result<Vec<CellDesign>> {
    let targets = sample_target(spec, geom.n_cells());

    let cheap_score = |gamma: Complex64| -> f64 {
        let mut total = 0.0;
        for &h in &targets {
            let t = gamma * h;
            let mut dmin = f64::INFINITY;
            for s in &map.s21 {
                let d = (s - t).norm_sqr();
                if d < dmin {
                    dmin = d;
                }
            }
            total += dmin;
        }
        total / gamma.norm_sqr()
    };

    let candidates: Vec<Complex64> = (0..120)
        .flat_map(|ip| {
            (1..=19).map(move |ib| {
                Complex64::from_polar(ib as f64 * 0.05, (ip as f64 * 3.0).to_radians())
            })
        })
        .collect();
    let mut scored: Vec<(f64, Complex64)> = candidates
        .par_iter()
        .map(|&g| (cheap_score(g), g))
        .collect();
    scored.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut best: Option<(f64, Vec<CellDesign>)> = None;
    let mut last_err = None;
    for &(_, gamma) in scored.iter().take(16) {
        let raw: Vec<Complex64> = targets.iter().map(|h| h * gamma).collect();
        match synthesize_targets(&raw, map, geom, omega, state) {
            Ok(mut designs) => {
                for (d, h) in designs.iter_mut().zip(&targets) {
                    d.target = *h;
                }
                let rep = deviation_report(&designs);
                let quality = rep.amplitude_std / REFERENCE_AMP_DEV
                    + rep.phase_std_deg / REFERENCE_PHASE_DEV_DEG;
                if best.as_ref().map_or(true, |(q, _)| quality < *q) {
                    best = Some((quality, designs));
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    match best {
        Some((_, designs)) => Ok(designs),
        None => Err(last_err.unwrap_or_else(|| {
            Error::Domain("no realizable calibration for the profile".into())
        })),
    }
}

/// Synthesizes arbitrary per-cell targets: nearest map entry in complex
/// distance, then local refinement by direct cell evaluations (compass
/// pattern search followed by a guarded Gauss-Newton polish). Refinement
/// never increases the residual of the lookup seed.
pub fn synthesize_targets(
    targets: &[Complex64],
    map: &TransmissionMap,
    geom: &UnitCellGeometry,
    omega: f64,
    state: &GrapheneState,
) -> Result<Vec<CellDesign>> {
    let bounds = (
        map.mu_in.first().copied().unwrap_or(0.0),
        map.mu_in.last().copied().unwrap_or(1.0),
    );
    let grid_step = if map.mu_in.len() > 1 {
        map.mu_in[1] - map.mu_in[0]
    } else {
        0.01
    };

    targets
        .par_iter()
        .enumerate()
        .map(|(cell, &target)| {
            let (i, j) = map.nearest(target);
            let seed = (map.mu_in[i], map.mu_out[j]);
            let seed_s21 = map.at(i, j);
            let (mu, s21) = refine(
                target, seed, seed_s21, grid_step, bounds, geom, omega, state,
            )?;
            let residual = (s21 - target).norm();
            if residual > COVERAGE_THRESHOLD {
                return Err(Error::Coverage {
                    cell,
                    residual,
                    threshold: COVERAGE_THRESHOLD,
                });
            }
            Ok(CellDesign {
                cell_index: cell,
                x: geom.cell_center(cell),
                mu_in_ev: mu.0,
                mu_out_ev: mu.1,
                target,
                achieved: s21,
                residual,
            })
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn refine(
    target: Complex64,
    seed: (f64, f64),
    seed_s21: Complex64,
    grid_step: f64,
    bounds: (f64, f64),
    geom: &UnitCellGeometry,
    omega: f64,
    state: &GrapheneState,
) -> Result<((f64, f64), Complex64)> {
    let clamp = |mu: f64| mu.clamp(bounds.0, bounds.1);
    let eval = |mu: (f64, f64)| -> Result<Complex64> {
        cell_s21(mu.0, mu.1, geom, omega, state)
    };

    let mut best = seed;
    let mut best_s21 = seed_s21;
    let mut best_res = (seed_s21 - target).norm();

    // Compass pattern search from the lookup seed, halving on failure.
    let mut step = grid_step;
    for _ in 0..20 {
        let mut moved = false;
        for (dx, dy) in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)] {
            let cand = (clamp(best.0 + dx * step), clamp(best.1 + dy * step));
            if cand == best {
                continue;
            }
            let s21 = eval(cand)?;
            let res = (s21 - target).norm();
            if res < best_res {
                best = cand;
                best_s21 = s21;
                best_res = res;
                moved = true;
            }
        }
        if !moved {
            step *= 0.5;
        }
    }

    // Gauss-Newton polish on the complex residual, finite-difference
    // Jacobian, step damping; accepted only while it improves.
    let fd = 1e-7;
    for _ in 0..8 {
        if best_res < 1e-13 {
            break;
        }
        let f0 = best_s21 - target;
        let da = (eval((clamp(best.0 + fd), best.1))? - eval((clamp(best.0 - fd), best.1))?)
            / (2.0 * fd);
        let db = (eval((best.0, clamp(best.1 + fd)))? - eval((best.0, clamp(best.1 - fd)))?)
            / (2.0 * fd);
        // Solve the 2x2 real system J * delta = -f0 with J = [Re/Im of da, db].
        let det = da.re * db.im - da.im * db.re;
        if det.abs() < 1e-300 {
            break;
        }
        let mut d_in = (-f0.re * db.im + f0.im * db.re) / det;
        let mut d_out = (-da.re * f0.im + da.im * f0.re) / det;

        let mut improved = false;
        for _ in 0..5 {
            let cand = (clamp(best.0 + d_in), clamp(best.1 + d_out));
            let s21 = eval(cand)?;
            let res = (s21 - target).norm();
            if res < best_res {
                best = cand;
                best_s21 = s21;
                best_res = res;
                improved = true;
                break;
            }
            d_in *= 0.5;
            d_out *= 0.5;
        }
        if !improved {
            break;
        }
    }

    Ok((best, best_s21))
}

/// Deviation statistics of a design against its targets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviationReport {
    /// Standard deviation of |S21| - |H| over all cells.
    pub amplitude_std: f64,
    /// Standard deviation of the wrapped phase difference, degrees, over
    /// cells with |H| >= the amplitude floor.
    pub phase_std_deg: f64,
    /// Largest complex residual |S21 - H|.
    pub max_residual: f64,
    /// Number of cells entering the phase statistics.
    pub phase_cells: usize,
}

fn std_dev(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / values.len() as f64).sqrt()
}

fn wrap_to_pi(phi: f64) -> f64 {
    let mut p = phi % (2.0 * PI);
    if p > PI {
        p -= 2.0 * PI;
    } else if p < -PI {
        p += 2.0 * PI;
    }
    p
}

/// Amplitude and phase deviation statistics for a synthesized design.
///
/// The achieved profile realizes the targets up to the common complex factor
/// every cell shares (the background transmission); the statistics are taken
/// after fitting that single factor by least squares, so they measure shape
/// scatter exactly as a normalized profile comparison does.
pub fn deviation_report(designs: &[CellDesign]) -> DeviationReport {
    let tt: f64 = designs.iter().map(|d| d.target.norm_sqr()).sum();
    let ta: Complex64 = designs.iter().map(|d| d.target.conj() * d.achieved).sum();
    let alpha = if tt > 0.0 {
        ta / tt
    } else {
        Complex64::new(1.0, 0.0)
    };
    let amp: Vec<f64> = designs
        .iter()
        .map(|d| d.achieved.norm() - (alpha * d.target).norm())
        .collect();
    let phase: Vec<f64> = designs
        .iter()
        .filter(|d| d.target.norm() >= PHASE_AMPLITUDE_FLOOR)
        .map(|d| wrap_to_pi(d.achieved.arg() - (alpha * d.target).arg()))
        .collect();
    DeviationReport {
        amplitude_std: std_dev(&amp),
        phase_std_deg: std_dev(&phase).to_degrees(),
        max_residual: designs.iter().fold(0.0f64, |m, d| m.max(d.residual)),
        phase_cells: phase.len(),
    }
}
