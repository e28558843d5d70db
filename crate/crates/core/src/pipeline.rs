//! The end-to-end operator pipeline: lens transform, transfer plane, second
//! lens, and comparison against a reference under the mirror convention.
//!
//! The ideal lens is the centred unitary discrete Fourier transform on the
//! half-offset aperture grid x_j = -W/2 + (j + 1/2) W / N. Two applications
//! of it reproduce the coordinate-reversed input exactly, so the second lens
//! doubles as the (unavailable-in-hardware) inverse transform up to a mirror.
//! Spectral bin j is identified with transverse position x_j of the transfer
//! plane; the free proportionality between the two axes is absorbed into one
//! global complex scale fitted before any error metric.

use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::PI;

use crate::constants::{omega_for_wavelength, DEFAULT_GRIN_LENGTH, DEFAULT_WAVELENGTH};
use crate::error::{Error, Result};
use crate::synthesis::{CellDesign, TransferFunctionSpec};

/// Position of sample `j` on the `n`-point half-offset grid over `width`:
/// x_j = (j + 1/2 - n/2) * width / n. The grid is symmetric (x_{n-1-j} is
/// the exact negation of x_j) and never contains x = 0.
pub fn sample_position(j: usize, n: usize, width: f64) -> f64 {
    (j as f64 + 0.5 - n as f64 / 2.0) * (width / n as f64)
}

/// Uniformly sampled complex transverse field over an aperture.
///
/// Sample j sits at x_j = -W/2 + (j + 1/2) W / N; the grid is symmetric and
/// never contains x = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldProfile {
    pub samples: Vec<Complex64>,
    /// Aperture width W, m.
    pub aperture: f64,
}

impl FieldProfile {
    pub fn new(samples: Vec<Complex64>, aperture: f64) -> Result<Self> {
        if samples.len() < 2 || samples.len() % 2 != 0 {
            return Err(Error::Domain(format!(
                "field needs an even sample count >= 2, got {}",
                samples.len()
            )));
        }
        if !(aperture > 0.0) {
            return Err(Error::Domain("aperture must be positive".into()));
        }
        Ok(FieldProfile { samples, aperture })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Sample positions, m.
    pub fn positions(&self) -> Vec<f64> {
        let n = self.samples.len();
        (0..n).map(|j| sample_position(j, n, self.aperture)).collect()
    }

    /// Discrete field energy sum |f|^2 dx.
    pub fn energy(&self) -> f64 {
        let dx = self.aperture / self.samples.len() as f64;
        self.samples.iter().map(|s| s.norm_sqr()) .sum::<f64>() * dx
    }

    /// Coordinate-reversed copy.
    pub fn mirrored(&self) -> FieldProfile {
        let mut samples = self.samples.clone();
        samples.reverse();
        FieldProfile {
            samples,
            aperture: self.aperture,
        }
    }
}

/// Fourier-transforming element in front of and behind the transfer plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LensModel {
    /// Centred unitary DFT.
    IdealFt,
    /// Scalar paraxial split-step propagation through a quarter-pitch
    /// graded-index channel n(x) = n0 sqrt(1 - g^2 x^2).
    GrinBpm {
        /// Channel length, m.
        length: f64,
        /// Centre effective mode index.
        n0: f64,
        /// Index gradient, 1/m; quarter pitch requires g * length = pi/2.
        gradient: f64,
        /// Number of propagation steps.
        steps: usize,
        /// Raised-cosine absorber over the outer 10% of the aperture.
        absorber: bool,
        /// Free-space operating wavelength, m (converts index to the
        /// propagation constant).
        wavelength: f64,
    },
}

impl LensModel {
    /// Quarter-pitch graded-index lens whose focal scale matches the centred
    /// DFT on an `n`-sample aperture, so both lens models produce the same
    /// spectrum-to-position mapping.
    pub fn grin_matched(aperture: f64, n: usize, wavelength: f64) -> LensModel {
        let length = DEFAULT_GRIN_LENGTH;
        let gradient = 0.5 * PI / length;
        let k0 = 2.0 * PI / wavelength;
        let n0 = 2.0 * PI * n as f64 / (aperture * aperture * k0 * gradient);
        LensModel::GrinBpm {
            length,
            n0,
            gradient,
            steps: 10_000,
            absorber: true,
            wavelength,
        }
    }

    pub fn grin_matched_default(aperture: f64, n: usize) -> LensModel {
        Self::grin_matched(aperture, n, DEFAULT_WAVELENGTH)
    }

    fn validate(&self, aperture: f64) -> Result<()> {
        if let LensModel::GrinBpm {
            length,
            n0,
            gradient,
            steps,
            wavelength,
            ..
        } = self
        {
            if !(*wavelength > 0.0) {
                return Err(Error::Geometry("wavelength must be positive".into()));
            }
            if (gradient * length - 0.5 * PI).abs() > 1e-12 {
                return Err(Error::Geometry(format!(
                    "quarter-pitch violated: g*L = {}",
                    gradient * length
                )));
            }
            let edge = gradient * 0.5 * aperture;
            if *n0 <= 0.0 || edge >= 1.0 {
                return Err(Error::Geometry(format!(
                    "graded index non-positive inside the aperture (g*W/2 = {edge})"
                )));
            }
            if *steps == 0 {
                return Err(Error::Geometry("propagation needs at least one step".into()));
            }
        }
        Ok(())
    }
}

/// Input profile sinc(16 pi x / W) sampled on `n` points over the aperture.
pub fn make_input_sinc(n: usize, aperture: f64) -> Result<FieldProfile> {
    let a = 16.0 * PI / aperture;
    let samples = (0..n)
        .map(|j| Complex64::new(crate::analytic::sinc(a * sample_position(j, n, aperture)), 0.0))
        .collect();
    FieldProfile::new(samples, aperture)
}

/// Centred unitary DFT via FFT with pre/post phase twists.
fn centered_dft(field: &FieldProfile) -> FieldProfile {
    let n = field.samples.len();
    let c = (n as f64 - 1.0) / 2.0;
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(n);

    let mut buf: Vec<Complex64> = field
        .samples
        .iter()
        .enumerate()
        .map(|(j, &f)| f * Complex64::from_polar(1.0, 2.0 * PI * c * j as f64 / n as f64))
        .collect();
    fft.process(&mut buf);

    let norm = 1.0 / (n as f64).sqrt();
    let global = Complex64::from_polar(1.0, -2.0 * PI * c * c / n as f64) * norm;
    let samples = buf
        .into_iter()
        .enumerate()
        .map(|(m, v)| v * global * Complex64::from_polar(1.0, 2.0 * PI * c * m as f64 / n as f64))
        .collect();
    FieldProfile {
        samples,
        aperture: field.aperture,
    }
}

/// Split-step quarter-pitch propagation through the graded-index channel.
fn grin_bpm(
    field: &FieldProfile,
    length: f64,
    n0: f64,
    gradient: f64,
    steps: usize,
    absorber: bool,
    wavelength: f64,
) -> FieldProfile {
    let n = field.samples.len();
    let w = field.aperture;
    let k0 = 2.0 * PI / wavelength;
    let beta = n0 * k0;
    let dz = length / steps as f64;

    // FFT-ordered transverse wavenumbers of the periodic domain.
    let kx: Vec<f64> = (0..n)
        .map(|m| {
            let q = if m <= n / 2 { m as f64 } else { m as f64 - n as f64 };
            2.0 * PI * q / w
        })
        .collect();
    let kinetic: Vec<Complex64> = kx
        .iter()
        .map(|&k| Complex64::from_polar(1.0, -k * k * dz / (2.0 * beta)))
        .collect();

    let positions = field.positions();
    // (beta(x)^2 - beta^2) / (2 beta) = -(n0 k0 g^2 / 2) x^2 for the
    // parabolic channel.
    let half_potential: Vec<Complex64> = positions
        .iter()
        .map(|&x| Complex64::from_polar(1.0, -0.25 * beta * gradient * gradient * x * x * dz))
        .collect();
    let edge = 0.9 * 0.5 * w;
    let mask: Vec<f64> = positions
        .iter()
        .map(|&x| {
            if !absorber || x.abs() <= edge {
                1.0
            } else {
                let t = (x.abs() - edge) / (0.5 * w - edge);
                0.5 * (1.0 + (PI * t).cos())
            }
        })
        .collect();

    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(n);
    let ifft = planner.plan_fft_inverse(n);
    let inv_n = 1.0 / n as f64;

    let mut buf = field.samples.clone();
    for _ in 0..steps {
        for (b, hp) in buf.iter_mut().zip(&half_potential) {
            *b *= hp;
        }
        fft.process(&mut buf);
        for (b, k) in buf.iter_mut().zip(&kinetic) {
            *b *= k;
        }
        ifft.process(&mut buf);
        for ((b, hp), m) in buf.iter_mut().zip(&half_potential).zip(&mask) {
            *b *= hp * inv_n * m;
        }
    }
    FieldProfile {
        samples: buf,
        aperture: w,
    }
}

/// Propagates the field through one lens.
pub fn lens_transform(field: &FieldProfile, lens: &LensModel) -> Result<FieldProfile> {
    lens.validate(field.aperture)?;
    match lens {
        LensModel::IdealFt => Ok(centered_dft(field)),
        LensModel::GrinBpm {
            length,
            n0,
            gradient,
            steps,
            absorber,
            wavelength,
        } => Ok(grin_bpm(
            field,
            *length,
            *n0,
            *gradient,
            *steps,
            *absorber,
            *wavelength,
        )),
    }
}

/// Pointwise product with a transfer profile of matching length.
pub fn apply_transfer(field: &FieldProfile, transfer: &[Complex64]) -> Result<FieldProfile> {
    if field.samples.len() != transfer.len() {
        return Err(Error::LengthMismatch {
            field: field.samples.len(),
            transfer: transfer.len(),
        });
    }
    Ok(FieldProfile {
        samples: field
            .samples
            .iter()
            .zip(transfer)
            .map(|(f, h)| f * h)
            .collect(),
        aperture: field.aperture,
    })
}

/// Where the transfer-plane profile comes from.
#[derive(Debug, Clone, Copy)]
pub enum TransferSource<'a> {
    /// The target transfer function evaluated at every sample position.
    Ideal(&'a TransferFunctionSpec),
    /// A synthesized design, piecewise-constant over each cell period.
    Synthesized(&'a [CellDesign]),
}

/// Transfer-plane samples for a source on an `n`-point aperture grid.
pub fn transfer_samples(
    source: TransferSource<'_>,
    n: usize,
    aperture: f64,
) -> Result<Vec<Complex64>> {
    match source {
        TransferSource::Ideal(spec) => Ok((0..n)
            .map(|j| spec.eval(sample_position(j, n, aperture)))
            .collect()),
        TransferSource::Synthesized(designs) => {
            if designs.is_empty() {
                return Err(Error::Domain("empty design list".into()));
            }
            let cells = designs.len();
            Ok((0..n)
                .map(|j| {
                    let frac = (j as f64 + 0.5) / n as f64;
                    let cell = ((frac * cells as f64) as usize).min(cells - 1);
                    designs[cell].achieved
                })
                .collect())
        }
    }
}

/// Output of one operator run together with its reference and metrics.
#[derive(Debug, Clone)]
pub struct OperatorResult {
    /// Raw pipeline output (the mirror image of the operator result).
    pub output: FieldProfile,
    /// Analytic reference, as supplied (not mirrored).
    pub reference: FieldProfile,
    /// ||output - scale * mirror(reference)|| / ||scale * mirror(reference)||.
    pub normalized_rms: f64,
    /// |<output, mirror(reference)>| / (||output|| ||mirror(reference)||).
    pub correlation: f64,
    /// Fitted global complex scale.
    pub scale: Complex64,
}

/// Lens -> transfer plane -> lens, no comparison.
pub fn operator_output(
    input: &FieldProfile,
    lens: &LensModel,
    transfer: &[Complex64],
) -> Result<FieldProfile> {
    let spectrum = lens_transform(input, lens)?;
    let filtered = apply_transfer(&spectrum, transfer)?;
    lens_transform(&filtered, lens)
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Error metrics of `output` against `reference` after coordinate reversal
/// of the reference and a single global complex scale fit.
pub fn compare(output: &FieldProfile, reference: &FieldProfile) -> Result<(f64, f64, Complex64)> {
    if output.samples.len() != reference.samples.len() {
        return Err(Error::LengthMismatch {
            field: output.samples.len(),
            transfer: reference.samples.len(),
        });
    }
    let mirrored = reference.mirrored();
    let rr = inner(&mirrored.samples, &mirrored.samples).re;
    let gg = inner(&output.samples, &output.samples).re;
    if rr == 0.0 || gg == 0.0 {
        return Err(Error::Domain("cannot compare a zero field".into()));
    }
    let rg = inner(&mirrored.samples, &output.samples);
    let scale = rg / rr;
    let err: f64 = output
        .samples
        .iter()
        .zip(&mirrored.samples)
        .map(|(g, r)| (g - scale * r).norm_sqr())
        .sum();
    let nrms = (err / (scale.norm_sqr() * rr)).sqrt();
    let corr = rg.norm() / (rr * gg).sqrt();
    Ok((nrms, corr, scale))
}

/// Runs the full pipeline for an operator and compares against a reference.
pub fn run_operator(
    spec: &TransferFunctionSpec,
    input: &FieldProfile,
    reference: &FieldProfile,
    lens: &LensModel,
    source: TransferSource<'_>,
) -> Result<OperatorResult> {
    debug_assert_eq!(spec.aperture, input.aperture);
    let transfer = transfer_samples(source, input.samples.len(), input.aperture)?;
    let output = operator_output(input, lens, &transfer)?;
    let (normalized_rms, correlation, scale) = compare(&output, reference)?;
    Ok(OperatorResult {
        output,
        reference: reference.clone(),
        normalized_rms,
        correlation,
        scale,
    })
}

/// Band-matched sample count for the sinc input: the count at which the
/// input's spectral support spans the whole transfer aperture, which is the
/// regime the cell designs are meant to operate in (16 for sinc(16 pi x/W)).
pub const SINC_BAND_MATCHED_SAMPLES: usize = 16;

/// Frequency of arrival for spectral bin j expressed on the transfer plane,
/// rad/m (the identification used by the ideal lens).
pub fn bin_wavenumber(j: usize, n: usize, aperture: f64) -> f64 {
    2.0 * PI * (j as f64 - (n as f64 - 1.0) / 2.0) / aperture
}

/// Default angular frequency of the device, rad/s.
pub fn default_omega() -> f64 {
    omega_for_wavelength(DEFAULT_WAVELENGTH)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic;
    use approx::assert_relative_eq;

    const W: f64 = 684.0e-9;

    fn random_field(n: usize, seed: u64) -> FieldProfile {
        let mut state = seed | 1;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        FieldProfile::new(
            (0..n).map(|_| Complex64::new(next(), next())).collect(),
            W,
        )
        .unwrap()
    }

    #[test]
    fn sinc_input_is_even_and_unit_peak() {
        let f = make_input_sinc(256, W).unwrap();
        for j in 0..256 {
            assert_eq!(f.samples[j], f.samples[255 - j]);
        }
        assert!(f.samples[127].re > 0.99);
    }

    #[test]
    fn double_transform_is_the_mirror() {
        for n in [16usize, 64, 250] {
            let f = random_field(n, 0x9E3779B97F4A7C15 ^ n as u64);
            let g = lens_transform(&lens_transform(&f, &LensModel::IdealFt).unwrap(), &LensModel::IdealFt)
                .unwrap();
            let m = f.mirrored();
            let err: f64 = g
                .samples
                .iter()
                .zip(&m.samples)
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            let norm: f64 = f.samples.iter().map(|s| s.norm_sqr()).sum::<f64>().sqrt();
            assert!(err / norm <= 1e-10, "n = {n}: {err:e}");
        }
    }

    #[test]
    fn transform_preserves_energy() {
        let f = random_field(128, 42);
        let g = lens_transform(&f, &LensModel::IdealFt).unwrap();
        assert_relative_eq!(f.energy(), g.energy(), max_relative = 1e-12);
    }

    #[test]
    fn even_real_input_has_real_spectrum() {
        let f = make_input_sinc(512, W).unwrap();
        let g = lens_transform(&f, &LensModel::IdealFt).unwrap();
        let worst = g
            .samples
            .iter()
            .map(|s| s.im.abs())
            .fold(0.0f64, f64::max);
        assert!(worst <= 1e-10, "worst imaginary part {worst:e}");
    }

    #[test]
    fn transfer_identity_and_annihilator() {
        let f = random_field(64, 7);
        let ones = vec![Complex64::new(1.0, 0.0); 64];
        assert_eq!(apply_transfer(&f, &ones).unwrap().samples, f.samples);
        let zeros = vec![Complex64::new(0.0, 0.0); 64];
        assert!(apply_transfer(&f, &zeros)
            .unwrap()
            .samples
            .iter()
            .all(|s| s.norm() == 0.0));
        let short = vec![Complex64::new(1.0, 0.0); 32];
        assert!(matches!(
            apply_transfer(&f, &short),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn identity_transfer_returns_the_mirrored_input() {
        let f = make_input_sinc(256, W).unwrap();
        let ones = vec![Complex64::new(1.0, 0.0); 256];
        let out = operator_output(&f, &LensModel::IdealFt, &ones).unwrap();
        let m = f.mirrored();
        let err: f64 = out
            .samples
            .iter()
            .zip(&m.samples)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        let norm: f64 = f.samples.iter().map(|s| s.norm_sqr()).sum::<f64>().sqrt();
        assert!(err / norm <= 1e-10, "err = {:e}", err / norm);
    }

    #[test]
    fn pipeline_is_linear() {
        let spec = TransferFunctionSpec::new(crate::synthesis::OperatorKind::Diff1, W);
        let transfer = transfer_samples(TransferSource::Ideal(&spec), 128, W).unwrap();
        let f = random_field(128, 11);
        let g = random_field(128, 23);
        let alpha = Complex64::new(0.7, -0.4);
        let beta = Complex64::new(-1.3, 0.2);
        let combined = FieldProfile::new(
            f.samples
                .iter()
                .zip(&g.samples)
                .map(|(a, b)| alpha * a + beta * b)
                .collect(),
            W,
        )
        .unwrap();
        let out_comb = operator_output(&combined, &LensModel::IdealFt, &transfer).unwrap();
        let out_f = operator_output(&f, &LensModel::IdealFt, &transfer).unwrap();
        let out_g = operator_output(&g, &LensModel::IdealFt, &transfer).unwrap();
        let err: f64 = out_comb
            .samples
            .iter()
            .zip(out_f.samples.iter().zip(&out_g.samples))
            .map(|(c, (a, b))| (c - (alpha * a + beta * b)).norm_sqr())
            .sum::<f64>()
            .sqrt();
        let norm: f64 = out_comb.samples.iter().map(|s| s.norm_sqr()).sum::<f64>().sqrt();
        assert!(err / norm <= 1e-10);
    }

    #[test]
    fn ideal_first_derivative_equals_spectral_differentiation() {
        // The ideal transfer profile is proportional to i*k on the bin grid,
        // so the pipeline must reproduce direct spectral differentiation
        // exactly; this pins the bin-to-position identification.
        let n = 256;
        let f = make_input_sinc(n, W).unwrap();
        let spec = TransferFunctionSpec::new(crate::synthesis::OperatorKind::Diff1, W);
        let transfer = transfer_samples(TransferSource::Ideal(&spec), n, W).unwrap();
        let out = operator_output(&f, &LensModel::IdealFt, &transfer).unwrap();

        let spectrum = lens_transform(&f, &LensModel::IdealFt).unwrap();
        let deriv_spectrum: Vec<Complex64> = spectrum
            .samples
            .iter()
            .enumerate()
            .map(|(j, &v)| v * Complex64::new(0.0, bin_wavenumber(j, n, W)))
            .collect();
        let deriv = lens_transform(
            &FieldProfile::new(deriv_spectrum, W).unwrap(),
            &LensModel::IdealFt,
        )
        .unwrap();

        let (nrms, _, _) = compare(&out, &deriv.mirrored()).unwrap();
        assert!(nrms <= 1e-8, "nrms = {nrms:e}");
    }

    #[test]
    fn windowed_sine_differentiates_to_cosine_away_from_edges() {
        let n = 512;
        let samples: Vec<Complex64> = (0..n)
            .map(|j| Complex64::new((2.0 * PI * sample_position(j, n, W) / W).sin(), 0.0))
            .collect();
        let f = FieldProfile::new(samples, W).unwrap();
        let spec = TransferFunctionSpec::new(crate::synthesis::OperatorKind::Diff1, W);
        let transfer = transfer_samples(TransferSource::Ideal(&spec), n, W).unwrap();
        let out = operator_output(&f, &LensModel::IdealFt, &transfer).unwrap();

        // Compare on the inner 80% of the aperture (mirrored reference).
        let lo = n / 10;
        let hi = n - n / 10;
        let inner_out: Vec<Complex64> = out.samples[lo..hi].to_vec();
        let cos_ref: Vec<Complex64> = (lo..hi)
            .map(|j| {
                let x = sample_position(n - 1 - j, n, W);
                Complex64::new((2.0 * PI * x / W).cos(), 0.0)
            })
            .collect();
        let corr = inner(&cos_ref, &inner_out).norm()
            / (inner(&cos_ref, &cos_ref).re * inner(&inner_out, &inner_out).re).sqrt();
        assert!(corr >= 0.99, "corr = {corr}");
    }

    #[test]
    fn derivative_of_even_input_is_odd() {
        let n = 2048;
        let f = make_input_sinc(n, W).unwrap();
        let spec = TransferFunctionSpec::new(crate::synthesis::OperatorKind::Diff1, W);
        let reference = analytic::sinc_derivative(n, W);
        let out = run_operator(&spec, &f, &reference, &LensModel::IdealFt, TransferSource::Ideal(&spec))
            .unwrap();
        let g = &out.output.samples;
        let sym: f64 = (0..n)
            .map(|j| (g[j] + g[n - 1 - j]).norm_sqr())
            .sum::<f64>()
            .sqrt();
        let norm: f64 = g.iter().map(|s| s.norm_sqr()).sum::<f64>().sqrt();
        assert!(sym / norm <= 0.02, "parity defect {}", sym / norm);
    }

    #[test]
    fn grin_lens_conserves_energy_without_absorber() {
        let n = 512;
        let f = make_input_sinc(n, W).unwrap();
        let mut lens = LensModel::grin_matched_default(W, n);
        if let LensModel::GrinBpm {
            ref mut absorber,
            ref mut steps,
            ..
        } = lens
        {
            *absorber = false;
            *steps = 2000;
        }
        let g = lens_transform(&f, &lens).unwrap();
        assert_relative_eq!(g.energy(), f.energy(), max_relative = 1e-6);
    }

    #[test]
    fn quarter_pitch_violation_is_rejected() {
        let lens = LensModel::GrinBpm {
            length: 1.0e-6,
            n0: 100.0,
            gradient: 1.0e6,
            steps: 10,
            absorber: false,
            wavelength: DEFAULT_WAVELENGTH,
        };
        let f = make_input_sinc(16, W).unwrap();
        assert!(matches!(lens_transform(&f, &lens), Err(Error::Geometry(_))));
    }
}
