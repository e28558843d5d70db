//! Closed-form calculus references the operator pipeline is measured
//! against, plus a direct (non-FFT) discrete Fourier pair used to build the
//! integrator reference.

use num_complex::Complex64;

use crate::pipeline::FieldProfile;
use crate::synthesis::TransferFunctionSpec;

/// sin(u)/u with the removable singularity at u = 0.
pub fn sinc(u: f64) -> f64 {
    if u.abs() < 1e-4 {
        1.0 - u * u / 6.0 + u * u * u * u / 120.0
    } else {
        u.sin() / u
    }
}

/// d/du [sin(u)/u].
pub fn sinc_prime(u: f64) -> f64 {
    if u.abs() < 1e-4 {
        -u / 3.0 + u * u * u / 30.0
    } else {
        (u * u.cos() - u.sin()) / (u * u)
    }
}

/// d^2/du^2 [sin(u)/u].
pub fn sinc_second(u: f64) -> f64 {
    if u.abs() < 1e-4 {
        -1.0 / 3.0 + u * u / 10.0
    } else {
        ((2.0 - u * u) * u.sin() - 2.0 * u * u.cos()) / (u * u * u)
    }
}

fn profile_from(n: usize, w: f64, f: impl Fn(f64) -> Complex64) -> FieldProfile {
    let samples = (0..n)
        .map(|j| f(crate::pipeline::sample_position(j, n, w)))
        .collect();
    FieldProfile {
        samples,
        aperture: w,
    }
}

/// First derivative of sinc(a x) sampled over the aperture, a = 16 pi / W.
pub fn sinc_derivative(n: usize, w: f64) -> FieldProfile {
    let a = 16.0 * std::f64::consts::PI / w;
    profile_from(n, w, |x| Complex64::new(a * sinc_prime(a * x), 0.0))
}

/// Second derivative of sinc(a x) sampled over the aperture.
pub fn sinc_second_derivative(n: usize, w: f64) -> FieldProfile {
    let a = 16.0 * std::f64::consts::PI / w;
    profile_from(n, w, |x| Complex64::new(a * a * sinc_second(a * x), 0.0))
}

/// Direct centred discrete Fourier transform (quadratic sum, no FFT).
fn direct_centered_dft(samples: &[Complex64], inverse: bool) -> Vec<Complex64> {
    let n = samples.len();
    let c = (n as f64 - 1.0) / 2.0;
    let sign = if inverse { 1.0 } else { -1.0 };
    let norm = 1.0 / (n as f64).sqrt();
    (0..n)
        .map(|m| {
            let pm = m as f64 - c;
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, &f) in samples.iter().enumerate() {
                let pj = j as f64 - c;
                acc += f * Complex64::from_polar(
                    1.0,
                    sign * 2.0 * std::f64::consts::PI * pm * pj / n as f64,
                );
            }
            acc * norm
        })
        .collect()
}

/// Integrator reference: the input spectrum multiplied by the plateau
/// transfer profile and transformed back, computed with the direct transform
/// pair rather than the pipeline's FFT path.
pub fn filtered_reference(input: &FieldProfile, spec: &TransferFunctionSpec) -> FieldProfile {
    let n = input.samples.len();
    let w = input.aperture;
    let spectrum = direct_centered_dft(&input.samples, false);
    let masked: Vec<Complex64> = spectrum
        .iter()
        .enumerate()
        .map(|(m, &v)| v * spec.eval(crate::pipeline::sample_position(m, n, w)))
        .collect();
    FieldProfile {
        samples: direct_centered_dft(&masked, true),
        aperture: w,
    }
}
