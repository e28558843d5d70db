//! Scattering of graphene plasmons at a 1-D conductivity discontinuity and
//! transfer-matrix cascading of interfaces and uniform segments into two-port
//! scattering parameters.
//!
//! # Amplitude convention
//!
//! All 2x2 matrices relate forward/backward wave amplitudes on the *left* of
//! an element to those on its *right*:
//!
//! ```text
//! [a_L+]       [a_R+]
//! [a_L-] = T * [a_R-]
//! ```
//!
//! with `+` propagating toward +z (left to right). A cascade in physical
//! left-to-right order is the ordered matrix product of its elements, and the
//! scattering parameters of a composite T are
//!
//! ```text
//! S21 = 1/T11,  S11 = T21/T11,  S22 = -T12/T11,  S12 = det(T)/T11.
//! ```
//!
//! This is the single place where the convention is defined; everything else
//! (including the tests against the Airy multiple-reflection series and the
//! direct boundary-matching solver) is expressed through it.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use crate::error::{Error, Result};
use crate::quad;

const THETA_ABS_TOL: f64 = 1e-12;
const THETA_MAX_DEPTH: usize = 60;

/// Reflection/transmission coefficients of plasmon waves at one conductivity
/// step, for incidence from either side, plus the scattering phases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceScattering {
    pub r_lr: Complex64,
    pub t_lr: Complex64,
    pub r_rl: Complex64,
    pub t_rl: Complex64,
    /// Reflection phase for left-side incidence, radians (complex for lossy
    /// wavenumbers).
    pub theta_lr: Complex64,
    pub theta_rl: Complex64,
}

impl InterfaceScattering {
    /// The same physical interface seen from the other side.
    pub fn reversed(&self) -> Self {
        InterfaceScattering {
            r_lr: self.r_rl,
            t_lr: self.t_rl,
            r_rl: self.r_lr,
            t_rl: self.t_lr,
            theta_lr: self.theta_rl,
            theta_rl: self.theta_lr,
        }
    }
}

/// Role tag of a two-port wave-transfer matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    Matching,
    Propagation,
    Composite,
}

/// 2x2 wave-transfer matrix in the convention documented at module level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPortMatrix {
    pub m: [[Complex64; 2]; 2],
    pub kind: MatrixKind,
}

impl TwoPortMatrix {
    pub fn identity(kind: MatrixKind) -> Self {
        TwoPortMatrix {
            m: [
                [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
                [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            ],
            kind,
        }
    }

    pub fn mul(&self, rhs: &TwoPortMatrix) -> TwoPortMatrix {
        let a = &self.m;
        let b = &rhs.m;
        TwoPortMatrix {
            m: [
                [
                    a[0][0] * b[0][0] + a[0][1] * b[1][0],
                    a[0][0] * b[0][1] + a[0][1] * b[1][1],
                ],
                [
                    a[1][0] * b[0][0] + a[1][1] * b[1][0],
                    a[1][0] * b[0][1] + a[1][1] * b[1][1],
                ],
            ],
            kind: MatrixKind::Composite,
        }
    }

    pub fn det(&self) -> Complex64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }
}

/// Scattering parameters of a two-port.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SParams {
    pub s11: Complex64,
    pub s21: Complex64,
    pub s12: Complex64,
    pub s22: Complex64,
}

/// Interface scattering phase
///
/// ```text
/// theta_LR = pi/4 - (2/pi) * int_0^inf arctan(k_L u / k_R) / (u^2 + 1) du,
/// ```
///
/// computed after the substitution u = tan(t) as an adaptive Gauss-Kronrod
/// integral of arctan((k_L/k_R) tan t) over t in [0, pi/2), absolute
/// tolerance 1e-12, principal branch of the complex arctangent.
pub fn theta_phase(k_left: Complex64, k_right: Complex64) -> Result<Complex64> {
    if !(k_left.re > 0.0 && k_right.re > 0.0) {
        return Err(Error::NonForwardWavenumber);
    }
    let ratio = k_left / k_right;
    let integral = quad::integrate(
        |t: f64| (ratio * t.tan()).atan(),
        0.0,
        FRAC_PI_2,
        THETA_ABS_TOL,
        THETA_MAX_DEPTH,
    )?;
    Ok(Complex64::new(FRAC_PI_4, 0.0) - integral * (2.0 / PI))
}

/// Reflection and transmission coefficients at a conductivity step between
/// half-sheets with plasmon wavenumbers `k_left` and `k_right`:
///
/// ```text
/// r_LR = e^{i theta_LR} (k_L - k_R)/(k_L + k_R),
/// t_LR = 2 sqrt(k_L k_R) / (k_L + k_R),
/// ```
///
/// with the principal square root; right-side incidence by exchanging the
/// wavenumbers. The transmission coefficient is symmetric, t_LR = t_RL.
pub fn discontinuity_coefficients(
    k_left: Complex64,
    k_right: Complex64,
) -> Result<InterfaceScattering> {
    if !(k_left.re > 0.0 && k_right.re > 0.0) {
        return Err(Error::NonForwardWavenumber);
    }
    let sum = k_left + k_right;
    if sum == Complex64::new(0.0, 0.0) {
        return Err(Error::DegenerateInterface);
    }
    let theta_lr = theta_phase(k_left, k_right)?;
    let theta_rl = theta_phase(k_right, k_left)?;
    let t = 2.0 * (k_left * k_right).sqrt() / sum;
    Ok(InterfaceScattering {
        r_lr: (Complex64::i() * theta_lr).exp() * (k_left - k_right) / sum,
        t_lr: t,
        r_rl: (Complex64::i() * theta_rl).exp() * (k_right - k_left) / sum,
        t_rl: t,
        theta_lr,
        theta_rl,
    })
}

/// Wave-transfer matching matrix of an interface: the unique 2x2 map (in the
/// module convention) whose implied scattering entries reproduce the given
/// coefficients exactly:
///
/// ```text
/// M = (1/t_LR) [ 1     -r_RL              ]
///              [ r_LR   t_LR t_RL - r_LR r_RL ]
/// ```
pub fn matching_matrix(iface: &InterfaceScattering) -> Result<TwoPortMatrix> {
    if iface.t_lr == Complex64::new(0.0, 0.0) {
        return Err(Error::OpaqueInterface);
    }
    let inv_t = 1.0 / iface.t_lr;
    Ok(TwoPortMatrix {
        m: [
            [inv_t, -iface.r_rl * inv_t],
            [
                iface.r_lr * inv_t,
                (iface.t_lr * iface.t_rl - iface.r_lr * iface.r_rl) * inv_t,
            ],
        ],
        kind: MatrixKind::Matching,
    })
}

/// Propagation matrix of a uniform segment of length `l`:
/// diag(e^{-ikl}, e^{+ikl}).
pub fn propagation_matrix(k: Complex64, l: f64) -> Result<TwoPortMatrix> {
    if l < 0.0 {
        return Err(Error::NegativeLength(l));
    }
    let phase = Complex64::i() * k * l;
    Ok(TwoPortMatrix {
        m: [
            [(-phase).exp(), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), phase.exp()],
        ],
        kind: MatrixKind::Propagation,
    })
}

/// Ordered product of the elements, leftmost element first.
pub fn cascade(elements: &[TwoPortMatrix]) -> Result<TwoPortMatrix> {
    let (first, rest) = elements.split_first().ok_or(Error::EmptyCascade)?;
    let mut total = *first;
    for e in rest {
        total = total.mul(e);
    }
    Ok(total)
}

/// Scattering parameters of a composite wave-transfer matrix (see the module
/// convention).
pub fn s_params(t: &TwoPortMatrix) -> Result<SParams> {
    let t11 = t.m[0][0];
    if t11 == Complex64::new(0.0, 0.0) {
        return Err(Error::DegenerateNetwork);
    }
    Ok(SParams {
        s21: 1.0 / t11,
        s11: t.m[1][0] / t11,
        s22: -t.m[0][1] / t11,
        s12: t.det() / t11,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn equal_wavenumbers_have_zero_phase() {
        let theta = theta_phase(c(2.0e8, 0.0), c(2.0e8, 0.0)).unwrap();
        assert!(theta.norm() <= 1e-12, "theta = {theta}");
    }

    #[test]
    fn extreme_ratio_approaches_minus_quarter_pi() {
        let theta = theta_phase(c(1e6, 0.0), c(1.0, 0.0)).unwrap();
        assert!((theta.re + FRAC_PI_4).abs() <= 1e-5, "theta = {theta}");
        assert_eq!(theta.im, 0.0);
    }

    #[test]
    fn ratio_two_matches_composite_simpson() {
        // Frozen from a 1e6-interval composite Simpson evaluation of the same
        // integral (see the validation crate oracle).
        let theta = theta_phase(c(2.0, 0.0), c(1.0, 0.0)).unwrap();
        assert_relative_eq!(theta.re, -2.149375908723474e-1, max_relative = 1e-10);
        assert!(theta.im.abs() < 1e-12);
    }

    #[test]
    fn lossy_design_pair_coefficients() {
        // Plasmon wavenumbers of the 0.3 eV / 0.6 eV sheets at 6 um, 300 K,
        // 1 ps; coefficients pinned against the Simpson phase oracle and a
        // 40-digit conductivity evaluation.
        let k_a = c(5.639678538852812e7, 2.325782292832814e5);
        let k_b = c(2.547435429046532e7, 8.620521067678354e4);
        let iface = discontinuity_coefficients(k_a, k_b).unwrap();
        assert_relative_eq!(iface.r_lr.re, 3.666214753999635e-1, max_relative = 1e-9);
        assert_relative_eq!(iface.r_lr.im, -9.113118247625848e-2, max_relative = 1e-9);
        assert_relative_eq!(iface.t_lr.re, 9.259290724655620e-1, max_relative = 1e-9);
        assert_relative_eq!(iface.t_lr.im, -1.293884736367760e-4, max_relative = 1e-9);
        assert_relative_eq!(iface.theta_lr.re, -2.444723573232743e-1, max_relative = 1e-9);
        assert_relative_eq!(iface.theta_lr.im, -2.124523833402294e-4, max_relative = 1e-9);
    }

    #[test]
    fn phase_is_antisymmetric_for_real_wavenumbers() {
        let mut state = 0x2545F4914F6CDD1Du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..200 {
            let ratio = 10f64.powf(next() * 6.0 - 3.0);
            let lr = theta_phase(c(ratio, 0.0), c(1.0, 0.0)).unwrap();
            let rl = theta_phase(c(1.0, 0.0), c(ratio, 0.0)).unwrap();
            assert!((lr + rl).norm() <= 1e-10, "ratio {ratio}: {lr} vs {rl}");
        }
    }

    #[test]
    fn identical_media_are_transparent() {
        let k = c(1.3e8, 2.0e6);
        let iface = discontinuity_coefficients(k, k).unwrap();
        assert!(iface.r_lr.norm() <= 1e-14);
        assert!((iface.t_lr - 1.0).norm() <= 1e-14);
    }

    #[test]
    fn two_to_one_step_coefficients() {
        let iface = discontinuity_coefficients(c(2.0, 0.0), c(1.0, 0.0)).unwrap();
        assert_relative_eq!(iface.r_lr.norm(), 1.0 / 3.0, max_relative = 1e-12);
        assert_relative_eq!(iface.t_lr.norm(), 2.0 * 2f64.sqrt() / 3.0, max_relative = 1e-12);
        assert_eq!(iface.t_lr, iface.t_rl);
    }

    #[test]
    fn real_step_is_unitary() {
        for ratio in [1e-3, 0.037, 0.5, 1.0, 3.3, 41.0, 1e3] {
            let iface = discontinuity_coefficients(c(ratio, 0.0), c(1.0, 0.0)).unwrap();
            let power = iface.r_lr.norm_sqr() + iface.t_lr.norm_sqr();
            assert!((power - 1.0).abs() <= 1e-12, "ratio {ratio}: {power}");
        }
    }

    #[test]
    fn identity_interface_gives_identity_matrix() {
        let iface = InterfaceScattering {
            r_lr: c(0.0, 0.0),
            t_lr: c(1.0, 0.0),
            r_rl: c(0.0, 0.0),
            t_rl: c(1.0, 0.0),
            theta_lr: c(0.0, 0.0),
            theta_rl: c(0.0, 0.0),
        };
        let m = matching_matrix(&iface).unwrap();
        assert_eq!(m.m, TwoPortMatrix::identity(MatrixKind::Matching).m);
    }

    #[test]
    fn matching_matrix_roundtrips_through_s_params() {
        let iface = discontinuity_coefficients(c(2.4e8, 3.0e6), c(0.9e8, 1.1e6)).unwrap();
        let m = matching_matrix(&iface).unwrap();
        let s = s_params(&m).unwrap();
        assert!((s.s11 - iface.r_lr).norm() <= 1e-14);
        assert!((s.s21 - iface.t_lr).norm() <= 1e-14);
        assert!((s.s22 - iface.r_rl).norm() <= 1e-14);
        assert!((s.s12 - iface.t_rl).norm() <= 1e-14);
    }

    #[test]
    fn opaque_interface_is_rejected() {
        let iface = InterfaceScattering {
            r_lr: c(1.0, 0.0),
            t_lr: c(0.0, 0.0),
            r_rl: c(1.0, 0.0),
            t_rl: c(0.0, 0.0),
            theta_lr: c(0.0, 0.0),
            theta_rl: c(0.0, 0.0),
        };
        assert!(matches!(matching_matrix(&iface), Err(Error::OpaqueInterface)));
    }

    #[test]
    fn propagation_basics() {
        let k = c(2.0e8, 0.0);
        let id = propagation_matrix(k, 0.0).unwrap();
        assert_eq!(id.m, TwoPortMatrix::identity(MatrixKind::Propagation).m);

        // Quarter guided wavelength: phases -pi/2 and +pi/2.
        let l = 0.25 * 2.0 * PI / k.re;
        let p = propagation_matrix(k, l).unwrap();
        assert!((p.m[0][0] - c(0.0, -1.0)).norm() <= 1e-12);
        assert!((p.m[1][1] - c(0.0, 1.0)).norm() <= 1e-12);

        let lossy = c(2.0e8, 5.0e6);
        let p = propagation_matrix(lossy, 10.0e-9).unwrap();
        assert_relative_eq!(p.m[0][0].norm(), (lossy.im * 10.0e-9).exp(), max_relative = 1e-13);

        assert!(matches!(propagation_matrix(k, -1.0), Err(Error::NegativeLength(_))));
    }

    #[test]
    fn cascade_of_single_element_is_itself() {
        let p = propagation_matrix(c(1.0e8, 1.0e5), 7.0e-9).unwrap();
        let t = cascade(&[p]).unwrap();
        assert_eq!(t.m, p.m);
    }

    #[test]
    fn segment_times_reverse_segment_is_identity() {
        let k = c(1.7e8, 2.3e6);
        let fwd = propagation_matrix(k, 31.0e-9).unwrap();
        let bwd = propagation_matrix(-k, 31.0e-9).unwrap();
        let t = cascade(&[fwd, bwd]).unwrap();
        assert!((t.m[0][0] - 1.0).norm() <= 1e-13);
        assert!((t.m[1][1] - 1.0).norm() <= 1e-13);
        assert!(t.m[0][1].norm() <= 1e-13);
        assert!(t.m[1][0].norm() <= 1e-13);
    }

    #[test]
    fn empty_cascade_is_an_error() {
        assert!(matches!(cascade(&[]), Err(Error::EmptyCascade)));
    }

    #[test]
    fn s_params_of_identity_and_uniform_segment() {
        let id = TwoPortMatrix::identity(MatrixKind::Composite);
        let s = s_params(&id).unwrap();
        assert_eq!(s.s21, c(1.0, 0.0));
        assert_eq!(s.s11, c(0.0, 0.0));

        let k = c(2.2e8, 1.0e6);
        let l = 42.0e-9;
        let p = propagation_matrix(k, l).unwrap();
        let s = s_params(&p).unwrap();
        assert!((s.s21 - (Complex64::i() * k * l).exp()).norm() <= 1e-14);
        assert!(s.s11.norm() <= 1e-14);
    }

    #[test]
    fn etalon_matches_airy_series() {
        // Two interfaces A|B at z=0 and B|A at z=l; the cascade must equal the
        // multiple-reflection sum t1 t2 e^{ikl} sum_n (r2 r1')^n e^{2ikl n}.
        let ka = c(1.1e8, 0.9e6);
        let kb = c(3.2e8, 6.5e6);
        let l = 27.0e-9;
        let ab = discontinuity_coefficients(ka, kb).unwrap();
        let ba = ab.reversed();

        let t = cascade(&[
            matching_matrix(&ab).unwrap(),
            propagation_matrix(kb, l).unwrap(),
            matching_matrix(&ba).unwrap(),
        ])
        .unwrap();
        let s21 = s_params(&t).unwrap().s21;

        let phase = (Complex64::i() * kb * l).exp();
        let loop_gain = ba.r_lr * ba.r_lr * phase * phase;
        let mut sum = Complex64::new(0.0, 0.0);
        let mut term = ab.t_lr * ba.t_lr * phase;
        for _ in 0..10_000 {
            sum += term;
            term *= loop_gain;
            if term.norm() < 1e-18 * sum.norm() {
                break;
            }
        }
        assert!(
            (s21 - sum).norm() / sum.norm() <= 1e-9,
            "cascade {s21} vs series {sum}"
        );
    }
}
