//! Reference implementations used to cross-check the production code.

use metaline_core::scattering::InterfaceScattering;
use nalgebra::{DMatrix, DVector};
use num_bigfloat::BigFloat;
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

/// Complex number on 40-digit floats; only the operations the conductivity
/// reference needs.
#[derive(Debug, Clone, Copy)]
pub struct MpComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl MpComplex {
    pub fn from_f64(re: f64, im: f64) -> Self {
        MpComplex {
            re: BigFloat::from_f64(re),
            im: BigFloat::from_f64(im),
        }
    }

    pub fn add(self, o: Self) -> Self {
        MpComplex {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }

    pub fn sub(self, o: Self) -> Self {
        MpComplex {
            re: self.re - o.re,
            im: self.im - o.im,
        }
    }

    pub fn mul(self, o: Self) -> Self {
        MpComplex {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }

    pub fn div(self, o: Self) -> Self {
        let den = o.re * o.re + o.im * o.im;
        MpComplex {
            re: (self.re * o.re + self.im * o.im) / den,
            im: (self.im * o.re - self.re * o.im) / den,
        }
    }

    pub fn scale(self, s: BigFloat) -> Self {
        MpComplex {
            re: self.re * s,
            im: self.im * s,
        }
    }

    /// Principal logarithm; an argument exactly on the negative real axis is
    /// taken on the lower side, matching the lossless limit of the
    /// conductivity model.
    pub fn ln(self) -> Self {
        let half = BigFloat::from_f64(0.5);
        let modulus_sq = self.re * self.re + self.im * self.im;
        MpComplex {
            re: modulus_sq.ln() * half,
            im: atan2_lower(self.im, self.re),
        }
    }

    /// Multiplication by i.
    pub fn times_i(self) -> Self {
        MpComplex {
            re: -self.im,
            im: self.re,
        }
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

fn atan2_lower(y: BigFloat, x: BigFloat) -> BigFloat {
    let zero = BigFloat::from_f64(0.0);
    let pi = num_bigfloat::PI;
    if y == zero {
        return if x < zero { -pi } else { zero };
    }
    if x == zero {
        return if y > zero {
            pi / BigFloat::from_f64(2.0)
        } else {
            -(pi / BigFloat::from_f64(2.0))
        };
    }
    let base = (y / x).atan();
    if x > zero {
        base
    } else if y > zero {
        base + pi
    } else {
        base - pi
    }
}

/// 40-digit evaluation of the intraband-plus-interband sheet conductivity.
///
/// The occupation bracket mu/kT + 2 ln(1 + e^{-mu/kT}) is evaluated through
/// the exact identity as |mu|/kT + 2 ln(1 + e^{-|mu|/kT}), which keeps the
/// exponentials bounded for any temperature.
pub fn kubo_reference(omega: f64, mu_c_ev: f64, temperature: f64, gamma: f64) -> Complex64 {
    let e = BigFloat::from_f64(1.602_176_634e-19);
    let hbar = BigFloat::from_f64(1.054_571_817e-34);
    let kb = BigFloat::from_f64(1.380_649e-23);
    let pi = num_bigfloat::PI;
    let one = BigFloat::from_f64(1.0);
    let two = BigFloat::from_f64(2.0);
    let four = BigFloat::from_f64(4.0);

    let mu = (BigFloat::from_f64(mu_c_ev) * e).abs();
    let kt = kb * BigFloat::from_f64(temperature);
    let omega_c = MpComplex::from_f64(omega, 2.0 * gamma);

    let x = mu / kt;
    let bracket = x + two * (one + (-x).exp()).ln();
    let intra_num = MpComplex {
        re: BigFloat::from_f64(0.0),
        im: e * e * kt * bracket,
    };
    let intra_den = omega_c.scale(pi * hbar * hbar);
    let intra = intra_num.div(intra_den);

    let two_mu = MpComplex {
        re: two * mu,
        im: BigFloat::from_f64(0.0),
    };
    let hw = omega_c.scale(hbar);
    let log_term = two_mu.sub(hw).div(two_mu.add(hw)).ln();
    let inter = log_term.times_i().scale(e * e / (four * pi * hbar));

    intra.add(inter).to_c64()
}

/// Composite Simpson evaluation of the interface scattering phase
/// pi/4 - (2/pi) * int_0^{pi/2} arctan(ratio * tan t) dt
/// on `intervals` (even) uniform panels; the endpoint value is the analytic
/// limit pi/2.
pub fn simpson_theta(ratio: Complex64, intervals: usize) -> Complex64 {
    assert!(intervals >= 2 && intervals % 2 == 0);
    let f = |t: f64| -> Complex64 {
        if t >= FRAC_PI_2 {
            Complex64::new(FRAC_PI_2, 0.0)
        } else {
            (ratio * t.tan()).atan()
        }
    };
    let h = FRAC_PI_2 / intervals as f64;
    let mut acc = f(0.0) + f(FRAC_PI_2);
    for i in 1..intervals {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(i as f64 * h);
    }
    let integral = acc * (h / 3.0);
    Complex64::new(std::f64::consts::FRAC_PI_4, 0.0) - integral * (2.0 / PI)
}

/// A stack of `N` conductivity steps: `N + 1` region wavenumbers, `N - 1`
/// finite segment lengths between consecutive interfaces, and the
/// per-interface scattering coefficients (left-to-right orientation).
pub struct Stack {
    pub wavenumbers: Vec<Complex64>,
    pub lengths: Vec<f64>,
    pub interfaces: Vec<InterfaceScattering>,
}

/// Transmission of the stack by direct boundary matching: one linear system
/// in the forward/backward amplitudes of every region, solved by LU
/// decomposition. Unit forward excitation at the first interface; the
/// returned value is the forward amplitude just past the last interface, so
/// it is directly comparable to the cascade's S21.
pub fn boundary_matching_s21(stack: &Stack) -> Complex64 {
    let n = stack.interfaces.len();
    assert!(n >= 1);
    assert_eq!(stack.wavenumbers.len(), n + 1);
    assert_eq!(stack.lengths.len(), n - 1);

    // Unknowns: [B0, F1, B1, ..., F_{n-1}, B_{n-1}, F_n], referenced at the
    // left edge of each region (B0 at interface 0, F_n at interface n-1).
    let dim = 2 * n;
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let mut a = DMatrix::from_element(dim, dim, zero);
    let mut b = DVector::from_element(dim, zero);

    // Layout: column 0 = B0, then for region r in 1..n: columns 2r-1 = F_r,
    // 2r = B_r, and the final column 2n-1 = F_n.
    let col_b0 = 0usize;
    let col_f = |r: usize| 2 * r - 1;
    let col_b = |r: usize| 2 * r;
    let col_fn = 2 * n - 1;

    for m in 0..n {
        let iface = &stack.interfaces[m];
        let row_b = 2 * m;
        let row_f = 2 * m + 1;

        // Phase factors across region m (only for interior regions).
        let (fwd_in, bwd_out, col_fm, col_bm) = if m == 0 {
            (None, None, None, Some(col_b0))
        } else {
            let k = stack.wavenumbers[m];
            let l = stack.lengths[m - 1];
            let phase = (Complex64::i() * k * l).exp();
            (Some(phase), Some(1.0 / phase), Some(col_f(m)), Some(col_b(m)))
        };

        // Outgoing-backward equation at interface m:
        //   B_m(at m) = r_m * F_m(at m) + t'_m * B_{m+1}
        match (col_bm, bwd_out) {
            (Some(c), Some(ph)) => a[(row_b, c)] = ph,
            (Some(c), None) => a[(row_b, c)] = one,
            _ => unreachable!(),
        }
        if let (Some(c), Some(ph)) = (col_fm, fwd_in) {
            a[(row_b, c)] = -iface.r_lr * ph;
        } else {
            b[row_b] = iface.r_lr; // incident amplitude 1
        }
        if m + 1 < n {
            a[(row_b, col_b(m + 1))] = -iface.t_rl;
        } // else B_{m+1} = 0

        // Outgoing-forward equation at interface m:
        //   F_{m+1} = t_m * F_m(at m) + r'_m * B_{m+1}
        let col_out = if m + 1 < n { col_f(m + 1) } else { col_fn };
        a[(row_f, col_out)] = one;
        if let (Some(c), Some(ph)) = (col_fm, fwd_in) {
            a[(row_f, c)] = -iface.t_lr * ph;
        } else {
            b[row_f] = iface.t_lr;
        }
        if m + 1 < n {
            a[(row_f, col_b(m + 1))] = -iface.r_rl;
        }
    }

    let solution = a.lu().solve(&b).expect("boundary-matching system is regular");
    solution[col_fn]
}
