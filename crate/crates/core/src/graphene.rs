//! Graphene sheet model: Kubo surface conductivity, quasi-static plasmon
//! dispersion, and the inverse map from a desired wavenumber back to a
//! chemical potential.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::constants::{DEFAULT_RELAXATION_TIME, DEFAULT_TEMPERATURE, EPS_0, EV, E_CHARGE, HBAR, K_B};
use crate::error::{Error, Result};

/// State of a graphene sheet entering the conductivity model.
///
/// The scattering rate is Gamma = 1/(2 tau); defaults are T = 300 K,
/// tau = 1 ps and a free-standing sheet (effective permittivity eps_0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrapheneState {
    /// Chemical potential, eV. May be negative (hole doping).
    pub chemical_potential_ev: f64,
    /// Temperature, K. Must be positive.
    pub temperature: f64,
    /// Carrier scattering rate Gamma, rad/s. Non-negative.
    pub scattering_rate: f64,
    /// Average permittivity of the media surrounding the sheet, F/m.
    pub effective_permittivity: f64,
}

impl GrapheneState {
    pub fn new(chemical_potential_ev: f64) -> Self {
        GrapheneState {
            chemical_potential_ev,
            temperature: DEFAULT_TEMPERATURE,
            scattering_rate: 0.5 / DEFAULT_RELAXATION_TIME,
            effective_permittivity: EPS_0,
        }
    }

    pub fn with_mu(mut self, chemical_potential_ev: f64) -> Self {
        self.chemical_potential_ev = chemical_potential_ev;
        self
    }

    pub fn with_temperature(mut self, temperature: f64) -> Self {
        self.temperature = temperature;
        self
    }

    /// Sets the scattering rate from a relaxation time tau = 1/(2 Gamma).
    pub fn with_relaxation_time(mut self, tau: f64) -> Self {
        self.scattering_rate = 0.5 / tau;
        self
    }

    pub fn with_permittivity(mut self, eps: f64) -> Self {
        self.effective_permittivity = eps;
        self
    }

    pub fn relaxation_time(&self) -> f64 {
        0.5 / self.scattering_rate
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.temperature > 0.0) {
            return Err(Error::Domain(format!(
                "temperature must be positive, got {} K",
                self.temperature
            )));
        }
        if !(self.scattering_rate >= 0.0) {
            return Err(Error::Domain(format!(
                "scattering rate must be non-negative, got {} rad/s",
                self.scattering_rate
            )));
        }
        if !(self.effective_permittivity > 0.0) {
            return Err(Error::Domain(format!(
                "effective permittivity must be positive, got {} F/m",
                self.effective_permittivity
            )));
        }
        Ok(())
    }
}

/// Complex sheet conductivity at a fixed angular frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceConductivity {
    /// Sheet conductivity, S.
    pub value: Complex64,
    /// Angular frequency the value was evaluated at, rad/s.
    pub angular_frequency: f64,
}

/// Quasi-static graphene plasmon mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlasmonMode {
    /// Complex wavenumber, rad/m.
    pub wavenumber: Complex64,
    /// Guided wavelength 2 pi / Re(k), m.
    pub guided_wavelength: f64,
    /// 1/e intensity propagation length 1/(2 Im(k)), m.
    pub propagation_length: f64,
}

impl PlasmonMode {
    fn from_wavenumber(k: Complex64) -> Self {
        PlasmonMode {
            wavenumber: k,
            guided_wavelength: 2.0 * PI / k.re,
            propagation_length: 1.0 / (2.0 * k.im),
        }
    }

    /// True when the mode propagates forward and decays (passive sheet).
    pub fn is_forward_passive(&self) -> bool {
        self.wavenumber.re > 0.0 && self.wavenumber.im >= 0.0
    }
}

/// Kubo sheet conductivity in the random-phase approximation (local limit),
/// intraband plus interband contributions, for the e^{-i omega t} convention.
///
/// The intraband bracket mu/kT + 2 ln(1 + e^{-mu/kT}) is even in mu and is
/// evaluated through |mu|/kT, which is exact and avoids overflow for large
/// |mu|/kT. The interband logarithm uses the principal branch; when the
/// argument lands exactly on the negative real axis (Gamma = 0) it is taken
/// on the lower side, matching the lossy limit Gamma -> 0+.
pub fn kubo_conductivity(omega: f64, state: &GrapheneState) -> Result<SurfaceConductivity> {
    if !(omega > 0.0) {
        return Err(Error::Domain(format!(
            "angular frequency must be positive, got {omega} rad/s"
        )));
    }
    state.validate()?;

    let mu = state.chemical_potential_ev * EV;
    let kt = K_B * state.temperature;
    // omega + i 2 Gamma
    let omega_c = Complex64::new(omega, 2.0 * state.scattering_rate);

    let x = (mu / kt).abs();
    let filling = x + 2.0 * (-x).exp().ln_1p();
    let intra = Complex64::i() * E_CHARGE * E_CHARGE * kt * filling
        / (PI * HBAR * HBAR * omega_c);

    let two_mu = 2.0 * mu.abs();
    let hw = omega_c * HBAR;
    let mut ratio = (two_mu - hw) / (two_mu + hw);
    if ratio.im == 0.0 {
        ratio.im = -0.0;
    }
    let inter = Complex64::i() * E_CHARGE * E_CHARGE / (4.0 * PI * HBAR) * ratio.ln();

    Ok(SurfaceConductivity {
        value: intra + inter,
        angular_frequency: omega,
    })
}

/// Quasi-static plasmon wavenumber k = 2 i omega eps_e / sigma.
pub fn gp_wavenumber(sigma: &SurfaceConductivity, eps_e: f64) -> Result<PlasmonMode> {
    if sigma.value == Complex64::new(0.0, 0.0) {
        return Err(Error::SingularMedium);
    }
    let k = Complex64::new(0.0, 2.0 * sigma.angular_frequency * eps_e) / sigma.value;
    Ok(PlasmonMode::from_wavenumber(k))
}

/// Plasmon mode of a sheet at the given state; errors if the sheet does not
/// support a forward mode (capacitive sheet, Re k <= 0).
pub fn plasmon_mode(omega: f64, state: &GrapheneState) -> Result<PlasmonMode> {
    let sigma = kubo_conductivity(omega, state)?;
    let mode = gp_wavenumber(&sigma, state.effective_permittivity)?;
    if mode.wavenumber.re <= 0.0 {
        return Err(Error::NonPlasmonic {
            mu_c_ev: state.chemical_potential_ev,
            re_k: mode.wavenumber.re,
        });
    }
    Ok(mode)
}

/// Inverts the dispersion: finds mu_c with Re(k(mu_c)) = k_target on the
/// monotone design branch where Re k decreases with mu_c.
///
/// Bisection down to a 1e-12 eV bracket, then one Newton polish; the result
/// satisfies |Re k(mu_c) - k_target| / k_target <= 1e-9.
pub fn chemical_potential_for_wavenumber(
    k_target: f64,
    omega: f64,
    bounds: (f64, f64),
    state: &GrapheneState,
) -> Result<f64> {
    let (mu_lo, mu_hi) = bounds;
    if !(mu_lo < mu_hi) {
        return Err(Error::Domain(format!(
            "invalid bracket [{mu_lo}, {mu_hi}] eV"
        )));
    }
    let re_k = |mu: f64| -> Result<f64> {
        Ok(plasmon_mode(omega, &state.with_mu(mu))?.wavenumber.re)
    };
    let k_at_lo = re_k(mu_lo)?;
    let k_at_hi = re_k(mu_hi)?;
    // Re k decreases with mu on the design branch.
    let (k_min, k_max) = (k_at_hi, k_at_lo);
    if !(k_target >= k_min && k_target <= k_max) {
        return Err(Error::BracketNotFound {
            target: k_target,
            k_min,
            k_max,
        });
    }

    let mut lo = mu_lo;
    let mut hi = mu_hi;
    let mut f_lo = k_at_lo - k_target;
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        let f_mid = re_k(mid)? - k_target;
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }

    let mut mu = 0.5 * (lo + hi);
    let f_mu = re_k(mu)? - k_target;
    let h = 1e-9;
    let (a, b) = (
        (mu - h).max(mu_lo),
        (mu + h).min(mu_hi),
    );
    let slope = (re_k(b)? - re_k(a)?) / (b - a);
    if slope != 0.0 {
        let polished = mu - f_mu / slope;
        if polished >= mu_lo && polished <= mu_hi {
            let f_polished = re_k(polished)? - k_target;
            if f_polished.abs() < f_mu.abs() {
                mu = polished;
            }
        }
    }
    Ok(mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::omega_for_wavelength;
    use approx::assert_relative_eq;

    fn omega_6um() -> f64 {
        omega_for_wavelength(6.0e-6)
    }

    #[test]
    fn conductivity_is_even_in_chemical_potential() {
        let omega = omega_6um();
        let plus = kubo_conductivity(omega, &GrapheneState::new(0.3)).unwrap();
        let minus = kubo_conductivity(omega, &GrapheneState::new(-0.3)).unwrap();
        let rel = (plus.value - minus.value).norm() / plus.value.norm();
        assert!(rel <= 1e-12, "rel = {rel:e}");
    }

    #[test]
    fn cold_low_frequency_limit_is_drude() {
        // 60 um, 0.5 eV, T -> 1 K: the intraband term dominates and reduces
        // to i e^2 mu / (pi hbar^2 (omega + i 2 Gamma)).
        let omega = omega_for_wavelength(60.0e-6);
        let state = GrapheneState::new(0.5).with_temperature(1.0);
        let sigma = kubo_conductivity(omega, &state).unwrap();
        let drude = Complex64::i() * E_CHARGE * E_CHARGE * (0.5 * EV)
            / (PI * HBAR * HBAR * Complex64::new(omega, 2.0 * state.scattering_rate));
        let rel = (sigma.value - drude).norm() / drude.norm();
        assert!(rel <= 0.02, "rel = {rel:e}");
    }

    #[test]
    fn design_point_regression() {
        // 6 um, 0.15 eV, 300 K, 1 ps. Values pinned against a 40-digit
        // evaluation of the same expression (see the validation crate).
        let sigma = kubo_conductivity(omega_6um(), &GrapheneState::new(0.15)).unwrap();
        assert_relative_eq!(sigma.value.re, 3.41064929407140889e-7, max_relative = 1e-10);
        assert_relative_eq!(sigma.value.im, 2.35400038525415581e-5, max_relative = 1e-10);

        // Guided wavelength anchors every geometry test downstream.
        let mode = plasmon_mode(omega_6um(), &GrapheneState::new(0.15)).unwrap();
        assert_relative_eq!(mode.guided_wavelength, 2.661028405696160e-8, max_relative = 1e-10);
        assert_relative_eq!(mode.propagation_length, 1.461534634632689e-7, max_relative = 1e-10);
    }

    #[test]
    fn rejects_invalid_domain() {
        assert!(matches!(
            kubo_conductivity(-1.0, &GrapheneState::new(0.3)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            kubo_conductivity(1e14, &GrapheneState::new(0.3).with_temperature(0.0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn lossless_inductive_sheet_gives_real_wavenumber() {
        let omega = omega_6um();
        let s = 2.0e-5;
        let sigma = SurfaceConductivity {
            value: Complex64::new(0.0, s),
            angular_frequency: omega,
        };
        let mode = gp_wavenumber(&sigma, EPS_0).unwrap();
        assert_relative_eq!(mode.wavenumber.re, 2.0 * omega * EPS_0 / s, max_relative = 1e-14);
        assert_eq!(mode.wavenumber.im, 0.0);
    }

    #[test]
    fn doubling_conductivity_halves_wavenumber() {
        let omega = omega_6um();
        let sigma = kubo_conductivity(omega, &GrapheneState::new(0.4)).unwrap();
        let doubled = SurfaceConductivity {
            value: sigma.value * 2.0,
            angular_frequency: omega,
        };
        let k1 = gp_wavenumber(&sigma, EPS_0).unwrap().wavenumber;
        let k2 = gp_wavenumber(&doubled, EPS_0).unwrap().wavenumber;
        assert_relative_eq!((k1 / k2).re, 2.0, max_relative = 1e-14);
        assert_relative_eq!((k1 / k2).im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn zero_conductivity_is_singular() {
        let sigma = SurfaceConductivity {
            value: Complex64::new(0.0, 0.0),
            angular_frequency: 1e14,
        };
        assert!(matches!(gp_wavenumber(&sigma, EPS_0), Err(Error::SingularMedium)));
    }

    #[test]
    fn inverse_roundtrip_recovers_chemical_potential() {
        let omega = omega_6um();
        let state = GrapheneState::new(0.4);
        let k = plasmon_mode(omega, &state).unwrap().wavenumber.re;
        let mu = chemical_potential_for_wavenumber(k, omega, (0.15, 1.0), &state).unwrap();
        assert!((mu - 0.4).abs() <= 1e-9, "mu = {mu}");
    }

    #[test]
    fn out_of_range_target_reports_attainable_range() {
        let omega = omega_6um();
        let state = GrapheneState::new(0.4);
        let k_hi = plasmon_mode(omega, &state.with_mu(0.15)).unwrap().wavenumber.re;
        let err = chemical_potential_for_wavenumber(k_hi * 10.0, omega, (0.15, 1.0), &state)
            .unwrap_err();
        match err {
            Error::BracketNotFound { k_min, k_max, .. } => {
                assert!(k_min < k_max);
                assert_relative_eq!(k_max, k_hi, max_relative = 1e-12);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn inverse_agrees_with_dense_grid_scan() {
        // Mid-range target cross-checked against a 1e5-point scan of Re k(mu).
        let omega = omega_6um();
        let state = GrapheneState::new(0.4);
        let k_lo = plasmon_mode(omega, &state.with_mu(0.2)).unwrap().wavenumber.re;
        let k_hi = plasmon_mode(omega, &state.with_mu(0.8)).unwrap().wavenumber.re;
        let target = 0.5 * (k_lo + k_hi);
        let mu = chemical_potential_for_wavenumber(target, omega, (0.2, 0.8), &state).unwrap();

        let n = 100_000;
        let mut best = (f64::INFINITY, 0.0);
        for i in 0..=n {
            let m = 0.2 + 0.6 * i as f64 / n as f64;
            let k = plasmon_mode(omega, &state.with_mu(m)).unwrap().wavenumber.re;
            let d = (k - target).abs();
            if d < best.0 {
                best = (d, m);
            }
        }
        assert!(
            (mu - best.1).abs() <= 2.0 * 0.6 / n as f64,
            "mu = {mu}, scan = {}",
            best.1
        );
    }

    #[test]
    fn wavenumber_real_part_decreases_with_mu_on_design_branch() {
        let omega = omega_6um();
        let state = GrapheneState::new(0.0);
        let n = 1000;
        let mut prev = f64::INFINITY;
        for i in 0..=n {
            let mu = 0.15 + (1.0 - 0.15) * i as f64 / n as f64;
            let k = plasmon_mode(omega, &state.with_mu(mu)).unwrap().wavenumber.re;
            assert!(k < prev, "not strictly decreasing at mu = {mu}");
            prev = k;
        }
    }
}
