//! Physical constants (CODATA 2018, SI units) and paper-default device
//! dimensions.

/// Elementary charge, C (exact).
pub const E_CHARGE: f64 = 1.602_176_634e-19;
/// Reduced Planck constant, J s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Boltzmann constant, J/K (exact).
pub const K_B: f64 = 1.380_649e-23;
/// Vacuum permittivity, F/m.
pub const EPS_0: f64 = 8.854_187_812_8e-12;
/// Speed of light in vacuum, m/s (exact).
pub const C_LIGHT: f64 = 299_792_458.0;
/// Joules per electronvolt (numerically equal to the elementary charge).
pub const EV: f64 = E_CHARGE;

/// Fixed fundamental constants used by the conductivity and dispersion models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Elementary charge e, C.
    pub electron_charge: f64,
    /// Reduced Planck constant, J s.
    pub hbar: f64,
    /// Boltzmann constant, J/K.
    pub boltzmann: f64,
    /// Vacuum permittivity, F/m.
    pub vacuum_permittivity: f64,
    /// Speed of light, m/s.
    pub speed_of_light: f64,
}

/// CODATA 2018 values. Never mutated.
pub const CODATA: PhysicalConstants = PhysicalConstants {
    electron_charge: E_CHARGE,
    hbar: HBAR,
    boltzmann: K_B,
    vacuum_permittivity: EPS_0,
    speed_of_light: C_LIGHT,
};

/// Free-space design wavelength, m.
pub const DEFAULT_WAVELENGTH: f64 = 6.0e-6;
/// Device aperture W, m.
pub const DEFAULT_APERTURE: f64 = 684.0e-9;
/// Transverse unit-cell period, m.
pub const DEFAULT_PERIOD: f64 = 18.0e-9;
/// Width of a single metaline segment, m.
pub const DEFAULT_METALINE_WIDTH: f64 = 5.0e-9;
/// Nominal depth of the three-metaline stack, m.
pub const DEFAULT_STACK_DEPTH: f64 = 100.0e-9;
/// Graded-index lens length, m.
pub const DEFAULT_GRIN_LENGTH: f64 = 1028.0e-9;
/// Operating temperature, K.
pub const DEFAULT_TEMPERATURE: f64 = 300.0;
/// Carrier relaxation time, s.
pub const DEFAULT_RELAXATION_TIME: f64 = 1.0e-12;

/// Lower edge of the chemical-potential design branch, eV.
///
/// At the 6 um design wavelength and 300 K the sheet reactance changes sign
/// near 0.124 eV; below that point Im(sigma) < 0 and no forward plasmon mode
/// exists. 0.13 eV keeps the whole sweep on the plasmonic branch.
pub const DEFAULT_MU_MIN: f64 = 0.13;
/// Upper edge of the chemical-potential design branch, eV.
pub const DEFAULT_MU_MAX: f64 = 1.0;

/// Angular frequency for a free-space wavelength, rad/s.
pub fn omega_for_wavelength(lambda: f64) -> f64 {
    2.0 * std::f64::consts::PI * C_LIGHT / lambda
}
