//! Semi-analytic toolkit for graphene-plasmon metaline analog computers.
//!
//! The crate models plasmon scattering at surface-conductivity discontinuities
//! on a graphene sheet, cascades the symmetric three-metaline unit cell into
//! two-port scattering parameters, synthesizes chemical-potential profiles that
//! realize target complex transfer functions, and runs the spatial-Fourier
//! pipeline (lens / transfer plane / lens) that performs differentiation and
//! integration on transverse field profiles.
//!
//! Everything is pure and deterministic: identical inputs give bit-identical
//! outputs, and all operations are safe to call from concurrent workers.

pub mod analytic;
pub mod cell;
pub mod constants;
pub mod error;
pub mod graphene;
pub mod io;
pub mod pipeline;
pub mod quad;
pub mod scattering;
pub mod synthesis;

pub use cell::{
    cell_s21, resolve_geometry, sweep_map, GeometryOverrides, GridSpec, TransmissionMap,
    UnitCellGeometry,
};
pub use error::{Error, Result};
pub use graphene::{
    chemical_potential_for_wavenumber, gp_wavenumber, kubo_conductivity, GrapheneState,
    PlasmonMode, SurfaceConductivity,
};
pub use pipeline::{
    apply_transfer, lens_transform, make_input_sinc, run_operator, FieldProfile, LensModel,
    OperatorResult, TransferSource,
};
pub use scattering::{
    cascade, discontinuity_coefficients, matching_matrix, propagation_matrix, s_params,
    theta_phase, InterfaceScattering, SParams, TwoPortMatrix,
};
pub use synthesis::{
    deviation_report, sample_target, synthesize, synthesize_targets, CellDesign, DeviationReport,
    OperatorKind, TransferFunctionSpec,
};

/// Complex double-precision scalar used throughout.
pub type C64 = num_complex::Complex64;
