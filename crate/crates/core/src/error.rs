//! Error type shared by all modules.

use std::path::PathBuf;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("singular medium: zero surface conductivity")]
    SingularMedium,

    #[error("no forward plasmon mode at mu_c = {mu_c_ev} eV (Re k = {re_k} rad/m)")]
    NonPlasmonic { mu_c_ev: f64, re_k: f64 },

    #[error(
        "target wavenumber {target:e} rad/m outside attainable range [{k_min:e}, {k_max:e}] rad/m"
    )]
    BracketNotFound { target: f64, k_min: f64, k_max: f64 },

    #[error(
        "quadrature did not converge: requested tol {requested:e}, worst interval error {achieved:e} at depth {depth}"
    )]
    QuadratureNonConvergence {
        requested: f64,
        achieved: f64,
        depth: usize,
    },

    #[error("wavenumbers must lie in the right half-plane")]
    NonForwardWavenumber,

    #[error("interface singularity: k_L + k_R = 0")]
    DegenerateInterface,

    #[error("opaque interface: zero transmission")]
    OpaqueInterface,

    #[error("negative segment length {0}")]
    NegativeLength(f64),

    #[error("empty cascade")]
    EmptyCascade,

    #[error("degenerate network: conversion to scattering parameters is singular")]
    DegenerateNetwork,

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("cell {cell}: target unreachable, residual {residual:e} above threshold {threshold:e}")]
    Coverage {
        cell: usize,
        residual: f64,
        threshold: f64,
    },

    #[error("length mismatch: field has {field} samples, transfer has {transfer}")]
    LengthMismatch { field: usize, transfer: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
