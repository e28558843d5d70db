//! Independent numerical oracles and the acceptance-criteria runner.
//!
//! The oracles deliberately take different code paths (and, for the
//! conductivity, different arithmetic) from the implementations they check:
//! a 40-digit evaluation of the sheet conductivity, a direct boundary-matching
//! linear solve instead of the 2x2 cascade, and composite Simpson instead of
//! adaptive Gauss-Kronrod.

pub mod criteria;
pub mod oracles;

pub use criteria::{run_all, CriterionReport, Metric, ValidationConfig};
