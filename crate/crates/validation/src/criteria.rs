//! Acceptance-criteria runner (placeholder during bring-up).

/// One checked quantity inside a criterion.
#[derive(Debug, Clone)]
pub struct Metric {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub metrics: Vec<Metric>,
    pub error: Option<String>,
    pub elapsed_s: f64,
}

#[derive(Debug, Clone)]
pub struct ValidationConfig {
    pub wavelength: f64,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        ValidationConfig { wavelength: 6.0e-6 }
    }
}

pub fn run_all(_cfg: &ValidationConfig) -> Vec<CriterionReport> {
    Vec::new()
}
