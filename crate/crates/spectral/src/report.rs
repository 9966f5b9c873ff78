use std::fmt;

use numeric_core::sort_by_real;

use crate::C;

/// Reality tolerance for Fourier spectra.
pub const FOURIER_REALITY_TOL: f64 = 1e-8;
/// Reality tolerance for finite-difference spectra.
pub const FD_REALITY_TOL: f64 = 1e-6;
/// Number of lowest eigenvalues a reality claim is made on.
pub const LOWEST_K: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PhaseLabel {
    Exact,
    Broken,
    ComplexCoupling,
    Degenerate,
}

impl PhaseLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            PhaseLabel::Exact => "exact",
            PhaseLabel::Broken => "broken",
            PhaseLabel::ComplexCoupling => "complex-coupling",
            PhaseLabel::Degenerate => "degenerate",
        }
    }
}

impl fmt::Display for PhaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A computed level against its closed-form value.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedFormMatch {
    pub index: usize,
    pub computed: C,
    pub closed_form: f64,
    pub label: String,
    pub abs_dev: f64,
    pub rel_dev: f64,
}

impl ClosedFormMatch {
    pub fn new(index: usize, computed: C, closed_form: f64, label: impl Into<String>) -> Self {
        let abs_dev = (computed - closed_form).norm();
        ClosedFormMatch { index, computed, closed_form, label: label.into(), abs_dev, rel_dev: abs_dev / closed_form.abs().max(1.0) }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumReport {
    pub model: String,
    pub params: Vec<(String, String)>,
    pub grid: usize,
    /// Sorted by real part.
    pub eigenvalues: Vec<C>,
    pub lowest_k: usize,
    pub reality_tol: f64,
    /// Largest `|Im|` among the lowest `lowest_k` eigenvalues.
    pub max_im: f64,
    pub phase: PhaseLabel,
    pub matches: Vec<ClosedFormMatch>,
    pub notes: Vec<String>,
    pub residual: Option<f64>,
}

impl SpectrumReport {
    /// Labels the spectrum `exact` or `broken` from its lowest `lowest_k` values.
    pub fn new(model: &str, params: Vec<(String, String)>, grid: usize, mut eigenvalues: Vec<C>, lowest_k: usize, reality_tol: f64) -> Self {
        sort_by_real(&mut eigenvalues);
        let max_im = eigenvalues.iter().take(lowest_k).map(|z| z.im.abs()).fold(0.0, f64::max);
        let phase = if max_im <= reality_tol { PhaseLabel::Exact } else { PhaseLabel::Broken };
        SpectrumReport {
            model: model.into(),
            params,
            grid,
            eigenvalues,
            lowest_k,
            reality_tol,
            max_im,
            phase,
            matches: Vec::new(),
            notes: Vec::new(),
            residual: None,
        }
    }

    /// Overrides the label with one that does not come from reality; `exact`
    /// is never set this way.
    pub fn with_label(mut self, phase: PhaseLabel) -> Self {
        if phase != PhaseLabel::Exact {
            self.phase = phase;
        }
        self
    }

    pub fn lowest(&self) -> &[C] {
        &self.eigenvalues[..self.lowest_k.min(self.eigenvalues.len())]
    }

    pub fn max_rel_dev(&self) -> f64 {
        self.matches.iter().map(|m| m.rel_dev).fold(0.0, f64::max)
    }

    pub fn param(&self, name: &str) -> Option<&str> {
        self.params.iter().find(|(k, _)| k == name).map(|(_, v)| v.as_str())
    }
}

pub(crate) fn params(items: &[(&str, String)]) -> Vec<(String, String)> {
    items.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}
