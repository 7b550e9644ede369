//! TOML experiment configuration for the suite runner.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{BilapError, Result};
use crate::family::TestFamilySpec;
use crate::grid::TorusGrid;
use crate::norms::ExponentTuple;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridConfig {
    pub dim: usize,
    pub points_per_axis: usize,
    pub period: f64,
}

impl GridConfig {
    pub fn build(&self) -> Result<TorusGrid> {
        TorusGrid::new(self.dim, self.points_per_axis, self.period)
    }

    /// Same grid with twice the points per axis (refinement runs).
    pub fn refined(&self) -> GridConfig {
        GridConfig { points_per_axis: self.points_per_axis * 2, ..*self }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdentityConfig {
    /// Random fields per identity row.
    #[serde(default = "default_trials")]
    pub trials: usize,
    /// (s, nu) pairs for the paraproduct decomposition rows.
    #[serde(default = "default_paraproduct_cases")]
    pub paraproduct_cases: Vec<(f64, f64)>,
    /// Pairs per paraproduct case.
    #[serde(default = "default_pairs")]
    pub pairs: usize,
}

fn default_trials() -> usize {
    100
}
fn default_pairs() -> usize {
    20
}
fn default_paraproduct_cases() -> Vec<(f64, f64)> {
    vec![(2.0, 0.0), (1.0, 0.5), (1.5, 1.0)]
}

impl Default for IdentityConfig {
    fn default() -> Self {
        IdentityConfig {
            trials: default_trials(),
            paraproduct_cases: default_paraproduct_cases(),
            pairs: default_pairs(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LogLemmaConfig {
    /// Lebesgue exponents (d = 1 mode).
    #[serde(default = "default_log_p")]
    pub p_values: Vec<f64>,
    /// Mixed exponent pair (d = 2 mode).
    #[serde(default)]
    pub mixed_pq: Option<(f64, f64)>,
    /// Largest translation magnitude (geometric grid 1, 2, 4, ...).
    #[serde(default = "default_m_top")]
    pub m_top: i64,
}

fn default_log_p() -> Vec<f64> {
    vec![1.5, 4.0]
}
fn default_m_top() -> i64 {
    1024
}

impl Default for LogLemmaConfig {
    fn default() -> Self {
        LogLemmaConfig { p_values: default_log_p(), mixed_pq: None, m_top: default_m_top() }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecayConfig {
    #[serde(default = "default_decay_s")]
    pub s_values: Vec<f64>,
    #[serde(default = "default_c0")]
    pub c0: f64,
    #[serde(default = "default_m_max")]
    pub m_max: i64,
}

fn default_decay_s() -> Vec<f64> {
    vec![0.5, 1.5]
}
fn default_c0() -> f64 {
    64.0
}
fn default_m_max() -> i64 {
    512
}

impl Default for DecayConfig {
    fn default() -> Self {
        DecayConfig { s_values: default_decay_s(), c0: default_c0(), m_max: default_m_max() }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EmbeddingConfig {
    #[serde(default = "default_pq_pairs")]
    pub pq_pairs: Vec<(f64, f64)>,
}

fn default_pq_pairs() -> Vec<(f64, f64)> {
    vec![(0.75, 2.0), (2.0, 0.75), (1.5, 3.0)]
}

impl Default for EmbeddingConfig {
    fn default() -> Self {
        EmbeddingConfig { pq_pairs: default_pq_pairs() }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SymbolReportConfig {
    #[serde(default = "default_r")]
    pub r: f64,
    #[serde(default = "default_k_lo")]
    pub k_lo: i32,
    #[serde(default = "default_k_hi")]
    pub k_hi: i32,
    #[serde(default = "default_res")]
    pub res: usize,
    /// Domination-check dyadic levels.
    #[serde(default = "default_j_range")]
    pub j_range: (i32, i32),
    #[serde(default = "default_l")]
    pub l: f64,
}

fn default_r() -> f64 {
    1.0
}
fn default_k_lo() -> i32 {
    -3
}
fn default_k_hi() -> i32 {
    4
}
fn default_res() -> usize {
    128
}
fn default_j_range() -> (i32, i32) {
    (-2, 4)
}
fn default_l() -> f64 {
    1.5
}

impl Default for SymbolReportConfig {
    fn default() -> Self {
        SymbolReportConfig {
            r: default_r(),
            k_lo: default_k_lo(),
            k_hi: default_k_hi(),
            res: default_res(),
            j_range: default_j_range(),
            l: default_l(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FeffermanSteinConfig {
    #[serde(default = "default_fs_exponents")]
    pub exponents: (f64, f64, f64),
    #[serde(default = "default_fs_count")]
    pub vector_len: usize,
}

fn default_fs_exponents() -> (f64, f64, f64) {
    (2.0, 3.0, 2.0)
}
fn default_fs_count() -> usize {
    16
}

impl Default for FeffermanSteinConfig {
    fn default() -> Self {
        FeffermanSteinConfig {
            exponents: default_fs_exponents(),
            vector_len: default_fs_count(),
        }
    }
}

/// Full experiment configuration.  Every suite section is optional and
/// falls back to the documented defaults.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub grid: GridConfig,
    /// Bilinear symbol registry label.
    #[serde(default = "default_symbol")]
    pub symbol: String,
    #[serde(default)]
    pub family: Option<TestFamilySpec>,
    /// Exponent tuples for the inequality sweeps.
    #[serde(default)]
    pub exponents: Vec<ExponentTuple>,
    #[serde(default)]
    pub identities: IdentityConfig,
    #[serde(default)]
    pub loglemma: LogLemmaConfig,
    #[serde(default)]
    pub decay: DecayConfig,
    #[serde(default)]
    pub embedding: EmbeddingConfig,
    #[serde(default)]
    pub symbol_report: SymbolReportConfig,
    #[serde(default)]
    pub fefferman_stein: FeffermanSteinConfig,
    /// Ratio-stability threshold under refinement (default 20%).
    #[serde(default = "default_stability")]
    pub stability: f64,
    /// Exact-identity tolerance.
    #[serde(default = "default_identity_tol")]
    pub identity_tolerance: f64,
}

fn default_symbol() -> String {
    "one".into()
}
fn default_stability() -> f64 {
    0.2
}
fn default_identity_tol() -> f64 {
    1e-10
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<ExperimentConfig> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| BilapError::io(path.display().to_string(), e))?;
        let cfg: ExperimentConfig = toml::from_str(&text)
            .map_err(|e| BilapError::ConfigError(format!("{}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.grid.build()?;
        let mixed = self.grid.dim == 2;
        for (i, t) in self.exponents.iter().enumerate() {
            t.validate(self.grid.dim, mixed).map_err(|e| {
                BilapError::ConfigError(format!("exponent tuple #{i}: {e}"))
            })?;
        }
        Ok(())
    }

    pub fn family_or_default(&self) -> TestFamilySpec {
        self.family.clone().unwrap_or_else(TestFamilySpec::default_gaussian)
    }
}
