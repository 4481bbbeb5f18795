//! JSON run configuration for the `curve` subcommand.
//!
//! A run is described by a single JSON document whose field names mirror
//! [`RunConfig`] in lower_snake_case.  Every field is optional; omitted ones
//! take the defaults below.  Unknown fields are rejected so that a typo
//! fails loudly instead of silently falling back to a default.
//!
//! ```json
//! {
//!     "problem": "disk-usinu-xy",
//!     "xi_start": 0.0,
//!     "xi_end": 40.0,
//!     "dxi": 0.1,
//!     "resolution": { "polar": { "nr": 129, "ntheta": 128 } },
//!     "eigen_mode": "discrete",
//!     "predictor": "secant",
//!     "plot": true
//! }
//! ```

use anyhow::{bail, Context};
use rescurve_core::continuation::{ContinuationConfig, EigenMode, MeshResolution, PredictorMode};
use rescurve_core::specfun::DomainSpec;
use serde::Deserialize;
use std::path::{Path, PathBuf};

/// Settings for one curve trace: the problem, the continuation parameters,
/// and the output options.  Command-line flags override file values.
#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Catalog problem identifier.
    pub problem: Option<String>,
    /// First ξ₁ grid value.
    pub xi_start: f64,
    /// Last ξ₁ grid value.
    pub xi_end: f64,
    /// Grid spacing.
    pub dxi: f64,
    /// Relative μ₁-increment tolerance for the inner iteration.
    pub newton_rel_tol: f64,
    /// Floor for the relative-increment denominator near μ₁ = 0.
    pub mu_floor: f64,
    /// Iteration cap per grid value.
    pub max_newton_iters: usize,
    /// Mesh resolution; omitted means a domain-appropriate default.
    pub resolution: Option<ResolutionConfig>,
    /// Which eigenpair the trace resolves against.
    pub eigen_mode: EigenModeConfig,
    /// Initial-guess predictor.
    pub predictor: PredictorConfig,
    /// Output directory (default: current directory).
    pub out_dir: Option<PathBuf>,
    /// Also write an SVG overlay next to the CSV.
    pub plot: bool,
    /// Plot on signed-log axes instead of linear ones.
    pub signed_log: bool,
    /// Tabulated forcing override: one value per mesh node, boundary
    /// included, replacing the catalog forcing sample.
    pub forcing_values: Option<Vec<f64>>,
}

impl Default for RunConfig {
    fn default() -> Self {
        // Numeric solver defaults are taken from a ContinuationConfig
        // instance so the two sets of defaults cannot drift apart.
        let d = ContinuationConfig::new(0.0, 40.0, 0.1, MeshResolution::Radial { nodes: 65 });
        RunConfig {
            problem: None,
            xi_start: d.xi_start,
            xi_end: d.xi_end,
            dxi: d.dxi,
            newton_rel_tol: d.newton_rel_tol,
            mu_floor: d.mu_floor,
            max_newton_iters: d.max_newton_iters,
            resolution: None,
            eigen_mode: EigenModeConfig::Discrete,
            predictor: PredictorConfig::Secant,
            out_dir: None,
            plot: false,
            signed_log: false,
            forcing_values: None,
        }
    }
}

impl RunConfig {
    /// Parse a configuration file.
    pub fn load(path: &Path) -> anyhow::Result<RunConfig> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config file {}", path.display()))?;
        let config: RunConfig = serde_json::from_str(&text)
            .with_context(|| format!("parsing config file {}", path.display()))?;
        Ok(config)
    }

    /// Build the continuation settings for a concrete domain, filling in a
    /// default mesh when the config names none.
    pub fn continuation_config(&self, domain: &DomainSpec) -> anyhow::Result<ContinuationConfig> {
        let resolution = match self.resolution {
            Some(r) => r.to_core(),
            None => default_resolution(domain)?,
        };
        let mut cfg = ContinuationConfig::new(self.xi_start, self.xi_end, self.dxi, resolution);
        cfg.newton_rel_tol = self.newton_rel_tol;
        cfg.mu_floor = self.mu_floor;
        cfg.max_newton_iters = self.max_newton_iters;
        cfg.eigen = self.eigen_mode.to_core();
        cfg.predictor = self.predictor.to_core();
        Ok(cfg)
    }
}

/// Mesh resolution, externally tagged by mesh kind:
/// `{"radial": {"nodes": 513}}`, `{"rect": {"nx": 97, "ny": 193}}`, or
/// `{"polar": {"nr": 129, "ntheta": 128}}`.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ResolutionConfig {
    Radial { nodes: usize },
    Rect { nx: usize, ny: usize },
    Polar { nr: usize, ntheta: usize },
}

impl ResolutionConfig {
    pub fn to_core(self) -> MeshResolution {
        match self {
            ResolutionConfig::Radial { nodes } => MeshResolution::Radial { nodes },
            ResolutionConfig::Rect { nx, ny } => MeshResolution::Rect { nx, ny },
            ResolutionConfig::Polar { nr, ntheta } => MeshResolution::Polar { nr, ntheta },
        }
    }
}

/// `"discrete"` (default) or `"continuous"`.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EigenModeConfig {
    Discrete,
    Continuous,
}

impl EigenModeConfig {
    pub fn to_core(self) -> EigenMode {
        match self {
            EigenModeConfig::Discrete => EigenMode::Discrete,
            EigenModeConfig::Continuous => EigenMode::Continuous,
        }
    }
}

/// `"none"`, `"slope_reuse"`, or `"secant"` (default).
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PredictorConfig {
    None,
    SlopeReuse,
    Secant,
}

impl PredictorConfig {
    pub fn to_core(self) -> PredictorMode {
        match self {
            PredictorConfig::None => PredictorMode::None,
            PredictorConfig::SlopeReuse => PredictorMode::SlopeReuse,
            PredictorConfig::Secant => PredictorMode::Secant,
        }
    }
}

/// Mesh default per domain: fine enough for figure-quality curves, coarse
/// enough that a full trace finishes in minutes.
pub fn default_resolution(domain: &DomainSpec) -> anyhow::Result<MeshResolution> {
    Ok(match domain {
        DomainSpec::Disk2D => MeshResolution::Polar { nr: 129, ntheta: 128 },
        DomainSpec::BallRadial { .. } => MeshResolution::Radial { nodes: 513 },
        DomainSpec::Rect2D { a, b } => rect_resolution(*a, *b),
        DomainSpec::RectNd { dims } if dims.len() == 2 => rect_resolution(dims[0], dims[1]),
        DomainSpec::RectNd { .. } => {
            bail!("no default mesh for boxes beyond two dimensions; set `resolution` in the config")
        }
    })
}

/// Rectangle default: 97 nodes on the first axis, the second scaled with
/// the aspect ratio so cells stay near-square.
fn rect_resolution(a: f64, b: f64) -> MeshResolution {
    let nx = 97usize;
    let ny = ((((nx - 1) as f64) * b / a).round() as usize + 1).clamp(33, 257);
    MeshResolution::Rect { nx, ny }
}
