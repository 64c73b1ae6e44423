//! Run configuration: TOML schema, validation and named presets.
//!
//! All energies and temperatures are in units of the source splitting.
//!
//! ```toml
//! label = "fig2"
//!
//! [system]
//! omega_s = 1.0
//! omega_m = 0.1
//! omega_d = 0.3333333333333333
//! zeta_sm = 1.0
//! zeta_md = 0.16666666666666666
//! zeta_sd = 1.0
//! # binning_tol = 1e-9
//!
//! [baths.source]
//! temperature = 10.0
//! coupling = 1e-6
//! ohmicity = 1.0
//! # cutoff = 22.45   (default: 10 max|E_i|)
//!
//! [baths.modulator]     # temperature is the swept variable
//! coupling = 1e-6
//! ohmicity = 1.0
//!
//! [baths.drain]
//! temperature = 0.01
//! coupling = 1e-4
//! ohmicity = 1.0
//!
//! [sweep]
//! t_m_min = 0.0
//! t_m_max = 10.0
//! steps = 101           # number of grid points, >= 2
//! # fd_step = 0.01      # temperature step of the amplification stencil
//!
//! [outputs]             # every flag defaults to true
//! currents = true
//! beta = true
//! m2 = true
//! m3 = true
//! negativity = true
//! fidelity = true
//! ```

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::baths::BathSpec;
use crate::error::{Error, Result};
use crate::model::{SystemSpec, DEFAULT_BINNING_TOL};

pub const DEFAULT_FD_STEP: f64 = 0.01;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "default_label")]
    pub label: String,
    pub system: SystemSection,
    pub baths: BathsSection,
    pub sweep: SweepSection,
    #[serde(default)]
    pub outputs: OutputSelection,
}

fn default_label() -> String {
    "run".to_string()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSection {
    pub omega_s: f64,
    pub omega_m: f64,
    pub omega_d: f64,
    pub zeta_sm: f64,
    pub zeta_md: f64,
    pub zeta_sd: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub binning_tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BathsSection {
    pub source: FixedBath,
    pub modulator: SweptBath,
    pub drain: FixedBath,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedBath {
    pub temperature: f64,
    pub coupling: f64,
    pub ohmicity: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<f64>,
}

/// Modulator reservoir; its temperature comes from the sweep grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweptBath {
    pub coupling: f64,
    pub ohmicity: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub t_m_min: f64,
    pub t_m_max: f64,
    /// Number of grid points, endpoints included.
    pub steps: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fd_step: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSelection {
    pub currents: bool,
    pub beta: bool,
    pub m2: bool,
    pub m3: bool,
    pub negativity: bool,
    pub fidelity: bool,
}

impl Default for OutputSelection {
    fn default() -> Self {
        Self { currents: true, beta: true, m2: true, m3: true, negativity: true, fidelity: true }
    }
}

impl RunConfig {
    /// Parses and validates a TOML document.
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Config {
            path: e.span().map(|s| locate(text, s.start)).unwrap_or_else(|| "<document>".into()),
            reason: e.message().to_string(),
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config {
            path: path.display().to_string(),
            reason: e.to_string(),
        })?;
        Self::parse(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        self.system_spec().validate().map_err(|e| prefixed("system", e))?;
        if let Some(tol) = self.system.binning_tol {
            if !(tol > 0.0 && tol < 1.0) {
                return Err(config_error("system.binning_tol", format!("must lie in (0, 1), got {tol}")));
            }
        }
        check_fixed("baths.source", &self.baths.source)?;
        check_fixed("baths.drain", &self.baths.drain)?;
        let m = &self.baths.modulator;
        check_coupling("baths.modulator", m.coupling, m.ohmicity, m.cutoff)?;

        let s = &self.sweep;
        if !(s.t_m_min >= 0.0) || !s.t_m_min.is_finite() {
            return Err(config_error("sweep.t_m_min", format!("must be finite and >= 0, got {}", s.t_m_min)));
        }
        if !(s.t_m_max >= s.t_m_min) || !s.t_m_max.is_finite() {
            return Err(config_error("sweep.t_m_max", format!("must be finite and >= t_m_min, got {}", s.t_m_max)));
        }
        if s.steps < 2 {
            return Err(config_error("sweep.steps", format!("need at least 2 grid points, got {}", s.steps)));
        }
        if s.t_m_max == s.t_m_min {
            return Err(config_error("sweep.t_m_max", "grid of several points needs t_m_max > t_m_min"));
        }
        if let Some(h) = s.fd_step {
            if !(h > 0.0) || !h.is_finite() {
                return Err(config_error("sweep.fd_step", format!("must be positive, got {h}")));
            }
        }
        Ok(())
    }

    pub fn system_spec(&self) -> SystemSpec<f64> {
        let s = &self.system;
        SystemSpec {
            omega_s: s.omega_s,
            omega_m: s.omega_m,
            omega_d: s.omega_d,
            zeta_sm: s.zeta_sm,
            zeta_md: s.zeta_md,
            zeta_sd: s.zeta_sd,
        }
    }

    pub fn binning_tol(&self) -> f64 {
        self.system.binning_tol.unwrap_or(DEFAULT_BINNING_TOL)
    }

    pub fn fd_step(&self) -> f64 {
        self.sweep.fd_step.unwrap_or(DEFAULT_FD_STEP)
    }

    /// Reservoirs at modulator temperature `t_m`; `default_cutoff` fills unset cutoffs.
    pub fn baths_at(&self, t_m: f64, default_cutoff: f64) -> Result<[BathSpec<f64>; 3]> {
        let b = &self.baths;
        let fixed = |f: &FixedBath| BathSpec::new(f.temperature, f.coupling, f.ohmicity, f.cutoff.unwrap_or(default_cutoff));
        let m = &b.modulator;
        Ok([
            fixed(&b.source)?,
            BathSpec::new(t_m, m.coupling, m.ohmicity, m.cutoff.unwrap_or(default_cutoff))?,
            fixed(&b.drain)?,
        ])
    }

    /// Uniform modulator-temperature grid.
    pub fn grid(&self) -> Vec<f64> {
        let s = &self.sweep;
        let n = s.steps;
        let h = (s.t_m_max - s.t_m_min) / (n - 1) as f64;
        (0..n).map(|i| if i == n - 1 { s.t_m_max } else { s.t_m_min + i as f64 * h }).collect()
    }

    pub fn grid_step(&self) -> f64 {
        (self.sweep.t_m_max - self.sweep.t_m_min) / (self.sweep.steps - 1) as f64
    }

    pub fn with_points(mut self, steps: usize) -> Result<Self> {
        self.sweep.steps = steps;
        self.validate()?;
        Ok(self)
    }

    pub fn with_range(mut self, lo: f64, hi: f64) -> Result<Self> {
        self.sweep.t_m_min = lo;
        self.sweep.t_m_max = hi;
        self.validate()?;
        Ok(self)
    }
}

fn check_fixed(path: &str, b: &FixedBath) -> Result<()> {
    if !(b.temperature >= 0.0) || !b.temperature.is_finite() {
        return Err(config_error(&format!("{path}.temperature"), format!("must be finite and >= 0, got {}", b.temperature)));
    }
    check_coupling(path, b.coupling, b.ohmicity, b.cutoff)
}

fn check_coupling(path: &str, coupling: f64, ohmicity: f64, cutoff: Option<f64>) -> Result<()> {
    if !(coupling >= 0.0) || !coupling.is_finite() {
        return Err(config_error(&format!("{path}.coupling"), format!("must be finite and >= 0, got {coupling}")));
    }
    if !(ohmicity > 0.0) || !ohmicity.is_finite() {
        return Err(config_error(&format!("{path}.ohmicity"), format!("must be positive, got {ohmicity}")));
    }
    if let Some(c) = cutoff {
        if !(c > 0.0) || !c.is_finite() {
            return Err(config_error(&format!("{path}.cutoff"), format!("must be positive, got {c}")));
        }
    }
    Ok(())
}

fn config_error(path: &str, reason: impl Into<String>) -> Error {
    Error::Config { path: path.to_string(), reason: reason.into() }
}

fn prefixed(section: &str, e: Error) -> Error {
    match e {
        Error::Parameter { field, reason } => Error::Config { path: format!("{section}.{field}"), reason },
        other => other,
    }
}

fn locate(text: &str, offset: usize) -> String {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rfind('\n').map_or(before.len(), |p| before.len() - p - 1) + 1;
    format!("line {line}, column {col}")
}

/// Named parameter sets of the reference transistor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// Reference configuration: `T_S = 10`, `T_D = 0.01`, Ohmic baths.
    Fig2,
    /// Source temperature `5` and `25`.
    Fig3a,
    /// Sub-Ohmic (`s = 0.5`) and super-Ohmic (`s = 1.5`) baths.
    Fig3b,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::Fig2, Preset::Fig3a, Preset::Fig3b];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig2 => "fig2",
            Preset::Fig3a => "fig3a",
            Preset::Fig3b => "fig3b",
        }
    }

    pub fn configs(self) -> Vec<RunConfig> {
        let base = fig2();
        match self {
            Preset::Fig2 => vec![base],
            Preset::Fig3a => [5.0, 25.0]
                .into_iter()
                .map(|t| {
                    let mut c = base.clone();
                    c.label = format!("ts{t}");
                    c.baths.source.temperature = t;
                    c
                })
                .collect(),
            Preset::Fig3b => [0.5, 1.5]
                .into_iter()
                .map(|s| {
                    let mut c = base.clone();
                    c.label = format!("s{s}");
                    c.baths.source.ohmicity = s;
                    c.baths.modulator.ohmicity = s;
                    c.baths.drain.ohmicity = s;
                    c
                })
                .collect(),
        }
    }
}

impl FromStr for Preset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| config_error("preset", format!("unknown preset `{s}` (expected fig2, fig3a or fig3b)")))
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Reference transistor over `T_M` in `[0, 10]` on 101 points.
pub fn fig2() -> RunConfig {
    let spec = SystemSpec::<f64>::reference();
    RunConfig {
        label: "fig2".to_string(),
        system: SystemSection {
            omega_s: spec.omega_s,
            omega_m: spec.omega_m,
            omega_d: spec.omega_d,
            zeta_sm: spec.zeta_sm,
            zeta_md: spec.zeta_md,
            zeta_sd: spec.zeta_sd,
            binning_tol: None,
        },
        baths: BathsSection {
            source: FixedBath { temperature: 10.0, coupling: 1e-6, ohmicity: 1.0, cutoff: None },
            modulator: SweptBath { coupling: 1e-6, ohmicity: 1.0, cutoff: None },
            drain: FixedBath { temperature: 0.01, coupling: 1e-4, ohmicity: 1.0, cutoff: None },
        },
        sweep: SweepSection { t_m_min: 0.0, t_m_max: 10.0, steps: 101, fd_step: None },
        outputs: OutputSelection::default(),
    }
}
