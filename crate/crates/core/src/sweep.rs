//! Modulator-temperature sweeps.
//!
//! Grid points are independent and evaluated in parallel; records come back
//! in grid order and every point is a pure function of the configuration,
//! so repeated runs are bitwise identical.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baths::BathSpec;
use crate::config::RunConfig;
use crate::dynamics::{solve_ness, Liouvillian, SteadyState};
use crate::error::{Error, Result};
use crate::infoquant::{fidelity, mutual_info_2, mutual_info_3, reduced_negativity, reference_state, ReferenceLabel};
use crate::model::{decompose, SpectralDecomposition, Terminal};
use crate::observables::{amplification, currents_with_generator, CurrentTriple};

pub const STATUS_OK: &str = "ok";
pub const STATUS_DEGENERATE: &str = "degenerate";

/// One grid point. Unselected or failed quantities are `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub t_m: f64,
    pub i_s: Option<f64>,
    pub i_m: Option<f64>,
    pub i_d: Option<f64>,
    pub beta_s: Option<f64>,
    pub beta_d: Option<f64>,
    pub m2_sm: Option<f64>,
    pub m2_sd: Option<f64>,
    pub m2_md: Option<f64>,
    pub m3: Option<f64>,
    /// Negativity of the S-M pair after tracing out D.
    pub n_sm: Option<f64>,
    pub n_sd: Option<f64>,
    pub n_md: Option<f64>,
    pub f_w: Option<f64>,
    pub f_ghz: Option<f64>,
    /// `ok`, `degenerate`, or `failed: <reason>`.
    pub status: String,
}

impl SweepRecord {
    pub const FIELDS: [&'static str; 16] = [
        "t_m", "i_s", "i_m", "i_d", "beta_s", "beta_d", "m2_sm", "m2_sd", "m2_md", "m3", "n_sm", "n_sd", "n_md", "f_w",
        "f_ghz", "status",
    ];

    fn empty(t_m: f64, status: String) -> Self {
        Self {
            t_m,
            i_s: None,
            i_m: None,
            i_d: None,
            beta_s: None,
            beta_d: None,
            m2_sm: None,
            m2_sd: None,
            m2_md: None,
            m3: None,
            n_sm: None,
            n_sd: None,
            n_md: None,
            f_w: None,
            f_ghz: None,
            status,
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == STATUS_OK
    }

    pub fn currents(&self) -> Option<CurrentTriple<f64>> {
        Some(CurrentTriple { source: self.i_s?, modulator: self.i_m?, drain: self.i_d? })
    }

    /// Numeric fields in [`Self::FIELDS`] order, without `status`.
    pub fn values(&self) -> [Option<f64>; 15] {
        [
            Some(self.t_m),
            self.i_s,
            self.i_m,
            self.i_d,
            self.beta_s,
            self.beta_d,
            self.m2_sm,
            self.m2_sd,
            self.m2_md,
            self.m3,
            self.n_sm,
            self.n_sd,
            self.n_md,
            self.f_w,
            self.f_ghz,
        ]
    }

    /// Inverse of [`Self::values`].
    pub fn from_values(v: [Option<f64>; 15], status: String) -> Result<Self> {
        let t_m = v[0].ok_or_else(|| Error::param("t_m", "missing"))?;
        Ok(Self {
            t_m,
            i_s: v[1],
            i_m: v[2],
            i_d: v[3],
            beta_s: v[4],
            beta_d: v[5],
            m2_sm: v[6],
            m2_sd: v[7],
            m2_md: v[8],
            m3: v[9],
            n_sm: v[10],
            n_sd: v[11],
            n_md: v[12],
            f_w: v[13],
            f_ghz: v[14],
            status,
        })
    }
}

/// Steady state and currents at one modulator temperature.
#[derive(Debug, Clone)]
pub struct PointSolution {
    pub t_m: f64,
    pub baths: [BathSpec<f64>; 3],
    pub steady: SteadyState<f64>,
    pub currents: CurrentTriple<f64>,
}

/// A configuration with its spectral decomposition computed once.
#[derive(Debug, Clone)]
pub struct SweepContext {
    pub config: RunConfig,
    pub decomposition: SpectralDecomposition<f64>,
}

impl SweepContext {
    pub fn new(config: RunConfig) -> Result<Self> {
        config.validate()?;
        let decomposition = decompose(&config.system_spec(), config.binning_tol())?;
        Ok(Self { config, decomposition })
    }

    pub fn baths(&self, t_m: f64) -> Result<[BathSpec<f64>; 3]> {
        self.config.baths_at(t_m, self.decomposition.default_cutoff())
    }

    pub fn solve(&self, t_m: f64) -> Result<PointSolution> {
        let baths = self.baths(t_m)?;
        let l = Liouvillian::from_decomposition(&self.decomposition, &baths)?;
        let steady = solve_ness(&l)?;
        let currents = currents_with_generator(&steady.energy_state, &l, &self.decomposition, &baths)?;
        Ok(PointSolution { t_m, baths, steady, currents })
    }

    /// Signed amplification factors at `t_m` from a five-point stencil of
    /// spacing `h`, shifted forward where `t_m - 2h` would be negative.
    pub fn beta(&self, t_m: f64, center: &CurrentTriple<f64>, h: f64) -> Result<(Option<f64>, Option<f64>)> {
        let k = ((t_m / h + 1e-9).floor().max(0.0) as usize).min(2);
        let mut window = Vec::with_capacity(5);
        for j in 0..5usize {
            if j == k {
                window.push((t_m, *center));
            } else {
                let t = (t_m + (j as f64 - k as f64) * h).max(0.0);
                window.push((t, self.solve(t)?.currents));
            }
        }
        let p = amplification(&window, h)?[k];
        Ok((p.beta_s, p.beta_d))
    }

    pub fn record(&self, t_m: f64) -> SweepRecord {
        match self.try_record(t_m) {
            Ok(r) => r,
            Err(e @ Error::DegenerateSteadyState { .. }) => {
                log::warn!("T_M = {t_m}: {e}");
                SweepRecord::empty(t_m, STATUS_DEGENERATE.to_string())
            }
            Err(e) => {
                log::warn!("T_M = {t_m}: {e}");
                SweepRecord::empty(t_m, format!("failed: {e}"))
            }
        }
    }

    fn try_record(&self, t_m: f64) -> Result<SweepRecord> {
        let sel = self.config.outputs;
        let p = self.solve(t_m)?;
        let mut r = SweepRecord::empty(t_m, STATUS_OK.to_string());
        if sel.currents {
            r.i_s = Some(p.currents.source);
            r.i_m = Some(p.currents.modulator);
            r.i_d = Some(p.currents.drain);
        }
        if sel.beta {
            let (bs, bd) = self.beta(t_m, &p.currents, self.config.fd_step())?;
            r.beta_s = bs;
            r.beta_d = bd;
        }
        let rho = &p.steady.state;
        use Terminal::*;
        if sel.m2 {
            r.m2_sm = Some(mutual_info_2(rho, (Source, Modulator))?);
            r.m2_sd = Some(mutual_info_2(rho, (Source, Drain))?);
            r.m2_md = Some(mutual_info_2(rho, (Modulator, Drain))?);
        }
        if sel.m3 {
            r.m3 = Some(mutual_info_3(rho)?);
        }
        if sel.negativity {
            r.n_sm = Some(reduced_negativity(rho, Drain)?);
            r.n_sd = Some(reduced_negativity(rho, Modulator)?);
            r.n_md = Some(reduced_negativity(rho, Source)?);
        }
        if sel.fidelity {
            r.f_w = Some(fidelity(rho, &reference_state(ReferenceLabel::W).state)?);
            r.f_ghz = Some(fidelity(rho, &reference_state(ReferenceLabel::Ghz).state)?);
        }
        Ok(r)
    }

    pub fn run(&self) -> Vec<SweepRecord> {
        self.config.grid().into_par_iter().map(|t| self.record(t)).collect()
    }
}

/// Evaluates every grid point of `config`, ordered by ascending `T_M`.
pub fn run_sweep(config: &RunConfig) -> Result<Vec<SweepRecord>> {
    Ok(SweepContext::new(config.clone())?.run())
}
