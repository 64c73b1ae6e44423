//! Invariant suite run by the `check` subcommand.

use crate::baths::{bose_occupation, rates, spectral_density};
use crate::config::RunConfig;
use crate::dynamics::Liouvillian;
use crate::error::Result;
use crate::model::Terminal;
use crate::sweep::SweepContext;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
}

impl CheckOutcome {
    fn new(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self { name: name.into(), value, tolerance }
    }

    pub fn passed(&self) -> bool {
        self.value <= self.tolerance
    }
}

/// Structural checks on the decomposition plus per-point checks at the two
/// ends and the middle of the sweep grid.
pub fn run_checks(config: &RunConfig) -> Result<Vec<CheckOutcome>> {
    let ctx = SweepContext::new(config.clone())?;
    let d = &ctx.decomposition;
    let mut out = vec![
        CheckOutcome::new("eigen reconstruction", d.eigen.reconstruct().max_abs_diff(&d.hamiltonian) / d.hamiltonian.max_abs(), 1e-10),
        CheckOutcome::new("eigenvector unitarity", d.eigen.unitarity_defect(), 1e-10),
        CheckOutcome::new("jump covariance", d.covariance_defect(), 1e-9),
        CheckOutcome::new("jump completeness", d.completeness_defect(), 1e-10),
    ];

    let grid = config.grid();
    let picks = [grid[0], grid[grid.len() / 2], grid[grid.len() - 1]];
    for t_m in picks {
        let baths = ctx.baths(t_m)?;
        let mut kms = 0.0f64;
        for site in Terminal::ALL {
            let b = &baths[site.index()];
            for j in d.jumps(site) {
                let r = rates(j.omega, b)?;
                let expected = spectral_density(j.omega, b)? * bose_occupation(j.omega, b.temperature)?;
                if r.emission > 0.0 {
                    kms = kms.max((r.absorption - expected).abs() / r.emission);
                }
            }
        }
        out.push(CheckOutcome::new(format!("KMS detailed balance at T_M={t_m}"), kms, 1e-12));

        let l = Liouvillian::from_decomposition(d, &baths)?;
        out.push(CheckOutcome::new(format!("trace preservation at T_M={t_m}"), l.trace_preservation_defect(), 1e-10));
        let max_re = l.spectrum()?.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
        out.push(CheckOutcome::new(format!("spectral stability max Re at T_M={t_m}"), max_re, 1e-10));

        let p = ctx.solve(t_m)?;
        out.push(CheckOutcome::new(format!("NESS residual at T_M={t_m}"), p.steady.residual, 1e-10));
        out.push(CheckOutcome::new(format!("first law at T_M={t_m}"), p.currents.conservation_defect(), 1e-10));
    }
    Ok(out)
}
