//! Heat currents at the steady state, the transistor amplification factor
//! and the linear fit of the modulator current.

use serde::{Deserialize, Serialize};

use crate::baths::BathSpec;
use crate::dynamics::{apply_dissipator, Basis, DensityMatrix, Liouvillian};
use crate::error::{Error, Result};
use crate::linalg::{vec_norm, ComplexMatrix};
use crate::model::{SpectralDecomposition, Terminal};
use crate::scalar::Real;

/// Stationarity threshold `||L rho|| / ||L||` accepted by [`heat_currents`].
const STATIONARITY_TOL: f64 = 1e-9;
/// Below this `|dI_M/dT_M|` the amplification is reported as divergent.
const DIVERGENCE_THRESHOLD: f64 = 1e-14;

/// Heat flowing from each reservoir into the system (positive = into the qubits).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurrentTriple<T> {
    pub source: T,
    pub modulator: T,
    pub drain: T,
}

impl<T: Real> CurrentTriple<T> {
    pub fn get(&self, site: Terminal) -> T {
        match site {
            Terminal::Source => self.source,
            Terminal::Modulator => self.modulator,
            Terminal::Drain => self.drain,
        }
    }

    pub fn sum(&self) -> T {
        self.source + self.modulator + self.drain
    }

    pub fn max_abs(&self) -> T {
        self.source.abs().max(self.modulator.abs()).max(self.drain.abs())
    }

    /// `|I_S + I_M + I_D| / max|I_k|`, zero when all currents vanish.
    pub fn conservation_defect(&self) -> T {
        let m = self.max_abs();
        if m == T::zero() {
            T::zero()
        } else {
            self.sum().abs() / m
        }
    }
}

/// `I_k = Tr(H_S D_k[rho])` for a stationary `rho`.
///
/// Rejects states whose Liouvillian residual exceeds `1e-9 ||L||`.
pub fn heat_currents<T: Real>(
    ness: &DensityMatrix<T>,
    decomp: &SpectralDecomposition<T>,
    baths: &[BathSpec<T>; 3],
) -> Result<CurrentTriple<T>> {
    let rho_e = decomp.to_energy_basis(ness.matrix()).hermitian_part();
    heat_currents_energy_basis(&rho_e, decomp, baths)
}

/// [`heat_currents`] for a state already expressed in the energy eigenbasis.
pub fn heat_currents_energy_basis<T: Real>(
    rho_e: &ComplexMatrix<T>,
    decomp: &SpectralDecomposition<T>,
    baths: &[BathSpec<T>; 3],
) -> Result<CurrentTriple<T>> {
    let l = Liouvillian::from_decomposition(decomp, baths)?;
    currents_with_generator(rho_e, &l, decomp, baths)
}

/// [`heat_currents_energy_basis`] reusing a generator already built from `decomp` and `baths`.
pub fn currents_with_generator<T: Real>(
    rho_e: &ComplexMatrix<T>,
    l: &Liouvillian<T>,
    decomp: &SpectralDecomposition<T>,
    baths: &[BathSpec<T>; 3],
) -> Result<CurrentTriple<T>> {
    let le = l.energy_matrix();
    let residual = vec_norm(&le.matvec(&rho_e.vectorize())) / le.frobenius_norm();
    let allowed = T::tol(STATIONARITY_TOL);
    if residual > allowed {
        return Err(Error::NotStationary { residual: residual.to_f64_lossy(), allowed: allowed.to_f64_lossy() });
    }
    let energies = decomp.energies();
    let mut out = [T::zero(); 3];
    for site in Terminal::ALL {
        let d = apply_dissipator(rho_e, decomp.jumps(site), &baths[site.index()], Basis::Energy)?;
        out[site.index()] = energies.iter().enumerate().map(|(i, &e)| e * d[(i, i)].re).sum();
    }
    Ok(CurrentTriple { source: out[0], modulator: out[1], drain: out[2] })
}

/// Response of the source and drain currents to the modulator current.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AmplificationPoint<T> {
    pub t_m: T,
    /// Signed `dI_S/dI_M`; `None` where `dI_M/dT_M` vanishes.
    pub beta_s: Option<T>,
    /// Signed `dI_D/dI_M`.
    pub beta_d: Option<T>,
    /// Finite-difference truncation estimate for `beta_s + beta_d`.
    pub truncation: T,
    /// `truncation` plus rounding propagated from the current-conservation residual.
    pub error_bound: T,
}

impl<T: Real> AmplificationPoint<T> {
    pub fn is_divergent(&self) -> bool {
        self.beta_s.is_none()
    }

    /// `|dI_S/dI_M|`.
    pub fn magnitude_s(&self) -> Option<T> {
        self.beta_s.map(T::abs)
    }

    pub fn magnitude_d(&self) -> Option<T> {
        self.beta_d.map(T::abs)
    }
}

/// Finite-difference derivative at one grid point: stencil weights (already
/// divided by the step) and a truncation estimate.
struct Stencil<T> {
    offsets: Vec<(usize, T)>,
    /// `C h^2` such that the truncation error is `C h^2 |f'''|`.
    truncation_factor: T,
}

fn stencil<T: Real>(i: usize, n: usize, h: T) -> Stencil<T> {
    let two_h = h + h;
    let h2 = h * h;
    if i == 0 {
        Stencil {
            offsets: vec![(0, T::lit(-3.0) / two_h), (1, T::lit(4.0) / two_h), (2, -T::one() / two_h)],
            truncation_factor: h2 / T::lit(3.0),
        }
    } else if i == n - 1 {
        Stencil {
            offsets: vec![(n - 1, T::lit(3.0) / two_h), (n - 2, T::lit(-4.0) / two_h), (n - 3, T::one() / two_h)],
            truncation_factor: h2 / T::lit(3.0),
        }
    } else {
        Stencil { offsets: vec![(i + 1, T::one() / two_h), (i - 1, -T::one() / two_h)], truncation_factor: h2 / T::lit(6.0) }
    }
}

fn apply_stencil<T: Real>(s: &Stencil<T>, f: &[T]) -> T {
    s.offsets.iter().map(|&(k, w)| w * f[k]).sum()
}

/// `|f'''|` from the four-point window nearest to `i`, zero with fewer than four points.
fn third_derivative<T: Real>(f: &[T], i: usize, h: T) -> T {
    let n = f.len();
    if n < 4 {
        return T::zero();
    }
    let start = i.saturating_sub(1).min(n - 4);
    let d3 = f[start + 3] - T::lit(3.0) * f[start + 2] + T::lit(3.0) * f[start + 1] - f[start];
    (d3 / (h * h * h)).abs()
}

/// Signed amplification factors on a uniform `T_M` grid.
///
/// Interior points use central differences, the two endpoints second-order
/// one-sided differences.
pub fn amplification<T: Real>(sweep: &[(T, CurrentTriple<T>)], step: T) -> Result<Vec<AmplificationPoint<T>>> {
    let n = sweep.len();
    if n < 3 {
        return Err(Error::param("sweep", format!("amplification needs at least 3 grid points, got {n}")));
    }
    if !(step > T::zero()) {
        return Err(Error::param("step", "must be positive"));
    }
    let grid_tol = T::tol(1e-9) * step.max(T::one());
    for w in sweep.windows(2) {
        if ((w[1].0 - w[0].0) - step).abs() > grid_tol {
            return Err(Error::param("sweep", "temperature grid is not uniform with the given step"));
        }
    }
    let series = |site: Terminal| -> Vec<T> { sweep.iter().map(|(_, c)| c.get(site)).collect() };
    let (fs, fm, fd) = (series(Terminal::Source), series(Terminal::Modulator), series(Terminal::Drain));
    let totals: Vec<T> = sweep.iter().map(|(_, c)| c.sum()).collect();
    let scale: Vec<T> = sweep.iter().map(|(_, c)| c.max_abs()).collect();
    let eps = T::epsilon();

    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let st = stencil(i, n, step);
        let (ds, dm, dd) = (apply_stencil(&st, &fs), apply_stencil(&st, &fm), apply_stencil(&st, &fd));
        let t_m = sweep[i].0;
        if dm.abs() < T::lit(DIVERGENCE_THRESHOLD) {
            out.push(AmplificationPoint { t_m, beta_s: None, beta_d: None, truncation: T::infinity(), error_bound: T::infinity() });
            continue;
        }
        let beta_s = ds / dm;
        let beta_d = dd / dm;
        let es = st.truncation_factor * third_derivative(&fs, i, step);
        let em = st.truncation_factor * third_derivative(&fm, i, step);
        let ed = st.truncation_factor * third_derivative(&fd, i, step);
        let truncation = (es + beta_s.abs() * em + ed + beta_d.abs() * em) / dm.abs();
        let rounding: T = st
            .offsets
            .iter()
            .map(|&(k, w)| w.abs() * (totals[k].abs() + T::lit(8.0) * eps * scale[k]))
            .sum::<T>()
            / dm.abs();
        out.push(AmplificationPoint {
            t_m,
            beta_s: Some(beta_s),
            beta_d: Some(beta_d),
            truncation,
            error_bound: truncation + rounding,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearFit<T> {
    pub slope: T,
    pub intercept: T,
    /// Euclidean norm of the fit residuals.
    pub residual: T,
}

/// Ordinary least-squares line through `(x, y)` points.
pub fn linear_fit<T: Real>(points: &[(T, T)]) -> Result<LinearFit<T>> {
    if points.len() < 2 {
        return Err(Error::DegenerateFit);
    }
    let n = T::from_usize(points.len()).unwrap();
    let mx = points.iter().map(|p| p.0).sum::<T>() / n;
    let my = points.iter().map(|p| p.1).sum::<T>() / n;
    let sxx: T = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: T = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if !(sxx > T::zero()) {
        return Err(Error::DegenerateFit);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = points.iter().map(|p| (p.1 - slope * p.0 - intercept).powi(2)).sum::<T>().sqrt();
    Ok(LinearFit { slope, intercept, residual })
}
