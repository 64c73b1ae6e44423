//! Three-qubit system Hamiltonian and its Davies (secular) decomposition.
//!
//! Qubits are ordered source (S), modulator (M), drain (D) in every tensor
//! product, with basis kets `|j_S j_M j_D>` and `sigma_z |j> = (-1)^j |j>`,
//! so `|0>` is the `+1` eigenstate. [`embed`] is the single place where that
//! ordering is fixed.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, kron_all, ComplexMatrix, EigenSystem};
use crate::scalar::{cx, Cx, Real};

/// Hilbert-space dimension of the three qubits.
pub const DIM: usize = 8;
/// Subsystem dimensions in tensor order.
pub const QUBIT_DIMS: [usize; 3] = [2, 2, 2];
/// Default Bohr-frequency bin width relative to `max|E_i|`.
pub const DEFAULT_BINNING_TOL: f64 = 1e-9;

/// One of the three qubits, and the reservoir it is coupled to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Terminal {
    Source,
    Modulator,
    Drain,
}

impl Terminal {
    pub const ALL: [Terminal; 3] = [Terminal::Source, Terminal::Modulator, Terminal::Drain];

    /// Position in the tensor product.
    pub fn index(self) -> usize {
        match self {
            Terminal::Source => 0,
            Terminal::Modulator => 1,
            Terminal::Drain => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Terminal::Source => "S",
            Terminal::Modulator => "M",
            Terminal::Drain => "D",
        }
    }
}

impl fmt::Display for Terminal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

pub fn sigma_z<T: Real>() -> ComplexMatrix<T> {
    ComplexMatrix::diag(&[T::one(), -T::one()])
}

pub fn sigma_y<T: Real>() -> ComplexMatrix<T> {
    ComplexMatrix::from_fn(2, 2, |i, j| match (i, j) {
        (0, 1) => cx(T::zero(), -T::one()),
        (1, 0) => cx(T::zero(), T::one()),
        _ => Cx::zero(),
    })
}

/// Lifts a single-qubit operator onto `site` of the S (x) M (x) D space.
pub fn embed<T: Real>(op: &ComplexMatrix<T>, site: Terminal) -> ComplexMatrix<T> {
    let id = ComplexMatrix::identity(2);
    match site {
        Terminal::Source => kron_all(&[op, &id, &id]),
        Terminal::Modulator => kron_all(&[&id, op, &id]),
        Terminal::Drain => kron_all(&[&id, &id, op]),
    }
}

/// Qubit splittings and pairwise `sigma_y sigma_y` couplings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemSpec<T> {
    pub omega_s: T,
    pub omega_m: T,
    pub omega_d: T,
    pub zeta_sm: T,
    pub zeta_md: T,
    pub zeta_sd: T,
}

impl<T: Real> SystemSpec<T> {
    /// Parameters of the reference transistor, in units of the source splitting:
    /// `omega_S = 10 omega_M = 3 omega_D = zeta_SM = 6 zeta_MD = zeta_SD = 1`.
    pub fn reference() -> Self {
        Self {
            omega_s: T::one(),
            omega_m: T::lit(0.1),
            omega_d: T::one() / T::lit(3.0),
            zeta_sm: T::one(),
            zeta_md: T::one() / T::lit(6.0),
            zeta_sd: T::one(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, w) in [("omega_s", self.omega_s), ("omega_m", self.omega_m), ("omega_d", self.omega_d)] {
            if !(w > T::zero()) || !w.is_finite() {
                return Err(Error::param(name, format!("qubit splitting must be positive and finite, got {w}")));
            }
        }
        for (name, z) in [("zeta_sm", self.zeta_sm), ("zeta_md", self.zeta_md), ("zeta_sd", self.zeta_sd)] {
            if !z.is_finite() {
                return Err(Error::param(name, "coupling must be finite"));
            }
        }
        Ok(())
    }

    pub fn omega(&self, site: Terminal) -> T {
        match site {
            Terminal::Source => self.omega_s,
            Terminal::Modulator => self.omega_m,
            Terminal::Drain => self.omega_d,
        }
    }
}

/// `H_S = 1/2 sum_k omega_k sigma^z_k + sum_{pairs} zeta_kn sigma^y_k sigma^y_n`.
pub fn build_hamiltonian<T: Real>(spec: &SystemSpec<T>) -> Result<ComplexMatrix<T>> {
    spec.validate()?;
    let half = T::lit(0.5);
    let z = sigma_z::<T>();
    let y = sigma_y::<T>();
    let mut h = ComplexMatrix::zeros(DIM, DIM);
    for site in Terminal::ALL {
        h += &embed(&z, site).scale_real(half * spec.omega(site));
    }
    let ys: Vec<_> = Terminal::ALL.iter().map(|&k| embed(&y, k)).collect();
    h += &ys[0].matmul(&ys[1]).scale_real(spec.zeta_sm);
    h += &ys[1].matmul(&ys[2]).scale_real(spec.zeta_md);
    h += &ys[0].matmul(&ys[2]).scale_real(spec.zeta_sd);
    Ok(h.hermitian_part())
}

/// `S_k(omega)` for one Bohr frequency, in both bases.
#[derive(Debug, Clone)]
pub struct JumpOperator<T: Real> {
    pub omega: T,
    /// Matrix elements in the energy eigenbasis.
    pub energy: ComplexMatrix<T>,
    /// The same operator in the computational basis.
    pub computational: ComplexMatrix<T>,
}

#[derive(Debug, Clone)]
pub struct SpectralDecomposition<T: Real> {
    pub hamiltonian: ComplexMatrix<T>,
    pub eigen: EigenSystem<T>,
    /// Distinct positive Bohr frequencies, ascending.
    pub bohr: Vec<T>,
    /// Nonzero jump operators per terminal, indexed by [`Terminal::index`].
    pub jumps: [Vec<JumpOperator<T>>; 3],
    /// Zero-frequency (energy-diagonal) part of `sigma^y_k`, computational basis.
    pub zero_frequency: [ComplexMatrix<T>; 3],
    pub warnings: Vec<String>,
}

impl<T: Real> SpectralDecomposition<T> {
    pub fn jumps(&self, site: Terminal) -> &[JumpOperator<T>] {
        &self.jumps[site.index()]
    }

    /// Eigenvectors as columns; maps energy-basis operators to the computational basis.
    pub fn basis(&self) -> &ComplexMatrix<T> {
        &self.eigen.vectors
    }

    pub fn energies(&self) -> &[T] {
        &self.eigen.values
    }

    pub fn to_energy_basis(&self, op: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        let v = self.basis();
        v.adjoint().matmul(op).matmul(v)
    }

    pub fn to_computational_basis(&self, op: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        let v = self.basis();
        v.matmul(op).matmul(&v.adjoint())
    }

    pub fn max_abs_energy(&self) -> T {
        self.eigen.values.iter().fold(T::zero(), |m, e| m.max(e.abs()))
    }

    /// Cutoff frequency `10 max|E_i|`.
    pub fn default_cutoff(&self) -> T {
        T::lit(10.0) * self.max_abs_energy()
    }

    /// Largest `|[H, S] + omega S| / omega` over all stored operators.
    pub fn covariance_defect(&self) -> T {
        let mut worst = T::zero();
        for jumps in &self.jumps {
            for j in jumps {
                let c = self.hamiltonian.commutator(&j.computational);
                let lowering = (&c + &j.computational.scale_real(j.omega)).max_abs() / j.omega;
                let adj = j.computational.adjoint();
                let c = self.hamiltonian.commutator(&adj);
                let raising = (&c - &adj.scale_real(j.omega)).max_abs() / j.omega;
                worst = worst.max(lowering).max(raising);
            }
        }
        worst
    }

    /// Largest deviation of `sum_omega (S + S^H) + D_0` from `sigma^y_k`.
    pub fn completeness_defect(&self) -> T {
        let y = sigma_y::<T>();
        let mut worst = T::zero();
        for site in Terminal::ALL {
            let mut acc = self.zero_frequency[site.index()].clone();
            for j in self.jumps(site) {
                acc += &j.computational;
                acc += &j.computational.adjoint();
            }
            worst = worst.max(acc.max_abs_diff(&embed(&y, site)));
        }
        worst
    }
}

/// Diagonalizes `H_S` and groups `sigma^y_k` into Bohr-frequency components.
///
/// Transition gaps closer than `binning_tol * max|E|` share a bin. Gaps
/// inside one bin width of zero form the zero-frequency component, which is
/// kept for diagnostics and excluded from the dissipators.
pub fn decompose<T: Real>(spec: &SystemSpec<T>, binning_tol: T) -> Result<SpectralDecomposition<T>> {
    if !(binning_tol > T::zero()) {
        return Err(Error::param("binning_tol", "must be positive"));
    }
    let hamiltonian = build_hamiltonian(spec)?;
    let eigen = hermitian_eig(&hamiltonian)?;
    let e = &eigen.values;
    let scale = e.iter().fold(T::zero(), |m, x| m.max(x.abs()));
    let width = binning_tol * scale;
    let mut warnings = Vec::new();

    let mut gaps: Vec<(T, usize, usize)> = Vec::new();
    let mut zero_pairs: Vec<(usize, usize)> = Vec::new();
    for upper in 0..DIM {
        zero_pairs.push((upper, upper));
        for lower in 0..upper {
            let gap = e[upper] - e[lower];
            if gap <= width {
                zero_pairs.push((upper, lower));
                zero_pairs.push((lower, upper));
            } else {
                gaps.push((gap, upper, lower));
            }
        }
    }
    if zero_pairs.len() > DIM {
        warnings.push(format!(
            "degenerate energy levels detected ({} pairs within {:e}); using subspace projectors",
            (zero_pairs.len() - DIM) / 2,
            width.to_f64_lossy()
        ));
    }
    gaps.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));

    let mut bins: Vec<Vec<(T, usize, usize)>> = Vec::new();
    for g in gaps {
        match bins.last_mut() {
            Some(bin) if g.0 - bin.last().unwrap().0 <= width => bin.push(g),
            _ => bins.push(vec![g]),
        }
    }
    for bin in &bins {
        let span = bin.last().unwrap().0 - bin[0].0;
        if span > width {
            warnings.push(format!(
                "Bohr bin around {:e} spans {:e}, wider than the bin width; transitions merged",
                bin[0].0.to_f64_lossy(),
                span.to_f64_lossy()
            ));
        }
    }
    let bohr: Vec<T> = bins
        .iter()
        .map(|bin| bin.iter().map(|g| g.0).sum::<T>() / T::from_usize(bin.len()).unwrap())
        .collect();

    let v = &eigen.vectors;
    let vh = v.adjoint();
    let y = sigma_y::<T>();
    let mut jumps: [Vec<JumpOperator<T>>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    let mut zero_frequency = [
        ComplexMatrix::zeros(DIM, DIM),
        ComplexMatrix::zeros(DIM, DIM),
        ComplexMatrix::zeros(DIM, DIM),
    ];
    for site in Terminal::ALL {
        let y_energy = vh.matmul(&embed(&y, site)).matmul(v);
        let mut d0 = ComplexMatrix::zeros(DIM, DIM);
        for &(a, b) in &zero_pairs {
            d0[(a, b)] = y_energy[(a, b)];
        }
        zero_frequency[site.index()] = v.matmul(&d0).matmul(&vh);
        for (bin, &omega) in bins.iter().zip(&bohr) {
            let mut s = ComplexMatrix::zeros(DIM, DIM);
            // |E_lower><E_lower| sigma |E_upper><E_upper|
            for &(_, upper, lower) in bin {
                s[(lower, upper)] = y_energy[(lower, upper)];
            }
            if s.max_abs().is_zero() {
                continue;
            }
            let computational = v.matmul(&s).matmul(&vh);
            jumps[site.index()].push(JumpOperator { omega, energy: s, computational });
        }
    }
    for w in &warnings {
        log::warn!("{w}");
    }
    Ok(SpectralDecomposition { hamiltonian, eigen, bohr, jumps, zero_frequency, warnings })
}

/// Gibbs state `exp(-H/T)/Z`, with the ground space at `T = 0`.
pub fn gibbs_state<T: Real>(hamiltonian: &ComplexMatrix<T>, temperature: T) -> Result<ComplexMatrix<T>> {
    let e = hermitian_eig(hamiltonian)?;
    let ground = e.values[0];
    let degenerate_tol = T::tol(1e-12) * ground.abs().max(T::one());
    let weight = |x: T| {
        if temperature > T::zero() {
            (-(x - ground) / temperature).exp()
        } else if x - ground <= degenerate_tol {
            T::one()
        } else {
            T::zero()
        }
    };
    let z: T = e.values.iter().map(|&x| weight(x)).sum();
    Ok(e.reconstruct_with(|x| weight(x) / z))
}
