//! Entropic and entanglement diagnostics of three-qubit states.
//!
//! Entropies are in nats.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::dynamics::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{basis_ket, hermitian_eigenvalues, partial_trace, partial_transpose, psd_sqrt, svd, ComplexMatrix};
use crate::model::{Terminal, QUBIT_DIMS};
use crate::scalar::{Cx, Real};

/// `-Tr(rho ln rho)`, with eigenvalues in `[-1e-12, 0)` treated as zero.
pub fn entropy<T: Real>(rho: &ComplexMatrix<T>) -> Result<T> {
    let ev = hermitian_eigenvalues(&rho.hermitian_part())?;
    let floor = -T::tol(1e-12);
    let mut s = T::zero();
    for p in ev {
        if p < floor {
            return Err(Error::NotPositive(p.to_f64_lossy()));
        }
        if p > T::zero() {
            s = s - p * p.ln();
        }
    }
    Ok(s.max(T::zero()))
}

fn reduced<T: Real>(rho: &DensityMatrix<T>, keep: &[Terminal]) -> Result<ComplexMatrix<T>> {
    let mut idx: Vec<usize> = keep.iter().map(|t| t.index()).collect();
    idx.sort_unstable();
    idx.dedup();
    if idx.len() != keep.len() {
        return Err(Error::Subsystem(format!("repeated terminal in {keep:?}")));
    }
    partial_trace(rho.matrix(), &QUBIT_DIMS, &idx)
}

/// `S(rho_A) + S(rho_B) - S(rho_AB)` for the pair, after tracing out the third qubit.
pub fn mutual_info_2<T: Real>(rho: &DensityMatrix<T>, pair: (Terminal, Terminal)) -> Result<T> {
    let ab = reduced(rho, &[pair.0, pair.1])?;
    let a = reduced(rho, &[pair.0])?;
    let b = reduced(rho, &[pair.1])?;
    Ok(entropy(&a)? + entropy(&b)? - entropy(&ab)?)
}

/// `S(ABC) + S(A) + S(B) + S(C) - S(AB) - S(AC) - S(BC)`.
pub fn mutual_info_3<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    use Terminal::*;
    let whole = entropy(rho.matrix())?;
    let mut singles = T::zero();
    for t in [Source, Modulator, Drain] {
        singles = singles + entropy(&reduced(rho, &[t])?)?;
    }
    let mut pairs = T::zero();
    for p in [[Source, Modulator], [Source, Drain], [Modulator, Drain]] {
        pairs = pairs + entropy(&reduced(rho, &p)?)?;
    }
    Ok(whole + singles - pairs)
}

/// `sum_i (|mu_i| - mu_i)` over the eigenvalues of the partial transpose on
/// subsystem `transposed` of a state factorized as `dims`.
///
/// Equals twice the modulus of the negative part of the spectrum; zero for
/// PPT states, 1 for a Bell pair.
pub fn negativity<T: Real>(rho: &ComplexMatrix<T>, dims: &[usize], transposed: usize) -> Result<T> {
    let pt = partial_transpose(rho, dims, transposed)?;
    let ev = hermitian_eigenvalues(&pt.hermitian_part())?;
    Ok(ev.iter().map(|&mu| mu.abs() - mu).sum())
}

/// Negativity of the two-qubit state left after tracing out `traced`.
pub fn reduced_negativity<T: Real>(rho: &DensityMatrix<T>, traced: Terminal) -> Result<T> {
    let keep: Vec<Terminal> = Terminal::ALL.into_iter().filter(|&t| t != traced).collect();
    let pair = reduced(rho, &keep)?;
    negativity(&pair, &[2, 2], 1)
}

/// Negativity of the split `site | rest` of the full three-qubit state.
pub fn split_negativity<T: Real>(rho: &DensityMatrix<T>, site: Terminal) -> Result<T> {
    negativity(rho.matrix(), &QUBIT_DIMS, site.index())
}

/// Uhlmann fidelity `(Tr sqrt(sqrt(sigma) rho sqrt(sigma)))^2`.
///
/// The trace is taken as the nuclear norm of `sqrt(rho) sqrt(sigma)`, which
/// avoids square-rooting the tiny eigenvalues of the sandwiched product.
pub fn fidelity<T: Real>(rho: &DensityMatrix<T>, sigma: &DensityMatrix<T>) -> Result<T> {
    if rho.dim() != sigma.dim() {
        return Err(Error::Dimension(format!("fidelity between {}- and {}-level states", rho.dim(), sigma.dim())));
    }
    let product = psd_sqrt(rho.matrix())?.matmul(&psd_sqrt(sigma.matrix())?);
    let tr: T = svd(&product)?.values.iter().copied().sum();
    Ok((tr * tr).min(T::one()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReferenceLabel {
    W,
    Ghz,
}

impl FromStr for ReferenceLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "W" => Ok(ReferenceLabel::W),
            "GHZ" => Ok(ReferenceLabel::Ghz),
            other => Err(Error::param("label", format!("unknown reference state `{other}`"))),
        }
    }
}

impl fmt::Display for ReferenceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReferenceLabel::W => "W",
            ReferenceLabel::Ghz => "GHZ",
        })
    }
}

#[derive(Debug, Clone)]
pub struct ReferenceState<T: Real> {
    pub label: ReferenceLabel,
    pub ket: Vec<Cx<T>>,
    pub state: DensityMatrix<T>,
}

/// `|W> = (|001> + |010> + |100>)/sqrt(3)` and `|GHZ> = (|000> + |111>)/sqrt(2)`.
pub fn reference_state<T: Real>(label: ReferenceLabel) -> ReferenceState<T> {
    let branches: &[[usize; 3]] = match label {
        ReferenceLabel::W => &[[0, 0, 1], [0, 1, 0], [1, 0, 0]],
        ReferenceLabel::Ghz => &[[0, 0, 0], [1, 1, 1]],
    };
    let amp = T::one() / T::from_usize(branches.len()).unwrap().sqrt();
    let mut ket = vec![Cx::zero(); 8];
    for bits in branches {
        for (k, z) in basis_ket::<T>(bits, &QUBIT_DIMS).into_iter().enumerate() {
            ket[k] += z * amp;
        }
    }
    let state = DensityMatrix::pure(&ket).expect("reference states are normalized");
    ReferenceState { label, ket, state }
}
