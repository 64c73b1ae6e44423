//! Bosonic reservoirs: spectral densities, occupations and transition rates.
//!
//! Temperatures and frequencies share energy units (`k_B = hbar = 1`).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// `omega / T` beyond which the Boltzmann factor is flushed to zero.
const BOLTZMANN_EXPONENT_LIMIT: f64 = 700.0;

/// One thermal reservoir with a power-law spectral density.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BathSpec<T> {
    pub temperature: T,
    /// Dimensionless coupling strength `lambda`.
    pub coupling: T,
    /// Ohmicity exponent `s`: sub-Ohmic below 1, super-Ohmic above.
    pub ohmicity: T,
    /// Cutoff frequency `omega_c`.
    pub cutoff: T,
}

impl<T: Real> BathSpec<T> {
    pub fn new(temperature: T, coupling: T, ohmicity: T, cutoff: T) -> Result<Self> {
        let spec = Self { temperature, coupling, ohmicity, cutoff };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.temperature >= T::zero()) || !self.temperature.is_finite() {
            return Err(Error::param("temperature", format!("must be finite and >= 0, got {}", self.temperature)));
        }
        if !(self.coupling >= T::zero()) || !self.coupling.is_finite() {
            return Err(Error::param("coupling", format!("must be finite and >= 0, got {}", self.coupling)));
        }
        if !(self.ohmicity > T::zero()) || !self.ohmicity.is_finite() {
            return Err(Error::param("ohmicity", format!("must be positive, got {}", self.ohmicity)));
        }
        if !(self.cutoff > T::zero()) || !self.cutoff.is_finite() {
            return Err(Error::param("cutoff", format!("must be positive, got {}", self.cutoff)));
        }
        Ok(())
    }

    pub fn with_temperature(self, temperature: T) -> Self {
        Self { temperature, ..self }
    }
}

/// `J(omega) = lambda omega_c (omega/omega_c)^s exp(-omega/omega_c)`.
pub fn spectral_density<T: Real>(omega: T, spec: &BathSpec<T>) -> Result<T> {
    if !(omega >= T::zero()) {
        return Err(Error::param("omega", format!("spectral density needs omega >= 0, got {omega}")));
    }
    if omega == T::zero() {
        return Ok(T::zero());
    }
    let x = omega / spec.cutoff;
    Ok(spec.coupling * spec.cutoff * x.powf(spec.ohmicity) * (-x).exp())
}

/// `exp(-omega/T)`, exactly zero at `T = 0` and past the overflow guard.
pub fn boltzmann_factor<T: Real>(omega: T, temperature: T) -> T {
    if temperature <= T::zero() {
        return T::zero();
    }
    let x = omega / temperature;
    if x > T::lit(BOLTZMANN_EXPONENT_LIMIT) {
        T::zero()
    } else {
        (-x).exp()
    }
}

/// Bose-Einstein occupation `1/(exp(omega/T) - 1)`.
pub fn bose_occupation<T: Real>(omega: T, temperature: T) -> Result<T> {
    if !(omega > T::zero()) {
        return Err(Error::param("omega", format!("occupation needs omega > 0, got {omega}")));
    }
    if !(temperature >= T::zero()) {
        return Err(Error::param("temperature", format!("must be >= 0, got {temperature}")));
    }
    if temperature == T::zero() {
        return Ok(T::zero());
    }
    let x = omega / temperature;
    if x > T::lit(BOLTZMANN_EXPONENT_LIMIT) {
        return Ok(T::zero());
    }
    Ok(T::one() / x.exp_m1())
}

/// Emission `G(omega)` and absorption `G(-omega)` rates for one Bohr frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rates<T> {
    pub emission: T,
    pub absorption: T,
}

/// `G(omega) = J(omega)(n(omega) + 1)` and `G(-omega) = exp(-omega/T) G(omega)`.
pub fn rates<T: Real>(omega: T, spec: &BathSpec<T>) -> Result<Rates<T>> {
    if !(omega > T::zero()) {
        return Err(Error::param("omega", format!("rates need omega > 0, got {omega}")));
    }
    let j = spectral_density(omega, spec)?;
    let n = bose_occupation(omega, spec.temperature)?;
    let emission = j * (n + T::one());
    let absorption = emission * boltzmann_factor(omega, spec.temperature);
    Ok(Rates { emission, absorption })
}
