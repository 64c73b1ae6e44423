//! Steady-state heat transport through a three-qubit quantum thermal
//! transistor coupled to three bosonic reservoirs.
//!
//! The numerical core is generic over the real scalar ([`Real`], either
//! `f32` or `f64`); the aliases below fix double precision, which the
//! sweep driver and the command-line tool use.

pub mod baths;
pub mod checks;
pub mod config;
pub mod dynamics;
pub mod error;
pub mod infoquant;
pub mod linalg;
pub mod model;
pub mod observables;
pub mod output;
pub mod scalar;
pub mod sweep;

pub use error::{Error, Result};
pub use scalar::{Cx, Real};

pub type C64 = Cx<f64>;
pub type CMatrix = linalg::ComplexMatrix<f64>;
pub type Density = dynamics::DensityMatrix<f64>;
pub type System = model::SystemSpec<f64>;
pub type Bath = baths::BathSpec<f64>;
pub type Decomposition = model::SpectralDecomposition<f64>;
pub type Generator = dynamics::Liouvillian<f64>;
pub type Currents = observables::CurrentTriple<f64>;
